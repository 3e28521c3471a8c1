#include "doctest.h"

#include "djhp/theorem.hpp"
#include "support/corpus.hpp"

using namespace djhp;

namespace {

GeneratedPresentation gamma_local_pair() {
    return lambda_presentation(corpus::load("kx2.qa"), corpus::load("ky2.qa"));
}

GeneratedPresentation gamma_line_pair() {
    return lambda_presentation(corpus::load("a4line.qa"), corpus::load("a3line.qa"));
}

} // namespace

TEST_CASE("generated presentation for the k[x]/x^2 pair equals the fixed form") {
    GeneratedPresentation gp = gamma_local_pair();
    std::string expected = "algebra Lambda_kx2_ky2 over Q\n"
                           "vertices: a_b b_a\n"
                           "arrows:\n"
                           "  x_b: a_b -> a_b\n"
                           "  c_a_b: a_b -> b_a\n"
                           "  y_a: b_a -> a_b\n"
                           "relations:\n"
                           "  x_b*x_b\n"
                           "  c_a_b*x_b\n"
                           "  y_a*c_a_b*y_a\n";
    CHECK(gp.presentation == parse_presentation(expected));
    // and it round-trips through the emitter
    CHECK(parse_presentation(emit_presentation(gp.presentation, EmitFormat::DSL)) ==
          gp.presentation);
}

TEST_CASE("generated counts for the line-quiver pair: 24 vertices, 29 arrows, 16 relations") {
    GeneratedPresentation gp = gamma_line_pair();
    CHECK(gp.presentation.quiver.vertices.size() == 24);
    CHECK(gp.presentation.quiver.arrows.size() == 29);
    CHECK(gp.presentation.relations.size() == 16);
    CHECK(gp.count(GeneratedPresentation::ArrowKind::Alpha) == 9);
    CHECK(gp.count(GeneratedPresentation::ArrowKind::Connector) == 12);
    CHECK(gp.count(GeneratedPresentation::ArrowKind::Beta) == 8);
    CHECK(gp.count(GeneratedPresentation::RelationKind::FromA) == 3);
    CHECK(gp.count(GeneratedPresentation::RelationKind::ConnectorAlpha) == 9);
    CHECK(gp.count(GeneratedPresentation::RelationKind::FromB) == 4);
}

TEST_CASE("generated counts match the closed-form formulas on mixed pairs") {
    for (const auto& [na, nb] : std::vector<std::pair<std::string, std::string>>{
             {"kx2.qa", "a3line.qa"}, {"square.qa", "kx3.qa"}, {"kq_ba.qa", "ky2.qa"}}) {
        CAPTURE(na);
        CAPTURE(nb);
        Presentation pA = corpus::load(na), pB = corpus::load(nb);
        GeneratedPresentation gp = lambda_presentation(pA, pB);
        int q0 = static_cast<int>(pA.quiver.vertices.size());
        int q1 = static_cast<int>(pA.quiver.arrows.size());
        int p0 = static_cast<int>(pB.quiver.vertices.size());
        int p1 = static_cast<int>(pB.quiver.arrows.size());
        CHECK(static_cast<int>(gp.presentation.quiver.vertices.size()) == 2 * q0 * p0);
        CHECK(gp.count(GeneratedPresentation::ArrowKind::Alpha) == q1 * p0);
        CHECK(gp.count(GeneratedPresentation::ArrowKind::Connector) == q0 * p0);
        CHECK(gp.count(GeneratedPresentation::ArrowKind::Beta) == p1 * q0);
        CHECK(gp.count(GeneratedPresentation::RelationKind::FromA) ==
              static_cast<int>(pA.relations.size()) * p0);
        CHECK(gp.count(GeneratedPresentation::RelationKind::FromB) ==
              static_cast<int>(pB.relations.size()) * q0);
        // one connector relation per (arrow of Q, vertex of P)
        CHECK(gp.count(GeneratedPresentation::RelationKind::ConnectorAlpha) == q1 * p0);
    }
}

TEST_CASE("s^i relations interleave the unique composable connector") {
    GeneratedPresentation gp = gamma_line_pair();
    // beta2^i c(i,6) beta1^i for each Q-vertex i
    int found = 0;
    for (std::size_t r = 0; r < gp.presentation.relations.size(); ++r) {
        if (gp.relation_kinds[r] != GeneratedPresentation::RelationKind::FromB) continue;
        const auto& terms = gp.presentation.relations[r].terms;
        REQUIRE(terms.size() == 1);
        const auto& w = terms[0].path.arrows;
        REQUIRE(w.size() == 3);
        CHECK(w[0].substr(0, 3) == "b2_");
        CHECK(w[1].substr(0, 2) == "c_");
        CHECK(w[1].find("_6") != std::string::npos);
        CHECK(w[2].substr(0, 3) == "b1_");
        ++found;
    }
    CHECK(found == 4);
}

TEST_CASE("semisimple B yields no beta arrows and no s relations") {
    GeneratedPresentation gp = lambda_presentation(corpus::load("kx2.qa"), corpus::load("kxk.qa"));
    CHECK(gp.count(GeneratedPresentation::ArrowKind::Beta) == 0);
    CHECK(gp.count(GeneratedPresentation::RelationKind::FromB) == 0);
    CHECK(gp.presentation.quiver.vertices.size() == 4);
}

TEST_CASE("swapped shared labels are rejected with a clear message") {
    Presentation p = corpus::load("kx2.qa");
    CHECK_THROWS_AS(lambda_presentation(p, p), std::invalid_argument);
}

TEST_CASE("quotient dimension of the generated presentations equals dim Lambda") {
    auto [d43, c43] = quotient_dimension(gamma_local_pair().presentation, 8);
    CHECK(c43.certified);
    CHECK(d43 == 10);
    auto [d42, c42] = quotient_dimension(gamma_line_pair().presentation, 8);
    CHECK(c42.certified);
    CHECK(d42 == 103);
    auto [dkx2, ckx2] = quotient_dimension(corpus::load("kx2.qa"), 8);
    CHECK(ckx2.certified);
    CHECK(dkx2 == 2);
}

TEST_CASE("verify_phi: relations vanish and path images span Lambda") {
    {
        LambdaAlgebra L =
            build_lambda(corpus::build("kx2.qa").algebra, corpus::build("ky2.qa").algebra);
        PhiReport rep = verify_phi(gamma_local_pair(), L);
        CHECK_MESSAGE(rep.ok, rep.failure);
        CHECK(rep.span_dim == 10);
    }
    {
        LambdaAlgebra L =
            build_lambda(corpus::build("a4line.qa").algebra, corpus::build("a3line.qa").algebra);
        PhiReport rep = verify_phi(gamma_line_pair(), L);
        CHECK_MESSAGE(rep.ok, rep.failure);
        CHECK(rep.span_dim == 103);
    }
}

TEST_CASE("dropping a connector relation keeps phi relation-clean (dimension catches it)") {
    GeneratedPresentation gp = gamma_local_pair();
    GeneratedPresentation corrupted = gp;
    // drop the connector relation c_a_b*x_b
    corrupted.presentation.relations.erase(corrupted.presentation.relations.begin() + 1);
    corrupted.relation_kinds.erase(corrupted.relation_kinds.begin() + 1);
    LambdaAlgebra L =
        build_lambda(corpus::build("kx2.qa").algebra, corpus::build("ky2.qa").algebra);
    PhiReport rep = verify_phi(corrupted, L);
    CHECK(rep.ok); // phi cannot see a missing relation
    // without the connector relation the quotient is infinite dimensional
    // (c, y, x alternate freely), so the dimension leg refuses to certify:
    // the corruption is flagged downstream either way
    auto [dim, cert] = quotient_dimension(corrupted.presentation, 8);
    CHECK_FALSE(cert.certified);
    CHECK(dim == -1);
}

TEST_CASE("phi path images land in the block their endpoints dictate") {
    Presentation pA = corpus::load("kx2.qa"), pB = corpus::load("ky2.qa");
    GeneratedPresentation gp = gamma_local_pair();
    LambdaAlgebra L = build_lambda(corpus::build("kx2.qa").algebra,
                                   corpus::build("ky2.qa").algebra);
    BuiltAlgebra gamma = algebra_from_presentation(gp.presentation, 8);

    // rebuild the generator images as verify_phi does, then walk all paths of
    // the generated algebra and check the block of each image
    auto vertex_copy = [&](const std::string& label) {
        for (int i = 0; i < L.rankA; ++i)
            for (int j = 0; j < L.rankB; ++j) {
                if (gp.first_vertex[i][j] == label) return 1;
                if (gp.second_vertex[i][j] == label) return 2;
            }
        return 0;
    };
    for (std::size_t k = 0; k < gamma.basis_paths.size(); ++k) {
        const PathWord& w = gamma.basis_paths[k];
        if (static_cast<int>(w.arrows.size()) > 6) continue;
        // evaluate through the Lambda generators
        SparseVec img;
        {
            // reuse verify_phi by evaluating the single-path relation image:
            // build the image directly from origins
            std::map<std::string, SparseVec> arrow_image;
            for (std::size_t ai = 0; ai < gp.presentation.quiver.arrows.size(); ++ai) {
                const auto& arr = gp.presentation.quiver.arrows[ai];
                const auto& o = gp.arrow_origins[ai];
                if (o.kind == GeneratedPresentation::ArrowKind::Alpha)
                    arrow_image[arr.label] = sv_unit(L.idx11(1, 0)); // x is basis 1 of kx2
                else if (o.kind == GeneratedPresentation::ArrowKind::Connector)
                    arrow_image[arr.label] = sv_unit(L.idx21(o.i, L.B->idempotent_index[o.j]));
                else
                    arrow_image[arr.label] = sv_unit(L.idx12(L.A->idempotent_index[o.i], 1));
            }
            if (w.trivial()) {
                img = vertex_copy(w.source) == 1 ? sv_unit(L.idx11(0, 0))
                                                 : sv_unit(L.idx22(0, 0));
            } else {
                img = arrow_image.at(w.arrows.front());
                for (std::size_t l = 1; l < w.arrows.size(); ++l)
                    img = L.algebra->mul(img, arrow_image.at(w.arrows[l]));
            }
        }
        REQUIRE(!img.empty()); // basis paths are nonzero in Lambda
        int sc = vertex_copy(w.source), tc = vertex_copy(w.target);
        for (const auto& [idx, c] : img.terms) {
            (void)c;
            auto blk = L.block_of(idx);
            if (sc == 1 && tc == 1) CHECK(blk == LambdaAlgebra::Block::B11);
            if (sc == 2 && tc == 1) CHECK(blk == LambdaAlgebra::Block::B12);
            if (sc == 1 && tc == 2) CHECK(blk == LambdaAlgebra::Block::B21);
            if (sc == 2 && tc == 2) CHECK(blk == LambdaAlgebra::Block::B22);
        }
    }
}

TEST_CASE("right multiplication: connectors satisfy the hypothesis and have full rank") {
    for (auto make : {gamma_local_pair, gamma_line_pair}) {
        GeneratedPresentation gp = make();
        BuiltAlgebra built = algebra_from_presentation(gp.presentation, 8);
        for (std::size_t ai = 0; ai < gp.presentation.quiver.arrows.size(); ++ai) {
            if (gp.arrow_origins[ai].kind != GeneratedPresentation::ArrowKind::Connector)
                continue;
            PathWord c = make_path(gp.presentation.quiver,
                                   {gp.presentation.quiver.arrows[ai].label});
            RightMultReport rep = check_right_mult_injective(built, c);
            CAPTURE(gp.presentation.quiver.arrows[ai].label);
            CHECK(rep.hypothesis_holds);
            CHECK(rep.injective);
            CHECK_FALSE(rep.path_is_zero);
            CHECK(rep.rank == rep.domain_dim);
        }
    }
}

TEST_CASE("right multiplication: x in k[x]/(x^2) fails the hypothesis and is not injective") {
    BuiltAlgebra built = corpus::build("kx2.qa");
    PathWord c = make_path(built.presentation.quiver, {"x"});
    RightMultReport rep = check_right_mult_injective(built, c);
    CHECK_FALSE(rep.hypothesis_holds); // x*x ends with x
    CHECK_FALSE(rep.injective);        // x*x = 0
    CHECK(rep.rank == 1);
    CHECK(rep.domain_dim == 2);
}

TEST_CASE("right multiplication: trivial paths give the identity, always injective") {
    BuiltAlgebra built = corpus::build("a3line.qa");
    PathWord c = trivial_path(built.presentation.quiver, "6");
    RightMultReport rep = check_right_mult_injective(built, c);
    CHECK(rep.injective);
    CHECK_FALSE(rep.path_is_zero);
}

TEST_CASE("hypothesis-implies-injective soundness: it holds injective on every corpus path") {
    for (const auto& name : corpus::all_presentations()) {
        CAPTURE(name);
        BuiltAlgebra built = corpus::build(name);
        const Quiver& q = built.presentation.quiver;
        // all paths of length <= 2
        for (const auto& a : q.arrows) {
            RightMultReport rep = check_right_mult_injective(built, make_path(q, {a.label}));
            if (rep.hypothesis_holds) CHECK(rep.injective);
            for (const auto& b : q.arrows) {
                if (b.src != a.tgt) continue; // a after b? ordering below
                // word a*b: b traversed first, needs t(b) = s(a)
                if (a.src != b.tgt) continue;
                RightMultReport rep2 =
                    check_right_mult_injective(built, make_path(q, {a.label, b.label}));
                if (rep2.hypothesis_holds) CHECK(rep2.injective);
            }
        }
    }
}

TEST_CASE("DOT of the generated line-quiver presentation has 24 nodes and 29 edges") {
    GeneratedPresentation gp = gamma_line_pair();
    std::string dot = emit_presentation(gp.presentation, EmitFormat::DOT);
    std::size_t nodes = 0, edges = 0, pos = 0;
    while ((pos = dot.find("\";\n", pos)) != std::string::npos) {
        ++nodes;
        pos += 3;
    }
    pos = 0;
    while ((pos = dot.find(" -> ", pos)) != std::string::npos) {
        ++edges;
        pos += 4;
    }
    CHECK(nodes == 24);
    CHECK(edges == 29);
}
