#include "djhp/theorem.hpp"

#include <algorithm>
#include <set>

namespace djhp {

int GeneratedPresentation::count(ArrowKind k) const {
    int n = 0;
    for (const auto& o : arrow_origins)
        if (o.kind == k) ++n;
    return n;
}

int GeneratedPresentation::count(RelationKind k) const {
    return static_cast<int>(std::count(relation_kinds.begin(), relation_kinds.end(), k));
}

GeneratedPresentation lambda_presentation(const Presentation& pA, const Presentation& pB) {
    validate_presentation(pA);
    validate_presentation(pB);
    if (pA.field != pB.field)
        throw std::invalid_argument("factor presentations over different fields");

    const Quiver& Q = pA.quiver;
    const Quiver& P = pB.quiver;
    GeneratedPresentation gp;
    Presentation& out = gp.presentation;
    out.name = "Lambda_" + pA.name + "_" + pB.name;
    out.field = pA.field;

    gp.first_vertex.assign(Q.vertices.size(), std::vector<std::string>(P.vertices.size()));
    gp.second_vertex = gp.first_vertex;
    for (std::size_t i = 0; i < Q.vertices.size(); ++i)
        for (std::size_t j = 0; j < P.vertices.size(); ++j) {
            gp.first_vertex[i][j] = Q.vertices[i] + "_" + P.vertices[j];
            out.quiver.vertices.push_back(gp.first_vertex[i][j]);
        }
    for (std::size_t i = 0; i < Q.vertices.size(); ++i)
        for (std::size_t j = 0; j < P.vertices.size(); ++j) {
            gp.second_vertex[i][j] = P.vertices[j] + "_" + Q.vertices[i];
            out.quiver.vertices.push_back(gp.second_vertex[i][j]);
        }

    auto alpha_name = [&](const Arrow& a, int j) { return a.label + "_" + P.vertices[j]; };
    auto beta_name = [&](const Arrow& b, int i) { return b.label + "_" + Q.vertices[i]; };
    auto connector_name = [&](int i, int j) {
        return "c_" + Q.vertices[i] + "_" + P.vertices[j];
    };

    for (const Arrow& a : Q.arrows)
        for (std::size_t j = 0; j < P.vertices.size(); ++j) {
            int s = Q.vertex_index(a.src), t = Q.vertex_index(a.tgt);
            out.quiver.arrows.push_back(
                {alpha_name(a, static_cast<int>(j)), gp.first_vertex[s][j], gp.first_vertex[t][j]});
            gp.arrow_origins.push_back({GeneratedPresentation::ArrowKind::Alpha,
                                        Q.arrow_index(a.label), -1, -1, static_cast<int>(j),
                                        a.label});
        }
    for (std::size_t i = 0; i < Q.vertices.size(); ++i)
        for (std::size_t j = 0; j < P.vertices.size(); ++j) {
            out.quiver.arrows.push_back({connector_name(static_cast<int>(i), static_cast<int>(j)),
                                         gp.first_vertex[i][j], gp.second_vertex[i][j]});
            gp.arrow_origins.push_back({GeneratedPresentation::ArrowKind::Connector, -1, -1,
                                        static_cast<int>(i), static_cast<int>(j), ""});
        }
    for (const Arrow& b : P.arrows)
        for (std::size_t i = 0; i < Q.vertices.size(); ++i) {
            int s = P.vertex_index(b.src), t = P.vertex_index(b.tgt);
            out.quiver.arrows.push_back({beta_name(b, static_cast<int>(i)),
                                         gp.second_vertex[i][s], gp.first_vertex[i][t]});
            gp.arrow_origins.push_back({GeneratedPresentation::ArrowKind::Beta, -1,
                                        P.arrow_index(b.label), static_cast<int>(i), -1,
                                        b.label});
        }

    {
        std::set<std::string> names(out.quiver.vertices.begin(), out.quiver.vertices.end());
        if (names.size() != out.quiver.vertices.size())
            throw std::invalid_argument(
                "mangled vertex names collide (inputs share swapped vertex labels); "
                "rename the vertices of one input");
        std::set<std::string> anames;
        for (const auto& a : out.quiver.arrows)
            if (!anames.insert(a.label).second)
                throw std::invalid_argument("mangled arrow name '" + a.label +
                                            "' collides; rename the input labels");
    }

    // r^j: substitute alpha -> alpha^j termwise
    for (const Relation& r : pA.relations)
        for (std::size_t j = 0; j < P.vertices.size(); ++j) {
            Relation rel;
            for (const RelationTerm& t : r.terms) {
                std::vector<std::string> word;
                for (const auto& lbl : t.path.arrows)
                    word.push_back(alpha_name(Q.arrows[Q.arrow_index(lbl)], static_cast<int>(j)));
                rel.terms.push_back({t.coeff, make_path(out.quiver, word)});
            }
            out.relations.push_back(std::move(rel));
            gp.relation_kinds.push_back(GeneratedPresentation::RelationKind::FromA);
        }
    // c(t(alpha), j) alpha^j
    for (const Arrow& a : Q.arrows)
        for (std::size_t j = 0; j < P.vertices.size(); ++j) {
            int t = Q.vertex_index(a.tgt);
            Relation rel;
            rel.terms.push_back(
                {out.field.one(),
                 make_path(out.quiver, {connector_name(t, static_cast<int>(j)),
                                        alpha_name(a, static_cast<int>(j))})});
            out.relations.push_back(std::move(rel));
            gp.relation_kinds.push_back(GeneratedPresentation::RelationKind::ConnectorAlpha);
        }
    // s^i: interleave the unique composable connector after each beta but the last
    for (const Relation& s : pB.relations)
        for (std::size_t i = 0; i < Q.vertices.size(); ++i) {
            Relation rel;
            for (const RelationTerm& t : s.terms) {
                std::vector<std::string> word;
                const auto& arrows = t.path.arrows;
                for (std::size_t l = 0; l < arrows.size(); ++l) {
                    const Arrow& beta = P.arrows[P.arrow_index(arrows[l])];
                    word.push_back(beta_name(beta, static_cast<int>(i)));
                    if (l + 1 < arrows.size())
                        word.push_back(connector_name(static_cast<int>(i),
                                                      P.vertex_index(beta.src)));
                }
                rel.terms.push_back({t.coeff, make_path(out.quiver, word)});
            }
            out.relations.push_back(std::move(rel));
            gp.relation_kinds.push_back(GeneratedPresentation::RelationKind::FromB);
        }

    validate_presentation(out);
    return gp;
}

PhiReport verify_phi(const GeneratedPresentation& gp, const LambdaAlgebra& L,
                     CancelToken cancel) {
    const Presentation& gamma = gp.presentation;
    const FDAlgebra& Lam = *L.algebra;
    const FDAlgebra& A = *L.A;
    const FDAlgebra& B = *L.B;
    PhiReport rep;

    auto basis_by_label = [](const FDAlgebra& alg, const std::string& label) {
        for (int i = 0; i < alg.dim(); ++i)
            if (alg.basis[i].label == label && alg.basis[i].degree == 1) return i;
        return -1;
    };

    // generator images
    std::map<std::string, SparseVec> vertex_image, arrow_image;
    for (int i = 0; i < A.rank(); ++i)
        for (int j = 0; j < B.rank(); ++j) {
            vertex_image[gp.first_vertex[i][j]] =
                sv_unit(L.idx11(A.idempotent_index[i], B.idempotent_index[j]));
            vertex_image[gp.second_vertex[i][j]] = sv_unit(L.idx22(i, B.idempotent_index[j]));
        }
    for (std::size_t ai = 0; ai < gamma.quiver.arrows.size(); ++ai) {
        const Arrow& arr = gamma.quiver.arrows[ai];
        const auto& origin = gp.arrow_origins[ai];
        switch (origin.kind) {
        case GeneratedPresentation::ArrowKind::Alpha: {
            int a = basis_by_label(A, origin.factor_label);
            if (a < 0) throw std::logic_error("alpha arrow not found in A basis");
            arrow_image[arr.label] = sv_unit(L.idx11(a, B.idempotent_index[origin.j]));
            break;
        }
        case GeneratedPresentation::ArrowKind::Connector:
            arrow_image[arr.label] = sv_unit(L.idx21(origin.i, B.idempotent_index[origin.j]));
            break;
        case GeneratedPresentation::ArrowKind::Beta: {
            int b = basis_by_label(B, origin.factor_label);
            if (b < 0) throw std::logic_error("beta arrow not found in B basis");
            arrow_image[arr.label] = sv_unit(L.idx12(A.idempotent_index[origin.i], b));
            break;
        }
        }
    }

    auto word_image = [&](const PathWord& w) {
        if (w.trivial()) return vertex_image.at(w.source);
        SparseVec acc = arrow_image.at(w.arrows.front());
        for (std::size_t l = 1; l < w.arrows.size(); ++l)
            acc = Lam.mul(acc, arrow_image.at(w.arrows[l]));
        return acc;
    };

    // every generated relation maps to zero
    for (std::size_t r = 0; r < gamma.relations.size(); ++r) {
        cancel.check();
        SparseVec img;
        for (const auto& t : gamma.relations[r].terms)
            sv_axpy(Lam.field, img, t.coeff, word_image(t.path));
        if (!img.empty()) {
            rep.failure = "relation " + std::to_string(r) + " has nonzero image";
            return rep;
        }
    }

    // surjectivity: saturate the span of path images under left multiplication
    RowSpan span(Lam.field);
    std::vector<SparseVec> fresh;
    for (const auto& [name, img] : vertex_image) {
        (void)name;
        SparseVec r = span.reduce(img);
        if (!r.empty()) {
            span.add(r);
            fresh.push_back(r);
        }
    }
    while (!fresh.empty()) {
        cancel.check();
        SparseVec v = std::move(fresh.back());
        fresh.pop_back();
        for (const auto& [name, img] : arrow_image) {
            (void)name;
            SparseVec prod = Lam.mul(img, v);
            if (prod.empty()) continue;
            SparseVec r = span.reduce(std::move(prod));
            if (r.empty()) continue;
            span.add(r);
            fresh.push_back(std::move(r));
        }
    }
    rep.span_dim = span.rank();
    if (rep.span_dim != Lam.dim()) {
        rep.failure = "path images span dimension " + std::to_string(rep.span_dim) + " < " +
                      std::to_string(Lam.dim());
        return rep;
    }
    rep.ok = true;
    return rep;
}

std::pair<int, AdmissibilityCertificate> quotient_dimension(const Presentation& p, int cutoff,
                                                            CancelToken cancel) {
    return quotient_path_algebra_dimension(p, cutoff, cancel);
}

RightMultReport check_right_mult_injective(const BuiltAlgebra& built, const PathWord& c) {
    const FDAlgebra& A = *built.algebra;
    const Quiver& q = built.presentation.quiver;
    RightMultReport rep;

    // syntactic hypothesis: no relation path is of the form p*c
    auto ends_with = [&](const PathWord& w) {
        if (w.length() < c.length()) return false;
        if (c.trivial()) return w.source == c.source; // w = w * e_v needs s(w) = v
        return std::equal(c.arrows.rbegin(), c.arrows.rend(), w.arrows.rbegin());
    };
    rep.hypothesis_holds = true;
    for (const auto& rel : built.presentation.relations)
        for (const auto& t : rel.terms)
            if (ends_with(t.path)) rep.hypothesis_holds = false;

    // image of c in the algebra
    int src = q.vertex_index(c.source);
    if (src < 0) throw std::invalid_argument("path source not in the quiver");
    SparseVec img = sv_unit(A.idempotent_index[src]);
    for (auto it = c.arrows.rbegin(); it != c.arrows.rend(); ++it) { // traversal order
        int found = -1;
        for (int i = 0; i < A.dim(); ++i)
            if (A.basis[i].degree == 1 && A.basis[i].label == *it) found = i;
        if (found < 0) throw std::invalid_argument("unknown arrow '" + *it + "'");
        img = A.mul(sv_unit(found), img);
    }
    rep.path_is_zero = img.empty();

    // rank of right multiplication A e_{t(c)} -> A e_{s(c)}
    int tgt = q.vertex_index(c.target);
    std::vector<SparseVec> cols;
    for (int i = 0; i < A.dim(); ++i)
        if (A.basis[i].src == tgt) cols.push_back(A.mul(sv_unit(i), img));
    rep.domain_dim = static_cast<int>(cols.size());
    rep.rank = rank_of(A.field, cols);
    rep.injective = rep.rank == rep.domain_dim;
    return rep;
}

} // namespace djhp
