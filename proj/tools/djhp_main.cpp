// djhp: build the matrix algebra Lambda(A,B) from two quiver presentations,
// verify its certificates, and report on the failure of the derived
// Jordan-Hoelder property.

#include "CLI11.hpp"

#include "djhp/report.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitCertification = 3;

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write '" + path + "'");
    out << text;
}

djhp::Presentation load_presentation(const std::string& path, const std::string& field_override) {
    djhp::Presentation p;
    try {
        p = djhp::parse_presentation(read_file(path));
    } catch (const djhp::ParseError& e) {
        throw InputError(path + ": " + e.what());
    }
    if (!field_override.empty()) {
        djhp::Field f;
        if (field_override == "q")
            f = djhp::Field::rationals();
        else if (field_override.rfind("fp:", 0) == 0)
            f = djhp::Field::prime(std::stoull(field_override.substr(3)));
        else
            throw InputError("bad --field value '" + field_override + "' (use q or fp:<p>)");
        p.field = f;
        for (auto& rel : p.relations)
            for (auto& t : rel.terms) t.coeff = f.reduce(t.coeff);
    }
    return p;
}

djhp::BuiltAlgebra build_checked(const djhp::Presentation& p, int cutoff) {
    auto cert = djhp::validate_admissible(p, cutoff);
    if (!cert.certified)
        throw InputError("admissibility of '" + p.name + "' not certified: " + cert.refusal);
    return djhp::algebra_from_presentation(p, cutoff);
}

int cmd_build(const std::string& fileA, const std::string& fileB, std::string prefix,
              const std::string& field, int cutoff) {
    djhp::Presentation pA = load_presentation(fileA, field);
    djhp::Presentation pB = load_presentation(fileB, field);
    djhp::BuiltAlgebra A = build_checked(pA, cutoff);
    djhp::BuiltAlgebra B = build_checked(pB, cutoff);
    djhp::LambdaAlgebra L = djhp::build_lambda(A.algebra, B.algebra);
    djhp::GeneratedPresentation gp = djhp::lambda_presentation(pA, pB);
    if (prefix.empty()) prefix = pA.name + "_" + pB.name;

    write_file(prefix + ".lambda.json", djhp::algebra_to_json(*L.algebra));
    write_file(prefix + ".gamma.qa",
               djhp::emit_presentation(gp.presentation, djhp::EmitFormat::DSL));
    write_file(prefix + ".gamma.dot",
               djhp::emit_presentation(gp.presentation, djhp::EmitFormat::DOT));

    std::ostringstream summary;
    summary << "inputs: " << pA.name << " (dim " << A.algebra->dim() << ", rank "
            << A.algebra->rank() << "), " << pB.name << " (dim " << B.algebra->dim() << ", rank "
            << B.algebra->rank() << ")\n";
    summary << "Lambda: dim " << L.algebra->dim() << ", rank " << L.algebra->rank()
            << ", dim rad " << L.algebra->radical_indices().size() << "\n";
    summary << "blocks: 11 dim " << L.dimA * L.dimB << ", 12 dim " << L.dimA * L.nradB
            << ", 21 dim " << L.rankA * L.dimB << ", 22 dim " << L.rankA * L.dimB << "\n";
    summary << "Gamma: " << gp.presentation.quiver.vertices.size() << " vertices, "
            << gp.presentation.quiver.arrows.size() << " arrows, "
            << gp.presentation.relations.size() << " relations\n";
    write_file(prefix + ".summary.txt", summary.str());
    std::cout << summary.str();
    std::cout << "wrote " << prefix << ".lambda.json, " << prefix << ".gamma.qa, " << prefix
              << ".gamma.dot, " << prefix << ".summary.txt\n";
    return kExitOk;
}

int cmd_verify(const std::string& fileA, const std::string& fileB, int depth,
               const std::string& field, int cutoff, std::uint64_t seed) {
    djhp::Presentation pA = load_presentation(fileA, field);
    djhp::Presentation pB = load_presentation(fileB, field);
    djhp::BuiltAlgebra A = build_checked(pA, cutoff);
    djhp::BuiltAlgebra B = build_checked(pB, cutoff);

    int failures = 0;
    auto check = [&](const std::string& name, bool ok, const std::string& detail = "") {
        std::cout << (ok ? "PASS " : "FAIL ") << name;
        if (!ok && !detail.empty()) std::cout << " -- " << detail;
        std::cout << "\n";
        if (!ok && !failures) failures = 1;
    };

    auto twist = djhp::verify_twist_axioms(A.algebra, B.algebra);
    check("twist axioms", twist.ok, twist.which);

    djhp::LambdaAlgebra L = djhp::build_lambda(A.algebra, B.algebra);
    auto assoc = djhp::validate_algebra(*L.algebra);
    check("Lambda associativity and algebra invariants", assoc.ok, assoc.first_failure);

    auto diagrams = djhp::verify_bimodule_diagrams(A.algebra, B.algebra);
    check("bimodule diagrams", diagrams.ok, diagrams.which);

    djhp::GeneratedPresentation gp = djhp::lambda_presentation(pA, pB);
    auto phi = djhp::verify_phi(gp, L);
    check("phi: relations vanish and images span", phi.ok, phi.failure);
    auto [gdim, gcert] = djhp::quotient_dimension(gp.presentation, cutoff);
    check("quotient dimension equals dim Lambda",
          gcert.certified && gdim == L.algebra->dim(),
          gcert.certified ? std::to_string(gdim) + " vs " + std::to_string(L.algebra->dim())
                          : gcert.refusal);

    djhp::IsoOptions iso;
    iso.seed = seed;
    using V = djhp::StratifyingCertificate::Verdict;
    for (auto [label, e] : {std::pair<const char*, const djhp::SparseVec*>{"e1", &L.e1},
                            {"e2", &L.e2}}) {
        auto crit = djhp::check_stratifying_criterion(L.algebra, *e, depth, iso);
        check(std::string("stratifying criterion for ") + label,
              crit.verdict == V::CertifiedFully || crit.verdict == V::CertifiedToDegree,
              crit.detail);
        auto direct = djhp::check_stratifying_direct(L.algebra, *e, depth, iso);
        check(std::string("stratifying direct for ") + label,
              direct.verdict == V::CertifiedFully || direct.verdict == V::CertifiedToDegree,
              direct.detail);
    }

    djhp::BuiltAlgebra gamma = djhp::algebra_from_presentation(gp.presentation, cutoff);
    bool connectors_ok = true;
    std::string connectors_detail;
    for (std::size_t ai = 0; ai < gp.presentation.quiver.arrows.size(); ++ai) {
        if (gp.arrow_origins[ai].kind != djhp::GeneratedPresentation::ArrowKind::Connector)
            continue;
        djhp::PathWord c = djhp::make_path(gp.presentation.quiver,
                                           {gp.presentation.quiver.arrows[ai].label});
        auto rep = djhp::check_right_mult_injective(gamma, c);
        if (!rep.hypothesis_holds || !rep.injective) {
            connectors_ok = false;
            connectors_detail = gp.presentation.quiver.arrows[ai].label;
            break;
        }
    }
    check("right multiplication by every connector is injective", connectors_ok, connectors_detail);

    return failures ? kExitCertification : kExitOk;
}

int cmd_report(const std::string& fileA, const std::string& fileB, int depth,
               const std::string& assert_ds, const std::string& field, int cutoff,
               std::uint64_t seed, const std::string& json_out) {
    djhp::Presentation pA = load_presentation(fileA, field);
    djhp::Presentation pB = load_presentation(fileB, field);
    build_checked(pA, cutoff);
    build_checked(pB, cutoff);

    djhp::ReportOptions opts;
    opts.depth = depth;
    opts.cutoff = cutoff;
    opts.seed = seed;
    if (assert_ds == "A" || assert_ds == "both") opts.assert_derived_simple_A = true;
    if (assert_ds == "B" || assert_ds == "both") opts.assert_derived_simple_B = true;
    if (!assert_ds.empty() && assert_ds != "A" && assert_ds != "B" && assert_ds != "both")
        throw InputError("--assert-derived-simple expects A, B or both");

    djhp::DJHPReport rep = djhp::djhp_report(pA, pB, opts);
    std::cout << rep.to_text();
    if (!json_out.empty()) write_file(json_out, rep.to_json());
    return kExitOk;
}

int cmd_dot(const std::string& file, const std::string& field) {
    djhp::Presentation p = load_presentation(file, field);
    std::cout << djhp::emit_presentation(p, djhp::EmitFormat::DOT);
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lambda(A,B) construction, certification and DJHP reports"};
    app.require_subcommand(1);

    std::string fileA, fileB, file, prefix, field, assert_ds, json_out;
    int depth = 8, cutoff = 8;
    std::uint64_t seed = 9001;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--field", field, "coefficient field override: q or fp:<p>");
        sub->add_option("--cutoff", cutoff, "admissibility cutoff (default 8)");
        sub->add_option("--seed", seed, "seed for the randomized isomorphism sampler");
    };

    CLI::App* build = app.add_subcommand("build", "build Lambda and its quiver presentation");
    build->add_option("A", fileA, "presentation of A (.qa)")->required();
    build->add_option("B", fileB, "presentation of B (.qa)")->required();
    build->add_option("-o,--output", prefix, "output prefix (default <A>_<B>)");
    add_common(build);

    CLI::App* verify = app.add_subcommand("verify", "run the verification suite");
    verify->add_option("A", fileA, "presentation of A (.qa)")->required();
    verify->add_option("B", fileB, "presentation of B (.qa)")->required();
    verify->add_option("--depth", depth, "resolution depth (default 8)");
    add_common(verify);

    CLI::App* report = app.add_subcommand("report", "emit the DJHP failure report");
    report->add_option("A", fileA, "presentation of A (.qa)")->required();
    report->add_option("B", fileB, "presentation of B (.qa)")->required();
    report->add_option("--depth", depth, "resolution depth (default 8)");
    report->add_option("--assert-derived-simple", assert_ds, "A, B or both");
    report->add_option("--json", json_out, "also write the machine-readable report here");
    add_common(report);

    CLI::App* dot = app.add_subcommand("dot", "emit a presentation as a DOT digraph");
    dot->add_option("X", file, "presentation (.qa)")->required();
    add_common(dot);

    CLI11_PARSE(app, argc, argv);

    try {
        if (build->parsed()) return cmd_build(fileA, fileB, prefix, field, cutoff);
        if (verify->parsed()) return cmd_verify(fileA, fileB, depth, field, cutoff, seed);
        if (report->parsed())
            return cmd_report(fileA, fileB, depth, assert_ds, field, cutoff, seed, json_out);
        if (dot->parsed()) return cmd_dot(file, field);
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCertification;
    }
    return kExitOk;
}
