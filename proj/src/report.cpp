#include "djhp/report.hpp"

#include "json.hpp"

#include <sstream>

namespace djhp {

using nlohmann::json;

AlgebraFlags algebra_flags(const std::string& name, const AlgebraPtr& alg, int depth,
                           bool user_asserted_ds, const IsoOptions& iso, CancelToken cancel) {
    AlgebraFlags f;
    f.name = name;
    f.dim = alg->dim();
    f.rank = alg->rank();
    f.local = f.rank == 1;
    f.nonsimple = f.dim > 1;
    if (f.local)
        f.derived_simple = AlgebraFlags::DerivedSimple::AutoLocal;
    else if (user_asserted_ds)
        f.derived_simple = AlgebraFlags::DerivedSimple::UserAsserted;

    GlDimReport g = global_dimension_bound(alg, depth, iso, cancel);
    switch (g.overall) {
    case GlDimReport::Overall::Infinite:
        f.inf_gldim = AlgebraFlags::InfGlDim::CertifiedInfinite;
        for (const auto& s : g.per_simple)
            if (s.kind == SimpleGlDim::Kind::Infinite) {
                f.period = s.period;
                break;
            }
        break;
    case GlDimReport::Overall::Finite:
        f.inf_gldim = AlgebraFlags::InfGlDim::Finite;
        f.gldim_value = g.value;
        break;
    case GlDimReport::Overall::AtLeast:
        f.inf_gldim = AlgebraFlags::InfGlDim::Unknown;
        f.gldim_value = g.value;
        break;
    }
    return f;
}

namespace {

RecollementSummary summarize_recollement(const LambdaAlgebra& L, Recollement which, int depth,
                                         const IsoOptions& iso, CancelToken cancel) {
    RecollementSummary s;
    RecollementFactors f = recollement_factors(L, which, cancel);
    s.quotient_dim = f.quotient.algebra->dim();
    s.quotient_rank = f.quotient.algebra->rank();
    s.corner_dim = f.corner.algebra->dim();
    s.corner_rank = f.corner.algebra->rank();
    s.quotient_report = f.quotient_report;
    s.corner_report = f.corner_report;
    const SparseVec& e = which == Recollement::R1 ? L.e1 : L.e2;
    s.criterion = check_stratifying_criterion(L.algebra, e, depth, iso, cancel);
    s.direct = check_stratifying_direct(L.algebra, e, depth, iso, cancel);
    if (s.quotient_rank + s.corner_rank != L.algebra->rank())
        throw std::logic_error("rank accounting failed: rank(quotient) + rank(corner) != rank");
    return s;
}

std::string ds_string(const AlgebraFlags& f) {
    switch (f.derived_simple) {
    case AlgebraFlags::DerivedSimple::AutoLocal: return "yes (local)";
    case AlgebraFlags::DerivedSimple::UserAsserted: return "yes (user-asserted)";
    default: return "unknown";
    }
}

std::string gldim_string(const AlgebraFlags& f) {
    switch (f.inf_gldim) {
    case AlgebraFlags::InfGlDim::CertifiedInfinite:
        return "infinite (periodic syzygy Omega_" + std::to_string(f.period.first) + " ~ Omega_" +
               std::to_string(f.period.second) + ")";
    case AlgebraFlags::InfGlDim::Finite: return "finite, gl.dim = " + std::to_string(f.gldim_value);
    default: return ">= " + std::to_string(f.gldim_value) + " (undetermined at this depth)";
    }
}

std::string verdict_string(DJHPReport::Verdict v) {
    switch (v) {
    case DJHPReport::Verdict::FailsCase1: return "DJHP-fails(case 1)";
    case DJHPReport::Verdict::FailsCase2: return "DJHP-fails(case 2)";
    case DJHPReport::Verdict::Conditional: return "conditional";
    default: return "not-established";
    }
}

} // namespace

DJHPReport djhp_report(const Presentation& pA, const Presentation& pB, const ReportOptions& opts,
                       CancelToken cancel) {
    IsoOptions iso;
    iso.seed = opts.seed;

    BuiltAlgebra builtA = algebra_from_presentation(pA, opts.cutoff, cancel);
    BuiltAlgebra builtB = algebra_from_presentation(pB, opts.cutoff, cancel);
    LambdaAlgebra L = build_lambda(builtA.algebra, builtB.algebra, cancel);

    DJHPReport r;
    r.depth = opts.depth;
    r.seed = opts.seed;
    r.A = algebra_flags(pA.name, builtA.algebra, opts.depth, opts.assert_derived_simple_A, iso,
                        cancel);
    r.B = algebra_flags(pB.name, builtB.algebra, opts.depth, opts.assert_derived_simple_B, iso,
                        cancel);
    r.lambda = algebra_flags(L.algebra->name, L.algebra, opts.depth, false, iso, cancel);
    r.lambda_dim = L.algebra->dim();
    r.lambda_rank = L.algebra->rank();
    r.lambda_rad_dim = static_cast<int>(L.algebra->radical_indices().size());

    r.r1 = summarize_recollement(L, Recollement::R1, opts.depth, iso, cancel);
    r.r2 = summarize_recollement(L, Recollement::R2, opts.depth, iso, cancel);
    r.s_lower_bound_r1 = r.A.rank * r.B.rank;

    if (r.A.rank > 1 && r.B.rank > 1) {
        r.length_remark = true;
        r.length_r1_bound = 1 + r.A.rank * r.B.rank;
        r.length_r2_exact = r.A.rank + r.B.rank;
        if (r.length_r1_bound == r.length_r2_exact)
            throw std::logic_error("length remark failed: 1 + ab == a + b with a, b >= 2");
    }

    const bool dsA = r.A.derived_simple_known();
    const bool dsB = r.B.derived_simple_known();
    const bool infA = r.A.inf_gldim == AlgebraFlags::InfGlDim::CertifiedInfinite;
    const bool infB = r.B.inf_gldim == AlgebraFlags::InfGlDim::CertifiedInfinite;
    const bool maybe_dsA = dsA || r.A.derived_simple == AlgebraFlags::DerivedSimple::Unknown;
    const bool maybe_dsB = dsB || r.B.derived_simple == AlgebraFlags::DerivedSimple::Unknown;
    const bool maybe_infA = infA || r.A.inf_gldim == AlgebraFlags::InfGlDim::Unknown;
    const bool maybe_infB = infB || r.B.inf_gldim == AlgebraFlags::InfGlDim::Unknown;

    const bool case1 = dsA && r.A.nonsimple && dsB && r.B.nonsimple;
    const bool case2 =
        (dsA && r.A.nonsimple && infB) || (dsB && r.B.nonsimple && infA);

    if (case1) {
        r.verdict = DJHPReport::Verdict::FailsCase1;
        r.via_cor_local = r.A.local && r.A.nonsimple && r.B.local && r.B.nonsimple;
    } else if (case2) {
        r.verdict = DJHPReport::Verdict::FailsCase2;
    } else {
        const bool case1_possible =
            maybe_dsA && r.A.nonsimple && maybe_dsB && r.B.nonsimple;
        const bool case2_possible = (maybe_dsA && r.A.nonsimple && maybe_infB) ||
                                    (maybe_dsB && r.B.nonsimple && maybe_infA);
        if (case1_possible || case2_possible) {
            r.verdict = DJHPReport::Verdict::Conditional;
            if (!dsA && maybe_dsA && r.A.nonsimple)
                r.conditional_missing.push_back("derived simplicity of " + r.A.name +
                                                " (assert with --assert-derived-simple A)");
            if (!dsB && maybe_dsB && r.B.nonsimple)
                r.conditional_missing.push_back("derived simplicity of " + r.B.name +
                                                " (assert with --assert-derived-simple B)");
            if (!infA && maybe_infA && case2_possible)
                r.conditional_missing.push_back("infinite global dimension of " + r.A.name +
                                                " (only \">= depth\" was established)");
            if (!infB && maybe_infB && case2_possible)
                r.conditional_missing.push_back("infinite global dimension of " + r.B.name +
                                                " (only \">= depth\" was established)");
        } else {
            r.verdict = DJHPReport::Verdict::NotEstablished;
        }
    }

    if (r.verdict == DJHPReport::Verdict::FailsCase1 &&
        r.A.inf_gldim == AlgebraFlags::InfGlDim::Finite &&
        r.B.inf_gldim == AlgebraFlags::InfGlDim::Finite)
        r.finite_gldim_note = true;
    if (r.A.local && r.A.nonsimple &&
        r.lambda.inf_gldim == AlgebraFlags::InfGlDim::CertifiedInfinite)
        r.construction_hint = true;

    return r;
}

// ---------------------------------------------------------------------------
// rendering
// ---------------------------------------------------------------------------

namespace {

std::string verdict_name(StratifyingCertificate::Verdict v, int degree) {
    switch (v) {
    case StratifyingCertificate::Verdict::CertifiedFully: return "certified (fully)";
    case StratifyingCertificate::Verdict::CertifiedToDegree:
        return "certified to degree " + std::to_string(degree);
    case StratifyingCertificate::Verdict::Refuted: return "REFUTED";
    default: return "inconclusive";
    }
}

std::string block_string(const FactorBlockReport& rep) {
    std::ostringstream out;
    out << rep.block_count << (rep.block_count == 1 ? " block" : " blocks");
    out << " (dims";
    for (int d : rep.block_dims) out << " " << d;
    out << ")";
    if (rep.identified)
        out << " ~ " << rep.identified_as << " [witnessed]";
    else
        out << " [block identification unverified]";
    return out.str();
}

void render_flags(std::ostringstream& out, const char* tag, const AlgebraFlags& f) {
    out << "  " << tag << ": " << f.name << " (dim " << f.dim << ", rank " << f.rank << ")";
    if (f.local) out << " local";
    out << (f.nonsimple ? " nonsimple" : " simple") << "\n";
    out << "     derived simple: " << ds_string(f) << "\n";
    out << "     global dimension: " << gldim_string(f) << "\n";
}

void render_recollement(std::ostringstream& out, const char* tag, const RecollementSummary& s,
                        int lambda_rank) {
    out << "recollement " << tag << ":\n";
    out << "  quotient: dim " << s.quotient_dim << ", rank " << s.quotient_rank << " -> "
        << block_string(s.quotient_report) << "\n";
    out << "  corner:   dim " << s.corner_dim << ", rank " << s.corner_rank << " -> "
        << block_string(s.corner_report) << "\n";
    out << "  rank accounting: " << lambda_rank << " = " << s.quotient_rank << " + "
        << s.corner_rank << "\n";
    out << "  stratifying (criterion): "
        << verdict_name(s.criterion.verdict, s.criterion.degree) << " -- " << s.criterion.detail
        << "\n";
    out << "  stratifying (direct):    " << verdict_name(s.direct.verdict, s.direct.degree)
        << " -- " << s.direct.detail << "\n";
}

} // namespace

std::string DJHPReport::to_text() const {
    std::ostringstream out;
    out << "DJHP report (depth " << depth << ", seed " << seed << ")\n";
    out << "=====================================\n";
    out << "inputs:\n";
    render_flags(out, "A", A);
    render_flags(out, "B", B);
    out << "Lambda(A,B): dim " << lambda_dim << ", rank " << lambda_rank << " = 2*" << A.rank
        << "*" << B.rank << ", dim rad = " << lambda_rad_dim << "\n";
    out << "  global dimension: " << gldim_string(lambda) << "\n\n";
    render_recollement(out, "R1 (idempotent e1)", r1, lambda_rank);
    out << "  simple-factor bound: any stratification through R1 has s(S) >= "
        << s_lower_bound_r1 << "\n\n";
    render_recollement(out, "R2 (idempotent e2)", r2, lambda_rank);
    if (length_remark) {
        out << "\nlength remark: stratifications through R1 have length >= " << length_r1_bound
            << "; through R2, exactly " << length_r2_exact << " (" << length_r1_bound
            << " != " << length_r2_exact << ")\n";
    }
    out << "\nverdict: " << verdict_string(verdict);
    if (via_cor_local) out << " via the local-algebra corollary";
    out << "\n";
    if (verdict == Verdict::FailsCase1)
        out << "  both factors are derived simple and nonsimple; the two stratifying\n"
               "  recollements force different simple-factor multisets.\n";
    if (verdict == Verdict::FailsCase2)
        out << "  one factor is derived simple nonsimple and the other has certified\n"
               "  infinite global dimension.\n";
    if (verdict == Verdict::Conditional) {
        out << "  missing hypotheses:\n";
        for (const auto& m : conditional_missing) out << "    - " << m << "\n";
    }
    if (finite_gldim_note)
        out << "note: Lambda has finite global dimension (gl.dim = " << lambda.gldim_value
            << ") and still fails DJHP.\n";
    if (construction_hint)
        out << "note: Lambda itself has certified infinite global dimension; applying the\n"
               "      construction again, Lambda(" << A.name
            << ", Lambda) fails DJHP as well.\n";
    return out.str();
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

namespace {

json flags_to_json(const AlgebraFlags& f) {
    return {{"name", f.name},
            {"dim", f.dim},
            {"rank", f.rank},
            {"local", f.local},
            {"nonsimple", f.nonsimple},
            {"derived_simple", f.derived_simple == AlgebraFlags::DerivedSimple::AutoLocal
                                   ? "auto-local"
                                   : f.derived_simple == AlgebraFlags::DerivedSimple::UserAsserted
                                         ? "user-asserted"
                                         : "unknown"},
            {"inf_gldim", f.inf_gldim == AlgebraFlags::InfGlDim::CertifiedInfinite
                              ? "certified-infinite"
                              : f.inf_gldim == AlgebraFlags::InfGlDim::Finite ? "finite"
                                                                              : "unknown"},
            {"gldim_value", f.gldim_value},
            {"period", {f.period.first, f.period.second}}};
}

AlgebraFlags flags_from_json(const json& j) {
    AlgebraFlags f;
    f.name = j.at("name").get<std::string>();
    f.dim = j.at("dim").get<int>();
    f.rank = j.at("rank").get<int>();
    f.local = j.at("local").get<bool>();
    f.nonsimple = j.at("nonsimple").get<bool>();
    std::string ds = j.at("derived_simple").get<std::string>();
    f.derived_simple = ds == "auto-local" ? AlgebraFlags::DerivedSimple::AutoLocal
                       : ds == "user-asserted" ? AlgebraFlags::DerivedSimple::UserAsserted
                                               : AlgebraFlags::DerivedSimple::Unknown;
    std::string ig = j.at("inf_gldim").get<std::string>();
    f.inf_gldim = ig == "certified-infinite" ? AlgebraFlags::InfGlDim::CertifiedInfinite
                  : ig == "finite" ? AlgebraFlags::InfGlDim::Finite
                                   : AlgebraFlags::InfGlDim::Unknown;
    f.gldim_value = j.at("gldim_value").get<int>();
    f.period = {j.at("period")[0].get<int>(), j.at("period")[1].get<int>()};
    return f;
}

json block_to_json(const FactorBlockReport& b) {
    return {{"block_count", b.block_count},
            {"block_dims", b.block_dims},
            {"identified", b.identified},
            {"identified_as", b.identified_as}};
}

FactorBlockReport block_from_json(const json& j) {
    FactorBlockReport b;
    b.block_count = j.at("block_count").get<int>();
    b.block_dims = j.at("block_dims").get<std::vector<int>>();
    b.identified = j.at("identified").get<bool>();
    b.identified_as = j.at("identified_as").get<std::string>();
    return b;
}

json cert_to_json(const StratifyingCertificate& c) {
    const char* verdict = c.verdict == StratifyingCertificate::Verdict::CertifiedFully
                              ? "certified-fully"
                          : c.verdict == StratifyingCertificate::Verdict::CertifiedToDegree
                              ? "certified-to-degree"
                          : c.verdict == StratifyingCertificate::Verdict::Refuted ? "refuted"
                                                                                  : "inconclusive";
    return {{"idempotent", c.idempotent_label},
            {"mode", c.mode == StratifyingCertificate::Mode::Criterion ? "criterion" : "direct"},
            {"verdict", verdict},
            {"degree", c.degree},
            {"detail", c.detail},
            {"evidence", c.evidence}};
}

StratifyingCertificate cert_from_json(const json& j) {
    StratifyingCertificate c;
    c.idempotent_label = j.at("idempotent").get<std::string>();
    c.mode = j.at("mode").get<std::string>() == "criterion"
                 ? StratifyingCertificate::Mode::Criterion
                 : StratifyingCertificate::Mode::Direct;
    std::string v = j.at("verdict").get<std::string>();
    c.verdict = v == "certified-fully" ? StratifyingCertificate::Verdict::CertifiedFully
                : v == "certified-to-degree" ? StratifyingCertificate::Verdict::CertifiedToDegree
                : v == "refuted" ? StratifyingCertificate::Verdict::Refuted
                                 : StratifyingCertificate::Verdict::Inconclusive;
    c.degree = j.at("degree").get<int>();
    c.detail = j.at("detail").get<std::string>();
    c.evidence = j.at("evidence").get<std::vector<std::string>>();
    return c;
}

json side_to_json(const RecollementSummary& s) {
    return {{"quotient_dim", s.quotient_dim},   {"quotient_rank", s.quotient_rank},
            {"corner_dim", s.corner_dim},       {"corner_rank", s.corner_rank},
            {"quotient_blocks", block_to_json(s.quotient_report)},
            {"corner_blocks", block_to_json(s.corner_report)},
            {"criterion", cert_to_json(s.criterion)},
            {"direct", cert_to_json(s.direct)}};
}

RecollementSummary side_from_json(const json& j) {
    RecollementSummary s;
    s.quotient_dim = j.at("quotient_dim").get<int>();
    s.quotient_rank = j.at("quotient_rank").get<int>();
    s.corner_dim = j.at("corner_dim").get<int>();
    s.corner_rank = j.at("corner_rank").get<int>();
    s.quotient_report = block_from_json(j.at("quotient_blocks"));
    s.corner_report = block_from_json(j.at("corner_blocks"));
    s.criterion = cert_from_json(j.at("criterion"));
    s.direct = cert_from_json(j.at("direct"));
    return s;
}

} // namespace

std::string DJHPReport::to_json() const {
    json j;
    j["format"] = format;
    j["depth"] = depth;
    j["seed"] = seed;
    j["A"] = flags_to_json(A);
    j["B"] = flags_to_json(B);
    j["lambda"] = {{"dim", lambda_dim},
                   {"rank", lambda_rank},
                   {"rad_dim", lambda_rad_dim},
                   {"flags", flags_to_json(lambda)}};
    j["R1"] = side_to_json(r1);
    j["R2"] = side_to_json(r2);
    j["s_lower_bound_r1"] = s_lower_bound_r1;
    j["length_remark"] =
        length_remark
            ? json({{"r1_lower_bound", length_r1_bound}, {"r2_exact", length_r2_exact}})
            : json(nullptr);
    const char* v = verdict == Verdict::FailsCase1 ? "djhp-fails-case-1"
                    : verdict == Verdict::FailsCase2 ? "djhp-fails-case-2"
                    : verdict == Verdict::Conditional ? "conditional" : "not-established";
    j["verdict"] = v;
    j["via_cor_local"] = via_cor_local;
    j["finite_gldim_note"] = finite_gldim_note;
    j["construction_hint"] = construction_hint;
    j["conditional_missing"] = conditional_missing;
    return j.dump(2);
}

DJHPReport DJHPReport::from_json(const std::string& text) {
    json j = json::parse(text);
    DJHPReport r;
    r.format = j.at("format").get<std::string>();
    if (r.format != "djhp-report/1") throw std::invalid_argument("unknown report format");
    r.depth = j.at("depth").get<int>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.A = flags_from_json(j.at("A"));
    r.B = flags_from_json(j.at("B"));
    r.lambda_dim = j.at("lambda").at("dim").get<int>();
    r.lambda_rank = j.at("lambda").at("rank").get<int>();
    r.lambda_rad_dim = j.at("lambda").at("rad_dim").get<int>();
    r.lambda = flags_from_json(j.at("lambda").at("flags"));
    r.r1 = side_from_json(j.at("R1"));
    r.r2 = side_from_json(j.at("R2"));
    r.s_lower_bound_r1 = j.at("s_lower_bound_r1").get<int>();
    if (!j.at("length_remark").is_null()) {
        r.length_remark = true;
        r.length_r1_bound = j.at("length_remark").at("r1_lower_bound").get<int>();
        r.length_r2_exact = j.at("length_remark").at("r2_exact").get<int>();
    }
    std::string v = j.at("verdict").get<std::string>();
    r.verdict = v == "djhp-fails-case-1" ? Verdict::FailsCase1
                : v == "djhp-fails-case-2" ? Verdict::FailsCase2
                : v == "conditional" ? Verdict::Conditional : Verdict::NotEstablished;
    r.via_cor_local = j.at("via_cor_local").get<bool>();
    r.finite_gldim_note = j.at("finite_gldim_note").get<bool>();
    r.construction_hint = j.at("construction_hint").get<bool>();
    r.conditional_missing = j.at("conditional_missing").get<std::vector<std::string>>();
    return r;
}

} // namespace djhp
