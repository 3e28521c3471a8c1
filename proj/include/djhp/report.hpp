#pragma once

#include "djhp/homology.hpp"
#include "djhp/theorem.hpp"

namespace djhp {

struct AlgebraFlags {
    std::string name;
    int dim = 0;
    int rank = 0;
    bool local = false;     // rank 1
    bool nonsimple = false; // dim > 1

    enum class DerivedSimple { AutoLocal, UserAsserted, Unknown } derived_simple =
        DerivedSimple::Unknown;
    bool derived_simple_known() const { return derived_simple != DerivedSimple::Unknown; }

    enum class InfGlDim { CertifiedInfinite, Finite, Unknown } inf_gldim = InfGlDim::Unknown;
    int gldim_value = 0;                // exact when Finite, computed depth otherwise
    std::pair<int, int> period{-1, -1}; // syzygy periodicity witness when infinite
};

struct RecollementSummary {
    int quotient_dim = 0, quotient_rank = 0;
    int corner_dim = 0, corner_rank = 0;
    FactorBlockReport quotient_report, corner_report;
    StratifyingCertificate criterion, direct;
};

struct DJHPReport {
    std::string format = "djhp-report/1";
    int depth = 8;
    std::uint64_t seed = 0;

    AlgebraFlags A, B;
    int lambda_dim = 0, lambda_rank = 0, lambda_rad_dim = 0;
    AlgebraFlags lambda; // gldim flags of Lambda itself (for the corollary notes)

    RecollementSummary r1, r2;
    int s_lower_bound_r1 = 0; // rank(A) * rank(B)

    bool length_remark = false; // both ranks > 1
    int length_r1_bound = 0;    // 1 + rank(A)*rank(B)
    int length_r2_exact = 0;    // rank(A) + rank(B)

    enum class Verdict { FailsCase1, FailsCase2, Conditional, NotEstablished } verdict =
        Verdict::NotEstablished;
    bool via_cor_local = false;             // both factors local nonsimple
    bool finite_gldim_note = false;         // verdict holds with finite gldim Lambda
    bool construction_hint = false;         // Lambda itself certified infinite gldim
    std::vector<std::string> conditional_missing;

    std::string to_text() const;
    std::string to_json() const;
    static DJHPReport from_json(const std::string& text);
};

struct ReportOptions {
    int depth = 8;
    int cutoff = 8;
    std::uint64_t seed = 9001;
    bool assert_derived_simple_A = false;
    bool assert_derived_simple_B = false;
};

DJHPReport djhp_report(const Presentation& pA, const Presentation& pB,
                       const ReportOptions& opts = {}, CancelToken cancel = {});

/// Flags of a single input algebra (shared by report and verify paths).
AlgebraFlags algebra_flags(const std::string& name, const AlgebraPtr& alg, int depth,
                           bool user_asserted_ds, const IsoOptions& iso, CancelToken cancel = {});

} // namespace djhp
