#pragma once

#include "djhp/lambda_algebra.hpp"

namespace djhp {

/// Left module over an FDAlgebra: one sparse action column per (algebra
/// basis element, module basis vector).
struct LeftModule {
    AlgebraPtr algebra;
    int dim = 0;
    std::vector<std::vector<SparseVec>> action; // [algebra basis][module column]

    SparseVec apply_basis(int b, const SparseVec& v) const;
    SparseVec apply(const SparseVec& elem, const SparseVec& v) const;
};

LeftModule zero_module(const AlgebraPtr& A);
LeftModule simple_module(const AlgebraPtr& A, int vertex);
LeftModule regular_module(const AlgebraPtr& A);
/// A / (two-sided ideal generated by gens), as a left A-module.
LeftModule quotient_of_regular(const AlgebraPtr& A, const std::vector<SparseVec>& gens,
                               CancelToken cancel = {});
/// Submodule of `ambient` spanned by the given vectors (closed under the
/// action; throws if not), with the induced action.
LeftModule submodule(const LeftModule& ambient, const std::vector<SparseVec>& vectors);

/// Unital representation audit: action(unit) = id and action respects every
/// structure constant. Quadratic in dim(A); meant for tests.
bool validate_module(const LeftModule& M);

/// Explicit direct sum of indecomposable projectives Lambda e_v.
struct ProjectiveModule {
    AlgebraPtr algebra;
    std::vector<int> summand_vertices;
    std::vector<std::pair<int, int>> coords; // (summand, algebra basis index)
    std::vector<std::vector<int>> coord_of;  // [summand][basis index] -> coord or -1

    int dim() const { return static_cast<int>(coords.size()); }
    LeftModule as_module() const;

    static ProjectiveModule make(const AlgebraPtr& A, std::vector<int> vertices);
};

/// One projective-cover step P -> M.
struct CoverStep {
    ProjectiveModule P;
    std::vector<SparseVec> cover_columns; // images of P coords in M coords
    std::vector<SparseVec> generators;    // chosen top lifts, one per summand
    std::vector<SparseVec> kernel;        // kernel basis in P coords
    LeftModule syzygy;                    // kernel with the induced action
};

/// Minimal projective cover; zero module yields the distinguished zero cover.
CoverStep projective_cover(const LeftModule& M);
/// Free cover P = A^n with n = the maximal top multiplicity.
CoverStep free_cover(const LeftModule& M);

enum class ResolutionStatus { Terminated, Truncated, Periodic };

struct IsoOptions {
    std::uint64_t seed = 9001;
    int samples = 64;
    int window = 16; // how many earlier syzygies periodicity detection checks
};

struct Resolution {
    LeftModule M;
    std::vector<ProjectiveModule> components;
    /// maps[0]: P_0 -> M (augmentation); maps[n]: P_n -> P_{n-1}; columns in
    /// the codomain's coordinates.
    std::vector<std::vector<SparseVec>> maps;
    ResolutionStatus status = ResolutionStatus::Truncated;
    int periodic_start = -1, periodic_end = -1; // Omega_start ~ Omega_end
    std::vector<LeftModule> syzygies;           // Omega_1, Omega_2, ...

    /// projective dimension when the resolution terminated
    int length() const { return static_cast<int>(components.size()) - 1; }
};

Resolution minimal_resolution(const LeftModule& M, int max_degree, const IsoOptions& opts = {},
                              CancelToken cancel = {});
Resolution free_resolution(const LeftModule& M, int max_degree, CancelToken cancel = {});

/// Dump format: per degree the projective multiset (vertex: multiplicity)
/// and the differential as sparse triples (row, col, num, den).
std::string resolution_to_json(const Resolution& res);

struct ResolutionCheck {
    bool ok = true;
    std::string first_failure;
};

/// Exactness at every computed position (rank arithmetic plus d o d = 0) and
/// surjectivity of the augmentation.
ResolutionCheck resolution_exact(const Resolution& res);
/// Differentials of degree >= 1 land in the radical of the target.
ResolutionCheck resolution_minimal(const Resolution& res);

/// Invertible intertwiner search: vertex-graded unknowns, linear solve, then
/// randomized (or exhaustively enumerated, over small prime fields)
/// invertibility sampling. A found intertwiner is a proof of isomorphism;
/// exhausting the samples reports false, probabilistically over Q.
bool modules_isomorphic(const LeftModule& M, const LeftModule& N, const IsoOptions& opts = {});

/// M given over B, result over Lambda: (A (x)0 M) + (Abar (x) M) glued by
/// the off-diagonal actions. dim = (dimA + rankA) * dim M.
LeftModule tilde_module(const LambdaAlgebra& L, const LeftModule& M_over_B);

/// Apply tilde degreewise to a projective resolution of M over B. Tilde of
/// B^n is (Lambda e_1)^n and tilde of B e_w is the matching summand, so every
/// component lands in add(Lambda e_1). Exactness is re-verified and a failure
/// throws.
Resolution tilde_resolution(const LambdaAlgebra& L, const LeftModule& M_over_B,
                            const Resolution& res_over_B);

struct StratifyingCertificate {
    std::string idempotent_label;
    enum class Mode { Criterion, Direct } mode = Mode::Criterion;
    enum class Verdict { CertifiedFully, CertifiedToDegree, Refuted, Inconclusive } verdict =
        Verdict::Inconclusive;
    int degree = 0;      // depth the verdict holds to (certified-to-degree)
    std::string detail;  // human-readable evidence summary
    std::vector<std::string> evidence; // per-degree multisets or Tor dimensions
};

/// Sufficient criterion: minimal resolution of A/AeA with every degree >= 1
/// component in add(Ae).
StratifyingCertificate check_stratifying_criterion(const AlgebraPtr& A, const SparseVec& e,
                                                   int depth, const IsoOptions& opts = {},
                                                   CancelToken cancel = {});

/// Direct check: Tor_{eAe}(Ae, eA) vanishing in degrees 1..depth and
/// dim(Ae (x)_{eAe} eA) = dim(AeA).
StratifyingCertificate check_stratifying_direct(const AlgebraPtr& A, const SparseVec& e,
                                                int depth, const IsoOptions& opts = {},
                                                CancelToken cancel = {});

struct SimpleGlDim {
    std::string vertex;
    enum class Kind { Exact, AtLeast, Infinite } kind = Kind::AtLeast;
    int value = 0;                       // exact pd, or a proven lower bound
    std::pair<int, int> period{-1, -1};  // syzygy indices witnessing periodicity
};

struct GlDimReport {
    std::vector<SimpleGlDim> per_simple;
    enum class Overall { Finite, AtLeast, Infinite } overall = Overall::AtLeast;
    int value = 0;
};

GlDimReport global_dimension_bound(const AlgebraPtr& A, int depth, const IsoOptions& opts = {},
                                   CancelToken cancel = {});

} // namespace djhp
