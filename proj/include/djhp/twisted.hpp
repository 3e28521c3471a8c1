#pragma once

#include "djhp/algebra.hpp"

#include <optional>
#include <tuple>

namespace djhp {

/// The trivially twisted tensor product A (x)_0 B. Basis is the product basis
/// a_i (x) b_j in lexicographic (i, j) order; index = i * dim(B) + j.
struct TwistedTensor {
    AlgebraPtr algebra;
    AlgebraPtr A;
    AlgebraPtr B;
    std::vector<int> ideal_A_radB; // basis indices spanning A (x) rad(B)
    std::vector<int> ideal_radA_B; // basis indices spanning rad(A) (x) B

    int index(int ai, int bj) const { return ai * B->dim() + bj; }
};

TwistedTensor build_twisted_tensor(const AlgebraPtr& A, const AlgebraPtr& B,
                                   CancelToken cancel = {});

/// tau(b (x) a) = a (x) b1 + a1 (x) b2, as a vector over the product basis.
SparseVec twist_tau(const FDAlgebra& A, const FDAlgebra& B, const SparseVec& b,
                    const SparseVec& a);

struct TwistAxiomReport {
    bool ok = true;
    std::string which;                              // failing equality, if any
    std::optional<std::tuple<int, int, int>> triple; // basis indices of the violation
};

/// Check both twist compatibility equalities on all basis triples:
///   tau o (id_B (x) mu_A) = (mu_A (x) id_B) o (id_A (x) tau) o (tau (x) id_A)
///   tau o (mu_B (x) id_A) = (id_A (x) mu_B) o (tau (x) id_B) o (id_B (x) tau)
TwistAxiomReport verify_twist_axioms(const AlgebraPtr& A, const AlgebraPtr& B,
                                     CancelToken cancel = {});

struct RadicalIdealPair {
    std::vector<int> ideal_basis; // indices in the tensor basis
    QuotientResult quotient;
};

struct RadicalIdealsResult {
    RadicalIdealPair a_radb; // A (x) rad(B), quotient matches A (x) Bbar
    RadicalIdealPair rada_b; // rad(A) (x) B, quotient matches Abar (x) B
};

/// The two radical ideals with their quotients. Asserts the ideal closures
/// and the vanishing of (A (x) rad B) * (rad A (x) B); a violation is an
/// implementation bug and throws std::logic_error.
RadicalIdealsResult radical_ideals(const TwistedTensor& T, CancelToken cancel = {});

/// Semisimple quotient Abar as a standalone algebra (span of the primitive
/// idempotents of A).
AlgebraPtr semisimple_quotient(const AlgebraPtr& A);

} // namespace djhp
