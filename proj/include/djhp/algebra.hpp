#pragma once

#include "djhp/linalg.hpp"
#include "djhp/presentation.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace djhp {

/// Basis element metadata. degree 0 elements are exactly the primitive
/// idempotents; degree >= 1 elements span the radical. Every basis element b
/// satisfies e_{tgt} * b = b = b * e_{src} (path-like bigraded basis), which
/// every construction in this library preserves.
struct BasisElem {
    std::string label;
    int src = 0;
    int tgt = 0;
    int degree = 0;
};

/// Finite-dimensional elementary algebra given by structure constants over a
/// split basis. Immutable after construction; share via AlgebraPtr.
class FDAlgebra {
public:
    std::string name;
    Field field;
    std::vector<std::string> vertex_labels;
    std::vector<int> idempotent_index; // vertex -> basis index of e_v
    std::vector<BasisElem> basis;
    std::unordered_map<std::uint64_t, SparseVec> table; // (i<<32|j) -> b_i * b_j, nonzero only

    int dim() const { return static_cast<int>(basis.size()); }
    int rank() const { return static_cast<int>(vertex_labels.size()); }
    bool is_radical(int i) const { return basis[i].degree > 0; }

    static std::uint64_t key(int i, int j) {
        return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(i)) << 32) |
               static_cast<std::uint32_t>(j);
    }

    const SparseVec* product_ptr(int i, int j) const {
        auto it = table.find(key(i, j));
        return it == table.end() ? nullptr : &it->second;
    }

    SparseVec mul(const SparseVec& x, const SparseVec& y, CancelToken cancel = {}) const;
    SparseVec unit() const;
    SparseVec vertex_idempotent(int v) const { return sv_unit(idempotent_index[v]); }
    std::vector<int> radical_indices() const;

    /// Minimal generating set: primitive idempotents plus radical basis
    /// elements spanning rad/rad^2 (computed, deterministic).
    std::vector<int> generator_indices() const;

    /// If e equals a sum of distinct primitive idempotents, the vertex set.
    std::optional<std::vector<int>> vertex_support(const SparseVec& e) const;
};

using AlgebraPtr = std::shared_ptr<const FDAlgebra>;

/// Element of a specific algebra.
struct AlgebraElement {
    AlgebraPtr parent;
    SparseVec vec;
};

AlgebraElement multiply(const AlgebraElement& x, const AlgebraElement& y);

/// Split x = a1 + a2 with a1 in the span of primitive idempotents and a2 in
/// the radical (the stored semisimple section).
std::pair<AlgebraElement, AlgebraElement> radical_decompose(const AlgebraElement& x);
std::pair<SparseVec, SparseVec> radical_split(const FDAlgebra& A, const SparseVec& x);

// --- construction from a presentation --------------------------------------

struct BuiltAlgebra {
    AlgebraPtr algebra;
    AdmissibilityCertificate cert;
    Presentation presentation;        // the source, post-validation
    std::vector<PathWord> basis_paths; // aligned with algebra->basis
};

/// Build the quotient path algebra. Requires validate_admissible to succeed
/// at the cutoff; throws std::runtime_error carrying the refusal otherwise.
BuiltAlgebra algebra_from_presentation(const Presentation& p, int cutoff,
                                       CancelToken cancel = {});

/// Dimension of the quotient plus its admissibility certificate, computed by
/// the same linear fixpoint but without materializing the product table.
std::pair<int, AdmissibilityCertificate> quotient_path_algebra_dimension(
    const Presentation& p, int cutoff, CancelToken cancel = {});

// --- corners, quotients, blocks ---------------------------------------------

struct CornerResult {
    AlgebraPtr algebra;
    std::vector<int> parent_basis;   // corner basis index -> parent basis index
    std::vector<int> parent_vertex;  // corner vertex -> parent vertex
};

/// eAe for an idempotent e. Idempotents with a radical part are conjugated to
/// their semisimple part first (the two corners are canonically isomorphic).
/// Throws std::invalid_argument if e*e != e.
CornerResult corner_algebra(const AlgebraPtr& A, const SparseVec& e);

struct QuotientResult {
    AlgebraPtr algebra;
    std::vector<SparseVec> projection; // parent basis index -> image in quotient coords
    std::vector<int> kept_basis;       // quotient basis index -> parent basis index
    int ideal_dim = 0;
    bool zero_algebra = false; // ideal was all of A (distinguished outcome)
};

/// Two-sided ideal closure of the generators (returned as an ascending-pivot
/// reduced span).
std::vector<SparseVec> ideal_closure(const FDAlgebra& A, const std::vector<SparseVec>& gens,
                                     CancelToken cancel = {});

QuotientResult quotient_by_ideal(const AlgebraPtr& A, const std::vector<SparseVec>& gens,
                                 CancelToken cancel = {});

struct BlockPart {
    SparseVec central_idempotent;
    std::vector<int> vertices;
    CornerResult corner;
};

/// Central primitive decomposition: connected components of the quiver on
/// primitive idempotents.
std::vector<BlockPart> block_decompose(const AlgebraPtr& A);

struct RelabelWitness {
    std::vector<int> vertex_map; // A vertex -> B vertex
    std::vector<int> basis_map;  // A basis index -> B basis index
};

/// Search for a basis relabeling matching structure constants exactly.
/// Sound but incomplete: nullopt is not a proof of non-isomorphism.
std::optional<RelabelWitness> relabel_isomorphic(const FDAlgebra& A, const FDAlgebra& B,
                                                 long node_budget = 500000);

/// Structure constants literally equal (same dimension, same table).
bool same_structure_constants(const FDAlgebra& A, const FDAlgebra& B);

// --- validation --------------------------------------------------------------

struct AlgebraCheck {
    bool ok = true;
    std::string first_failure;
};

/// Full invariant audit: associativity on all basis triples, unit law,
/// idempotent orthogonality/completeness, radical is a nilpotent two-sided
/// ideal with semisimple quotient, split basis consistency.
AlgebraCheck validate_algebra(const FDAlgebra& A, CancelToken cancel = {});

/// Nilpotency index of the radical span (least n with rad^n = 0), or -1 if
/// not nilpotent within dim+1 steps.
int radical_nilpotency_index(const FDAlgebra& A);

/// Radical filtration level of every basis element: largest k with
/// b in rad^k (0 for idempotents). Intrinsic, unlike the degree tag.
std::vector<int> radical_filtration_levels(const FDAlgebra& A);

// --- serialization -----------------------------------------------------------

std::string algebra_to_json(const FDAlgebra& A);
FDAlgebra algebra_from_json(const std::string& text);

} // namespace djhp
