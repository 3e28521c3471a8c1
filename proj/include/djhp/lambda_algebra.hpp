#pragma once

#include "djhp/twisted.hpp"

namespace djhp {

/// The 2x2 matrix algebra built from A and B:
///
///     | A (x)0 B      A (x) rad(B) |
///     | Abar (x) B    Abar (x) B   |
///
/// materialized as one flat FDAlgebra with block-tagged basis labels.
/// Basis layout: block 11 = product pairs (ai, bj) lex; block 12 = (ai, bj)
/// with bj radical; blocks 21/22 = (A-vertex v, bj) lex.
struct LambdaAlgebra {
    AlgebraPtr algebra;
    AlgebraPtr A;
    AlgebraPtr B;
    TwistedTensor tensor; // the 11-corner A (x)0 B
    SparseVec e1, e2;

    int dimA = 0, dimB = 0, rankA = 0, rankB = 0, nradB = 0;
    std::vector<int> radB;     // radical basis indices of B in order
    std::vector<int> radB_pos; // B basis index -> position in radB, or -1
    int off12 = 0, off21 = 0, off22 = 0;

    int idx11(int ai, int bj) const { return ai * dimB + bj; }
    int idx12(int ai, int bj) const { return off12 + ai * nradB + radB_pos[bj]; }
    int idx21(int v, int bj) const { return off21 + v * dimB + bj; }
    int idx22(int v, int bj) const { return off22 + v * dimB + bj; }

    /// Lambda vertex indices: first copy (i, j), second copy offset by rankA*rankB.
    int vert1(int i, int j) const { return i * rankB + j; }
    int vert2(int i, int j) const { return rankA * rankB + i * rankB + j; }

    enum class Block { B11, B12, B21, B22 };
    Block block_of(int basis_index) const;
};

LambdaAlgebra build_lambda(const AlgebraPtr& A, const AlgebraPtr& B, CancelToken cancel = {});

struct BimoduleDiagramReport {
    bool ok = true;
    std::string which;
    std::optional<std::tuple<int, int, int>> triple;
};

/// Check the two phi/psi associativity squares on all relevant basis
/// triples, independently of the assembled Lambda table.
BimoduleDiagramReport verify_bimodule_diagrams(const AlgebraPtr& A, const AlgebraPtr& B,
                                               CancelToken cancel = {});

enum class Recollement { R1, R2 };

struct FactorBlockReport {
    int block_count = 0;
    std::vector<int> block_dims;
    bool identified = false;   // every block carries a relabel witness
    std::string identified_as; // what the blocks matched
};

struct RecollementFactors {
    QuotientResult quotient; // Lambda / Lambda e Lambda
    CornerResult corner;     // e Lambda e
    FactorBlockReport quotient_report;
    FactorBlockReport corner_report;
};

/// Factor algebras of the stratifying recollement induced by e1 (R1) or e2
/// (R2), with block identification reports (soundness over completeness: a
/// missing witness flags the report as unidentified, it is never invented).
RecollementFactors recollement_factors(const LambdaAlgebra& L, Recollement which,
                                       CancelToken cancel = {});

} // namespace djhp
