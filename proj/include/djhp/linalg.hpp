#pragma once

#include "djhp/field.hpp"

#include <atomic>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace djhp {

struct OperationCancelled : std::runtime_error {
    OperationCancelled() : std::runtime_error("operation cancelled") {}
};

/// Cooperative cancellation for long-running fixpoints.
struct CancelToken {
    const std::atomic<bool>* flag = nullptr;

    void check() const {
        if (flag && flag->load(std::memory_order_relaxed)) throw OperationCancelled();
    }
};

/// Sparse vector: index-ascending terms, no stored zeros.
struct SparseVec {
    std::vector<std::pair<int, Scalar>> terms;

    bool empty() const { return terms.empty(); }
    int size() const { return static_cast<int>(terms.size()); }
    int min_index() const { return terms.front().first; }
    int max_index() const { return terms.back().first; }

    const Scalar* coeff(int idx) const;

    bool operator==(const SparseVec& other) const { return terms == other.terms; }
};

SparseVec sv_unit(int idx);
SparseVec sv_scaled_unit(int idx, const Scalar& c);
SparseVec sv_from_dense(const std::vector<Scalar>& dense);

/// dst += c * src
void sv_axpy(const Field& f, SparseVec& dst, const Scalar& c, const SparseVec& src);
SparseVec sv_scale(const Field& f, const Scalar& c, const SparseVec& v);
SparseVec sv_add(const Field& f, const SparseVec& a, const SparseVec& b);
SparseVec sv_sub(const Field& f, const SparseVec& a, const SparseVec& b);
/// remap indices; drops entries mapped to -1
SparseVec sv_remap(const SparseVec& v, const std::vector<int>& index_map);

/// Row space in reduced form with pivots at the *smallest* index of each row.
/// add() keeps rows pivot-normalized (pivot coefficient 1); reduce() fully
/// eliminates every pivot index.
class RowSpan {
public:
    explicit RowSpan(const Field& f) : field_(f) {}

    /// Reduce v against the span; returns the residue.
    SparseVec reduce(SparseVec v) const;
    /// Reduce and insert if independent. Returns true if the rank grew.
    bool add(SparseVec v);
    bool contains(const SparseVec& v) const { return reduce(v).empty(); }
    int rank() const { return static_cast<int>(rows_.size()); }
    const std::map<int, SparseVec>& rows() const { return rows_; }
    std::vector<int> pivot_indices() const;

private:
    Field field_;
    std::map<int, SparseVec> rows_; // pivot index -> row
};

/// Like RowSpan but pivots at the *largest* index (used to rewrite the
/// largest path first).
class DescRowSpan {
public:
    explicit DescRowSpan(const Field& f) : field_(f) {}

    SparseVec reduce(SparseVec v) const;
    bool add(SparseVec v);
    bool contains(const SparseVec& v) const { return reduce(v).empty(); }
    int rank() const { return static_cast<int>(rows_.size()); }
    const std::map<int, SparseVec>& rows() const { return rows_; }
    bool is_pivot(int idx) const { return rows_.count(idx) != 0; }

private:
    Field field_;
    std::map<int, SparseVec> rows_; // pivot (max) index -> row
};

int rank_of(const Field& f, const std::vector<SparseVec>& vectors);

/// Kernel of the linear map whose j-th column (vector in the codomain) is
/// columns[j]. Returns an echelonized basis of the kernel in R^n,
/// n = columns.size(). Deterministic.
std::vector<SparseVec> kernel_basis(const Field& f, const std::vector<SparseVec>& columns);

/// Span with coordinate bookkeeping: express vectors as combinations of the
/// added generators.
class SpanSolver {
public:
    explicit SpanSolver(const Field& f) : field_(f) {}

    /// Add a generator; returns false if it was already in the span.
    bool add(const SparseVec& v);
    int rank() const { return static_cast<int>(rows_.size()); }
    /// Coordinates of v in terms of the added generators, if v is in the span.
    std::optional<SparseVec> express(const SparseVec& v) const;

private:
    Field field_;
    int n_added_ = 0;
    std::map<int, std::pair<SparseVec, SparseVec>> rows_; // pivot -> (row, history over generator indices)
};

} // namespace djhp
