#pragma once

// Internal: path enumeration and the ideal fixpoint shared by
// validate_admissible, algebra_from_presentation and quotient_dimension.

#include "djhp/linalg.hpp"
#include "djhp/presentation.hpp"

#include <map>
#include <optional>
#include <vector>

namespace djhp::detail {

struct PathRec {
    int src = 0;
    int tgt = 0;
    std::vector<int> word; // arrow indices, function order (word.back() first)
};

/// All paths of the quiver up to a length bound, in length-then-lex order
/// (lex on the arrow index sequence; trivial paths ordered by vertex).
struct PathSet {
    int nvert = 0;
    std::vector<int> arrow_src, arrow_tgt;
    std::vector<PathRec> paths;
    std::vector<int> len_begin; // len_begin[l]..len_begin[l+1] = paths of length l
    std::map<std::vector<int>, int> word_index;
    bool capped = false; // enumeration stopped early at the path budget

    int max_len() const { return static_cast<int>(len_begin.size()) - 2; }
    /// longest length for which the enumeration is complete
    int complete_max_len() const { return capped ? max_len() - 1 : max_len(); }
    int count_of_length(int l) const { return len_begin[l + 1] - len_begin[l]; }
    int length_of(int idx) const { return static_cast<int>(paths[idx].word.size()); }
    int index_of(const std::vector<int>& word, int vertex_if_trivial) const;

    static PathSet build(const Quiver& q, int max_len, long path_budget = 200000);
};

/// Fixpoint state for the two-sided ideal generated by the relations,
/// truncated at the enumeration window.
struct IdealFixpoint {
    Field field;
    PathSet ps;
    DescRowSpan span; // rewrite the largest path first
    int cert_length = -1;
    std::string failure; // nonempty when certification could not be established

    static IdealFixpoint run(const Presentation& p, int cutoff, CancelToken cancel);

    bool certified() const { return cert_length > 0; }

    /// Normal form of a combination of enumerated paths.
    SparseVec normal_form(SparseVec v) const { return span.reduce(std::move(v)); }

    /// v * arrow / arrow * v; nullopt when a term leaves the enumeration window.
    std::optional<SparseVec> right_arrow_mul(const SparseVec& v, int arrow) const;
    std::optional<SparseVec> left_arrow_mul(const SparseVec& v, int arrow) const;

    /// Basis of the quotient: indices of non-pivot paths of length < cert_length.
    std::vector<int> normal_basis() const;

private:
    void scan_certificate(int cutoff);
    void saturate(std::vector<SparseVec> expand, CancelToken cancel);
};

} // namespace djhp::detail
