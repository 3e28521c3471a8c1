#include "djhp/linalg.hpp"

#include <algorithm>

namespace djhp {

const Scalar* SparseVec::coeff(int idx) const {
    auto it = std::lower_bound(terms.begin(), terms.end(), idx,
                               [](const auto& t, int i) { return t.first < i; });
    if (it == terms.end() || it->first != idx) return nullptr;
    return &it->second;
}

SparseVec sv_unit(int idx) {
    SparseVec v;
    v.terms.emplace_back(idx, Scalar(1));
    return v;
}

SparseVec sv_scaled_unit(int idx, const Scalar& c) {
    SparseVec v;
    if (c != 0) v.terms.emplace_back(idx, c);
    return v;
}

SparseVec sv_from_dense(const std::vector<Scalar>& dense) {
    SparseVec v;
    for (int i = 0; i < static_cast<int>(dense.size()); ++i)
        if (dense[i] != 0) v.terms.emplace_back(i, dense[i]);
    return v;
}

void sv_axpy(const Field& f, SparseVec& dst, const Scalar& c, const SparseVec& src) {
    if (c == 0 || src.empty()) return;
    std::vector<std::pair<int, Scalar>> out;
    out.reserve(dst.terms.size() + src.terms.size());
    std::size_t i = 0, j = 0;
    while (i < dst.terms.size() || j < src.terms.size()) {
        if (j == src.terms.size() ||
            (i < dst.terms.size() && dst.terms[i].first < src.terms[j].first)) {
            out.push_back(dst.terms[i++]);
        } else if (i == dst.terms.size() || src.terms[j].first < dst.terms[i].first) {
            Scalar val = f.mul(c, src.terms[j].second);
            if (val != 0) out.emplace_back(src.terms[j].first, std::move(val));
            ++j;
        } else {
            Scalar val = f.add(dst.terms[i].second, f.mul(c, src.terms[j].second));
            if (val != 0) out.emplace_back(dst.terms[i].first, std::move(val));
            ++i;
            ++j;
        }
    }
    dst.terms = std::move(out);
}

SparseVec sv_scale(const Field& f, const Scalar& c, const SparseVec& v) {
    SparseVec out;
    if (c == 0) return out;
    out.terms.reserve(v.terms.size());
    for (const auto& [idx, val] : v.terms) {
        Scalar s = f.mul(c, val);
        if (s != 0) out.terms.emplace_back(idx, std::move(s));
    }
    return out;
}

SparseVec sv_add(const Field& f, const SparseVec& a, const SparseVec& b) {
    SparseVec out = a;
    sv_axpy(f, out, f.one(), b);
    return out;
}

SparseVec sv_sub(const Field& f, const SparseVec& a, const SparseVec& b) {
    SparseVec out = a;
    sv_axpy(f, out, f.neg(f.one()), b);
    return out;
}

SparseVec sv_remap(const SparseVec& v, const std::vector<int>& index_map) {
    SparseVec out;
    out.terms.reserve(v.terms.size());
    for (const auto& [idx, val] : v.terms) {
        int ni = index_map[idx];
        if (ni >= 0) out.terms.emplace_back(ni, val);
    }
    std::sort(out.terms.begin(), out.terms.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

SparseVec RowSpan::reduce(SparseVec v) const {
    while (!v.empty()) {
        auto it = rows_.find(v.min_index());
        if (it == rows_.end()) {
            // pivot not in span; eliminate deeper indices
            bool hit = false;
            for (std::size_t k = 1; k < v.terms.size(); ++k) {
                auto jt = rows_.find(v.terms[k].first);
                if (jt != rows_.end()) {
                    sv_axpy(field_, v, field_.neg(v.terms[k].second), jt->second);
                    hit = true;
                    break;
                }
            }
            if (!hit) return v;
        } else {
            sv_axpy(field_, v, field_.neg(v.terms.front().second), it->second);
        }
    }
    return v;
}

bool RowSpan::add(SparseVec v) {
    v = reduce(std::move(v));
    if (v.empty()) return false;
    Scalar lead = v.terms.front().second;
    v = sv_scale(field_, field_.inv(lead), v);
    int piv = v.min_index();
    rows_.emplace(piv, std::move(v));
    return true;
}

std::vector<int> RowSpan::pivot_indices() const {
    std::vector<int> out;
    out.reserve(rows_.size());
    for (const auto& [p, _] : rows_) out.push_back(p);
    return out;
}

SparseVec DescRowSpan::reduce(SparseVec v) const {
    while (!v.empty()) {
        auto it = rows_.find(v.max_index());
        if (it == rows_.end()) {
            bool hit = false;
            for (int k = static_cast<int>(v.terms.size()) - 2; k >= 0; --k) {
                auto jt = rows_.find(v.terms[k].first);
                if (jt != rows_.end()) {
                    sv_axpy(field_, v, field_.neg(v.terms[k].second), jt->second);
                    hit = true;
                    break;
                }
            }
            if (!hit) return v;
        } else {
            sv_axpy(field_, v, field_.neg(v.terms.back().second), it->second);
        }
    }
    return v;
}

bool DescRowSpan::add(SparseVec v) {
    v = reduce(std::move(v));
    if (v.empty()) return false;
    Scalar lead = v.terms.back().second;
    v = sv_scale(field_, field_.inv(lead), v);
    int piv = v.max_index();
    rows_.emplace(piv, std::move(v));
    return true;
}

int rank_of(const Field& f, const std::vector<SparseVec>& vectors) {
    RowSpan span(f);
    for (const auto& v : vectors) span.add(v);
    return span.rank();
}

std::vector<SparseVec> kernel_basis(const Field& f, const std::vector<SparseVec>& columns) {
    // pairs (image row, history over column indices), pivot-normalized on image
    std::map<int, std::pair<SparseVec, SparseVec>> rows;
    std::vector<SparseVec> kernel;
    for (int j = 0; j < static_cast<int>(columns.size()); ++j) {
        SparseVec img = columns[j];
        SparseVec hist = sv_unit(j);
        while (!img.empty()) {
            auto it = rows.find(img.min_index());
            if (it == rows.end()) break;
            Scalar c = f.neg(img.terms.front().second);
            sv_axpy(f, img, c, it->second.first);
            sv_axpy(f, hist, c, it->second.second);
        }
        if (img.empty()) {
            kernel.push_back(std::move(hist));
        } else {
            Scalar inv = f.inv(img.terms.front().second);
            img = sv_scale(f, inv, img);
            hist = sv_scale(f, inv, hist);
            int piv = img.min_index();
            rows.emplace(piv, std::make_pair(std::move(img), std::move(hist)));
        }
    }
    return kernel;
}

bool SpanSolver::add(const SparseVec& v) {
    SparseVec img = v;
    SparseVec hist = sv_unit(n_added_);
    ++n_added_;
    while (!img.empty()) {
        auto it = rows_.find(img.min_index());
        if (it == rows_.end()) break;
        Scalar c = field_.neg(img.terms.front().second);
        sv_axpy(field_, img, c, it->second.first);
        sv_axpy(field_, hist, c, it->second.second);
    }
    if (img.empty()) return false;
    Scalar inv = field_.inv(img.terms.front().second);
    img = sv_scale(field_, inv, img);
    hist = sv_scale(field_, inv, hist);
    int piv = img.min_index();
    rows_.emplace(piv, std::make_pair(std::move(img), std::move(hist)));
    return true;
}

std::optional<SparseVec> SpanSolver::express(const SparseVec& v) const {
    SparseVec img = v;
    SparseVec coeffs;
    while (!img.empty()) {
        auto it = rows_.find(img.min_index());
        if (it == rows_.end()) return std::nullopt;
        Scalar c = img.terms.front().second;
        sv_axpy(field_, img, field_.neg(c), it->second.first);
        sv_axpy(field_, coeffs, c, it->second.second);
    }
    return coeffs;
}

} // namespace djhp
