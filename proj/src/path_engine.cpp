#include "path_engine.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace djhp::detail {

int PathSet::index_of(const std::vector<int>& word, int vertex_if_trivial) const {
    if (word.empty()) return vertex_if_trivial;
    auto it = word_index.find(word);
    return it == word_index.end() ? -1 : it->second;
}

PathSet PathSet::build(const Quiver& q, int max_len, long path_budget) {
    PathSet ps;
    ps.nvert = static_cast<int>(q.vertices.size());
    for (const auto& a : q.arrows) {
        ps.arrow_src.push_back(q.vertex_index(a.src));
        ps.arrow_tgt.push_back(q.vertex_index(a.tgt));
    }
    const int narr = static_cast<int>(ps.arrow_src.size());

    ps.len_begin.push_back(0);
    for (int v = 0; v < ps.nvert; ++v) ps.paths.push_back({v, v, {}});
    ps.len_begin.push_back(static_cast<int>(ps.paths.size()));

    for (int len = 1; len <= max_len; ++len) {
        int lo = ps.len_begin[len - 1], hi = ps.len_begin[len];
        // prepend each arrow (applied last) to shorter paths, in lex order
        for (int a = 0; a < narr; ++a) {
            for (int i = lo; i < hi; ++i) {
                if (ps.arrow_src[a] != ps.paths[i].tgt) continue;
                if (static_cast<long>(ps.paths.size()) >= path_budget) {
                    ps.capped = true;
                    ps.len_begin.push_back(static_cast<int>(ps.paths.size()));
                    return ps;
                }
                PathRec r;
                r.src = ps.paths[i].src;
                r.tgt = ps.arrow_tgt[a];
                r.word.reserve(len);
                r.word.push_back(a);
                r.word.insert(r.word.end(), ps.paths[i].word.begin(), ps.paths[i].word.end());
                ps.word_index.emplace(r.word, static_cast<int>(ps.paths.size()));
                ps.paths.push_back(std::move(r));
            }
        }
        ps.len_begin.push_back(static_cast<int>(ps.paths.size()));
        if (ps.len_begin[len + 1] == ps.len_begin[len]) {
            // no paths of this length, hence none longer
            while (static_cast<int>(ps.len_begin.size()) < max_len + 2)
                ps.len_begin.push_back(static_cast<int>(ps.paths.size()));
            break;
        }
    }
    return ps;
}

std::optional<SparseVec> IdealFixpoint::right_arrow_mul(const SparseVec& v, int arrow) const {
    SparseVec out;
    for (const auto& [idx, c] : v.terms) {
        const PathRec& p = ps.paths[idx];
        if (p.src != ps.arrow_tgt[arrow]) continue; // p * arrow needs s(p) = t(arrow)
        std::vector<int> word = p.word;
        word.push_back(arrow);
        int ni = ps.index_of(word, -1);
        if (ni < 0) return std::nullopt;
        sv_axpy(field, out, c, sv_unit(ni));
    }
    return out;
}

std::optional<SparseVec> IdealFixpoint::left_arrow_mul(const SparseVec& v, int arrow) const {
    SparseVec out;
    for (const auto& [idx, c] : v.terms) {
        const PathRec& p = ps.paths[idx];
        if (ps.arrow_src[arrow] != p.tgt) continue;
        std::vector<int> word;
        word.reserve(p.word.size() + 1);
        word.push_back(arrow);
        word.insert(word.end(), p.word.begin(), p.word.end());
        int ni = ps.index_of(word, -1);
        if (ni < 0) return std::nullopt;
        sv_axpy(field, out, c, sv_unit(ni));
    }
    return out;
}

void IdealFixpoint::scan_certificate(int cutoff) {
    cert_length = -1;
    for (int l = 1; l <= std::min(cutoff, ps.complete_max_len()); ++l) {
        bool all_zero = true;
        for (int i = ps.len_begin[l]; i < ps.len_begin[l + 1]; ++i) {
            if (!span.contains(sv_unit(i))) {
                all_zero = false;
                break;
            }
        }
        if (all_zero) {
            cert_length = l;
            return;
        }
    }
}

void IdealFixpoint::saturate(std::vector<SparseVec> expand, CancelToken cancel) {
    const int narr = static_cast<int>(ps.arrow_src.size());
    std::deque<SparseVec> queue(expand.begin(), expand.end());
    while (!queue.empty()) {
        cancel.check();
        SparseVec v = std::move(queue.front());
        queue.pop_front();
        for (int a = 0; a < narr; ++a) {
            for (int side = 0; side < 2; ++side) {
                // nullopt: a composable term would leave the enumeration window
                auto prod = side == 0 ? left_arrow_mul(v, a) : right_arrow_mul(v, a);
                if (!prod || prod->empty()) continue;
                SparseVec r = span.reduce(std::move(*prod));
                if (r.empty()) continue;
                span.add(r);
                queue.push_back(std::move(r));
            }
        }
    }
}

IdealFixpoint IdealFixpoint::run(const Presentation& p, int cutoff, CancelToken cancel) {
    IdealFixpoint fx{p.field, PathSet::build(p.quiver, cutoff), DescRowSpan(p.field), -1, {}};

    std::vector<SparseVec> inserted;
    for (const auto& rel : p.relations) {
        SparseVec row;
        for (const auto& t : rel.terms) {
            std::vector<int> word;
            word.reserve(t.path.arrows.size());
            for (const auto& lbl : t.path.arrows) word.push_back(p.quiver.arrow_index(lbl));
            int idx = fx.ps.index_of(word, -1);
            if (idx < 0) {
                fx.failure = "cutoff insufficient: relation term '" + t.path.str() +
                             "' is longer than the cutoff";
                return fx;
            }
            sv_axpy(p.field, row, t.coeff, sv_unit(idx));
        }
        SparseVec r = fx.span.reduce(std::move(row));
        if (!r.empty()) {
            fx.span.add(r);
            inserted.push_back(std::move(r));
        }
    }

    // phase 1: saturate within the full window, then look for the nilpotency length
    fx.saturate(std::move(inserted), cancel);
    fx.scan_certificate(cutoff);
    if (fx.cert_length < 0) {
        fx.failure = fx.ps.capped
                         ? "path budget exceeded before certification; quiver may admit "
                           "unboundedly many paths at this cutoff"
                         : "cutoff insufficient: no length <= cutoff has all paths in the ideal";
        return fx;
    }

    // phase 2: with paths of the certified length known to vanish, products of
    // short rows stay representable; saturate until stable and re-scan (the
    // witness length can only shrink)
    while (true) {
        int before = fx.span.rank();
        std::vector<SparseVec> expand;
        for (const auto& [piv, row] : fx.span.rows()) {
            (void)piv;
            expand.push_back(row);
        }
        fx.saturate(std::move(expand), cancel);
        int old_cert = fx.cert_length;
        fx.scan_certificate(cutoff);
        if (fx.span.rank() == before && fx.cert_length == old_cert) break;
    }
    return fx;
}

std::vector<int> IdealFixpoint::normal_basis() const {
    std::vector<int> out;
    for (int i = 0; i < ps.len_begin[cert_length]; ++i)
        if (!span.is_pivot(i)) out.push_back(i);
    return out;
}

} // namespace djhp::detail
