#include "djhp/algebra.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace djhp {

SparseVec FDAlgebra::mul(const SparseVec& x, const SparseVec& y, CancelToken cancel) const {
    cancel.check();
    SparseVec out;
    for (const auto& [i, ci] : x.terms) {
        for (const auto& [j, cj] : y.terms) {
            const SparseVec* p = product_ptr(i, j);
            if (!p) continue;
            sv_axpy(field, out, field.mul(ci, cj), *p);
        }
    }
    return out;
}

SparseVec FDAlgebra::unit() const {
    std::vector<int> idx = idempotent_index;
    std::sort(idx.begin(), idx.end());
    SparseVec u;
    for (int i : idx) u.terms.emplace_back(i, field.one());
    return u;
}

std::vector<int> FDAlgebra::radical_indices() const {
    std::vector<int> out;
    for (int i = 0; i < dim(); ++i)
        if (is_radical(i)) out.push_back(i);
    return out;
}

std::vector<int> FDAlgebra::generator_indices() const {
    std::vector<int> gens = idempotent_index;
    std::sort(gens.begin(), gens.end());
    std::vector<int> rad = radical_indices();
    RowSpan acc(field); // rad^2 plus chosen generators
    for (int i : rad)
        for (int j : rad)
            if (const SparseVec* p = product_ptr(i, j)) acc.add(*p);
    for (int r : rad)
        if (acc.add(sv_unit(r))) gens.push_back(r);
    return gens;
}

std::optional<std::vector<int>> FDAlgebra::vertex_support(const SparseVec& e) const {
    std::vector<int> verts;
    for (const auto& [idx, c] : e.terms) {
        if (basis[idx].degree != 0 || c != field.one()) return std::nullopt;
        for (int v = 0; v < rank(); ++v)
            if (idempotent_index[v] == idx) {
                verts.push_back(v);
                break;
            }
    }
    return verts;
}

AlgebraElement multiply(const AlgebraElement& x, const AlgebraElement& y) {
    if (x.parent != y.parent) throw std::invalid_argument("mismatched parent algebra");
    return {x.parent, x.parent->mul(x.vec, y.vec)};
}

std::pair<SparseVec, SparseVec> radical_split(const FDAlgebra& A, const SparseVec& x) {
    SparseVec a1, a2;
    for (const auto& t : x.terms)
        (A.is_radical(t.first) ? a2 : a1).terms.push_back(t);
    return {a1, a2};
}

std::pair<AlgebraElement, AlgebraElement> radical_decompose(const AlgebraElement& x) {
    auto [a1, a2] = radical_split(*x.parent, x.vec);
    return {{x.parent, std::move(a1)}, {x.parent, std::move(a2)}};
}

// ---------------------------------------------------------------------------
// corners
// ---------------------------------------------------------------------------

CornerResult corner_algebra(const AlgebraPtr& A, const SparseVec& e) {
    SparseVec ee = A->mul(e, e);
    if (!(ee == e)) throw std::invalid_argument("corner_algebra: e is not idempotent");
    // eAe and e1Ae1 are conjugate (e - e1 is nilpotent), so the semisimple
    // part determines the corner up to canonical isomorphism.
    auto [e1, e2] = radical_split(*A, e);
    auto verts = A->vertex_support(e1);
    if (!verts)
        throw std::logic_error("corner_algebra: semisimple part of an idempotent must be a "
                               "0/1 combination of primitive idempotents");

    std::set<int> vset(verts->begin(), verts->end());
    auto keep = [&](int b) {
        return vset.count(A->basis[b].src) && vset.count(A->basis[b].tgt);
    };

    auto C = std::make_shared<FDAlgebra>();
    C->name = A->name + "_corner";
    C->field = A->field;
    CornerResult res;
    std::vector<int> vmap(A->rank(), -1);
    for (int v : *verts) {
        vmap[v] = static_cast<int>(C->vertex_labels.size());
        C->vertex_labels.push_back(A->vertex_labels[v]);
        res.parent_vertex.push_back(v);
    }
    std::vector<int> bmap(A->dim(), -1);
    for (int b = 0; b < A->dim(); ++b) {
        if (!keep(b)) continue;
        bmap[b] = static_cast<int>(C->basis.size());
        BasisElem be = A->basis[b];
        be.src = vmap[be.src];
        be.tgt = vmap[be.tgt];
        C->basis.push_back(std::move(be));
        res.parent_basis.push_back(b);
    }
    C->idempotent_index.resize(C->rank());
    for (int v : *verts) C->idempotent_index[vmap[v]] = bmap[A->idempotent_index[v]];
    for (int i = 0; i < A->dim(); ++i) {
        if (bmap[i] < 0) continue;
        for (int j = 0; j < A->dim(); ++j) {
            if (bmap[j] < 0) continue;
            const SparseVec* p = A->product_ptr(i, j);
            if (!p) continue;
            SparseVec q = sv_remap(*p, bmap);
            if (static_cast<int>(q.terms.size()) != p->size())
                throw std::logic_error("corner product leaves the corner span");
            if (!q.empty()) C->table.emplace(FDAlgebra::key(bmap[i], bmap[j]), std::move(q));
        }
    }
    res.algebra = C;
    return res;
}

// ---------------------------------------------------------------------------
// ideals, quotients, blocks
// ---------------------------------------------------------------------------

std::vector<SparseVec> ideal_closure(const FDAlgebra& A, const std::vector<SparseVec>& gens,
                                     CancelToken cancel) {
    RowSpan span(A.field);
    std::vector<SparseVec> queue;
    for (const auto& g : gens) {
        SparseVec r = span.reduce(g);
        if (r.empty()) continue;
        span.add(r);
        queue.push_back(std::move(r));
    }
    while (!queue.empty()) {
        cancel.check();
        SparseVec v = std::move(queue.back());
        queue.pop_back();
        for (int b = 0; b < A.dim(); ++b) {
            SparseVec unit = sv_unit(b);
            for (int side = 0; side < 2; ++side) {
                SparseVec prod = side == 0 ? A.mul(unit, v) : A.mul(v, unit);
                if (prod.empty()) continue;
                SparseVec r = span.reduce(std::move(prod));
                if (r.empty()) continue;
                span.add(r);
                queue.push_back(std::move(r));
            }
        }
    }

    // Two-sided ideals of a split elementary algebra are homogeneous for the
    // semisimple/radical split, and every primitive idempotent meeting the
    // semisimple part lies in the ideal. Re-express the span accordingly so
    // pivots never mix the two parts.
    std::set<int> dead_verts_idx;
    std::vector<SparseVec> rad_rows;
    for (const auto& [piv, row] : span.rows()) {
        (void)piv;
        auto [p1, p2] = radical_split(A, row);
        for (const auto& [idx, c] : p1.terms) {
            (void)c;
            dead_verts_idx.insert(idx);
        }
        if (!p2.empty()) rad_rows.push_back(std::move(p2));
    }
    RowSpan clean(A.field);
    for (int idx : dead_verts_idx) {
        if (!span.contains(sv_unit(idx)))
            throw std::logic_error("ideal closure violation: idempotent escaped the span");
        clean.add(sv_unit(idx));
    }
    for (auto& r : rad_rows) clean.add(std::move(r));
    if (clean.rank() != span.rank())
        throw std::logic_error("ideal closure violation: homogeneous split changed the span");

    std::vector<SparseVec> out;
    for (const auto& [piv, row] : clean.rows()) {
        (void)piv;
        out.push_back(row);
    }
    return out;
}

QuotientResult quotient_by_ideal(const AlgebraPtr& A, const std::vector<SparseVec>& gens,
                                 CancelToken cancel) {
    std::vector<SparseVec> rows = ideal_closure(*A, gens, cancel);
    RowSpan span(A->field);
    for (const auto& r : rows) span.add(r);

    QuotientResult res;
    res.ideal_dim = span.rank();
    std::vector<bool> pivot(A->dim(), false);
    for (int p : span.pivot_indices()) pivot[p] = true;
    std::vector<int> bmap(A->dim(), -1);
    for (int i = 0; i < A->dim(); ++i)
        if (!pivot[i]) {
            bmap[i] = static_cast<int>(res.kept_basis.size());
            res.kept_basis.push_back(i);
        }
    res.zero_algebra = res.kept_basis.empty();

    auto Q = std::make_shared<FDAlgebra>();
    Q->name = A->name + "_quot";
    Q->field = A->field;
    std::vector<int> vmap(A->rank(), -1);
    for (int v = 0; v < A->rank(); ++v) {
        if (pivot[A->idempotent_index[v]]) continue;
        vmap[v] = static_cast<int>(Q->vertex_labels.size());
        Q->vertex_labels.push_back(A->vertex_labels[v]);
    }
    for (int i : res.kept_basis) {
        BasisElem be = A->basis[i];
        be.src = vmap[be.src];
        be.tgt = vmap[be.tgt];
        if (be.src < 0 || be.tgt < 0)
            throw std::logic_error("kept basis element with a dead endpoint");
        Q->basis.push_back(std::move(be));
    }
    Q->idempotent_index.resize(Q->rank());
    for (int v = 0; v < A->rank(); ++v)
        if (vmap[v] >= 0) Q->idempotent_index[vmap[v]] = bmap[A->idempotent_index[v]];

    auto project = [&](const SparseVec& x) { return sv_remap(span.reduce(x), bmap); };
    for (int i = 0; i < A->dim(); ++i) res.projection.push_back(project(sv_unit(i)));
    for (int i : res.kept_basis) {
        for (int j : res.kept_basis) {
            const SparseVec* p = A->product_ptr(i, j);
            if (!p) continue;
            SparseVec q = project(*p);
            if (!q.empty()) Q->table.emplace(FDAlgebra::key(bmap[i], bmap[j]), std::move(q));
        }
    }
    res.algebra = Q;
    return res;
}

std::vector<BlockPart> block_decompose(const AlgebraPtr& A) {
    const int r = A->rank();
    std::vector<int> comp(r, -1);
    std::vector<std::vector<int>> adj(r);
    for (const auto& b : A->basis) {
        adj[b.src].push_back(b.tgt);
        adj[b.tgt].push_back(b.src);
    }
    int ncomp = 0;
    for (int v = 0; v < r; ++v) {
        if (comp[v] >= 0) continue;
        std::vector<int> stack{v};
        comp[v] = ncomp;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int w : adj[u])
                if (comp[w] < 0) {
                    comp[w] = ncomp;
                    stack.push_back(w);
                }
        }
        ++ncomp;
    }
    std::vector<BlockPart> blocks(ncomp);
    for (int v = 0; v < r; ++v) blocks[comp[v]].vertices.push_back(v);
    for (auto& blk : blocks) {
        SparseVec e;
        for (int v : blk.vertices)
            sv_axpy(A->field, e, A->field.one(), A->vertex_idempotent(v));
        blk.central_idempotent = e;
        blk.corner = corner_algebra(A, e);
    }
    return blocks;
}

// ---------------------------------------------------------------------------
// relabeling search
// ---------------------------------------------------------------------------

namespace {

struct RelabelSearch {
    const FDAlgebra& A;
    const FDAlgebra& B;
    const std::vector<int>& levelA;
    const std::vector<int>& levelB;
    long budget;
    std::vector<int> vmap;        // A vertex -> B vertex
    std::vector<int> bmap;        // A basis -> B basis
    std::vector<bool> used_b;     // B basis used
    std::vector<int> order;       // A basis indices in assignment order

    bool products_consistent(int x) {
        // check every product pair involving x whose factors are assigned and
        // whose image support is fully assigned
        for (int y : order) {
            if (bmap[y] < 0) break;
            for (int swap = 0; swap < 2; ++swap) {
                int i = swap ? y : x, j = swap ? x : y;
                const SparseVec* p = A.product_ptr(i, j);
                SparseVec expect;
                bool known = true;
                if (p)
                    for (const auto& [k, c] : p->terms) {
                        if (bmap[k] < 0) {
                            known = false;
                            break;
                        }
                        sv_axpy(B.field, expect, c, sv_unit(bmap[k]));
                    }
                if (!known) continue;
                const SparseVec* q = B.product_ptr(bmap[i], bmap[j]);
                SparseVec got = q ? *q : SparseVec{};
                if (!(got == expect)) return false;
            }
        }
        return true;
    }

    bool assign(std::size_t pos) {
        if (--budget <= 0) return false;
        if (pos == order.size()) return true;
        int x = order[pos];
        const BasisElem& bx = A.basis[x];
        for (int y = 0; y < B.dim(); ++y) {
            if (used_b[y]) continue;
            const BasisElem& by = B.basis[y];
            if (by.src != vmap[bx.src] || by.tgt != vmap[bx.tgt] || levelB[y] != levelA[x])
                continue;
            bmap[x] = y;
            used_b[y] = true;
            if (products_consistent(x) && assign(pos + 1)) return true;
            bmap[x] = -1;
            used_b[y] = false;
            if (budget <= 0) return false;
        }
        return false;
    }
};

std::vector<std::multiset<std::pair<int, int>>> vertex_signatures(
    const FDAlgebra& A, const std::vector<int>& level) {
    std::vector<std::multiset<std::pair<int, int>>> sig(A.rank());
    for (int i = 0; i < A.dim(); ++i) {
        const auto& b = A.basis[i];
        sig[b.src].insert({level[i], b.src == b.tgt ? 0 : 1});
        sig[b.tgt].insert({-level[i], b.src == b.tgt ? 0 : 1});
    }
    return sig;
}

} // namespace

std::optional<RelabelWitness> relabel_isomorphic(const FDAlgebra& A, const FDAlgebra& B,
                                                 long node_budget) {
    if (A.dim() != B.dim() || A.rank() != B.rank() || A.field != B.field) return std::nullopt;
    if (A.radical_indices().size() != B.radical_indices().size()) return std::nullopt;

    std::vector<int> levelA = radical_filtration_levels(A);
    std::vector<int> levelB = radical_filtration_levels(B);
    {
        std::multiset<int> la(levelA.begin(), levelA.end());
        std::multiset<int> lb(levelB.begin(), levelB.end());
        if (la != lb) return std::nullopt;
    }
    auto sigA = vertex_signatures(A, levelA), sigB = vertex_signatures(B, levelB);
    std::vector<int> vmap(A.rank(), -1);
    std::vector<bool> used(B.rank(), false);

    // assignment order: radical elements after idempotents, by level then index
    std::vector<int> order;
    for (int i = 0; i < A.dim(); ++i) order.push_back(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (levelA[a] != levelA[b]) return levelA[a] < levelA[b];
        return a < b;
    });

    long budget = node_budget;
    std::vector<int> found_bmap;
    std::function<bool(int)> assign_vertex = [&](int v) -> bool {
        if (v == A.rank()) {
            RelabelSearch rs{A, B, levelA, levelB, budget, vmap,
                             std::vector<int>(A.dim(), -1),
                             std::vector<bool>(B.dim(), false), order};
            bool ok = rs.assign(0);
            budget = rs.budget;
            if (ok) found_bmap = rs.bmap;
            return ok;
        }
        for (int w = 0; w < B.rank(); ++w) {
            if (used[w] || sigA[v] != sigB[w]) continue;
            vmap[v] = w;
            used[w] = true;
            if (assign_vertex(v + 1)) return true;
            vmap[v] = -1;
            used[w] = false;
            if (budget <= 0) return false;
        }
        return false;
    };

    if (assign_vertex(0)) {
        RelabelWitness w;
        w.vertex_map = vmap;
        w.basis_map = found_bmap;
        return w;
    }
    return std::nullopt;
}

bool same_structure_constants(const FDAlgebra& A, const FDAlgebra& B) {
    if (A.dim() != B.dim() || A.field != B.field) return false;
    if (A.idempotent_index != B.idempotent_index) return false;
    for (int i = 0; i < A.dim(); ++i)
        for (int j = 0; j < A.dim(); ++j) {
            const SparseVec* p = A.product_ptr(i, j);
            const SparseVec* q = B.product_ptr(i, j);
            if (!p && !q) continue;
            SparseVec pe = p ? *p : SparseVec{};
            SparseVec qe = q ? *q : SparseVec{};
            if (!(pe == qe)) return false;
        }
    return true;
}

// ---------------------------------------------------------------------------
// validation
// ---------------------------------------------------------------------------

std::vector<int> radical_filtration_levels(const FDAlgebra& A) {
    std::vector<int> level(A.dim(), 0);
    std::vector<int> rad = A.radical_indices();
    std::vector<SparseVec> cur;
    for (int r : rad) cur.push_back(sv_unit(r));
    int k = 1;
    while (!cur.empty() && k <= A.dim() + 1) {
        RowSpan span(A.field);
        for (const auto& v : cur) span.add(v);
        for (int i = 0; i < A.dim(); ++i)
            if (span.contains(sv_unit(i))) level[i] = k;
        RowSpan next(A.field);
        for (int r : rad)
            for (const auto& v : cur) {
                SparseVec p = A.mul(sv_unit(r), v);
                if (!p.empty()) next.add(std::move(p));
            }
        cur.clear();
        for (const auto& [piv, row] : next.rows()) {
            (void)piv;
            cur.push_back(row);
        }
        ++k;
    }
    return level;
}

int radical_nilpotency_index(const FDAlgebra& A) {
    std::vector<int> rad = A.radical_indices();
    std::vector<SparseVec> cur;
    for (int r : rad) cur.push_back(sv_unit(r));
    int n = 1;
    while (!cur.empty()) {
        if (n > A.dim() + 1) return -1;
        RowSpan next(A.field);
        for (int r : rad)
            for (const auto& v : cur) {
                SparseVec p = A.mul(sv_unit(r), v);
                if (!p.empty()) next.add(std::move(p));
            }
        cur.clear();
        for (const auto& [piv, row] : next.rows()) {
            (void)piv;
            cur.push_back(row);
        }
        ++n;
    }
    return n;
}

AlgebraCheck validate_algebra(const FDAlgebra& A, CancelToken cancel) {
    auto fail = [](std::string msg) { return AlgebraCheck{false, std::move(msg)}; };
    const int n = A.dim();

    // split-basis and idempotent layout
    std::set<int> idem(A.idempotent_index.begin(), A.idempotent_index.end());
    if (static_cast<int>(idem.size()) != A.rank()) return fail("duplicate idempotent indices");
    for (int i = 0; i < n; ++i) {
        bool is_idem = idem.count(i) != 0;
        if (is_idem != (A.basis[i].degree == 0))
            return fail("degree-0 basis elements must be exactly the primitive idempotents ("
                        + A.basis[i].label + ")");
    }
    for (int v = 0; v < A.rank(); ++v) {
        int e = A.idempotent_index[v];
        if (A.basis[e].src != v || A.basis[e].tgt != v)
            return fail("idempotent of vertex " + A.vertex_labels[v] + " has wrong endpoints");
    }

    // idempotent orthogonality and unit law
    for (int u = 0; u < A.rank(); ++u)
        for (int v = 0; v < A.rank(); ++v) {
            SparseVec p = A.mul(A.vertex_idempotent(u), A.vertex_idempotent(v));
            SparseVec expect = u == v ? A.vertex_idempotent(u) : SparseVec{};
            if (!(p == expect)) return fail("idempotent orthogonality fails");
        }
    SparseVec one = A.unit();
    for (int i = 0; i < n; ++i) {
        SparseVec b = sv_unit(i);
        if (!(A.mul(one, b) == b) || !(A.mul(b, one) == b))
            return fail("unit law fails on " + A.basis[i].label);
        // bigrading
        if (!(A.mul(A.vertex_idempotent(A.basis[i].tgt), b) == b))
            return fail("left idempotent action wrong on " + A.basis[i].label);
        if (!(A.mul(b, A.vertex_idempotent(A.basis[i].src)) == b))
            return fail("right idempotent action wrong on " + A.basis[i].label);
    }

    // associativity, exact, all triples
    for (int i = 0; i < n; ++i) {
        cancel.check();
        for (int j = 0; j < n; ++j) {
            const SparseVec* pij = A.product_ptr(i, j);
            for (int k = 0; k < n; ++k) {
                SparseVec lhs = pij ? A.mul(*pij, sv_unit(k)) : SparseVec{};
                const SparseVec* pjk = A.product_ptr(j, k);
                SparseVec rhs = pjk ? A.mul(sv_unit(i), *pjk) : SparseVec{};
                if (!(lhs == rhs))
                    return fail("associativity fails at (" + A.basis[i].label + ", " +
                                A.basis[j].label + ", " + A.basis[k].label + ")");
            }
        }
    }

    // radical: two-sided ideal with support inside the radical, nilpotent
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (!A.is_radical(i) && !A.is_radical(j)) continue;
            const SparseVec* p = A.product_ptr(i, j);
            if (!p) continue;
            for (const auto& [k, c] : p->terms) {
                (void)c;
                if (!A.is_radical(k))
                    return fail("radical ideal violated at (" + A.basis[i].label + ", " +
                                A.basis[j].label + ")");
            }
        }
    if (radical_nilpotency_index(A) < 0) return fail("radical is not nilpotent");

    return {};
}

} // namespace djhp
