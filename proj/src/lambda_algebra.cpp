#include "djhp/lambda_algebra.hpp"

namespace djhp {

LambdaAlgebra::Block LambdaAlgebra::block_of(int i) const {
    if (i < off12) return Block::B11;
    if (i < off21) return Block::B12;
    if (i < off22) return Block::B21;
    return Block::B22;
}

LambdaAlgebra build_lambda(const AlgebraPtr& A, const AlgebraPtr& B, CancelToken cancel) {
    LambdaAlgebra L;
    L.A = A;
    L.B = B;
    L.tensor = build_twisted_tensor(A, B, cancel);
    L.dimA = A->dim();
    L.dimB = B->dim();
    L.rankA = A->rank();
    L.rankB = B->rank();
    L.radB = B->radical_indices();
    L.nradB = static_cast<int>(L.radB.size());
    L.radB_pos.assign(L.dimB, -1);
    for (int k = 0; k < L.nradB; ++k) L.radB_pos[L.radB[k]] = k;
    L.off12 = L.dimA * L.dimB;
    L.off21 = L.off12 + L.dimA * L.nradB;
    L.off22 = L.off21 + L.rankA * L.dimB;
    const int dim = L.off22 + L.rankA * L.dimB;

    auto R = std::make_shared<FDAlgebra>();
    R->name = "Lambda(" + A->name + "," + B->name + ")";
    R->field = A->field;

    // vertices: first copy i^j, then second copy j^i, both in (i, j) lex order
    for (int i = 0; i < L.rankA; ++i)
        for (int j = 0; j < L.rankB; ++j)
            R->vertex_labels.push_back(A->vertex_labels[i] + "_" + B->vertex_labels[j]);
    for (int i = 0; i < L.rankA; ++i)
        for (int j = 0; j < L.rankB; ++j)
            R->vertex_labels.push_back(B->vertex_labels[j] + "_" + A->vertex_labels[i]);

    R->basis.resize(dim);
    auto alabel = [&](int ai) { return A->basis[ai].label; };
    auto blabel = [&](int bj) { return B->basis[bj].label; };
    for (int ai = 0; ai < L.dimA; ++ai)
        for (int bj = 0; bj < L.dimB; ++bj) {
            const BasisElem& ea = A->basis[ai];
            const BasisElem& eb = B->basis[bj];
            R->basis[L.idx11(ai, bj)] = {"11:(" + alabel(ai) + "|" + blabel(bj) + ")",
                                         L.vert1(ea.src, eb.src), L.vert1(ea.tgt, eb.tgt),
                                         ea.degree + 2 * eb.degree};
            if (B->is_radical(bj))
                R->basis[L.idx12(ai, bj)] = {"12:(" + alabel(ai) + "|" + blabel(bj) + ")",
                                             L.vert2(ea.src, eb.src), L.vert1(ea.tgt, eb.tgt),
                                             ea.degree + 2 * eb.degree - 1};
        }
    for (int v = 0; v < L.rankA; ++v)
        for (int bj = 0; bj < L.dimB; ++bj) {
            const BasisElem& eb = B->basis[bj];
            std::string ev = A->basis[A->idempotent_index[v]].label;
            R->basis[L.idx21(v, bj)] = {"21:(" + ev + "|" + blabel(bj) + ")",
                                        L.vert1(v, eb.src), L.vert2(v, eb.tgt),
                                        2 * eb.degree + 1};
            R->basis[L.idx22(v, bj)] = {"22:(" + ev + "|" + blabel(bj) + ")",
                                        L.vert2(v, eb.src), L.vert2(v, eb.tgt),
                                        2 * eb.degree};
        }

    R->idempotent_index.resize(2 * L.rankA * L.rankB);
    for (int i = 0; i < L.rankA; ++i)
        for (int j = 0; j < L.rankB; ++j) {
            R->idempotent_index[L.vert1(i, j)] =
                L.idx11(A->idempotent_index[i], B->idempotent_index[j]);
            R->idempotent_index[L.vert2(i, j)] = L.idx22(i, B->idempotent_index[j]);
        }

    const Field& f = R->field;
    auto put = [&](int i, int j, SparseVec v) {
        if (!v.empty()) R->table.emplace(FDAlgebra::key(i, j), std::move(v));
    };
    // bilinear expansion of an A-product and a B-product into a block target
    auto expand = [&](const SparseVec* pa, const SparseVec* pb, auto&& target) {
        SparseVec out;
        if (!pa || !pb) return out;
        for (const auto& [x, cx] : pa->terms)
            for (const auto& [y, cy] : pb->terms)
                sv_axpy(f, out, f.mul(cx, cy), sv_unit(target(x, y)));
        return out;
    };
    auto to11 = [&](int x, int y) { return L.idx11(x, y); };
    auto to12 = [&](int x, int y) { return L.idx12(x, y); };

    for (int ai = 0; ai < L.dimA; ++ai) {
        cancel.check();
        for (int bj = 0; bj < L.dimB; ++bj) {
            const int i11 = L.idx11(ai, bj);
            for (int ak = 0; ak < L.dimA; ++ak)
                for (int bl = 0; bl < L.dimB; ++bl) {
                    const bool twist_kills = A->is_radical(ak) && B->is_radical(bj);
                    if (twist_kills) continue;
                    const SparseVec* pa = A->product_ptr(ai, ak);
                    const SparseVec* pb = B->product_ptr(bj, bl);
                    // 11 * 11 -> 11 (mu_tau)
                    put(i11, L.idx11(ak, bl), expand(pa, pb, to11));
                    // 11 * 12 -> 12 (left action on the ideal)
                    if (B->is_radical(bl)) put(i11, L.idx12(ak, bl), expand(pa, pb, to12));
                }
        }
    }

    // products whose right factor lives in blocks 21/22 (A-side is a vertex)
    for (int ai = 0; ai < L.dimA; ++ai) {
        cancel.check();
        for (int bj = 0; bj < L.dimB; ++bj)
            for (int v = 0; v < L.rankA; ++v) {
                if (A->basis[ai].src != v) continue; // a * e_v = 0 unless s(a) = v
                for (int bl = 0; bl < L.dimB; ++bl) {
                    const SparseVec* pb = B->product_ptr(bj, bl);
                    if (!pb) continue;
                    if (B->is_radical(bj)) {
                        const int i12 = L.idx12(ai, bj);
                        // 12 * 21 -> 11 (phi: (a(x)b)(e_v(x)w) = a e_v (x) b w)
                        SparseVec out11;
                        for (const auto& [y, cy] : pb->terms)
                            sv_axpy(f, out11, cy, sv_unit(L.idx11(ai, y)));
                        put(i12, L.idx21(v, bl), std::move(out11));
                        // 12 * 22 -> 12
                        SparseVec out12;
                        for (const auto& [y, cy] : pb->terms)
                            sv_axpy(f, out12, cy, sv_unit(L.idx12(ai, y)));
                        put(i12, L.idx22(v, bl), std::move(out12));
                    }
                }
            }
    }

    // products whose left factor lives in blocks 21/22
    for (int v = 0; v < L.rankA; ++v) {
        cancel.check();
        for (int bj = 0; bj < L.dimB; ++bj)
            for (int bl = 0; bl < L.dimB; ++bl) {
                const SparseVec* pb = B->product_ptr(bj, bl);
                if (!pb) continue;
                // 21 * 11 -> 21 and 21 * 12 -> 22 (psi): right factor's A-side
                // must be an idempotent matching v
                const int ev = A->idempotent_index[v];
                SparseVec out21, out22;
                for (const auto& [y, cy] : pb->terms) {
                    sv_axpy(f, out21, cy, sv_unit(L.idx21(v, y)));
                    sv_axpy(f, out22, cy, sv_unit(L.idx22(v, y)));
                }
                put(L.idx21(v, bj), L.idx11(ev, bl), out21);
                if (B->is_radical(bl)) put(L.idx21(v, bj), L.idx12(ev, bl), out22);
                // 22 * 21 -> 21 and 22 * 22 -> 22 (plain products in Abar (x) B)
                put(L.idx22(v, bj), L.idx21(v, bl), std::move(out21));
                put(L.idx22(v, bj), L.idx22(v, bl), std::move(out22));
            }
    }

    for (int i = 0; i < L.rankA; ++i)
        for (int j = 0; j < L.rankB; ++j) {
            sv_axpy(f, L.e1, f.one(),
                    sv_unit(L.idx11(A->idempotent_index[i], B->idempotent_index[j])));
            sv_axpy(f, L.e2, f.one(), sv_unit(L.idx22(i, B->idempotent_index[j])));
        }

    L.algebra = R;
    return L;
}

// ---------------------------------------------------------------------------
// bimodule diagrams (independent of the assembled table)
// ---------------------------------------------------------------------------

namespace {

// elements of the four bimodules as sparse vectors over pair index a*dimB+b
struct PairOps {
    const FDAlgebra& A;
    const FDAlgebra& B;

    int pidx(int a, int b) const { return a * B.dim() + b; }

    // mu_tau on basis pairs (x in A(x)0B acting on y)
    SparseVec mu_tau(int ai, int bi, int aj, int bj) const {
        SparseVec out;
        if (A.is_radical(aj) && B.is_radical(bi)) return out;
        const SparseVec* pa = A.product_ptr(ai, aj);
        const SparseVec* pb = B.product_ptr(bi, bj);
        if (!pa || !pb) return out;
        for (const auto& [x, cx] : pa->terms)
            for (const auto& [y, cy] : pb->terms)
                sv_axpy(A.field, out, A.field.mul(cx, cy), sv_unit(pidx(x, y)));
        return out;
    }

    // plain product a a' (x) b b'
    SparseVec plain(int ai, int bi, int aj, int bj) const {
        SparseVec out;
        const SparseVec* pa = A.product_ptr(ai, aj);
        const SparseVec* pb = B.product_ptr(bi, bj);
        if (!pa || !pb) return out;
        for (const auto& [x, cx] : pa->terms)
            for (const auto& [y, cy] : pb->terms)
                sv_axpy(A.field, out, A.field.mul(cx, cy), sv_unit(pidx(x, y)));
        return out;
    }

    // right action of A(x)0B on Abar(x)B: (a (x) b)(a' (x) b') = a a'_1 (x) b b'
    SparseVec bar_right(int ai, int bi, int aj, int bj) const {
        if (A.is_radical(aj)) return {};
        return plain(ai, bi, aj, bj);
    }

    // psi: (a (x) b) (x) (a' (x) b') -> a a'_1 (x) b b', landing in Abar (x) B
    SparseVec psi(int ai, int bi, int aj, int bj) const {
        if (A.is_radical(aj)) return {};
        return plain(ai, bi, aj, bj);
    }

    SparseVec apply(const SparseVec& x, int aj, int bj,
                    SparseVec (PairOps::*op)(int, int, int, int) const) const {
        SparseVec out;
        for (const auto& [idx, c] : x.terms)
            sv_axpy(A.field, out, c, (this->*op)(idx / B.dim(), idx % B.dim(), aj, bj));
        return out;
    }

    SparseVec apply_right(int ai, int bi, const SparseVec& y,
                          SparseVec (PairOps::*op)(int, int, int, int) const) const {
        SparseVec out;
        for (const auto& [idx, c] : y.terms)
            sv_axpy(A.field, out, c, (this->*op)(ai, bi, idx / B.dim(), idx % B.dim()));
        return out;
    }
};

} // namespace

BimoduleDiagramReport verify_bimodule_diagrams(const AlgebraPtr& A, const AlgebraPtr& B,
                                               CancelToken cancel) {
    PairOps ops{*A, *B};
    std::vector<int> barA; // idempotent basis indices of A
    for (int v = 0; v < A->rank(); ++v) barA.push_back(A->idempotent_index[v]);
    std::vector<int> radB = B->radical_indices();
    std::vector<int> allB(B->dim());
    for (int j = 0; j < B->dim(); ++j) allB[j] = j;

    // diagram 1: x in Abar(x)B, y in A(x)radB, z in Abar(x)B
    //   x . phi(y (x) z)  ==  psi(x (x) y) . z
    int xi = 0;
    for (int xa : barA) {
        cancel.check();
        for (int xb : allB) {
            int yi = 0;
            for (int ya = 0; ya < A->dim(); ++ya)
                for (int yb : radB) {
                    int zi = 0;
                    for (int za : barA)
                        for (int zb : allB) {
                            SparseVec phi_yz = ops.plain(ya, yb, za, zb);
                            SparseVec lhs = ops.apply_right(xa, xb, phi_yz, &PairOps::bar_right);
                            SparseVec psi_xy = ops.psi(xa, xb, ya, yb);
                            SparseVec rhs = ops.apply(psi_xy, za, zb, &PairOps::plain);
                            if (!(lhs == rhs))
                                return {false, "(Abar(x)B, A(x)radB, Abar(x)B) square",
                                        std::tuple<int, int, int>{xi, yi, zi}};
                            ++zi;
                        }
                    ++yi;
                }
            ++xi;
        }
    }

    // diagram 2: x in A(x)radB, y in Abar(x)B, z in A(x)radB
    //   phi(x (x) y) . z  ==  x . psi(y (x) z)
    xi = 0;
    for (int xa = 0; xa < A->dim(); ++xa) {
        cancel.check();
        for (int xb : radB) {
            int yi = 0;
            for (int ya : barA)
                for (int yb : allB) {
                    int zi = 0;
                    for (int za = 0; za < A->dim(); ++za)
                        for (int zb : radB) {
                            SparseVec phi_xy = ops.plain(xa, xb, ya, yb);
                            SparseVec lhs = ops.apply(phi_xy, za, zb, &PairOps::mu_tau);
                            SparseVec psi_yz = ops.psi(ya, yb, za, zb);
                            SparseVec rhs = ops.apply_right(xa, xb, psi_yz, &PairOps::plain);
                            if (!(lhs == rhs))
                                return {false, "(A(x)radB, Abar(x)B, A(x)radB) square",
                                        std::tuple<int, int, int>{xi, yi, zi}};
                            ++zi;
                        }
                    ++yi;
                }
            ++xi;
        }
    }
    return {};
}

// ---------------------------------------------------------------------------
// recollement factors
// ---------------------------------------------------------------------------

RecollementFactors recollement_factors(const LambdaAlgebra& L, Recollement which,
                                       CancelToken cancel) {
    const AlgebraPtr& Lam = L.algebra;
    const SparseVec& e = which == Recollement::R1 ? L.e1 : L.e2;
    RecollementFactors out;
    out.quotient = quotient_by_ideal(Lam, {e}, cancel);
    out.corner = corner_algebra(Lam, e);

    auto identify_blocks = [&](const AlgebraPtr& alg, const FDAlgebra& target,
                               const std::string& name) {
        FactorBlockReport rep;
        auto blocks = block_decompose(alg);
        rep.block_count = static_cast<int>(blocks.size());
        rep.identified = true;
        for (const auto& blk : blocks) {
            rep.block_dims.push_back(blk.corner.algebra->dim());
            if (!relabel_isomorphic(*blk.corner.algebra, target).has_value())
                rep.identified = false;
        }
        rep.identified_as = rep.identified ? name : "";
        return rep;
    };

    if (which == Recollement::R1) {
        // quotient is commutative semisimple of dim rank(A)rank(B)
        FactorBlockReport q;
        q.block_count = out.quotient.algebra->rank();
        q.block_dims.assign(q.block_count, 1);
        q.identified = out.quotient.algebra->dim() == L.rankA * L.rankB &&
                       out.quotient.algebra->dim() == out.quotient.algebra->rank();
        q.identified_as =
            q.identified ? "k^" + std::to_string(L.rankA * L.rankB) : "";
        out.quotient_report = q;

        FactorBlockReport c;
        c.block_count = 1;
        c.block_dims = {out.corner.algebra->dim()};
        c.identified = same_structure_constants(*out.corner.algebra, *L.tensor.algebra);
        c.identified_as = c.identified ? L.tensor.algebra->name : "";
        out.corner_report = c;
    } else {
        out.quotient_report = identify_blocks(out.quotient.algebra, *L.A, L.A->name);
        out.corner_report = identify_blocks(out.corner.algebra, *L.B, L.B->name);
    }
    return out;
}

} // namespace djhp
