#include "djhp/twisted.hpp"

namespace djhp {

namespace {

std::string pair_label(const FDAlgebra& A, const FDAlgebra& B, int ai, int bj) {
    return "(" + A.basis[ai].label + "|" + B.basis[bj].label + ")";
}

/// mu_tau on basis pairs: (a (x) b)(a' (x) b') = aa' (x) bb' unless both a'
/// and b are radical, in which case the twisted correction cancels the term.
SparseVec basis_mu_tau(const FDAlgebra& A, const FDAlgebra& B, int ai, int bj, int aj, int bk) {
    SparseVec out;
    if (A.is_radical(aj) && B.is_radical(bj)) return out;
    const SparseVec* pa = A.product_ptr(ai, aj);
    const SparseVec* pb = B.product_ptr(bj, bk);
    if (!pa || !pb) return out;
    const int dimB = B.dim();
    for (const auto& [x, cx] : pa->terms)
        for (const auto& [y, cy] : pb->terms)
            sv_axpy(A.field, out, A.field.mul(cx, cy), sv_unit(x * dimB + y));
    return out;
}

} // namespace

TwistedTensor build_twisted_tensor(const AlgebraPtr& A, const AlgebraPtr& B, CancelToken cancel) {
    if (A->field != B->field) throw std::invalid_argument("factors over different fields");
    TwistedTensor T;
    T.A = A;
    T.B = B;

    auto R = std::make_shared<FDAlgebra>();
    R->name = A->name + "(x)0" + B->name;
    R->field = A->field;
    const int dimA = A->dim(), dimB = B->dim();
    const int rankB = B->rank();

    for (int i = 0; i < A->rank(); ++i)
        for (int j = 0; j < rankB; ++j)
            R->vertex_labels.push_back(A->vertex_labels[i] + "|" + B->vertex_labels[j]);
    auto vertex_of = [&](int av, int bv) { return av * rankB + bv; };

    R->basis.reserve(static_cast<std::size_t>(dimA) * dimB);
    for (int ai = 0; ai < dimA; ++ai)
        for (int bj = 0; bj < dimB; ++bj) {
            const BasisElem& ea = A->basis[ai];
            const BasisElem& eb = B->basis[bj];
            BasisElem e;
            e.label = pair_label(*A, *B, ai, bj);
            e.src = vertex_of(ea.src, eb.src);
            e.tgt = vertex_of(ea.tgt, eb.tgt);
            e.degree = ea.degree + eb.degree;
            R->basis.push_back(std::move(e));
            if (B->is_radical(bj)) T.ideal_A_radB.push_back(T.index(ai, bj));
            if (A->is_radical(ai)) T.ideal_radA_B.push_back(T.index(ai, bj));
        }
    R->idempotent_index.resize(R->vertex_labels.size());
    for (int i = 0; i < A->rank(); ++i)
        for (int j = 0; j < rankB; ++j)
            R->idempotent_index[vertex_of(i, j)] =
                A->idempotent_index[i] * dimB + B->idempotent_index[j];

    for (int ai = 0; ai < dimA; ++ai) {
        cancel.check();
        for (int bj = 0; bj < dimB; ++bj)
            for (int aj = 0; aj < dimA; ++aj)
                for (int bk = 0; bk < dimB; ++bk) {
                    SparseVec p = basis_mu_tau(*A, *B, ai, bj, aj, bk);
                    if (!p.empty())
                        R->table.emplace(
                            FDAlgebra::key(T.index(ai, bj), T.index(aj, bk)), std::move(p));
                }
    }

    T.algebra = R;
    return T;
}

SparseVec twist_tau(const FDAlgebra& A, const FDAlgebra& B, const SparseVec& b,
                    const SparseVec& a) {
    // tau(b (x) a) = a (x) b on basis pairs unless both are radical
    SparseVec out;
    const int dimB = B.dim();
    for (const auto& [bj, cb] : b.terms)
        for (const auto& [ai, ca] : a.terms) {
            if (A.is_radical(ai) && B.is_radical(bj)) continue;
            sv_axpy(A.field, out, A.field.mul(ca, cb), sv_unit(ai * dimB + bj));
        }
    return out;
}

TwistAxiomReport verify_twist_axioms(const AlgebraPtr& A, const AlgebraPtr& B,
                                     CancelToken cancel) {
    const Field& f = A->field;
    const int dimA = A->dim(), dimB = B->dim();

    auto tau_basis = [&](int bj, int ai) { return twist_tau(*A, *B, sv_unit(bj), sv_unit(ai)); };
    // apply mu_A (x) id_B / id_A (x) mu_B to a vector over the product basis,
    // multiplying by a fixed basis element on the stated side
    auto mulA_left = [&](int ai, const SparseVec& v) {
        SparseVec out;
        for (const auto& [idx, c] : v.terms) {
            int x = idx / dimB, y = idx % dimB;
            if (const SparseVec* p = A->product_ptr(ai, x))
                for (const auto& [z, cz] : p->terms)
                    sv_axpy(f, out, f.mul(c, cz), sv_unit(z * dimB + y));
        }
        return out;
    };
    auto mulB_right = [&](const SparseVec& v, int bk) {
        SparseVec out;
        for (const auto& [idx, c] : v.terms) {
            int x = idx / dimB, y = idx % dimB;
            if (const SparseVec* p = B->product_ptr(y, bk))
                for (const auto& [z, cz] : p->terms)
                    sv_axpy(f, out, f.mul(c, cz), sv_unit(x * dimB + z));
        }
        return out;
    };

    // first equality, on triples (b, a, a'): tau(b (x) aa') vs staged twists
    for (int bj = 0; bj < dimB; ++bj) {
        cancel.check();
        for (int ai = 0; ai < dimA; ++ai)
            for (int ak = 0; ak < dimA; ++ak) {
                const SparseVec* aa = A->product_ptr(ai, ak);
                SparseVec lhs = aa ? twist_tau(*A, *B, sv_unit(bj), *aa) : SparseVec{};
                // stage 1: tau (x) id_A on b (x) a (x) a' -> tau(b (x) a) (x) a'
                SparseVec stage1 = tau_basis(bj, ai);
                SparseVec rhs;
                for (const auto& [idx, c] : stage1.terms) {
                    int x = idx / dimB, y = idx % dimB;
                    // stage 2: id_A (x) tau, then stage 3: mu_A (x) id_B
                    SparseVec t2 = tau_basis(y, ak);
                    sv_axpy(f, rhs, c, mulA_left(x, t2));
                }
                if (!(lhs == rhs))
                    return {false, "tau o (id_B (x) mu_A)", std::tuple<int, int, int>{bj, ai, ak}};
            }
    }

    // second equality, on triples (b, b', a): tau(bb' (x) a) vs staged twists
    for (int bj = 0; bj < dimB; ++bj) {
        cancel.check();
        for (int bk = 0; bk < dimB; ++bk)
            for (int ai = 0; ai < dimA; ++ai) {
                const SparseVec* bb = B->product_ptr(bj, bk);
                SparseVec lhs = bb ? twist_tau(*A, *B, *bb, sv_unit(ai)) : SparseVec{};
                // (id_A (x) mu_B) o (tau (x) id_B) o (id_B (x) tau) on b (x) b' (x) a
                SparseVec stage1 = tau_basis(bk, ai); // tau(b' (x) a)
                SparseVec rhs;
                for (const auto& [idx, c] : stage1.terms) {
                    int x = idx / dimB, y = idx % dimB;
                    SparseVec t2 = tau_basis(bj, x); // tau(b (x) x)
                    sv_axpy(f, rhs, c, mulB_right(t2, y));
                }
                if (!(lhs == rhs))
                    return {false, "tau o (mu_B (x) id_A)", std::tuple<int, int, int>{bj, bk, ai}};
            }
    }
    return {};
}

AlgebraPtr semisimple_quotient(const AlgebraPtr& A) {
    auto S = std::make_shared<FDAlgebra>();
    S->name = A->name + "bar";
    S->field = A->field;
    S->vertex_labels = A->vertex_labels;
    for (int v = 0; v < A->rank(); ++v) {
        S->basis.push_back({A->basis[A->idempotent_index[v]].label, v, v, 0});
        S->idempotent_index.push_back(v);
        S->table.emplace(FDAlgebra::key(v, v), sv_unit(v));
    }
    return S;
}

RadicalIdealsResult radical_ideals(const TwistedTensor& T, CancelToken cancel) {
    const FDAlgebra& R = *T.algebra;
    RadicalIdealsResult res;

    // (A (x) rad B) * (rad A (x) B) vanishes product-by-product
    for (int i : T.ideal_A_radB)
        for (int j : T.ideal_radA_B)
            if (R.product_ptr(i, j))
                throw std::logic_error("nonzero product from (A(x)radB) * (radA(x)B)");

    auto make_pair = [&](const std::vector<int>& ideal) {
        RadicalIdealPair pair;
        pair.ideal_basis = ideal;
        std::vector<SparseVec> gens;
        gens.reserve(ideal.size());
        for (int i : ideal) gens.push_back(sv_unit(i));
        pair.quotient = quotient_by_ideal(T.algebra, gens, cancel);
        if (pair.quotient.ideal_dim != static_cast<int>(ideal.size()))
            throw std::logic_error("radical ideal is not closed");
        return pair;
    };
    res.a_radb = make_pair(T.ideal_A_radB);
    res.rada_b = make_pair(T.ideal_radA_B);

    // quotients match the plain tensor products with the semisimple factor
    TwistedTensor a_bbar = build_twisted_tensor(T.A, semisimple_quotient(T.B), cancel);
    TwistedTensor abar_b = build_twisted_tensor(semisimple_quotient(T.A), T.B, cancel);
    if (!same_structure_constants(*res.a_radb.quotient.algebra, *a_bbar.algebra))
        throw std::logic_error("quotient by A(x)radB does not match A(x)Bbar");
    if (!same_structure_constants(*res.rada_b.quotient.algebra, *abar_b.algebra))
        throw std::logic_error("quotient by radA(x)B does not match Abar(x)B");
    return res;
}

} // namespace djhp
