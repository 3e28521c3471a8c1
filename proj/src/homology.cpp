#include "djhp/homology.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

namespace djhp {

SparseVec LeftModule::apply_basis(int b, const SparseVec& v) const {
    SparseVec out;
    for (const auto& [j, c] : v.terms) sv_axpy(algebra->field, out, c, action[b][j]);
    return out;
}

SparseVec LeftModule::apply(const SparseVec& elem, const SparseVec& v) const {
    SparseVec out;
    for (const auto& [b, c] : elem.terms)
        sv_axpy(algebra->field, out, c, apply_basis(b, v));
    return out;
}

LeftModule zero_module(const AlgebraPtr& A) {
    LeftModule M;
    M.algebra = A;
    M.action.assign(A->dim(), {});
    return M;
}

LeftModule simple_module(const AlgebraPtr& A, int vertex) {
    LeftModule M;
    M.algebra = A;
    M.dim = 1;
    M.action.assign(A->dim(), std::vector<SparseVec>(1));
    M.action[A->idempotent_index[vertex]][0] = sv_unit(0);
    return M;
}

LeftModule regular_module(const AlgebraPtr& A) {
    LeftModule M;
    M.algebra = A;
    M.dim = A->dim();
    M.action.assign(A->dim(), std::vector<SparseVec>(A->dim()));
    for (int b = 0; b < A->dim(); ++b)
        for (int j = 0; j < A->dim(); ++j)
            if (const SparseVec* p = A->product_ptr(b, j)) M.action[b][j] = *p;
    return M;
}

LeftModule quotient_of_regular(const AlgebraPtr& A, const std::vector<SparseVec>& gens,
                               CancelToken cancel) {
    std::vector<SparseVec> rows = ideal_closure(*A, gens, cancel);
    RowSpan span(A->field);
    for (const auto& r : rows) span.add(r);
    std::vector<bool> pivot(A->dim(), false);
    for (int p : span.pivot_indices()) pivot[p] = true;
    std::vector<int> kept, bmap(A->dim(), -1);
    for (int i = 0; i < A->dim(); ++i)
        if (!pivot[i]) {
            bmap[i] = static_cast<int>(kept.size());
            kept.push_back(i);
        }
    LeftModule M;
    M.algebra = A;
    M.dim = static_cast<int>(kept.size());
    M.action.assign(A->dim(), std::vector<SparseVec>(M.dim));
    for (int b = 0; b < A->dim(); ++b)
        for (int j = 0; j < M.dim; ++j) {
            const SparseVec* p = A->product_ptr(b, kept[j]);
            if (p) M.action[b][j] = sv_remap(span.reduce(*p), bmap);
        }
    return M;
}

LeftModule submodule(const LeftModule& ambient, const std::vector<SparseVec>& vectors) {
    const Field& f = ambient.algebra->field;
    SpanSolver solver(f);
    std::vector<SparseVec> basis;
    for (const auto& v : vectors)
        if (solver.add(v)) basis.push_back(v);
    LeftModule M;
    M.algebra = ambient.algebra;
    M.dim = static_cast<int>(basis.size());
    M.action.assign(ambient.algebra->dim(), std::vector<SparseVec>(M.dim));
    for (int b = 0; b < ambient.algebra->dim(); ++b)
        for (int j = 0; j < M.dim; ++j) {
            SparseVec img = ambient.apply_basis(b, basis[j]);
            if (img.empty()) continue;
            auto coeffs = solver.express(img);
            if (!coeffs) throw std::invalid_argument("span is not action-closed");
            M.action[b][j] = *coeffs;
        }
    return M;
}

bool validate_module(const LeftModule& M) {
    const FDAlgebra& A = *M.algebra;
    for (int j = 0; j < M.dim; ++j)
        if (!(M.apply(A.unit(), sv_unit(j)) == sv_unit(j))) return false;
    for (int b1 = 0; b1 < A.dim(); ++b1)
        for (int b2 = 0; b2 < A.dim(); ++b2) {
            const SparseVec* p = A.product_ptr(b1, b2);
            for (int j = 0; j < M.dim; ++j) {
                SparseVec lhs = M.apply_basis(b1, M.action[b2][j]);
                SparseVec rhs = p ? M.apply(*p, sv_unit(j)) : SparseVec{};
                if (!(lhs == rhs)) return false;
            }
        }
    return true;
}

// ---------------------------------------------------------------------------
// projectives and covers
// ---------------------------------------------------------------------------

ProjectiveModule ProjectiveModule::make(const AlgebraPtr& A, std::vector<int> vertices) {
    ProjectiveModule P;
    P.algebra = A;
    P.summand_vertices = std::move(vertices);
    P.coord_of.assign(P.summand_vertices.size(), std::vector<int>(A->dim(), -1));
    for (int l = 0; l < static_cast<int>(P.summand_vertices.size()); ++l)
        for (int b = 0; b < A->dim(); ++b)
            if (A->basis[b].src == P.summand_vertices[l]) {
                P.coord_of[l][b] = static_cast<int>(P.coords.size());
                P.coords.emplace_back(l, b);
            }
    return P;
}

LeftModule ProjectiveModule::as_module() const {
    const FDAlgebra& A = *algebra;
    LeftModule M;
    M.algebra = algebra;
    M.dim = dim();
    M.action.assign(A.dim(), std::vector<SparseVec>(M.dim));
    for (int b = 0; b < A.dim(); ++b)
        for (int k = 0; k < M.dim; ++k) {
            auto [l, x] = coords[k];
            const SparseVec* p = A.product_ptr(b, x);
            if (!p) continue;
            SparseVec img;
            for (const auto& [y, c] : p->terms) {
                int ci = coord_of[l][y];
                if (ci < 0) throw std::logic_error("projective action left its summand");
                sv_axpy(A.field, img, c, sv_unit(ci));
            }
            M.action[b][k] = std::move(img);
        }
    return M;
}

namespace {

/// Deterministic top lifts: per vertex (ascending), the lexicographically
/// first e_v-columns independent modulo rad M + previous picks.
struct TopPicks {
    std::vector<std::vector<SparseVec>> per_vertex;
    int total = 0;
};

TopPicks pick_top_generators(const LeftModule& M) {
    const FDAlgebra& A = *M.algebra;
    RowSpan acc(A.field);
    for (int r : A.radical_indices())
        for (int j = 0; j < M.dim; ++j)
            if (!M.action[r][j].empty()) acc.add(M.action[r][j]);
    TopPicks picks;
    picks.per_vertex.resize(A.rank());
    for (int v = 0; v < A.rank(); ++v) {
        int ev = A.idempotent_index[v];
        for (int j = 0; j < M.dim; ++j) {
            const SparseVec& cand = M.action[ev][j];
            if (cand.empty()) continue;
            if (acc.add(cand)) {
                picks.per_vertex[v].push_back(cand);
                ++picks.total;
            }
        }
    }
    if (acc.rank() != M.dim)
        throw std::logic_error("top lifts plus radical fail to span the module");
    return picks;
}

CoverStep cover_from(const LeftModule& M, ProjectiveModule P,
                     std::vector<SparseVec> generators) {
    const FDAlgebra& A = *M.algebra;
    CoverStep step;
    step.P = std::move(P);
    step.generators = std::move(generators);
    step.cover_columns.resize(step.P.dim());
    for (int k = 0; k < step.P.dim(); ++k) {
        auto [l, x] = step.P.coords[k];
        step.cover_columns[k] = M.apply_basis(x, step.generators[l]);
    }
    step.kernel = kernel_basis(A.field, step.cover_columns);
    if (static_cast<int>(step.kernel.size()) != step.P.dim() - M.dim)
        throw std::logic_error("cover map is not surjective");

    LeftModule Pmod = step.P.as_module();
    SpanSolver solver(A.field);
    for (const auto& k : step.kernel) solver.add(k);
    step.syzygy.algebra = M.algebra;
    step.syzygy.dim = static_cast<int>(step.kernel.size());
    step.syzygy.action.assign(A.dim(), std::vector<SparseVec>(step.syzygy.dim));
    for (int b = 0; b < A.dim(); ++b)
        for (int j = 0; j < step.syzygy.dim; ++j) {
            SparseVec img = Pmod.apply_basis(b, step.kernel[j]);
            if (img.empty()) continue;
            auto coeffs = solver.express(img);
            if (!coeffs) throw std::logic_error("kernel is not action-closed");
            step.syzygy.action[b][j] = *coeffs;
        }
    return step;
}

} // namespace

CoverStep projective_cover(const LeftModule& M) {
    if (M.dim == 0) {
        CoverStep step;
        step.P = ProjectiveModule::make(M.algebra, {});
        step.syzygy = zero_module(M.algebra);
        return step;
    }
    TopPicks picks = pick_top_generators(M);
    std::vector<int> verts;
    std::vector<SparseVec> gens;
    for (int v = 0; v < M.algebra->rank(); ++v)
        for (const auto& g : picks.per_vertex[v]) {
            verts.push_back(v);
            gens.push_back(g);
        }
    return cover_from(M, ProjectiveModule::make(M.algebra, std::move(verts)), std::move(gens));
}

CoverStep free_cover(const LeftModule& M) {
    if (M.dim == 0) {
        CoverStep step;
        step.P = ProjectiveModule::make(M.algebra, {});
        step.syzygy = zero_module(M.algebra);
        return step;
    }
    TopPicks picks = pick_top_generators(M);
    const int rank = M.algebra->rank();
    int copies = 0;
    for (int v = 0; v < rank; ++v)
        copies = std::max(copies, static_cast<int>(picks.per_vertex[v].size()));
    std::vector<int> verts;
    std::vector<SparseVec> gens;
    for (int c = 0; c < copies; ++c)
        for (int v = 0; v < rank; ++v) {
            verts.push_back(v);
            gens.push_back(c < static_cast<int>(picks.per_vertex[v].size())
                               ? picks.per_vertex[v][c]
                               : SparseVec{});
        }
    return cover_from(M, ProjectiveModule::make(M.algebra, std::move(verts)), std::move(gens));
}

// ---------------------------------------------------------------------------
// resolutions
// ---------------------------------------------------------------------------

namespace {

Resolution resolve(const LeftModule& M, int max_degree, bool minimal, const IsoOptions& opts,
                   CancelToken cancel) {
    Resolution res;
    res.M = M;
    LeftModule cur = M;
    std::vector<SparseVec> prev_kernel; // embedding of cur into the previous P
    for (int deg = 0; deg <= max_degree; ++deg) {
        cancel.check();
        if (cur.dim == 0) {
            res.status = ResolutionStatus::Terminated;
            return res;
        }
        CoverStep step = minimal ? projective_cover(cur) : free_cover(cur);
        if (deg == 0) {
            res.maps.push_back(step.cover_columns);
        } else {
            // compose with the embedding of cur = Omega_deg into P_{deg-1}
            std::vector<SparseVec> cols(step.P.dim());
            for (int k = 0; k < step.P.dim(); ++k) {
                SparseVec out;
                for (const auto& [j, c] : step.cover_columns[k].terms)
                    sv_axpy(M.algebra->field, out, c, prev_kernel[j]);
                cols[k] = std::move(out);
            }
            res.maps.push_back(std::move(cols));
        }
        res.components.push_back(step.P);
        res.syzygies.push_back(step.syzygy);
        prev_kernel = step.kernel;

        if (minimal) {
            int t = static_cast<int>(res.syzygies.size()) - 1;
            int lo = std::max(0, t - opts.window);
            for (int s = lo; s < t; ++s) {
                if (res.syzygies[s].dim != res.syzygies[t].dim) continue;
                if (modules_isomorphic(res.syzygies[s], res.syzygies[t], opts)) {
                    res.status = ResolutionStatus::Periodic;
                    res.periodic_start = s + 1; // syzygies[i] = Omega_{i+1}
                    res.periodic_end = t + 1;
                    return res;
                }
            }
        }
        cur = step.syzygy;
    }
    res.status = cur.dim == 0 ? ResolutionStatus::Terminated : ResolutionStatus::Truncated;
    return res;
}

} // namespace

Resolution minimal_resolution(const LeftModule& M, int max_degree, const IsoOptions& opts,
                              CancelToken cancel) {
    return resolve(M, max_degree, true, opts, cancel);
}

Resolution free_resolution(const LeftModule& M, int max_degree, CancelToken cancel) {
    return resolve(M, max_degree, false, IsoOptions{}, cancel);
}

std::string resolution_to_json(const Resolution& res) {
    std::ostringstream out;
    out << "{\n  \"format\": \"djhp-resolution/1\",\n  \"status\": \"";
    out << (res.status == ResolutionStatus::Terminated ? "terminated"
            : res.status == ResolutionStatus::Periodic ? "periodic" : "truncated");
    out << "\",\n  \"degrees\": [";
    const FDAlgebra& A = *res.M.algebra;
    for (std::size_t d = 0; d < res.components.size(); ++d) {
        if (d) out << ",";
        out << "\n    {\"multiset\": {";
        std::map<int, int> mult;
        for (int v : res.components[d].summand_vertices) mult[v]++;
        bool first = true;
        for (const auto& [v, n] : mult) {
            if (!first) out << ", ";
            first = false;
            out << "\"" << A.vertex_labels[v] << "\": " << n;
        }
        out << "}, \"differential\": [";
        first = true;
        for (std::size_t col = 0; col < res.maps[d].size(); ++col)
            for (const auto& [row, c] : res.maps[d][col].terms) {
                if (!first) out << ", ";
                first = false;
                out << "[" << row << ", " << col << ", \""
                    << boost::multiprecision::numerator(c).str() << "\", \""
                    << boost::multiprecision::denominator(c).str() << "\"]";
            }
        out << "]}";
    }
    out << "\n  ]\n}\n";
    return out.str();
}

ResolutionCheck resolution_exact(const Resolution& res) {
    auto fail = [](std::string s) { return ResolutionCheck{false, std::move(s)}; };
    const int n = static_cast<int>(res.components.size());
    if (n == 0) return {};
    const Field& f = res.M.algebra->field;

    std::vector<int> ranks(n + 1, 0);
    for (int d = 0; d < n; ++d) ranks[d] = rank_of(f, res.maps[d]);
    // surjectivity of the augmentation
    if (ranks[0] != res.M.dim) return fail("augmentation not surjective");
    for (int d = 0; d + 1 < n; ++d) {
        // d o d = 0
        for (const auto& col : res.maps[d + 1]) {
            SparseVec img;
            for (const auto& [j, c] : col.terms) sv_axpy(f, img, c, res.maps[d][j]);
            if (!img.empty()) return fail("d o d != 0 at degree " + std::to_string(d + 1));
        }
        // exact at P_d: rank d_{d+1} + rank d_d = dim P_d
        if (ranks[d + 1] + ranks[d] != res.components[d].dim())
            return fail("homology at degree " + std::to_string(d));
    }
    if (res.status == ResolutionStatus::Terminated && n >= 1) {
        if (ranks[n - 1] != res.components[n - 1].dim())
            return fail("terminated resolution has a kernel at the top");
        // Euler characteristic
        long chi = 0;
        for (int d = 0; d < n; ++d) chi += (d % 2 ? -1 : 1) * res.components[d].dim();
        if (chi != res.M.dim) return fail("Euler characteristic mismatch");
    }
    return {};
}

ResolutionCheck resolution_minimal(const Resolution& res) {
    for (std::size_t d = 1; d < res.maps.size(); ++d)
        for (const auto& col : res.maps[d])
            for (const auto& [idx, c] : col.terms) {
                (void)c;
                auto [l, x] = res.components[d - 1].coords[idx];
                (void)l;
                if (res.M.algebra->basis[x].degree == 0)
                    return {false, "differential at degree " + std::to_string(d) +
                                       " has a component outside the radical"};
            }
    return {};
}

// ---------------------------------------------------------------------------
// module isomorphism
// ---------------------------------------------------------------------------

namespace {

struct GradedModule {
    std::vector<std::vector<SparseVec>> vertex_basis; // per vertex, vectors in M coords
    std::vector<int> offsets;                         // flat index of each vertex block
    SpanSolver solver;                                // expresses vectors in the graded basis

    explicit GradedModule(const Field& f) : solver(f) {}
};

GradedModule grade_module(const LeftModule& M) {
    const FDAlgebra& A = *M.algebra;
    GradedModule g(A.field);
    g.vertex_basis.resize(A.rank());
    int total = 0;
    for (int v = 0; v < A.rank(); ++v) {
        g.offsets.push_back(total);
        int ev = A.idempotent_index[v];
        RowSpan span(A.field);
        for (int j = 0; j < M.dim; ++j) {
            const SparseVec& cand = M.action[ev][j];
            if (cand.empty()) continue;
            if (span.add(cand)) {
                g.vertex_basis[v].push_back(cand);
                g.solver.add(cand);
                ++total;
            }
        }
    }
    if (total != M.dim) throw std::logic_error("idempotent grading does not span the module");
    return g;
}

} // namespace

bool modules_isomorphic(const LeftModule& M, const LeftModule& N, const IsoOptions& opts) {
    if (M.algebra != N.algebra) return false;
    if (M.dim != N.dim) return false;
    if (M.dim == 0) return true;
    const FDAlgebra& A = *M.algebra;
    const Field& f = A.field;

    GradedModule gm = grade_module(M), gn = grade_module(N);
    for (int v = 0; v < A.rank(); ++v)
        if (gm.vertex_basis[v].size() != gn.vertex_basis[v].size()) return false;

    // unknowns: per vertex an (n_v x m_v) block
    std::vector<int> uoff(A.rank() + 1, 0);
    for (int v = 0; v < A.rank(); ++v) {
        int m = static_cast<int>(gm.vertex_basis[v].size());
        uoff[v + 1] = uoff[v] + m * m;
    }
    const int nunknown = uoff[A.rank()];
    if (nunknown == 0) return true;

    // graded action matrix of generator g on M: block (tgt <- src)
    auto graded_entry = [&](const GradedModule& G, const LeftModule& Mod, int gen, int src,
                            int tgt) {
        // columns over the tgt block for each src-basis vector
        std::vector<SparseVec> cols;
        for (const auto& vec : G.vertex_basis[src]) {
            SparseVec img = Mod.apply_basis(gen, vec);
            SparseVec col;
            if (!img.empty()) {
                auto coeffs = G.solver.express(img);
                if (!coeffs) throw std::logic_error("action leaves the graded span");
                // keep only the tgt block, rebased to 0
                for (const auto& [idx, c] : coeffs->terms) {
                    int lo = G.offsets[tgt];
                    int hi = lo + static_cast<int>(G.vertex_basis[tgt].size());
                    if (idx < lo || idx >= hi)
                        throw std::logic_error("graded action crosses vertex blocks");
                    col.terms.emplace_back(idx - lo, c);
                }
            }
            cols.push_back(std::move(col));
        }
        return cols;
    };

    // equations: X_tgt * G_M - G_N * X_src = 0 for each radical generator
    std::vector<SparseVec> eq_cols(nunknown);
    int neq = 0;
    auto unknown_index = [&](int v, int r, int c) {
        return uoff[v] + r * static_cast<int>(gm.vertex_basis[v].size()) + c;
    };
    for (int gen : A.generator_indices()) {
        if (!A.is_radical(gen)) continue;
        int src = A.basis[gen].src, tgt = A.basis[gen].tgt;
        int msrc = static_cast<int>(gm.vertex_basis[src].size());
        int mtgt = static_cast<int>(gm.vertex_basis[tgt].size());
        if (msrc == 0 || mtgt == 0) continue;
        auto GM = graded_entry(gm, M, gen, src, tgt);
        auto GN = graded_entry(gn, N, gen, src, tgt);
        for (int r = 0; r < mtgt; ++r)
            for (int c = 0; c < msrc; ++c) {
                int eq = neq++;
                // sum_s X_tgt[r][s] * GM[c][s]
                for (const auto& [s, coeff] : GM[c].terms)
                    eq_cols[unknown_index(tgt, r, s)].terms.emplace_back(eq, coeff);
                // - sum_t GN[t-col...]: (G_N * X_src)[r][c] = sum_t GN[t][r] X_src[t][c]
                for (int t = 0; t < msrc; ++t) {
                    const Scalar* entry = GN[t].coeff(r);
                    if (entry)
                        eq_cols[unknown_index(src, t, c)].terms.emplace_back(eq, f.neg(*entry));
                }
            }
    }
    for (auto& col : eq_cols)
        std::sort(col.terms.begin(), col.terms.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });

    std::vector<SparseVec> solutions = kernel_basis(f, eq_cols);
    if (solutions.empty()) return false;

    auto invertible = [&](const SparseVec& flat) {
        for (int v = 0; v < A.rank(); ++v) {
            int m = static_cast<int>(gm.vertex_basis[v].size());
            if (m == 0) continue;
            std::vector<SparseVec> cols(m);
            for (const auto& [idx, c] : flat.terms) {
                if (idx < uoff[v] || idx >= uoff[v + 1]) continue;
                int r = (idx - uoff[v]) / m, cc = (idx - uoff[v]) % m;
                cols[cc].terms.emplace_back(r, c);
            }
            for (auto& col : cols)
                std::sort(col.terms.begin(), col.terms.end(),
                          [](const auto& a, const auto& b) { return a.first < b.first; });
            if (rank_of(f, cols) != m) return false;
        }
        return true;
    };

    for (const auto& sol : solutions)
        if (invertible(sol)) return true;

    const int k = static_cast<int>(solutions.size());
    if (k == 1) return false; // the line through the only solution was tested

    if (!f.is_rational()) {
        // exact enumeration when the solution space is small
        double total = 1;
        for (int i = 0; i < k; ++i) total *= static_cast<double>(f.characteristic());
        if (total <= 4096) {
            std::vector<int> tuple(k, 0);
            while (true) {
                int pos = 0;
                while (pos < k && ++tuple[pos] == static_cast<int>(f.characteristic())) {
                    tuple[pos] = 0;
                    ++pos;
                }
                if (pos == k) break;
                SparseVec comb;
                for (int i = 0; i < k; ++i)
                    if (tuple[i]) sv_axpy(f, comb, f.from_long(tuple[i]), solutions[i]);
                if (!comb.empty() && invertible(comb)) return true;
            }
            return false;
        }
    }

    std::mt19937_64 rng(opts.seed);
    std::uniform_int_distribution<int> dist(-3, 3);
    for (int s = 0; s < opts.samples; ++s) {
        SparseVec comb;
        for (int i = 0; i < k; ++i) {
            int c = dist(rng);
            if (c) sv_axpy(f, comb, f.from_long(c), solutions[i]);
        }
        if (!comb.empty() && invertible(comb)) return true;
    }
    return false;
}

// ---------------------------------------------------------------------------
// tilde
// ---------------------------------------------------------------------------

LeftModule tilde_module(const LambdaAlgebra& L, const LeftModule& M_over_B) {
    if (M_over_B.algebra != L.B)
        throw std::invalid_argument("tilde_module expects a module over the B factor");
    const FDAlgebra& A = *L.A;
    const FDAlgebra& B = *L.B;
    const FDAlgebra& Lam = *L.algebra;
    const Field& f = Lam.field;
    const int m = M_over_B.dim;
    const int top = A.dim() * m; // coords (a, j) = a*m + j; bottom (v, j) = top + v*m + j

    LeftModule T;
    T.algebra = L.algebra;
    T.dim = top + A.rank() * m;
    T.action.assign(Lam.dim(), std::vector<SparseVec>(T.dim));

    auto bmodule = [&](int w, int j) { return M_over_B.action[w][j]; };

    for (int lb = 0; lb < Lam.dim(); ++lb) {
        auto blk = L.block_of(lb);
        if (blk == LambdaAlgebra::Block::B11) {
            int u = lb / L.dimB, w = lb % L.dimB;
            // on top (a, j): (u (x) w)(a (x) m_j) = ua (x) w1 m + u a1 (x) w2 m
            for (int a = 0; a < A.dim(); ++a) {
                if (B.is_radical(w) && A.is_radical(a)) continue;
                const SparseVec* pa = A.product_ptr(u, a);
                if (!pa) continue;
                for (int j = 0; j < m; ++j) {
                    const SparseVec& wm = bmodule(w, j);
                    if (wm.empty()) continue;
                    SparseVec img;
                    for (const auto& [x, cx] : pa->terms)
                        for (const auto& [q, cq] : wm.terms)
                            sv_axpy(f, img, f.mul(cx, cq), sv_unit(x * m + q));
                    sv_axpy(f, T.action[lb][a * m + j], f.one(), img);
                }
            }
        } else if (blk == LambdaAlgebra::Block::B12) {
            int rel = lb - L.off12;
            int u = rel / L.nradB, w = L.radB[rel % L.nradB];
            // on bottom (v, j): (u (x) w)(e_v (x) m_j) = u e_v (x) w m_j
            int v = A.basis[u].src;
            for (int j = 0; j < m; ++j) {
                const SparseVec& wm = bmodule(w, j);
                SparseVec img;
                for (const auto& [q, cq] : wm.terms) sv_axpy(f, img, cq, sv_unit(u * m + q));
                T.action[lb][top + v * m + j] = std::move(img);
            }
        } else if (blk == LambdaAlgebra::Block::B21) {
            int rel = lb - L.off21;
            int v = rel / L.dimB, w = rel % L.dimB;
            // on top (a, j): (e_v (x) w)(a (x) m_j) = e_v a1 (x) w m_j
            int ev = A.idempotent_index[v];
            for (int j = 0; j < m; ++j) {
                const SparseVec& wm = bmodule(w, j);
                SparseVec img;
                for (const auto& [q, cq] : wm.terms)
                    sv_axpy(f, img, cq, sv_unit(top + v * m + q));
                T.action[lb][ev * m + j] = std::move(img);
            }
        } else {
            int rel = lb - L.off22;
            int v = rel / L.dimB, w = rel % L.dimB;
            // on bottom (u, j): (e_v (x) w)(e_u (x) m_j) = delta_{uv} e_v (x) w m_j
            for (int j = 0; j < m; ++j) {
                const SparseVec& wm = bmodule(w, j);
                SparseVec img;
                for (const auto& [q, cq] : wm.terms)
                    sv_axpy(f, img, cq, sv_unit(top + v * m + q));
                T.action[lb][top + v * m + j] = std::move(img);
            }
        }
    }
    return T;
}

Resolution tilde_resolution(const LambdaAlgebra& L, const LeftModule& M_over_B,
                            const Resolution& res_over_B) {
    const FDAlgebra& A = *L.A;
    const FDAlgebra& B = *L.B;
    const Field& f = L.algebra->field;
    const int m = M_over_B.dim;
    if (res_over_B.M.algebra != L.B)
        throw std::invalid_argument("tilde_resolution expects a resolution over the B factor");

    Resolution out;
    out.M = tilde_module(L, M_over_B);
    out.status = res_over_B.status;
    const int top = A.dim() * m;

    // tilde(B e_w) = (+)_{i} Lambda e_{i^w}: every B-summand (l, w) becomes
    // rankA Lambda-summands, indexed l*rankA + i.
    for (std::size_t d = 0; d < res_over_B.components.size(); ++d) {
        const ProjectiveModule& PB = res_over_B.components[d];
        std::vector<int> verts;
        for (int w : PB.summand_vertices)
            for (int i = 0; i < L.rankA; ++i) verts.push_back(L.vert1(i, w));
        ProjectiveModule PL = ProjectiveModule::make(L.algebra, std::move(verts));

        const auto& bcols = res_over_B.maps[d];
        const ProjectiveModule* PBprev = d == 0 ? nullptr : &res_over_B.components[d - 1];

        std::vector<SparseVec> cols(PL.dim());
        for (int k = 0; k < PL.dim(); ++k) {
            auto [lsum, x] = PL.coords[k];
            const int l = lsum / L.rankA;  // B-side summand
            const int i = lsum % L.rankA;  // A-vertex of this Lambda summand
            auto xblk = L.block_of(x);
            int a = -1, b = -1, bottom_v = -1;
            if (xblk == LambdaAlgebra::Block::B11) {
                a = x / L.dimB;
                b = x % L.dimB;
            } else if (xblk == LambdaAlgebra::Block::B21) {
                bottom_v = (x - L.off21) / L.dimB;
                b = (x - L.off21) % L.dimB;
            } else {
                throw std::logic_error("Lambda e1 coordinate outside blocks 11/21");
            }
            int bcoord = PB.coord_of[l][b];
            if (bcoord < 0) throw std::logic_error("missing B-side coordinate");
            const SparseVec& bimg = bcols[bcoord];
            SparseVec img;
            if (d == 0) {
                // augmentation into tilde(M): top (a, q) or bottom (v, q)
                for (const auto& [q, c] : bimg.terms)
                    sv_axpy(f, img, c,
                            sv_unit(xblk == LambdaAlgebra::Block::B11 ? a * m + q
                                                                      : top + bottom_v * m + q));
            } else {
                for (const auto& [bq, c] : bimg.terms) {
                    auto [l2, b2] = PBprev->coords[bq];
                    int lsum2 = l2 * L.rankA + i;
                    int lx2 = xblk == LambdaAlgebra::Block::B11 ? L.idx11(a, b2)
                                                                : L.idx21(bottom_v, b2);
                    int target = out.components[d - 1].coord_of[lsum2][lx2];
                    if (target < 0) throw std::logic_error("missing Lambda-side coordinate");
                    sv_axpy(f, img, c, sv_unit(target));
                }
            }
            cols[k] = std::move(img);
        }
        out.components.push_back(std::move(PL));
        out.maps.push_back(std::move(cols));
    }

    ResolutionCheck check = resolution_exact(out);
    if (!check.ok)
        throw std::logic_error("tilde resolution failed exactness: " + check.first_failure);
    return out;
}

// ---------------------------------------------------------------------------
// stratifying certificates and global dimension
// ---------------------------------------------------------------------------

namespace {

std::string multiset_string(const FDAlgebra& A, const std::vector<int>& verts) {
    std::map<int, int> mult;
    for (int v : verts) mult[v]++;
    std::ostringstream out;
    bool first = true;
    for (const auto& [v, n] : mult) {
        if (!first) out << " + ";
        first = false;
        out << "P(" << A.vertex_labels[v] << ")";
        if (n > 1) out << "^" << n;
    }
    if (first) out << "0";
    return out.str();
}

std::vector<int> require_vertex_idempotent(const FDAlgebra& A, const SparseVec& e) {
    if (!(A.mul(e, e) == e)) throw std::invalid_argument("e is not idempotent");
    auto supp = A.vertex_support(e);
    if (!supp)
        throw std::invalid_argument("stratifying checks need a sum of primitive idempotents");
    return *supp;
}

std::string idempotent_label(const FDAlgebra& A, const std::vector<int>& supp) {
    std::ostringstream out;
    out << "e(";
    for (std::size_t i = 0; i < supp.size(); ++i) {
        if (i) out << "+";
        out << A.vertex_labels[supp[i]];
    }
    out << ")";
    return out.str();
}

} // namespace

StratifyingCertificate check_stratifying_criterion(const AlgebraPtr& A, const SparseVec& e,
                                                   int depth, const IsoOptions& opts,
                                                   CancelToken cancel) {
    std::vector<int> supp = require_vertex_idempotent(*A, e);
    std::set<int> in_e(supp.begin(), supp.end());

    StratifyingCertificate cert;
    cert.mode = StratifyingCertificate::Mode::Criterion;
    cert.idempotent_label = idempotent_label(*A, supp);

    LeftModule M = quotient_of_regular(A, {e}, cancel);
    if (M.dim == 0) {
        cert.verdict = StratifyingCertificate::Verdict::CertifiedFully;
        cert.detail = "A/AeA = 0";
        return cert;
    }
    Resolution res = minimal_resolution(M, depth, opts, cancel);
    bool clean = true;
    int bad_degree = -1;
    std::string bad_vertex;
    for (std::size_t d = 0; d < res.components.size(); ++d) {
        cert.evidence.push_back("deg " + std::to_string(d) + ": " +
                                multiset_string(*A, res.components[d].summand_vertices));
        if (d == 0) continue;
        for (int v : res.components[d].summand_vertices)
            if (!in_e.count(v) && clean) {
                clean = false;
                bad_degree = static_cast<int>(d);
                bad_vertex = A->vertex_labels[v];
            }
    }
    if (!clean) {
        cert.verdict = StratifyingCertificate::Verdict::Inconclusive;
        cert.detail = "degree-" + std::to_string(bad_degree) + " component P(" + bad_vertex +
                      ") lies outside add(Ae); the criterion is sufficient, not necessary";
        return cert;
    }
    if (res.status == ResolutionStatus::Truncated) {
        cert.verdict = StratifyingCertificate::Verdict::CertifiedToDegree;
        cert.degree = depth;
        cert.detail = "all components in add(Ae) up to the truncation depth";
    } else {
        cert.verdict = StratifyingCertificate::Verdict::CertifiedFully;
        cert.detail = res.status == ResolutionStatus::Terminated
                          ? "terminating resolution with components in add(Ae)"
                          : "periodic resolution (Omega_" + std::to_string(res.periodic_start) +
                                " ~ Omega_" + std::to_string(res.periodic_end) +
                                ") with components in add(Ae)";
    }
    return cert;
}

StratifyingCertificate check_stratifying_direct(const AlgebraPtr& A, const SparseVec& e,
                                                int depth, const IsoOptions& opts,
                                                CancelToken cancel) {
    std::vector<int> supp = require_vertex_idempotent(*A, e);
    std::set<int> in_e(supp.begin(), supp.end());

    StratifyingCertificate cert;
    cert.mode = StratifyingCertificate::Mode::Direct;
    cert.idempotent_label = idempotent_label(*A, supp);

    CornerResult corner = corner_algebra(A, e);
    const AlgebraPtr C = corner.algebra;

    // Y = eA as a left C-module: basis elements of A with target in supp(e)
    std::vector<int> ybasis, ypos(A->dim(), -1);
    for (int i = 0; i < A->dim(); ++i)
        if (in_e.count(A->basis[i].tgt)) {
            ypos[i] = static_cast<int>(ybasis.size());
            ybasis.push_back(i);
        }
    LeftModule Y;
    Y.algebra = C;
    Y.dim = static_cast<int>(ybasis.size());
    Y.action.assign(C->dim(), std::vector<SparseVec>(Y.dim));
    for (int ci = 0; ci < C->dim(); ++ci)
        for (int j = 0; j < Y.dim; ++j) {
            const SparseVec* p = A->product_ptr(corner.parent_basis[ci], ybasis[j]);
            if (p) Y.action[ci][j] = sv_remap(*p, ypos);
        }

    Resolution res = minimal_resolution(Y, depth, opts, cancel);

    // X (x)_C P_n = (+)_l X e_{v_l}: coords (l, A-basis with src = parent vertex)
    struct Term {
        std::vector<int> basis;                 // A-basis indices
        std::vector<std::pair<int, int>> coords; // (summand, position in basis list)
        std::vector<int> offsets;                // per summand
    };
    auto tensor_term = [&](const ProjectiveModule& P) {
        Term t;
        for (std::size_t l = 0; l < P.summand_vertices.size(); ++l) {
            t.offsets.push_back(static_cast<int>(t.basis.size()));
            int pv = corner.parent_vertex[P.summand_vertices[l]];
            for (int i = 0; i < A->dim(); ++i)
                if (A->basis[i].src == pv) t.basis.push_back(i);
        }
        t.offsets.push_back(static_cast<int>(t.basis.size()));
        return t;
    };

    std::vector<int> tdims;
    std::vector<int> tranks; // rank of T_n -> T_{n-1} for n >= 1
    std::vector<Term> terms;
    for (const auto& comp : res.components) terms.push_back(tensor_term(comp));
    for (std::size_t d = 0; d < res.components.size(); ++d)
        tdims.push_back(terms[d].offsets.back());

    for (std::size_t d = 1; d < res.components.size(); ++d) {
        cancel.check();
        const ProjectiveModule& Pn = res.components[d];
        const ProjectiveModule& Pp = res.components[d - 1];
        std::vector<SparseVec> cols;
        for (std::size_t l = 0; l < Pn.summand_vertices.size(); ++l) {
            // element form: image of the summand generator, a column of maps[d]
            int gen_coord = Pn.coord_of[l][C->idempotent_index[Pn.summand_vertices[l]]];
            const SparseVec& z = res.maps[d][gen_coord];
            int lo = terms[d].offsets[l], hi = terms[d].offsets[l + 1];
            for (int t = lo; t < hi; ++t) {
                int xb = terms[d].basis[t];
                SparseVec img;
                for (const auto& [pq, c] : z.terms) {
                    auto [l2, cb] = Pp.coords[pq];
                    const SparseVec* prod = A->product_ptr(xb, corner.parent_basis[cb]);
                    if (!prod) continue;
                    // remap into T_{d-1} coords of summand l2
                    for (const auto& [k, ck] : prod->terms) {
                        int off = terms[d - 1].offsets[l2];
                        int where = -1;
                        for (int u = off; u < terms[d - 1].offsets[l2 + 1]; ++u)
                            if (terms[d - 1].basis[u] == k) {
                                where = u;
                                break;
                            }
                        if (where < 0) throw std::logic_error("tensor term misses a product");
                        sv_axpy(A->field, img, A->field.mul(c, ck), sv_unit(where));
                    }
                }
                cols.push_back(std::move(img));
            }
        }
        tranks.push_back(rank_of(A->field, cols));
    }

    const int dim_AeA = static_cast<int>(ideal_closure(*A, {e}, cancel).size());
    const int tor0 = res.components.empty()
                         ? 0
                         : tdims[0] - (tranks.empty() ? 0 : tranks[0]);
    cert.evidence.push_back("dim(Ae (x)_eAe eA) = " + std::to_string(tor0));
    cert.evidence.push_back("dim(AeA) = " + std::to_string(dim_AeA));

    bool refuted = tor0 != dim_AeA;
    int max_tor_degree = static_cast<int>(res.components.size()) - 1;
    std::vector<int> tor;
    for (int n = 1; n <= max_tor_degree; ++n) {
        int kerdim = tdims[n] - tranks[n - 1];
        int imdim = n < static_cast<int>(tranks.size()) ? tranks[n] : 0;
        // unless the resolution terminated, Tor at the top degree is not
        // determined by the computed maps; skip it
        if (n == max_tor_degree && res.status != ResolutionStatus::Terminated) break;
        int t = kerdim - imdim;
        tor.push_back(t);
        cert.evidence.push_back("Tor_" + std::to_string(n) + " dim = " + std::to_string(t));
        if (t != 0) refuted = true;
    }

    if (refuted) {
        cert.verdict = StratifyingCertificate::Verdict::Refuted;
        cert.detail = tor0 != dim_AeA
                          ? "dim(Ae (x)_eAe eA) = " + std::to_string(tor0) +
                                " != " + std::to_string(dim_AeA) + " = dim(AeA)"
                          : "nonzero higher Tor";
        return cert;
    }
    if (res.status == ResolutionStatus::Terminated) {
        cert.verdict = StratifyingCertificate::Verdict::CertifiedFully;
        cert.detail = "terminating resolution: dimensions match and all Tor_{>=1} vanish";
    } else {
        cert.verdict = StratifyingCertificate::Verdict::CertifiedToDegree;
        cert.degree = depth;
        cert.detail = "dimensions match and every computed Tor_{>=1} vanishes";
    }
    return cert;
}

GlDimReport global_dimension_bound(const AlgebraPtr& A, int depth, const IsoOptions& opts,
                                   CancelToken cancel) {
    GlDimReport report;
    bool any_infinite = false, any_bound = false;
    int max_exact = 0, max_bound = 0;
    for (int v = 0; v < A->rank(); ++v) {
        cancel.check();
        Resolution res = minimal_resolution(simple_module(A, v), depth, opts, cancel);
        SimpleGlDim entry;
        entry.vertex = A->vertex_labels[v];
        if (res.status == ResolutionStatus::Terminated) {
            entry.kind = SimpleGlDim::Kind::Exact;
            entry.value = res.length();
            max_exact = std::max(max_exact, entry.value);
        } else if (res.status == ResolutionStatus::Periodic) {
            entry.kind = SimpleGlDim::Kind::Infinite;
            entry.period = {res.periodic_start, res.periodic_end};
            any_infinite = true;
        } else {
            entry.kind = SimpleGlDim::Kind::AtLeast;
            entry.value = static_cast<int>(res.components.size());
            max_bound = std::max(max_bound, entry.value);
            any_bound = true;
        }
        report.per_simple.push_back(std::move(entry));
    }
    if (any_infinite) {
        report.overall = GlDimReport::Overall::Infinite;
    } else if (any_bound) {
        report.overall = GlDimReport::Overall::AtLeast;
        report.value = std::max(max_exact, max_bound);
    } else {
        report.overall = GlDimReport::Overall::Finite;
        report.value = max_exact;
    }
    return report;
}

} // namespace djhp
