#include "djhp/algebra.hpp"
#include "path_engine.hpp"

#include <stdexcept>

namespace djhp {

namespace {

AdmissibilityCertificate cert_of(const detail::IdealFixpoint& fx) {
    AdmissibilityCertificate cert;
    cert.certified = fx.certified();
    cert.witness_length = fx.cert_length;
    cert.refusal = fx.failure;
    return cert;
}

std::string path_label(const Presentation& p, const detail::PathRec& rec) {
    if (rec.word.empty()) return "e(" + p.quiver.vertices[rec.src] + ")";
    std::string out;
    for (std::size_t i = 0; i < rec.word.size(); ++i) {
        if (i) out += "*";
        out += p.quiver.arrows[rec.word[i]].label;
    }
    return out;
}

PathWord path_word(const Presentation& p, const detail::PathRec& rec) {
    PathWord w;
    for (int a : rec.word) w.arrows.push_back(p.quiver.arrows[a].label);
    w.source = p.quiver.vertices[rec.src];
    w.target = p.quiver.vertices[rec.tgt];
    return w;
}

} // namespace

AdmissibilityCertificate validate_admissible(const Presentation& p, int cutoff,
                                             CancelToken cancel) {
    if (cutoff < 2) throw std::invalid_argument("admissibility cutoff must be >= 2");
    validate_presentation(p);
    return cert_of(detail::IdealFixpoint::run(p, cutoff, cancel));
}

std::pair<int, AdmissibilityCertificate> quotient_path_algebra_dimension(const Presentation& p,
                                                                         int cutoff,
                                                                         CancelToken cancel) {
    validate_presentation(p);
    auto fx = detail::IdealFixpoint::run(p, cutoff, cancel);
    if (!fx.certified()) return {-1, cert_of(fx)};
    return {static_cast<int>(fx.normal_basis().size()), cert_of(fx)};
}

BuiltAlgebra algebra_from_presentation(const Presentation& p, int cutoff, CancelToken cancel) {
    validate_presentation(p);
    auto fx = detail::IdealFixpoint::run(p, cutoff, cancel);
    if (!fx.certified())
        throw std::runtime_error("admissibility not certified for '" + p.name +
                                 "': " + fx.failure);

    std::vector<int> nf = fx.normal_basis();
    std::vector<int> pos(fx.ps.paths.size(), -1);
    for (int k = 0; k < static_cast<int>(nf.size()); ++k) pos[nf[k]] = k;

    auto A = std::make_shared<FDAlgebra>();
    A->name = p.name;
    A->field = p.field;
    A->vertex_labels = p.quiver.vertices;
    A->idempotent_index.resize(p.quiver.vertices.size());

    BuiltAlgebra built;
    for (int k = 0; k < static_cast<int>(nf.size()); ++k) {
        const detail::PathRec& rec = fx.ps.paths[nf[k]];
        A->basis.push_back({path_label(p, rec), rec.src, rec.tgt,
                            static_cast<int>(rec.word.size())});
        built.basis_paths.push_back(path_word(p, rec));
    }
    for (int v = 0; v < static_cast<int>(p.quiver.vertices.size()); ++v) {
        if (pos[v] < 0)
            throw std::logic_error("trivial path eliminated by an admissible ideal");
        A->idempotent_index[v] = pos[v];
    }

    // products by appending arrows one at a time, reducing after each step
    for (int ki = 0; ki < static_cast<int>(nf.size()); ++ki) {
        cancel.check();
        const detail::PathRec& pi = fx.ps.paths[nf[ki]];
        for (int kj = 0; kj < static_cast<int>(nf.size()); ++kj) {
            const detail::PathRec& pj = fx.ps.paths[nf[kj]];
            SparseVec acc;
            if (pj.word.empty()) {
                if (pi.src != pj.src) continue; // p * e_v = 0 unless s(p) = v
                acc = sv_unit(nf[ki]);
            } else {
                if (pi.src != pj.tgt) continue;
                acc = sv_unit(nf[ki]);
                for (int a : pj.word) {
                    auto next = fx.right_arrow_mul(acc, a);
                    if (!next)
                        throw std::logic_error("product left the path window below the "
                                               "certified length");
                    acc = fx.normal_form(std::move(*next));
                    if (acc.empty()) break;
                }
            }
            if (acc.empty()) continue;
            SparseVec out = sv_remap(acc, pos);
            if (static_cast<int>(out.terms.size()) != acc.size())
                throw std::logic_error("normal form contains a non-basis path");
            A->table.emplace(FDAlgebra::key(ki, kj), std::move(out));
        }
    }

    built.algebra = A;
    built.cert = cert_of(fx);
    built.presentation = p;
    return built;
}

} // namespace djhp
