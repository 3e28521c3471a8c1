#pragma once

#include "djhp/lambda_algebra.hpp"

namespace djhp {

/// Quiver with relations of Lambda(A,B): vertices i^j and j^i, arrows
/// alpha^j / c(i,j) / beta^i, relations r^j, c(i,j)alpha^j and s^i.
/// Name mangling into the DSL alphabet: i^j -> "<i>_<j>", j^i -> "<j>_<i>",
/// alpha^j -> "<alpha>_<j>", c(i,j) -> "c_<i>_<j>", beta^i -> "<beta>_<i>".
struct GeneratedPresentation {
    Presentation presentation;

    std::vector<std::vector<std::string>> first_vertex;  // [i][j] = name of i^j
    std::vector<std::vector<std::string>> second_vertex; // [i][j] = name of j^i

    enum class ArrowKind { Alpha, Connector, Beta };
    struct ArrowOrigin {
        ArrowKind kind;
        int a_arrow = -1; // index into pA.quiver.arrows (alpha)
        int b_arrow = -1; // index into pB.quiver.arrows (beta)
        int i = -1;       // Q0 index (connector, beta)
        int j = -1;       // P0 index (alpha, connector)
        std::string factor_label; // the originating arrow's label, if any
    };
    std::vector<ArrowOrigin> arrow_origins; // parallel to presentation.quiver.arrows

    enum class RelationKind { FromA, ConnectorAlpha, FromB };
    std::vector<RelationKind> relation_kinds; // parallel to presentation.relations

    int count(ArrowKind k) const;
    int count(RelationKind k) const;
};

/// Emit the quiver with relations of Lambda(A,B) from presentations of the
/// factors. Throws std::invalid_argument when the mangled names collide
/// (possible only when Q0 and P0 share labels); rename the input labels.
GeneratedPresentation lambda_presentation(const Presentation& pA, const Presentation& pB);

struct PhiReport {
    bool ok = false;
    int span_dim = 0;          // dimension of the span of all path images
    std::string failure;       // first failing relation, or the span deficit
};

/// Realize the generator images of the surjection kGamma ->> Lambda, check
/// every generated relation maps to zero and that path images span Lambda.
PhiReport verify_phi(const GeneratedPresentation& gp, const LambdaAlgebra& L,
                     CancelToken cancel = {});

/// Dimension of k Gamma / (I) by the same linear fixpoint as
/// algebra_from_presentation (the independent leg of the isomorphism
/// certification; the other leg is the dimension of the assembled Lambda).
std::pair<int, AdmissibilityCertificate> quotient_dimension(const Presentation& p, int cutoff,
                                                            CancelToken cancel = {});

struct RightMultReport {
    bool hypothesis_holds = false; // no relation path has the form p*c
    bool injective = false;        // right multiplication has full rank
    bool path_is_zero = false;     // c vanishes in the algebra (flagged separately)
    int rank = 0;
    int domain_dim = 0; // dim A e_{t(c)}
};

/// Right-multiplication injectivity check (the generated-presentation side
/// of the Phi_12 argument).
RightMultReport check_right_mult_injective(const BuiltAlgebra& built, const PathWord& c);

} // namespace djhp
