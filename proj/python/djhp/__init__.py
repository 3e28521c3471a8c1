"""Matrix algebras Lambda(A,B) from quiver presentations.

Python bindings over the C++ core: parse quiver-with-relations presentations,
build the trivially twisted tensor product and the 2x2 matrix algebra
Lambda(A,B), certify its stratifying ideals and generated presentation, and
emit DJHP failure reports.
"""

import json as _json

from ._core import (  # noqa: F401
    Algebra,
    Lambda,
    ParseError,
    Presentation,
    __version__,
    algebra_from_presentation,
    build_lambda,
    build_twisted_tensor,
    djhp_report_json,
    djhp_report_text,
    global_dimension,
    lambda_presentation,
    parse_presentation,
    quotient_dimension,
    stratifying_certificates,
    validate_admissible,
    verify_phi,
    verify_twist_axioms,
)


def djhp_report(A, B, **kwargs):
    """DJHP failure report as a dict (see djhp_report_text for the rendering)."""
    return _json.loads(djhp_report_json(A, B, **kwargs))
