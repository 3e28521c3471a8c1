"""End-to-end smoke tests for the python bindings."""

import os
from pathlib import Path

import pytest

import djhp

DATA = Path(os.environ.get("DJHP_DATA_DIR", Path(__file__).resolve().parents[1] / "data"))

KX2 = (DATA / "kx2.qa").read_text()
KY2 = (DATA / "ky2.qa").read_text()


def test_parse_and_emit_round_trip():
    p = djhp.parse_presentation(KX2)
    assert p.name == "kx2"
    assert p.vertices == ["a"]
    assert p.arrows == [("x", "a", "a")]
    assert p.relation_count == 1
    again = djhp.parse_presentation(p.emit_dsl())
    assert again == p
    assert "digraph kx2" in p.emit_dot()


def test_parse_error_carries_position():
    with pytest.raises(ValueError, match="line"):
        djhp.parse_presentation("algebra broken over Q\nvertices: a\narrows:\n  x: a -> b\n")


def test_admissibility_certificate():
    p = djhp.parse_presentation(KX2)
    cert = djhp.validate_admissible(p, cutoff=4)
    assert cert["certified"]
    assert cert["witness_length"] == 2

    free_loop = djhp.parse_presentation(
        "algebra loop over Q\nvertices: a\narrows:\n  x: a -> a\nrelations:\n"
    )
    refused = djhp.validate_admissible(free_loop, cutoff=6)
    assert not refused["certified"]
    assert refused["refusal"]


def test_build_algebras_and_lambda():
    A = djhp.algebra_from_presentation(djhp.parse_presentation(KX2))
    B = djhp.algebra_from_presentation(djhp.parse_presentation(KY2))
    assert (A.dim, A.rank, A.radical_dim) == (2, 1, 1)

    T = djhp.build_twisted_tensor(A, B)
    assert T.dim == 4
    assert djhp.verify_twist_axioms(A, B)

    L = djhp.build_lambda(A, B)
    assert (L.dim, L.rank) == (10, 2)
    assert "djhp-algebra/1" in L.algebra.to_json()


def test_generated_presentation_and_certification():
    pA = djhp.parse_presentation(KX2)
    pB = djhp.parse_presentation(KY2)
    gamma = djhp.lambda_presentation(pA, pB)
    assert len(gamma.vertices) == 2
    assert len(gamma.arrows) == 3
    assert gamma.relation_count == 3

    phi = djhp.verify_phi(pA, pB)
    assert phi["ok"]
    assert phi["span_dim"] == 10

    qd = djhp.quotient_dimension(gamma)
    assert qd["certified"]
    assert qd["dim"] == 10


def test_stratifying_and_global_dimension():
    A = djhp.algebra_from_presentation(djhp.parse_presentation(KX2))
    B = djhp.algebra_from_presentation(djhp.parse_presentation(KY2))
    L = djhp.build_lambda(A, B)
    certs = djhp.stratifying_certificates(L, depth=8)
    assert certs["e2_criterion"]["verdict"] == "certified-fully"
    assert certs["e1_criterion"]["verdict"] in ("certified-fully", "certified-to-degree")
    assert certs["e2_direct"]["verdict"] == "certified-fully"

    g = djhp.global_dimension(A, depth=8)
    assert g["overall"] == "infinite"
    assert g["per_simple"][0]["kind"] == "infinite"


def test_djhp_report():
    pA = djhp.parse_presentation(KX2)
    pB = djhp.parse_presentation(KY2)
    report = djhp.djhp_report(pA, pB)
    assert report["verdict"] == "djhp-fails-case-1"
    assert report["via_cor_local"]
    assert report["lambda"]["dim"] == 10
    assert report["R2"]["quotient_blocks"]["identified_as"] == "kx2"
    assert report["R2"]["corner_blocks"]["identified_as"] == "ky2"
    text = djhp.djhp_report_text(pA, pB)
    assert "DJHP-fails(case 1)" in text
