import json
from fractions import Fraction

import pytest
from hypothesis import given

from conftest import complexes, polys, quats, rationals, spinor_polys
from monobasis import serialization as ser
from monobasis.exact_algebra import ComplexRat, Poly3, QuatRat, SpinorPoly
from monobasis.quaternion_appell import appell_recurrence


def round_trip(obj):
    return ser.loads_poly(ser.dumps(ser.encode(obj)))


@given(polys(rationals))
def test_rational_poly_round_trip(p):
    assert round_trip(p) == p


@given(polys(complexes))
def test_complex_poly_round_trip(p):
    assert round_trip(p) == p


@given(polys(quats, "y"))
def test_quat_poly_round_trip(p):
    q = round_trip(p)
    assert q == p and q.vars == "y"


@given(spinor_polys())
def test_spinor_round_trip(s):
    assert round_trip(s) == s


def test_encoding_is_canonical():
    p = appell_recurrence(2, 1)
    a, b = ser.dumps(ser.encode(p)), ser.dumps(ser.encode(p.map_coeffs(QuatRat.coerce)))
    assert a == b and a.endswith("\n")
    doc = json.loads(a)
    assert doc["ring"] == "quaternion" and doc["vars"] == "y"
    degs = [sum(t["e"]) for t in doc["terms"]]
    assert degs == sorted(degs, reverse=True)


def test_rational_strings():
    assert ser.encode_rational(Fraction(-6, 4)) == ["-3", "2"]
    assert ser.decode_rational(["4", "-6"]) == Fraction(-2, 3)
    assert ser.decode_rational("7/3") == Fraction(7, 3)
    assert ser.encode_coeff(ComplexRat(1, -1)) == {"re": ["1", "1"], "im": ["-1", "1"]}


def test_missing_components_default_to_zero():
    doc = {"vars": "y", "terms": [{"e": [0, 1, 0], "c": {"q2": ["1", "1"]}}]}
    assert ser.decode(doc) == Poly3({(0, 1, 0): QuatRat(0, 0, 1, 0)}, "y")


def test_duplicate_exponents_are_summed():
    doc = {"terms": [{"e": [1, 0, 0], "c": ["1", "2"]}, {"e": [1, 0, 0], "c": ["1", "2"]}]}
    assert ser.decode(doc) == Poly3.var(0, "x")


def test_empty_polynomial():
    assert ser.decode({"terms": []}) == 0
    assert round_trip(SpinorPoly.zero()) == SpinorPoly.zero()


@pytest.mark.parametrize("doc", [
    [],
    {"vars": "x"},
    {"vars": "w", "terms": []},
    {"terms": [{"e": [1, 0], "c": ["1", "1"]}]},
    {"terms": [{"e": [-1, 0, 0], "c": ["1", "1"]}]},
    {"terms": [{"e": [0, 0, 0], "c": ["1", "0"]}]},
    {"terms": [{"e": [0, 0, 0], "c": {"re": ["1", "1"], "q1": ["1", "1"]}}]},
    {"terms": [{"e": [0, 0, 0]}]},
    {"ring": "octonion", "terms": []},
    {"plus": {"terms": []}},
])
def test_malformed_documents(doc):
    with pytest.raises(ser.FormatError):
        ser.decode(doc)


def test_invalid_json_text():
    with pytest.raises(ser.FormatError):
        ser.loads_poly("{not json")


def test_encode_rejects_other_objects():
    with pytest.raises(TypeError):
        ser.encode(3)
