"""JSON encoding of exact polynomials and coefficient sets.

Rationals are ``["num", "den"]`` with string-encoded integers. A polynomial is

    {"vars": "x" | "y", "ring": ..., "terms": [{"e": [a, b, c], "c": coeff}, ...]}

with terms in graded-lex order (highest degree first). Complex coefficients
are ``{"re": rat, "im": rat}``, quaternions ``{"q0": rat, ..., "q3": rat}``.
Spinor polynomials are ``{"plus": poly, "minus": poly}``.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .exact_algebra import ComplexRat, Poly3, QuatRat, SpinorPoly

QUAT_KEYS = ("q0", "q1", "q2", "q3")


class FormatError(ValueError):
    pass


def encode_rational(x) -> list:
    x = Fraction(x)
    return [str(x.numerator), str(x.denominator)]


def decode_rational(v) -> Fraction:
    try:
        if isinstance(v, list) and len(v) == 2:
            return Fraction(int(v[0]), int(v[1]))
        if isinstance(v, (int, str)):
            return Fraction(v)
    except (ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"bad rational {v!r}") from exc
    raise FormatError(f"bad rational {v!r}")


def encode_coeff(c):
    if isinstance(c, QuatRat):
        return {k: encode_rational(v) for k, v in zip(QUAT_KEYS, c.as_tuple())}
    if isinstance(c, ComplexRat):
        return {"re": encode_rational(c.re), "im": encode_rational(c.im)}
    return encode_rational(c)


def decode_coeff(v):
    if isinstance(v, dict):
        if set(v) <= set(QUAT_KEYS):
            return QuatRat(*(decode_rational(v.get(k, 0)) for k in QUAT_KEYS))
        if set(v) <= {"re", "im"}:
            return ComplexRat(decode_rational(v.get("re", 0)), decode_rational(v.get("im", 0)))
        raise FormatError(f"unknown coefficient keys {sorted(v)}")
    return decode_rational(v)


def _ring(p: Poly3) -> str:
    kinds = {type(c) for c in p.terms.values()}
    if QuatRat in kinds:
        return "quaternion"
    if ComplexRat in kinds:
        return "complex"
    return "rational"


_COERCE = {"quaternion": QuatRat.coerce, "complex": ComplexRat.coerce, "rational": Fraction}


def encode_poly(p: Poly3, ring: str | None = None) -> dict:
    ring = ring or _ring(p)
    coerce = _COERCE[ring]
    return {
        "vars": p.vars,
        "ring": ring,
        "terms": [{"e": list(e), "c": encode_coeff(coerce(c))} for e, c in p.sorted_terms()],
    }


def decode_poly(d) -> Poly3:
    if not isinstance(d, dict) or "terms" not in d:
        raise FormatError("polynomial object needs 'terms'")
    vars = d.get("vars", "x")
    if vars not in ("x", "y"):
        raise FormatError(f"unknown variable tag {vars!r}")
    terms = {}
    for t in d["terms"]:
        try:
            e = tuple(int(a) for a in t["e"])
            c = decode_coeff(t["c"])
        except (KeyError, TypeError) as exc:
            raise FormatError(f"bad term {t!r}") from exc
        if len(e) != 3 or min(e) < 0:
            raise FormatError(f"bad exponent {t['e']!r}")
        terms[e] = terms[e] + c if e in terms else c
    p = Poly3(terms, vars)
    ring = d.get("ring")
    if ring is not None:
        if ring not in _COERCE:
            raise FormatError(f"unknown ring {ring!r}")
        p = p.map_coeffs(_COERCE[ring])
    return p


def encode_spinor(s: SpinorPoly) -> dict:
    vars = s.vars
    return {
        "plus": encode_poly(s.plus.with_vars(vars), "complex"),
        "minus": encode_poly(s.minus.with_vars(vars), "complex"),
    }


def decode_spinor(d) -> SpinorPoly:
    if not isinstance(d, dict) or "plus" not in d or "minus" not in d:
        raise FormatError("spinor object needs 'plus' and 'minus'")
    plus = decode_poly(d["plus"]).map_coeffs(ComplexRat.coerce)
    minus = decode_poly(d["minus"]).map_coeffs(ComplexRat.coerce)
    return SpinorPoly(plus, minus)


def encode(obj):
    if isinstance(obj, SpinorPoly):
        return encode_spinor(obj)
    if isinstance(obj, Poly3):
        return encode_poly(obj)
    raise TypeError(f"cannot encode {type(obj).__name__}")


def decode(d):
    """Decode a polynomial or spinor object."""
    if isinstance(d, dict) and "plus" in d:
        return decode_spinor(d)
    return decode_poly(d)


def dumps(obj) -> str:
    """Deterministic compact JSON text with sorted keys and a trailing newline."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def loads_poly(text: str):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from exc
    return decode(data)
