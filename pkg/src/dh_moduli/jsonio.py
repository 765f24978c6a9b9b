"""JSON wire formats.

Complex numbers travel as ``[re, im]`` pairs, the point at infinity of CP^1
as the string ``"inf"``.  Floats are written with Python's shortest
round-trip representation, so reading back a written document reproduces the
same values bit for bit.
"""

from __future__ import annotations

import json
import math

import numpy as np

from .aut import Aut0Element, GammaElement, HodgeAutElement, VPolynomial
from .dh import Section
from .hodge import INFINITY, Chart, LambdaConnectionPoint
from .surface import PeriodMatrix


class ParseError(ValueError):
    """Malformed or schema-violating JSON input."""


def complex_to_json(z) -> list:
    z = complex(z)
    return [float(z.real), float(z.imag)]


def complex_from_json(obj) -> complex:
    if isinstance(obj, (int, float)) and not isinstance(obj, bool):
        return complex(obj)
    if (
        isinstance(obj, (list, tuple))
        and len(obj) == 2
        and all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in obj)
    ):
        return complex(obj[0], obj[1])
    raise ParseError(f"expected [re, im], got {obj!r}")


def vector_to_json(vec) -> list:
    return [complex_to_json(z) for z in np.asarray(vec).reshape(-1)]


def vector_from_json(obj) -> np.ndarray:
    if not isinstance(obj, list):
        raise ParseError(f"expected a list of [re, im] pairs, got {obj!r}")
    return np.array([complex_from_json(z) for z in obj], dtype=complex)


def _require(obj, *keys):
    if not isinstance(obj, dict):
        raise ParseError(f"expected a JSON object, got {type(obj).__name__}")
    missing = [k for k in keys if k not in obj]
    if missing:
        raise ParseError(f"missing keys: {', '.join(missing)}")


def cp1_to_json(z):
    if z == INFINITY:
        return "inf"
    return complex_to_json(z)


def cp1_from_json(obj):
    if obj == "inf":
        return INFINITY
    return complex_from_json(obj)


# -- surface ------------------------------------------------------------------


def surface_to_json(surface: PeriodMatrix) -> dict:
    return {"g": surface.g, "tau": [[complex_to_json(z) for z in row] for row in surface.tau]}


def surface_from_json(obj) -> PeriodMatrix:
    _require(obj, "g", "tau")
    g = obj["g"]
    if not isinstance(g, int) or isinstance(g, bool) or g < 1:
        raise ParseError(f"g must be a positive integer, got {g!r}")
    rows = obj["tau"]
    if not isinstance(rows, list) or len(rows) != g or any(not isinstance(r, list) or len(r) != g for r in rows):
        raise ParseError(f"tau must be a {g}x{g} array of [re, im] pairs")
    return PeriodMatrix([[complex_from_json(z) for z in row] for row in rows])


# -- points and sections --------------------------------------------------


def point_to_json(p: LambdaConnectionPoint) -> dict:
    return {
        "chart": p.chart.value,
        "lambda": complex_to_json(p.lam),
        "u": vector_to_json(p.u),
        "v": vector_to_json(p.v),
    }


def point_from_json(obj) -> LambdaConnectionPoint:
    _require(obj, "chart", "lambda", "u", "v")
    try:
        chart = Chart(obj["chart"])
    except ValueError:
        raise ParseError(f"chart must be 'X' or 'Xbar', got {obj['chart']!r}") from None
    u, v = vector_from_json(obj["u"]), vector_from_json(obj["v"])
    if u.size != v.size:
        raise ParseError("u and v must have equal length")
    return LambdaConnectionPoint(chart, complex_from_json(obj["lambda"]), u, v)


def section_to_json(s: Section) -> dict:
    return {k: vector_to_json(getattr(s, k)) for k in ("alpha", "beta", "omega", "eta")}


def section_from_json(obj) -> Section:
    _require(obj, "alpha", "beta", "omega", "eta")
    parts = {k: vector_from_json(obj[k]) for k in ("alpha", "beta", "omega", "eta")}
    if len({a.size for a in parts.values()}) != 1:
        raise ParseError("section components must have equal length")
    return Section(**parts)


# -- automorphisms --------------------------------------------------------


def element_to_json(element) -> dict:
    if isinstance(element, Aut0Element):
        return {
            "kind": "aut0",
            "nabla": {"u": vector_to_json(element.nabla_u), "v": vector_to_json(element.nabla_v)},
            "alpha": vector_to_json(element.alpha),
            "etabar": vector_to_json(element.etabar),
            "tau": complex_to_json(element.tau),
        }
    if isinstance(element, HodgeAutElement):
        return {
            "kind": "hodge",
            "v": [vector_to_json(c) for c in element.v.coeffs],
            "tensor": {"u": vector_to_json(element.tensor_u), "v": vector_to_json(element.tensor_v)},
            "scale": complex_to_json(element.scale),
        }
    if isinstance(element, GammaElement):
        out = {"kind": element.kind}
        if element.M is not None:
            out["M"] = element.M.tolist()
        return out
    raise TypeError(f"cannot serialize {type(element).__name__}")


def element_from_json(obj):
    _require(obj, "kind")
    kind = obj["kind"]
    if kind == "aut0":
        _require(obj, "nabla", "alpha", "etabar", "tau")
        _require(obj["nabla"], "u", "v")
        tau = complex_from_json(obj["tau"])
        if tau == 0:
            raise ParseError("tau must be nonzero")
        parts = [vector_from_json(x) for x in (obj["nabla"]["u"], obj["nabla"]["v"], obj["alpha"], obj["etabar"])]
        if len({a.size for a in parts}) != 1:
            raise ParseError("aut0 components must have equal length")
        return Aut0Element(*parts, tau)
    if kind == "hodge":
        _require(obj, "v", "tensor", "scale")
        _require(obj["tensor"], "u", "v")
        tu, tv = vector_from_json(obj["tensor"]["u"]), vector_from_json(obj["tensor"]["v"])
        if not isinstance(obj["v"], list):
            raise ParseError("v must be a list of coefficient vectors")
        coeffs = [vector_from_json(c) for c in obj["v"]]
        scale = complex_from_json(obj["scale"])
        if scale == 0 or tu.size != tv.size or any(c.size != tu.size for c in coeffs):
            raise ParseError("inconsistent hodge element")
        return HodgeAutElement(VPolynomial(coeffs, tu.size), tu, tv, scale)
    if kind == "duality":
        return GammaElement("duality")
    if kind in ("lattice", "lattice_swap"):
        _require(obj, "M")
        M = obj["M"]
        if not isinstance(M, list) or not all(
            isinstance(row, list) and all(isinstance(x, int) and not isinstance(x, bool) for x in row) for row in M
        ):
            raise ParseError("M must be a list of integer rows")
        return GammaElement(kind, np.array(M, dtype=np.int64))
    raise ParseError(f"unknown element kind {kind!r}")


def dumps(obj) -> str:
    """Canonical text form: sorted keys, fixed indentation, trailing newline."""

    def _check(x):
        if isinstance(x, float) and not math.isfinite(x):
            raise ValueError(f"non-finite number {x!r} in output")
        if isinstance(x, dict):
            for val in x.values():
                _check(val)
        elif isinstance(x, list):
            for val in x:
                _check(val)

    _check(obj)
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
