"""JSON-ready views of the core objects.  Rationals are strings ``"p/q"``; ∞ is ``"inf"``."""

from __future__ import annotations

import math
from fractions import Fraction

from .extended import INF, ExtendedTropPoint
from .polyhedra import Cone, Fan
from .valued import KPoint, MonomialPoint, format_scalar, orbit_basis


def fmt(x) -> str:
    if x is INF:
        return "inf"
    return str(Fraction(x))


def fmt_exp(x) -> str:
    """Approximate absolute value ``exp(-x)``, marked as such."""
    if x is INF:
        return "0 (approx)"
    return f"{math.exp(-float(x)):.6g} (approx)"


def vector(v) -> list[int]:
    return [int(x) for x in v]


def cone_json(c: Cone, fan: Fan | None = None) -> dict:
    out = {"rays": [vector(r) for r in c.rays]}
    if fan is not None and c in fan:
        out = {"indices": fan.ray_indices(c), **out}
    return out


def trop_point_json(u: ExtendedTropPoint) -> dict:
    return {"stratum": u.fan.ray_indices(u.stratum), "rep": [fmt(x) for x in u.rep]}


def k_point_json(x: KPoint) -> dict:
    return {
        "kind": "k-point",
        "orbit_cone": x.fan.ray_indices(x.orbit),
        "basis": [vector(b) for b in orbit_basis(x.orbit)],
        "coordinates": [format_scalar(c) for c in x.coords],
    }


def monomial_point_json(x: MonomialPoint) -> dict:
    return {"kind": "monomial", **trop_point_json(x.u)}


def point_json(x) -> dict:
    if isinstance(x, KPoint):
        return k_point_json(x)
    return monomial_point_json(x)
