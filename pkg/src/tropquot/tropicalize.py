"""Tropicalization, the retraction onto the skeleton and its section."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from . import _linalg as la
from .extended import INF, ExtendedReal, ExtendedTropPoint, evaluate, make_point
from .errors import FanError
from .polyhedra import Cone, Fan, faces, semigroup, validate_fan, zero_cone
from .valued import (
    KPoint,
    MonomialPoint,
    SemigroupPolynomial,
    TensorPoint,
    eval_seminorm,
    orbit_basis,
    val,
)


def trop(x: Union[KPoint, MonomialPoint], fan: Fan | None = None) -> ExtendedTropPoint:
    """The point ``s -> -log|chi^s|_x`` of N_R(fan)."""
    if isinstance(x, TensorPoint):
        raise TypeError("tropicalize the base point of a tensor point")
    fan = fan if fan is not None else x.fan
    if x.stratum not in fan:
        raise FanError(f"orbit cone {x.stratum} is not a cone of {fan.name}")
    if isinstance(x, MonomialPoint):
        return make_point(fan, x.u.stratum, x.u.rep)
    basis = orbit_basis(x.orbit)
    vals = [Fraction(val(c)) for c in x.coords]
    gram = [[la.dot(a, b) for b in basis] for a in basis]
    c = la.solve(gram, vals) if basis else []
    n = fan.ambient_rank
    rep = [sum((ci * b[i] for ci, b in zip(c, basis)), Fraction(0)) for i in range(n)]
    return make_point(fan, x.orbit, rep)


def section(u: ExtendedTropPoint) -> MonomialPoint:
    """The skeleton point attached to ``u``: ``f -> min over terms of (val a_s + u(s))``."""
    return MonomialPoint(u)


def retract(x: Union[KPoint, MonomialPoint]) -> MonomialPoint:
    return section(trop(x))


def retraction_value(x: Union[KPoint, MonomialPoint], f: SemigroupPolynomial) -> ExtendedReal:
    """``-log`` of ``max_s |a_s| |chi^s|_x``, computed term by term from ``x`` itself."""
    # the coefficients are rational, hence of valuation 0
    return min((eval_seminorm(x, SemigroupPolynomial.monomial(s)) for s in f.support), default=INF)


def orbit_cone_of(x: KPoint) -> Cone:
    return x.orbit


def chart_values(u: ExtendedTropPoint, sigma: Cone) -> list[ExtendedReal]:
    """Values of ``u`` on the generators of ``S_sigma``."""
    return [evaluate(u, s) for s in semigroup(sigma).hilbert_basis]


@dataclass
class SkeletonGraph:
    """Strata of N_R(fan) ordered by specialization.

    ``edges`` are covering pairs ``(i, j)``: the stratum of ``vertices[j]`` is a
    boundary stratum of codimension one in the closure of ``vertices[i]``.
    """

    fan: Fan
    vertices: list[Cone]
    edges: list[tuple[int, int]]
    marked: dict[str, ExtendedTropPoint] = field(default_factory=dict)

    def dims(self) -> list[int]:
        n = self.fan.ambient_rank
        return [n - c.dim for c in self.vertices]

    def segment(self) -> list[dict] | None:
        """For rank-1 fans, the skeleton as a segment from the origin side to the infinity side.

        A rank-1 toric variety lies in P^1; the orbit of ray(+1) is the point 0,
        the orbit of ray(-1) is ∞.  An end whose ray is absent is open.
        """
        if self.fan.ambient_rank != 1:
            return None
        rays = {c.rays[0][0]: c for c in self.vertices if c.rays}
        return [
            {"label": "0", "u": "inf", "closed": 1 in rays},
            {"label": "η", "u": "0", "closed": True},
            {"label": "∞", "u": "-inf", "closed": -1 in rays},
        ]


def skeleton_graph(fan: Fan) -> SkeletonGraph:
    report = validate_fan(fan)
    if not report.valid:
        raise FanError(f"{fan.name} is not a fan: {report.failures[0]['kind']}")
    verts = list(fan.cones)
    edges = []
    for i, a in enumerate(verts):
        for j, b in enumerate(verts):
            if b.dim == a.dim + 1 and a in faces(b):
                edges.append((i, j))
    gauss = make_point(fan, zero_cone(fan.ambient_rank), [0] * fan.ambient_rank)
    return SkeletonGraph(fan, verts, edges, {"η": gauss})
