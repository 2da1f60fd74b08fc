"""The partial compactification N_R(fan) = union of Hom(S_sigma, R ∪ {∞}).

A point is stored by the cone ``tau`` indexing its stratum together with a
representative in the orthogonal complement of ``span(tau)``.  It evaluates on
a character ``s`` to ``<s, rep>`` when ``s`` vanishes on ``tau`` and to ∞
otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence, Union

from . import _linalg as la
from .errors import ChartError, RankError
from .polyhedra import Cone, Fan, dual_cone, faces


class Infinity:
    """The absorbing element ∞ of the extended reals; larger than every rational."""

    _instance = None
    __slots__ = ()

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "inf"

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("tropquot.INF")

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True

    def __reduce__(self):
        return (Infinity, ())


INF = Infinity()
ExtendedReal = Union[Fraction, int, Infinity]


def is_finite(x: ExtendedReal) -> bool:
    return x is not INF


@dataclass(frozen=True)
class ExtendedTropPoint:
    """A point of N_R(fan).  Compare with ``==``: same stratum and same representative."""

    stratum: Cone
    rep: tuple[Fraction, ...]
    fan: Fan = field(compare=False, repr=False)

    def __call__(self, s: Sequence[int]) -> ExtendedReal:
        return evaluate(self, s)

    @property
    def ambient_rank(self) -> int:
        return self.stratum.ambient_rank

    @property
    def dim(self) -> int:
        """Dimension of the stratum containing the point."""
        return self.ambient_rank - self.stratum.dim


def _project_off_span(v: Sequence[Fraction], rays) -> tuple[Fraction, ...]:
    if not rays:
        return tuple(v)
    basis, _ = la.rref(rays, len(v))
    gram = [[la.dot(a, b) for b in basis] for a in basis]
    c = la.solve(gram, [la.dot(b, v) for b in basis])
    return tuple(x - sum(ci * b[i] for ci, b in zip(c, basis)) for i, x in enumerate(v))


def make_point(fan: Fan, tau: Cone, v: Sequence) -> ExtendedTropPoint:
    """Point of the stratum of ``tau`` represented by ``v`` modulo ``span(tau)``."""
    tau = fan.require(tau)
    if len(v) != fan.ambient_rank:
        raise RankError(f"vector of length {len(v)} in a rank {fan.ambient_rank} fan")
    rep = _project_off_span([Fraction(x) for x in v], tau.rays)
    return ExtendedTropPoint(tau, rep, fan)


def admissible(tau: Cone, s: Sequence[int]) -> bool:
    """Whether ``s`` lies in ``S_sigma`` for some cone ``sigma`` having ``tau`` as a face.

    The largest such semigroup is ``S_tau`` itself.
    """
    return dual_cone(tau).contains(s)


def evaluate(u: ExtendedTropPoint, s: Sequence[int]) -> ExtendedReal:
    if len(s) != u.ambient_rank:
        raise RankError(f"character of length {len(s)} for a rank {u.ambient_rank} point")
    if not admissible(u.stratum, s):
        raise ChartError(f"character {tuple(s)} is negative on the stratum cone {u.stratum}")
    if any(la.dot(s, w) != 0 for w in u.stratum.rays):
        return INF
    return la.dot(s, u.rep)


def closure_order(fan: Fan, tau: Cone, tau2: Cone) -> bool:
    """True iff the stratum of ``tau2`` lies in the closure of the stratum of ``tau``."""
    tau = fan.require(tau)
    tau2 = fan.require(tau2)
    return tau in faces(tau2)


def strata(fan: Fan) -> list[Cone]:
    return list(fan.cones)

