"""Computable points of the analytification over K = Q(t) with the t-adic valuation.

Norms are handled additively throughout: ``val(a) = -log|a|``.  The base
field Q carries the trivial valuation, so every nonzero rational has
valuation 0.  Three kinds of point are modelled:

* :class:`KPoint` -- a K-valued point of a torus orbit, stored by its orbit
  cone ``tau`` and its values on a Z-basis of ``tau^⊥ ∩ M``;
* :class:`MonomialPoint` -- the monomial seminorm attached to a point ``u``
  of the extended tropical space (a point of the skeleton);
* :class:`TensorPoint` -- the point ``eta ⊗ x`` on ``k[M] ⊗ k[S_sigma]``.
"""

from __future__ import annotations

import re
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence, Union

import sympy
from sympy import QQ
from sympy.parsing.sympy_parser import parse_expr, standard_transformations
from sympy.polys.fields import FracElement, field as frac_field

from . import _linalg as la
from .errors import ChartError, ParseError, RankError
from .extended import INF, ExtendedReal, ExtendedTropPoint, admissible, evaluate
from .polyhedra import Cone, Fan, semigroup, zero_cone

K, t = frac_field("t", QQ)
ValuedScalar = FracElement

_SCALAR_CHARS = re.compile(r"^[0-9t+\-*/^() .]*$")
_T = sympy.Symbol("t")


def scalar(x) -> ValuedScalar:
    """Coerce an int, Fraction, string literal or field element into K."""
    if isinstance(x, FracElement):
        return x
    if isinstance(x, str):
        return parse_scalar(x)
    if isinstance(x, Fraction):
        return K(x.numerator) / K(x.denominator)
    if isinstance(x, int):
        return K(x)
    raise TypeError(f"cannot interpret {x!r} as an element of Q(t)")


def parse_scalar(text: str) -> ValuedScalar:
    """Parse a rational-function literal such as ``"(3*t + t^2)/(2 - t)"``."""
    if not text.strip() or not _SCALAR_CHARS.match(text):
        raise ParseError(f"not a rational function of t: {text!r}")
    try:
        expr = parse_expr(text.replace("^", "**"), local_dict={"t": _T},
                          transformations=standard_transformations)
        value = K.from_expr(expr)
    except (SyntaxError, TypeError, ValueError, ZeroDivisionError, sympy.SympifyError) as exc:
        raise ParseError(f"not a rational function of t: {text!r}") from exc
    except Exception as exc:  # sympy raises assorted CoercionFailed / PolificationFailed
        raise ParseError(f"not a rational function of t: {text!r} ({exc})") from exc
    return value


def format_scalar(a: ValuedScalar) -> str:
    return str(a).replace("**", "^")


def _order(p) -> int:
    return min(p.keys())[0]


def val(a: ValuedScalar) -> ExtendedReal:
    """t-adic valuation; ∞ at zero."""
    if not a:
        return INF
    return _order(a.numer) - _order(a.denom)


# -- polynomials ---------------------------------------------------------------

def _exp(s) -> tuple[int, ...]:
    return tuple(int(x) for x in s)


@dataclass(frozen=True)
class SemigroupPolynomial:
    """Finite sum of ``a_s chi^s`` with nonzero rational coefficients."""

    terms: tuple[tuple[tuple[int, ...], Fraction], ...] = ()

    @classmethod
    def from_dict(cls, d: Mapping[Sequence[int], object]) -> "SemigroupPolynomial":
        acc: dict[tuple[int, ...], Fraction] = defaultdict(Fraction)
        for s, a in d.items():
            acc[_exp(s)] += Fraction(a)
        return cls(tuple(sorted((s, a) for s, a in acc.items() if a != 0)))

    @classmethod
    def monomial(cls, s: Sequence[int], coeff=1) -> "SemigroupPolynomial":
        return cls.from_dict({_exp(s): coeff})

    @classmethod
    def constant(cls, c, rank: int) -> "SemigroupPolynomial":
        return cls.from_dict({(0,) * rank: c})

    def as_dict(self) -> dict[tuple[int, ...], Fraction]:
        return dict(self.terms)

    @property
    def support(self) -> list[tuple[int, ...]]:
        return [s for s, _ in self.terms]

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other: "SemigroupPolynomial") -> "SemigroupPolynomial":
        d = defaultdict(Fraction, self.terms)
        for s, a in other.terms:
            d[s] += a
        return SemigroupPolynomial.from_dict(d)

    def __neg__(self):
        return SemigroupPolynomial(tuple((s, -a) for s, a in self.terms))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other: "SemigroupPolynomial") -> "SemigroupPolynomial":
        d: dict = defaultdict(Fraction)
        for s, a in self.terms:
            for r, b in other.terms:
                d[tuple(x + y for x, y in zip(s, r))] += a * b
        return SemigroupPolynomial.from_dict(d)


@dataclass(frozen=True)
class TensorPolynomial:
    """Finite sum of ``a chi^m ⊗ chi^s`` over pairs ``(m, s)``."""

    terms: tuple[tuple[tuple[tuple[int, ...], tuple[int, ...]], Fraction], ...] = ()

    @classmethod
    def from_dict(cls, d) -> "TensorPolynomial":
        acc: dict = defaultdict(Fraction)
        for (m, s), a in d.items():
            acc[(_exp(m), _exp(s))] += Fraction(a)
        return cls(tuple(sorted((k, a) for k, a in acc.items() if a != 0)))

    def components(self) -> dict[tuple[int, ...], SemigroupPolynomial]:
        """``F = sum_m chi^m ⊗ f_m`` with the scalars folded into the ``f_m``."""
        groups: dict = defaultdict(dict)
        for (m, s), a in self.terms:
            groups[m][s] = a
        return {m: SemigroupPolynomial.from_dict(d) for m, d in sorted(groups.items())}

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other: "TensorPolynomial") -> "TensorPolynomial":
        d = defaultdict(Fraction, self.terms)
        for k, a in other.terms:
            d[k] += a
        return TensorPolynomial.from_dict(d)

    def __mul__(self, other: "TensorPolynomial") -> "TensorPolynomial":
        d: dict = defaultdict(Fraction)
        for (m, s), a in self.terms:
            for (m2, s2), b in other.terms:
                key = (tuple(x + y for x, y in zip(m, m2)), tuple(x + y for x, y in zip(s, s2)))
                d[key] += a * b
        return TensorPolynomial.from_dict(d)


def torus_pullbacks(f: SemigroupPolynomial) -> tuple[TensorPolynomial, TensorPolynomial]:
    """Pullbacks along the projection ``chi^s -> 1 ⊗ chi^s`` and the action ``chi^s -> chi^s ⊗ chi^s``."""
    proj = {}
    act_ = {}
    for s, a in f.terms:
        proj[((0,) * len(s), s)] = a
        act_[(s, s)] = a
    return TensorPolynomial.from_dict(proj), TensorPolynomial.from_dict(act_)


# -- points ----------------------------------------------------------------------

@lru_cache(maxsize=None)
def orbit_basis(tau: Cone) -> tuple[tuple[int, ...], ...]:
    """Z-basis of ``tau^⊥ ∩ M`` on which K-point coordinates are given."""
    return tuple(tau.orthogonal_lattice())


@lru_cache(maxsize=4096)
def _orbit_exponents(tau: Cone, s: tuple[int, ...]) -> tuple[int, ...] | None:
    if any(la.dot(s, w) != 0 for w in tau.rays):
        return None
    c = la.integer_solve(orbit_basis(tau), s)
    if c is None:  # unreachable: the orbit basis spans tau^⊥ ∩ M
        raise ChartError(f"{s} is not in the lattice spanned by {orbit_basis(tau)}")
    return tuple(c)


@dataclass(frozen=True)
class KPoint:
    """K-point in the torus orbit ``O(orbit)``.

    ``coords[j]`` is the (nonzero) value of ``chi^b_j`` where ``b_j`` runs over
    :func:`orbit_basis`.  For the dense torus this is the standard basis.
    """

    orbit: Cone
    coords: tuple[ValuedScalar, ...]
    fan: Fan = field(compare=False, repr=False)

    def __post_init__(self):
        basis = orbit_basis(self.orbit)
        if len(self.coords) != len(basis):
            raise RankError(f"orbit {self.orbit} needs {len(basis)} coordinates, got {len(self.coords)}")
        if any(not c for c in self.coords):
            raise ValueError("K-point coordinates must be nonzero")

    @property
    def stratum(self) -> Cone:
        return self.orbit


@dataclass(frozen=True)
class MonomialPoint:
    """The monomial seminorm ``f -> min_s (val a_s + u(s))`` (in valuation form)."""

    u: ExtendedTropPoint

    @property
    def fan(self) -> Fan:
        return self.u.fan

    @property
    def stratum(self) -> Cone:
        return self.u.stratum


@dataclass(frozen=True)
class TensorPoint:
    """``eta ⊗ x`` for a K-point or monomial point ``x``."""

    base: Union[KPoint, MonomialPoint]


AnalyticPoint = Union[KPoint, MonomialPoint, TensorPoint]


def k_point(fan: Fan, orbit: Cone, coords: Iterable) -> KPoint:
    orbit = fan.require(orbit)
    return KPoint(orbit, tuple(scalar(c) for c in coords), fan)


def torus_point(fan: Fan, coords: Iterable) -> KPoint:
    return k_point(fan, zero_cone(fan.ambient_rank), coords)


def k_point_from_chart(fan: Fan, sigma: Cone, values: Iterable) -> KPoint:
    """K-point of ``U_sigma`` given by its values on the generators of ``S_sigma``.

    ``values`` follows the order of ``semigroup(sigma)``; zero entries
    determine the orbit.  Inconsistent data raise ``ValueError``.
    """
    sigma = fan.require(sigma)
    gens = semigroup(sigma).hilbert_basis
    vals = [scalar(v) for v in values]
    if len(vals) != len(gens):
        raise RankError(f"chart {sigma} has {len(gens)} generators, got {len(vals)} values")
    alive = [g for g, v in zip(gens, vals) if v]
    tau = Cone(tuple(r for r in sigma.rays if all(la.dot(g, r) == 0 for g in alive)), fan.ambient_rank)
    tau = fan.require(tau)
    basis = orbit_basis(tau)
    lookup = dict(zip(gens, vals))
    coords = []
    for b in basis:
        c = la.integer_solve(alive, b)
        if c is None:
            raise ValueError(f"nonzero generators do not span the orbit lattice of {tau}")
        coords.append(power_product([lookup[g] for g in alive], c))
    x = KPoint(tau, tuple(coords), fan)
    for g, v in zip(gens, vals):
        if monomial_coordinate(x, g) != v:
            raise ValueError(f"values are not multiplicative: generator {g}")
    return x


def power_product(values: Sequence[ValuedScalar], exps: Sequence[int]) -> ValuedScalar:
    out = K.one
    for v, e in zip(values, exps):
        if e:
            out *= v ** e
    return out


def _check_chart(stratum: Cone, exps: Iterable[Sequence[int]]):
    for s in exps:
        if len(s) != stratum.ambient_rank:
            raise RankError(f"exponent {tuple(s)} has the wrong length")
        if not admissible(stratum, s):
            raise ChartError(f"exponent {tuple(s)} is not in S_sigma for any chart containing {stratum}")


def monomial_coordinate(x: KPoint, s: Sequence[int]) -> ValuedScalar:
    """``chi^s(x)``; zero when ``s`` does not vanish on the orbit cone."""
    s = _exp(s)
    _check_chart(x.orbit, [s])
    c = _orbit_exponents(x.orbit, s)
    if c is None:
        return K.zero
    return power_product(x.coords, c)


def eval_seminorm(x: Union[KPoint, MonomialPoint], f: SemigroupPolynomial) -> ExtendedReal:
    """``-log|f|_x``."""
    if isinstance(x, TensorPoint):
        raise TypeError("use eval_tensor for tensor points")
    _check_chart(x.stratum, f.support)
    if isinstance(x, MonomialPoint):
        # coefficients are in Q, which is trivially valued
        return min((evaluate(x.u, s) for s in f.support), default=INF)
    total = K.zero
    for s, a in f.terms:
        total += monomial_coordinate(x, s) * a
    return val(total)


def eval_tensor(x: AnalyticPoint, F: TensorPolynomial) -> ExtendedReal:
    """``-log|F|`` at ``eta ⊗ x``: the minimum over ``m`` of ``-log|f_m|_x``."""
    base = x.base if isinstance(x, TensorPoint) else x
    comps = F.components()
    n = base.stratum.ambient_rank
    for m in comps:
        if len(m) != n:
            raise RankError(f"character {m} has the wrong length")
    return min((eval_seminorm(base, f) for f in comps.values()), default=INF)


def act(g: KPoint, x: KPoint) -> KPoint:
    """Torus action: ``chi^s(g.x) = chi^s(g) chi^s(x)``."""
    if g.orbit.rays:
        raise ValueError("the acting element must lie in the dense torus")
    if g.orbit.ambient_rank != x.orbit.ambient_rank:
        raise RankError("torus and point have different rank")
    coords = tuple(c * power_product(g.coords, b) for c, b in zip(x.coords, orbit_basis(x.orbit)))
    return KPoint(x.orbit, coords, x.fan)


def is_affinoid_unit(g: KPoint) -> bool:
    """Whether every character has valuation 0 at ``g`` (checked on a lattice basis)."""
    if g.orbit.rays:
        return False
    return all(val(c) == 0 for c in g.coords)


__all__ = [
    "INF", "K", "KPoint", "MonomialPoint", "SemigroupPolynomial", "TensorPoint", "TensorPolynomial",
    "act", "eval_seminorm", "eval_tensor", "format_scalar", "is_affinoid_unit", "k_point",
    "k_point_from_chart", "monomial_coordinate", "orbit_basis", "parse_scalar", "scalar", "t",
    "torus_point", "torus_pullbacks", "val",
]
