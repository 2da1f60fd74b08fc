"""Rational polyhedral cones and fans in a lattice Z^n, with exact arithmetic.

Cones are stored by generators.  A pointed cone is canonically stored by its
primitive extreme rays; a cone containing a line (typically the dual of a
cone that is not full-dimensional) also carries opposite pairs spanning its
lineality space.  Ray lists are sorted graded-lexicographically.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

from . import _linalg as la
from .errors import FanError, RankError, UnsupportedConeError

MAX_HILBERT_RANK = 4
_MAX_PARALLELEPIPED = 10**6


def grlex_key(v: Sequence[int]):
    """Sort key: total absolute degree first, then lexicographically larger first."""
    return (sum(abs(x) for x in v), tuple(-x for x in v))


def _canonical_rays(rays: Iterable[Sequence], n: int) -> tuple[tuple[int, ...], ...]:
    out = set()
    for r in rays:
        r = tuple(r)
        if len(r) != n:
            raise RankError(f"ray {r} has length {len(r)}, expected {n}")
        if all(x == 0 for x in r):
            continue
        out.add(la.primitive(r))
    return tuple(sorted(out, key=grlex_key))


@dataclass(frozen=True)
class Cone:
    """Cone generated by ``rays`` in Z^ambient_rank.

    The constructor makes each generator primitive, drops zero vectors and
    duplicates, and sorts.  It does not remove redundant generators; use
    :meth:`canonical` (or :func:`cone`) for that.
    """

    rays: tuple[tuple[int, ...], ...]
    ambient_rank: int

    def __post_init__(self):
        if self.ambient_rank < 1:
            raise RankError("ambient rank must be positive")
        object.__setattr__(self, "rays", _canonical_rays(self.rays, self.ambient_rank))

    def __repr__(self):
        return f"Cone({[list(r) for r in self.rays]}, rank={self.ambient_rank})"

    @cached_property
    def dim(self) -> int:
        return la.rank(self.rays, self.ambient_rank)

    @cached_property
    def lineality(self) -> tuple[tuple[int, ...], ...]:
        """Primitive basis of the largest linear subspace inside the cone."""
        dual = dual_cone(self)
        return _canonical_rays(_subspace_basis(nullspace_int(dual.rays, self.ambient_rank)), self.ambient_rank)

    @property
    def is_pointed(self) -> bool:
        return not self.lineality

    @cached_property
    def _inequalities(self):
        return dual_cone(self).rays

    def contains(self, v: Sequence) -> bool:
        if len(v) != self.ambient_rank:
            raise RankError(f"vector of length {len(v)} tested against rank {self.ambient_rank} cone")
        return all(la.dot(m, v) >= 0 for m in self._inequalities)

    def contains_cone(self, other: "Cone") -> bool:
        return all(self.contains(r) for r in other.rays)

    def canonical(self) -> "Cone":
        """Same cone with redundant generators removed."""
        return dual_cone(dual_cone(self))

    def is_face_of(self, other: "Cone") -> bool:
        return self.canonical() in faces(other)

    def relative_interior_point(self) -> tuple[int, ...]:
        n = self.ambient_rank
        return tuple(sum(r[i] for r in self.rays) for i in range(n))

    def orthogonal_lattice(self) -> list[tuple[int, ...]]:
        """Hermite-normalized Z-basis of the characters vanishing on the cone."""
        return la.lattice_kernel(self.rays, self.ambient_rank)


def cone(*rays: Sequence[int], rank: int | None = None) -> Cone:
    """Canonical cone generated by the given vectors (redundant ones removed)."""
    if rank is None:
        if not rays:
            raise RankError("rank is required for the zero cone")
        rank = len(rays[0])
    return Cone(tuple(tuple(r) for r in rays), rank).canonical()


def zero_cone(rank: int) -> Cone:
    return Cone((), rank)


def nullspace_int(rows, n):
    return [la.primitive(v) for v in la.nullspace(rows, n)]


def _subspace_basis(vectors) -> list[tuple[int, ...]]:
    """Primitive rows of the reduced echelon basis of a span (canonical)."""
    if not vectors:
        return []
    n = len(vectors[0])
    red, _ = la.rref(vectors, n)
    return [la.primitive(r) for r in red]


def _pointed_extreme_rays(gens: Sequence[Sequence[int]], n: int) -> list[tuple[int, ...]]:
    """Extreme rays of ``{x in span(gens) : g . x >= 0}``, which is pointed."""
    span, _ = la.rref(gens, n)
    d = len(span)
    if d == 0:
        return []
    found = set()
    for subset in itertools.combinations(gens, d - 1):
        # x = sum c_i span_i ; subset . x = 0
        cons = [[la.dot(g, b) for b in span] for g in subset]
        ker = la.nullspace(cons, d)
        if len(ker) != 1:
            continue
        x = [sum(c * b[i] for c, b in zip(ker[0], span)) for i in range(n)]
        vals = [la.dot(g, x) for g in gens]
        if all(v >= 0 for v in vals):
            found.add(la.primitive(x))
        elif all(v <= 0 for v in vals):
            found.add(la.primitive([-c for c in x]))
    return sorted(found, key=grlex_key)


@lru_cache(maxsize=None)
def dual_cone(sigma: Cone) -> Cone:
    """``{m : <m, v> >= 0 for all v in sigma}``.

    For a cone that is not full-dimensional the dual contains a line; it is
    returned with opposite pairs spanning the lineality space.
    """
    n = sigma.ambient_rank
    gens = list(sigma.rays)
    lines = _subspace_basis(nullspace_int(gens, n)) if gens else [
        tuple(int(i == j) for j in range(n)) for i in range(n)
    ]
    rays = _pointed_extreme_rays(gens, n) if gens else []
    rays += lines + [tuple(-x for x in v) for v in lines]
    return Cone(tuple(rays), n)


@lru_cache(maxsize=None)
def faces(sigma: Cone) -> tuple[Cone, ...]:
    """All faces of a pointed cone, from the zero cone up to the cone itself."""
    sigma = sigma.canonical()
    if not sigma.is_pointed:
        raise UnsupportedConeError("faces are only enumerated for pointed cones")
    rays = sigma.rays
    normals = [m for m in dual_cone(sigma).rays]
    tight = {frozenset(rays)}
    for m in normals:
        t = frozenset(r for r in rays if la.dot(m, r) == 0)
        if len(t) < len(rays):
            tight.add(t)
    frontier = set(tight)
    while frontier:
        new = set()
        for a, b in itertools.product(frontier, tight):
            c = a & b
            if c not in tight:
                new.add(c)
        tight |= new
        frontier = new
    out = [Cone(tuple(t), sigma.ambient_rank) for t in tight]
    return tuple(sorted(out, key=cone_key))


def cone_key(c: Cone):
    return (c.dim, len(c.rays), tuple(grlex_key(r) for r in c.rays))


def facets(sigma: Cone) -> list[Cone]:
    d = sigma.dim
    return [f for f in faces(sigma) if f.dim == d - 1]


def intersect(a: Cone, b: Cone) -> Cone:
    if a.ambient_rank != b.ambient_rank:
        raise RankError("cones live in lattices of different rank")
    both = Cone(dual_cone(a).rays + dual_cone(b).rays, a.ambient_rank)
    return dual_cone(both)


# -- Hilbert bases -----------------------------------------------------------

@dataclass(frozen=True)
class AffineSemigroup:
    """Finitely generated semigroup ``C ∩ Z^n`` with its generators."""

    hilbert_basis: tuple[tuple[int, ...], ...]
    parent_cone: Cone

    def __iter__(self):
        return iter(self.hilbert_basis)

    def __len__(self):
        return len(self.hilbert_basis)

    def contains(self, s: Sequence[int]) -> bool:
        return self.parent_cone.contains(s)


def _triangulate(c: Cone) -> list[tuple[tuple[int, ...], ...]]:
    """Pulling triangulation into simplicial cones (linearly independent rays)."""
    if len(c.rays) == c.dim:
        return [c.rays]
    apex = c.rays[0]
    out = []
    for f in facets(c):
        if apex in f.rays:
            continue
        for simplex in _triangulate(f):
            out.append((apex,) + simplex)
    return out


def _parallelepiped_points(gens: Sequence[Sequence[int]], n: int) -> list[tuple[int, ...]]:
    """Nonzero lattice points of the half-open parallelepiped spanned by independent ``gens``.

    These are one representative per coset of the saturated lattice
    ``span(gens) ∩ Z^n`` modulo the lattice generated by ``gens``.
    """
    k = len(gens)
    sat = la.lattice_kernel(la.lattice_kernel(gens, n), n)
    coords = [la.integer_solve(sat, g) for g in gens]
    # triangular basis of the sublattice, in coordinates on ``sat``
    tri = la.hermite_rows(coords, k)
    index = 1
    for j, row in enumerate(tri):
        index *= row[j]
    if index == 1:
        return []
    if index > _MAX_PARALLELEPIPED:
        raise UnsupportedConeError("fundamental parallelepiped too large for desk-scale enumeration")
    rows = [[g[i] for g in gens] for i in range(n)]
    pts = []
    for x in itertools.product(*(range(row[j]) for j, row in enumerate(tri))):
        if not any(x):
            continue
        v = [sum(c * b[i] for c, b in zip(x, sat)) for i in range(n)]
        lam = la.solve(rows, v)
        frac = [l - (l.numerator // l.denominator) for l in lam]
        pts.append(tuple(int(sum(f * g[i] for f, g in zip(frac, gens))) for i in range(n)))
    return pts


def _det(m) -> Fraction:
    k = len(m)
    if k == 0:
        return Fraction(1)
    red = [[Fraction(x) for x in row] for row in m]
    d = Fraction(1)
    for c in range(k):
        p = next((i for i in range(c, k) if red[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            red[c], red[p] = red[p], red[c]
            d = -d
        d *= red[c][c]
        for i in range(c + 1, k):
            f = red[i][c] / red[c][c]
            red[i] = [a - f * b for a, b in zip(red[i], red[c])]
    return d


@lru_cache(maxsize=None)
def hilbert_basis(c: Cone) -> AffineSemigroup:
    """Minimal generating set of ``c ∩ Z^n`` for a pointed cone ``c``."""
    n = c.ambient_rank
    if n > MAX_HILBERT_RANK:
        raise UnsupportedConeError(f"Hilbert bases are limited to rank <= {MAX_HILBERT_RANK}")
    c = c.canonical()
    if not c.is_pointed:
        raise UnsupportedConeError("cone contains a line: its lattice points have no finite Hilbert basis")
    candidates = set(c.rays)
    for simplex in _triangulate(c):
        candidates.update(_parallelepiped_points(simplex, n))
    cand = sorted(candidates, key=grlex_key)
    basis = []
    for x in cand:
        reducible = any(
            h != x and c.contains(tuple(a - b for a, b in zip(x, h))) for h in cand
        )
        if not reducible:
            basis.append(x)
    return AffineSemigroup(tuple(basis), c)


@lru_cache(maxsize=None)
def semigroup(sigma: Cone) -> AffineSemigroup:
    """Generators of ``S_sigma = dual(sigma) ∩ M``.

    Full-dimensional cones give the Hilbert basis of the (pointed) dual.
    Otherwise the dual contains the lattice ``sigma^⊥ ∩ M``; the generators
    are the lifted Hilbert basis of the quotient cone together with a
    signed basis of that lattice.
    """
    n = sigma.ambient_rank
    dual = dual_cone(sigma)
    if dual.is_pointed:
        return hilbert_basis(dual)
    r, u = la.column_reduce(sigma.rays, n)
    lattice = la.hermite_rows(u[r:], n)
    gens = list(lattice) + [tuple(-x for x in v) for v in lattice]
    if r:
        proj = []
        for m in dual.rays:
            coords = la.integer_solve(u, m)
            proj.append(tuple(coords[:r]))
        quotient = Cone(tuple(proj), r)
        for h in hilbert_basis(quotient):
            gens.append(tuple(sum(h[j] * u[j][i] for j in range(r)) for i in range(n)))
    return AffineSemigroup(tuple(sorted(set(gens), key=grlex_key)), dual)


# -- fans ----------------------------------------------------------------------

@dataclass(frozen=True)
class Fan:
    """A collection of cones in Z^ambient_rank; see :func:`validate_fan`.

    ``rays`` fixes the indexing used by files and reports.  Build fans from
    maximal cones with :meth:`from_maximal`, which closes under faces.
    """

    ambient_rank: int
    cones: tuple[Cone, ...]
    rays: tuple[tuple[int, ...], ...] = ()
    name: str = field(default="fan", compare=False)

    def __post_init__(self):
        cones = tuple(sorted(set(c.canonical() for c in self.cones), key=cone_key))
        object.__setattr__(self, "cones", cones)
        if not self.rays:
            rays = sorted({r for c in cones for r in c.rays}, key=grlex_key)
            object.__setattr__(self, "rays", tuple(rays))
        for c in cones:
            if c.ambient_rank != self.ambient_rank:
                raise RankError(f"{c} does not live in rank {self.ambient_rank}")

    @classmethod
    def from_maximal(cls, rank: int, rays: Sequence[Sequence[int]], maximal: Sequence[Sequence[int]],
                     name: str = "fan") -> "Fan":
        prim = []
        for i, r in enumerate(rays):
            if len(r) != rank:
                raise RankError(f"ray {i} has length {len(r)}, expected {rank}")
            if not any(r):
                raise FanError(f"ray {i} is zero")
            prim.append(la.primitive(r))
        cones = {zero_cone(rank)}
        for j, idx in enumerate(maximal):
            for i in idx:
                if not 0 <= i < len(prim):
                    raise FanError(f"cone {j} refers to ray index {i}, but there are {len(prim)} rays")
            c = Cone(tuple(prim[i] for i in idx), rank)
            if not c.is_pointed:
                raise FanError(f"cone {j} is not strongly convex")
            cones.update(faces(c))
        return cls(rank, tuple(cones), tuple(prim), name)

    def __contains__(self, c: Cone) -> bool:
        return c.canonical() in self._cone_set

    @cached_property
    def _cone_set(self):
        return frozenset(self.cones)

    def require(self, c: Cone) -> Cone:
        c = c.canonical()
        if c not in self._cone_set:
            raise FanError(f"{c} is not a cone of {self.name}")
        return c

    def ray_indices(self, c: Cone) -> list[int]:
        return sorted(self.rays.index(r) for r in c.rays)

    def cone_from_indices(self, idx: Sequence[int]) -> Cone:
        for i in idx:
            if not 0 <= i < len(self.rays):
                raise FanError(f"ray index {i} out of range (fan has {len(self.rays)} rays)")
        return self.require(Cone(tuple(self.rays[i] for i in idx), self.ambient_rank))

    @cached_property
    def maximal_cones(self) -> tuple[Cone, ...]:
        return tuple(c for c in self.cones
                     if not any(d != c and c.is_face_of(d) for d in self.cones if d.dim > c.dim))

    def charts_for(self, tau: Cone) -> list[Cone]:
        """Maximal cones having ``tau`` as a face."""
        tau = tau.canonical()
        return [s for s in self.maximal_cones if tau in faces(s)]

    def is_face(self, tau: Cone, sigma: Cone) -> bool:
        return tau.canonical() in faces(sigma)


@dataclass
class FanReport:
    valid: bool
    failures: list[dict]

    def to_dict(self):
        return {"valid": self.valid, "failures": self.failures}


def validate_fan(f: Fan) -> FanReport:
    """Check the fan axioms; never raises on a bad fan."""
    failures = []
    cones = list(f.cones)

    def rays_of(c):
        return [list(r) for r in c.rays]

    if zero_cone(f.ambient_rank) not in f._cone_set:
        failures.append({"kind": "missing_zero_cone", "cones": []})
    for c in cones:
        if not c.is_pointed:
            failures.append({"kind": "not_strongly_convex", "cones": [rays_of(c)]})
            continue
        for fc in faces(c):
            if fc not in f._cone_set:
                failures.append({"kind": "missing_face", "cones": [rays_of(c), rays_of(fc)]})
    for a, b in itertools.combinations(cones, 2):
        if not (a.is_pointed and b.is_pointed):
            continue
        meet = intersect(a, b)
        bad = [x for x in (a, b) if meet not in faces(x)]
        if bad:
            failures.append({
                "kind": "intersection_not_face",
                "cones": [rays_of(a), rays_of(b)],
                "intersection": rays_of(meet),
                "not_a_face_of": [rays_of(x) for x in bad],
            })
    return FanReport(not failures, failures)


__all__ = [
    "AffineSemigroup", "Cone", "Fan", "FanReport", "cone", "cone_key", "dual_cone", "faces", "facets",
    "grlex_key", "hilbert_basis", "intersect", "semigroup", "validate_fan", "zero_cone",
]
