"""Brute-force reference computations and random generators shared by the tests.

The polyhedral oracles here do not call the library's cone code: duals come
from enumerating integer functionals in a box, lattice points from
enumerating a box, and cone membership from Cramer's rule on simplicial
subcones.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from tropquot.polyhedra import faces, semigroup
from tropquot.sampling import random_k_point, random_polynomial, random_trop_point
from tropquot.tropicalize import section
from tropquot.valued import KPoint, MonomialPoint, SemigroupPolynomial, TensorPoint, TensorPolynomial


def dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def det(m):
    if len(m) == 1:
        return m[0][0]
    return sum((-1) ** j * m[0][j] * det([row[:j] + row[j + 1:] for row in m[1:]]) for j in range(len(m)))


def rank(vectors, n):
    vectors = [list(v) for v in vectors]
    for k in range(min(len(vectors), n), 0, -1):
        for rows in itertools.combinations(vectors, k):
            for cols in itertools.combinations(range(n), k):
                if det([[r[c] for c in cols] for r in rows]) != 0:
                    return k
    return 0


def box(n, bound):
    return itertools.product(range(-bound, bound + 1), repeat=n)


def functionals(gens, n, bound=5):
    """Integer functionals in ``[-bound, bound]^n`` that are nonnegative on ``gens``."""
    return [f for f in box(n, bound) if all(dot(f, g) >= 0 for g in gens)]


def in_cone(v, gens, n):
    """Exact membership of ``v`` in the cone spanned by ``gens`` (Caratheodory over subsets)."""
    if not any(v):
        return True
    for k in range(1, n + 1):
        for sub in itertools.combinations(gens, k):
            # pick k coordinates where the subset is independent and solve there
            for cols in itertools.combinations(range(n), k):
                m = [[g[c] for g in sub] for c in cols]
                d = det(m)
                if d == 0:
                    continue
                lam = []
                for j in range(k):
                    mj = [row[:j] + [v[c]] + row[j + 1:] for row, c in zip(m, cols)]
                    lam.append(Fraction(det(mj), d))
                if all(x >= 0 for x in lam) and all(
                    sum(l * g[i] for l, g in zip(lam, sub)) == v[i] for i in range(n)
                ):
                    return True
                break
    return False


def positive_functional(gens, n, bound=12):
    """An integer functional strictly positive on every generator."""
    for f in sorted(box(n, bound), key=lambda f: (sum(map(abs, f)), f)):
        if all(dot(f, g) > 0 for g in gens):
            return f
    raise AssertionError("no strictly positive functional in the search box")


def hilbert_oracle(gens, n, member=None):
    """Irreducible lattice points of a pointed cone, by enumeration.

    Every Hilbert basis element lies in the zonotope ``sum [0,1] g``, which
    bounds both the coordinate box and the grading ``ell``.
    """
    member = member or (lambda v: in_cone(v, gens, n))
    ell = positive_functional(gens, n)
    top = sum(dot(ell, g) for g in gens)
    bound = sum(max(abs(x) for x in g) for g in gens)
    pts = [v for v in box(n, bound) if 0 < dot(ell, v) <= top and member(v)]
    pts.sort(key=lambda v: dot(ell, v))
    irreducible = []
    for v in pts:
        if not any(member(tuple(a - b for a, b in zip(v, h))) for h in irreducible):
            irreducible.append(v)
    return sorted(irreducible)


def dual_oracle_failures(gens, n, dual_rays, bound=5):
    """Reasons why ``dual_rays`` fails to generate the dual of ``cone(gens)``; empty when it agrees."""
    problems = []
    enum = functionals(gens, n, bound)
    enum_set = set(enum)
    for d in dual_rays:
        if max(map(abs, d)) <= bound and d not in enum_set:
            problems.append(f"{d} is not nonnegative on the cone")
        elif any(dot(d, g) < 0 for g in gens):
            problems.append(f"{d} is negative on a generator")
    for f in enum:
        if not in_cone(f, dual_rays, n):
            problems.append(f"functional {f} is missing from the computed dual")
    # a full-dimensional cone has a pointed dual whose rays must be extreme
    if rank(gens, n) == n:
        for d in dual_rays:
            tight = [g for g in gens if dot(d, g) == 0]
            if rank(tight, n) != n - 1:
                problems.append(f"{d} is not an extreme ray")
    return problems


# -- random points of each kind ---------------------------------------------

POINT_KINDS = ("k-point", "monomial", "tensor")


def random_point(kind, fan, rng: random.Random):
    if kind == "k-point":
        return random_k_point(fan, rng)
    if kind == "monomial":
        return section(random_trop_point(fan, rng))
    return TensorPoint(random_point(rng.choice(("k-point", "monomial")), fan, rng))


def base_of(x):
    return x.base if isinstance(x, TensorPoint) else x


def random_chart_polynomial(x, rng: random.Random) -> SemigroupPolynomial:
    base = base_of(x)
    return random_polynomial(base.fan, base.stratum, rng)


def random_tensor_polynomial(x, rng: random.Random) -> TensorPolynomial:
    """``sum_m chi^m ⊗ f_m`` with arbitrary characters ``m`` and chart polynomials ``f_m``."""
    base = base_of(x)
    n = base.fan.ambient_rank
    d = {}
    for _ in range(rng.randint(1, 3)):
        m = tuple(rng.randint(-2, 2) for _ in range(n))
        for s, a in random_chart_polynomial(x, rng).terms:
            d[(m, s)] = d.get((m, s), 0) + a
    return TensorPolynomial.from_dict(d)


def hilbert_monomials(x) -> list[SemigroupPolynomial]:
    """Monomials on the generators of every chart containing the stratum of ``x``."""
    base = base_of(x)
    out = []
    for sigma in base.fan.cones:
        if base.stratum in faces(sigma):
            out.extend(SemigroupPolynomial.monomial(s) for s in semigroup(sigma).hilbert_basis)
    return out


__all__ = [
    "KPoint", "MonomialPoint", "POINT_KINDS", "dual_oracle_failures", "hilbert_monomials", "hilbert_oracle",
    "in_cone", "random_chart_polynomial", "random_point", "random_tensor_polynomial",
]
