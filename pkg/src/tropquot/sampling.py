"""Seeded random points, torus elements and polynomials.

All draws go through a caller-supplied :class:`random.Random`, so a seed
fixes every sample exactly.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .extended import ExtendedTropPoint, make_point
from .polyhedra import Cone, Fan, faces, semigroup
from .valued import K, KPoint, SemigroupPolynomial, orbit_basis, t, torus_point, val

UNIT_LEADING = (-3, -2, -1, 1, 2, 3)
UNIT_HIGHER = (-2, -1, 0, 1, 2)
SHIFTS = range(-3, 4)
CONSTANTS = (Fraction(-3), Fraction(-2), Fraction(-1), Fraction(1), Fraction(2), Fraction(3),
             Fraction(1, 2), Fraction(-1, 2), Fraction(2, 3))
UNIT_GENERATORS = ("const", "1+t", "1-t", "(1+t)/(1-t)")
COEFFICIENTS = (Fraction(-3), Fraction(-2), Fraction(-1), Fraction(1), Fraction(2), Fraction(3),
                Fraction(1, 2), Fraction(-5, 3))


def random_unit(rng: random.Random):
    """``c0 + c1 t + c2 t^2`` with ``c0 != 0``: a K-element of valuation 0."""
    c0 = rng.choice(UNIT_LEADING)
    c1 = rng.choice(UNIT_HIGHER)
    c2 = rng.choice(UNIT_HIGHER)
    return K(c0) + c1 * t + c2 * t**2


def random_coordinate(rng: random.Random, shift: int | None = None):
    e = rng.choice(SHIFTS) if shift is None else shift
    return random_unit(rng) * t**e


def random_k_point(fan: Fan, rng: random.Random, orbit: Cone | None = None) -> KPoint:
    tau = rng.choice(fan.cones) if orbit is None else orbit
    coords = tuple(random_coordinate(rng) for _ in orbit_basis(tau))
    return KPoint(tau, coords, fan)


def same_valuation_point(x: KPoint, rng: random.Random) -> KPoint:
    """A point in the orbit of ``x`` whose coordinates have the same valuations but fresh unit parts."""
    coords = tuple(random_coordinate(rng, val(c)) for c in x.coords)
    return KPoint(x.orbit, coords, x.fan)


def unit_generator(name: str, rng: random.Random):
    if name == "const":
        c = rng.choice(CONSTANTS)
        return K(c.numerator) / K(c.denominator)
    return {"1+t": 1 + t, "1-t": 1 - t, "(1+t)/(1-t)": (1 + t) / (1 - t)}[name]


def random_unit_word(fan: Fan, rng: random.Random, max_depth: int = 3) -> KPoint:
    """Dense-torus element whose coordinates are products of up to ``max_depth`` unit generators."""
    coords = []
    for _ in range(fan.ambient_rank):
        value = K.one
        for _ in range(rng.randint(1, max_depth)):
            value *= unit_generator(rng.choice(UNIT_GENERATORS), rng)
        coords.append(value)
    return torus_point(fan, coords)


def random_torus_element(fan: Fan, rng: random.Random) -> KPoint:
    return torus_point(fan, [random_coordinate(rng) for _ in range(fan.ambient_rank)])


def random_polynomial(fan: Fan, tau: Cone, rng: random.Random, max_terms: int = 4,
                      max_mult: int = 2) -> SemigroupPolynomial:
    """Random element of ``k[S_sigma]`` for a random cone ``sigma`` of ``fan`` having ``tau`` as a face."""
    charts = [s for s in fan.cones if tau in faces(s)]
    sigma = rng.choice(charts)
    gens = semigroup(sigma).hilbert_basis
    n = fan.ambient_rank
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        s = [0] * n
        for g in gens:
            m = rng.randint(0, max_mult) if rng.random() < 0.6 else 0
            s = [a + m * b for a, b in zip(s, g)]
        terms[tuple(s)] = rng.choice(COEFFICIENTS)
    return SemigroupPolynomial.from_dict(terms)


def random_trop_point(fan: Fan, rng: random.Random) -> ExtendedTropPoint:
    tau = rng.choice(fan.cones)
    v = [Fraction(rng.randint(-6, 6), rng.choice((1, 2, 3))) for _ in range(fan.ambient_rank)]
    return make_point(fan, tau, v)
