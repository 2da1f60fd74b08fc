"""Desk-scale check that tropicalization is the quotient by the affinoid torus.

On a seeded sample of K-points two partitions are computed:

* the *class partition*: the equivalence relation generated by
  ``x ~ g.x`` for affinoid units ``g``.  Edges come from sampled words in a
  small set of unit generators, and from explicit connecting elements: each
  point is joined to the first sampled point of its orbit with the same
  coordinate valuations, after checking that the connecting torus element
  is a unit and carries one point to the other.  Composing these joins
  connects every such pair;
* the *fiber partition*: points grouped by their tropicalization.

The verdict is PASS when the two partitions agree, every equal-trop pair is
joined by an explicit unit, and no unit joins points of different fibers.
"""

from __future__ import annotations

import random
from collections import defaultdict
from dataclasses import dataclass, field

from scipy.cluster.hierarchy import DisjointSet

from . import _linalg as la
from .errors import FanError
from .polyhedra import Fan, validate_fan, zero_cone
from .sampling import random_k_point, random_unit_word, same_valuation_point
from .serialize import k_point_json, trop_point_json
from .tropicalize import trop
from .valued import K, KPoint, act, is_affinoid_unit, orbit_basis, power_product, t, torus_point, val

TRANSLATE_PROB = 0.25
REVALUE_PROB = 0.2


def connecting_element(x: KPoint, y: KPoint) -> KPoint:
    """The dense-torus element ``g`` with ``g.x = y`` that is trivial on a complement of the orbit lattice."""
    if x.orbit != y.orbit:
        raise ValueError("points lie in different torus orbits")
    tau = x.orbit
    n = tau.ambient_rank
    r, u = la.column_reduce(tau.rays, n)
    basis = [tuple(col) for col in u[:r]] + list(orbit_basis(tau))
    values = [K.one] * r + [b / a for a, b in zip(x.coords, y.coords)]
    coords = []
    for i in range(n):
        c = la.integer_solve(basis, tuple(int(i == j) for j in range(n)))
        coords.append(power_product(values, c))
    return torus_point(x.fan, coords)


@dataclass
class QuotientReport:
    fan: str
    samples: int
    seed: int
    negative_control: bool
    points: list[KPoint]
    class_partition: list[list[int]]
    fiber_partition: list[list[int]]
    verdict: str
    witness: dict | None = None
    checks: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.verdict == "PASS"

    def to_dict(self, include_points: bool = True) -> dict:
        out = {
            "fan": self.fan,
            "samples": self.samples,
            "seed": self.seed,
            "negative_control": self.negative_control,
            "verdict": self.verdict,
            "witness": self.witness,
            "checks": self.checks,
            "class_partition": self.class_partition,
            "fiber_partition": self.fiber_partition,
        }
        if include_points:
            out["points"] = [k_point_json(x) for x in self.points]
        return out


def _canonical_partition(blocks) -> list[list[int]]:
    return sorted((sorted(b) for b in blocks), key=lambda b: b[0])


def draw_sample(fan: Fan, samples: int, rng: random.Random):
    """Seeded K-points plus the unit translations used to produce some of them.

    Returns ``(points, relations)`` with relations ``(i, j, g)`` meaning
    ``points[j] = g . points[i]``.
    """
    points: list[KPoint] = []
    relations = []
    for j in range(samples):
        r = rng.random()
        if points and r < TRANSLATE_PROB:
            i = rng.randrange(len(points))
            g = random_unit_word(fan, rng)
            points.append(act(g, points[i]))
            relations.append((i, j, g))
        elif points and r < TRANSLATE_PROB + REVALUE_PROB:
            points.append(same_valuation_point(points[rng.randrange(len(points))], rng))
        else:
            points.append(random_k_point(fan, rng))
    return points, relations


def _non_unit_for(x: KPoint) -> KPoint:
    """Torus element ``b(t)`` for the first orbit-basis vector ``b``; moves trop of ``x``."""
    b = orbit_basis(x.orbit)[0]
    return torus_point(x.fan, [t**c for c in b])


def verify_quotient(fan: Fan, samples: int, seed: int, negative_control: bool = False) -> QuotientReport:
    if samples < 1:
        raise ValueError("sample size must be at least 1")
    report = validate_fan(fan)
    if not report.valid:
        raise FanError(f"{fan.name} is not a fan: {report.failures[0]['kind']}")
    rng = random.Random(seed)
    points, relations = draw_sample(fan, samples, rng)

    injected = None
    if negative_control:
        # the dense torus always has a nonzero orbit lattice, so trop can move
        x = random_k_point(fan, rng, orbit=zero_cone(fan.ambient_rank))
        points.append(x)
        g = _non_unit_for(x)
        points.append(act(g, x))
        injected = (len(points) - 2, len(points) - 1)
        relations.append((injected[0], injected[1], g))

    n = len(points)
    trops = [trop(x) for x in points]
    classes = DisjointSet(range(n))
    checks = {
        "generator_relations": 0,
        "non_unit_relations": 0,
        "translation_mismatches": 0,
        "converse_pairs": 0,
        "converse_confirmed": 0,
        "separation_pairs": 0,
        "separation_confirmed": 0,
        "strata_consistent": True,
    }

    for i, j, g in relations:
        if is_affinoid_unit(g):
            checks["generator_relations"] += 1
        else:
            checks["non_unit_relations"] += 1
        if act(g, points[i]) != points[j]:
            checks["translation_mismatches"] += 1
        classes.merge(i, j)

    by_orbit = defaultdict(list)
    for i, x in enumerate(points):
        by_orbit[x.orbit].append(i)
    coord_vals = [tuple(val(c) for c in x.coords) for x in points]
    for members in by_orbit.values():
        # val is a homomorphism, so the connecting element is a unit exactly
        # when the coordinate valuations agree; each point is joined to the
        # first point with its profile, and to the previous point otherwise
        first_of_profile: dict = {}
        prev = None
        for j in members:
            anchor = first_of_profile.setdefault(coord_vals[j], j)
            if anchor != j:
                checks["converse_pairs"] += 1
                g = connecting_element(points[anchor], points[j])
                if is_affinoid_unit(g) and act(g, points[anchor]) == points[j]:
                    checks["converse_confirmed"] += 1
                    classes.merge(anchor, j)
            if prev is not None and coord_vals[prev] != coord_vals[j]:
                checks["separation_pairs"] += 1
                g = connecting_element(points[prev], points[j])
                if not is_affinoid_unit(g) and act(g, points[prev]) == points[j]:
                    checks["separation_confirmed"] += 1
            prev = j

    fibers = defaultdict(list)
    for i, u in enumerate(trops):
        fibers[u].append(i)
    class_part = _canonical_partition(classes.subsets())
    fiber_part = _canonical_partition(fibers.values())

    for block in class_part:
        strata = {points[i].orbit for i in block} | {trops[i].stratum for i in block}
        if len(strata) != 1:
            checks["strata_consistent"] = False

    witness = None
    if class_part != fiber_part:
        witness = _find_witness(class_part, trops, injected)
    ok = (
        class_part == fiber_part
        and checks["translation_mismatches"] == 0
        and checks["converse_confirmed"] == checks["converse_pairs"]
        and checks["separation_confirmed"] == checks["separation_pairs"]
        and checks["strata_consistent"]
    )
    return QuotientReport(
        fan=fan.name,
        samples=samples,
        seed=seed,
        negative_control=negative_control,
        points=points,
        class_partition=class_part,
        fiber_partition=fiber_part,
        verdict="PASS" if ok else "FAIL",
        witness=witness,
        checks=checks,
    )


def _find_witness(class_part, trops, injected) -> dict:
    if injected is not None and trops[injected[0]] != trops[injected[1]]:
        i, j = injected
        kind = "injected relation joins different fibers"
    else:
        i = j = None
        kind = "same class, different fibers"
        for block in class_part:
            first = block[0]
            other = next((k for k in block if trops[k] != trops[first]), None)
            if other is not None:
                i, j = first, other
                break
        if i is None:
            kind = "same fiber, different classes"
            seen = {}
            owner = {k: b[0] for b in class_part for k in b}
            for k, u in enumerate(trops):
                if u in seen and owner[seen[u]] != owner[k]:
                    i, j = seen[u], k
                    break
                seen.setdefault(u, k)
    return {"kind": kind, "pair": [i, j], "trop": [trop_point_json(trops[i]), trop_point_json(trops[j])]}
