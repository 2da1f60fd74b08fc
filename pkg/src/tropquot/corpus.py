"""Small fans used throughout the tests and available by name on the command line."""

from __future__ import annotations

from .polyhedra import Fan

FAN_DATA = {
    "A1": (1, [(1,)], [[0]]),
    "A2": (2, [(1, 0), (0, 1)], [[0, 1]]),
    "P1": (1, [(1,), (-1,)], [[0], [1]]),
    "P2": (2, [(1, 0), (0, 1), (-1, -1)], [[0, 1], [1, 2], [2, 0]]),
    # Hirzebruch surface F_1
    "F1": (2, [(1, 0), (0, 1), (-1, 1), (0, -1)], [[0, 1], [1, 2], [2, 3], [3, 0]]),
    # affine chart of a singular surface: the cone over (2,-1) and (0,1)
    "SING": (2, [(2, -1), (0, 1)], [[0, 1]]),
}


def corpus_fan(name: str) -> Fan:
    rank, rays, maximal = FAN_DATA[name]
    return Fan.from_maximal(rank, rays, maximal, name)


def corpus() -> dict[str, Fan]:
    return {name: corpus_fan(name) for name in FAN_DATA}
