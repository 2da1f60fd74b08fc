"""Reading and writing fan and point files (JSON)."""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Union

from .corpus import FAN_DATA, corpus_fan
from .errors import FanError, ParseError, RankError, TropError
from .extended import make_point
from .polyhedra import Fan
from .valued import KPoint, MonomialPoint, k_point, k_point_from_chart, parse_scalar


def read_json(path: Union[str, Path]) -> Any:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"{p}: cannot read ({exc.strerror})") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{p}: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc


def _int_vector(value, where: str) -> list[int]:
    if not isinstance(value, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in value):
        raise ParseError(f"{where}: expected a list of integers, got {value!r}")
    return value


def _index_list(value, where: str) -> list[int]:
    return _int_vector(value, where)


def parse_rational(value, where: str) -> Fraction:
    if isinstance(value, bool):
        raise ParseError(f"{where}: expected a rational, got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"{where}: not a rational: {value!r}") from exc
    raise ParseError(f"{where}: expected a rational string such as \"3/2\", got {value!r}")


def fan_from_dict(data: Any, name: str = "fan") -> Fan:
    if not isinstance(data, dict):
        raise ParseError("fan file: top level must be an object")
    for key in ("lattice_rank", "rays", "maximal_cones"):
        if key not in data:
            raise ParseError(f"fan file: missing field '{key}'")
    rank = data["lattice_rank"]
    if not isinstance(rank, int) or isinstance(rank, bool) or rank < 1:
        raise ParseError(f"fan file: field 'lattice_rank' must be a positive integer, got {rank!r}")
    if not isinstance(data["rays"], list):
        raise ParseError("fan file: field 'rays' must be a list")
    rays = [_int_vector(r, f"fan file: rays[{i}]") for i, r in enumerate(data["rays"])]
    if not isinstance(data["maximal_cones"], list):
        raise ParseError("fan file: field 'maximal_cones' must be a list")
    cones = [_index_list(c, f"fan file: maximal_cones[{j}]") for j, c in enumerate(data["maximal_cones"])]
    try:
        return Fan.from_maximal(rank, rays, cones, name=str(data.get("name", name)))
    except (FanError, RankError) as exc:
        raise ParseError(f"fan file: {exc}") from exc


def fan_to_dict(fan: Fan) -> dict:
    return {
        "name": fan.name,
        "lattice_rank": fan.ambient_rank,
        "rays": [list(r) for r in fan.rays],
        "maximal_cones": [fan.ray_indices(c) for c in fan.maximal_cones],
    }


def load_fan(source: Union[str, Path]) -> Fan:
    """Fan from a JSON file, or one of the built-in corpus fans by name."""
    p = Path(source)
    if not p.exists() and str(source) in FAN_DATA:
        return corpus_fan(str(source))
    return fan_from_dict(read_json(p), name=p.stem)


def point_from_dict(data: Any, fan: Fan) -> Union[KPoint, MonomialPoint]:
    if not isinstance(data, dict):
        raise ParseError("point file: top level must be an object")
    kind = data.get("kind")
    try:
        if kind == "k-point":
            if "chart" in data:
                sigma = fan.cone_from_indices(_index_list(data["chart"], "point file: chart"))
                values = data.get("values")
                if not isinstance(values, list):
                    raise ParseError("point file: field 'values' must be a list of rational-function strings")
                scalars = [parse_scalar(str(v)) for v in values]
                try:
                    return k_point_from_chart(fan, sigma, scalars)
                except ValueError as exc:
                    raise ParseError(f"point file: {exc}") from exc
            orbit = fan.cone_from_indices(_index_list(data.get("orbit_cone", []), "point file: orbit_cone"))
            coords = data.get("coordinates")
            if not isinstance(coords, list):
                raise ParseError("point file: field 'coordinates' must be a list of rational-function strings")
            scalars = [parse_scalar(str(c)) for c in coords]
            try:
                return k_point(fan, orbit, scalars)
            except ValueError as exc:
                raise ParseError(f"point file: coordinates: {exc}") from exc
        if kind == "monomial":
            stratum = fan.cone_from_indices(_index_list(data.get("stratum", []), "point file: stratum"))
            rep = data.get("rep")
            if not isinstance(rep, list):
                raise ParseError("point file: field 'rep' must be a list of rationals")
            v = [parse_rational(x, f"point file: rep[{i}]") for i, x in enumerate(rep)]
            return MonomialPoint(make_point(fan, stratum, v))
    except ParseError:
        raise
    except TropError as exc:
        raise ParseError(f"point file: {exc}") from exc
    raise ParseError(f"point file: field 'kind' must be \"k-point\" or \"monomial\", got {kind!r}")


def load_point(path: Union[str, Path], fan: Fan) -> Union[KPoint, MonomialPoint]:
    return point_from_dict(read_json(path), fan)


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"
