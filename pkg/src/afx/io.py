"""JSON formats for polytopes, collections, toric instances and reports.

Rationals cross the interface only as bare integers or ``"p/q"`` strings.
Reports are emitted with sorted keys so identical inputs give identical
bytes.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Any, Optional

from .criticality import Collection
from .errors import MalformedInput
from .polytope import VPolytope

_RATIONAL = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


def parse_rational(x: Any, where: str = "value", warnings: Optional[list] = None) -> Fraction:
    if isinstance(x, bool) or isinstance(x, float):
        raise MalformedInput(f"{where}: expected an integer or a 'p/q' string, got {x!r}", field=where)
    if isinstance(x, int):
        return Fraction(x)
    if not isinstance(x, str):
        raise MalformedInput(f"{where}: expected an integer or a 'p/q' string, got {x!r}", field=where)
    m = _RATIONAL.match(x)
    if not m:
        raise MalformedInput(f"{where}: cannot parse rational {x!r}", field=where)
    num, den = int(m.group(1)), int(m.group(2) or 1)
    if den == 0:
        raise MalformedInput(f"{where}: zero denominator in {x!r}", field=where)
    q = Fraction(num, den)
    if warnings is not None and format_rational(q) != x:
        warnings.append(f"{where}: {x!r} normalized to {format_rational(q)!r}")
    return q


def format_rational(q: Fraction) -> str:
    return str(Fraction(q))


def _coord_out(q: Fraction):
    return q.numerator if q.denominator == 1 else str(q)


def load_json(data, source: str = "input") -> Any:
    if isinstance(data, (bytes, bytearray)):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as e:
            raise MalformedInput(f"{source}: not UTF-8 ({e})") from e
    if not isinstance(data, str):
        return data
    try:
        return json.loads(data)
    except json.JSONDecodeError as e:
        raise MalformedInput(f"{source}: line {e.lineno} column {e.colno}: {e.msg}", line=e.lineno) from e


def polytope_from_obj(obj: Any, where: str = "polytope", warnings: Optional[list] = None) -> VPolytope:
    if not isinstance(obj, dict):
        raise MalformedInput(f"{where}: expected an object with 'ambient_dim' and 'points'", field=where)
    missing = {"ambient_dim", "points"} - set(obj)
    if missing:
        raise MalformedInput(f"{where}: missing field(s) {sorted(missing)}", field=where)
    n = obj["ambient_dim"]
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise MalformedInput(f"{where}.ambient_dim: expected a positive integer", field=f"{where}.ambient_dim")
    pts = obj["points"]
    if not isinstance(pts, list) or not pts:
        raise MalformedInput(f"{where}.points: expected a nonempty list", field=f"{where}.points")
    out = []
    for i, p in enumerate(pts):
        f = f"{where}.points[{i}]"
        if not isinstance(p, list) or len(p) != n:
            raise MalformedInput(f"{f}: expected a list of {n} coordinates", field=f)
        out.append(tuple(parse_rational(x, f"{f}[{j}]", warnings) for j, x in enumerate(p)))
    return VPolytope(out, n)


def polytope_to_obj(P: VPolytope) -> dict:
    return {"ambient_dim": P.ambient_dim, "points": [[_coord_out(x) for x in p] for p in P.points]}


def parse_polytope(data, warnings: Optional[list] = None) -> VPolytope:
    return polytope_from_obj(load_json(data), "polytope", warnings)


def emit_polytope(P: VPolytope) -> bytes:
    return emit_report(polytope_to_obj(P))


def _polytope_list(obj, where, warnings):
    if not isinstance(obj, list):
        raise MalformedInput(f"{where}: expected a list of polytopes", field=where)
    return [polytope_from_obj(p, f"{where}[{i}]", warnings) for i, p in enumerate(obj)]


def bodies_from_obj(obj: Any, warnings: Optional[list] = None) -> list[VPolytope]:
    """A single polytope, a list of polytopes, or ``{"bodies": [...]}``."""
    if isinstance(obj, dict) and "bodies" in obj:
        return _polytope_list(obj["bodies"], "bodies", warnings)
    if isinstance(obj, list):
        return _polytope_list(obj, "bodies", warnings)
    return [polytope_from_obj(obj, "polytope", warnings)]


def collection_from_obj(obj: Any, warnings: Optional[list] = None) -> Collection:
    """``{"ambient_dim": n, "polytopes": [...]}`` or a nonempty list of polytopes."""
    if isinstance(obj, list):
        polys = _polytope_list(obj, "collection", warnings)
        if not polys:
            raise MalformedInput("collection: an empty list needs the object form with ambient_dim")
        n = polys[0].ambient_dim
    elif isinstance(obj, dict) and "polytopes" in obj:
        n = obj.get("ambient_dim")
        if isinstance(n, bool) or not isinstance(n, int):
            raise MalformedInput("collection.ambient_dim: expected an integer", field="collection.ambient_dim")
        polys = _polytope_list(obj["polytopes"], "collection.polytopes", warnings)
    else:
        raise MalformedInput("collection: expected {'ambient_dim', 'polytopes'} or a list")
    try:
        return Collection(n, tuple(polys))
    except ValueError as e:
        raise MalformedInput(f"collection: {e}") from e


def collection_to_obj(C: Collection) -> dict:
    return {"ambient_dim": C.ambient_dim, "polytopes": [polytope_to_obj(P) for P in C.polytopes]}


def toric_instance_from_obj(obj: Any, warnings: Optional[list] = None):
    """``{"Q": <polytope>, "collection": [<polytope>, ...]}``."""
    if not isinstance(obj, dict) or "Q" not in obj or "collection" not in obj:
        raise MalformedInput("toric instance: expected an object with 'Q' and 'collection'")
    Q = polytope_from_obj(obj["Q"], "Q", warnings)
    polys = _polytope_list(obj["collection"], "collection", warnings)
    try:
        return Q, Collection(Q.ambient_dim, tuple(polys))
    except ValueError as e:
        raise MalformedInput(f"collection: {e}") from e


def _jsonable(value):
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, VPolytope):
        return polytope_to_obj(value)
    return value


def emit_report(value) -> bytes:
    return (json.dumps(_jsonable(value), sort_keys=True) + "\n").encode("utf-8")
