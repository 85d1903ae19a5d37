"""JSON interchange for point sets and certificates.

Point set: ``{"points": [[num_x, den_x, num_y, den_y], ...], "ids": [...]}``
(``ids`` optional, defaulting to positions) or the shorthand
``[[x, y], ...]`` for integer coordinates. Certificates refer to points by id
and carry a ``host`` block (point count and content hash) so they can be
checked against the point file they were produced from.
"""

from __future__ import annotations

import hashlib
import json
from fractions import Fraction
from typing import Any

from .errors import SchemaError
from .families import ConvexBundle, CrossingFamily, NonCrossingFamily, SpokeSet
from .geometry import OrientedLine, Point, PointSet, Segment
from .sametype import SameTypeCertificate


def _int(v) -> int:
    if isinstance(v, bool) or not isinstance(v, int):
        raise SchemaError(f"expected an integer, got {v!r}")
    return v


def _frac(num, den) -> Fraction:
    if _int(den) == 0:
        raise SchemaError("zero denominator")
    return Fraction(_int(num), den)


def encode_rational(q: Fraction) -> list[int]:
    return [q.numerator, q.denominator]


def encode_point(p: Point) -> list[int]:
    return [p.x.numerator, p.x.denominator, p.y.numerator, p.y.denominator]


def decode_point(row) -> Point:
    if not isinstance(row, list):
        raise SchemaError(f"point must be a list, got {row!r}")
    if len(row) == 2:
        return Point(_int(row[0]), _int(row[1]))
    if len(row) == 4:
        return Point(_frac(row[0], row[1]), _frac(row[2], row[3]))
    raise SchemaError(f"point must have 2 or 4 integers, got {row!r}")


def points_to_json(P: PointSet, **extra) -> dict[str, Any]:
    doc: dict[str, Any] = {"points": [encode_point(p) for p in P.points]}
    if P.ids != tuple(range(len(P))):
        doc["ids"] = list(P.ids)
    doc.update(extra)
    return doc


def points_from_json(doc) -> PointSet:
    if isinstance(doc, list):
        rows, ids = doc, None
    elif isinstance(doc, dict) and isinstance(doc.get("points"), list):
        rows, ids = doc["points"], doc.get("ids")
        if ids is not None:
            if not isinstance(ids, list) or len(ids) != len(rows):
                raise SchemaError("ids must be a list matching the points")
            ids = [_int(i) for i in ids]
    else:
        raise SchemaError("expected a point list or an object with a 'points' list")
    try:
        return PointSet(tuple(decode_point(r) for r in rows), None if ids is None else tuple(ids))
    except SchemaError:
        raise
    except ValueError as e:
        raise SchemaError(str(e)) from e


def digest(P: PointSet) -> str:
    body = json.dumps([[i] + encode_point(p) for i, p in zip(P.ids, P.points)], separators=(",", ":"))
    return hashlib.sha256(body.encode()).hexdigest()


def host_block(P: PointSet) -> dict[str, Any]:
    return {"n": len(P), "sha256": digest(P)}


def _ids(S: PointSet) -> list[int]:
    return list(S.ids)


def lookup_ids(P: PointSet, ids) -> PointSet:
    if not isinstance(ids, list):
        raise SchemaError("expected a list of point ids")
    ids = [_int(i) for i in ids]
    missing = [i for i in ids if i not in P.by_id]
    if missing:
        raise SchemaError(f"unknown point ids {missing}")
    if len(set(ids)) != len(ids):
        raise SchemaError("repeated point ids")
    return P.select_ids(ids)


def _check_host(doc: dict, P: PointSet) -> None:
    host = doc.get("host")
    if host is None:
        return
    if not isinstance(host, dict) or host.get("n") != len(P) or host.get("sha256") != digest(P):
        raise SchemaError("certificate was produced for a different point set")


def same_type_to_json(cert: SameTypeCertificate) -> dict[str, Any]:
    return {
        "sets": list(cert.set_ids),
        "signature": {f"({i},{j},{k})": s for (i, j, k), s in sorted(cert.signature.items())},
        "witness": list(cert.witness),
    }


def same_type_from_json(doc) -> SameTypeCertificate:
    try:
        sig = {}
        for key, s in doc["signature"].items():
            t = tuple(int(v) for v in key.strip("()").split(","))
            if len(t) != 3 or s not in (-1, 1):
                raise SchemaError(f"bad signature entry {key!r}: {s!r}")
            sig[t] = s
        return SameTypeCertificate(
            tuple(_int(i) for i in doc["sets"]), sig, tuple(_int(i) for i in doc["witness"])
        )
    except (KeyError, TypeError, AttributeError, ValueError) as e:
        raise SchemaError(f"malformed same-type certificate: {e}") from e


def _line_to_json(ln: OrientedLine) -> list[list[int]]:
    return [encode_point(ln.p), encode_point(ln.q)]


def certificate_to_json(cert, P: PointSet) -> dict[str, Any]:
    if isinstance(cert, CrossingFamily):
        doc: dict[str, Any] = {
            "type": "crossing-family",
            "segments": [[P.ids[P.index_of[s.a]], P.ids[P.index_of[s.b]]] for s in cert.segments],
        }
        if cert.sides is not None:
            doc["sides"] = [_ids(cert.sides[0]), _ids(cert.sides[1])]
    elif isinstance(cert, NonCrossingFamily):
        doc = {"type": "noncrossing-family", "parts": [_ids(S) for S in cert.parts]}
    elif isinstance(cert, ConvexBundle):
        doc = {
            "type": "convex-bundle",
            "parts": [_ids(S) for S in cert.parts],
            "certificate": same_type_to_json(cert.cert),
        }
    elif isinstance(cert, SpokeSet):
        doc = {"type": "spoke-set", "lines": [_line_to_json(ln) for ln in cert.lines]}
    else:
        raise TypeError(f"cannot serialize {type(cert).__name__}")
    doc["host"] = host_block(P)
    return doc


def certificate_from_json(doc, P: PointSet):
    if not isinstance(doc, dict) or "type" not in doc:
        raise SchemaError("certificate must be an object with a 'type'")
    _check_host(doc, P)
    kind = doc["type"]
    try:
        if kind == "crossing-family":
            segs = []
            for pair in doc["segments"]:
                if not isinstance(pair, list) or len(pair) != 2:
                    raise SchemaError("segment must be a pair of ids")
                a, b = lookup_ids(P, pair).points
                segs.append(Segment(a, b))
            sides = doc.get("sides")
            if sides is not None:
                if not isinstance(sides, list) or len(sides) != 2:
                    raise SchemaError("sides must be two id lists")
                sides = (lookup_ids(P, sides[0]), lookup_ids(P, sides[1]))
            return CrossingFamily(tuple(segs), sides)
        if kind == "noncrossing-family":
            parts = doc["parts"]
            if not isinstance(parts, list) or len(parts) != 4:
                raise SchemaError("a non-crossing family has four parts")
            return NonCrossingFamily(*(lookup_ids(P, ids) for ids in parts))
        if kind == "convex-bundle":
            parts = tuple(lookup_ids(P, ids) for ids in doc["parts"])
            return ConvexBundle(parts, same_type_from_json(doc["certificate"]))
        if kind == "spoke-set":
            lines = []
            for row in doc["lines"]:
                if not isinstance(row, list) or len(row) != 2:
                    raise SchemaError("a line is a pair of points")
                lines.append(OrientedLine(decode_point(row[0]), decode_point(row[1])))
            return SpokeSet(tuple(lines))
    except SchemaError:
        raise
    except (KeyError, TypeError, ValueError) as e:
        raise SchemaError(f"malformed {kind} certificate: {e}") from e
    raise SchemaError(f"unknown certificate type {kind!r}")


def dumps(doc, indent: int | None = 2) -> str:
    return json.dumps(doc, indent=indent, sort_keys=True) + "\n"


def load(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as e:
        raise SchemaError(f"{path}: invalid JSON ({e})") from e
