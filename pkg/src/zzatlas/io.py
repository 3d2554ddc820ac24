"""Readers and writers for the ``.tri.json``, ``.map.json`` and ``.dig.json`` files.

See ``docs/formats.md`` for the schemas.  Unknown keys are rejected.
"""
from __future__ import annotations

import hashlib
import json

from zzatlas.errors import FormatError
from zzatlas.surface import build_glued, build_simplicial

TRI_KEYS = {"triangles", "notes"}
MAP_KEYS = {"faces", "gluing", "corner_names"}
DIG_KEYS = {"arcs", "faces"}


def _require(cond, msg):
    if not cond:
        raise FormatError(msg)


def _check_keys(obj, allowed, required, kind):
    _require(isinstance(obj, dict), f"{kind}: top level must be an object")
    unknown = set(obj) - allowed
    _require(not unknown, f"{kind}: unknown keys {sorted(unknown)}")
    missing = required - set(obj)
    _require(not missing, f"{kind}: missing keys {sorted(missing)}")


def detect_kind(obj):
    if isinstance(obj, dict):
        if "triangles" in obj:
            return "tri"
        if "gluing" in obj:
            return "map"
        if "arcs" in obj:
            return "dig"
    raise FormatError("cannot tell the file kind: expected 'triangles', 'gluing' or 'arcs'")


def map_from_tri(obj):
    _check_keys(obj, TRI_KEYS, {"triangles"}, "tri")
    tris = obj["triangles"]
    _require(isinstance(tris, list) and tris, "tri: 'triangles' must be a non-empty list")
    for t in tris:
        _require(isinstance(t, list) and len(t) == 3, f"tri: bad triangle {t!r}")
        _require(all(isinstance(x, (str, int)) for x in t), f"tri: bad vertex id in {t!r}")
    if "notes" in obj:
        notes = obj["notes"]
        _require(
            isinstance(notes, list) and len(notes) == len(tris),
            "tri: 'notes' must hold one string per triangle",
        )
    return build_simplicial(tris)


def map_from_glued(obj):
    _check_keys(obj, MAP_KEYS, {"faces", "gluing"}, "map")
    n = obj["faces"]
    _require(isinstance(n, int) and n > 0, "map: 'faces' must be a positive integer")
    pairings = []
    for item in obj["gluing"]:
        _require(
            isinstance(item, list)
            and len(item) == 3
            and all(isinstance(x, list) and len(x) == 2 for x in item[:2])
            and item[2] in (0, 1),
            f"map: bad gluing entry {item!r}",
        )
        (f, s), (g, t), b = item
        _require(all(isinstance(x, int) for x in (f, s, g, t)), f"map: bad gluing entry {item!r}")
        pairings.append(((f, s), (g, t), b))
    corner_names = None
    if "corner_names" in obj:
        cn = obj["corner_names"]
        _require(
            isinstance(cn, list) and len(cn) == n and all(isinstance(c, list) and len(c) == 3 for c in cn),
            "map: 'corner_names' must hold three names per face",
        )
        corner_names = [str(x) for c in cn for x in c]
    return build_glued(n, pairings, corner_names)


def load_map(obj):
    kind = detect_kind(obj)
    if kind == "tri":
        return map_from_tri(obj)
    if kind == "map":
        return map_from_glued(obj)
    raise FormatError("expected a surface (.tri.json or .map.json), got a digraph")


def parse_dig(obj):
    """Validate the shape of a ``.dig.json`` object; returns ``(arcs, faces)``."""
    _check_keys(obj, DIG_KEYS, DIG_KEYS, "dig")
    arcs = obj["arcs"]
    _require(isinstance(arcs, list) and arcs, "dig: 'arcs' must be a non-empty list")
    for a in arcs:
        _require(isinstance(a, list) and len(a) == 2, f"dig: bad arc {a!r}")
    faces = obj["faces"]
    _require(isinstance(faces, list) and faces, "dig: 'faces' must be a non-empty list")
    out = []
    for face in faces:
        _require(isinstance(face, list) and face, f"dig: bad face {face!r}")
        walk = []
        for item in face:
            _require(
                isinstance(item, list) and len(item) == 2 and item[1] in (1, -1)
                and isinstance(item[0], int) and 0 <= item[0] < len(arcs),
                f"dig: bad face entry {item!r}",
            )
            walk.append((item[0], item[1]))
        out.append(walk)
    return [(str(t), str(h)) for t, h in arcs], out


def map_to_obj(smap):
    """Serialise as ``.tri.json`` when vertex triples determine the map."""
    from zzatlas.surface import is_strict

    if is_strict(smap):
        return {"triangles": [list(t) for t in smap.triangles()]}
    return {
        "faces": smap.n_faces,
        "gluing": smap.gluing(),
        "corner_names": [list(t) for t in smap.triangles()],
    }


def dumps(obj):
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def digest(text):
    return hashlib.sha256(text.encode() if isinstance(text, str) else text).hexdigest()
