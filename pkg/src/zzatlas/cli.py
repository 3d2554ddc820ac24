"""Command line entry point: ``zzatlas <command> [input] [options]``.

Reports are JSON on standard output.  Commands that build maps (``gen``,
``shred``, ``build-t``) write the map file instead and put their report in
``--report`` when asked.  Exit status: 0 on success, 1 on bad input, 2 when
an internal invariant fails.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from zzatlas import __version__
from zzatlas import io as zio
from zzatlas.constructions import DirectedEmbeddingSpec, build_T, extract_and_roundtrip, shred_to_type_I
from zzatlas.errors import (
    FormatError,
    InputError,
    InvariantViolation,
    NotStrict,
    ParameterOutOfRange,
    UsageError,
)
from zzatlas.generators import FAMILIES
from zzatlas.monodromy import all_monodromies, histogram, monodromy_subgraphs, subgraph_dot
from zzatlas.orientation import (
    TYPE_I,
    ZOrientation,
    classify,
    default_cap,
    enumerate_z_orientations,
    find_all_type_I_orientation,
    homogeneous_zigzags,
)
from zzatlas.structure import class_counts, components, gamma_II, theorem1_report
from zzatlas.surface import LEVELS, STRICT, SURFACE, validate
from zzatlas.zigzag import all_zigzags

SCHEMA = 1


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _type_name(t):
    return "I" if t == TYPE_I else "II"


class _Context:
    """Parsed input plus the fields every report carries."""

    def __init__(self, args):
        self.args = args
        self.raw = None
        self.obj = None
        self.smap = None

    def read(self):
        path = self.args.input
        if path in (None, "-"):
            data = sys.stdin.buffer.read()
        else:
            try:
                with open(path, "rb") as fh:
                    data = fh.read()
            except OSError as exc:
                raise FormatError(f"cannot read {path}: {exc.strerror}") from exc
        self.raw = data
        try:
            self.obj = json.loads(data.decode("utf-8"))
        except (UnicodeDecodeError, json.JSONDecodeError) as exc:
            raise FormatError(f"input is not JSON: {exc}") from exc
        return self.obj

    def load_map(self):
        self.smap = zio.load_map(self.read())
        if getattr(self.args, "strict", False):
            report = validate(self.smap, STRICT)
            if not report.ok:
                raise NotStrict(f"{len(report.violations)} strict violations, first {report.violations[0]}")
        return self.smap

    def header(self, command):
        out = {"schema": SCHEMA, "version": __version__, "command": command}
        if self.raw is not None:
            out["input_sha256"] = zio.digest(self.raw)
        if self.smap is not None:
            out["map"] = self.smap.summary()
        return out


def _cap(args):
    return args.cap if getattr(args, "cap", None) is not None else default_cap()


def _orientation(ctx, default="auto"):
    """Resolve ``--orientation``; ``None`` when no all-type-I one exists."""
    smap, args = ctx.smap, ctx.args
    spec = getattr(args, "orientation", None) or default
    if getattr(args, "all_type_1", False):
        spec = "all-type-1"
    k = all_zigzags(smap).k
    if spec in ("auto", "all-type-1"):
        tau = find_all_type_I_orientation(smap, _cap(args))
        if tau is None and spec == "auto":
            tau = ZOrientation.from_index(0, k)
        return tau
    try:
        index = int(spec)
    except ValueError:
        raise UsageError(f"--orientation expects an index, 'auto' or 'all-type-1', got {spec!r}")
    if not 0 <= index < 2**k:
        raise ParameterOutOfRange(f"orientation {index} out of range 0..{2**k - 1}")
    return ZOrientation.from_index(index, k)


def _tau_dict(tau):
    return {"index": tau.index, "bits": list(tau.bits)}


def _emit(args, obj):
    text = json.dumps(obj, indent=2, sort_keys=True) + "\n"
    out = getattr(args, "out", None)
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _write_side(path, obj):
    if path:
        with open(path, "w") as fh:
            fh.write(json.dumps(obj, indent=2, sort_keys=True) + "\n")


# ---------------------------------------------------------------------------
# commands


def cmd_validate(ctx):
    args = ctx.args
    smap = zio.load_map(ctx.read())
    ctx.smap = smap
    level = STRICT if args.strict else args.level
    report = validate(smap, level)
    out = ctx.header("validate")
    out["report"] = report.to_dict()
    _emit(args, out)
    return 0 if report.ok else 1


def cmd_zigzags(ctx):
    smap = ctx.load_map()
    zs = all_zigzags(smap)
    out = ctx.header("zigzags")
    out.update(
        {
            "pairs": zs.k,
            "lengths": zs.lengths,
            "z_knotted": zs.k == 1,
            "zigzags": [
                {"length": len(z), "edges": [list(x) for x in z.edge_names(smap)]}
                for z, _ in zs.pairs
            ],
        }
    )
    _emit(ctx.args, out)
    return 0


def _classification_dict(smap, cls):
    edges = []
    for e in range(smap.n_edges):
        row = {"edge": e, "vertices": list(smap.edge_name(e)), "type": _type_name(cls.edge_type[e])}
        if cls.edge_dir[e] is not None:
            row["direction"] = list(smap.edge_name(e, cls.edge_dir[e]))
        edges.append(row)
    return {
        "edges": edges,
        "faces": [
            {"face": f, "vertices": list(t), "type": _type_name(cls.face_type[f])}
            for f, t in enumerate(smap.triangles())
        ],
        "vertices": {smap.vertex_names[v]: _type_name(t) for v, t in enumerate(cls.vertex_type)},
        "face_census": cls.face_census(),
    }


def cmd_classify(ctx):
    smap = ctx.load_map()
    tau = _orientation(ctx, default="0")
    out = ctx.header("classify")
    if tau is None:
        out["orientation"] = None
        out["found"] = False
    else:
        out["orientation"] = _tau_dict(tau)
        out.update(_classification_dict(smap, classify(smap, tau)))
    _emit(ctx.args, out)
    return 0


def cmd_structure(ctx):
    smap = ctx.load_map()
    tau = _orientation(ctx)
    if tau is None:
        raise InputError("no orientation makes every face of type I")
    cls = classify(smap, tau)
    report = theorem1_report(smap, tau, cls)
    comps = components(smap, tau, cls)
    graph = gamma_II(smap, tau, cls)
    out = ctx.header("structure")
    out.update(
        {
            "orientation": _tau_dict(tau),
            "components": [c.to_dict(smap) for c in comps],
            "component_classes": class_counts(comps),
            "gamma_II": {
                "vertices": [smap.vertex_names[v] for v in graph.vertices],
                "arcs": graph.arc_names(),
            },
            "theorem1": report.to_dict(),
            "homogeneous_zigzags": homogeneous_zigzags(smap, tau, cls),
        }
    )
    if ctx.args.dot:
        with open(ctx.args.dot, "w") as fh:
            fh.write(graph.to_dot())
    _emit(ctx.args, out)
    return 0


def cmd_monodromy(ctx):
    smap = ctx.load_map()
    records = all_monodromies(smap)
    subs = monodromy_subgraphs(smap)
    out = ctx.header("monodromy")
    out.update(
        {
            "faces": [r.to_dict(smap) for r in records],
            "histogram": histogram(records),
            "forests": {t: s["forest"] for t, s in subs.items() if t in ("M1", "M2")},
        }
    )
    if ctx.args.gi_dot:
        os.makedirs(ctx.args.gi_dot, exist_ok=True)
        for t, sub in subs.items():
            with open(os.path.join(ctx.args.gi_dot, f"G{t[1:]}.dot"), "w") as fh:
                fh.write(subgraph_dot(f"G{t[1:]}", sub))
    _emit(ctx.args, out)
    return 0


def cmd_shred(ctx):
    smap = ctx.load_map()
    tau = _orientation(ctx, default="0")
    result = shred_to_type_I(smap, tau)
    report = ctx.header("shred")
    report.update(
        {
            "orientation": _tau_dict(tau),
            "new_orientation": _tau_dict(result.tau),
            "new_map": result.smap.summary(),
            "shredded_faces": sorted(f for f, v in result.face_map.items() if len(v) > 1),
            "new_vertices": result.new_vertices,
        }
    )
    _write_side(ctx.args.report, report)
    _emit(ctx.args, zio.map_to_obj(result.smap))
    return 0


def cmd_build_t(ctx):
    spec = DirectedEmbeddingSpec.from_obj(ctx.read())
    result = build_T(spec)
    ctx.smap = result.smap
    report = ctx.header("build-t")
    report.update({"orientation": _tau_dict(result.tau), "apexes": result.apexes})
    _write_side(ctx.args.report, report)
    _emit(ctx.args, zio.map_to_obj(result.smap))
    return 0


def cmd_extract(ctx):
    smap = ctx.load_map()
    tau = _orientation(ctx)
    if tau is None:
        raise InputError("no orientation makes every face of type I")
    report = extract_and_roundtrip(smap, tau)
    spec = DirectedEmbeddingSpec.from_digraph(gamma_II(smap, tau))
    out = ctx.header("extract")
    out.update(
        {
            "orientation": _tau_dict(tau),
            "isomorphic": report["isomorphic"],
            "orientation_match": report["orientation_match"],
            "digraph": spec.to_obj(),
        }
    )
    _emit(ctx.args, out)
    return 0 if report["isomorphic"] and report["orientation_match"] else 2


def cmd_gen(ctx):
    args = ctx.args
    fn, names = FAMILIES[args.family]
    smap = fn(*(getattr(args, n) for n in names))
    _emit(args, zio.map_to_obj(smap))
    return 0


def cmd_sweep(ctx):
    smap = ctx.load_map()
    records = []
    for tau in enumerate_z_orientations(smap, _cap(ctx.args)):
        cls = classify(smap, tau)
        rec = {"index": tau.index, "faces": cls.face_census(), "homogeneous": None, "theorem1": None}
        if cls.all_faces_type_I:
            report = theorem1_report(smap, tau, cls)
            rec["homogeneous"] = report.cond1
            rec["theorem1"] = list(report.as_tuple())
        records.append(rec)
    out = ctx.header("sweep")
    out["orientations"] = records
    _emit(ctx.args, out)
    return 0


# ---------------------------------------------------------------------------
# parser


def _add_common(p, orientation=False, strict=True):
    p.add_argument("input", nargs="?", help="input file; '-' or omitted reads standard input")
    p.add_argument("--out", help="write the output here instead of standard output")
    if strict:
        p.add_argument("--strict", action="store_true", help="reject maps that are not simplicial")
    if orientation:
        p.add_argument("--orientation", help="index, 'auto' or 'all-type-1'")
        p.add_argument("--all-type-1", dest="all_type_1", action="store_true",
                       help="search for an orientation with every face of type I")
        p.add_argument("--cap", type=int, help="largest 2^k to enumerate (also ZZ_ATLAS_CAP)")


def build_parser():
    parser = _Parser(prog="zzatlas", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"zzatlas {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("validate", help="check a map at a validation level")
    _add_common(p)
    p.add_argument("--level", choices=LEVELS, default=SURFACE)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("zigzags", help="list the zigzags")
    _add_common(p)
    p.set_defaults(func=cmd_zigzags)

    p = sub.add_parser("classify", help="edge, face and vertex types")
    _add_common(p, orientation=True)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("structure", help="type-II digraph, components and equivalence checks")
    _add_common(p, orientation=True)
    p.add_argument("--dot", help="write the type-II digraph as DOT")
    p.set_defaults(func=cmd_structure)

    p = sub.add_parser("monodromy", help="z-monodromy of every face")
    _add_common(p)
    p.add_argument("--gi-dot", dest="gi_dot", help="directory for G1..G7 as DOT files")
    p.set_defaults(func=cmd_monodromy)

    p = sub.add_parser("shred", help="split every type-II face; writes the new map")
    _add_common(p, orientation=True)
    p.add_argument("--report", help="write the JSON report here")
    p.set_defaults(func=cmd_shred)

    p = sub.add_parser("build-t", help="cone the faces of a .dig.json embedding")
    p.add_argument("input", nargs="?")
    p.add_argument("--out")
    p.add_argument("--report", help="write the JSON report here")
    p.set_defaults(func=cmd_build_t)

    p = sub.add_parser("extract", help="rebuild a homogeneous map from its type-II digraph")
    _add_common(p, orientation=True)
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("gen", help="generate an example map")
    fam = p.add_subparsers(dest="family", required=True, parser_class=_Parser)
    for name, (_, params) in FAMILIES.items():
        q = fam.add_parser(name)
        for param in params:
            flags = [f"--{param}"] + ([f"-{param}"] if len(param) == 1 else [])
            q.add_argument(*flags, dest=param, type=int, required=True)
        q.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("sweep", help="summarise every orientation")
    _add_common(p, orientation=False)
    p.add_argument("--cap", type=int, help="largest 2^k to enumerate (also ZZ_ATLAS_CAP)")
    p.set_defaults(func=cmd_sweep)
    return parser


def _error(exc, code):
    obj = {"schema": SCHEMA, "version": __version__, "error": type(exc).__name__, "message": str(exc)}
    sys.stdout.write(json.dumps(obj, indent=2, sort_keys=True) + "\n")
    return code


def main(argv=None):
    try:
        args = build_parser().parse_args(argv)
        return args.func(_Context(args))
    except InputError as exc:
        return _error(exc, 1)
    except InvariantViolation as exc:
        return _error(exc, 2)


def run():
    sys.exit(main())


if __name__ == "__main__":
    run()
