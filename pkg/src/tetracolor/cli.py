"""Command-line interface.

Exit codes: 0 when the requested check found no violations, 1 when
violations were found, 2 on input errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import coloring as col
from . import curves as cur
from . import dscc as ds
from . import harness as har
from . import kempe as kp
from . import planar_map as pm
from . import svg as svgmod


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise pm.MalformedInput(f"cannot read {path}: {exc}") from None


def cmd_validate(args) -> int:
    m = pm.parse_map(_read(args.map), allow_parallel=args.allow_parallel)
    report = pm.validate(m)
    print(f"vertices: {m.vertex_count}  edges: {m.edge_count}  faces: {m.face_count}")
    for name in ("connected", "simple", "planar", "cubic", "bridgeless"):
        print(f"{name}: {getattr(report, name)}")
    print(f"min_degree: {report.min_degree}")
    return 0 if report.all_ok else 1


def cmd_color(args) -> int:
    m = pm.parse_map(_read(args.map))
    if args.edges:
        ec = col.find_tait_coloring(m)
        if ec is None:
            print("no proper 3-edge-coloring exists", file=sys.stderr)
            return 1
        sys.stdout.write(col.serialize_coloring(m, ec))
        return 0
    fc = col.find_face_4coloring(m)
    if fc is None:
        print("no proper 4-face-coloring exists", file=sys.stderr)
        return 1
    sys.stdout.write(col.serialize_coloring(m, fc))
    return 0


def cmd_dscc(args) -> int:
    m = pm.parse_map(_read(args.map))
    c = col.parse_coloring(m, _read(args.coloring))
    if isinstance(c, col.FaceColoring):
        c = col.face4_to_edge3(m, c)
    dec = ds.decompose(m, c)
    sys.stdout.write(ds.serialize_decomposition(m, dec))
    if dec.shared_vertices:
        shared = " ".join(str(v + 1) for v in sorted(dec.shared_vertices))
        print(f"# same-color trails share vertices: {shared}")
    return 0


def cmd_curves_classify(args) -> int:
    blue, yellow = cur.parse_curve_file(_read(args.curvefile))
    samples = cur.parse_sample_file(_read(args.samples))
    colors = cur.classify_regions(blue, yellow, samples)
    for label, c in colors.items():
        print(f"{label} {c}")
    if args.svg:
        Path(args.svg).write_text(
            svgmod.render_curves_svg(blue, yellow, samples, colors))
    return 0


def cmd_reduce(args) -> int:
    m = pm.parse_map(_read(args.map))
    pentagon = args.pentagon
    if pentagon is None:
        pentagons = [f.id for f in m.faces if len(f) == 5]
        if not pentagons:
            print("map has no pentagonal face", file=sys.stderr)
            return 2
        pentagon = pentagons[0]
    if args.edge_policy == "all":
        edges = sorted({m.edge_id(d) for d in m.faces[pentagon].darts})
    else:
        edges = [None]
    traces = [kp.run_procedure(m, pentagon, deleted_edge=e,
                               step_budget=args.step_budget) for e in edges]
    ok = True
    jsonl = []
    for tr in traces:
        jsonl.append(tr.to_jsonl())
        outcome = "expand-success" if tr.succeeded else f"anomaly: {tr.anomaly}"
        print(f"pentagon {tr.pentagon} minus edge {tr.deleted_edge}: {outcome}; "
              f"topologies {list(tr.topology_sequence)}")
        ok = ok and tr.succeeded
    if args.trace:
        Path(args.trace).write_text("".join(jsonl))
    if args.svg:
        tr = traces[0]
        Path(args.svg).write_text(svgmod.render_map_svg(
            tr.contracted_map, tr.final_coloring, hub=tr.hub))
    return 0 if ok else 1


def cmd_gen(args) -> int:
    if args.random is not None:
        cfg = har.GenConfig(args.n, mode="random", count=args.random, seed=args.seed)
    else:
        cfg = har.GenConfig(args.n)
    for i, m in enumerate(har.generate(cfg)):
        print(f"# map {i}")
        sys.stdout.write(pm.serialize_map(m))
        print()
    return 0


def cmd_claim(args) -> int:
    if args.maps:
        maps = [pm.parse_map(_read(path)) for path in args.maps]
    else:
        maps = har.corpus(args.n_max)
    report = har.check_claim(args.claim, maps)
    sys.stdout.write(har.emit_report(report, args.format))
    return 0 if report.ok else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tetracolor",
                                description="planar-map coloring laboratory")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("validate", help="structural report for a map file")
    sp.add_argument("map")
    sp.add_argument("--allow-parallel", action="store_true")
    sp.set_defaults(fn=cmd_validate)

    sp = sub.add_parser("color", help="find a proper coloring")
    sp.add_argument("map")
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--faces", action="store_true", default=True)
    g.add_argument("--edges", action="store_true")
    sp.set_defaults(fn=cmd_color)

    sp = sub.add_parser("dscc", help="split a colored map into closed trails")
    sp.add_argument("map")
    sp.add_argument("coloring")
    sp.set_defaults(fn=cmd_dscc)

    sp = sub.add_parser("curves", help="geometric region classification")
    sub2 = sp.add_subparsers(dest="curves_command", required=True)
    sp2 = sub2.add_parser("classify", help="classify sample points")
    sp2.add_argument("curvefile")
    sp2.add_argument("samples")
    sp2.add_argument("--svg")
    sp2.set_defaults(fn=cmd_curves_classify)

    sp = sub.add_parser("reduce", help="run the pentagon reduction")
    sp.add_argument("map")
    sp.add_argument("--pentagon", type=int, default=None)
    sp.add_argument("--edge-policy", choices=("first", "all"), default="first")
    sp.add_argument("--step-budget", type=int, default=64)
    sp.add_argument("--trace", help="write JSON-lines trace here")
    sp.add_argument("--svg", help="write contracted-map SVG here")
    sp.set_defaults(fn=cmd_reduce)

    sp = sub.add_parser("gen", help="generate corpus maps")
    sp.add_argument("--n", type=int, required=True)
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--exhaustive", action="store_true", default=True)
    g.add_argument("--random", type=int, default=None, metavar="COUNT")
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(fn=cmd_gen)

    sp = sub.add_parser("claim", help="run one claim checker over a corpus")
    sp.add_argument("claim", choices=har.CLAIM_IDS)
    sp.add_argument("--n-max", type=int, default=12)
    sp.add_argument("--format", choices=("jsonl", "csv", "text"), default="text")
    sp.add_argument("--maps", nargs="*", default=None, metavar="MAPFILE",
                    help="check these externally generated maps instead of "
                         "the exhaustive corpus")
    sp.set_defaults(fn=cmd_claim)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except pm.MapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
