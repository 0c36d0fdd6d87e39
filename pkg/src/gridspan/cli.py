"""Command-line front end.

Every subcommand prints one JSON document on stdout; diagnostics go to
stderr.  Exit codes: 0 ok, 1 verification failed, 2 usage or input error,
3 construction failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import random
import sys
from pathlib import Path
from typing import Optional

from .errors import ConstructionFailure, VerificationFailure

log = logging.getLogger("gridspan")

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CONSTRUCTION = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _read_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except FileNotFoundError as exc:
        raise UsageError(f"no such file: {path}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from exc


def _approx(s: str) -> str:
    from .numeric import approx, parse_rational

    return approx(parse_rational(s))


def _add_approx(doc, keys=("span_squared", "cross", "lhs", "rhs")):
    """Decimal previews next to selected rational fields."""
    if isinstance(doc, dict):
        for k in list(doc):
            v = doc[k]
            if k in keys and isinstance(v, str):
                doc[k + "_approx"] = _approx(v)
            else:
                _add_approx(v, keys)
    elif isinstance(doc, list):
        for v in doc:
            _add_approx(v, keys)
    return doc


# ---------------------------------------------------------------------------
# input parsing

def load_graph(path: str):
    from .graphs import Graph

    text = Path(path).read_text() if Path(path).exists() else None
    if text is None:
        raise UsageError(f"no such file: {path}")
    stripped = text.lstrip()
    if stripped.startswith("{"):
        d = _read_json(path)
        return Graph.from_json(d["graph"] if "graph" in d else d)
    return parse_dimacs(text)


def parse_dimacs(text: str):
    from .graphs import Graph

    n, edges = None, set()
    for raw in text.splitlines():
        parts = raw.split()
        if not parts or parts[0] == "c":
            continue
        if parts[0] == "p":
            n = int(parts[2])
        elif parts[0] == "e":
            edges.add((int(parts[1]) - 1, int(parts[2]) - 1))
        else:
            raise UsageError(f"unexpected DIMACS line {raw!r}")
    if n is None:
        raise UsageError("DIMACS input lacks a 'p edge' line")
    return Graph(n, edges)


def parse_realization(d: dict):
    """A GridRealization JSON, a bundle's rational realization, or a whole bundle."""
    from .numeric import Q, exact_sqrt
    from .embeddings.disks import Disk
    from .embeddings.segments import Segment
    from .verification import GridRealization

    if "realization" in d and "graph" in d:
        kind = d["kind"]
        d = dict(d["realization"], kind=kind)
    kind = d.get("kind")
    if "radius" in d or "radii" in d or (kind == "seg" and d.get("segments") and isinstance(d["segments"][0][0][0], int)):
        return GridRealization.from_json(d)
    if "disks" in d:
        return [Disk.from_json(x) for x in d["disks"]]
    if "centers" in d and "radius_sq" in d:
        rs = Q(d["radius_sq"])
        r = exact_sqrt(rs)
        return [Disk(Q(c[0]), Q(c[1]), rs, r) for c in d["centers"]]
    if "segments" in d:
        return [Segment.from_json(x) for x in d["segments"]]
    raise UsageError("unrecognised realization format")


# ---------------------------------------------------------------------------
# subcommands

def cmd_gen_config(args) -> tuple[int, dict]:
    from .numeric import fmt_rational
    from .projective import build_gps_config, check_constructible

    g = build_gps_config(args.squarings)
    rep = check_constructible(g.config)
    doc = {"squarings": g.squarings, "points": len(g.config), "raw_count": g.raw_count,
           "cross": fmt_rational(g.cross),
           "constructible": bool(rep), "config": g.config.to_json(),
           "indices": {"p1": g.i1, "p2": g.i2, "p5": g.i5, "last": g.i_last}}
    return (EXIT_OK if rep else EXIT_FAIL), doc


def cmd_gen_pair(args) -> tuple[int, dict]:
    from .arrangements import span_squared
    from .hardpair import build_hard_pair, verify_hard_pair
    from .numeric import fmt_rational

    hp = build_hard_pair(args.k)
    rep = verify_hard_pair(hp)
    sp = span_squared(hp.lines)
    target = 2 ** (2 ** (args.k + 1))
    doc = {"k": args.k, "lines": len(hp.lines), "points": len(hp.points), "verified": rep.ok,
           "violations": rep.violations, "span_squared": fmt_rational(sp),
           "span_squared_lower_bound": str(target), "bound_holds": sp >= target, "hard_pair": hp.to_json()}
    return (EXIT_OK if rep.ok and sp >= target else EXIT_FAIL), doc


def cmd_gen_instance(args) -> tuple[int, dict]:
    from .hardpair import build_hard_pair

    hp = build_hard_pair(args.k)
    extra = {}
    if args.kind == "udg":
        from .embeddings.instances import build_udg_instance
        b = build_udg_instance(hp)
    elif args.kind == "dg":
        from .embeddings.instances import build_dg_instance
        b = build_dg_instance(hp)
    else:
        from .embeddings.seg import build_seg_instance
        b, cert = build_seg_instance(hp)
        extra["certificate"] = cert.to_json()
    log.info("%s instance: %d vertices, %d edges", args.kind, b.graph.n, len(b.graph.edges))
    doc = b.to_json()
    doc.update(extra)
    if args.dimacs:
        Path(args.dimacs).write_text(b.graph.to_dimacs())
    if args.out:
        Path(args.out).write_text(json.dumps(doc))
        doc = {"kind": b.kind, "vertices": b.graph.n, "edges": len(b.graph.edges), "written": args.out, **extra}
    return EXIT_OK, doc


def cmd_verify(args) -> tuple[int, dict]:
    from .verification import verify_realization

    g = load_graph(args.graph)
    real = parse_realization(_read_json(args.realization))
    try:
        chk = verify_realization(g, real)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    return (EXIT_OK if chk.ok else EXIT_FAIL), chk.to_json()


def cmd_span(args) -> tuple[int, dict]:
    from .arrangements import Arrangement, span_squared
    from .numeric import fmt_rational

    d = _read_json(args.arrangement)
    if "hard_pair" in d:
        d = d["hard_pair"]
    try:
        L = Arrangement.from_json(d)
        sp = span_squared(L)
    except (KeyError, ValueError) as exc:
        raise UsageError(f"cannot compute span: {exc}") from exc
    return EXIT_OK, {"lines": len(L), "span_squared": fmt_rational(sp)}


def cmd_search(args) -> tuple[int, dict]:
    from .verification import search_min_grid

    g = load_graph(args.graph)
    if args.max_m < 1:
        raise UsageError("--max-m must be positive")
    res = search_min_grid(g, args.kind, args.max_m)
    return EXIT_OK, res.to_json()


def cmd_round(args) -> tuple[int, dict]:
    from .verification import SystemViolation, UDGSolution, round_udg_solution, scale_to_slack

    try:
        sol = UDGSolution.from_json(_read_json(args.solution))
    except (KeyError, ValueError) as exc:
        raise UsageError(f"bad solution file: {exc}") from exc
    try:
        if args.from_strict:
            sol = scale_to_slack(sol)
        out = round_udg_solution(sol)
    except SystemViolation as exc:
        return EXIT_FAIL, {"ok": False, "error": str(exc)}
    return EXIT_OK, {"ok": True, "solution": out.to_json(), "slack_input": sol.to_json() if args.from_strict else None}


def cmd_audit(args) -> tuple[int, dict]:
    from .embeddings.instances import InstanceBundle
    from .verification import GridRealization, lower_bound_audit

    bundle = InstanceBundle.from_json(_read_json(args.bundle))
    real = parse_realization(_read_json(args.realization))
    if not isinstance(real, GridRealization):
        real, _ = GridRealization.from_objects(bundle.kind, real)
    try:
        rep = lower_bound_audit(bundle, real)
    except VerificationFailure as exc:
        return EXIT_FAIL, {"pass": False, "error": str(exc)}
    return (EXIT_OK if rep.ok else EXIT_FAIL), rep.to_json()


def cmd_render(args) -> tuple[int, dict]:
    from . import svg

    d = _read_json(args.input)
    if "hard_pair" in d:
        d = d["hard_pair"]
    if d.get("kind") in ("udg", "dg", "seg") and "graph" in d:
        from .embeddings.instances import InstanceBundle
        text, what = svg.render_instance(InstanceBundle.from_json(d)), "instance"
    elif "config" in d or ("points" in d and "steps" in d):
        from .projective import PointConfiguration
        text, what = svg.render_configuration(PointConfiguration.from_json(d.get("config", d))), "configuration"
    elif "lines" in d:
        from .arrangements import Arrangement
        from .numeric import Q
        L = Arrangement.from_json(d)
        pts = [(Q(p[0]), Q(p[1])) for p in d.get("points", [])]
        text, what = svg.render_arrangement(L, pts, chambers=len(L) <= 12), "arrangement"
    else:
        raise UsageError("render input is not an arrangement, configuration or instance")
    Path(args.out).write_text(text)
    return EXIT_OK, {"rendered": what, "out": args.out, "bytes": len(text)}


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gridspan", description="Exact constructions for doubly exponential grid sizes.")
    p.add_argument("--seed", type=int, default=0, help="seed for any randomised step (default 0)")
    p.add_argument("--approx", action="store_true", help="add decimal previews of large rationals")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("gen-config", help="point configuration with cross ratio 2^(2^S)")
    s.add_argument("--squarings", type=int, required=True)
    s.set_defaults(func=cmd_gen_config)

    s = sub.add_parser("gen-pair", help="hard arrangement and sign-vector set")
    s.add_argument("--k", type=int, required=True)
    s.set_defaults(func=cmd_gen_pair)

    s = sub.add_parser("gen-instance", help="disk, unit-disk or segment graph instance")
    s.add_argument("--kind", choices=("udg", "dg", "seg"), required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--out", help="write the instance here and print a summary")
    s.add_argument("--dimacs", help="also write the graph as a DIMACS edge list")
    s.set_defaults(func=cmd_gen_instance)

    s = sub.add_parser("verify", help="check a realization against a graph")
    s.add_argument("--graph", required=True)
    s.add_argument("--realization", required=True)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("span", help="squared span of an arrangement")
    s.add_argument("--arrangement", required=True)
    s.set_defaults(func=cmd_span)

    s = sub.add_parser("search", help="least grid size by exhaustive search")
    s.add_argument("--graph", required=True)
    s.add_argument("--kind", choices=("udg", "dg"), required=True)
    s.add_argument("--max-m", type=int, required=True)
    s.set_defaults(func=cmd_search)

    s = sub.add_parser("round", help="round a slack unit-disk solution to integers")
    s.add_argument("--solution", required=True)
    s.add_argument("--from-strict", action="store_true", help="scale a strict solution into the slack system first")
    s.set_defaults(func=cmd_round)

    s = sub.add_parser("audit", help="span lower-bound audit of an integer realization")
    s.add_argument("--bundle", required=True)
    s.add_argument("--realization", required=True)
    s.set_defaults(func=cmd_audit)

    s = sub.add_parser("render", help="SVG figure of an arrangement, configuration or instance")
    s.add_argument("--input", required=True)
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_render)
    return p


def run_command(argv: Optional[list[str]] = None) -> tuple[int, Optional[dict]]:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return (EXIT_OK if exc.code == 0 else EXIT_USAGE), None
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr,
                        format="%(levelname)s %(message)s")
    random.seed(args.seed)
    try:
        code, doc = args.func(args)
    except UsageError as exc:
        log.error("%s", exc)
        return EXIT_USAGE, {"error": str(exc)}
    except ConstructionFailure as exc:
        log.error("construction failed: %s", exc)
        return EXIT_CONSTRUCTION, {"error": str(exc)}
    except ValueError as exc:
        log.error("%s", exc)
        return EXIT_USAGE, {"error": str(exc)}
    if args.approx:
        _add_approx(doc)
    return code, doc


def main(argv: Optional[list[str]] = None) -> int:
    code, doc = run_command(argv)
    if doc is not None:
        json.dump(doc, sys.stdout)
        sys.stdout.write("\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
