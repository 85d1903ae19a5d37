"""Command-line front end.

Exit codes: 0 success / verified, 1 verification failed, 2 usage or schema
error, 3 instance too small (insufficient points), 4 oracle budget exhausted.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from fractions import Fraction

from . import generate as gen
from . import io
from .bundle import BundleRunConfig, DichotomyResult, find_bundle_or_noncrossing
from .crossing import find_avoiding_pair, find_crossing_or_noncrossing
from .errors import DegenerateInput, InsufficientPoints, OracleTimeout, SchemaError
from .families import (
    ConvexBundle,
    CrossingFamily,
    NonCrossingFamily,
    SpokeSet,
    failed_crossing_pairs,
    noncrossing_violations,
    unbounded_cell_signs,
    verify_convex_bundle,
    verify_crossing_family,
    verify_noncrossing_family,
    verify_spoke_set,
)
from .geometry import PointSet, in_general_position
from .oracles import OracleBudget, max_crossing_family_exact
from .spokes import build_prop7, check_prop7_crossing_bound
from .svg import render

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INSUFFICIENT, EXIT_TIMEOUT = 0, 1, 2, 3, 4
SEEDED_KINDS = ("random-disk", "convex", "grid-perturbed", "four-cluster")


class _Abort(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _emit(args, doc, manifest: dict) -> None:
    text = io.dumps(doc, args.json_indent)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
        manifest["outputs"] = {args.out: hashlib.sha256(text.encode()).hexdigest()}
    else:
        sys.stdout.write(text)


def _read_points(path: str | None) -> tuple[PointSet, dict | list]:
    if not path:
        raise _Abort(EXIT_USAGE, "--in is required")
    doc = io.load(path)
    return io.points_from_json(doc), doc


def _require_seed(args) -> int:
    if args.seed is None:
        raise _Abort(EXIT_USAGE, f"{args.command} needs --seed")
    return args.seed


def _result_doc(res: DichotomyResult, P: PointSet, verified: bool) -> dict:
    cert = res.bundle or res.noncrossing or res.crossing
    doc = {
        "kind": res.kind,
        "certificate": io.certificate_to_json(cert, P),
        "trace": list(res.trace),
        "verified": verified,
    }
    if res.support is not None:
        doc["support"] = io.certificate_to_json(res.support, P)
    return doc


def cmd_generate(args, manifest):
    kind = args.kind
    seed = _require_seed(args) if kind in SEEDED_KINDS else args.seed
    extra = {}
    if kind == "random-disk":
        P = gen.random_disk(args.n, seed, args.radius)
    elif kind == "convex":
        P = gen.convex(args.n, seed, args.radius)
    elif kind == "grid-perturbed":
        P = gen.grid_perturbed(args.n, seed)
    elif kind == "four-cluster":
        P, parts = gen.four_cluster(args.m, seed)
        extra["parts"] = parts
    else:
        P = gen.prop7_points(args.k, args.snap)
    manifest["config"] = {"kind": kind, "n": args.n, "m": args.m, "k": args.k, "snap": args.snap}
    _emit(args, io.points_to_json(P, **extra), manifest)
    return EXIT_OK


def _bundle_cfg(args, k: int) -> BundleRunConfig:
    return BundleRunConfig(
        k=k,
        m=args.m,
        c_eff=Fraction(args.c_eff),
        rng_seed=_require_seed(args),
        check_invariants=args.check_invariants,
    )


def _verify_result(res: DichotomyResult, P: PointSet) -> bool:
    if res.bundle is not None:
        return verify_convex_bundle(res.bundle)
    if res.noncrossing is not None:
        return verify_noncrossing_family(res.noncrossing)
    return verify_crossing_family(res.crossing, P)


def cmd_find_bundle(args, manifest):
    P, _ = _read_points(args.input)
    cfg = _bundle_cfg(args, args.k)
    manifest["config"] = {"k": args.k, "m": args.m, "c_eff": str(cfg.c_eff)}
    res = find_bundle_or_noncrossing(P, cfg)
    ok = _verify_result(res, P)
    manifest["verified"] = ok
    _emit(args, _result_doc(res, P, ok), manifest)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_find_crossing(args, manifest):
    P, _ = _read_points(args.input)
    cfg = _bundle_cfg(args, 1)
    manifest["config"] = {"m": args.m, "c_eff": str(cfg.c_eff), "exact_cutoff": args.exact_cutoff, "mode": args.mode}
    res = find_crossing_or_noncrossing(P, args.m, cfg, mode=args.mode, exact_cutoff=args.exact_cutoff)
    ok = _verify_result(res, P)
    manifest["verified"] = ok
    _emit(args, _result_doc(res, P, ok), manifest)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_avoiding(args, manifest):
    P, doc = _read_points(args.input)
    parts = doc.get("parts") if isinstance(doc, dict) else None
    if parts:
        if len(parts) != 2:
            raise SchemaError("avoiding needs exactly two parts")
        P1, P2 = (io.lookup_ids(P, ids) for ids in parts)
    else:
        ordered = P.sorted_by_x()
        half = len(P) // 2
        P1, P2 = ordered.subset(range(half)), ordered.subset(range(half, len(P)))
    eps = Fraction(args.epsilon)
    manifest["config"] = {"m": args.m, "epsilon": str(eps), "budget": args.budget}
    rep = find_avoiding_pair(P1, P2, args.m, eps, args.budget)
    out = {"found": rep is not None, "m": args.m, "epsilon": str(eps)}
    if rep is not None:
        out.update(
            A=list(rep.A.ids), B=list(rep.B.ids), iota_ab=rep.iota_ab, iota_ba=rep.iota_ba, avoiding=rep.avoiding
        )
    _emit(args, out, manifest)
    return EXIT_OK


def cmd_prop7(args, manifest):
    inst = build_prop7(args.k, args.snap)
    checks = {
        "points": len(inst.P),
        "lines": len(inst.L),
        "expected_points": 3 * args.k - 1,
        "expected_lines": (3 * args.k) // 2,
        "general_position": in_general_position(inst.P),
        "spoke_set_verified": verify_spoke_set(inst.L, inst.P),
        "inner_cell_points": len(inst.inner_ids),
    }
    if not args.no_oracle:
        checks["max_crossing_family"] = check_prop7_crossing_bound(inst)
    manifest["config"] = {"k": args.k, "snap": args.snap, "final_snap": inst.snap}
    doc = io.points_to_json(
        inst.P,
        k=args.k,
        snap=inst.snap,
        epsilon=io.encode_rational(inst.epsilon),
        inner_ids=list(inst.inner_ids),
        certificate=io.certificate_to_json(inst.L, inst.P),
        checks=checks,
    )
    _emit(args, doc, manifest)
    return EXIT_OK


def cmd_oracle(args, manifest):
    P, _ = _read_points(args.input)
    budget = OracleBudget(max_segments=args.max_segments, max_nodes=args.max_nodes, timeout=args.timeout)
    manifest["config"] = {"query": args.query, "max_nodes": args.max_nodes, "timeout": args.timeout}
    code = EXIT_OK
    try:
        res = max_crossing_family_exact(P, budget)
    except OracleTimeout as e:
        res, code = e.best, EXIT_TIMEOUT
    doc = {
        "certificate": io.certificate_to_json(res.family, P),
        "size": len(res.family),
        "optimal": res.optimal,
        "nodes": res.nodes,
    }
    _emit(args, doc, manifest)
    return code


def _report(cert, P: PointSet) -> dict:
    if isinstance(cert, CrossingFamily):
        ok = verify_crossing_family(cert, P)
        return {"type": "crossing-family", "valid": ok, "failed_pairs": [list(p) for p in failed_crossing_pairs(cert)]}
    if isinstance(cert, NonCrossingFamily):
        ok = verify_noncrossing_family(cert)
        bad = [] if ok else noncrossing_violations(cert, limit=20)
        ids = {p: i for i, p in zip(P.ids, P.points)}
        return {
            "type": "noncrossing-family",
            "valid": ok,
            "failed_quadruples": [[ids[p] for p in quad] for quad in bad],
        }
    if isinstance(cert, ConvexBundle):
        return {"type": "convex-bundle", "valid": verify_convex_bundle(cert)}
    if isinstance(cert, SpokeSet):
        occupied = {tuple(ln.side(p) for ln in cert.lines) for p in P.points}
        empty = [list(c) for c in unbounded_cell_signs(cert) if c not in occupied]
        return {"type": "spoke-set", "valid": verify_spoke_set(cert, P), "empty_cells": empty}
    raise SchemaError("unsupported certificate")


def cmd_verify(args, manifest):
    P, _ = _read_points(args.input)
    doc = io.load(args.certificate)
    if isinstance(doc, dict) and "type" not in doc and isinstance(doc.get("certificate"), dict):
        doc = doc["certificate"]
    cert = io.certificate_from_json(doc, P)
    rep = _report(cert, P)
    manifest["verified"] = rep["valid"]
    _emit(args, rep, manifest)
    return EXIT_OK if rep["valid"] else EXIT_FAIL


def cmd_plot(args, manifest):
    P, _ = _read_points(args.input)
    certs = []
    for path in args.cert or []:
        doc = io.load(path)
        if isinstance(doc, dict) and "type" not in doc and isinstance(doc.get("certificate"), dict):
            doc = doc["certificate"]
        certs.append(io.certificate_from_json(doc, P))
    text = render(P, certs, args.title)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
        manifest["outputs"] = {args.out: hashlib.sha256(text.encode()).hexdigest()}
    else:
        sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--in", dest="input", help="input point-set JSON")
    common.add_argument("--out", help="output path (default: stdout)")
    common.add_argument("--seed", type=int, help="RNG seed (required by stochastic commands)")
    common.add_argument("--json-indent", type=int, default=2)

    parser = argparse.ArgumentParser(prog="crossfam", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", parents=[common], help="write a test point set")
    p.add_argument("kind", choices=SEEDED_KINDS + ("prop7",))
    p.add_argument("--n", type=int, default=50)
    p.add_argument("--m", type=int, default=3)
    p.add_argument("--k", type=int, default=5)
    p.add_argument("--snap", type=int, default=1000)
    p.add_argument("--radius", type=int, default=10**6)
    p.set_defaults(func=cmd_generate)

    for name, func in (("find-bundle", cmd_find_bundle), ("find-crossing", cmd_find_crossing)):
        p = sub.add_parser(name, parents=[common])
        if name == "find-bundle":
            p.add_argument("--k", type=int, required=True)
        else:
            p.add_argument("--exact-cutoff", type=int, default=400)
            p.add_argument("--mode", choices=("auto", "exact", "greedy"), default="auto")
        p.add_argument("--m", type=int, required=True)
        p.add_argument("--c-eff", default="32")
        p.add_argument("--check-invariants", action="store_true")
        p.set_defaults(func=func)

    p = sub.add_parser("avoiding", parents=[common], help="search an epsilon-avoiding cluster pair")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--epsilon", required=True)
    p.add_argument("--budget", type=int, default=None, help="number of arrangement lines")
    p.set_defaults(func=cmd_avoiding)

    p = sub.add_parser("prop7", parents=[common], help="spoke-set versus crossing-family instance")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--snap", type=int, default=1000)
    p.add_argument("--no-oracle", action="store_true")
    p.set_defaults(func=cmd_prop7)

    p = sub.add_parser("oracle", parents=[common], help="exact search")
    p.add_argument("query", choices=("max-crossing",))
    p.add_argument("--timeout", type=float, default=600.0)
    p.add_argument("--max-nodes", type=int, default=50_000_000)
    p.add_argument("--max-segments", type=int, default=400)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("verify", parents=[common], help="check a certificate against its point set")
    p.add_argument("certificate")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("plot", parents=[common], help="render an SVG figure")
    p.add_argument("--cert", action="append", help="certificate JSON to overlay (repeatable)")
    p.add_argument("--title")
    p.set_defaults(func=cmd_plot)
    return parser


def _append_manifest(args, manifest: dict) -> None:
    if not args.out:
        return
    with open(args.out + ".manifest.jsonl", "a") as fh:
        fh.write(json.dumps(manifest, sort_keys=True) + "\n")


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    manifest: dict = {"command": args.command, "argv": list(sys.argv[1:] if argv is None else argv), "seed": args.seed}
    if args.input and os.path.exists(args.input):
        with open(args.input, "rb") as fh:
            manifest["input_sha256"] = hashlib.sha256(fh.read()).hexdigest()
    start = time.perf_counter()
    try:
        code = args.func(args, manifest)
    except _Abort as e:
        print(f"error: {e}", file=sys.stderr)
        code = e.code
    except (SchemaError, DegenerateInput, ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        code = EXIT_USAGE
    except InsufficientPoints as e:
        print(f"insufficient points: {e}", file=sys.stderr)
        code = EXIT_INSUFFICIENT
    except OracleTimeout as e:
        print(f"oracle timeout: {e}", file=sys.stderr)
        code = EXIT_TIMEOUT
    manifest["exit_code"] = code
    manifest["wall_clock_seconds"] = round(time.perf_counter() - start, 6)
    _append_manifest(args, manifest)
    return code


if __name__ == "__main__":
    sys.exit(main())
