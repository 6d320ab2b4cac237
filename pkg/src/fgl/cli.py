"""Command-line interface.

Subcommands:
  construct   build a fusion graph and write it (graph6 or JSON) + sidecar
  verify      run the full verification pipeline, print the certificate
  analyze     run selected checks on an arbitrary imported graph
  report      tabulate predicted parameters per family and q
  export      convert a graph file between formats

Exit codes: 0 pass, 1 verification failure, 2 usage/parse error,
3 internal construction error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import formulas, fusion, graphs, groups, pipeline
from .formulas import FAMILIES, InvalidQ
from .graphio import (GraphParseError, atomic_write_text, read_graph,
                      to_json_obj, write_graph)

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_CONSTRUCTION = 3


def _apply_thread_cap() -> None:
    cap = os.environ.get("FGL_THREADS")
    if not cap:
        return
    for var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS"):
        os.environ.setdefault(var, cap)


def _family_arg(p: argparse.ArgumentParser) -> None:
    p.add_argument("--family", required=True, choices=FAMILIES)
    p.add_argument("--n", required=True, type=int, metavar="N",
                   help="field exponent, q = 2^N")


def _out_text(args, text: str) -> None:
    if getattr(args, "out", None):
        atomic_write_text(args.out, text)
    else:
        sys.stdout.write(text)


def cmd_construct(args) -> int:
    try:
        spec = groups.make_group(args.family, args.n)
    except InvalidQ as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    try:
        cls = pipeline.load_or_build_class(spec, args.cache)
        if args.pi == "chi":
            pi = fusion.PiSpec.chi_only()
        else:
            pi = fusion.PiSpec.odd_complement()
        g = fusion.build_fusion_graph(cls, pi)
    except (groups.GeneratorValidationFailed, groups.ClassSizeMismatch,
            groups.SeedNotInvolution, groups.OrderCapExceeded) as e:
        print(f"construction error: {e}", file=sys.stderr)
        return EXIT_CONSTRUCTION
    fmt = write_graph(args.out, g, args.format)
    meta = {
        "schema": pipeline.SCHEMA,
        "family": spec.family,
        "n": spec.n,
        "q": spec.q,
        "pi": args.pi,
        "format": fmt,
        "vertices": cls.size,
        "edges": g.edge_count(),
        "sylow_labels": [int(x) for x in cls.sylow_labels()],
        "involutions": [cls.encoding(i).hex() for i in range(cls.size)],
    }
    atomic_write_text(args.out + ".meta.json", json.dumps(meta) + "\n")
    print(f"wrote {args.out} ({cls.size} vertices, {meta['edges']} edges, {fmt})")
    return EXIT_PASS


def cmd_verify(args) -> int:
    try:
        report = pipeline.run_verify(args.family, args.n,
                                     orders_mode=args.verify_orders,
                                     sample=args.sample, seed=args.seed,
                                     cache_dir=args.cache)
    except InvalidQ as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (groups.GeneratorValidationFailed, groups.ClassSizeMismatch,
            groups.SeedNotInvolution, groups.OrderCapExceeded) as e:
        print(f"construction error: {e}", file=sys.stderr)
        return EXIT_CONSTRUCTION
    _out_text(args, report.to_json() + "\n")
    if not report.passed:
        print(f"VERIFY FAILED: {report.failures[0]}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_PASS


def cmd_analyze(args) -> int:
    try:
        g = read_graph(args.input, args.format)
    except (OSError, GraphParseError, ValueError) as e:
        print(f"error reading graph: {e}", file=sys.stderr)
        return EXIT_USAGE
    checks = [c.strip() for c in args.check.split(",") if c.strip()]
    known = {"drg", "antipodal", "deza", "ddg", "spectrum", "multipartite"}
    bad = set(checks) - known
    if bad:
        print(f"unknown checks: {sorted(bad)}", file=sys.stderr)
        return EXIT_USAGE
    out: dict = {"schema": pipeline.SCHEMA, "v": g.v, "edges": g.edge_count()}
    for check in checks:
        if check == "drg":
            try:
                arr = graphs.intersection_array(g)
                out["drg"] = {"distance_regular": True, "intersection_array": arr.to_dict()}
            except graphs.Disconnected as e:
                out["drg"] = {"distance_regular": False, "error": f"disconnected: {e}"}
            except graphs.NotDistanceRegular as e:
                out["drg"] = {"distance_regular": False, "witness": e.witness}
        elif check == "antipodal":
            try:
                labels = graphs.antipodal_classes(g)
                import numpy as np
                sizes = np.bincount(labels)
                out["antipodal"] = {"antipodal": True,
                                    "num_classes": int(labels.max()) + 1,
                                    "class_sizes": sorted(set(map(int, sizes)))}
            except graphs.Disconnected as e:
                out["antipodal"] = {"antipodal": False, "error": f"disconnected: {e}"}
            except graphs.NotAntipodal as e:
                out["antipodal"] = {"antipodal": False, "witness": e.witness}
        elif check == "deza":
            try:
                out["deza"] = graphs.deza_check(g).to_dict()
            except (graphs.NotRegular, graphs.MoreThanTwoValues) as e:
                out["deza"] = {"deza": False, "error": str(e)}
        elif check == "ddg":
            labels = _partition_for(args)
            if labels is None:
                print("ddg check needs --partition or a sidecar meta file", file=sys.stderr)
                return EXIT_USAGE
            try:
                out["ddg"] = graphs.ddg_check(g, labels).to_dict()
            except (graphs.NotRegular, graphs.MoreThanTwoValues,
                    graphs.PartitionNotUniform) as e:
                out["ddg"] = {"ddg": False, "error": str(e)}
        elif check == "spectrum":
            spec_ = graphs.common_neighbor_spectrum(g)
            out["spectrum"] = {str(c): n for c, n in sorted(spec_.items())}
        elif check == "multipartite":
            mp = graphs.recognize_complete_multipartite(g)
            cu = graphs.recognize_clique_union(g)
            out["multipartite"] = {
                "complete_multipartite": list(mp) if mp else None,
                "clique_union": list(cu) if cu else None,
            }
    _out_text(args, json.dumps(out, indent=2) + "\n")
    return EXIT_PASS


def _partition_for(args):
    if args.partition:
        with open(args.partition) as f:
            return json.load(f)
    meta_path = args.input + ".meta.json"
    if os.path.exists(meta_path):
        with open(meta_path) as f:
            meta = json.load(f)
        if "sylow_labels" in meta:
            return meta["sylow_labels"]
    return None


def cmd_report(args) -> int:
    bounds = {"psl2": args.psl2_max_n, "sz": args.sz_max_n, "psu3": args.psu3_max_n}
    lines = []
    header = (f"{'family':6} {'q':>6} {'v':>8} {'k':>8} {'b':>10} {'a':>10} "
              f"{'array':28} {'verified':8}")
    lines.append(header)
    lines.append("-" * len(header))
    for family in FAMILIES:
        start = 3 if family == "sz" else 2
        step = 2 if family == "sz" else 1
        for n in range(start, bounds[family] + 1, step):
            q = 1 << n
            v, kk, b, a = formulas.predicted_deza_params(family, q)
            arr = formulas.predicted_chi_array(family, q)
            verified = ""
            if args.cache:
                path = os.path.join(
                    args.cache, f"{family}-n{n}-v{pipeline.CODE_VERSION}-report.json")
                if os.path.exists(path):
                    with open(path) as f:
                        verified = "pass" if json.load(f).get("status") == "pass" else "FAIL"
            lines.append(f"{family:6} {q:>6} {v:>8} {kk:>8} {b:>10} {a:>10} "
                         f"{str(arr):28} {verified:8}")
    _out_text(args, "\n".join(lines) + "\n")
    return EXIT_PASS


def cmd_export(args) -> int:
    try:
        g = read_graph(args.input, args.informat)
    except (OSError, GraphParseError, ValueError) as e:
        print(f"error reading graph: {e}", file=sys.stderr)
        return EXIT_USAGE
    fmt = write_graph(args.out, g, args.format)
    print(f"wrote {args.out} ({fmt})")
    return EXIT_PASS


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="fgl", description=__doc__,
                                 formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build a fusion graph and write it to disk")
    _family_arg(p)
    p.add_argument("--pi", choices=["chi", "odd-complement"], default="chi")
    p.add_argument("--out", required=True)
    p.add_argument("--format", choices=["json", "graph6"])
    p.add_argument("--cache")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="run the full verification pipeline")
    _family_arg(p)
    p.add_argument("--verify-orders", choices=["full", "sampled", "off"])
    p.add_argument("--sample", type=int, default=fusion.DEFAULT_SAMPLE)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.add_argument("--cache")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("analyze", help="run checks on an imported graph")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--check", required=True,
                   help="comma list: drg,antipodal,deza,ddg,spectrum,multipartite")
    p.add_argument("--format", choices=["json", "graph6"])
    p.add_argument("--partition", help="JSON file with vertex class labels (for ddg)")
    p.add_argument("--out")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("report", help="tabulate predicted parameters")
    p.add_argument("--psl2-max-n", type=int, default=4)
    p.add_argument("--sz-max-n", type=int, default=5)
    p.add_argument("--psu3-max-n", type=int, default=3)
    p.add_argument("--cache")
    p.add_argument("--out")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("export", help="convert a graph file between formats")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--informat", choices=["json", "graph6"])
    p.add_argument("--out", required=True)
    p.add_argument("--format", choices=["json", "graph6"])
    p.set_defaults(func=cmd_export)
    return ap


def main(argv=None) -> int:
    _apply_thread_cap()
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code not in (0, None) else 0
    try:
        return args.func(args)
    except InvalidQ as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
