"""Command-line front end: simulate, spectrum, sweep, cost, verify.

Single runs emit JSON, sweeps and tables emit CSV; all floats carry 17
significant digits so identical configurations produce byte-identical
output.  Exit codes: 0 success, 1 verification failure, 2 bad
configuration, 3 state space over the memory cap.
"""
from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from .cost_model import VARIANTS, choose_parameters, nint, optimize_m, table1_csv
from .full_sim import MemoryCapError, run_algorithm
from .instances import find_marked, load_instance, make_family
from .reduced_sim import ReducedBasis, build_walk_matrix, embed_to_full, \
    reduced_s, run_reduced
from .serialize import csv_line, dumps_report
from .spectral import algorithm_rotation, delta_decomposition, walk_spectrum

EXIT_CONFIG = 2
EXIT_MEMCAP = 3


class ConfigError(ValueError):
    pass


def _emit(text: str, output: str | None):
    if output:
        with open(output, "w") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        print(text)


def _load_config(args, parser):
    """Overlay --config file values onto fields left at their defaults."""
    if not getattr(args, "config", None):
        return args
    with open(args.config) as fh:
        cfg = json.load(fh)
    for key, value in cfg.items():
        attr = key.replace("-", "_")
        if not hasattr(args, attr):
            raise ConfigError(f"unknown config key {key!r}")
        if getattr(args, attr) == parser.get_default(attr) \
                or getattr(args, attr) in (None, False):
            setattr(args, attr, value)
    return args


def _build_instance(args):
    if getattr(args, "instance", None):
        return load_instance(args.instance)
    if args.n is None:
        raise ConfigError("either --instance or --n is required")
    params = {"n": args.n, "seed": args.seed, "planted": not args.no_plant}
    if args.family != "element-distinctness":
        params["l"] = args.l
    elif args.l != 2:
        raise ConfigError("element-distinctness is an l=2 family")
    return make_family(args.family, **params)


def _resolve_params(n, l, args):
    if args.m is None and args.t1 is None and args.t2 is None:
        p = choose_parameters(n, l)
        return p.m, p.t1, p.t2
    m = args.m if args.m is not None else choose_parameters(n, l).m
    if not l <= m < n:
        raise ConfigError(f"need l <= m < n, got l={l}, m={m}, n={n}")
    t1 = args.t1 if args.t1 is not None else nint((math.pi / 2.0) * math.sqrt(m / l))
    t2 = args.t2 if args.t2 is not None else nint(
        (math.pi / 4.0) * (n / m) ** (l / 2.0))
    return m, t1, t2


def _reduced_report(inst, m, t1, t2):
    found = find_marked(inst)
    basis = ReducedBasis(inst.n, m, inst.l)
    if found.kind == "none":
        # P is the identity: the state never leaves |s>, nothing to find
        rep = run_reduced(basis, t1, 0)
        rep.t2 = t2
        rep.success_probability = 0.0
        rep.overlap_w = 0.0
        rep.query_count = m + 2 * t1 * t2
        rep.flags = rep.flags + ("no_marked",)
        return rep, found
    rep = run_reduced(basis, t1, t2)
    rep.mode = inst.mode
    if found.kind != "unique":
        rep.flags = rep.flags + ("unguaranteed",)
    return rep, found


_SCAN_LIMIT = 500_000  # largest C(n, l) the brute-force scan will walk


def _scan_feasible(n, l):
    from .combinat import binomial

    return binomial(n, l) <= _SCAN_LIMIT


def cmd_simulate(args) -> int:
    if args.engine == "reduced" and not getattr(args, "instance", None) \
            and args.n is not None and not _scan_feasible(args.n, args.l):
        # the reduced dynamics depend only on (n, m, l); at this scale no
        # concrete value table can be scanned, so a unique marked set is
        # assumed and flagged
        m, t1, t2 = _resolve_params(args.n, args.l, args)
        rep = run_reduced(ReducedBasis(args.n, m, args.l), t1, t2)
        rep.flags = rep.flags + ("assumed_unique",)
        out = {"command": "simulate", "family": args.family, "seed": args.seed,
               "engine": "reduced", "reduced": rep.to_dict()}
        _emit(dumps_report(out), args.output)
        return 0

    inst = _build_instance(args)
    m, t1, t2 = _resolve_params(inst.n, inst.l, args)
    out = {"command": "simulate", "family": inst.family_tag, "seed": inst.seed,
           "engine": args.engine}
    if args.engine in ("full", "both"):
        full = run_algorithm(inst, m, t1, t2)
        out["full"] = full.to_dict()
    if args.engine in ("reduced", "both"):
        reduced, found = _reduced_report(inst, m, t1, t2)
        out["reduced"] = reduced.to_dict()
        if args.engine == "both" and found.kind == "unique":
            embedded = embed_to_full(reduced.final_state,
                                     ReducedBasis(inst.n, m, inst.l),
                                     found.marked)
            fs = full.final_state
            dev = max(float(np.max(np.abs(embedded.amps_a - fs.amps_a))),
                      float(np.max(np.abs(embedded.amps_b - fs.amps_b))))
            out["max_state_deviation"] = dev
    _emit(dumps_report(out), args.output)
    return 0


def cmd_spectrum(args) -> int:
    if args.n is None:
        raise ConfigError("--n is required")
    n, l = args.n, args.l
    m = args.m if args.m is not None else choose_parameters(n, l).m
    if not l <= m < n:
        raise ConfigError(f"need l <= m < n, got l={l}, m={m}, n={n}")
    out = {
        "command": "spectrum",
        "walk_spectrum": walk_spectrum(n, m, l).to_dict(),
        "delta_decomposition": delta_decomposition(n, m, l).to_dict(),
        "rotation": algorithm_rotation(n, m, l).to_dict(),
    }
    _emit(dumps_report(out), args.output)
    return 0


def cmd_sweep(args) -> int:
    header = "n,m,t1,t2,queries,overlap_w,success"
    lines = [header]
    ns = sorted(args.n_values or [])
    points = []
    for n in ns:
        p = choose_parameters(n, args.l)
        if args.engine == "full":
            inst = make_family("l-distinctness", n=n, l=args.l, seed=args.seed)
            rep = run_algorithm(inst, p.m, p.t1, p.t2)
        else:
            rep = run_reduced(ReducedBasis(n, p.m, args.l), p.t1, p.t2)
        lines.append(csv_line([n, p.m, p.t1, p.t2, rep.query_count,
                               rep.overlap_w, rep.success_probability]))
        points.append((n, rep.query_count))
    if len(points) >= 2:
        logs_n = np.log([n for n, _ in points])
        logs_q = np.log([q for _, q in points])
        slope = float(np.polyfit(logs_n, logs_q, 1)[0])
        lines.append(f"# slope,{slope:.17g}")
    _emit("\n".join(lines), args.output)
    return 0


def cmd_cost(args) -> int:
    if args.table1:
        _emit(table1_csv().rstrip("\n"), args.output)
        return 0
    if args.optimize:
        if args.variant not in VARIANTS:
            raise ConfigError(f"variant must be one of {VARIANTS}")
        res = optimize_m(args.n or 10 ** 6, args.l, args.variant)
        _emit(dumps_report({"command": "cost", **res.to_dict()}), args.output)
        return 0
    raise ConfigError("cost requires --table1 or --optimize")


def cmd_verify(args) -> int:
    from .verify import run_all

    sign = -1.0 if args.inject_c2_sign_error else 1.0
    results = run_all(_c2_offdiag_sign=sign)
    failed = [r for r in results if not r.passed]
    for r in results:
        print(f"{'PASS' if r.passed else 'FAIL'}  {r.name}: {r.detail}")
    print(f"{len(results) - len(failed)}/{len(results)} checks passed")
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="johnson-walk",
        description="Exact quantum-walk subset-finding simulator and analyzer")
    sub = parser.add_subparsers(dest="command", required=True)
    parser.subparser_map = {}

    def common(p):
        p.add_argument("--config", help="JSON file with RunConfig fields")
        p.add_argument("--output", help="write to file instead of stdout")

    p = sub.add_parser("simulate", help="run (W^t1 P)^t2 on an instance")
    p.add_argument("--family", default="element-distinctness")
    p.add_argument("--instance", help="instance JSON file")
    p.add_argument("--n", type=int)
    p.add_argument("--l", type=int, default=2)
    p.add_argument("--m", type=int)
    p.add_argument("--t1", type=int)
    p.add_argument("--t2", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--no-plant", action="store_true")
    p.add_argument("--engine", choices=("full", "reduced", "both"),
                   default="reduced")
    common(p)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("spectrum", help="walk and rotation eigenstructure")
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--l", type=int, default=2)
    common(p)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("sweep", help="query scaling over a range of n")
    p.add_argument("--l", type=int, default=2)
    p.add_argument("--n-values", type=int, nargs="*", default=None)
    p.add_argument("--engine", choices=("full", "reduced"), default="reduced")
    p.add_argument("--seed", type=int, default=0)
    common(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("cost", help="cost table and optimizer")
    p.add_argument("--table1", action="store_true")
    p.add_argument("--optimize", action="store_true")
    p.add_argument("--l", type=int, default=2)
    p.add_argument("--n", type=int)
    p.add_argument("--variant", default="simple")
    common(p)
    p.set_defaults(func=cmd_cost)

    p = sub.add_parser("verify", help="run the named invariant suite")
    p.add_argument("--inject-c2-sign-error", action="store_true",
                   help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_verify)

    for action in sub.choices.items():
        parser.subparser_map[action[0]] = action[1]
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args = _load_config(args, parser.subparser_map[args.command])
        return args.func(args)
    except MemoryCapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MEMCAP
    except (ConfigError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
