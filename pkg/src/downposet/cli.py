"""Command-line front end.

Exit codes: 0 for YES / sat / success, 1 for a valid negative answer,
2 for usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import docs
from .actions import (
    ActionTable,
    SetModel,
    induced_order,
    set_model_to_action,
    set_representation,
)
from .analysis import (
    MODES,
    Certificate,
    canonical_suborder,
    recognize,
    verify_certificate,
)
from .errors import DocumentError, DownPosetError
from .explore import explore_canonical
from .fixtures import FIXTURE_NAMES, fig1_model, fixture
from .oracle import all_posets, oracle_down_functions, oracle_recognize, random_poset
from .solver import DEFAULT_ENUM_CAP, enumerate_down_functions, solve_pinned

EXIT_OK, EXIT_NO, EXIT_USAGE = 0, 1, 2


class _Output:
    def __init__(self, fmt: str, path: str | None):
        self.fmt = fmt
        self.path = path
        self.chunks: list[str] = []

    def structured(self, doc):
        self.chunks.append(json.dumps(doc, indent=2, ensure_ascii=False) + "\n")

    def text(self, s: str):
        self.chunks.append(s if s.endswith("\n") else s + "\n")

    def flush(self):
        data = "".join(self.chunks)
        if self.path:
            Path(self.path).write_text(data, encoding="utf-8")
        else:
            sys.stdout.write(data)


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise DocumentError(f"cannot read {path}: {exc.strerror}") from None


def _poset(args):
    if (args.input is None) == (args.fixture is None):
        raise DocumentError("give exactly one input: a file path or --fixture NAME")
    if args.fixture is not None:
        return fixture(args.fixture)
    return docs.parse_poset(_read(args.input))


def _action(args) -> ActionTable:
    if (args.input is None) == (args.fixture is None):
        raise DocumentError("give exactly one input: a file path or --fixture NAME")
    if args.fixture is not None:
        if args.fixture != "fig1":
            raise DocumentError("only the fig1 fixture carries an action model")
        obj = fig1_model()
    else:
        obj = docs.parse_action(_read(args.input))
    return set_model_to_action(obj) if isinstance(obj, SetModel) else obj


def _human_trace(trace) -> list[str]:
    lines = []
    for s in trace.steps:
        before = "{" + ",".join(s.before) + "}"
        after = "{" + ",".join(s.after) + "}"
        why = f" (from {','.join(s.cause)})" if s.cause else ""
        lines.append(f"  {s.rule:<16} D({s.element}): {before} -> {after}{why}")
    c = trace.conflict
    where = f" at {c.pair}" if c.pair else ""
    lines.append(f"  conflict: {c.rule}{where}: {c.detail}")
    return lines


def _maps_doc(maps):
    return [f.as_dict() for f in maps]


# subcommands ---------------------------------------------------------------


def cmd_check(args, out):
    p = _poset(args)
    d = recognize(p, args.mode, exhaustive=args.exhaustive, jobs=args.jobs)
    if args.format == "structured":
        out.structured(d.as_dict())
    elif args.format == "dot":
        out.text(docs.emit_dot(p, d.failing_pair))
    elif d.is_down_poset:
        out.text(f"YES: down-poset; {len(d.certificate.entries)} pairs certified ({d.mode})")
        for e in d.certificate.entries:
            body = ", ".join(f"{x}->{y}" for x, y in e.map.as_dict().items())
            out.text(f"  {e.pair[1]} -> {e.pair[0]}: {{{body}}}")
    else:
        for r in d.refutations:
            out.text(f"NO: no down-function sends {r.pair[1]} to {r.pair[0]}")
            out.text("\n".join(_human_trace(r.trace)))
    return EXIT_OK if d.is_down_poset else EXIT_NO


def cmd_solve(args, out):
    p = _poset(args)
    o = solve_pinned(p, args.source, args.target)
    doc = {"pin": {"from": args.source, "to": args.target}, "sat": o.sat}
    if o.sat:
        doc["map"] = o.map.as_dict()
    else:
        doc["trace"] = o.trace.as_dict()
    if args.format == "structured":
        out.structured(doc)
    elif args.format == "dot":
        out.text(docs.emit_dot(p, None if o.sat else (args.target, args.source)))
    elif o.sat:
        out.text("SAT: " + ", ".join(f"{x}->{y}" for x, y in o.map.as_dict().items()))
    else:
        out.text(f"UNSAT: no down-function sends {args.source} to {args.target}")
        out.text("\n".join(_human_trace(o.trace)))
    return EXIT_OK if o.sat else EXIT_NO


def cmd_enumerate(args, out):
    p = _poset(args)
    maps = enumerate_down_functions(p, args.cap)
    if args.format == "structured":
        out.structured({"count": len(maps), "maps": _maps_doc(maps)})
    else:
        out.text(f"{len(maps)} down-functions")
        for f in maps:
            out.text("  " + ", ".join(f"{x}->{y}" for x, y in f.as_dict().items()))
    return EXIT_OK


def _emit_poset(p, args, out, header=None):
    if args.format == "structured":
        out.structured(docs.poset_to_doc(p))
    elif args.format == "dot":
        out.text(docs.emit_dot(p))
    else:
        if header:
            out.text(header)
        out.text("elements: " + " ".join(p.elements))
        out.text("covers:   " + " ".join(f"{x}<{y}" for x, y in p.covers()))


def cmd_canonical(args, out):
    p = _poset(args)
    q = canonical_suborder(p, jobs=args.jobs)
    _emit_poset(q, args, out, "canonical down-suborder" + (" (unchanged)" if q == p else ""))
    return EXIT_OK


def cmd_induce(args, out):
    a = _action(args)
    _emit_poset(induced_order(a), args, out, "induced order")
    return EXIT_OK


def cmd_represent(args, out):
    p = _poset(args)
    d = recognize(p, jobs=args.jobs)
    if not d.is_down_poset:
        if args.format == "structured":
            out.structured(d.as_dict())
        else:
            out.text(f"NO: not a down-poset (fails at {d.failing_pair}); no set model exists")
        return EXIT_NO
    m = set_representation(p, d.certificate, args.cap)
    if args.format == "structured":
        out.structured(docs.set_model_to_doc(m))
    else:
        doc = docs.set_model_to_doc(m)
        out.text("ground set: " + " ".join(doc["ground_set"]))
        for k, v in doc["states"].items():
            out.text(f"  state {k} = {{{','.join(v)}}}")
        for k, v in doc["acts"].items():
            out.text(f"  act {k} = {{{','.join(v)}}}")
    return EXIT_OK


def cmd_verify(args, out):
    p = _poset(args)
    raw = json.loads(_read(args.certificate))
    items = raw.get("certificate") if isinstance(raw, dict) else raw
    if not isinstance(items, list):
        raise DocumentError("certificate document must be a list or contain a 'certificate' list")
    try:
        cert = Certificate.from_list(p, items)
    except (KeyError, TypeError, IndexError) as exc:
        raise DocumentError(f"malformed certificate entry: {exc}") from None
    check = verify_certificate(p, cert)
    if args.format == "structured":
        out.structured({"valid": check.ok, "reasons": list(check.reasons)})
    else:
        out.text("VALID" if check.ok else "INVALID")
        for r in check.reasons:
            out.text("  " + r)
    return EXIT_OK if check.ok else EXIT_NO


def cmd_oracle(args, out):
    p = _poset(args)
    maps = oracle_down_functions(p)
    yes = oracle_recognize(p)
    if args.format == "structured":
        out.structured({"is_down_poset": yes, "down_function_count": len(maps)})
    else:
        out.text(f"{'YES' if yes else 'NO'} (oracle; {len(maps)} down-functions)")
    return EXIT_OK if yes else EXIT_NO


def cmd_random(args, out):
    p = random_poset(args.n, args.density, args.seed)
    _emit_poset(p, args, out)
    return EXIT_OK


def sweep(n: int) -> dict:
    """Compare recognizer and enumerator against the oracles on every labelled poset of size n."""
    total = 0
    bad = []
    for p in all_posets(n):
        total += 1
        oracle_maps = oracle_down_functions(p)
        expected = oracle_recognize(p)
        got = {m: recognize(p, m).is_down_poset for m in MODES}
        enum_ok = set(enumerate_down_functions(p)) == oracle_maps
        if not enum_ok or any(v != expected for v in got.values()):
            bad.append(docs.poset_to_doc(p))
    return {"n": n, "posets": total, "disagreements": bad}


def cmd_sweep(args, out):
    results = [sweep(n) for n in args.n]
    ok = all(not r["disagreements"] for r in results)
    if args.format == "structured":
        out.structured({"agree": ok, "results": results})
    else:
        for r in results:
            out.text(f"n={r['n']}: {r['posets']} posets, {len(r['disagreements'])} disagreements")
    return EXIT_OK if ok else EXIT_NO


def bench(sizes, densities, seeds, jobs=1) -> list[dict]:
    rows = []
    for n in sizes:
        for density in densities:
            for seed in seeds:
                p = random_poset(n, density, seed)
                t0 = time.perf_counter()
                d = recognize(p, exhaustive=True, jobs=jobs)
                wall = time.perf_counter() - t0
                branches = [s.branches for _, s in d.stats]
                rows.append({
                    "n": n, "density": density, "seed": seed,
                    "is_down_poset": d.is_down_poset,
                    "solves": len(d.stats),
                    "failing_pairs": len(d.refutations),
                    "branches_total": sum(branches),
                    "branches_max": max(branches, default=0),
                    "pairs_needing_branching": sum(1 for b in branches if b),
                    "seconds": round(wall, 4),
                })
    return rows


def cmd_bench(args, out):
    rows = bench(args.sizes, args.densities, args.seeds, args.jobs)
    if args.format == "structured":
        out.structured({"rows": rows})
    else:
        out.text(f"{'n':>4} {'dens':>5} {'seed':>4} {'down?':>5} {'solves':>6} {'fail':>5} "
                 f"{'branch':>6} {'max':>4} {'seconds':>8}")
        for r in rows:
            out.text(f"{r['n']:>4} {r['density']:>5} {r['seed']:>4} {str(r['is_down_poset']):>5} "
                     f"{r['solves']:>6} {r['failing_pairs']:>5} {r['branches_total']:>6} "
                     f"{r['branches_max']:>4} {r['seconds']:>8.3f}")
    return EXIT_OK


def cmd_explore(args, out):
    report = explore_canonical(args.max_n, args.samples, args.sample_n, args.seed)
    if args.format == "structured":
        out.structured(report)
    else:
        c = report["counts"]
        out.text(f"examined {report['examined']}; not down-posets: {c['not_down_poset']}")
        out.text(f"canonical suborder not maximal: {c['non_maximal']} posets")
        out.text(f"suborder down-function missing from original: {c['extra_function']} posets")
    return EXIT_OK


# parser ---------------------------------------------------------------------


def _csv(kind):
    def parse(s):
        try:
            return [kind(x) for x in s.split(",") if x]
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected comma-separated {kind.__name__} values") from None
    return parse


def _positive(s):
    v = int(s)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("human", "structured", "dot"), default="human")
    common.add_argument("--output", "-o", help="write output to this file instead of stdout")
    common.add_argument("--jobs", type=_positive, default=1, help="worker processes for per-pair solves")

    source = argparse.ArgumentParser(add_help=False)
    source.add_argument("input", nargs="?", help="JSON document path, or - for stdin")
    source.add_argument("--fixture", help=f"named fixture: {', '.join(FIXTURE_NAMES)}")

    parser = argparse.ArgumentParser(prog="downposet", description="Finite down-poset toolkit.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common, source], help="decide whether a poset is a down-poset")
    p.add_argument("--mode", choices=MODES, default="covers")
    p.add_argument("--exhaustive", action="store_true", help="report every failing pair")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("solve", parents=[common, source], help="find a down-function with f(FROM) = TO")
    p.add_argument("--from", dest="source", required=True)
    p.add_argument("--to", dest="target", required=True)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("enumerate", parents=[common, source], help="list every down-function")
    p.add_argument("--cap", type=_positive, default=DEFAULT_ENUM_CAP)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("canonical", parents=[common, source], help="canonical down-suborder")
    p.set_defaults(func=cmd_canonical)

    p = sub.add_parser("induce", parents=[common, source], help="order induced by an action document")
    p.set_defaults(func=cmd_induce)

    p = sub.add_parser("represent", parents=[common, source], help="set-intersection model of a down-poset")
    p.add_argument("--cap", type=_positive, default=10_000)
    p.set_defaults(func=cmd_represent)

    p = sub.add_parser("verify", parents=[common, source], help="re-check a certificate")
    p.add_argument("--certificate", required=True, help="certificate JSON (output of check)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle", parents=[common, source], help="brute-force decision (n <= 8)")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("random", parents=[common], help="seeded random poset")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--density", type=float, default=0.3)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_random)

    p = sub.add_parser("sweep", parents=[common], help="oracle agreement over all posets of size n")
    p.add_argument("--n", type=_csv(int), default=[4, 5], help="sizes, e.g. 4,5")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("bench", parents=[common], help="recognition timing on random posets")
    p.add_argument("--sizes", type=_csv(int), default=[40])
    p.add_argument("--densities", type=_csv(float), default=[0.1, 0.3, 0.5])
    p.add_argument("--seeds", type=_csv(int), default=[0])
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("explore", parents=[common], help="search for canonical-suborder witnesses")
    p.add_argument("--max-n", type=_positive, default=5)
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--sample-n", type=_positive, default=6)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_explore)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    out = _Output(args.format, args.output)
    try:
        status = args.func(args, out)
    except (DownPosetError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    out.flush()
    return status


def main():
    sys.exit(run())
