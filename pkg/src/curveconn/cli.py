"""Command-line front end.

Exit codes: 0 success, 1 check or suite failure, 2 input error,
3 enumeration budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time

from . import __version__, _kernels
from .config import ConfigurationError, configuration_from_document, divisor_from_document, parse_divisor
from .connectivity import (BudgetExceeded, EnumerationBudget, PreconditionError,
                           connectedness_number, enumerate_decompositions, is_m_connected,
                           split_connectivity_check)
from .generators import (SamplerError, SamplerSpec, gen_chain, gen_cycle, gen_disjoint, gen_multiple_fiber,
                         gen_star, named_fixture, take)
from .intersection import arithmetic_genus, intersect
from .structure import (ShadowError, chain_decomposition_search, enumerate_subcurves,
                        fixed_part_report, genus_spectrum, prop_go_check, reduced_h0, reduced_h1)
from .suites import SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


class InputError(Exception):
    pass


# --- input ------------------------------------------------------------------------

def _load_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno} "
                         f"(char {exc.pos}): {exc.msg}") from None
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None


def _config(args):
    if not args.config:
        raise InputError("a configuration is required (-c/--config PATH)")
    doc = _load_json(args.config)
    try:
        cfg = configuration_from_document(doc)
    except ConfigurationError as exc:
        raise InputError(f"{args.config}: {exc}") from None
    return cfg, doc


def _divisor(cfg, doc, inline, path, what):
    """Inline CSV wins over a JSON file, which wins over a divisor embedded in the config."""
    from_file = None
    if path:
        from_file = divisor_from_document(cfg, _load_json(path))
    elif what == "divisor" and isinstance(doc, dict) and "divisor" in doc:
        from_file = divisor_from_document(cfg, doc["divisor"])
    if inline is not None:
        d = parse_divisor(cfg, inline)
        if from_file is not None and from_file.mult != d.mult:
            print(f"warning: inline {what} {d.csv()} overrides {from_file.csv()} from file",
                  file=sys.stderr)
        return d
    if from_file is None:
        raise InputError(f"no {what} given")
    return from_file


# --- output -----------------------------------------------------------------------

def _conn_text(c):
    return "infinity" if c == math.inf else str(c)


def table(rows, headers=("field", "value")) -> str:
    rows = [[str(x) for x in r] for r in rows]
    widths = [max(len(h), *(len(r[i]) for r in rows)) if rows else len(h)
              for i, h in enumerate(headers)]
    line = "  ".join(h.ljust(w) for h, w in zip(headers, widths))
    out = [line, "  ".join("-" * w for w in widths)]
    out += ["  ".join(c.ljust(w) for c, w in zip(r, widths)) for r in rows]
    return "\n".join(line.rstrip() for line in out)


def manifest(args, started: float) -> dict:
    flags = {k: v for k, v in sorted(vars(args).items())
             if k not in ("func", "command", "timing")}
    return {
        "command": args.command,
        "inputs": [p for p in (getattr(args, "config", None), getattr(args, "divisor_file", None),
                               getattr(args, "fixed_file", None)) if p],
        "flags": flags,
        "seed": getattr(args, "seed", None),
        "budget": getattr(args, "max_candidates", None),
        "version": __version__,
        "backend": _kernels.BACKEND,
        # wall time breaks byte-identical reruns, so it is opt-in
        "wall_time_s": round(time.perf_counter() - started, 6) if args.timing else None,
    }


def emit(args, started, result: dict, text: str) -> None:
    if args.format == "json":
        doc = {"manifest": manifest(args, started), "result": result}
        sys.stdout.write(json.dumps(doc, indent=2, sort_keys=False) + "\n")
    else:
        sys.stdout.write(text.rstrip("\n") + "\n")


def _budget(args) -> EnumerationBudget:
    return EnumerationBudget(args.max_candidates)


# --- commands -------------------------------------------------------------------------

def cmd_analyze(args, started):
    cfg, doc = _config(args)
    d = _divisor(cfg, doc, args.divisor, args.divisor_file, "divisor")
    g = arithmetic_genus(d)
    res = connectedness_number(d, _budget(args))
    result = {**g.to_dict(), "connectivity": res.to_dict()}
    rows = [("divisor", d), ("D^2", g.self_int), ("K.D", g.k_degree), ("pa", g.pa),
            ("conn", _conn_text(res.conn)),
            ("argmin", f"{res.argmin.a} + {res.argmin.b}" if res.argmin else "-"),
            ("examined", res.candidates_examined)]
    emit(args, started, result, table(rows))
    return EXIT_OK


def cmd_connect(args, started):
    cfg, doc = _config(args)
    d = _divisor(cfg, doc, args.divisor, args.divisor_file, "divisor")
    budget = _budget(args)
    res = connectedness_number(d, budget)
    result = res.to_dict()
    rows = [("divisor", d), ("conn", _conn_text(res.conn)),
            ("argmin", f"{res.argmin.a} + {res.argmin.b}" if res.argmin else "-"),
            ("examined", res.candidates_examined)]
    code = EXIT_OK
    if args.m is not None:
        ok = is_m_connected(d, args.m, budget)
        result["m"] = args.m
        result["m_connected"] = ok
        rows.append((f"{args.m}-connected", ok))
        if ok and args.split:
            check = split_connectivity_check(d, args.m, budget)
            result["split_check"] = check.to_dict()
            rows.append(("split check", f"{check.status}: {check.detail}"))
            if check.failed:
                code = EXIT_FAIL
    emit(args, started, result, table(rows))
    return code


def cmd_subcurves(args, started):
    cfg, doc = _config(args)
    z = _divisor(cfg, doc, args.divisor, args.divisor_file, "divisor")
    budget = _budget(args)
    spec = genus_spectrum(z, budget)
    go = prop_go_check(z, budget)
    result = {"divisor": list(z.mult), "spectrum": spec.to_dict(), "prop_go": go.to_dict()}
    text = table([("divisor", z), ("max pa", spec.max_pa), ("witness", spec.witness),
                  ("all pa <= 0", spec.all_nonpositive), ("prop_go", f"{go.status}: {go.detail}")])
    if args.list:
        listing, rows = [], []
        for sub in enumerate_subcurves(z, budget):
            entry = {"mult": list(sub.mult), "pa": arithmetic_genus(sub).pa}
            if cfg.snc_faithful and sub.is_reduced:
                entry["h0"] = reduced_h0(sub)
                entry["h1"] = reduced_h1(sub)
            listing.append(entry)
            rows.append((sub, entry["pa"], entry.get("h0", "-"), entry.get("h1", "-")))
        result["subcurves"] = listing
        text += "\n\n" + table(rows, ("subcurve", "pa", "h0", "h1"))
    emit(args, started, result, text)
    return EXIT_FAIL if go.failed else EXIT_OK


def cmd_decompose(args, started):
    cfg, doc = _config(args)
    d = _divisor(cfg, doc, args.divisor, args.divisor_file, "divisor")
    budget = _budget(args)
    if args.part is None:
        rows, listing = [], []
        for dec in enumerate_decompositions(d, budget):
            v = intersect(dec.a, dec.b)
            listing.append({**dec.to_dict(), "pairing": v})
            rows.append((dec.a, dec.b, v))
        emit(args, started, {"divisor": list(d.mult), "decompositions": listing},
             table(rows, ("a", "d-a", "a.(d-a)")))
        return EXIT_OK
    a = parse_divisor(cfg, args.part)
    chain = chain_decomposition_search(d, a, budget)
    result = {"d": list(d.mult), "a": list(a.mult), "b": intersect(a, d - a),
              "chain": chain.to_dict()["pieces"] if chain else None}
    if chain is None:
        text = table([("d", d), ("a", a), ("chain", "none")])
    else:
        text = table([(f"B{i + 1}", p) for i, p in enumerate(chain.pieces)], ("piece", "mult"))
    emit(args, started, result, text)
    return EXIT_OK if chain else EXIT_FAIL


def cmd_fixedpart(args, started):
    cfg, doc = _config(args)
    d = _divisor(cfg, doc, args.divisor, args.divisor_file, "divisor")
    z = _divisor(cfg, doc, args.fixed, args.fixed_file, "fixed part")
    report = fixed_part_report(d, z, _budget(args))
    rows = [(c.name, c.status, c.detail) for c in report.checks]
    text = (f"D = {d}   Z = {z}\n\n" + table(rows, ("check", "status", "detail"))
            + f"\n\n{report.verdict()}\nnote: {report.to_dict()['limitation']}")
    emit(args, started, report.to_dict(), text)
    return EXIT_OK if report.consistent else EXIT_FAIL


def cmd_gen(args, started):
    fam = args.family
    if fam == "chain":
        base = gen_chain(args.length, args.self_int, args.k)
    elif fam == "cycle":
        base = gen_cycle(args.length)
    elif fam == "star":
        base = gen_star(args.leaves)
    elif fam == "disjoint":
        base = gen_disjoint(args.length, args.self_int, args.k)
    else:
        base = named_fixture(args.name)
    cfg, d = base
    if args.multiple:
        d = gen_multiple_fiber(base, args.multiple)
    doc = {**cfg.to_dict(), "divisor": {"mult": list(d.mult)}}
    if args.format == "json":
        sys.stdout.write(json.dumps(doc, indent=2) + "\n")
    else:
        rows = [(cfg.names[i], cfg.M[i][i], cfg.k[i], d.mult[i]) for i in range(cfg.n)]
        sys.stdout.write(table(rows, ("component", "self", "k", "mult")) + "\n")
    return EXIT_OK


def _require_seed(args):
    if args.format == "json" and args.seed is None:
        raise InputError("randomized commands need an explicit --seed in JSON output mode")


def cmd_sample(args, started):
    _require_seed(args)
    spec = SamplerSpec(n_max=args.n_max, mult_max=args.mult_max,
                       self_range=(args.self_min, args.self_max), k_policy=args.k_policy,
                       edge_density=args.edge_density, offdiag_max=args.offdiag_max,
                       seed=args.seed or 0, filter=args.filter)
    instances = take(spec, args.count)
    docs = [{**cfg.to_dict(), "divisor": {"mult": list(d.mult)}} for cfg, d in instances]
    rows = [(i, cfg.n, d, arithmetic_genus(d).pa) for i, (cfg, d) in enumerate(instances)]
    emit(args, started, {"instances": docs}, table(rows, ("#", "n", "divisor", "pa")))
    return EXIT_OK


def cmd_check(args, started):
    if args.suite not in SUITES:
        raise InputError(f"unknown suite {args.suite!r}; choose from {', '.join(SUITES)}")
    if not args.exhaustive:
        _require_seed(args)
    res = run_suite(args.suite, seed=args.seed, count=args.count, exhaustive=args.exhaustive)
    rows = [("suite", res.suite), ("mode", res.mode), ("checked", res.checked),
            ("skipped", res.skipped), ("violations", res.violations)]
    rows += [(k, v) for k, v in res.stats.items()]
    text = table(rows)
    if res.witness:
        text += "\n\nminimal witness:\n" + json.dumps(res.witness, indent=2)
    emit(args, started, res.to_dict(), text)
    return EXIT_OK if res.ok else EXIT_FAIL


# --- parser -----------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    # parents are rebuilt per subcommand: argparse shares action objects with children
    def common(fmt="table"):
        p = argparse.ArgumentParser(add_help=False)
        p.add_argument("--format", choices=("table", "json"), default=fmt)
        p.add_argument("--max-candidates", type=int, default=10_000_000)
        p.add_argument("--timing", action="store_true",
                       help="record wall time in the JSON manifest")
        return p

    def inputs():
        p = argparse.ArgumentParser(add_help=False)
        p.add_argument("-c", "--config", metavar="PATH")
        p.add_argument("-d", "--divisor", metavar="CSV")
        p.add_argument("--divisor-file", metavar="PATH", help='JSON {"mult": [...]}')
        return p

    p = argparse.ArgumentParser(prog="curveconn", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("analyze", parents=[common(), inputs()], help="genus and connectedness of D")
    s.set_defaults(func=cmd_analyze)

    s = sub.add_parser("connect", parents=[common(), inputs()], help="connectedness number, m-connectedness")
    s.add_argument("-m", type=int, default=None)
    s.add_argument("--split", action="store_true", help="also check parts of splittings attaining m")
    s.set_defaults(func=cmd_connect)

    s = sub.add_parser("subcurves", parents=[common(), inputs()], help="genus spectrum of subcurves")
    s.add_argument("--list", action="store_true")
    s.set_defaults(func=cmd_subcurves)

    s = sub.add_parser("decompose", parents=[common(), inputs()],
                       help="list splittings, or search a chain decomposition of A")
    s.add_argument("-a", "--part", metavar="CSV")
    s.set_defaults(func=cmd_decompose)

    s = sub.add_parser("fixedpart", parents=[common(), inputs()], help="fixed-part consistency report")
    s.add_argument("-z", "--fixed", metavar="CSV")
    s.add_argument("--fixed-file", metavar="PATH")
    s.set_defaults(func=cmd_fixedpart)

    s = sub.add_parser("gen", parents=[common("json")], help="emit a fixture configuration")
    s.add_argument("family", choices=("chain", "cycle", "star", "disjoint", "fixture"))
    s.add_argument("--length", type=int, default=3)
    s.add_argument("--leaves", type=int, default=2)
    s.add_argument("--self", dest="self_int", type=int, default=-2)
    s.add_argument("--k", type=int, default=0)
    s.add_argument("--name", default="A2")
    s.add_argument("--multiple", type=int, default=None, help="scale the divisor (multiple fibre)")
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("sample", parents=[common()], help="seeded random instances")
    s.add_argument("--seed", type=int, default=None)
    s.add_argument("--count", type=int, default=10)
    s.add_argument("--n-max", type=int, default=4)
    s.add_argument("--mult-max", type=int, default=2)
    s.add_argument("--self-min", type=int, default=-3)
    s.add_argument("--self-max", type=int, default=1)
    s.add_argument("--k-policy", choices=("rational", "mixed"), default="rational")
    s.add_argument("--edge-density", type=float, default=0.5)
    s.add_argument("--offdiag-max", type=int, default=1)
    s.add_argument("--filter", choices=("one_connected", "all_subcurve_pa_nonpositive"))
    s.set_defaults(func=cmd_sample)

    s = sub.add_parser("check", parents=[common()], help="run a named invariant suite")
    s.add_argument("suite")
    s.add_argument("--seed", type=int, default=None)
    s.add_argument("--count", type=int, default=1000)
    s.add_argument("--exhaustive", action="store_true")
    s.set_defaults(func=cmd_check)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code not in (0, None) else EXIT_OK
    started = time.perf_counter()
    try:
        return args.func(args, started)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except _kernels.KernelOverflowError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (InputError, ConfigurationError, PreconditionError, ShadowError,
            SamplerError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
