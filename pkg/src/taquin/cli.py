"""Command-line entry point.

Exit status: 0 on success, 1 when a verification fails, 2 on usage errors
(unknown flags, malformed poset files, guard violations).

CSV output (``--format csv``) writes census reports as ``labeling,count`` rows
(labels listed by element id, ``;``-separated) and every other report as
``key,value`` rows of the flattened JSON.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from . import acceptance, dcomplete, dtd, involution, jdt, tableaux
from .errors import GuardError, NotDCompleteError, PosetError
from .poset import (count_linear_extensions, double_tailed_diamond, from_json, inset,
                    partition, shifted_young, young)


class UsageError(Exception):
    pass


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def _flatten(obj, prefix=""):
    if isinstance(obj, dict):
        for k, v in obj.items():
            yield from _flatten(v, f"{prefix}{k}.")
    elif isinstance(obj, list):
        for i, v in enumerate(obj):
            yield from _flatten(v, f"{prefix}{i}.")
    else:
        yield prefix.rstrip("."), obj


def emit(obj: dict, fmt: str, out=None) -> None:
    out = out or sys.stdout
    if fmt == "json":
        out.write(dumps(obj) + "\n")
    elif fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        if "counts" in obj and isinstance(obj["counts"], dict) and "ensemble" in obj:
            writer.writerow(["labeling", "count"])
            for key, count in obj["counts"].items():
                writer.writerow([key.replace(",", ";"), count])
        else:
            writer.writerow(["key", "value"])
            writer.writerows(_flatten(obj))
        out.write(buf.getvalue())
    else:
        for key, value in _flatten(obj):
            out.write(f"{key}: {value}\n")


# -- argument helpers -------------------------------------------------------

def _ints(text: str) -> list[int]:
    try:
        return [int(t) for t in text.replace(" ", "").split(",") if t]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def add_poset_source(p: argparse.ArgumentParser, order: bool = True) -> None:
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--young", metavar="PARTS", help="Young diagram, e.g. 3,3,2,1")
    group.add_argument("--shifted", metavar="PARTS", help="shifted diagram of a strict partition")
    group.add_argument("--dtd", nargs="+", metavar="M N", help="double-tailed diamond, '6,5' or '6 5'")
    group.add_argument("--inset", metavar="K:PARTS", help="inset, e.g. 4:3,2,2,1")
    group.add_argument("--file", type=Path, help="poset JSON file {n, covers, names}")
    if order:
        p.add_argument("--order", choices=["column", "row", "dtd", "natural"],
                       help="processing order (default depends on the family)")
        p.add_argument("--sigma", help="explicit processing order as sigma values by element id")


def load_poset(args):
    """Return (poset, default order name)."""
    if args.young:
        return young(partition(args.young)), "column"
    if args.shifted:
        return shifted_young(partition(args.shifted, strict=True)), "row"
    if args.dtd:
        values = _ints(",".join(args.dtd))
        if len(values) != 2:
            raise UsageError("--dtd needs two integers M N")
        return double_tailed_diamond(*values), "dtd"
    if args.inset:
        k, _, parts = args.inset.partition(":")
        if not parts:
            raise UsageError("--inset expects K:PARTS")
        return inset(int(k), partition(parts)), "row"
    try:
        data = json.loads(args.file.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise PosetError(f"cannot read poset file: {exc}") from None
    return from_json(data), "natural"


def resolve_order(P, args, default: str):
    if getattr(args, "sigma", None):
        sigma = tuple(_ints(args.sigma))
        jdt.check_order(P, sigma)
        return sigma
    name = getattr(args, "order", None) or default
    if name == "column":
        return jdt.order_column_wise(P)
    if name == "row":
        return jdt.order_row_wise(P)
    if name == "dtd":
        cells = P.cells or ()
        m = sum(1 for c in cells if c[0] == 1)
        return jdt.order_dtd(m, P.n - m, P)
    sigma = [0] * P.n
    for pos, x in enumerate(P.topological, 1):
        sigma[x] = pos
    return tuple(sigma)


def _named(P, values) -> dict:
    return {P.name(x): v for x, v in enumerate(values)}


# -- commands ---------------------------------------------------------------

def cmd_poset(args) -> tuple[dict, int]:
    if args.action == "check":
        try:
            P, _ = load_poset(args)
        except PosetError as exc:
            return {"valid": False, "error": str(exc)}, 1
        return {"valid": True, "n": P.n, "covers": str(len(P.covers)),
                "linear_extensions": str(count_linear_extensions(P))}, 0
    P, _ = load_poset(args)
    out = P.to_json()
    out["maximal"] = [P.name(x) for x in P.maximal()]
    out["minimal"] = [P.name(x) for x in P.minimal()]
    return out, 0


def cmd_dcomplete(args) -> tuple[dict, int]:
    P, _ = load_poset(args)
    verdict = dcomplete.is_d_complete(P)
    out = {"d_complete": verdict.is_d_complete,
           "violation": verdict.violation.to_json(P) if verdict.violation else None}
    if args.action == "check":
        return out, 0 if verdict else 1
    if not verdict:
        return out, 1
    hooks = dcomplete.hook_lengths(P)
    if args.action == "hooks":
        out["hooks"] = _named(P, hooks)
    elif args.action == "count":
        out["hook_count"] = str(dcomplete.hook_count(P))
        if args.brute:
            brute = count_linear_extensions(P)
            out["brute_count"] = str(brute)
            out["pass"] = brute == dcomplete.hook_count(P)
            return out, 0 if out["pass"] else 1
    else:
        series = dcomplete.hook_series_coefficients(hooks, args.degree)
        out["hook_series"] = [str(c) for c in series]
        if args.brute:
            brute = dcomplete.p_partition_counts(P, args.degree)
            out["p_partitions"] = [str(c) for c in brute]
            out["pass"] = brute == series
            return out, 0 if out["pass"] else 1
    return out, 0


def cmd_jdt(args) -> tuple[dict, int]:
    P, default = load_poset(args)
    sigma = resolve_order(P, args, default)
    if args.action == "run":
        if args.labels:
            labels = tuple(_ints(args.labels))
        elif args.pi:
            labels = jdt.labeling_from_permutation(P, sigma, _ints(args.pi))
        else:
            raise UsageError("jdt run needs --pi or --labels")
        final, trace = jdt.jdt_sort(P, sigma, labels)
        return {
            "sigma": _named(P, sigma),
            "input": _named(P, labels),
            "output": _named(P, final),
            "trace": [{"element": P.name(r.element),
                       "swaps": [[P.name(a), P.name(b)] for a, b in r.swaps]} for r in trace.rounds],
        }, 0
    if args.samples is not None:
        if args.seed is None:
            raise UsageError("--samples requires --seed")
        report = jdt.distribution_sampled(P, sigma, args.samples, args.seed)
    else:
        report = jdt.distribution_exhaustive(P, sigma, jobs=args.jobs, guard=args.guard)
    return report.to_json(), 0


def cmd_dtd(args) -> tuple[dict, int]:
    m, n = args.m, args.n
    if args.action == "stats":
        formula = dtd.stat_profile_formula(m, n)
        out = {"formula": formula.to_json()}
        if args.brute:
            brute = dtd.stat_profile_bruteforce(m, n, guard=args.guard)
            out["brute"] = brute.to_json()
            out["pass"] = brute == formula
            return out, 0 if out["pass"] else 1
        return out, 0
    diff = dtd.theorem_difference(m, n)
    out = {"m": m, "n": n, "difference": str(diff), "alternating_sum": str(dtd.alternating_sum(m, n)),
           "uniform": diff == 0}
    if args.verify:
        s1, s2 = dtd.s_counts_bruteforce(m, n, jobs=args.jobs, guard=args.guard)
        out["brute"] = {"s1": str(s1), "s2": str(s2)}
        out["pass"] = s1 - s2 == diff == dtd.alternating_sum(m, n)
        return out, 0 if out["pass"] else 1
    return out, 0


def cmd_phi(args) -> tuple[dict, int]:
    if args.action == "apply":
        pi = _ints(args.pi)
        res = involution.phi(args.m, args.n, pi)
        return {"pi": pi, "image": list(res.image) if res.image else None,
                "exceptional": res.exceptional, "k": res.k, "t": res.t}, 0
    report = involution.verify_involution(args.m, args.n, guard=args.guard)
    return report.to_json(), 0 if report.ok else 1


def _frac(q) -> dict:
    return {"num": str(q.numerator), "den": str(q.denominator)}


def cmd_syt(args) -> tuple[dict, int]:
    lam = partition(args.shape)
    if args.action == "count":
        out = {"shape": list(lam), "hook_count": str(tableaux.syt_count_hook(lam))}
        if args.brute:
            brute = sum(1 for _ in tableaux.syt_enumerate(lam))
            out["brute_count"] = str(brute)
            out["pass"] = brute == tableaux.syt_count_hook(lam)
            return out, 0 if out["pass"] else 1
        return out, 0
    report = tableaux.expectation(lam, brute=args.brute)
    out = report.to_json()
    out["ratio"] = f"{report.f_inset}/{report.f}"
    return out, 0 if report.consistent else 1


def cmd_inset(args) -> tuple[dict, int]:
    lam = partition(args.shape)
    count = tableaux.inset_count(args.k, lam)
    out = {"k": args.k, "shape": list(lam), "count": str(count)}
    if args.brute:
        P = inset(args.k, lam)
        brute = count_linear_extensions(P)
        out["brute_count"] = str(brute)
        out["hook_count"] = str(dcomplete.hook_count(P))
        out["refined"] = [str(c) for c in tableaux.refined_counts(args.k, lam)]
        out["pass"] = brute == count == dcomplete.hook_count(P)
        return out, 0 if out["pass"] else 1
    return out, 0


def cmd_families(args) -> tuple[dict, int]:
    report = tableaux.family_checks()

    def rows(d):
        return {str(k): {"value": _frac(v), "decimal": f"{float(v):.6f}", "ok": ok} for k, (v, ok) in d.items()}

    out = {"hooks": rows(report["hooks"]),
           "rectangles": {str(c): rows(r) for c, r in report["rectangles"].items()},
           "staircases": rows(report["staircases"]), "pass": report["pass"]}
    return out, 0 if report["pass"] else 1


def cmd_suite(args) -> tuple[dict, int]:
    echo = None if args.format == "json" else print
    results = acceptance.run_all(jobs=args.jobs, slow=not args.quick, echo=echo)
    out = {"criteria": [{"number": r.number, "title": r.title, "pass": r.passed, "detail": r.detail}
                        for r in results],
           "pass": all(r.passed for r in results)}
    if args.format != "json":
        print(f"{sum(r.passed for r in results)}/{len(results)} criteria passed")
        return None, 0 if out["pass"] else 1
    return out, 0 if out["pass"] else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "csv", "pretty"], default="json")
    parser = argparse.ArgumentParser(prog="taquin", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    groups = parser.add_subparsers(dest="group", required=True)

    def sub(name, help_text):
        return groups.add_parser(name, help=help_text).add_subparsers(dest="action", required=True)

    def leaf(actions, name):
        return actions.add_parser(name, parents=[common])

    def guard_jobs(p, guard, jobs=True):
        if jobs:
            p.add_argument("--jobs", type=int, default=1, help="worker processes")
        p.add_argument("--guard", type=int, default=guard, help="largest size for exhaustive runs")

    s = sub("poset", "inspect posets")
    for action in ("show", "check"):
        add_poset_source(leaf(s, action), order=False)

    s = sub("dcomplete", "d-completeness and hook lengths")
    for action in ("check", "hooks", "count", "series"):
        p = leaf(s, action)
        add_poset_source(p, order=False)
        p.add_argument("--brute", action="store_true", help="cross-check by exhaustive enumeration")
        p.add_argument("--degree", type=int, default=12)

    s = sub("jdt", "jeu de taquin runs and censuses")
    p = leaf(s, "run")
    add_poset_source(p)
    p.add_argument("--pi", help="input permutation, written in decreasing sigma order")
    p.add_argument("--labels", help="input labeling by element id")
    p = leaf(s, "census")
    add_poset_source(p)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exhaustive", action="store_true", help="all n! labelings (default)")
    mode.add_argument("--samples", type=int, help="number of random labelings")
    p.add_argument("--seed", type=int, help="required with --samples")
    guard_jobs(p, jdt.DEFAULT_GUARD)

    s = sub("dtd", "statistic and difference formula on D_{m,n}")
    for action in ("stats", "theorem"):
        p = leaf(s, action)
        p.add_argument("--m", type=int, required=True)
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--brute" if action == "stats" else "--verify", action="store_true",
                       help="cross-check by exhaustive enumeration")
        guard_jobs(p, dtd.BRUTE_GUARD, jobs=action == "theorem")

    s = sub("phi", "the type-inverting involution")
    for action in ("apply", "verify"):
        p = leaf(s, action)
        p.add_argument("--m", type=int, required=True)
        p.add_argument("--n", type=int, required=True)
        if action == "apply":
            p.add_argument("--pi", required=True)
        else:
            guard_jobs(p, involution.VERIFY_GUARD, jobs=False)

    s = sub("syt", "standard Young tableaux")
    for action in ("count", "expect"):
        p = leaf(s, action)
        p.add_argument("--shape", required=True)
        p.add_argument("--brute", action="store_true")

    s = sub("inset", "insets")
    p = leaf(s, "count")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--shape", required=True)
    p.add_argument("--brute", action="store_true")

    s = sub("families", "hook, rectangle and staircase families")
    leaf(s, "check")

    s = sub("suite", "acceptance battery")
    p = leaf(s, "acceptance")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--quick", action="store_true", help="skip the 10! shifted census")
    return parser


COMMANDS = {"poset": cmd_poset, "dcomplete": cmd_dcomplete, "jdt": cmd_jdt, "dtd": cmd_dtd,
            "phi": cmd_phi, "syt": cmd_syt, "inset": cmd_inset, "families": cmd_families,
            "suite": cmd_suite}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        out, code = COMMANDS[args.group](args)
    except (UsageError, PosetError, GuardError, NotDCompleteError, ValueError) as exc:
        print(f"taquin: error: {exc}", file=sys.stderr)
        return 2
    if out is not None:
        emit(out, args.format)
    return code


if __name__ == "__main__":
    sys.exit(main())
