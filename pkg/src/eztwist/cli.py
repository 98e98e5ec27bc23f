"""Command-line entry point: ``eztwist <subcommand> ...``."""

from __future__ import annotations

import argparse
import json
import os
import re
import sys

from . import __version__
from .catalogue import CATALOGUE, UnknownIdentity, verify_all
from .chains import linear
from .groups import (
    GroupError,
    LoopGroup,
    canonical_twisting,
    cyclic_group,
    discrete_group,
    reduce_base,
    symmetric_group_3,
    trivial_twisting,
    twisting_from_json,
    validate_twisting_function,
    wbar_twisting,
    WBar,
)
from .homology import RankOverflow, homology
from .simplicial import BarSimplex, SimplexError, SimplexRef, gen_from_json, parse_space, validate_simplicial
from .twisting import (
    CochainStore,
    TwistedProduct,
    TwistingCochain,
    compare_cochains,
    right_justified,
    twisted_tensor_complex,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
MAX_CAP = 8


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# argument resolution


def resolve_space(text):
    try:
        return parse_space(text)
    except (SimplexError, OSError, ValueError, KeyError) as exc:
        raise UsageError(f"bad space {text!r}: {exc}") from None


def resolve_group(text, base=None):
    """``Z/k``, ``S3`` or ``loop`` (the Kan loop group of the base)."""
    if text == "loop":
        if base is None:
            raise UsageError("--group loop needs a base")
        try:
            return LoopGroup(base)
        except GroupError as exc:
            raise UsageError(str(exc)) from None
    if text == "S3":
        return discrete_group(symmetric_group_3())
    m = re.fullmatch(r"Z/(\d+)", text)
    if not m or int(m.group(1)) < 1:
        raise UsageError(f"unknown group {text!r}; expected Z/k, S3 or loop")
    return discrete_group(cyclic_group(int(m.group(1))))


def resolve_tau(text, base, group):
    if text == "trivial":
        return trivial_twisting(base, group)
    if text == "canonical":
        if isinstance(group, LoopGroup):
            return canonical_twisting(group)
        if isinstance(base, WBar):
            return wbar_twisting(base, group)
        raise UsageError("canonical twisting needs --group loop or a Wbar base")
    try:
        if text.lstrip().startswith("{"):
            obj = json.loads(text)
        else:
            with open(text) as fh:
                obj = json.load(fh)
    except (OSError, ValueError) as exc:
        raise UsageError(f"bad twisting function {text!r}: {exc}") from None
    if isinstance(group, LoopGroup):
        raise UsageError("JSON twisting functions target finite groups")
    return twisting_from_json(obj, base, group)


def resolve_simplex(text, base):
    """``eN`` (fundamental simplex of barDelta:N) or a JSON simplex reference."""
    m = re.fullmatch(r"e(\d+)", text)
    if m:
        if not isinstance(base, BarSimplex) or int(m.group(1)) != base.n:
            raise UsageError(f"{text} names the fundamental simplex of barDelta:{m.group(1)}")
        return base.top
    try:
        obj = json.loads(text)
        gen = gen_from_json(obj["gen"])
        degens = tuple(obj.get("degens", ()))
        return SimplexRef(base.gen_degree(gen) + len(degens), degens, gen)
    except (ValueError, KeyError, TypeError, SimplexError) as exc:
        raise UsageError(f"bad simplex {text!r}: {exc}") from None


def check_cap(name, value, limit=MAX_CAP):
    if value < 0:
        raise UsageError(f"{name} must be >= 0")
    if value > limit:
        raise UsageError(f"{name} {value} exceeds the supported limit {limit}")
    return value


def memo_store(args):
    root = getattr(args, "memo_dir", None) or os.environ.get(CochainStore.ENV)
    return CochainStore(root) if root else None


# ---------------------------------------------------------------------------
# subcommands; each returns (exit code, report dict, human lines)


def cmd_verify(args):
    cap = check_cap("--max-total-degree", args.max_total_degree)
    names = args.identity or ["all"]
    if "all" in names:
        names = list(CATALOGUE)
    unknown = [n for n in names if n not in CATALOGUE]
    if unknown:
        raise UsageError(f"unknown identity {unknown[0]!r}; known: {', '.join(sorted(CATALOGUE))}")
    if args.homotopy:
        other = "contraction-hh" if args.homotopy == "h" else "contraction-h"
        names = [n for n in names if n != other]
    try:
        reports = verify_all(names, cap)
    except UnknownIdentity as exc:
        raise UsageError(f"unknown identity {exc}") from None
    failed = [r for r in reports if r["status"] != "pass"]
    summary = {}
    for r in reports:
        s = summary.setdefault(r["identity"], {"tuples": 0, "checked": 0, "failed": 0})
        s["tuples"] += 1
        s["checked"] += r["checked"]
        s["failed"] += r["status"] != "pass"
    report = {"identities": summary, "failures": failed, "ok": not failed}
    lines = [
        f"{name}: {'PASS' if not s['failed'] else 'FAIL'} "
        f"({s['tuples']} degree tuples, {s['checked']} elements)"
        for name, s in summary.items()
    ]
    for f in failed:
        lines.append(f"  counterexample {f['identity']} {f['degrees']}: {f['counterexample']['relation']}")
    return (EXIT_OK if not failed else EXIT_FAIL), report, lines


def _loop_setup(args):
    base = resolve_space(args.base)
    reduced, _ = reduce_base(base)
    try:
        G = LoopGroup(reduced)
    except GroupError as exc:
        raise UsageError(str(exc)) from None
    return reduced, G


def cmd_cochain(args):
    B, G = _loop_setup(args)
    tau = canonical_twisting(G)
    tp = TwistedProduct(G, B, tau)
    t = TwistingCochain(tp, args.homotopy, store=memo_store(args))
    if args.simplex:
        simplices = [resolve_simplex(args.simplex, B)]
    else:
        cap = check_cap("--cap", args.cap if args.cap is not None else 2)
        simplices = [b for n in range(1, cap + 1) for b in B.nondegenerate(n)]
    values = []
    lines = []
    for b in simplices:
        v = t(b)
        values.append({"simplex": b.to_json(), "degree": b.degree, "value": v.to_json()})
        lines.append(f"t({b!r}) = {v!r}")
    report = {"base": B.name, "group": G.name, "values": values}
    if isinstance(B, BarSimplex) and any(b == B.top for b in simplices):
        rj = right_justified(t)
        report["right_justified"] = rj
        lines.append(f"right-justified: {rj['right_justified']}")
    return EXIT_OK, report, lines


def cmd_compare(args):
    B, _ = _loop_setup(args)
    cap = check_cap("--cap", args.cap if args.cap is not None else getattr(B, "n", 3))
    report = compare_cochains(B, cap, store=memo_store(args))
    ok = all(report[k] for k in report if k.startswith(("normalization", "cochain_condition")))
    if "right_justified_hh" in report:
        ok = ok and report["right_justified_hh"]
    lines = [
        f"{r['degree']} {json.dumps(r['simplex'], sort_keys=True)}: {'equal' if r['equal'] else 'differ'}"
        for r in report["rows"]
    ]
    lines.append(f"first difference in degree: {report['first_difference_degree']}")
    for k in sorted(report):
        if k.startswith(("normalization", "cochain_condition", "right_justified")):
            lines.append(f"{k}: {report[k]}")
    return (EXIT_OK if ok else EXIT_FAIL), report, lines


def _degrees(args):
    top = check_cap("--max-degree", args.max_degree)
    return list(range(top + 1))


def cmd_homology(args):
    X = resolve_space(args.space)
    try:
        groups = homology(X, _degrees(args))
    except RankOverflow as exc:
        raise UsageError(str(exc)) from None
    report = {"space": X.name, "homology": [h.to_json() for h in groups]}
    return EXIT_OK, report, [f"H_{h.k} = {h}" for h in groups]


def cmd_twisted_homology(args):
    B = resolve_space(args.base)
    G = resolve_group(args.group, B)
    if isinstance(G, LoopGroup):
        raise UsageError("twisted-homology needs a finite structure group")
    tau = resolve_tau(args.tau, B, G)
    degrees = _degrees(args)
    tp = TwistedProduct(G, B, tau)
    t = TwistingCochain(tp, args.homotopy, store=memo_store(args))
    try:
        cart = homology(tp, degrees)
        tens = homology(twisted_tensor_complex(G, B, t), degrees)
    except RankOverflow as exc:
        raise UsageError(str(exc)) from None
    diff = [
        {"k": a.k, "cartesian": a.to_json(), "tensor": b.to_json()}
        for a, b in zip(cart, tens) if a != b
    ]
    report = {
        "base": B.name,
        "group": G.name,
        "tau": tau.name,
        "cartesian": [h.to_json() for h in cart],
        "tensor": [h.to_json() for h in tens],
        "mismatches": diff,
        "ok": not diff,
    }
    lines = [f"H_{a.k}: cartesian {a}  tensor {b}" for a, b in zip(cart, tens)]
    lines.append("agree" if not diff else f"MISMATCH in degrees {[d['k'] for d in diff]}")
    return (EXIT_OK if not diff else EXIT_FAIL), report, lines


def cmd_validate(args):
    X = resolve_space(args.space)
    cap = check_cap("--cap", args.cap if args.cap is not None else 3)
    report = {"space": X.name}
    lines = []
    violations = validate_simplicial(X, cap)
    report["simplicial"] = violations
    dd = []
    for n in range(2, cap + 1):
        for s in X.nondegenerate(n):
            if linear(X.boundary, X.boundary(s)):
                dd.append(repr(s))
    report["d_squared"] = dd
    lines.append(f"simplicial identities: {len(violations)} violations")
    lines.append(f"d^2 = 0: {len(dd)} violations")
    bad = violations + dd
    if args.tau:
        G = resolve_group(args.group or "loop", X)
        tau = resolve_tau(args.tau, X, G)
        tv = validate_twisting_function(tau, cap)
        report["twisting"] = tv
        lines.append(f"twisting identities: {len(tv)} violations")
        bad = bad + tv
        if not isinstance(G, LoopGroup):
            tp = TwistedProduct(G, X, tau)
            tpv = validate_simplicial(tp, cap)
            tdd = [
                repr(s) for n in range(2, cap + 1) for s in tp.nondegenerate(n)
                if linear(tp.boundary, tp.boundary(s))
            ]
            report["twisted_product"] = tpv
            report["twisted_d_squared"] = tdd
            lines.append(f"twisted product identities: {len(tpv)} violations")
            lines.append(f"twisted d^2 = 0: {len(tdd)} violations")
            bad = bad + tpv + tdd
    lines.extend(f"  {v}" for v in bad[:20])
    report["ok"] = not bad
    return (EXIT_OK if not bad else EXIT_FAIL), report, lines


COMMANDS = {
    "verify": cmd_verify,
    "cochain": cmd_cochain,
    "compare-cochains": cmd_compare,
    "homology": cmd_homology,
    "twisted-homology": cmd_twisted_homology,
    "validate": cmd_validate,
}


# ---------------------------------------------------------------------------
# parser


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON report")
    common.add_argument("--out", help="write the report to this path")
    common.add_argument("--cap", type=int, help="degree cap")
    common.add_argument("--homotopy", choices=("h", "hh"), help="Eilenberg-Zilber homotopy")
    common.add_argument("--memo-dir", help=f"cochain memo directory (default ${CochainStore.ENV})")

    p = argparse.ArgumentParser(prog="eztwist", description="Eilenberg-Zilber maps and twisting cochains")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", parents=[common], help="run catalogue identities")
    v.add_argument("--identity", action="append", help="identity name or 'all' (repeatable)")
    v.add_argument("--max-total-degree", type=int, default=5)

    c = sub.add_parser("cochain", parents=[common], help="twisting cochain values")
    c.add_argument("--base", required=True)
    c.add_argument("--simplex", help="eN or a JSON simplex reference")

    cc = sub.add_parser("compare-cochains", parents=[common], help="H versus H~ cochains")
    cc.add_argument("--base", required=True)

    h = sub.add_parser("homology", parents=[common], help="integer homology of a space")
    h.add_argument("--space", required=True)
    h.add_argument("--max-degree", type=int, default=3)

    th = sub.add_parser("twisted-homology", parents=[common], help="twisted product versus twisted tensor product")
    th.add_argument("--base", required=True)
    th.add_argument("--group", default="Z/2")
    th.add_argument("--tau", default="canonical", help="trivial, canonical, a JSON path or inline JSON")
    th.add_argument("--max-degree", type=int, default=1)

    va = sub.add_parser("validate", parents=[common], help="simplicial and twisting validators")
    va.add_argument("--space", required=True)
    va.add_argument("--group")
    va.add_argument("--tau")
    return p


def provenance(args):
    out = {"command": args.command, "version": __version__}
    for key in ("homotopy", "cap", "max_total_degree", "max_degree", "base", "space", "group", "tau", "simplex", "identity"):
        if hasattr(args, key):
            out[key] = getattr(args, key)
    return out


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.homotopy is None and args.command != "verify":
        args.homotopy = "hh"
    try:
        code, report, lines = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"eztwist: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    report = {"provenance": provenance(args), "report": report}
    if args.json:
        text = json.dumps(report, sort_keys=True, indent=2) + "\n"
    else:
        text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
