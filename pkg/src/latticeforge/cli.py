"""Command-line entry point: ``latticeforge <subcommand>``.

Exit status is 0 on pass, 1 on fail, 2 on usage errors and 3 when a check
stopped at its budget without a verdict.
"""

from __future__ import annotations

import argparse
import json
import os
import string
import sys
import time

from . import checks
from .constructions import sl2 as sl2mod
from .constructions import ulm as ulmmod
from .freeprod import FreeProduct
from .groups import CapExceeded, group_from_spec
from .order import JoinSemilattice, Poset, PosetError, antichain, chain, completion, diamond
from .reports import EXIT_CODES, EXIT_USAGE, INCONCLUSIVE, VerificationReport, dumps
from .valuation import containment_matrices, realize_lattice, verify_intermediate_correspondence

NAMED_POSETS = {
    "singleton": lambda: chain(1),
    "chain2": lambda: chain(2),
    "chain3": lambda: chain(3),
    "antichain2": lambda: antichain(2),
    "diamond": diamond,
}


class UsageError(Exception):
    pass


def load_poset(arg: str) -> Poset:
    """A poset from a JSON file, or one of the built-in names."""
    if arg in NAMED_POSETS and not os.path.exists(arg):
        return NAMED_POSETS[arg]()
    try:
        return Poset.load(arg)
    except FileNotFoundError:
        raise UsageError(f"no such poset file {arg!r} (built-in names: {', '.join(NAMED_POSETS)})") from None
    except PosetError as exc:
        raise UsageError(str(exc)) from None


def parse_group(text: str):
    """``cyclic:2``, ``symmetric:3``, ``free:1`` ... or a JSON group spec."""
    text = text.strip()
    try:
        if text.startswith("{"):
            return group_from_spec(json.loads(text))
        kind, _, arg = text.partition(":")
        key = {"free": "rank"}.get(kind, "n")
        return group_from_spec({"kind": kind, key: int(arg)})
    except (ValueError, json.JSONDecodeError) as exc:
        raise UsageError(f"bad group spec {text!r}: {exc}") from None


def parse_free_product(text: str) -> FreeProduct:
    """``Z2*Z3`` (generators s, t, u, ...) or a JSON free-product spec."""
    text = text.strip()
    try:
        if text.startswith("{"):
            return FreeProduct.from_spec(json.loads(text))
        factors = []
        for part in text.split("*"):
            part = part.strip()
            if not (part[:1] in "ZC" and part[1:].isdigit()):
                raise ValueError(f"expected Zn, got {part!r}")
            factors.append(group_from_spec({"kind": "cyclic", "n": int(part[1:])}))
        names = list(string.ascii_lowercase[18:]) + list(string.ascii_lowercase[:18])
        return FreeProduct(factors, names[: len(factors)])
    except (ValueError, KeyError, json.JSONDecodeError) as exc:
        raise UsageError(f"bad free-product spec {text!r}: {exc}") from None


# -- subcommands ------------------------------------------------------------


def cmd_complete(args) -> tuple[dict, int]:
    P = load_poset(args.poset)
    lat = completion(P)
    out = lat.to_json()
    out["elements"] = [[P.labels[i] for i in sorted(e)] for e in lat.elements]
    return out, 0


def cmd_realize(args) -> tuple[dict, int]:
    P = load_poset(args.poset)
    try:
        sl = JoinSemilattice(P)
    except PosetError as exc:
        raise UsageError(f"realize needs a join semilattice with 0: {exc}") from None
    group = parse_group(args.factor)
    rl = realize_lattice(sl, group, element_budget=args.budget_elems, rounds=args.budget_rounds)
    inc, cont = containment_matrices(rl, args.ball)
    corr = verify_intermediate_correspondence(rl, L=min(args.ball, 2))
    ideals = [sorted(P.labels[i] for i in d.members) for d in rl.ideals()]
    status = "pass" if inc == cont and corr.ok else "fail"
    out = {
        "poset": P.to_json(),
        "factor": group.spec_json(),
        "trace": rl.trace,
        "ideals": ideals,
        "ideal_inclusion": inc,
        "ball_containment": cont,
        "ball": args.ball,
        "witnessed": corr.witnessed,
        "not_covered": corr.not_covered,
        "correspondence_failures": corr.failures[:20],
        "status": status,
    }
    return out, 0 if status == "pass" else 1


VERIFY_FLAGS = {
    # check -> {cli dest: keyword}
    "word-calculus": {"ball": "ball"},
    "power-growth": {"ball": "ball", "nmax": "nmax", "merge_aware": "merge_aware"},
    "playing-with-words": {"ball": "z_ball", "L": "L"},
    "elem-permutation": {"n": "n"},
    "valuation-axioms": {"total": "total", "budget_elems": "element_budget"},
    "step1-uniqueness": {"ball": "ball"},
    "theorem-g": {"ball": "ball"},
    "sl2": {"cap": "cap"},
    "remark-identity": {"ball": "ball"},
    "ulm-phi": {"posets": "posets"},
}


def cmd_verify(args) -> tuple[dict, int]:
    fn = checks.CHECKS[args.check]
    kwargs = {"timing": args.timing}
    for dest, kw in VERIFY_FLAGS[args.check].items():
        val = getattr(args, dest)
        if val is not None and val is not False:
            kwargs[kw] = val
    if args.check == "ulm-phi":
        kwargs["seed"] = args.seed
    rep: VerificationReport = fn(**kwargs)
    rep.seed = args.seed
    return rep, rep.exit_code


def cmd_word(args) -> tuple[dict, int]:
    spec = parse_free_product(args.spec)
    try:
        x = spec.parse(args.expression)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return {"input": args.expression, "normal_form": spec.format(x), "length": len(x), "word": spec.to_json(x)}, 0


def cmd_sl2(args) -> tuple[dict, int]:
    P = load_poset(args.poset)
    try:
        c = sl2mod.build_sl2(args.p, args.m, P)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    try:
        out = sl2mod.sl2_report(c, args.cap)
    except CapExceeded as exc:
        return {"poset": P.to_json(), "module_size": c.module_size(), "cap": args.cap,
                "reason": str(exc), "status": INCONCLUSIVE}, EXIT_CODES[INCONCLUSIVE]
    out["status"] = "pass" if out["matches_down_sets"] else "fail"
    return out, 0 if out["matches_down_sets"] else 1


def cmd_ulm(args) -> tuple[dict, int]:
    try:
        U = ulmmod.ulm_group(args.p, args.lam)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    out = U.to_json()
    ok = U.exponent == args.p**args.lam
    out["status"] = "pass" if ok else "fail"
    return out, 0 if ok else 1


# -- argument parsing ---------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pretty", action="store_true", help="human-readable summary instead of JSON")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized checks (default 0)")
    common.add_argument(
        "--jobs",
        type=int,
        default=int(os.environ.get("LATTICEFORGE_JOBS", "1")),
        help="worker count (default $LATTICEFORGE_JOBS or 1); checks currently run in one process",
    )
    common.add_argument("--timing", action="store_true", help="include wall time (makes output run-dependent)")

    ap = argparse.ArgumentParser(prog="latticeforge", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("complete", parents=[common], help="lattice of down-sets of a poset")
    p.add_argument("poset", help="poset JSON file or a built-in name")
    p.set_defaults(func=cmd_complete)

    p = sub.add_parser("realize", parents=[common], help="realize a finite join semilattice by a valuation")
    p.add_argument("poset")
    p.add_argument("--factor", default="cyclic:2", help="factor group, e.g. cyclic:2 or a JSON spec")
    p.add_argument("--budget-elems", type=int, default=None, help="elements processed per round")
    p.add_argument("--budget-rounds", type=int, default=1)
    p.add_argument("--ball", type=int, default=4, help="ball radius for the containment census")
    p.set_defaults(func=cmd_realize)

    p = sub.add_parser("verify", parents=[common], help="run a named check")
    p.add_argument("check", choices=sorted(checks.CHECKS))
    p.add_argument("--ball", type=int)
    p.add_argument("--nmax", type=int)
    p.add_argument("--merge-aware", action="store_true")
    p.add_argument("--L", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--total", type=int)
    p.add_argument("--budget-elems", type=int)
    p.add_argument("--cap", type=int)
    p.add_argument("--posets", type=int)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("word", parents=[common], help="normal form of a product of generators")
    p.add_argument("expression")
    p.add_argument("--spec", default="Z2*Z3", help="free product, e.g. Z2*Z3 (generators s, t) or JSON")
    p.set_defaults(func=cmd_word)

    p = sub.add_parser("sl2", parents=[common], help="invariant subgroups of the SL2 module")
    p.add_argument("--p", type=int, default=2)
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--poset", default="chain2")
    p.add_argument("--cap", type=int, default=1 << 16)
    p.set_defaults(func=cmd_sl2)

    p = sub.add_parser("ulm", parents=[common], help="finite Ulm truncation")
    p.add_argument("--p", type=int, default=2)
    p.add_argument("--lambda", dest="lam", type=int, default=2)
    p.set_defaults(func=cmd_ulm)
    return ap


def _pretty(result) -> str:
    if isinstance(result, VerificationReport):
        return result.summary()
    lines = []
    for k, v in result.items():
        if isinstance(v, (list, dict)):
            v = json.dumps(v)
            if len(v) > 100:
                v = v[:97] + "..."
        lines.append(f"{k}: {v}")
    return "\n".join(lines)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    t0 = time.perf_counter()
    try:
        result, code = args.func(args)
    except UsageError as exc:
        print(f"latticeforge: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.timing and isinstance(result, dict):
        result["seconds"] = round(time.perf_counter() - t0, 3)
    if args.pretty:
        print(_pretty(result))
    else:
        print(result.to_json() if isinstance(result, VerificationReport) else dumps(result))
    return code


if __name__ == "__main__":
    sys.exit(main())
