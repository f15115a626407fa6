"""Command-line interface.

Exit codes: 0 consistent (or all checks passed), 2 obstructed (or a
reproduction check failed), 1 error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Sequence

from . import __version__
from .complexes import CAP_ENV, load_complex
from .config import frac_json, frac_text, load_json, parse_config, parse_spec
from .errors import FloerCurvesError, UnsupportedMixedCase
from .homology import a_s_subcomplex, reduce_complex, v_s_oracle, v_top_bot_oracle, _resolve_level
from .knotified import composite_full_model, v_top_bot_composite
from .obstructions import check, cross_validate
from .scenarios import SCENARIOS, run_scenario
from .semigroups import NumericalSemigroup, counting_function

EXIT_OK, EXIT_ERROR, EXIT_FLAGGED = 0, 1, 2


def _dump(doc) -> None:
    json.dump(doc, sys.stdout, indent=2, sort_keys=True)
    sys.stdout.write("\n")


def _derived(config) -> dict:
    spec = config.spec
    return {
        "kappa_pos": spec.kappa_pos,
        "kappa_neg": spec.kappa_neg,
        "eta_pos": spec.eta_pos,
        "eta_neg": spec.eta_neg,
        "delta1": spec.delta1,
        "delta2": spec.delta2,
        "rho": config.rho,
        "g3": config.cusp_genus,
        "expected_genus": config.expected_genus,
    }


def cmd_check(args) -> int:
    doc = load_json(args.config)
    config = parse_config(doc, allow_genus_slack=args.allow_genus_slack or None)
    report = check(config)
    R = config.counting_function()
    d = config.degree
    cross = None
    cross_ok = True
    if args.validate_with_oracle:
        cross = cross_validate(config)
        cross_ok = all(c.top_ok == r.lower_ok and c.bot_ok == r.upper_ok for c, r in zip(cross, report.rows))
    code = EXIT_FLAGGED if report.obstructed else EXIT_OK
    if not cross_ok:
        code = EXIT_ERROR

    if args.json:
        env = {
            "tool": "floercurves",
            "version": __version__,
            "input": doc,
            "derived": _derived(config),
            "r_table": [
                {"k": r.k, "R(kd-1)": R(r.k * d - 1), "R(kd)": R(r.k * d), "R(kd+1)": R(r.k * d + 1)}
                for r in report.rows
            ],
            "report": {
                "family": report.family,
                "verdict": report.verdict,
                "witnesses": [{"k": k, "side": side} for k, side in report.witnesses],
                "rows": [
                    {"k": r.k, "upper": {"lhs": r.upper_lhs, "rhs": r.upper_rhs, "ok": r.upper_ok},
                     "lower": {"lhs": r.lower_lhs, "rhs": r.lower_rhs, "ok": r.lower_ok}}
                    for r in report.rows
                ],
            },
            "exit_code": code,
        }
        if cross is not None:
            env["cross_validation"] = {
                "agrees": cross_ok,
                "rows": [
                    {"k": c.k, "spinc": c.index, "v_top": frac_json(c.v_top), "v_bot": frac_json(c.v_bot),
                     "d_top": frac_json(c.d_top), "d_bot": frac_json(c.d_bot)}
                    for c in cross
                ],
            }
        _dump(env)
        return code

    der = _derived(config)
    print(f"degree {d}  genus {config.genus}  cusps {len(config.cusps)}  family {report.family}")
    print("  ".join(f"{k} {v}" for k, v in der.items()))
    print(f"{'k':>4} {'upper':>8} {'<=':>6} {'':>3} {'lower':>8} {'>=':>6} {'':>3}")
    for r in report.rows:
        print(f"{r.k:>4} {r.upper_lhs:>8} {r.upper_rhs:>6} {'ok' if r.upper_ok else 'NO':>3} "
              f"{r.lower_lhs:>8} {r.lower_rhs:>6} {'ok' if r.lower_ok else 'NO':>3}")
    if cross is not None:
        print("cross-validation through V^top/V^bot:", "agrees" if cross_ok else "DISAGREES")
        for c in cross:
            print(f"  k={c.k} spinc={c.index} Vtop={frac_text(c.v_top)} Vbot={frac_text(c.v_bot)} "
                  f"dtop={frac_text(c.d_top)} dbot={frac_text(c.d_bot)}")
    wit = ", ".join(f"k={k} {side}" for k, side in report.witnesses)
    print(f"verdict {report.verdict}" + (f" ({wit})" if wit else ""))
    return code


def cmd_semigroup(args) -> int:
    S = NumericalSemigroup(tuple(args.generators))
    R = counting_function(S)
    rows = [{"k": k, "R": R(k), "member": k in S} for k in range(args.upto)]
    if args.json:
        _dump({"generators": list(S.generators), "genus": S.genus, "frobenius": S.frobenius, "rows": rows})
        return EXIT_OK
    print(f"semigroup <{','.join(map(str, S.generators))}>  genus {S.genus}  frobenius {S.frobenius}")
    for row in rows:
        print(f"{row['k']:>6} {row['R']:>6} {'*' if row['member'] else ''}")
    return EXIT_OK


def cmd_vtable(args) -> int:
    spec = parse_spec(load_json(args.spec))
    R = spec.counting_function()
    span = R.tail_offset + spec.kappa_pos + spec.kappa_neg + spec.genus + 1
    lo = -span if args.s_min is None else args.s_min
    hi = span if args.s_max is None else args.s_max
    full = None
    if args.validate_with_oracle:
        full = composite_full_model(spec)
    rows = []
    code = EXIT_OK
    for s in range(lo, hi + 1):
        v = R(R.tail_offset + s) - s
        try:
            top, bot = v_top_bot_composite(spec, s)
        except UnsupportedMixedCase:
            if full is None:
                raise
            top = bot = None
        row = {"s": s, "V": v, "top": top, "bot": bot, "oracle": None}
        if full is not None:
            o_top, o_bot = v_top_bot_oracle(full[0], full[1], s)
            if top is None:
                row["top"], row["bot"], row["oracle"] = o_top, o_bot, "oracle-only"
            else:
                agree = (o_top, o_bot) == (top, bot)
                row["oracle"] = "ok" if agree else "MISMATCH"
                if not agree:
                    code = EXIT_ERROR
        rows.append(row)
    if args.json:
        _dump({
            "spec": {"delta1": spec.delta1, "delta2": spec.delta2, "genus": spec.genus, "g3": R.tail_offset},
            "rows": [{"s": r["s"], "V": r["V"], "V_top": frac_json(r["top"]), "V_bot": frac_json(r["bot"]),
                      "oracle": r["oracle"]} for r in rows],
        })
        return code
    print(f"delta1 {spec.delta1}  delta2 {spec.delta2}  genus {spec.genus}  g3 {R.tail_offset}")
    print(f"{'s':>5} {'V':>6} {'V_top':>8} {'V_bot':>8}" + ("  oracle" if full is not None else ""))
    for r in rows:
        tail = f"  {r['oracle']}" if full is not None else ""
        print(f"{r['s']:>5} {r['V']:>6} {frac_text(r['top']):>8} {frac_text(r['bot']):>8}{tail}")
    return code


def cmd_oracle(args) -> int:
    C, actions = load_complex(args.complex)
    if args.s is not None:
        levels = [Fraction(args.s)]
    else:
        lo = -2 if args.s_min is None else args.s_min
        hi = 2 if args.s_max is None else args.s_max
        levels = [Fraction(s) for s in range(lo, hi + 1)]
    rows = []
    for s in levels:
        row = {"s": s, "V": v_s_oracle(C, s)}
        if actions:
            row["top"], row["bot"] = v_top_bot_oracle(C, actions, s)
        if args.stats:
            C2, t, _ = _resolve_level(C, s)
            red = reduce_complex(a_s_subcomplex(C2, t))
            row["stats"] = {"free_rank": red.free_rank, "torsion_summands": len(red.torsion), "pivots": red.pivots}
        rows.append(row)
    if args.json:
        out = []
        for r in rows:
            item = {"s": frac_json(r["s"]), "V": frac_json(r["V"])}
            if "top" in r:
                item["V_top"], item["V_bot"] = frac_json(r["top"]), frac_json(r["bot"])
            if "stats" in r:
                item["stats"] = r["stats"]
            out.append(item)
        _dump({"generators": len(C), "actions": len(actions), "rows": out})
        return EXIT_OK
    print(f"generators {len(C)}  actions {len(actions)}")
    for r in rows:
        line = f"s={frac_text(r['s'])}  V={frac_text(r['V'])}"
        if "top" in r:
            line += f"  V_top={frac_text(r['top'])}  V_bot={frac_text(r['bot'])}"
        if "stats" in r:
            st = r["stats"]
            line += f"  [free {st['free_rank']}, torsion {st['torsion_summands']}, pivots {st['pivots']}]"
        print(line)
    return EXIT_OK


def cmd_repro(args) -> int:
    names = list(SCENARIOS) if args.name == "all" else [args.name]
    if args.name != "all" and args.name not in SCENARIOS:
        raise FloerCurvesError(f"unknown scenario {args.name!r}; choose from all, {', '.join(SCENARIOS)}")
    results = [run_scenario(n) for n in names]
    if args.json:
        _dump([{"name": r.name, "passed": r.passed,
                "checks": [c.__dict__ for c in r.checks]} for r in results])
    else:
        for r in results:
            print(f"[{'PASS' if r.passed else 'FAIL'}] {r.name}")
            for c in r.checks:
                print(f"    {'ok ' if c.passed else 'BAD'} {c.label}: expected {c.expected}, computed {c.computed}")
    return EXIT_OK if all(r.passed for r in results) else EXIT_FLAGGED


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="floercurves", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="evaluate the obstruction inequalities for a curve configuration")
    c.add_argument("config")
    c.add_argument("--json", action="store_true")
    c.add_argument("--allow-genus-slack", action="store_true")
    c.add_argument("--validate-with-oracle", action="store_true",
                   help="recompute every row through V^top/V^bot and the surgery formula")
    c.set_defaults(func=cmd_check)

    s = sub.add_parser("semigroup", help="tabulate the counting function of a semigroup")
    s.add_argument("generators", type=int, nargs="+")
    s.add_argument("--upto", type=int, default=20)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_semigroup)

    v = sub.add_parser("vtable", help="V, V^top and V^bot of a composite knot")
    v.add_argument("spec")
    v.add_argument("--s-min", type=int)
    v.add_argument("--s-max", type=int)
    v.add_argument("--json", action="store_true")
    v.add_argument("--validate-with-oracle", action="store_true",
                   help="recompute each row on the chain-level model")
    v.set_defaults(func=cmd_vtable)

    o = sub.add_parser("oracle", help="V_s (and V^top/V^bot) of a complex file",
                       epilog=f"{CAP_ENV} overrides the generator cap")
    o.add_argument("complex")
    o.add_argument("--s", type=Fraction)
    o.add_argument("--s-min", type=int)
    o.add_argument("--s-max", type=int)
    o.add_argument("--stats", action="store_true")
    o.add_argument("--json", action="store_true")
    o.set_defaults(func=cmd_oracle)

    r = sub.add_parser("repro", help="rerun a named reproduction scenario")
    r.add_argument("name", help="all, " + ", ".join(SCENARIOS))
    r.add_argument("--json", action="store_true")
    r.set_defaults(func=cmd_repro)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UnsupportedMixedCase as exc:
        print(f"error: {exc} (rerun vtable with --validate-with-oracle for small models)", file=sys.stderr)
        return EXIT_ERROR
    except (FloerCurvesError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
