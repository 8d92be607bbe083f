"""Command-line toolkit emitting reproducible JSON reports.

Every report embeds a run manifest (subcommand, flags, input digests, seed,
worker count, tool version); reports carry no timestamps and all randomness
is seeded, so re-running an identical manifest reproduces the report
byte-for-byte.  Exit codes: 0 all asserted properties hold, 1 a property was
violated, 2 malformed input or refused budget.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import random
import sys
from pathlib import Path

from . import __version__
from .bounds import (
    bound_report,
    construct_lower_tight,
    construct_upper_tight,
    triangular_B,
    triangular_number,
)
from .conditions import (
    ClassificationBudgetError,
    CLASSIFY_BUDGET,
    classify_all,
    condition_profile,
    up_invariant,
    verify_average_lemma,
    wsc_lower,
)
from .energy import GroupSpec, SubsetPair, energy_bounds, n2_from_energy, product_set
from .formats import (
    InputFormatError,
    function_table_to_dict,
    load_cayley_csv,
    load_code_assignment,
    load_function_table,
    load_poly,
    load_subset,
)
from .functable import (
    EnumerationBudgetError,
    FunctionTable,
    collision_count,
    image_count,
    spectrum,
)
from .gf import FieldPoly, FieldSpec, primitive_elements, prime_power_decomposition


def _digest_file(args, path) -> None:
    p = Path(path)
    if p.is_file():
        args._digests[str(path)] = hashlib.sha256(p.read_bytes()).hexdigest()


def _maybe_digest(args, source: str) -> None:
    if not source.lstrip().startswith(("{", "[")):
        _digest_file(args, source)


# -- subcommand handlers ------------------------------------------------------

def _cmd_stats(args):
    _digest_file(args, args.table)
    table = load_function_table(args.table)
    spec = spectrum(table)
    n2 = collision_count(table, 2)
    result = {
        "n": table.domain_size,
        "image_count": image_count(table),
        "spectrum": {str(r): spec.counts[r] for r in range(1, spec.m + 1) if spec.counts[r]},
        "max_multiplicity": spec.m,
        "collision_count_2": n2,
        "collision_count_3": collision_count(table, 3),
        "n2_even": n2 % 2 == 0,
        "m1_lower": max(0, table.domain_size - n2),
    }
    return result, 0 if result["n2_even"] else 1


def _cmd_bounds(args):
    report = bound_report(args.n, args.s, args.t)
    return report.to_dict(), 0


def _cmd_bk(args):
    bk, witness = triangular_B(args.k)
    return {
        "k": args.k,
        "b_k": bk,
        "witness_parts": list(witness.parts),
        "witness_triangulars": [triangular_number(r) for r in witness.parts],
        "weight": witness.weight,
    }, 0


def _cmd_construct(args):
    if args.kind == "lower":
        table = construct_lower_tight(args.n, args.t)
        target_v = args.n - args.t // 2
    else:
        if args.t % 2:
            raise InputFormatError("upper construction needs an even collision count")
        table = construct_upper_tight(args.n, args.t // 2)
        bk, _ = triangular_B(args.t // 2)
        target_v = args.n - bk
    achieved_v = image_count(table)
    achieved_n2 = collision_count(table, 2)
    result = {
        "kind": args.kind,
        "n": args.n,
        "t": args.t,
        "table": function_table_to_dict(table),
        "target_image_count": target_v,
        "achieved_image_count": achieved_v,
        "achieved_collision_count": achieved_n2,
    }
    ok = achieved_v == target_v and achieved_n2 == args.t
    return result, 0 if ok else 1


def _cmd_field(args):
    modulus = _parse_modulus(args.modulus)
    spec = FieldSpec(args.p, args.k, modulus)
    prims = primitive_elements(spec)
    result = {
        "p": spec.p,
        "k": spec.k,
        "q": spec.q,
        "modulus": list(spec.modulus) if spec.modulus else None,
        "modulus_canonical": modulus is None,
        "primitive_count": len(prims),
        "primitive_elements": [e.value for e in prims] if spec.q <= 1024 else None,
        "trace_of_one": spec.trace_int(1),
    }
    return result, 0


def _cmd_test_conditions(args):
    _maybe_digest(args, args.poly)
    poly = load_poly(args.poly)
    profile = condition_profile(poly)
    from .gf import poly_table

    table = poly_table(poly)
    u = up_invariant(poly)
    result = {
        "q": poly.spec.q,
        "modulus": list(poly.spec.modulus) if poly.spec.modulus else None,
        "coeffs": list(poly.coeffs),
        "profile": profile.to_dict(),
        "image_count": image_count(table),
        "up_invariant": u,
        "wsc_lower": wsc_lower(poly),
        "lattice_ok": profile.lattice_ok(),
    }
    return result, 0 if profile.lattice_ok() else 1


def _cmd_classify(args):
    modulus = _parse_modulus(args.modulus)
    budget = args.budget if args.budget is not None else CLASSIFY_BUDGET
    summary = classify_all(args.q, budget=budget, jobs=args.jobs, modulus=modulus)
    violations = sum(
        cnt
        for mask, cnt in summary.mask_counts.items()
        if (mask[0] == "1" and mask[1] == "0")
        or (mask[0] == "1" and mask[2] == "0")
        or (mask[2] == "1" and mask[3] == "0")
        or (mask[1] == "1" and mask[3] == "0")
    )
    result = summary.to_dict()
    result["derived"] = {
        "lattice_violations": violations,
        "c2_set_equals_c3_set": summary.count_where(c2=True, c3=False) == 0
        and summary.count_where(c2=False, c3=True) == 0,
        "c2_and_c3_outside_c1": summary.count_where(c1=False, c2=True, c3=True),
    }
    return result, 0 if violations == 0 else 1


def _cmd_verify_lemma(args):
    polys = []
    if args.poly:
        _maybe_digest(args, args.poly)
        polys.append(load_poly(args.poly))
        q = polys[0].spec.q
    else:
        if args.q is None:
            raise InputFormatError("verify-lemma needs --poly or --q with --random")
        p, k = prime_power_decomposition(args.q)
        spec = FieldSpec(p, k)
        rng = random.Random(args.seed)
        for _ in range(args.random):
            coeffs = [rng.randrange(spec.q) for _ in range(spec.q)]
            polys.append(FieldPoly(spec, coeffs))
        q = spec.q
    expected = q * (q - 1)
    entries = []
    all_ok = True
    for poly in polys:
        total, ok = verify_average_lemma(poly)
        all_ok = all_ok and ok
        entries.append({"coeffs": list(poly.coeffs), "sum": total, "ok": ok})
    result = {"q": q, "expected": expected, "count": len(entries), "polys": entries}
    return result, 0 if all_ok else 1


def _build_group(args) -> GroupSpec:
    picked = [x for x in (args.cyclic, args.product, args.cayley) if x is not None]
    if len(picked) != 1:
        raise InputFormatError("give exactly one of --cyclic, --product, --cayley")
    if args.cyclic is not None:
        return GroupSpec.cyclic(args.cyclic)
    if args.product is not None:
        orders = [int(x) for x in args.product.split(",") if x.strip()]
        return GroupSpec.product_of_cyclics(orders)
    _digest_file(args, args.cayley)
    return load_cayley_csv(args.cayley)


def _cmd_energy(args):
    group = _build_group(args)
    for source in (args.a, args.b):
        _maybe_digest(args, source)
    pair = SubsetPair(group, tuple(load_subset(args.a)), tuple(load_subset(args.b)))
    report = energy_bounds(pair)
    prod = product_set(pair)
    n2 = n2_from_energy(pair)
    sandwich_ok = report.lower_int <= len(prod) <= report.upper_int
    result = {
        "group": {"kind": group.kind, "order": group.order},
        "a_size": len(pair.a),
        "b_size": len(pair.b),
        "n": len(pair.a) * len(pair.b),
        "energy": report.extras["energy"],
        "collision_count": n2,
        "product_set_size": len(prod),
        "product_set": list(prod) if len(prod) <= 1000 else None,
        "bounds": report.to_dict(),
        "sandwich_ok": sandwich_ok,
    }
    return result, 0 if sandwich_ok else 1


def _cmd_code_bounds(args):
    _digest_file(args, args.assignment)
    table, codewords, messages = load_code_assignment(args.assignment)
    n = table.domain_size
    t = collision_count(table, 2)
    v = image_count(table)
    report = bound_report(n, 2, t)
    within = report.lower_int <= v <= report.upper_int
    result = {
        "codewords": n,
        "distinct_messages": v,
        "collision_count": t,
        "bounds": report.to_dict(),
        "messages_within_bounds": within,
        "note": (
            "bounds apply to the number of distinct messages actually used "
            "(the image count of the assignment), with t the ordered count of "
            "distinct-codeword pairs sharing a message"
        ),
    }
    return result, 0 if within else 1


# -- plumbing -----------------------------------------------------------------

def _parse_modulus(text: str | None):
    if text is None:
        return None
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise InputFormatError(f"modulus must be comma-separated integers: {exc}") from exc


def _build_manifest(args) -> dict:
    skip = {"handler", "_digests", "out"}
    options = {}
    for key, value in vars(args).items():
        if key in skip:
            continue
        options[key] = value
    return {
        "tool": "valuesets",
        "version": __version__,
        "subcommand": args.subcommand,
        "options": options,
        "input_digests": dict(sorted(args._digests.items())),
        "seed": getattr(args, "seed", 0),
        "jobs": getattr(args, "jobs", 1),
    }


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="valuesets",
        description="Image-set statistics, collision bounds, and finite-field planarity conditions",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(sp):
        sp.add_argument("--out", help="also write the JSON report to this path")
        sp.add_argument("--seed", type=int, default=0, help="RNG seed (default 0)")
        sp.add_argument(
            "--jobs", type=int, default=1, help="worker count for sharded subcommands"
        )
        sp.add_argument(
            "--budget", type=int, default=None, help="enumeration budget override"
        )

    sp = sub.add_parser("stats", help="statistics of a function table file")
    sp.add_argument("table", help="JSON or CSV function table")
    common(sp)
    sp.set_defaults(handler=_cmd_stats)

    sp = sub.add_parser("bounds", help="two-sided image-count bounds from (n, s, t)")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--s", type=int, default=2)
    sp.add_argument("--t", type=int, required=True)
    common(sp)
    sp.set_defaults(handler=_cmd_bounds)

    sp = sub.add_parser("bk", help="minimal triangular-decomposition weight B_k")
    sp.add_argument("--k", type=int, required=True)
    common(sp)
    sp.set_defaults(handler=_cmd_bk)

    sp = sub.add_parser("construct", help="build a bound-attaining function table")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--t", type=int, required=True, help="target pair-collision count")
    sp.add_argument("--kind", choices=("lower", "upper"), default="lower")
    common(sp)
    sp.set_defaults(handler=_cmd_construct)

    sp = sub.add_parser("field", help="describe GF(p^k) and its primitive elements")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--k", type=int, default=1)
    sp.add_argument("--modulus", help="little-endian coefficients incl. leading 1")
    common(sp)
    sp.set_defaults(handler=_cmd_field)

    sp = sub.add_parser("test-conditions", help="condition profile of a polynomial")
    sp.add_argument("--poly", required=True, help="polynomial spec JSON (path or inline)")
    common(sp)
    sp.set_defaults(handler=_cmd_test_conditions)

    sp = sub.add_parser("classify", help="profile all q^q value tables over GF(q)")
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--modulus", help="little-endian coefficients incl. leading 1")
    common(sp)
    sp.set_defaults(handler=_cmd_classify)

    sp = sub.add_parser("verify-lemma", help="check sum_a N_2(f+aX) == q(q-1)")
    sp.add_argument("--poly", help="polynomial spec JSON (path or inline)")
    sp.add_argument("--q", type=int, help="field size for --random mode")
    sp.add_argument("--random", type=int, default=25, help="number of random polynomials")
    common(sp)
    sp.set_defaults(handler=_cmd_verify_lemma)

    sp = sub.add_parser("energy", help="multiplicative energy bounds for subset pairs")
    sp.add_argument("--cyclic", type=int, help="cyclic group Z_n")
    sp.add_argument("--product", help="direct product of cyclics, e.g. 2,3,4")
    sp.add_argument("--cayley", help="CSV Cayley table path")
    sp.add_argument("--a", required=True, help="subset A as JSON array (path or inline)")
    sp.add_argument("--b", required=True, help="subset B as JSON array (path or inline)")
    common(sp)
    sp.set_defaults(handler=_cmd_energy)

    sp = sub.add_parser("code-bounds", help="redundancy bounds for a code assignment")
    sp.add_argument("assignment", help="CSV of codeword,message rows")
    common(sp)
    sp.set_defaults(handler=_cmd_code_bounds)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args._digests = {}
    try:
        result, code = args.handler(args)
    except (ValueError, OSError, EnumerationBudgetError, ClassificationBudgetError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    report = {"manifest": _build_manifest(args), "result": result}
    text = json.dumps(report, indent=2, sort_keys=True)
    print(text)
    if args.out:
        Path(args.out).write_text(text + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
