"""Command-line front end: load JSON fixtures, run constructions and
classifiers, emit deterministic reports.

Exit codes: 0 success / PASS, 1 property FAIL (witness in the report),
2 input or usage error, 3 cardinality budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from . import serialize as ser
from .errors import BudgetError, DEFAULT_BUDGET, FinstacksError, InputError, InvariantViolation
from .groups import (
    as_groupoid,
    classify_strict,
    constant_simplicial_group,
    moore_fill,
    w_bar,
    w_total,
)
from .joins import dec as dec_op, join as join_op
from .kan import classify, horn_object, hom_set, match_object, nerve, to_terminal
from .paths import path_space
from .sset import coskeleton, pi0, validate, validate_map
from .shapes import boundary, generalized_horn, horn, materialize, standard_simplex
from .strict import strictify
from .verify import SUITES


def _parse_n(text: str):
    if text in ("inf", "infinity", "oo"):
        return math.inf
    return int(text)


def _emit(report: dict, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(report, sort_keys=True))
    else:
        for key in sorted(report):
            print(f"{key}: {report[key]}")


def _load_sset(path: str):
    doc, _ = ser.load(path)
    x = ser.sset_from_json(doc)
    bad = validate(x)
    if bad:
        raise InputError("input does not validate: " + bad[0])
    return x


def _load_map(path: str):
    doc, base = ser.load(path)
    f = ser.map_from_json(doc, base)
    bad = validate_map(f)
    if bad:
        raise InputError("map does not validate: " + bad[0])
    return f


def _parse_shape(spec: str):
    parts = spec.split(":")
    kind = parts[0]
    if kind == "delta":
        return standard_simplex(int(parts[1]))
    if kind == "boundary":
        return boundary(int(parts[1]))
    if kind == "horn":
        return horn(int(parts[1]), int(parts[2]))
    if kind == "hornj":
        return generalized_horn(int(parts[1]), tuple(int(v) for v in parts[2].split(",")))
    raise InputError(f"unknown shape spec {spec!r} (use delta:K, boundary:K, horn:K:I, hornj:K:J,J,...)")


def _verdict_exit(v) -> int:
    return 1 if v.status == "fail" else 0


def cmd_check(args) -> int:
    if args.map:
        f = _load_map(args.map)
    elif args.input:
        f = to_terminal(_load_sset(args.input))
    else:
        raise InputError("check needs --input or --map")
    v = classify(f, _parse_n(args.n), args.kind, args.budget)
    _emit(v.to_json(), args.format)
    return _verdict_exit(v)


def cmd_hom(args) -> int:
    X = _load_sset(args.input)
    shape, _ = materialize(_parse_shape(args.shape))
    h = hom_set(shape, X, args.budget)
    _emit({"shape": args.shape, "count": len(h)}, args.format)
    return 0


def cmd_horn(args) -> int:
    f = _load_map(args.map) if args.map else to_terminal(_load_sset(args.input))
    car = horn_object(f, args.k, args.i, args.budget)
    report = {"k": args.k, "i": args.i, "carrier_size": len(car)}
    if car.comparison is not None:
        report["surjective"] = car.is_surjective()
        report["injective"] = car.is_injective()
    _emit(report, args.format)
    return 0


def cmd_match(args) -> int:
    f = _load_map(args.map) if args.map else to_terminal(_load_sset(args.input))
    car = match_object(f, args.k, args.budget)
    report = {"k": args.k, "carrier_size": len(car)}
    if car.comparison is not None:
        report["surjective"] = car.is_surjective()
        report["injective"] = car.is_injective()
    _emit(report, args.format)
    return 0


def cmd_nerve(args) -> int:
    doc, _ = ser.load(args.group)
    G = ser.group_from_json(doc)
    N = nerve(as_groupoid(G), args.levels)
    ser.dump(ser.sset_to_json(N), args.output)
    _emit({"levels": list(N.sizes), "output": args.output}, args.format)
    return 0


def cmd_coskeleton(args) -> int:
    x = _load_sset(args.input)
    csk, unit = coskeleton(x, args.n, args.levels, args.budget)
    ser.dump(ser.sset_to_json(csk), args.output)
    _emit({"levels": list(csk.sizes), "output": args.output}, args.format)
    return 0


def cmd_join(args) -> int:
    a = _load_sset(args.left)
    b = _load_sset(args.right)
    j = join_op(a, b, args.levels, args.budget)
    ser.dump(ser.sset_to_json(j), args.output)
    _emit({"levels": list(j.sizes), "output": args.output}, args.format)
    return 0


def cmd_dec(args) -> int:
    x = _load_sset(args.input)
    d = dec_op(x, args.n, args.levels)
    ser.dump(ser.sset_to_json(d), args.output)
    _emit({"levels": list(d.sizes), "output": args.output}, args.format)
    return 0


def cmd_pathspace(args) -> int:
    f = _load_map(args.map)
    p = path_space(f, args.k, args.levels, args.budget)
    if args.output:
        ser.dump(ser.sset_to_json(p.carrier), args.output)
    report = {"levels": list(p.carrier.sizes)}
    if p.stack_verdict is not None and p.stack_verdict.status == "fail":
        report["warning"] = "input is not a stack on stored levels"
    _emit(report, args.format)
    return 0


def cmd_strictify(args) -> int:
    f = _load_map(args.map)
    s = strictify(f, args.n, args.budget)
    if args.output:
        ser.dump(ser.map_to_json(s.assembled), args.output)
    _emit({"levels": list(s.source.sizes), "output": args.output}, args.format)
    return 0


def cmd_group_check(args) -> int:
    doc, _ = ser.load(args.simplicial_group)
    G = ser.simplicial_group_from_json(doc)
    v = classify_strict(G, args.n, args.budget)
    _emit(v.to_json(), args.format)
    return _verdict_exit(v)


def cmd_moore_fill(args) -> int:
    if args.simplicial_group:
        doc, _ = ser.load(args.simplicial_group)
        G = ser.simplicial_group_from_json(doc)
    else:
        doc, _ = ser.load(args.group)
        G = constant_simplicial_group(ser.group_from_json(doc), max(args.k, 2))
    faces = [None if v.strip() in ("_", "-") else int(v) for v in args.faces.split(",")]
    filler = moore_fill(G, args.k, args.i, faces, args.seed_element)
    _emit({"filler": filler}, args.format)
    return 0


def cmd_wbar(args) -> int:
    if args.simplicial_group:
        doc, _ = ser.load(args.simplicial_group)
        G = ser.simplicial_group_from_json(doc)
    else:
        doc, _ = ser.load(args.group)
        G = constant_simplicial_group(ser.group_from_json(doc), args.levels)
    WB = w_bar(G, args.levels, args.budget)
    ser.dump(ser.sset_to_json(WB.with_flag(2 if args.levels >= 2 and not args.simplicial_group else None)
                              if not args.simplicial_group else WB), args.output)
    _emit({"levels": list(WB.sizes), "output": args.output}, args.format)
    return 0


def cmd_w(args) -> int:
    if args.simplicial_group:
        doc, _ = ser.load(args.simplicial_group)
        G = ser.simplicial_group_from_json(doc)
    else:
        doc, _ = ser.load(args.group)
        G = constant_simplicial_group(ser.group_from_json(doc), args.levels)
    W = w_total(G, args.levels, args.budget)
    ser.dump(ser.sset_to_json(W), args.output)
    _emit({"levels": list(W.sizes), "output": args.output}, args.format)
    return 0


def cmd_quotient(args) -> int:
    x = _load_sset(args.input)
    q = pi0(x)
    _emit({"classes": q.count, "quotient": list(q.quotient)}, args.format)
    return 0


def cmd_kspace(args) -> int:
    from .em import em_space

    doc, _ = ser.load(args.abelian)
    A = ser.group_from_json(doc)
    em = em_space(A, args.n, args.levels, args.budget)
    ser.dump(ser.simplicial_group_to_json(em.simplicial_group()), args.output)
    _emit({"levels": list(em.sset.sizes), "output": args.output}, args.format)
    return 0


def cmd_cocycle_check(args) -> int:
    from .em import group_cocycle_violation, normalize_check

    doc, base = ser.load(args.cocycle)
    G, A, n, values = ser.cocycle_from_json(doc, base)
    normalize_check(G, A, n, values)
    witness = group_cocycle_violation(G, A, n, values)
    if witness is not None:
        _emit({"verdict": "fail", "witness": list(witness)}, args.format)
        return 1
    _emit({"verdict": "pass", "n": n}, args.format)
    return 0


def _span_from_args(args):
    from .em import group_cocycle_as_span

    doc, base = ser.load(args.cocycle)
    G, A, n, values = ser.cocycle_from_json(doc, base)
    if args.group:
        gdoc, _ = ser.load(args.group)
        if ser.group_from_json(gdoc).mul != G.mul:
            raise InputError("--group disagrees with the cocycle document")
    if args.abelian:
        adoc, _ = ser.load(args.abelian)
        if ser.group_from_json(adoc).mul != A.mul:
            raise InputError("--abelian disagrees with the cocycle document")
    return group_cocycle_as_span(G, A, n, values, args.levels, args.budget)


def cmd_descend(args) -> int:
    from .em import descend

    span = _span_from_args(args)
    res = descend(span, args.budget)
    if args.output:
        ser.dump(ser.sset_to_json(res.two_group), args.output)
    _emit({
        "levels": list(res.two_group.sizes),
        "groupoid_verdict": res.groupoid_verdict.status,
        "output": args.output,
    }, args.format)
    return _verdict_exit(res.groupoid_verdict)


def cmd_extract(args) -> int:
    from .em import descend, extract_two_group_data

    span = _span_from_args(args)
    res = descend(span, args.budget)
    tg = extract_two_group_data(res, args.budget)
    if args.output:
        ser.dump(ser.two_group_data_to_json(tg), args.output)
    _emit({
        "pentagon_ok": tg.pentagon_ok,
        "torsor_ok": tg.torsor_ok,
        "zeta": list(tg.zeta),
        "output": args.output,
    }, args.format)
    return 0 if tg.pentagon_ok and tg.torsor_ok else 1


def cmd_verify(args) -> int:
    suite = SUITES.get(args.suite)
    if suite is None:
        raise InputError(f"unknown suite {args.suite!r}; choose from {sorted(SUITES)}")
    ok, lines = suite(args.seed, args.budget)
    for line in lines:
        print(line)
    print(f"suite {args.suite}: {'PASS' if ok else 'FAIL'}")
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="finstacks")
    sub = top.add_subparsers(dest="command", required=True)

    def common(p, output=False):
        p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
        p.add_argument("--format", choices=("text", "json"), default="text")
        if output:
            p.add_argument("-o", "--output", default=None)

    p = sub.add_parser("check", help="classify as n-groupoid / n-stack / n-hypercover")
    p.add_argument("--kind", choices=("groupoid", "stack", "hypercover"), required=True)
    p.add_argument("--n", required=True)
    p.add_argument("--input", help="simplicial set JSON (absolute classification)")
    p.add_argument("--map", help="simplicial map JSON (relative classification)")
    common(p)
    p.set_defaults(run=cmd_check)

    p = sub.add_parser("hom", help="count simplicial maps from a test shape")
    p.add_argument("--shape", required=True)
    p.add_argument("--input", required=True)
    common(p)
    p.set_defaults(run=cmd_hom)

    p = sub.add_parser("horn", help="relative or absolute horn object")
    p.add_argument("--input")
    p.add_argument("--map")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--i", type=int, required=True)
    common(p)
    p.set_defaults(run=cmd_horn)

    p = sub.add_parser("match", help="relative or absolute matching object")
    p.add_argument("--input")
    p.add_argument("--map")
    p.add_argument("--k", type=int, required=True)
    common(p)
    p.set_defaults(run=cmd_match)

    p = sub.add_parser("nerve", help="nerve of a finite group")
    p.add_argument("--group", required=True)
    p.add_argument("--levels", type=int, default=4)
    common(p, output=True)
    p.set_defaults(run=cmd_nerve)

    p = sub.add_parser("coskeleton", help="n-coskeleton up to a degree")
    p.add_argument("--input", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--levels", type=int, required=True)
    common(p, output=True)
    p.set_defaults(run=cmd_coskeleton)

    p = sub.add_parser("join", help="join of two simplicial sets")
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    p.add_argument("--levels", type=int, default=None)
    common(p, output=True)
    p.set_defaults(run=cmd_join)

    p = sub.add_parser("dec", help="decalage shift")
    p.add_argument("--input", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--levels", type=int, required=True)
    common(p, output=True)
    p.set_defaults(run=cmd_dec)

    p = sub.add_parser("pathspace", help="relative higher morphism space")
    p.add_argument("--map", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--levels", type=int, default=2)
    common(p, output=True)
    p.set_defaults(run=cmd_pathspace)

    p = sub.add_parser("strictify", help="n-strictification of a stack")
    p.add_argument("--map", required=True)
    p.add_argument("--n", type=int, required=True)
    common(p, output=True)
    p.set_defaults(run=cmd_strictify)

    p = sub.add_parser("group-check", help="strict n-group classification")
    p.add_argument("--simplicial-group", required=True)
    p.add_argument("--n", type=int, required=True)
    common(p)
    p.set_defaults(run=cmd_group_check)

    p = sub.add_parser("moore-fill", help="fill a horn in a simplicial group")
    p.add_argument("--simplicial-group")
    p.add_argument("--group", help="constant simplicial group on a finite group")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--faces", required=True, help="comma-separated ids, _ at the missing index")
    p.add_argument("--seed-element", type=int, default=None)
    common(p)
    p.set_defaults(run=cmd_moore_fill)

    p = sub.add_parser("wbar", help="classifying object W-bar G")
    p.add_argument("--simplicial-group")
    p.add_argument("--group")
    p.add_argument("--levels", type=int, default=4)
    common(p, output=True)
    p.set_defaults(run=cmd_wbar)

    p = sub.add_parser("w", help="universal bundle total space W G")
    p.add_argument("--simplicial-group")
    p.add_argument("--group")
    p.add_argument("--levels", type=int, default=4)
    common(p, output=True)
    p.set_defaults(run=cmd_w)

    p = sub.add_parser("quotient", help="pi0: coequalizer of the face maps")
    p.add_argument("--input", required=True)
    common(p)
    p.set_defaults(run=cmd_quotient)

    p = sub.add_parser("kspace", help="Eilenberg-MacLane object K(A,n)")
    p.add_argument("--abelian", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--levels", type=int, required=True)
    common(p, output=True)
    p.set_defaults(run=cmd_kspace)

    p = sub.add_parser("cocycle-check", help="normalization and cocycle identity")
    p.add_argument("--cocycle", required=True)
    common(p)
    p.set_defaults(run=cmd_cocycle_check)

    p = sub.add_parser("descend", help="build the 2-group of a 3-cocycle")
    p.add_argument("--cocycle", required=True)
    p.add_argument("--group")
    p.add_argument("--abelian")
    p.add_argument("--levels", type=int, default=4)
    common(p, output=True)
    p.set_defaults(run=cmd_descend)

    p = sub.add_parser("extract", help="reduce a descended 2-group to cover/torsor/zeta data")
    p.add_argument("--cocycle", required=True)
    p.add_argument("--group")
    p.add_argument("--abelian")
    p.add_argument("--levels", type=int, default=4)
    common(p, output=True)
    p.set_defaults(run=cmd_extract)

    p = sub.add_parser("verify", help="run a built-in property suite")
    p.add_argument("--suite", required=True)
    p.add_argument("--seed", type=int, default=0)
    common(p)
    p.set_defaults(run=cmd_verify)

    return top


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.run(args)
    except BudgetError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return 3
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except InvariantViolation as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except FinstacksError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
