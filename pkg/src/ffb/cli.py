"""Command line front end.

One line of output per computed instance, JSON by default and CSV with
--format csv.  Identical argv and seed give byte-identical output once
timing is excluded (--no-timing); scan results are emitted in instance
order no matter how many worker processes run.

Exit codes: 0 success, 1 hard failure (a proven bound or cross-check did
not hold), 2 usage error (bad flags, bad set spec, bad field parameters).
"""

from __future__ import annotations

import argparse
import concurrent.futures
import csv
import json
import math
import os
import shlex
import sys
import time

from . import bounds, counters, selfcheck, sumprod
from .errors import FfbError, IntegerOverflow, RoundingDrift
from .field import FieldSpec, make_field
from .repfn import FqSubset
from .setsgen import SetSpec, derive_seed, parse_setspec, realize

USAGE_ERRORS = (
    "NotPrime", "Reducible", "Overflow", "BadParam", "BadExponent",
    "LambdaZero", "NotPrimeField", "NoNontrivialCharacter",
)

SET_SLOTS = {
    "count": ("a", "b", "c", "d"),
    "countT": ("a", "b", "c", "d"),
    "det2": ("a", "b", "c", "d"),
    "solvability": ("a", "b", "c", "d"),
    "exceptional": ("f", "g", "h"),
    "sumprod": ("x", "y"),
    "bounds": ("a", "b"),
}

LAMBDA_OPS = {"count", "countn", "det2", "solvability", "bounds"}


class _Usage(Exception):
    pass


def _field_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--p", type=int, required=True, help="field characteristic")
    parser.add_argument("--k", type=int, default=1, help="extension degree")
    parser.add_argument("--modulus", type=str, default=None,
                        help="comma separated modulus coefficients, constant first")
    parser.add_argument("--max-q", type=int, default=None, help="override the q cap")
    parser.add_argument("--seed", type=int, default=0, help="base seed for random sets")
    parser.add_argument("--format", choices=("json", "csv"), default="json")
    parser.add_argument("--no-timing", action="store_true",
                        help="omit elapsed_us from the output")


def _set_args(parser: argparse.ArgumentParser, slots, repeatable=False) -> None:
    for slot in slots:
        if repeatable:
            parser.add_argument(f"--{slot}", action="append", required=True,
                                metavar="SPEC", help=f"set {slot} (repeatable)")
        else:
            parser.add_argument(f"--{slot}", required=True, metavar="SPEC",
                                help=f"set {slot}")


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="ffb", description=__doc__.splitlines()[0])
    top.add_argument("--script", type=str, default=None,
                     help="file of command lines to replay; other args ignored")
    sub = top.add_subparsers(dest="op")

    for op in ("count", "det2", "solvability"):
        p = sub.add_parser(op)
        _field_args(p)
        _set_args(p, SET_SLOTS[op])
        p.add_argument("--lambda", dest="lam", required=True,
                       help="target code, or all / all0")

    p = sub.add_parser("countT")
    _field_args(p)
    _set_args(p, SET_SLOTS["countT"])

    p = sub.add_parser("countn")
    _field_args(p)
    _set_args(p, ("a", "b"), repeatable=True)
    p.add_argument("--lambda", dest="lam", required=True)

    p = sub.add_parser("exceptional")
    _field_args(p)
    _set_args(p, SET_SLOTS["exceptional"])

    p = sub.add_parser("bounds")
    _field_args(p)
    _set_args(p, SET_SLOTS["bounds"])
    p.add_argument("--c", default=None, metavar="SPEC")
    p.add_argument("--d", default=None, metavar="SPEC")
    p.add_argument("--lambda", dest="lam", default=None)
    p.add_argument("--r-max", type=int, default=8, help="sweep moment parameter 1..r_max")
    p.add_argument("--use-p", action="store_true",
                   help="use the characteristic instead of q in the moment bound")

    p = sub.add_parser("sumprod")
    _field_args(p)
    _set_args(p, SET_SLOTS["sumprod"])

    p = sub.add_parser("scan")
    _field_args(p)
    p.add_argument("--op", dest="scan_op", required=True,
                   choices=("count", "countT", "countn", "det2", "solvability",
                            "exceptional", "bounds", "sumprod"))
    for slot in ("a", "b"):
        p.add_argument(f"--{slot}", action="append", default=None, metavar="SPEC")
    for slot in ("c", "d", "f", "g", "h", "x", "y"):
        p.add_argument(f"--{slot}", default=None, metavar="SPEC")
    p.add_argument("--lambda", dest="lam", default=None)
    p.add_argument("--r-max", type=int, default=8)
    p.add_argument("--use-p", action="store_true")
    p.add_argument("--seeds", type=int, default=1, help="number of seeded instances")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")

    p = sub.add_parser("selftest")
    p.add_argument("--q-max", type=int, default=13)
    p.add_argument("--tuples", type=int, default=selfcheck.GRID_TUPLES)
    p.add_argument("--seed", type=int, default=0)

    return top


# ----------------------------------------------------------------------
# instance computation
# ----------------------------------------------------------------------

def _parse_lambda(field: FieldSpec, text: str | None) -> list[int | None]:
    if text is None:
        return [None]
    if text == "all":
        return list(range(1, field.q))
    if text == "all0":
        return list(range(field.q))
    try:
        lam = int(text)
    except ValueError:
        raise _Usage(f"--lambda must be an integer, all, or all0; got {text!r}")
    if not 0 <= lam < field.q:
        raise _Usage(f"--lambda {lam} outside [0, {field.q})")
    return [lam]


def _sanitize(value):
    if isinstance(value, float) and not math.isfinite(value):
        return None
    return value


def _realize_slots(field: FieldSpec, specs: list[tuple[str, SetSpec]],
                   seed: int) -> dict[str, FqSubset]:
    out = {}
    for slot_index, (name, spec) in enumerate(specs):
        out[name] = realize(field, spec, derive_seed(seed, slot_index))
    return out


def _compute(op: str, field: FieldSpec, sets: dict[str, FqSubset],
             lam: int | None, extra: dict) -> tuple[dict, bool]:
    """Result fields for one instance; second value is overall health."""
    if op == "count":
        n = counters.count_bilinear(field, sets["a"], sets["b"], sets["c"], sets["d"], lam)
        n_char, main, err = counters.count_bilinear_charform(
            field, sets["a"], sets["b"], sets["c"], sets["d"], lam)
        return ({"n": n, "n_charform": n_char, "main": main, "err": err},
                n == n_char)
    if op == "countT":
        t = counters.count_additive(field, sets["a"], sets["b"], sets["c"], sets["d"])
        t_char, main, err = counters.count_additive_charform(
            field, sets["a"], sets["b"], sets["c"], sets["d"])
        return ({"t": t, "t_charform": t_char, "main": main, "err": err},
                t == t_char)
    if op == "countn":
        pairs = extra["pairs"]
        n = counters.count_general(field, [(sets[a], sets[b]) for a, b in pairs], lam)
        ok = True
        if len(pairs) == 2:
            (a1, b1), (a2, b2) = pairs
            ok = n == counters.count_bilinear(field, sets[a1], sets[b1],
                                              sets[a2], sets[b2], lam)
        return {"n": n, "n_pairs": len(pairs)}, ok
    if op == "det2":
        n = sumprod.count_determinant2(field, sets["a"], sets["b"], sets["c"],
                                       sets["d"], lam)
        return {"n": n}, True
    if op == "exceptional":
        e = counters.exceptional_set(field, sets["f"], sets["g"], sets["h"])
        ok = counters.verify_sarkozy_identity(field, sets["f"], sets["g"], sets["h"])
        ratio = e.size * sets["f"].size * sets["g"].size * sets["h"].size / field.q ** 3
        return {"e_size": e.size, "sarkozy_ok": ok, "ratio": ratio}, ok
    if op == "solvability":
        rep = bounds.solvability_threshold_check(
            field, sets["a"], sets["b"], sets["c"], sets["d"], lam)
        n = counters.count_bilinear(field, sets["a"], sets["b"], sets["c"],
                                    sets["d"], lam)
        ok = (not rep.holds) or n > 0
        return ({"n": n, "main": rep.bound_value, "threshold": rep.w_or_v,
                 "fires": rep.holds, "empirical_delta": _sanitize(rep.empirical_delta)},
                ok)
    if op == "sumprod":
        count, lower = sumprod.garaev_solution_count(field, sets["x"], sets["y"])
        u = sumprod.sumset(field, sets["x"], sets["y"])
        v = sumprod.productset(field, sets["x"], sets["y"])
        c0 = None
        if field.k == 1:
            c0 = _sanitize(sumprod.garaev_inequality_report(field, sets["x"], sets["y"]))
        return ({"count": count, "lower": lower, "ok": count >= lower,
                 "u_size": u.size, "v_size": v.size, "c0_ratio": c0},
                count >= lower)
    if op == "bounds":
        return _compute_bounds(field, sets, lam, extra)
    raise AssertionError(f"unknown op {op}")


def _compute_bounds(field: FieldSpec, sets: dict[str, FqSubset],
                    lam: int | None, extra: dict) -> tuple[dict, bool]:
    a, b = sets["a"], sets["b"]
    out: dict = {}
    ok = True
    rep_v = bounds.vinogradov_check(field, a, b)
    out["v"] = rep_v.w_or_v
    out["v_argmax"] = rep_v.argmax_j
    out["vinogradov_v"] = {"bound": rep_v.bound_value, "ratio": rep_v.ratio,
                           "holds": rep_v.holds}
    ok = ok and rep_v.holds
    if lam is not None:
        rep_w = bounds.vinogradov_check(field, a, b, lam)
        out["w"] = rep_w.w_or_v
        out["w_argmax"] = rep_w.argmax_j
        out["vinogradov_w"] = {"bound": rep_w.bound_value, "ratio": rep_w.ratio,
                               "holds": rep_w.holds}
        ok = ok and rep_w.holds
        sweep = []
        for r in range(1, extra.get("r_max", 8) + 1):
            kr = bounds.karatsuba_report(field, a, b, lam, r=r,
                                         use_p=extra.get("use_p", False))
            sweep.append({"r": r, "bound": kr.bound_value, "ratio": kr.ratio})
        out["karatsuba"] = sweep
        if "c" in sets and "d" in sets:
            rep_c = bounds.cauchy_error_check(field, a, b, sets["c"], sets["d"], lam)
            out["cauchy"] = {"err": rep_c.w_or_v, "bound": rep_c.bound_value,
                             "ratio": rep_c.ratio, "holds": rep_c.holds,
                             "strict": rep_c.strict}
            ok = ok and rep_c.holds
    return out, ok


# ----------------------------------------------------------------------
# records and output
# ----------------------------------------------------------------------

def _run_instance(op: str, field_params: dict, spec_slots: list[tuple[str, str]],
                  lam: int | None, seed: int, index: int | None,
                  extra: dict, with_timing: bool) -> tuple[dict, bool]:
    field = make_field(**field_params)
    specs = [(name, parse_setspec(text)) for name, text in spec_slots]
    sets = _realize_slots(field, specs, seed)
    start = time.perf_counter()
    results, ok = _compute(op, field, sets, lam, extra)
    elapsed = time.perf_counter() - start
    record: dict = {"op": op}
    if index is not None:
        record["index"] = index
    record["field"] = {"p": field.p, "k": field.k, "q": field.q,
                       "modulus": list(field.modulus)}
    record["sets"] = {name: spec.text() for name, spec in specs}
    record["seed"] = seed
    if lam is not None or op in LAMBDA_OPS:
        record["lambda"] = lam
    record.update(results)
    if with_timing:
        record["elapsed_us"] = int(elapsed * 1e6)
    return record, ok


def _scan_worker(payload: tuple) -> tuple[dict, bool]:
    return _run_instance(*payload)


def _flatten(record: dict, prefix: str = "") -> dict:
    flat: dict = {}
    for key, value in record.items():
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            flat.update(_flatten(value, name + "."))
        elif isinstance(value, list):
            flat[name] = json.dumps(value)
        else:
            flat[name] = value
    return flat


class _Emitter:
    def __init__(self, fmt: str):
        self.fmt = fmt
        self.writer = None

    def emit(self, record: dict) -> None:
        if self.fmt == "json":
            sys.stdout.write(json.dumps(record) + "\n")
            return
        flat = _flatten(record)
        if self.writer is None:
            self.writer = csv.DictWriter(sys.stdout, fieldnames=list(flat))
            self.writer.writeheader()
        self.writer.writerow(flat)


# ----------------------------------------------------------------------
# subcommand drivers
# ----------------------------------------------------------------------

def _field_params(args) -> dict:
    modulus = None
    if args.modulus is not None:
        try:
            modulus = [int(tok) for tok in args.modulus.split(",")]
        except ValueError:
            raise _Usage(f"--modulus must be comma separated integers, got {args.modulus!r}")
    return {"p": args.p, "k": args.k, "modulus": modulus, "max_q": args.max_q}


def _one(value, name: str) -> str:
    """Unwrap a possibly-appended flag value down to one spec string."""
    if isinstance(value, list):
        if len(value) != 1:
            raise _Usage(f"--{name} given {len(value)} times, expected once")
        value = value[0]
    if value is None:
        raise _Usage(f"--{name} is required")
    return value


def _slots_from_args(args, op: str) -> tuple[list[tuple[str, str]], dict]:
    extra: dict = {}
    if op == "countn":
        a_specs = args.a or []
        b_specs = args.b or []
        if len(a_specs) != len(b_specs) or not a_specs:
            raise _Usage("countn needs equally many --a and --b, at least one each")
        slots = []
        pairs = []
        for i, (sa, sb) in enumerate(zip(a_specs, b_specs)):
            slots.append((f"a{i}", sa))
            slots.append((f"b{i}", sb))
            pairs.append((f"a{i}", f"b{i}"))
        extra["pairs"] = pairs
        return slots, extra
    if op == "bounds":
        slots = [("a", _one(args.a, "a")), ("b", _one(args.b, "b"))]
        if (args.c is None) != (args.d is None):
            raise _Usage("bounds needs --c and --d together or neither")
        if args.c is not None:
            slots += [("c", args.c), ("d", args.d)]
        extra["r_max"] = args.r_max
        extra["use_p"] = args.use_p
        return slots, extra
    slots = [(name, _one(getattr(args, name), name)) for name in SET_SLOTS[op]]
    return slots, extra


def _run_simple(args, op: str) -> int:
    field_params = _field_params(args)
    slots, extra = _slots_from_args(args, op)
    probe = make_field(**field_params)
    lams = _parse_lambda(probe, getattr(args, "lam", None)) if op in LAMBDA_OPS else [None]
    emitter = _Emitter(args.format)
    all_ok = True
    for lam in lams:
        record, ok = _run_instance(op, field_params, slots, lam, args.seed, None,
                                   extra, not args.no_timing)
        emitter.emit(record)
        all_ok = all_ok and ok
    return 0 if all_ok else 1


def _run_scan(args) -> int:
    op = args.scan_op
    field_params = _field_params(args)
    slots, extra = _slots_from_args(args, op)
    probe = make_field(**field_params)
    lams = _parse_lambda(probe, args.lam) if op in LAMBDA_OPS else [None]
    if args.seeds < 1:
        raise _Usage(f"--seeds must be >= 1, got {args.seeds}")
    payloads = []
    index = 0
    for s in range(args.seeds):
        seed = derive_seed(args.seed, s)
        for lam in lams:
            payloads.append((op, field_params, slots, lam, seed, index, extra,
                             not args.no_timing))
            index += 1
    if args.jobs <= 1:
        outcomes = [_scan_worker(p) for p in payloads]
    else:
        with concurrent.futures.ProcessPoolExecutor(max_workers=args.jobs) as pool:
            outcomes = list(pool.map(_scan_worker, payloads))
    emitter = _Emitter(args.format)
    all_ok = True
    for record, ok in outcomes:
        emitter.emit(record)
        all_ok = all_ok and ok
    return 0 if all_ok else 1


def _run_selftest(args) -> int:
    results = selfcheck.run_selftest(q_max=args.q_max, tuples=args.tuples,
                                     base_seed=args.seed)
    failed = 0
    for name, ok, detail in results:
        print(f"{'PASS' if ok else 'FAIL'} {name}: {detail}")
        failed += 0 if ok else 1
    print(f"selftest: {len(results) - failed}/{len(results)} criteria passed")
    return 0 if failed == 0 else 1


def _run_script(path: str) -> int:
    worst = 0
    try:
        with open(path, "r", encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        print(f"ffb: cannot read script {path}: {exc}", file=sys.stderr)
        return 2
    for line in lines:
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        worst = max(worst, run(shlex.split(line)))
    return worst


def run(argv: list[str] | None = None) -> int:
    """Parse argv and execute; returns the process exit code."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.script is not None:
        return _run_script(args.script)
    if args.op is None:
        parser.print_usage(sys.stderr)
        return 2
    try:
        if args.op == "selftest":
            return _run_selftest(args)
        if args.op == "scan":
            return _run_scan(args)
        return _run_simple(args, args.op)
    except _Usage as exc:
        print(f"ffb: {exc}", file=sys.stderr)
        return 2
    except (RoundingDrift, IntegerOverflow) as exc:
        print(f"ffb: hard failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except FfbError as exc:
        if type(exc).__name__ in USAGE_ERRORS:
            print(f"ffb: {type(exc).__name__}: {exc}", file=sys.stderr)
            return 2
        print(f"ffb: hard failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    try:
        code = run()
        sys.stdout.flush()
    except BrokenPipeError:
        # downstream reader closed the pipe (ffb scan ... | head); exit
        # quietly instead of dumping a traceback
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        sys.exit(1)
    sys.exit(code)


if __name__ == "__main__":
    main()
