"""Command-line front end: ``stab <subcommand> [flags]``.

Machine-readable output goes to stdout and diagnostics to stderr. Exit codes
are 0 on success or PASS, 1 on a verification FAIL and 2 on bad input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from fractions import Fraction
from pathlib import Path
from typing import Callable

from . import continuum
from .census import (
    CSV_HEADER,
    DEFAULT_MAX_N,
    REMARK_A,
    REMARK_B,
    BudgetExceeded,
    census,
    census_csv,
    dump_extremal_sets,
    sharpness_census,
    verify_remark_sets,
)
from .continuum import IntervalUnion
from .errors import InconsistencyError, StabError
from .freiman import (
    classify,
    decompose_critical,
    freiman_3k4_pair_check,
    grynkiewicz_check,
    grynkiewicz_params,
)
from .intset import (
    IntSet,
    format_set_literal,
    k_fold_sum,
    parse_int_literal,
    prefix_count,
    set_capacity,
    stats,
    sumset,
)
from .report import FAIL, PASS, Report, format_value
from .stability import (
    construct_extremal_disc,
    h_disc,
    h_disc_monotone_scan,
    is_left_stable,
    satisfies_theorem_hypotheses,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

_INTERVAL = re.compile(r"\[\s*([^,\]]+)\s*,\s*([^\]]+)\s*\]")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:
        self.print_usage(sys.stderr)
        raise UsageError(message)


# ---------------------------------------------------------------- input parsing


def _err(msg: str) -> None:
    print(msg, file=sys.stderr)


def _int_set(text: str, label: str) -> tuple[IntSet, int]:
    """Parse an integer set literal, translating to min 0 when it has negatives."""
    values = parse_int_literal(text)
    if not values:
        raise UsageError(f"--{label}: empty set")
    offset = min(values) if values[0] < 0 else 0
    if offset:
        _err(f"note: --{label} translated by {-offset} to make it nonnegative")
    return IntSet(v - offset for v in values), offset


def _union(text: str, label: str) -> IntervalUnion:
    """Interval union from inline JSON, a JSON file path, or ``[a,b],[c,d]``."""
    stripped = text.strip()
    if stripped.startswith("{"):
        return IntervalUnion.from_json(stripped)
    path = Path(stripped)
    if path.is_file():
        return IntervalUnion.from_json(path.read_text())
    pairs = _INTERVAL.findall(stripped)
    rest = _INTERVAL.sub("", stripped).replace(",", "").strip()
    if not pairs or rest:
        raise UsageError(f"--{label}: expected JSON, a JSON file or [p/q,r/s],... literal")
    return IntervalUnion(pairs)


def _rational(text: str) -> Fraction:
    return continuum.as_rational(text)


def _int_x(text: str) -> int:
    value = _rational(text)
    if value.denominator != 1:
        raise UsageError(f"--x must be an integer here, got {text}")
    return int(value)


def _need(args: argparse.Namespace, *names: str) -> None:
    missing = [f"--{n.replace('_', '-')}" for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"{args.command} needs {', '.join(missing)}")


# ---------------------------------------------------------------- output


def _emit_report(report: Report, fmt: str) -> int:
    if fmt == "json":
        payload = {k: format_value(v) for k, v in report.fields.items()}
        payload["RESULT"] = report.result
        print(json.dumps(payload))
    else:
        sys.stdout.write(report.to_text())
    return EXIT_OK if report.passed else EXIT_FAIL


def _emit_fields(fields: dict[str, object], fmt: str) -> None:
    if fmt == "json":
        print(json.dumps({k: format_value(v) for k, v in fields.items()}))
    else:
        for key, val in fields.items():
            print(f"{key}={format_value(val)}")


def _union_out(u: IntervalUnion, fmt: str) -> str:
    return u.to_json() if fmt == "json" else continuum.format_union(u)


# ---------------------------------------------------------------- subcommands


def cmd_sumset(args: argparse.Namespace) -> int:
    _need(args, "a")
    a, oa = _int_set(args.a, "a")
    b, ob = _int_set(args.b, "b") if args.b is not None else (a, oa)
    result = sumset(a, b) if args.k is None else k_fold_sum(a, args.k)
    offset = oa + ob if args.k is None else args.k * oa
    print(format_set_literal(result, offset))
    return EXIT_OK


def cmd_stable(args: argparse.Namespace) -> int:
    if args.a is None:
        raise UsageError("stable needs --a")
    if args.continuous:
        rep = continuum.is_left_stable_cont(_union(args.a, "a"))
        fields = {"STABLE": rep.stable}
        if rep.witness is not None:
            fields["WITNESS"] = f"[{rep.witness[0]},{rep.witness[1]}]"
    else:
        a, _ = _int_set(args.a, "a")
        rep = is_left_stable(a)
        fields = {"STABLE": rep.stable, "WITNESS": rep.witness}
    result = PASS if rep.stable else FAIL
    return _emit_report(Report(result, fields), args.format)


def cmd_hdisc(args: argparse.Namespace) -> int:
    _need(args, "n", "x")
    params = h_disc(args.n, _int_x(args.x))
    if args.format == "text":
        print(params.value)
    else:
        _emit_fields({"N": params.n, "X": params.x, "K": params.k, "H": params.value}, args.format)
    return EXIT_OK


def cmd_hcont(args: argparse.Namespace) -> int:
    _need(args, "x")
    d = _rational(args.d) if args.d is not None else Fraction(1)
    value = continuum.h_cont(_rational(args.x), d)
    if args.format == "text":
        print(value)
    else:
        _emit_fields({"X": _rational(args.x), "D": d, "H": value}, args.format)
    return EXIT_OK


def cmd_extremal_disc(args: argparse.Namespace) -> int:
    _need(args, "n", "x")
    print(format_set_literal(construct_extremal_disc(args.n, _int_x(args.x))))
    return EXIT_OK


def cmd_extremal_cont(args: argparse.Namespace) -> int:
    _need(args, "x")
    d = _rational(args.d) if args.d is not None else Fraction(1)
    print(_union_out(continuum.construct_extremal_cont(_rational(args.x), d), args.format))
    return EXIT_OK


def cmd_classify(args: argparse.Namespace) -> int:
    _need(args, "a")
    a, _ = _int_set(args.a, "a")
    cls = classify(a)
    st = stats(a)
    _emit_fields({
        "SIZE": st.cardinality, "N_A": st.n_a, "SUMSET_SIZE": cls.sum_size,
        "BOUND": cls.bound, "CATEGORY": cls.category.value,
    }, args.format)
    return EXIT_OK


def cmd_decompose(args: argparse.Namespace) -> int:
    _need(args, "a")
    a, _ = _int_set(args.a, "a")
    dec = decompose_critical(a)
    _emit_fields({
        "A1": format_set_literal(dec.a1) or "none",
        "RUN": (dec.run_start, dec.run_end),
        "A2": format_set_literal(dec.a2) or "none",
        "N_A": dec.n_a, "STEP": dec.step, "OFFSET": dec.offset,
    }, args.format)
    return EXIT_OK


def cmd_grynkiewicz(args: argparse.Namespace) -> int:
    _need(args, "a", "b")
    a, _ = _int_set(args.a, "a")
    b, _ = _int_set(args.b, "b")
    if args.mode == "3k4":
        return _emit_report(freiman_3k4_pair_check(a, b), args.format)
    s_prime = args.s_prime
    if s_prime is None:
        s_prime = grynkiewicz_params(len(a), len(b)).s_prime_max
    return _emit_report(grynkiewicz_check(a, b, s_prime), args.format)


def cmd_ruzsa(args: argparse.Namespace) -> int:
    if args.a is None and args.b is None:
        from .sweeps import RUZSA_SEED, sweep_ruzsa
        seed = RUZSA_SEED if args.seed is None else args.seed
        res = sweep_ruzsa(args.count, seed)
        print(res.summary())
        for failure in res.failures[:10]:
            _err(f"counterexample: {failure}")
        return EXIT_OK if res.passed else EXIT_FAIL
    _need(args, "a", "b")
    try:
        rep = continuum.ruzsa_check(_union(args.a, "a"), _union(args.b, "b"))
    except InconsistencyError as exc:
        rep = exc.details["report"]
    fields = {
        "RATIO": rep.ratio, "K": rep.K, "SUM_MEASURE": rep.sum_measure,
        "BRANCH1": rep.branch1_holds, "BRANCH2": rep.branch2_holds,
    }
    return _emit_report(Report(PASS if rep.holds else FAIL, fields), args.format)


def cmd_envelope(args: argparse.Namespace) -> int:
    _need(args, "a")
    a = _union(args.a, "a")
    if args.at is not None:
        return _emit_report(continuum.envelope_check(a, _rational(args.at)), args.format)
    return _emit_report(continuum.critical_envelope_check(a), args.format)


def cmd_census(args: argparse.Namespace) -> int:
    _need(args, "n")
    if args.n > args.max_n:
        raise UsageError(f"n={args.n} exceeds --max-n {args.max_n}")
    kwargs = {"jobs": args.jobs, "budget": args.budget}
    if args.x is not None:
        rows = [sharpness_census(args.n, _int_x(args.x), strict=False, **kwargs)]
    else:
        rows = census(args.n, **kwargs)
    if args.format == "json":
        print(json.dumps([dict(zip(CSV_HEADER, r.csv_row())) for r in rows]))
    else:
        sys.stdout.write(census_csv(rows))
    if args.dump_sets:
        Path(args.dump_sets).write_text(dump_extremal_sets(rows))
    bad = [r for r in rows if not r.sharp]
    for r in bad:
        _err(f"n={r.n} x={r.x}: achieved {r.achieved_max}, bound {r.bound}")
    return EXIT_FAIL if bad else EXIT_OK


def cmd_emit_curve(args: argparse.Namespace) -> int:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(("x", "h"))
    if args.n is not None:
        for x in range(2, args.n + 1):
            writer.writerow((x, h_disc(args.n, x).value))
    else:
        d = _rational(args.d) if args.d is not None else Fraction(1)
        if args.grid_denominator < 1:
            raise UsageError("--grid-denominator must be positive")
        for i in range(1, args.grid_denominator + 1):
            x = d * Fraction(i, args.grid_denominator)
            writer.writerow((x, continuum.h_cont(x, d)))
    sys.stdout.write(buf.getvalue())
    return EXIT_OK


# ---------------------------------------------------------------- fixtures


def _fixture_checks() -> list[tuple[str, Callable[[], bool]]]:
    rem_a = IntSet(parse_int_literal(REMARK_A))

    def kfold() -> bool:
        return all(
            k_fold_sum(rem_a, k) & IntSet.interval(0, 48) == rem_a for k in range(1, 6)
        )

    def cont_grid() -> bool:
        for q in range(1, 25):
            for p in range(1, q + 1):
                if Fraction(p, q).denominator == q:
                    continuum.construct_extremal_cont(Fraction(p, q), 1)
        return True

    def census_sharp() -> bool:
        return all(r.sharp for n in range(2, 25) for r in census(n))

    def remark_members() -> bool:
        sets = [rem_a, IntSet(parse_int_literal(REMARK_B))]
        return all(satisfies_theorem_hypotheses(s) and prefix_count(s, 13) == 4 for s in sets)

    return [
        ("remark_a_self_sum", lambda: sumset(rem_a, rem_a) & IntSet.interval(0, 48) == rem_a),
        ("remark_a_k_fold", kfold),
        ("remark_a_prefix13", lambda: prefix_count(rem_a, 13) == 4),
        ("remark_a_stable", lambda: is_left_stable(rem_a).stable),
        ("h_disc_48_13", lambda: (h_disc(48, 13).k, h_disc(48, 13).value) == (4, 3)),
        ("h_disc_48_12", lambda: (h_disc(48, 12).k, h_disc(48, 12).value) == (5, 3)),
        ("h_disc_monotone_48", lambda: h_disc_monotone_scan(48)),
        ("extremal_disc_48_13", lambda: format_set_literal(construct_extremal_disc(48, 13))
         == REMARK_A),
        ("extremal_disc_48_12_prefix", lambda: prefix_count(construct_extremal_disc(48, 12), 12) == 4),
        ("remark_sets", lambda: verify_remark_sets().passed),
        ("remark_sets_in_class", remark_members),
        ("census_sharp", census_sharp),
        ("extremal_cont_grid24", cont_grid),
        ("h_cont_1", lambda: continuum.h_cont(1, 1) == Fraction(1, 2)),
        ("h_cont_1_2", lambda: continuum.h_cont(Fraction(1, 2), 1) == Fraction(1, 6)),
        ("emit_curve_discrete_13", lambda: h_disc(48, 13).value == 3),
    ]


def cmd_verify_paper(args: argparse.Namespace) -> int:
    failed = 0
    for name, check in _fixture_checks():
        try:
            ok = bool(check())
            detail = ""
        except (StabError, InconsistencyError) as exc:
            ok, detail = False, f" ({exc})"
        failed += not ok
        print(f"{PASS if ok else FAIL} {name}{detail}")
    print(f"RESULT={FAIL if failed else PASS}")
    return EXIT_FAIL if failed else EXIT_OK


# ---------------------------------------------------------------- parser


COMMANDS: dict[str, Callable[[argparse.Namespace], int]] = {
    "sumset": cmd_sumset,
    "stable": cmd_stable,
    "hdisc": cmd_hdisc,
    "hcont": cmd_hcont,
    "extremal-disc": cmd_extremal_disc,
    "extremal-cont": cmd_extremal_cont,
    "classify": cmd_classify,
    "decompose": cmd_decompose,
    "grynkiewicz": cmd_grynkiewicz,
    "ruzsa": cmd_ruzsa,
    "envelope": cmd_envelope,
    "census": cmd_census,
    "verify-paper": cmd_verify_paper,
    "emit-curve": cmd_emit_curve,
}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("text", "csv", "json"), default="text")
    common.add_argument("--cap", type=int, help="bitset capacity (max element)")

    parser = _Parser(prog="stab", description="Left-stable set arithmetic and checks.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name: str, help_: str, *flags: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_, parents=[common])
        for flag in flags:
            if flag in ("n", "k", "s_prime"):
                p.add_argument(f"--{flag.replace('_', '-')}", type=int, dest=flag)
            else:
                p.add_argument(f"--{flag}")
        return p

    add("sumset", "A+B, or kA with --k", "a", "b", "k")
    add("stable", "left-stability with witness", "a").add_argument(
        "--continuous", action="store_true", help="read --a as an interval union")
    add("hdisc", "discrete bound h(x) for diameter n", "n", "x")
    add("hcont", "continuous bound h(x) for diameter d", "x", "d")
    add("extremal-disc", "discrete extremal construction", "n", "x")
    add("extremal-cont", "continuous extremal construction", "x", "d")
    add("classify", "Freiman category of A", "a")
    add("decompose", "split a critical set", "a")
    add("grynkiewicz", "pair checks", "a", "b", "s_prime").add_argument(
        "--mode", choices=("prop", "3k4"), default="prop")
    p = add("ruzsa", "Ruzsa's inequality; seeded random sweep without --a/--b", "a", "b")
    p.add_argument("--seed", type=int)
    p.add_argument("--count", type=int, default=10_000)
    add("envelope", "critical-set envelope check", "a", "at")
    p = add("census", "exhaustive census for diameter n", "n", "x")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--max-n", type=int, default=DEFAULT_MAX_N)
    p.add_argument("--budget", type=float, help="wall-clock limit in seconds")
    p.add_argument("--dump-sets", help="write extremal sets to this file")
    add("verify-paper", "run the bundled fixture checks")
    p = add("emit-curve", "CSV of (x, h(x))", "n", "d")
    p.add_argument("--grid-denominator", type=int, default=60)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.cap is not None:
            set_capacity(args.cap)
        return COMMANDS[args.command](args)
    except UsageError as exc:
        _err(f"stab: error: {exc}")
        return EXIT_USAGE
    except BudgetExceeded as exc:
        _err(f"stab: {exc}")
        return EXIT_USAGE
    except StabError as exc:
        _err(f"stab: {exc}")
        return EXIT_USAGE
    except InconsistencyError as exc:
        _err(f"stab: inconsistency: {exc}")
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
