"""Command-line front end.

Exit codes: 0 minimal / all checks pass, 1 parse error or failed check,
2 precondition violated, 3 not minimal, 4 inconclusive, 5 verdicts disagree.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import asdict, dataclass
from importlib.metadata import PackageNotFoundError, version
from pathlib import Path
from typing import Sequence

from .codes import analyze_code
from .functions import (
    ConstructionError,
    classify,
    compose,
    extend_with_dummy,
    make_field_mult_bent,
    make_indicator_quadratic,
    standard_indicator_quadratic,
)
from .gf3 import SubspaceSpec, TernaryVector
from .minimality import (
    EXHAUSTIVE_CAP,
    MinimalityVerdict,
    PremiseError,
    corollary1_bound,
    covering_oracle,
    theorem3_check,
)
from .tables import FunctionTable, TFTFormatError, load_tft, write_tft
from .verify import SUITES, run_suite
from .walsh import spectrum_of, write_spectrum_csv

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_PRECONDITION = 2
EXIT_NOT_MINIMAL = 3
EXIT_INCONCLUSIVE = 4
EXIT_DISAGREE = 5


def tool_version() -> str:
    try:
        return version("artifact")
    except PackageNotFoundError:
        return "0+unknown"


@dataclass
class RunManifest:
    command: str
    parameters: dict
    rng_seed: int | None
    tool_version: str
    wall_time_ms: int | None  # only recorded with --record-time, so reports stay byte-stable


def dump_json(obj: object) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def _vector(spec: str, n: int) -> TernaryVector:
    """Digits, coordinate 0 first, e.g. '1200000'."""
    if len(spec) != n or any(c not in "012" for c in spec):
        raise ConstructionError(f"expected {n} base-3 digits, got {spec!r}")
    return TernaryVector(tuple(int(c) for c in spec))


# ---------------------------------------------------------------------------
# construct
# ---------------------------------------------------------------------------


def cmd_construct(args: argparse.Namespace) -> int:
    kind = args.kind
    if kind == "indicator-quadratic":
        if args.E or args.a or args.b:
            if not (args.E and args.a and args.b):
                raise ConstructionError("--E, --a and --b go together")
            E = SubspaceSpec.span(args.n, [_vector(v, args.n) for v in args.E.split(",")])
            F = make_indicator_quadratic(E, _vector(args.a, args.n), _vector(args.b, args.n))
        else:
            F = standard_indicator_quadratic(args.n, args.r)[0]
    elif kind == "field-mult-bent":
        F = make_field_mult_bent(args.k, args.m)
    elif kind == "dummy-extend":
        F = extend_with_dummy(load_tft(args.table), args.extra)
    else:
        F = compose(load_tft(args.f), load_tft(args.g))
    if args.out and args.out != "-":
        with open(args.out, "w", encoding="ascii") as fh:
            write_tft(F, fh)
    else:
        write_tft(F, sys.stdout)
    print(f"n={F.n} m={F.m}: {classify(F).summary()}", file=sys.stderr)
    return EXIT_OK


# ---------------------------------------------------------------------------
# analyze
# ---------------------------------------------------------------------------


def _exit_for(verdict: MinimalityVerdict) -> int:
    return {True: EXIT_OK, False: EXIT_NOT_MINIMAL, None: EXIT_INCONCLUSIVE}[verdict.minimal]


def _brute(F: FunctionTable, samples: int, seed: int) -> MinimalityVerdict:
    if 3 ** (F.n + F.m) <= EXHAUSTIVE_CAP:
        return covering_oracle(F)
    return covering_oracle(F, "sampled", samples=samples, seed=seed)


def cmd_analyze(args: argparse.Namespace) -> int:
    started = time.perf_counter()
    F = load_tft(args.table)
    if F.table[0] != 0:
        raise PremiseError("F(0) must be 0")
    analysis = analyze_code(F, args.threads)
    verdicts: list[MinimalityVerdict] = []
    mode = args.minimality
    if mode in ("walsh", "both"):
        verdicts.append(theorem3_check(F, args.threads))
    if mode in ("brute", "both"):
        verdicts.append(_brute(F, args.samples, args.seed))
    if mode == "bound":
        verdicts.append(corollary1_bound(F))
    analysis.minimality = {v.method: v.to_json() for v in verdicts}

    decided = {v.minimal for v in verdicts if v.minimal is not None}
    if len(decided) > 1:
        code = EXIT_DISAGREE
        verdict = "disagreement"
    elif decided:
        code = EXIT_OK if decided.pop() else EXIT_NOT_MINIMAL
        verdict = "minimal" if code == EXIT_OK else "not minimal"
    else:
        code = EXIT_INCONCLUSIVE
        verdict = "inconclusive"
    sampled = any(v.details.get("mode") == "sampled" for v in verdicts)
    manifest = RunManifest(
        "analyze",
        {"table": str(args.table), "minimality": mode, "table_digest": F.digest, "samples": args.samples if sampled else None},
        args.seed if sampled else None,
        tool_version(),
        round(1000 * (time.perf_counter() - started)) if args.record_time else None,
    )
    report = analysis.to_json()
    report["verdict"] = verdict
    report["manifest"] = asdict(manifest)
    _emit(dump_json(report), args.out)
    print(f"[{analysis.length}, {analysis.dimension}, {analysis.d}] {verdict}", file=sys.stderr)
    return code


# ---------------------------------------------------------------------------
# verify-paper
# ---------------------------------------------------------------------------


def cmd_verify_paper(args: argparse.Namespace) -> int:
    started = time.perf_counter()
    suites = SUITES if args.suite == "all" else (args.suite,)
    checks = []
    for name in suites:
        for c in run_suite(name, args.max_n, args.threads, args.seed):
            print(c.line())
            checks.append(c)
    failed = sum(not c.passed for c in checks)
    print(f"{len(checks) - failed}/{len(checks)} checks passed")
    if args.out:
        manifest = RunManifest(
            "verify-paper",
            {"suite": args.suite, "max_n": args.max_n},
            args.seed,
            tool_version(),
            round(1000 * (time.perf_counter() - started)) if args.record_time else None,
        )
        _emit(dump_json({"checks": [c.to_json() for c in checks], "manifest": asdict(manifest)}), args.out)
    return EXIT_PARSE if failed else EXIT_OK


# ---------------------------------------------------------------------------
# spectrum
# ---------------------------------------------------------------------------


def cmd_spectrum(args: argparse.Namespace) -> int:
    F = load_tft(args.table)
    spec = spectrum_of(F).compute_all(args.threads)
    mus = None if args.mu is None else [args.mu]
    if args.out and args.out != "-":
        with open(args.out, "w", encoding="ascii", newline="") as fh:
            write_spectrum_csv(spec, fh, mus)
    else:
        write_spectrum_csv(spec, sys.stdout, mus)
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ternmin", description="Ternary codes C_F: weights, AB condition, minimality.")
    p.add_argument("--version", action="version", version=f"%(prog)s {tool_version()}")
    sub = p.add_subparsers(dest="command", required=True)
    default_threads = os.cpu_count() or 1

    c = sub.add_parser("construct", help="build a function table (TFT/1)")
    kinds = c.add_subparsers(dest="kind", required=True)
    iq = kinds.add_parser("indicator-quadratic", help="f = 1_E + (a.x)(b.x) + 2")
    iq.add_argument("--n", type=int, required=True)
    iq.add_argument("--r", type=int, default=2, help="dim E for the standard instance")
    iq.add_argument("--E", help="comma-separated spanning vectors, digits coordinate 0 first")
    iq.add_argument("--a")
    iq.add_argument("--b")
    fb = kinds.add_parser("field-mult-bent", help="(tr(X^i x y))_{i<m} on GF(3^k)^2")
    fb.add_argument("--k", type=int, required=True)
    fb.add_argument("--m", type=int, required=True)
    de = kinds.add_parser("dummy-extend", help="append unused input coordinates")
    de.add_argument("--table", required=True)
    de.add_argument("--extra", type=int, required=True)
    co = kinds.add_parser("compose", help="F = (f, G)")
    co.add_argument("--f", required=True)
    co.add_argument("--g", required=True)
    for k in (iq, fb, de, co):
        k.add_argument("--out", help="output path (default stdout)")
        k.set_defaults(func=cmd_construct)

    a = sub.add_parser("analyze", help="weights, AB status and minimality of C_F")
    a.add_argument("table")
    a.add_argument("--minimality", choices=("walsh", "brute", "both", "bound"), default="walsh")
    a.add_argument("--out", help="report path (default stdout)")
    a.add_argument("--threads", type=int, default=default_threads)
    a.add_argument("--samples", type=int, default=10**6, help="pairs for sampled covering when exhaustive is too big")
    a.add_argument("--seed", type=int, default=0)
    a.add_argument("--record-time", action="store_true", help="store wall time in the manifest")
    a.set_defaults(func=cmd_analyze)

    v = sub.add_parser("verify-paper", help="run the verification suites")
    v.add_argument("--suite", choices=(*SUITES, "all"), default="all")
    v.add_argument("--max-n", type=int, default=None)
    v.add_argument("--threads", type=int, default=default_threads)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--out", help="JSON summary path")
    v.add_argument("--record-time", action="store_true")
    v.set_defaults(func=cmd_verify_paper)

    s = sub.add_parser("spectrum", help="export Walsh spectrum as CSV")
    s.add_argument("table")
    s.add_argument("--mu", type=int, help="single mu rank (default all)")
    s.add_argument("--out")
    s.add_argument("--threads", type=int, default=default_threads)
    s.set_defaults(func=cmd_spectrum)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (TFTFormatError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (ConstructionError, PremiseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    raise SystemExit(main())
