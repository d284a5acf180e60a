"""Command-line interface: generate corpora, profile texts, verify and benchmark."""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Optional, Sequence

from .analysis import absent_word_lengths, delta_of, lcs_length, timed_profile, verify_profiles
from .profilers import ALGORITHMS, BUDGETED, ORACLE_LIMIT, auto_budget
from .text import TextSource, default_seed, fibonacci_string, from_spec, gen_random, gen_thue_morse, load_text

CSV_HEADER = ["n", "b", "algo", "delta_num", "delta_den", "k", "peak_words", "time_ms"]


class UsageError(Exception):
    pass


def dumps(obj) -> str:
    """Canonical JSON: sorted keys, no extra whitespace."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def parse_budget(value: str, n: int) -> int:
    if value == "auto":
        return auto_budget(n)
    try:
        b = int(value)
    except ValueError:
        raise UsageError(f"budget must be an integer or 'auto', got {value!r}") from None
    if b < 1:
        raise UsageError("budget must be >= 1")
    return b


def parse_list(value: str) -> list:
    return [tok.strip() for tok in value.split(",") if tok.strip()]


def parse_algos(value: str) -> list:
    algos = list(ALGORITHMS) if value == "all" else parse_list(value)
    for a in algos:
        if a not in ALGORITHMS:
            raise UsageError(f"unknown algorithm {a!r} (choose from {', '.join(ALGORITHMS)})")
    return algos


def load_input(args) -> tuple:
    """(text, description) from --input or --gen."""
    if args.input and args.gen:
        raise UsageError("give either --input or --gen, not both")
    if args.input:
        try:
            return load_text(args.input, args.alphabet), f"file:{args.input}"
        except OSError as exc:
            raise UsageError(f"cannot read {args.input}: {exc}") from None
    if args.gen:
        try:
            return from_spec(args.gen, seed=args.seed), args.gen
        except (ValueError, OSError) as exc:
            raise UsageError(str(exc)) from None
    raise UsageError("an input is required (--input FILE or --gen SPEC)")


def _budget_for(args, algo: str, n: int) -> Optional[int]:
    return parse_budget(args.b, n) if algo in BUDGETED else None


def _check_algo(algo: str) -> None:
    if algo not in ALGORITHMS:
        raise UsageError(f"unknown algorithm {algo!r} (choose from {', '.join(ALGORITHMS)})")


def run_report(args, with_profile: bool) -> dict:
    _check_algo(args.algo)
    text, desc = load_input(args)
    if text.n == 0:
        raise UsageError("delta of the empty text is undefined")
    b = _budget_for(args, args.algo, text.n)
    try:
        prof, ms = timed_profile(text, args.algo, b, seed=args.seed, oracle_limit=args.oracle_limit)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    d = delta_of(prof, ms)
    report = {
        "input": desc,
        "n": text.n,
        "sigma": text.sigma,
        "algo": args.algo,
        "b": prof.b,
        "delta": {"num": d.num, "den": d.den, "k": d.k_arg},
        "peak_words": prof.peak_words,
        "time_ms": round(ms, 3),
        "warnings": list(prof.warnings),
    }
    if with_profile:
        report["profile"] = prof.tolist()
    return report


def cmd_delta(args) -> int:
    print(dumps(run_report(args, args.profile)))
    return 0


def cmd_profile(args) -> int:
    print(dumps(run_report(args, True)))
    return 0


def cmd_measures(args) -> int:
    _check_algo(args.algo)
    text, desc = load_input(args)
    b = _budget_for(args, args.algo, text.n)
    prof, ms = timed_profile(text, args.algo, b, seed=args.seed, oracle_limit=args.oracle_limit)
    m = absent_word_lengths(prof, text.distinct_letters() if args.sigma is None else args.sigma)
    print(dumps({"input": desc, "n": text.n, "algo": args.algo, "b": prof.b, "r": m.r,
                 "maw_max": m.maw_max, "saw_min": m.saw_min, "saw_defined": m.saw_defined,
                 "time_ms": round(ms, 3)}))
    return 0


def _side(literal: Optional[str], path: Optional[str], mode: str, name: str):
    if (literal is None) == (path is None):
        raise UsageError(f"give exactly one of --{name} or --{name}-input")
    if literal is not None:
        return literal
    try:
        return load_text(path, mode)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None


def cmd_lcs(args) -> int:
    _check_algo(args.algo)
    x = _side(args.x, args.x_input, args.alphabet, "x")
    y = _side(args.y, args.y_input, args.alphabet, "y")
    b = None if args.b == "auto" else parse_budget(args.b, 1)
    value = lcs_length(x, y, args.algo, b, seed=args.seed)
    print(dumps({"algo": args.algo, "b": args.b, "lcs": value}))
    return 0


def cmd_verify(args) -> int:
    text, desc = load_input(args)
    algos = parse_algos(args.algos)
    budgets = [parse_budget(v, text.n) for v in parse_list(args.b)]
    mismatches = verify_profiles(text, budgets, algos, oracle_limit=args.oracle_limit, seed=args.seed)
    print(dumps({
        "input": desc,
        "n": text.n,
        "algos": algos,
        "budgets": budgets,
        "mismatches": [[m.k, m.algo_a, m.algo_b, m.value_a, m.value_b] for m in mismatches],
        "ok": not mismatches,
    }))
    return 1 if mismatches else 0


def family_text(family: str, n: int, sigma: int, seed: int) -> TextSource:
    if family == "rand":
        return gen_random(n, sigma, seed)
    if family == "fib":
        k = 1
        while len(fibonacci_string(k)) < n:
            k += 1
        return TextSource([1 if ch == "0" else 2 for ch in fibonacci_string(k)[:n]], sigma=2)
    if family == "tm":
        order = max(n - 1, 1).bit_length()
        return TextSource(gen_thue_morse(order).data[:n], sigma=2)
    raise UsageError(f"unknown family {family!r} (rand, fib, tm)")


def cmd_bench(args) -> int:
    algos = parse_algos(args.algos)
    try:
        sizes = [int(v) for v in parse_list(args.n)]
    except ValueError:
        raise UsageError("--n takes a comma-separated list of integers") from None
    rows = []
    for n in sizes:
        if n < 1:
            raise UsageError("bench sizes must be >= 1")
        text = family_text(args.family, n, args.sigma, args.seed)
        for algo in algos:
            budgets = [parse_budget(v, n) for v in parse_list(args.b)] if algo in BUDGETED else [None]
            for b in budgets:
                try:
                    prof, ms = timed_profile(text, algo, b, seed=args.seed, oracle_limit=args.oracle_limit)
                except ValueError as exc:
                    raise UsageError(str(exc)) from None
                d = delta_of(prof, ms)
                rows.append({"n": n, "b": prof.b, "algo": algo, "delta_num": d.num, "delta_den": d.den,
                             "k": d.k_arg, "peak_words": prof.peak_words, "time_ms": round(ms, 3)})
    if args.csv:
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=CSV_HEADER, lineterminator="\n")
        w.writeheader()
        for row in rows:
            w.writerow({k: ("" if v is None else v) for k, v in row.items()})
        sys.stdout.write(buf.getvalue())
    else:
        for row in rows:
            print(dumps(row))
    return 0


def cmd_gen(args) -> int:
    text, _ = load_input(args)
    if args.alphabet == "ints":
        payload = (" ".join(map(str, text.letters())) + "\n").encode()
    elif text.symbols is not None and all(len(s) == 1 for s in text.symbols):
        payload = text.render().encode("latin-1")
    elif text.sigma <= 255:
        payload = bytes(text.letters())
    else:
        raise UsageError("alphabet too large for bytes output; use --alphabet ints")
    if args.output:
        with open(args.output, "wb") as fh:
            fh.write(payload)
    else:
        sys.stdout.buffer.write(payload)
        sys.stdout.flush()
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="deltameter",
                                     description="Substring complexity profiles and delta under space budgets.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=default_seed(),
                        help="seed for random corpora and fingerprints (env DELTAMETER_SEED)")
    common.add_argument("--alphabet", choices=["bytes", "ints"], default="bytes",
                        help="input file format: raw bytes or whitespace-separated integers")
    common.add_argument("--oracle-limit", type=int, default=ORACLE_LIMIT,
                        help="largest n accepted by the brute-force oracle")
    source = argparse.ArgumentParser(add_help=False)
    source.add_argument("--input", help="input text file")
    source.add_argument("--gen", help="generator spec: fib:K, tm:R, rand:N:SIGMA[:SEED], ed:FILE")
    algo = argparse.ArgumentParser(add_help=False)
    algo.add_argument("--algo", default="fast", help=f"one of {', '.join(ALGORITHMS)}")
    algo.add_argument("--b", default="auto", help="working-space budget in words, or 'auto' = ceil(n^(2/3))")

    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("gen", parents=[common, source], help="write a generated corpus")
    p.add_argument("--output", help="output file (default stdout)")
    p.set_defaults(func=cmd_gen)
    p = sub.add_parser("delta", parents=[common, source, algo], help="compute delta")
    p.add_argument("--profile", action="store_true", help="include the full profile")
    p.set_defaults(func=cmd_delta)
    p = sub.add_parser("profile", parents=[common, source, algo], help="emit S(k) for every k")
    p.set_defaults(func=cmd_profile)
    p = sub.add_parser("measures", parents=[common, source, algo],
                       help="repetition index and absent-word lengths")
    p.add_argument("--sigma", type=int, help="alphabet size (default: letters present)")
    p.set_defaults(func=cmd_measures)
    p = sub.add_parser("lcs", parents=[common, algo], help="longest common substring length")
    p.add_argument("--x", help="first string")
    p.add_argument("--y", help="second string")
    p.add_argument("--x-input", help="first text file")
    p.add_argument("--y-input", help="second text file")
    p.set_defaults(func=cmd_lcs)
    p = sub.add_parser("verify", parents=[common, source], help="cross-check algorithms")
    p.add_argument("--algos", default="all", help="'all' or a comma-separated list")
    p.add_argument("--b", default="auto", help="comma-separated budgets (integers or 'auto')")
    p.set_defaults(func=cmd_verify)
    p = sub.add_parser("bench", parents=[common], help="grid over n x b x algo")
    p.add_argument("--family", default="rand", help="rand, fib or tm")
    p.add_argument("--sigma", type=int, default=4, help="alphabet size for rand")
    p.add_argument("--n", default="1024", help="comma-separated text lengths")
    p.add_argument("--b", default="auto", help="comma-separated budgets (integers or 'auto')")
    p.add_argument("--algos", default="blocked,lce,fast", help="'all' or a comma-separated list")
    p.add_argument("--csv", action="store_true", help="CSV rows instead of JSON lines")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"deltameter: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
