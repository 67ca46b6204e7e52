"""Command-line interface: ``rankcode <command> ...``.

A ``<spec>`` argument is either the one-line field spec itself
(``"q=2 n=8 mod=1,0,1,1,1,0,0,0,1"``, ``mod`` optional) or the path of a file
holding it.  Adding ``eta=<fe> r=<int>`` to the spec selects the twisted code.

Exit status: 0 on success, 1 when a selftest check fails, 2 when decoding
fails, 3 on malformed input.
"""

from __future__ import annotations

import argparse
import os
import re
import sys
import time

from . import gf
from .errors import DecodeFailure, MalformedInput, RankCodeError
from .gabidulin import CodeParams
from .gf import FieldCtx
from .harness import decode_word, encode_message, records_to_csv, simulate
from .linpoly import format_linpoly, parse_linpoly
from .twisted import TwistedParams

EXIT_OK, EXIT_SELFTEST, EXIT_DECODE, EXIT_MALFORMED = 0, 1, 2, 3


# ---------------------------------------------------------------------------
# Text I/O
# ---------------------------------------------------------------------------

def read_spec(arg: str) -> str:
    if os.path.isfile(arg):
        with open(arg) as fh:
            return " ".join(line.strip() for line in fh if line.strip() and not line.startswith("#"))
    return arg


def _read_lines(path: str) -> list[str]:
    try:
        with (sys.stdin if path == "-" else open(path)) as fh:
            return [line.strip() for line in fh if line.strip() and not line.lstrip().startswith("#")]
    except OSError as exc:
        raise MalformedInput(f"cannot read {path}: {exc}") from None


def read_word(ctx: FieldCtx, path: str) -> list[int]:
    """Codeword / received-word file: n lines, one field element per line."""
    lines = _read_lines(path)
    if len(lines) != ctx.n:
        raise MalformedInput(f"{path}: expected {ctx.n} lines, got {len(lines)}")
    return [ctx.parse_fe(line) for line in lines]


def read_message(ctx: FieldCtx, path: str, k: int) -> list[int]:
    """Message file: up to k lines of field elements, or one ``lp:`` polynomial."""
    lines = _read_lines(path)
    if len(lines) == 1 and lines[0].startswith("lp:"):
        coeffs = list(parse_linpoly(ctx, lines[0]).coeffs)
        if any(coeffs[k:]):
            raise MalformedInput(f"message polynomial has q-degree >= k={k}")
        return coeffs[:k]
    if len(lines) > k:
        raise MalformedInput(f"{path}: message has {len(lines)} symbols, k={k}")
    return [ctx.parse_fe(line) for line in lines] + [0] * (k - len(lines))


def write_lines(lines, out=None) -> None:
    out = out or sys.stdout
    for line in lines:
        out.write(line + "\n")


def parse_twist(ctx: FieldCtx, text: str) -> tuple[int, int]:
    """``eta=<fe>,r=<int>`` or ``eta=<fe> r=<int>``."""
    m = re.fullmatch(r"\s*eta=<?([\d,]+?)>?[,\s]+r=(-?\d+)\s*", text)
    if not m:
        raise MalformedInput(f"bad twist parameters {text!r}; expected eta=<fe>,r=<int>")
    return ctx.parse_fe(m.group(1)), int(m.group(2))


def build_params(spec_text: str, k: int, twisted: str | None = None, check_norm: bool = True):
    ctx = FieldCtx.from_spec(spec_text)
    try:
        base = CodeParams(ctx, k)
    except ValueError as exc:
        raise MalformedInput(str(exc)) from None
    fields = gf.parse_spec_tokens(spec_text)
    twist = None
    if twisted is not None:
        twist = parse_twist(ctx, twisted)
    elif "eta" in fields or "r" in fields:
        if "eta" not in fields or "r" not in fields:
            raise MalformedInput("twisted spec needs both eta and r")
        try:
            twist = ctx.parse_fe(fields["eta"]), int(fields["r"])
        except ValueError:
            raise MalformedInput(f"bad r value {fields['r']!r}") from None
    if twist is None:
        return base
    try:
        return TwistedParams(base, twist[0], twist[1], strict=check_norm)
    except ValueError as exc:
        raise MalformedInput(str(exc)) from None


def parse_t_range(text: str) -> range:
    m = re.fullmatch(r"\s*(\d+)\s*(?:\.\.\s*(\d+))?\s*", text)
    if not m:
        raise MalformedInput(f"bad t range {text!r}; expected A..B")
    lo = int(m.group(1))
    hi = int(m.group(2)) if m.group(2) is not None else lo
    if hi < lo:
        raise MalformedInput(f"empty t range {text!r}")
    return range(lo, hi + 1)


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def cmd_field_info(args) -> int:
    ctx = FieldCtx.from_spec(read_spec(args.spec))
    write_lines([
        ctx.spec(),
        f"order={ctx.order}",
        f"tabulated={'yes' if ctx.tabulated else 'no'}",
        f"x={ctx.format_fe(ctx.q % ctx.order)}",
        f"trace(x)={ctx.trace(ctx.q)}",
        f"norm(x)={ctx.norm(ctx.q)}",
    ])
    return EXIT_OK


def _params_from_args(args):
    return build_params(read_spec(args.spec), args.k, getattr(args, "twisted", None),
                        not getattr(args, "no_norm_check", False))


def cmd_encode(args) -> int:
    params = _params_from_args(args)
    ctx = params.ctx
    msg = read_message(ctx, args.msg, args.k)
    write_lines(ctx.format_fe(c) for c in encode_message(params, msg))
    return EXIT_OK


def cmd_decode(args) -> int:
    params = _params_from_args(args)
    ctx = params.ctx
    received = read_word(ctx, args.rx)
    try:
        out = decode_word(params, received)
    except DecodeFailure as exc:
        print(f"decode failure: {exc}", file=sys.stderr)
        return EXIT_DECODE
    if args.out:
        with open(args.out, "w") as fh:
            write_lines((ctx.format_fe(c) for c in out.message_vector(args.k)), fh)
    write_lines([
        f"message={format_linpoly(out.message)}",
        f"error={format_linpoly(out.error)}",
        f"rank={out.t_est}",
        f"branch={out.branch}",
    ])
    return EXIT_OK


def cmd_simulate(args) -> int:
    params = _params_from_args(args)
    if args.trials < 1:
        raise MalformedInput("--trials must be >= 1")
    t_range = parse_t_range(args.t)
    if t_range[-1] > params.ctx.n:
        raise MalformedInput(f"t up to {t_range[-1]} exceeds n={params.ctx.n}")
    records = simulate(params, t_range, args.trials, args.seed)
    text = records_to_csv(records, timing=args.timing)
    if args.out and args.out != "-":
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_selftest(args) -> int:
    from .selftest import run_selftest

    start = time.perf_counter()
    results = run_selftest(exhaustive=args.exhaustive)
    for name, ok, detail in results:
        print(f"{'PASS' if ok else 'FAIL'} {name}" + (f" ({detail})" if detail else ""))
    failed = sum(not ok for _, ok, _ in results)
    print(f"{len(results) - failed}/{len(results)} checks passed in {time.perf_counter() - start:.1f}s")
    return EXIT_OK if not failed else EXIT_SELFTEST


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="rankcode", description="Gabidulin and twisted Gabidulin rank-metric codes.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("field-info", help="describe GF(q^n) for a field spec")
    s.add_argument("spec")
    s.set_defaults(func=cmd_field_info)

    def code_args(s):
        s.add_argument("spec", help="field spec string or file; may include eta=<fe> r=<int>")
        s.add_argument("--k", type=int, required=True, help="code dimension")
        s.add_argument("--twisted", metavar="eta=FE,r=INT", help="use the twisted code")
        s.add_argument("--no-norm-check", action="store_true",
                       help="accept eta whose norm breaks the MRD condition")

    s = sub.add_parser("encode", help="encode a message file")
    code_args(s)
    s.add_argument("--msg", required=True, help="k lines of field elements, or one lp: line")
    s.set_defaults(func=cmd_encode)

    s = sub.add_parser("decode", help="decode a received-word file")
    code_args(s)
    s.add_argument("--rx", required=True, help="n lines of field elements")
    s.add_argument("--out", help="also write the k message symbols to this file")
    s.set_defaults(func=cmd_decode)

    s = sub.add_parser("simulate", help="Monte-Carlo round trips, CSV output")
    code_args(s)
    s.add_argument("--t", required=True, help="error ranks A..B")
    s.add_argument("--trials", type=int, required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out", help="CSV path (default stdout)")
    s.add_argument("--timing", action="store_true",
                   help="fill the avg_decode_micros column (output is then not byte-stable)")
    s.set_defaults(func=cmd_simulate)

    s = sub.add_parser("selftest", help="built-in consistency checks")
    s.add_argument("--exhaustive", action="store_true", help="add brute-force oracle comparisons")
    s.set_defaults(func=cmd_selftest)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_MALFORMED if exc.code else EXIT_OK
    try:
        return args.func(args)
    except MalformedInput as exc:
        print(f"malformed input: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    except RankCodeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED


if __name__ == "__main__":
    sys.exit(main())
