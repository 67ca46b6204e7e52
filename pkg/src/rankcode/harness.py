"""Rank-error channel, brute-force oracles and the Monte-Carlo simulator.

Per-trial randomness: trial number ``i`` of a run (counted across the whole
t-range, starting at 0) draws everything from ``SplitMix64(seed + i)``: first
the k message symbols, then the error polynomial.  Serial, parallel and
partial re-runs therefore see identical trials.
"""

from __future__ import annotations

import csv
import io
import time
from dataclasses import astuple, dataclass, fields
from typing import Callable, Iterable, Sequence

from . import gf
from .errors import DecodeFailure, InvalidRank, RankCodeError, TooLarge
from .gabidulin import CodeParams, DecodeOutcome, decode, encode, evaluate
from .gf import FieldCtx
from .linpoly import LinPoly, random_error_poly
from .rng import SplitMix64
from .twisted import TwistedParams, t_decode, t_encode

ORACLE_LIMIT = 1 << 16
CSV_HEADER = ("q", "n", "k", "t", "trials", "successes", "failures", "avg_decode_micros", "seed")


@dataclass
class TrialRecord:
    q: int
    n: int
    k: int
    t: int
    trials: int
    successes: int
    failures: int
    avg_decode_micros: float
    seed: int


@dataclass
class OracleResult:
    nearest: list
    distance: int
    unique: bool
    message: list  # the k message symbols of ``nearest``


# ---------------------------------------------------------------------------
# Helpers shared by plain and twisted codes
# ---------------------------------------------------------------------------

def _base(params) -> CodeParams:
    return params.base if isinstance(params, TwistedParams) else params


def encode_message(params, a: Sequence[int]) -> list[int]:
    """Encode k message symbols with either code family."""
    if isinstance(params, TwistedParams):
        return t_encode(params, a)
    return encode(params, list(a))


def decode_word(params, received: Sequence[int]) -> DecodeOutcome:
    if isinstance(params, TwistedParams):
        return t_decode(params, received)
    return decode(params, received)


def add_words(ctx: FieldCtx, x: Sequence[int], y: Sequence[int]) -> list[int]:
    return [ctx.add(a, b) for a, b in zip(x, y)]


def sub_words(ctx: FieldCtx, x: Sequence[int], y: Sequence[int]) -> list[int]:
    return [ctx.sub(a, b) for a, b in zip(x, y)]


# ---------------------------------------------------------------------------
# Channel
# ---------------------------------------------------------------------------

def error_word(params, t: int, seed) -> tuple[list[int], LinPoly]:
    """Error vector ``e_i = g(alpha_i)`` of a random rank-t polynomial g."""
    base = _base(params)
    g = random_error_poly(base.ctx, t, seed)
    return evaluate(base, g), g


def inject_error(params, codeword: Sequence[int], t: int, seed) -> list[int]:
    base = _base(params)
    if len(codeword) != base.n:
        raise ValueError(f"codeword has length {len(codeword)}, expected {base.n}")
    if not 0 <= t <= base.n:
        raise InvalidRank(f"rank {t} outside [0, {base.n}]")
    e, _ = error_word(params, t, seed)
    return add_words(base.ctx, codeword, e)


# ---------------------------------------------------------------------------
# Oracles
# ---------------------------------------------------------------------------

def _contributions(params) -> list[list[list[int]]]:
    """``table[i][a]`` = codeword part contributed by message symbol ``a_i = a``.

    Both code families are additive in the message and each symbol enters on
    its own (the twist only involves a_0), so a codeword is a sum of k table rows.
    """
    base = _base(params)
    ctx, k = base.ctx, base.k
    table = []
    for i in range(k):
        rows = []
        for a in ctx.elements():
            msg = [0] * k
            msg[i] = a
            rows.append(encode_message(params, msg))
        table.append(rows)
    return table


def _check_size(params, limit: int) -> None:
    base = _base(params)
    size = base.ctx.order ** base.k
    if size > limit:
        raise TooLarge(f"code has {size} codewords, enumeration limit is {limit}")


def iter_codewords(params, limit: int = ORACLE_LIMIT) -> Iterable[tuple[list[int], list[int]]]:
    """All ``(message, codeword)`` pairs, messages in lexicographic order."""
    _check_size(params, limit)
    base = _base(params)
    ctx, k, n = base.ctx, base.k, base.n
    table = _contributions(params)

    def walk(i, msg, word):
        if i == k:
            yield list(msg), word
            return
        for a, part in enumerate(table[i]):
            msg.append(a)
            yield from walk(i + 1, msg, add_words(ctx, word, part))
            msg.pop()

    yield from walk(0, [], [0] * n)


def oracle_decode(params, received: Sequence[int], limit: int = ORACLE_LIMIT) -> OracleResult:
    """Nearest codeword in the rank metric by exhaustive enumeration."""
    ctx = _base(params).ctx
    best = None
    count = 0
    for msg, word in iter_codewords(params, limit):
        d = gf.fe_vector_rank(ctx, sub_words(ctx, received, word))
        if best is None or d < best[0]:
            best, count = (d, word, msg), 1
        elif d == best[0]:
            count += 1
    d, word, msg = best
    return OracleResult(word, d, count == 1, msg)


def min_distance(params, limit: int = ORACLE_LIMIT) -> int:
    """Minimum rank weight of a nonzero codeword."""
    base = _base(params)
    if base.k == base.n:
        return 1  # the whole space contains rank-1 words
    ctx = base.ctx
    best = base.n
    for msg, word in iter_codewords(params, limit):
        if any(msg):
            best = min(best, gf.fe_vector_rank(ctx, word))
    return best


# ---------------------------------------------------------------------------
# Simulation
# ---------------------------------------------------------------------------

@dataclass
class Trial:
    message: list
    error: LinPoly
    received: list


def make_trial(params, t: int, seed: int) -> Trial:
    base = _base(params)
    rng = SplitMix64(seed)
    msg = [rng.fe(base.ctx) for _ in range(base.k)]
    e, g = error_word(params, t, rng)
    return Trial(msg, g, add_words(base.ctx, encode_message(params, msg), e))


def run_trial(params, trial: Trial, decoder: Callable | None = None) -> tuple[bool, int]:
    """Decode one trial; return (exact recovery, elapsed nanoseconds)."""
    k = _base(params).k
    decoder = decoder or decode_word
    start = time.perf_counter_ns()
    try:
        out = decoder(params, trial.received)
        ok = out.message_vector(k) == trial.message and out.error == trial.error
    except (DecodeFailure, RankCodeError, ArithmeticError, ValueError):
        ok = False
    return ok, time.perf_counter_ns() - start


def simulate(params, t_range: Iterable[int], trials: int, seed: int,
             decoder: Callable | None = None) -> list[TrialRecord]:
    if trials < 1:
        raise ValueError("trials must be >= 1")
    base = _base(params)
    records = []
    index = 0
    for t in t_range:
        successes, elapsed = 0, 0
        for _ in range(trials):
            ok, ns = run_trial(params, make_trial(params, t, seed + index), decoder)
            successes += ok
            elapsed += ns
            index += 1
        records.append(TrialRecord(base.ctx.q, base.n, base.k, t, trials, successes,
                                   trials - successes, elapsed / trials / 1000.0, seed))
    return records


def records_to_csv(records: Sequence[TrialRecord], timing: bool = False) -> str:
    """CSV text with the fixed header.

    The timing column is wall-clock and so differs between runs; it is left
    empty unless ``timing`` is set, which keeps the default output byte-stable.
    """
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    names = [f.name for f in fields(TrialRecord)]
    for rec in records:
        row = list(astuple(rec))
        at = names.index("avg_decode_micros")
        row[at] = f"{rec.avg_decode_micros:.1f}" if timing else ""
        w.writerow(row)
    return buf.getvalue()


def write_csv(path, records: Sequence[TrialRecord], timing: bool = False) -> None:
    with open(path, "w", newline="") as fh:
        fh.write(records_to_csv(records, timing))
