"""Quick consistency checks behind ``rankcode selftest``.

Each check returns ``(name, passed, detail)``.  The default set runs in a few
seconds; ``exhaustive=True`` adds brute-force oracle comparisons.
"""

from __future__ import annotations

from . import gf
from .gabidulin import CodeParams
from .gf import FieldCtx
from .harness import make_trial, min_distance, oracle_decode, simulate
from .linpoly import dickson, lp_rank, random_error_poly
from .rng import SplitMix64
from .twisted import TwistedParams, t_decode, trinomial_roots


def _field_inverse(ctx: FieldCtx) -> tuple[bool, str]:
    bad = sum(ctx.mul(a, ctx.inv(a)) != 1 for a in range(1, ctx.order))
    return not bad, f"{ctx.order - 1} elements"


def _frobenius_order(ctx: FieldCtx) -> tuple[bool, str]:
    bad = sum(ctx.frobenius(a, ctx.n) != a for a in ctx.elements())
    return not bad, f"{ctx.order} elements"


def _dickson_rank(ctx: FieldCtx, draws: int, seed: int) -> tuple[bool, str]:
    rng = SplitMix64(seed)
    bad = 0
    for i in range(draws):
        f = random_error_poly(ctx, rng.below(ctx.n + 1), rng)
        bad += gf.mat_rank_gfqn(ctx, dickson(f)) != lp_rank(f)
    return not bad, f"{draws} polynomials"


def _round_trip(params, t_max: int, trials: int, seed: int) -> tuple[bool, str]:
    recs = simulate(params, range(t_max + 1), trials, seed)
    ok = all(r.failures == 0 for r in recs)
    return ok, ", ".join(f"t={r.t}: {r.successes}/{r.trials}" for r in recs)


def _trinomial(ctx: FieldCtx, draws: int, seed: int) -> tuple[bool, str]:
    rng = SplitMix64(seed)
    bad = 0
    for _ in range(draws):
        a, b, l = rng.fe(ctx), rng.fe(ctx), rng.below(ctx.n)
        want = {x for x in ctx.elements()
                if not ctx.add(ctx.add(ctx.mul(ctx.frobenius(x, l), x), ctx.mul(a, x)), b)}
        bad += trinomial_roots(ctx, a, b, l) != want
    return not bad, f"{draws} trinomials"


def _oracle(params, trials: int, seed: int) -> tuple[bool, str]:
    bad = 0
    for i in range(trials):
        t = i % (params.radius + 1)
        trial = make_trial(params, t, seed + i)
        res = oracle_decode(params, trial.received)
        bad += res.message != trial.message or not res.unique
    return not bad, f"{trials} received words"


def _exhaustive_a(params, trials: int, seed: int) -> tuple[bool, str]:
    bad = 0
    t = (params.n - params.k) // 2
    for i in range(trials):
        trial = make_trial(params, t, seed + i)
        x, y = t_decode(params, trial.received), t_decode(params, trial.received, "exhaustive")
        bad += x.message != y.message or x.error != y.error
    return not bad, f"{trials} words"


def run_selftest(exhaustive: bool = False) -> list[tuple[str, bool, str]]:
    g24, g27, g26 = FieldCtx(2, 4), FieldCtx(2, 7), FieldCtx(2, 6)
    checks = [
        ("inverse GF(2^3)", lambda: _field_inverse(FieldCtx(2, 3))),
        ("frobenius order GF(3^3)", lambda: _frobenius_order(FieldCtx(3, 3))),
        ("dickson rank GF(2^4)", lambda: _dickson_rank(g24, 50, 1)),
        ("gabidulin (2,8,4) round trip", lambda: _round_trip(CodeParams(FieldCtx(2, 8), 4), 2, 30, 2)),
        ("gabidulin (3,5,2) round trip", lambda: _round_trip(CodeParams(FieldCtx(3, 5), 2), 1, 30, 3)),
        ("twisted (2,7,2) branch a", lambda: _round_trip(TwistedParams(CodeParams(g27, 2), 0, 1), 2, 30, 4)),
        ("twisted (2,6,2) branch b", lambda: _round_trip(TwistedParams(CodeParams(g26, 2), 0, 1), 2, 30, 5)),
        ("trinomial roots GF(2^6)", lambda: _trinomial(g26, 100, 6)),
    ]
    if exhaustive:
        checks += [
            ("oracle agreement (2,4,2)", lambda: _oracle(CodeParams(g24, 2), 40, 7)),
            ("min distance (2,4,2)", lambda: (min_distance(CodeParams(g24, 2)) == 3, "expected 3")),
            ("exhaustive-A agreement (2,6,2)",
             lambda: _exhaustive_a(TwistedParams(CodeParams(g26, 2), 0, 1), 20, 8)),
        ]
    out = []
    for name, fn in checks:
        try:
            ok, detail = fn()
        except Exception as exc:  # a crashing check is a failed check
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        out.append((name, bool(ok), detail))
    return out
