"""Gabidulin codes: encoding by evaluation and interpolation-based decoding.

Decoding interpolates ``h = f + g`` from the received word, reads the known
tail ``g_k .. g_{n-1}`` of the error polynomial, finds the linear relation
between the rows of its Dickson matrix with a Berlekamp-Massey style solver,
and runs that relation backwards to recover ``g_{k-1} .. g_0``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from . import gf
from .errors import CoefficientOutOfRange, DecodeFailure
from .gf import FieldCtx
from .linpoly import LinPoly, lp_rank


class CodeParams:
    """An [n, k] Gabidulin code over GF(q^n) evaluated on a GF(q)-basis.

    ``U[i][j] = basis[i] ** (q**j)`` maps coefficient vectors to codewords; its
    inverse is computed once here and reused by every decode.
    """

    def __init__(self, ctx: FieldCtx, k: int, basis: Sequence[int] | None = None):
        n = ctx.n
        if not 1 <= k <= n:
            raise ValueError(f"dimension k={k} outside [1, {n}]")
        if basis is None:
            basis = [ctx.q ** i for i in range(n)]
        basis = tuple(basis)
        if len(basis) != n or gf.fe_vector_rank(ctx, basis) != n:
            raise ValueError("evaluation points must form a GF(q)-basis of GF(q^n)")
        self.ctx = ctx
        self.k = k
        self.basis = basis
        self.U = [[ctx.frobenius(a, j) for j in range(n)] for a in basis]
        self.u_inv = gf.inverse(self.U, ctx)

    @property
    def n(self) -> int:
        return self.ctx.n

    @property
    def d(self) -> int:
        return self.n - self.k + 1

    @property
    def radius(self) -> int:
        return (self.n - self.k) // 2

    def __repr__(self):
        return f"CodeParams({self.ctx.spec()}, k={self.k})"


@dataclass
class BmState:
    Lambda: list  # connection polynomial coefficients, Lambda[0] == 1
    B: list
    L: int = 0
    i: int = 0


@dataclass
class DecodeOutcome:
    message: LinPoly
    error: LinPoly
    t_est: int
    ok: bool = True
    branch: str = "gabidulin"
    info: dict = field(default_factory=dict)

    def message_vector(self, k: int) -> list[int]:
        return list(self.message.coeffs[:k])


def message_poly(params: CodeParams, f) -> LinPoly:
    """Accept a LinPoly or a sequence of at most n coefficients."""
    if isinstance(f, LinPoly):
        return f
    return LinPoly.from_list(params.ctx, list(f))


def encode(params: CodeParams, f) -> list[int]:
    f = message_poly(params, f)
    if any(f.coeffs[params.k:]):
        raise CoefficientOutOfRange(f"message has q-degree >= k={params.k}")
    return gf.mat_vec(params.U, f.coeffs, params.ctx)


def evaluate(params: CodeParams, f: LinPoly) -> list[int]:
    """``f`` evaluated on the code's basis, with no degree restriction."""
    return gf.mat_vec(params.U, f.coeffs, params.ctx)


def interpolate(params: CodeParams, received: Sequence[int]) -> LinPoly:
    if len(received) != params.n:
        raise ValueError(f"received word has length {len(received)}, expected {params.n}")
    return LinPoly(params.ctx, gf.mat_vec(params.u_inv, received, params.ctx))


def bm_run(ctx: FieldCtx, s: Sequence[int]) -> BmState:
    """Shortest twisted recurrence ``s_i + sum_j lam_j s_{i-j}^(q^j) = 0``.

    Same loop as classical Berlekamp-Massey with the shift ``x * B(x)`` replaced
    by the composition ``x^q o B(x)``.
    """
    frob, mul, sub = ctx.frobenius, ctx.mul, ctx.sub
    st = BmState(Lambda=[1], B=[1])
    for i, si in enumerate(s):
        lam = st.Lambda
        delta = si
        for j in range(1, min(st.L, len(lam) - 1) + 1):
            if lam[j]:
                delta = ctx.add(delta, mul(lam[j], frob(s[i - j], j)))
        shifted = [0] + [frob(b, 1) for b in st.B]
        if delta:
            size = max(len(lam), len(shifted))
            new = lam + [0] * (size - len(lam))
            for j, b in enumerate(shifted):
                if b:
                    new[j] = sub(new[j], mul(delta, b))
            if 2 * st.L <= i:
                dinv = ctx.inv(delta)
                st.B = [mul(dinv, c) for c in lam]
                st.L = i + 1 - st.L
            else:
                st.B = shifted
            st.Lambda = gf._ptrim(new)
        else:
            st.B = shifted
        gf._ptrim(st.B)
        st.i = i + 1
    return st


def bm_solve(ctx: FieldCtx, s: Sequence[int]) -> LinPoly:
    st = bm_run(ctx, s)
    if len(st.Lambda) > ctx.n:
        raise ValueError("connection polynomial exceeds q-degree n-1")
    return LinPoly.from_list(ctx, st.Lambda)


def u_sequence(ctx: FieldCtx, g: Sequence[int], start: int) -> list[int]:
    """``s_m = u_{n-1-m}`` for ``u_i = g_i ** (q**(n-i))``, i from n-1 down to start."""
    n = ctx.n
    return [ctx.frobenius(g[i], n - i) for i in range(n - 1, start - 1, -1)]


def reconstruct_error_poly(ctx: FieldCtx, known: Sequence[int], Lambda, k: int) -> LinPoly:
    """Complete ``g`` from ``g_k .. g_{n-1}`` using the Dickson column relations.

    For r = k-1 .. 0 the column ``n - r`` of the Dickson matrix gives
    ``g_r ** (q**(n-r)) = -sum_{i>=1} lam_i * g_{r+i} ** (q**(n-r))``.
    """
    n = ctx.n
    if len(known) != n - k:
        raise ValueError(f"expected {n - k} known coefficients, got {len(known)}")
    lam = list(Lambda.coeffs if isinstance(Lambda, LinPoly) else Lambda)
    while len(lam) > 1 and not lam[-1]:
        lam.pop()
    t = len(lam) - 1
    if not lam[0]:
        raise ValueError("connection polynomial has zero constant coefficient")
    if lam[0] != 1:
        inv0 = ctx.inv(lam[0])
        lam = [ctx.mul(inv0, c) for c in lam]
    if k + t > n:
        raise ValueError(f"recurrence of length {t} needs k + t <= n")
    g = [0] * k + list(known)
    frob, mul = ctx.frobenius, ctx.mul
    for r in range(k - 1, -1, -1):
        j = (n - r) % n
        acc = 0
        for i in range(1, t + 1):
            if lam[i]:
                acc = ctx.add(acc, mul(lam[i], frob(g[r + i], j)))
        g[r] = frob(ctx.neg(acc), r)
    return LinPoly(ctx, g)


def decode(params: CodeParams, received: Sequence[int]) -> DecodeOutcome:
    ctx, n, k = params.ctx, params.n, params.k
    h = interpolate(params, received)
    known = h.coeffs[k:]
    if not any(known):
        return DecodeOutcome(h, LinPoly.zero(ctx), 0, info={"L": 0})
    st = bm_run(ctx, u_sequence(ctx, h.coeffs, k))
    if 2 * st.L > n - k:
        raise DecodeFailure(f"recurrence length {st.L} beyond radius {params.radius}")
    g = reconstruct_error_poly(ctx, known, st.Lambda, k)
    message = h - g
    t_est = lp_rank(g)
    outcome = DecodeOutcome(message, g, t_est, info={"L": st.L})
    if t_est > params.radius:
        outcome.ok = False
        raise DecodeFailure(f"error rank {t_est} beyond radius {params.radius}", outcome)
    recon = [ctx.add(c, e) for c, e in zip(encode(params, message), evaluate(params, g))]
    if recon != list(received):
        outcome.ok = False
        raise DecodeFailure("re-encoding does not reproduce the received word", outcome)
    return outcome
