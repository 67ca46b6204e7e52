"""Twisted Gabidulin codes and their interpolation-based decoder.

A message ``a_0 .. a_{k-1}`` is the polynomial
``a_0 x + ... + a_{k-1} x^(q^(k-1)) + eta * a_0^(q^r) * x^(q^k)``.  After
interpolation the coefficient ``g_k`` of the error is no longer known, only the
mix ``g_k - eta * g_0^(q^r)``.  When ``k + 2t < n`` the remaining known tail is
still long enough for the Gabidulin recurrence solver (branch "a").  When
``k + 2t = n`` (branch "b") the relation vector is pinned down to a 2-dim
space ``lam + A * lam2`` and A is a root of ``A^(q^l + 1) + u_2 A^(q^l) + u_1 A + u_0``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from . import gf
from .errors import (DecodeFailure, DegenerateLeadingCoefficient, KernelDimMismatch,
                     SingularMatrix, TooLarge)
from .gabidulin import (CodeParams, DecodeOutcome, bm_run, evaluate, interpolate,
                        reconstruct_error_poly, u_sequence)
from .gf import FieldCtx
from .linpoly import LinPoly, lp_kernel, lp_rank

EXHAUSTIVE_LIMIT = 1 << 20


class TwistedParams:
    """Twisted Gabidulin code ``C'_{eta,r}`` on top of a Gabidulin ``CodeParams``.

    With ``strict=True`` the constructor enforces ``N(eta) != (-1)^(n k)``, which
    guarantees the MRD property.  Over GF(2) this only admits ``eta = 0``.
    """

    def __init__(self, base: CodeParams, eta: int, r: int, strict: bool = True):
        ctx = base.ctx
        if not 1 <= base.k <= ctx.n - 1:
            raise ValueError("twisted codes need 1 <= k <= n-1")
        if not 0 <= eta < ctx.order:
            raise ValueError("eta is not a field element")
        self.base = base
        self.eta = eta
        self.r_twist = r % ctx.n
        if strict and not self.norm_ok:
            raise ValueError(
                f"norm of eta equals (-1)^(nk) = {self.forbidden_norm}; code would not be MRD")

    @property
    def ctx(self) -> FieldCtx:
        return self.base.ctx

    @property
    def k(self) -> int:
        return self.base.k

    @property
    def n(self) -> int:
        return self.base.n

    @property
    def forbidden_norm(self) -> int:
        return pow(-1, self.n * self.k, self.ctx.q) % self.ctx.q

    @property
    def norm_ok(self) -> bool:
        return self.ctx.norm(self.eta) != self.forbidden_norm

    def __repr__(self):
        return f"TwistedParams({self.ctx.spec()}, k={self.k}, eta={self.eta}, r={self.r_twist})"


@dataclass
class TwistedSystem:
    h: list        # h_0 .. h_8 of the three-equation system
    s: list        # s_0 .. s_7 after eliminating g_k
    l: int
    c: list        # P(A) coefficients before normalisation: c0 + c1 A + c2 A^Q + c3 A^(Q+1)
    u: list | None  # (u_0, u_1, u_2), None when c3 vanishes
    t: int
    lam: list
    lam2: list


def twisted_poly(params: TwistedParams, a: Sequence[int]) -> LinPoly:
    ctx, k = params.ctx, params.k
    a = list(a.coeffs[:k] if isinstance(a, LinPoly) else a)
    if len(a) != k:
        raise ValueError(f"message needs {k} symbols, got {len(a)}")
    coeffs = a + [ctx.mul(params.eta, ctx.frobenius(a[0], params.r_twist))]
    return LinPoly.from_list(ctx, coeffs)


def t_encode(params: TwistedParams, a: Sequence[int]) -> list[int]:
    return evaluate(params.base, twisted_poly(params, a))


# ---------------------------------------------------------------------------
# Root finding
# ---------------------------------------------------------------------------

def kth_roots(ctx: FieldCtx, c: int, d: int) -> set[int]:
    """All Z in GF(q^n) with ``Z**d == c``."""
    if not c:
        return {0}
    N = ctx.order - 1
    g = math.gcd(d, N)
    if ctx.tabulated:
        gamma = ctx.log(c)
        if gamma % g:
            return set()
        step = N // g
        z0 = (gamma // g) * pow(d // g, -1, step) % step if step > 1 else 0
        return {ctx.exp(z0 + i * step) for i in range(g)}
    if ctx.pow(c, N // g) != 1:
        return set()
    if g == 1:
        return {ctx.pow(c, pow(d, -1, N))}
    if d == 2:
        z = _tonelli_shanks(ctx, c)
        return {z, ctx.neg(z)}
    if ctx.order > EXHAUSTIVE_LIMIT:
        raise TooLarge("root extraction needs a tabulated or desk-scale field")
    return {z for z in range(1, ctx.order) if ctx.pow(z, d) == c}


def _tonelli_shanks(ctx: FieldCtx, c: int) -> int:
    N = ctx.order - 1
    s, t = 0, N
    while t % 2 == 0:
        s, t = s + 1, t // 2
    z = next(z for z in range(2, ctx.order) if ctx.pow(z, N // 2) != 1)
    m, cc = s, ctx.pow(z, t)
    x, b = ctx.pow(c, (t + 1) // 2), ctx.pow(c, t)
    while b != 1:
        i, bb = 0, b
        while bb != 1:
            bb, i = ctx.mul(bb, bb), i + 1
        w = ctx.pow(cc, 1 << (m - i - 1))
        m, cc = i, ctx.mul(w, w)
        x, b = ctx.mul(x, w), ctx.mul(b, cc)
    return x


def _solve_quadratic(ctx: FieldCtx, a2: int, a1: int, a0: int) -> set[int]:
    """Roots of ``a2 y^2 + a1 y + a0`` in GF(q^n)."""
    if not a2:
        if not a1:
            return set(ctx.elements()) if not a0 else set()
        return {ctx.neg(ctx.div(a0, a1))}
    if ctx.q == 2:
        if not a1:
            return {ctx.frobenius(ctx.div(a0, a2), ctx.n - 1)}
        # y = (a1/a2) z turns it into z^2 + z = a0 a2 / a1^2, a GF(2)-linear equation
        c = ctx.div(ctx.mul(a0, a2), ctx.mul(a1, a1))
        artin = LinPoly.from_list(ctx, [1, 1])
        M = [list(row) for row in zip(*(ctx.coeffs(artin(2 ** i)) for i in range(ctx.n)))]
        try:
            z = ctx.fe(gf.solve(M, ctx.coeffs(c), ctx.base))
        except SingularMatrix:
            return set()
        scale = ctx.div(a1, a2)
        return {ctx.mul(scale, z), ctx.mul(scale, ctx.add(z, 1))}
    two = 2 % ctx.q
    disc = ctx.sub(ctx.mul(a1, a1), ctx.mul(4 % ctx.q, ctx.mul(a2, a0)))
    den = ctx.inv(ctx.mul(two, a2))
    return {ctx.mul(ctx.sub(w, a1), den) for w in kth_roots(ctx, disc, 2)}


def _trinomial_value(ctx: FieldCtx, x: int, a: int, b: int, l: int) -> int:
    return ctx.add(ctx.add(ctx.mul(ctx.frobenius(x, l), x), ctx.mul(a, x)), b)


def _mobius_orbit(ctx: FieldCtx, a: int, b: int, l: int) -> list[list[int]]:
    """Matrix of ``y -> sigma^m(y)`` forced by ``sigma(y) = -(a y + b) / y``, sigma = Frob^l."""
    m = ctx.n // math.gcd(l, ctx.n)
    M = gf.identity(2)
    for i in range(m):
        step = [[ctx.neg(ctx.frobenius(a, l * i)), ctx.neg(ctx.frobenius(b, l * i))], [1, 0]]
        M = gf.mat_mul(step, M, ctx)
    return M


def _kernel_roots(ctx: FieldCtx, a: int, b: int, l: int) -> tuple[set[int], int]:
    n = ctx.n
    lin = [0] * n
    for idx, c in ((0, b), (l, a), ((2 * l) % n, 1)):
        lin[idx] = ctx.add(lin[idx], c)
    kern = lp_kernel(LinPoly(ctx, lin))
    cands = {ctx.div(ctx.frobenius(x0, l), x0) for x0 in _span(ctx, kern) if x0}
    return {y for y in cands if not _trinomial_value(ctx, y, a, b, l)}, len(kern)


def _coset_generator(ctx: FieldCtx, m: int) -> int:
    """An element whose class generates the quotient of GF(q^n)* by its (N/m)-index subgroup."""
    N = ctx.order - 1
    primes = gf._prime_factors(m) if m > 1 else []
    for x in range(2, ctx.order):
        w = ctx.pow(x, N // m)
        if all(ctx.pow(w, m // p) != 1 for p in primes):
            return x
    raise AssertionError("no coset generator")


def trinomial_roots(ctx: FieldCtx, a: int, b: int, l: int, *, stats: dict | None = None) -> set[int]:
    """Roots of ``X^(q^l + 1) + a X + b`` in GF(q^n).

    Candidates come from the kernel of ``x^(q^(2l)) + a x^(q^l) + b x``: each
    nonzero root ``x0`` gives ``x0^(q^l - 1)``.  That only sees roots that are
    (q^l - 1)-th powers.  The rest are found in one of two ways.  If the Mobius
    map that ``sigma(y) = -(a y + b) / y`` (sigma = Frob^l) iterates to over one
    Frobenius orbit is not the identity, every root is one of its at most two
    fixed points.  Otherwise the q^g + 1 roots (g = gcd(l, n)) are collected by
    rescaling ``X = c Y`` over coset representatives c of the (q^l - 1)-th powers.
    """
    n = ctx.n
    l %= n
    if not b:
        return {0, ctx.frobenius(ctx.neg(a), -l)}
    roots, kdim = _kernel_roots(ctx, a, b, l)
    if stats is not None:
        stats["kernel_dim"] = kdim
        stats["kernel_roots"] = len(roots)

    (m11, m12), (m21, m22) = _mobius_orbit(ctx, a, b, l)
    if m12 or m21 or m11 != m22:
        fixed = _solve_quadratic(ctx, m21, ctx.sub(m22, m11), ctx.neg(m12))
        return roots | {y for y in fixed if not _trinomial_value(ctx, y, a, b, l)}

    cosets = ctx.q ** math.gcd(l, n) - 1
    full = cosets + 2
    if len(roots) != full and cosets > 1:
        gamma = _coset_generator(ctx, cosets)
        c = 1
        for _ in range(cosets - 1):
            c = ctx.mul(c, gamma)
            cq = ctx.frobenius(c, l)
            found, _ = _kernel_roots(ctx, ctx.div(a, cq), ctx.div(b, ctx.mul(cq, c)), l)
            roots |= {ctx.mul(c, y) for y in found}
    if stats is not None:
        stats["cosets"] = cosets
    if len(roots) != full:
        raise ArithmeticError(f"found {len(roots)} of {full} roots")
    return roots


def _span(ctx: FieldCtx, basis: Sequence[int]) -> Iterable[int]:
    """All GF(q)-combinations of ``basis``."""
    out = [0]
    for v in basis:
        out = [ctx.add(x, ctx.scalar(mu, v)) for x in out for mu in range(ctx.q)]
    return out


def p_value(ctx: FieldCtx, u: Sequence[int], l: int, A: int) -> int:
    u0, u1, u2 = u
    AQ = ctx.frobenius(A, l)
    return ctx.add(ctx.add(u0, ctx.mul(u1, A)), ctx.add(ctx.mul(u2, AQ), ctx.mul(AQ, A)))


def p_of_a_roots(ctx: FieldCtx, u: Sequence[int], l: int) -> set[int]:
    """Roots of ``P(A) = u_0 + u_1 A + u_2 A^(q^l) + A^(q^l + 1)``.

    Shifting ``A = B - u_2`` gives ``B^(Q+1) + (u_1 - u_2^Q) B + (u_0 - u_1 u_2)``,
    which splits into the three cases: a factored product, a pure (Q+1)-th
    power, or, after scaling B, the trinomial ``y^(Q+1) - v y + v``.
    """
    u0, u1, u2 = u
    l %= ctx.n
    Q1 = ctx.q ** l + 1
    c = ctx.sub(u1, ctx.frobenius(u2, l))
    e = ctx.sub(u0, ctx.mul(u1, u2))
    if not e:
        roots = {ctx.neg(u2), ctx.frobenius(ctx.neg(u1), -l)}
    elif not c:
        roots = {ctx.sub(z, u2) for z in kth_roots(ctx, ctx.neg(e), Q1)}
    else:
        v = ctx.div(ctx.mul(ctx.frobenius(c, l), c), ctx.frobenius(e, l))
        scale = ctx.neg(ctx.div(e, c))
        ys = trinomial_roots(ctx, ctx.neg(v), v, l)
        roots = {ctx.sub(ctx.mul(scale, y), u2) for y in ys}
    return {A for A in roots if not p_value(ctx, u, l, A)}


def raw_p_value(ctx: FieldCtx, c: Sequence[int], l: int, A: int) -> int:
    """``c_0 + c_1 A + c_2 A^(q^l) + c_3 A^(q^l + 1)`` without normalising."""
    AQ = ctx.frobenius(A, l)
    terms = (c[0], ctx.mul(c[1], A), ctx.mul(c[2], AQ), ctx.mul(c[3], ctx.mul(AQ, A)))
    acc = 0
    for x in terms:
        acc = ctx.add(acc, x)
    return acc


def raw_p_roots(ctx: FieldCtx, c: Sequence[int], l: int) -> set[int]:
    """Roots of the cross-multiplied ``c_0 + c_1 A + c_2 A^(q^l) + c_3 A^(q^l + 1)``.

    With ``c_3 != 0`` this is :func:`p_of_a_roots` after normalising.  When the
    leading coefficient vanishes what is left is affine GF(q)-linear in A, so
    its roots are a particular solution plus the kernel of ``c_1 x + c_2 x^(q^l)``.
    A polynomial that vanishes identically yields every element.
    """
    l %= ctx.n
    if c[3]:
        inv3 = ctx.inv(c[3])
        return p_of_a_roots(ctx, [ctx.mul(inv3, x) for x in c[:3]], l)
    if not any(c):
        if ctx.order > EXHAUSTIVE_LIMIT:
            raise TooLarge("P vanishes identically; every A is a candidate")
        return set(ctx.elements())
    lin = [0] * ctx.n
    lin[0] = c[1]
    lin[l] = ctx.add(lin[l], c[2])
    f = LinPoly(ctx, lin)
    M = [list(row) for row in zip(*(ctx.coeffs(f(ctx.q ** i)) for i in range(ctx.n)))]
    try:
        x0 = ctx.fe(gf.solve(M, ctx.coeffs(ctx.neg(c[0])), ctx.base))
    except SingularMatrix:
        return set()
    return {ctx.add(x0, z) for z in _span(ctx, lp_kernel(f))}


# ---------------------------------------------------------------------------
# The k + 2t = n system
# ---------------------------------------------------------------------------

def solve_dim2_system(ctx: FieldCtx, g: dict, k: int, t: int) -> tuple[list[int], list[int]]:
    """Basis ``(lam, lam2)`` of the relation vectors allowed by the fully known columns.

    Columns ``m = k+1 .. k+t-1`` of the Dickson matrix only involve
    ``g_{k+1} .. g_{n-1}``.  The basis is reduced so that ``lam[0] == 1`` and
    ``lam2[0] == 0`` whenever the space contains a vector with nonzero
    constant term.
    """
    n = ctx.n
    rows = [[ctx.frobenius(g[m + i], n - m) for i in range(t + 1)] for m in range(k + 1, k + t)]
    basis = gf.kernel(rows, ctx, t + 1) if rows else [
        [1 if i == j else 0 for i in range(t + 1)] for j in range(t + 1)]
    if len(basis) != 2:
        raise KernelDimMismatch(len(basis))
    R, _ = gf.rref(basis, ctx)
    return R[0], R[1]


def build_system(ctx: FieldCtx, lam, lam2, g: dict, params: TwistedParams, h8: int,
                 t: int) -> TwistedSystem:
    n, k, r, eta = ctx.n, params.k, params.r_twist, params.eta
    frob, mul, add = ctx.frobenius, ctx.mul, ctx.add
    e = (n - (k + t)) % n
    h0 = h1 = h4 = h5 = 0
    for i in range(t):
        x = frob(g[k + t + i], e)
        h0, h1 = add(h0, mul(lam[i], x)), add(h1, mul(lam2[i], x))
    for i in range(1, t + 1):
        x = frob(g[k + i], n - k)
        h4, h5 = add(h4, mul(lam[i], x)), add(h5, mul(lam2[i], x))
    h = [h0, h1, lam[t], lam2[t], h4, h5, lam[0], lam2[0], h8]

    # g_k^(q^(n-k)) = h8^(q^(n-k)) + eta^(q^(n-k)) g_0^(q^(r+n-k))
    h8s, etas = frob(h8, n - k), frob(eta, n - k)
    s = [h0, h1, h[2], h[3],
         add(h4, mul(h[6], h8s)), add(h5, mul(h[7], h8s)), mul(h[6], etas), mul(h[7], etas)]
    l = ((r + n - k) - e) % n
    s0l, s1l, s2l, s3l = (frob(x, l) for x in s[:4])
    c = [ctx.sub(mul(s[4], s2l), mul(s[6], s0l)),
         ctx.sub(mul(s[5], s2l), mul(s[7], s0l)),
         ctx.sub(mul(s[4], s3l), mul(s[6], s1l)),
         ctx.sub(mul(s[5], s3l), mul(s[7], s1l))]
    system = TwistedSystem(h, s, l, c, None, t, list(lam), list(lam2))
    if not c[3]:
        exc = DegenerateLeadingCoefficient("A^(q^l+1) coefficient vanished")
        exc.system = system
        raise exc
    inv3 = ctx.inv(c[3])
    system.u = [mul(inv3, x) for x in c[:3]]
    return system


def system_residuals(ctx: FieldCtx, system: TwistedSystem, params: TwistedParams,
                     A: int, g0: int, gk: int) -> list[int]:
    n, k = ctx.n, params.k
    h = system.h
    e = (n - (k + system.t)) % n
    add, mul, frob = ctx.add, ctx.mul, ctx.frobenius
    r1 = add(add(h[0], mul(h[1], A)), mul(add(h[2], mul(h[3], A)), frob(g0, e)))
    r2 = add(add(h[4], mul(h[5], A)), mul(add(h[6], mul(h[7], A)), frob(gk, n - k)))
    r3 = ctx.sub(add(h[8], mul(params.eta, frob(g0, params.r_twist))), gk)
    return [r1, r2, r3]


# ---------------------------------------------------------------------------
# Decoder
# ---------------------------------------------------------------------------

def _finish(params: TwistedParams, h: LinPoly, g: LinPoly, received, branch, info):
    """Verify a candidate error polynomial; return an outcome or None."""
    ctx, k = params.ctx, params.k
    if lp_rank(g) > params.base.radius:
        return None
    a = [ctx.sub(x, y) for x, y in zip(h.coeffs[:k], g.coeffs[:k])]
    twist = ctx.mul(params.eta, ctx.frobenius(a[0], params.r_twist))
    if ctx.sub(h.coeffs[k], g.coeffs[k]) != twist:
        return None
    recon = [ctx.add(c, x) for c, x in zip(t_encode(params, a), evaluate(params.base, g))]
    if recon != list(received):
        return None
    message = LinPoly.from_list(ctx, a)
    return DecodeOutcome(message, g, lp_rank(g), True, branch, dict(info))


def _branch_a(params, h, received, st):
    ctx, k = params.ctx, params.k
    g = reconstruct_error_poly(ctx, h.coeffs[k + 1:], st.Lambda, k + 1)
    return _finish(params, h, g, received, "a", {"L": st.L})


def _complete_candidate(params, system, g, A):
    """Error polynomial implied by a value of A, or None if A is inconsistent."""
    ctx, n, k, t = params.ctx, params.n, params.k, system.t
    h = system.h
    lam = [ctx.add(x, ctx.mul(A, y)) for x, y in zip(system.lam, system.lam2)]
    if not lam[0]:
        return None
    den2 = ctx.add(h[6], ctx.mul(h[7], A))
    den1 = ctx.add(h[2], ctx.mul(h[3], A))
    e = (n - (k + t)) % n
    if den2:
        gk = ctx.frobenius(ctx.neg(ctx.div(ctx.add(h[4], ctx.mul(h[5], A)), den2)), k)
        if params.eta:
            g0 = ctx.frobenius(ctx.div(ctx.sub(gk, h[8]), params.eta), -params.r_twist)
        elif den1:
            g0 = ctx.frobenius(ctx.neg(ctx.div(ctx.add(h[0], ctx.mul(h[1], A)), den1)), -e)
        else:
            return None
    elif den1:
        g0 = ctx.frobenius(ctx.neg(ctx.div(ctx.add(h[0], ctx.mul(h[1], A)), den1)), -e)
        gk = ctx.add(h[8], ctx.mul(params.eta, ctx.frobenius(g0, params.r_twist)))
    else:
        return None
    known = [gk] + [g[i] for i in range(k + 1, n)]
    full = reconstruct_error_poly(ctx, known, lam, k)
    if full.coeffs[0] != g0:
        return None
    return full


def _branch_b(params, h, received, method):
    ctx, n, k = params.ctx, params.n, params.k
    t = (n - k) // 2
    g = {i: h.coeffs[i] for i in range(k + 1, n)}
    h8 = ctx.sub(h.coeffs[k], ctx.mul(params.eta, ctx.frobenius(h.coeffs[0], params.r_twist)))
    lam, lam2 = solve_dim2_system(ctx, g, k, t)
    info = {"t": t}
    try:
        system = build_system(ctx, lam, lam2, g, params, h8, t)
        info["degenerate"] = False
    except DegenerateLeadingCoefficient as exc:
        system = exc.system
        info["degenerate"] = True
    info.update(l=system.l, u=system.u, c=list(system.c))

    if method == "roots":
        if system.u is not None:
            candidates = sorted(p_of_a_roots(ctx, system.u, system.l))
        else:
            candidates = sorted(raw_p_roots(ctx, system.c, system.l))
        info["roots"] = candidates
    else:
        if ctx.order > EXHAUSTIVE_LIMIT:
            raise TooLarge("exhaustive search over A exceeds the desk-scale limit")
        candidates = list(ctx.elements())
    survivors = []
    for A in candidates:
        full = _complete_candidate(params, system, g, A)
        if full is None:
            continue
        out = _finish(params, h, full, received, "b", info)
        if out is not None:
            out.info["A"] = A
            survivors.append(out)
    if not survivors and method == "roots" and ctx.order <= EXHAUSTIVE_LIMIT:
        return _branch_b(params, h, received, "exhaustive")
    if not survivors:
        return None
    best = survivors[0]
    best.info["survivors"] = len(survivors)
    best.info["method"] = method
    if len(survivors) > 1:
        # only possible when the code is not MRD (eta breaks the norm condition)
        best.ok = False
        raise DecodeFailure(f"{len(survivors)} codewords within the decoding radius", best)
    return best


def t_decode(params: TwistedParams, received: Sequence[int], method: str = "roots") -> DecodeOutcome:
    """Decode a twisted Gabidulin word.

    ``method="exhaustive"`` solves the k + 2t = n case by trying every A instead
    of solving P(A); it serves as an independent check of the root finder.
    """
    ctx, n, k = params.ctx, params.n, params.k
    h = interpolate(params.base, received)
    st = bm_run(ctx, u_sequence(ctx, h.coeffs, k + 1))
    order = ["a", "b"] if k + 2 * st.L < n else ["b", "a"]
    tried = []
    for branch in order:
        if branch == "a":
            if k + 2 * st.L >= n:
                continue
            out = _branch_a(params, h, received, st)
        else:
            if (n - k) % 2:
                continue
            try:
                out = _branch_b(params, h, received, method)
            except KernelDimMismatch as exc:
                tried.append(f"b: {exc}")
                continue
        if out is not None:
            out.info["L"] = st.L
            return out
        tried.append(branch)
    raise DecodeFailure(f"no verified decoding (tried {tried})")
