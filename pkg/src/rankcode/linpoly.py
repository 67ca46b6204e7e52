"""Linearized polynomials over GF(q^n) and the matrices attached to them.

A :class:`LinPoly` stores all n coefficients of ``sum(f_i * x**(q**i))``, so it is
an element of the ring of linearized polynomials modulo ``x**(q**n) - x``, i.e. an
arbitrary GF(q)-linear map of GF(q^n).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import gf
from .errors import InvalidRank, MalformedInput
from .gf import FieldCtx
from .rng import as_rng


@dataclass(frozen=True, eq=True)
class LinPoly:
    ctx: FieldCtx
    coeffs: tuple

    def __post_init__(self):
        coeffs = tuple(self.coeffs)
        if len(coeffs) != self.ctx.n:
            raise ValueError(f"LinPoly needs {self.ctx.n} coefficients, got {len(coeffs)}")
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def zero(cls, ctx: FieldCtx) -> "LinPoly":
        return cls(ctx, (0,) * ctx.n)

    @classmethod
    def monomial(cls, ctx: FieldCtx, i: int, c: int = 1) -> "LinPoly":
        coeffs = [0] * ctx.n
        coeffs[i % ctx.n] = c
        return cls(ctx, coeffs)

    @classmethod
    def identity(cls, ctx: FieldCtx) -> "LinPoly":
        return cls.monomial(ctx, 0)

    @classmethod
    def trace(cls, ctx: FieldCtx) -> "LinPoly":
        return cls(ctx, (1,) * ctx.n)

    @classmethod
    def from_list(cls, ctx: FieldCtx, coeffs: Sequence[int]) -> "LinPoly":
        """Pad a short (low-degree) coefficient list with zeros."""
        if len(coeffs) > ctx.n:
            raise ValueError("too many coefficients")
        return cls(ctx, tuple(coeffs) + (0,) * (ctx.n - len(coeffs)))

    @property
    def q_degree(self) -> int:
        """Largest i with a nonzero coefficient; -1 for the zero polynomial."""
        for i in range(self.ctx.n - 1, -1, -1):
            if self.coeffs[i]:
                return i
        return -1

    def __getitem__(self, i):
        return self.coeffs[i]

    def __iter__(self):
        return iter(self.coeffs)

    def __call__(self, a: int) -> int:
        return lp_eval(self, a)

    def __add__(self, other: "LinPoly") -> "LinPoly":
        add = self.ctx.add
        return LinPoly(self.ctx, [add(a, b) for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: "LinPoly") -> "LinPoly":
        sub = self.ctx.sub
        return LinPoly(self.ctx, [sub(a, b) for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self) -> "LinPoly":
        return LinPoly(self.ctx, [self.ctx.neg(a) for a in self.coeffs])

    def scale(self, c: int) -> "LinPoly":
        """The polynomial ``c * f(x)``."""
        return LinPoly(self.ctx, [self.ctx.mul(c, a) for a in self.coeffs])

    def compose(self, other: "LinPoly") -> "LinPoly":
        return lp_compose(self, other)

    def rank(self) -> int:
        return lp_rank(self)

    def __repr__(self):
        return f"LinPoly({format_linpoly(self)})"


def lp_eval(f: LinPoly, a: int) -> int:
    ctx = f.ctx
    if not a:
        return 0
    acc = 0
    for i, c in enumerate(f.coeffs):
        if c:
            acc = ctx.add(acc, ctx.mul(c, ctx.frobenius(a, i)))
    return acc


def lp_compose(f: LinPoly, g: LinPoly) -> LinPoly:
    """Coefficients of ``f(g(x))`` reduced modulo ``x**(q**n) - x``."""
    ctx = f.ctx
    n = ctx.n
    out = [0] * n
    for i, fi in enumerate(f.coeffs):
        if not fi:
            continue
        for j, gj in enumerate(g.coeffs):
            if gj:
                k = (i + j) % n
                out[k] = ctx.add(out[k], ctx.mul(fi, ctx.frobenius(gj, i)))
    return LinPoly(ctx, out)


def basis_images(f: LinPoly) -> list[int]:
    """``f`` evaluated on the power basis 1, x, ..., x^(n-1)."""
    q = f.ctx.q
    return [lp_eval(f, q ** c) for c in range(f.ctx.n)]


def map_matrix(f: LinPoly) -> list[list[int]]:
    """n x n matrix over GF(q) of ``a -> f(a)`` in the power basis (column c = f(x^c))."""
    cols = [f.ctx.coeffs(v) for v in basis_images(f)]
    return [list(row) for row in zip(*cols)]


def lp_rank(f: LinPoly) -> int:
    return gf.fe_vector_rank(f.ctx, basis_images(f))


def lp_kernel(f: LinPoly) -> list[int]:
    """GF(q)-basis of the roots of f in GF(q^n)."""
    ctx = f.ctx
    return [ctx.fe(v) for v in gf.mat_kernel_gfq(map_matrix(f), ctx.q, ctx.n)]


def dickson(f: LinPoly) -> list[list[int]]:
    """``M[i][j] = f_{(i-j) mod n} ** (q**j)``."""
    ctx = f.ctx
    n = ctx.n
    return [[ctx.frobenius(f.coeffs[(i - j) % n], j) for j in range(n)] for i in range(n)]


def moore(ctx: FieldCtx, points: Sequence[int], rows: int) -> list[list[int]]:
    """``entry[i][j] = points[j] ** (q**i)`` for i < rows."""
    if rows < 1:
        raise ValueError("rows must be >= 1")
    return [[ctx.frobenius(a, i) for a in points] for i in range(rows)]


def from_trace_terms(ctx: FieldCtx, a: Sequence[int], b: Sequence[int]) -> LinPoly:
    """``sum_j a_j * Tr(b_j * x)``; coefficient i is ``sum_j a_j * b_j**(q**i)``."""
    out = []
    for i in range(ctx.n):
        acc = 0
        for aj, bj in zip(a, b):
            acc = ctx.add(acc, ctx.mul(aj, ctx.frobenius(bj, i)))
        out.append(acc)
    return LinPoly(ctx, out)


def trace_form_inverse(ctx: FieldCtx) -> list[list[int]]:
    """Inverse over GF(q) of ``T[c][d] = Tr(x^c * x^d)``."""
    q = ctx.q
    T = [[ctx.trace(ctx.mul(q ** c, q ** d)) for d in range(ctx.n)] for c in range(ctx.n)]
    return gf.inverse(T, ctx.base)


def rank_decompose(f: LinPoly) -> tuple[list[int], list[int]]:
    """Write f as ``sum_j a_j Tr(b_j x)`` with both families GF(q)-independent.

    The a_j are the first independent images of the power basis; the b_j
    represent the coordinate functionals through the trace form.
    """
    ctx = f.ctx
    images = basis_images(f)
    M = [list(row) for row in zip(*(ctx.coeffs(v) for v in images))]
    R, pivots = gf.rref(M, ctx.base)
    if not pivots:
        return [], []
    a = [images[p] for p in pivots]
    Tinv = trace_form_inverse(ctx)
    b = [ctx.fe(gf.mat_vec(Tinv, R[j], ctx.base)) for j in range(len(pivots))]
    return a, b


def _independent_draws(ctx: FieldCtx, t: int, rng) -> list[int]:
    picked: list[int] = []
    while len(picked) < t:
        cand = rng.nonzero_fe(ctx)
        if gf.fe_vector_rank(ctx, picked + [cand]) == len(picked) + 1:
            picked.append(cand)
    return picked


def random_error_poly(ctx: FieldCtx, t: int, seed=0) -> LinPoly:
    """A linearized polynomial of rank exactly t, drawn as ``sum_{j<t} a_j Tr(b_j x)``."""
    if not 0 <= t <= ctx.n:
        raise InvalidRank(f"rank {t} outside [0, {ctx.n}]")
    rng = as_rng(seed)
    a = _independent_draws(ctx, t, rng)
    b = _independent_draws(ctx, t, rng)
    return from_trace_terms(ctx, a, b)


def format_linpoly(f: LinPoly) -> str:
    return "lp:" + ";".join(f.ctx.format_fe(c) for c in f.coeffs)


def parse_linpoly(ctx: FieldCtx, text: str) -> LinPoly:
    body = text.strip()
    if not body.startswith("lp:"):
        raise MalformedInput(f"linearized polynomial must start with 'lp:': {text!r}")
    parts = body[3:].split(";")
    if len(parts) != ctx.n:
        raise MalformedInput(f"expected {ctx.n} coefficients, got {len(parts)}")
    return LinPoly(ctx, [ctx.parse_fe(p) for p in parts])
