import itertools

import pytest

from rankcode import (FieldCtx, LinPoly, SplitMix64, dickson, fe_vector_rank, format_linpoly,
                      from_trace_terms, lp_compose, lp_eval, lp_kernel, lp_rank, moore,
                      parse_linpoly, random_error_poly, rank_decompose)
from rankcode import gf
from rankcode.errors import InvalidRank, MalformedInput


def rand_poly(ctx, rng):
    return LinPoly(ctx, [rng.fe(ctx) for _ in range(ctx.n)])


# --- evaluation and composition -------------------------------------------------

def test_eval_identity_trace_and_frobenius(gf8):
    ident, tr, xq = LinPoly.identity(gf8), LinPoly.trace(gf8), LinPoly.monomial(gf8, 1)
    for a in gf8.elements():
        assert lp_eval(ident, a) == a
        assert lp_eval(tr, a) == gf8.trace(a)
    assert lp_eval(xq, 2) == 4  # alpha -> alpha^2


def test_eval_is_gfq_linear(gf27):
    rng = SplitMix64(1)
    for _ in range(50):
        f = rand_poly(gf27, rng)
        a, b, mu = rng.fe(gf27), rng.fe(gf27), rng.below(3)
        assert f(gf27.add(a, b)) == gf27.add(f(a), f(b))
        assert f(gf27.scalar(mu, a)) == gf27.scalar(mu, f(a))


def test_compose_identity_and_shift(gf16):
    rng = SplitMix64(2)
    g = rand_poly(gf16, rng)
    assert lp_compose(LinPoly.identity(gf16), g) == g
    shifted = lp_compose(LinPoly.monomial(gf16, 1), g)
    assert shifted.coeffs == tuple(gf16.frobenius(g[(i - 1) % 4], 1) for i in range(4))


def test_compose_is_evaluation_homomorphism(gf8):
    rng = SplitMix64(3)
    for _ in range(20):
        f, g = rand_poly(gf8, rng), rand_poly(gf8, rng)
        fg = lp_compose(f, g)
        for a in gf8.elements():
            assert fg(a) == f(g(a))


def test_compose_associative_distributive(gf27):
    rng = SplitMix64(4)
    for _ in range(30):
        f, g, h = (rand_poly(gf27, rng) for _ in range(3))
        assert lp_compose(lp_compose(f, g), h) == lp_compose(f, lp_compose(g, h))
        assert lp_compose(f, g + h) == lp_compose(f, g) + lp_compose(f, h)
        assert lp_compose(f + g, h) == lp_compose(f, h) + lp_compose(g, h)


# --- rank, kernel --------------------------------------------------------------

def test_rank_examples(gf16):
    assert lp_rank(LinPoly.identity(gf16)) == 4
    assert lp_rank(LinPoly.trace(gf16)) == 1
    assert lp_rank(LinPoly.zero(gf16)) == 0
    for a, b in [(1, 1), (3, 7), (15, 2)]:
        assert lp_rank(from_trace_terms(gf16, [a], [b])) == 1


def test_rank_nullity(gf27):
    rng = SplitMix64(5)
    for _ in range(50):
        f = random_error_poly(gf27, rng.below(4), rng)
        kern = lp_kernel(f)
        assert lp_rank(f) + len(kern) == 3
        assert all(f(x) == 0 for x in kern)


# --- Dickson and Moore matrices --------------------------------------------------

def test_dickson_examples(gf16):
    assert dickson(LinPoly.identity(gf16)) == gf.identity(4)
    assert dickson(LinPoly.trace(gf16)) == [[1] * 4 for _ in range(4)]
    f = random_error_poly(gf16, 2, 9)
    D = dickson(f)
    assert [row[0] for row in D] == list(f.coeffs)
    assert gf.mat_rank_gfqn(gf16, D) == 2


@pytest.mark.parametrize("q,n", [(2, 4), (3, 3), (2, 5)])
def test_dickson_rank_equals_map_rank(q, n):
    F = FieldCtx(q, n)
    rng = SplitMix64(q + n)
    for _ in range(100):
        f = random_error_poly(F, rng.below(n + 1), rng) if rng.below(2) else rand_poly(F, rng)
        assert gf.mat_rank_gfqn(F, dickson(f)) == lp_rank(f)


def test_moore_examples(gf8):
    assert gf.mat_rank_gfqn(gf8, moore(gf8, [1, 2, 4], 3)) == 3
    assert gf.mat_rank_gfqn(gf8, moore(gf8, [3, 5, 6], 3)) == 2  # 3 + 5 = 6
    assert moore(gf8, [5], 1) == [[5]]
    with pytest.raises(ValueError):
        moore(gf8, [1], 0)


def test_moore_singular_iff_dependent():
    F = FieldCtx(2, 3)
    for pts in itertools.combinations(range(1, 8), 3):
        M = moore(F, list(pts), 3)
        assert (gf.mat_rank_gfqn(F, M) < 3) == (fe_vector_rank(F, list(pts)) < 3)
    F = FieldCtx(3, 2)
    for pts in itertools.product(range(9), repeat=2):
        M = moore(F, list(pts), 2)
        assert (gf.mat_rank_gfqn(F, M) < 2) == (fe_vector_rank(F, list(pts)) < 2)


# --- trace decomposition ---------------------------------------------------------

def test_rank_decompose_zero(gf16):
    assert rank_decompose(LinPoly.zero(gf16)) == ([], [])


def test_rank_decompose_single_term(gf16):
    a, b = 6, 11
    S1, S2 = rank_decompose(from_trace_terms(gf16, [a], [b]))
    assert len(S1) == len(S2) == 1
    assert from_trace_terms(gf16, S1, S2) == from_trace_terms(gf16, [a], [b])
    # b' is a GF(2)-multiple of b up to the matching rescaling of a
    assert fe_vector_rank(gf16, [S1[0], a]) == 1


@pytest.mark.parametrize("q,n,t", [(2, 5, 3), (3, 3, 2), (2, 4, 4), (5, 2, 1)])
def test_rank_decompose_round_trip(q, n, t):
    F = FieldCtx(q, n)
    rng = SplitMix64(77)
    for _ in range(30):
        f = random_error_poly(F, t, rng)
        S1, S2 = rank_decompose(f)
        assert len(S1) == len(S2) == t == lp_rank(f)
        assert fe_vector_rank(F, S1) == t and fe_vector_rank(F, S2) == t
        assert from_trace_terms(F, S1, S2) == f


# --- error generation ------------------------------------------------------------

def test_random_error_poly_ranks():
    F = FieldCtx(2, 5)
    assert random_error_poly(F, 0, 1) == LinPoly.zero(F)
    assert lp_rank(random_error_poly(F, 5, 1)) == 5
    assert all(lp_rank(random_error_poly(F, 2, s)) == 2 for s in range(100))
    with pytest.raises(InvalidRank):
        random_error_poly(F, 6, 1)
    with pytest.raises(InvalidRank):
        random_error_poly(F, -1, 1)


def test_random_error_poly_frozen(gf16):
    assert format_linpoly(random_error_poly(gf16, 2, 42)) == "lp:0,1,0,1;0,1,0,0;0,0,0,1;0,1,0,0"
    assert random_error_poly(gf16, 2, 42) == random_error_poly(gf16, 2, 42)


# --- text format ---------------------------------------------------------------

def test_linpoly_text_round_trip(gf27):
    f = random_error_poly(gf27, 2, 3)
    assert parse_linpoly(gf27, format_linpoly(f)) == f


@pytest.mark.parametrize("text", ["0,0,0;0,0,0;0,0,0", "lp:0,0,0;0,0,0", "lp:0,0,0;0,0,0;0,0,3"])
def test_linpoly_malformed(gf27, text):
    with pytest.raises(MalformedInput):
        parse_linpoly(gf27, text)


# --- Dickson structure: windows and contiguous submatrices, exhaustive at n <= 6 --

def dickson_window_checks(ctx, f):
    """Every r cyclically successive rows have rank r and span the next row;
    every r x r cyclically contiguous submatrix is invertible."""
    n = ctx.n
    D = dickson(f)
    r = lp_rank(f)
    if r == 0:
        return
    for i in range(n):
        window = [D[(i + j) % n] for j in range(r)]
        assert gf.mat_rank_gfqn(ctx, window) == r
        assert gf.mat_rank_gfqn(ctx, window + [D[(i + r) % n]]) == r
        for c in range(n):
            sub = [[row[(c + j) % n] for j in range(r)] for row in window]
            assert gf.mat_rank_gfqn(ctx, sub) == r


@pytest.mark.parametrize("q,n", [(2, 4), (3, 3), (2, 6)])
def test_dickson_windows(q, n):
    F = FieldCtx(q, n)
    rng = SplitMix64(31)
    for _ in range(40):
        dickson_window_checks(F, random_error_poly(F, rng.below(n + 1), rng))
