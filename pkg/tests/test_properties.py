"""Property-based checks over small fields."""

from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import brute_roots
from rankcode import (CodeParams, FieldCtx, LinPoly, decode, dickson, encode, evaluate,
                      fe_vector_rank, from_trace_terms, lp_compose, lp_rank, random_error_poly,
                      rank_decompose, trinomial_roots)
from rankcode import gf

FIELDS = [FieldCtx(2, 4), FieldCtx(3, 3), FieldCtx(2, 5), FieldCtx(5, 2)]


@st.composite
def field_and_elems(draw, count):
    F = draw(st.sampled_from(FIELDS))
    return F, [draw(st.integers(0, F.order - 1)) for _ in range(count)]


@st.composite
def field_and_polys(draw, count):
    F = draw(st.sampled_from(FIELDS))
    polys = [LinPoly(F, [draw(st.integers(0, F.order - 1)) for _ in range(F.n)])
             for _ in range(count)]
    return F, polys


@given(field_and_elems(3))
def test_field_ring_laws(data):
    F, (a, b, c) = data
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    assert F.add(a, F.neg(a)) == 0
    if b:
        assert F.mul(F.div(a, b), b) == a


@given(field_and_elems(2), st.integers(-20, 20))
def test_frobenius_automorphism(data, i):
    F, (a, b) = data
    assert F.frobenius(F.mul(a, b), i) == F.mul(F.frobenius(a, i), F.frobenius(b, i))
    assert F.frobenius(F.frobenius(a, i), -i) == a


@given(field_and_polys(2))
def test_compose_matches_evaluation(data):
    F, (f, g) = data
    fg = lp_compose(f, g)
    for a in range(0, F.order, max(1, F.order // 8)):
        assert fg(a) == f(g(a))


@given(field_and_polys(1))
def test_dickson_rank_law(data):
    F, (f,) = data
    assert gf.mat_rank_gfqn(F, dickson(f)) == lp_rank(f)


@given(field_and_polys(1))
def test_rank_decompose_reconstructs(data):
    F, (f,) = data
    S1, S2 = rank_decompose(f)
    assert len(S1) == lp_rank(f)
    assert fe_vector_rank(F, S2) == len(S2)
    assert from_trace_terms(F, S1, S2) == f


@settings(max_examples=60)
@given(st.sampled_from([(2, 6, 2), (2, 5, 1), (3, 4, 2), (5, 3, 1)]), st.integers(0, 2**32))
def test_decode_round_trip(cfg, seed):
    q, n, k = cfg
    F = FieldCtx(q, n)
    P = CodeParams(F, k)
    t = seed % (P.radius + 1)
    msg = [(seed >> (3 * i)) % F.order for i in range(k)]
    g = random_error_poly(F, t, seed)
    rx = [F.add(c, e) for c, e in zip(encode(P, msg), evaluate(P, g))]
    out = decode(P, rx)
    assert out.message_vector(k) == msg and out.error == g


@given(st.sampled_from([FieldCtx(2, 6), FieldCtx(3, 4)]), st.data())
def test_trinomial_roots_complete(F, data):
    a = data.draw(st.integers(0, F.order - 1))
    b = data.draw(st.integers(0, F.order - 1))
    l = data.draw(st.integers(0, F.n - 1))
    assert trinomial_roots(F, a, b, l) == brute_roots(F, a, b, l)
