import pytest

from rankcode import FieldCtx


@pytest.fixture(scope="session")
def gf8():
    """GF(2^3) with modulus x^3 + x + 1."""
    return FieldCtx(2, 3, (1, 1, 0, 1))


@pytest.fixture(scope="session")
def gf16():
    return FieldCtx(2, 4)


@pytest.fixture(scope="session")
def gf27():
    return FieldCtx(3, 3)


@pytest.fixture(scope="session")
def gf64():
    return FieldCtx(2, 6)


def brute_roots(ctx, a, b, l):
    """Exhaustive roots of X^(q^l+1) + a X + b."""
    return {x for x in ctx.elements()
            if not ctx.add(ctx.add(ctx.mul(ctx.frobenius(x, l), x), ctx.mul(a, x)), b)}
