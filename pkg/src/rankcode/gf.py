"""Arithmetic in GF(q) and GF(q^n), Frobenius, trace, and dense linear algebra.

Elements of GF(q^n) are plain ints.  The coefficient vector ``(c_0, ..., c_{n-1})``
of an element in the power basis of the modulus is packed as ``sum(c_i * q**i)``,
so the base field GF(q) is exactly ``range(q)`` and ``q**i`` is ``x**i``.

Fields with at most ``TABLE_LIMIT`` elements use exp/log (and, for odd q, Zech
log) tables built from a primitive element.  Larger fields fall back to
polynomial arithmetic on the digit vectors.
"""

from __future__ import annotations

import re
from typing import Iterable, Iterator, Sequence

from .errors import DivisionByZero, MalformedInput, SingularMatrix

TABLE_LIMIT = 1 << 20
# Moduli that are not primitive need a slow table build; keep those small.
SLOW_TABLE_LIMIT = 1 << 16

Matrix = list  # list of rows, each a list of ints


# ---------------------------------------------------------------------------
# Polynomials over GF(q): little-endian coefficient lists
# ---------------------------------------------------------------------------

def _ptrim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _psub(a, b, q):
    out = [0] * max(len(a), len(b))
    for i, c in enumerate(a):
        out[i] = c
    for i, c in enumerate(b):
        out[i] = (out[i] - c) % q
    return _ptrim(out)


def _pmul(a, b, q):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % q
    return _ptrim(out)


def _pmod(a, m, q):
    a = _ptrim(list(a))
    dm = len(m) - 1
    inv_lead = pow(m[-1], q - 2, q)
    while len(a) - 1 >= dm:
        c = (a[-1] * inv_lead) % q
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % q
        _ptrim(a)
    return a


def _ppowmod(a, e, m, q):
    result = [1]
    base = _pmod(a, m, q)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, q), m, q)
        base = _pmod(_pmul(base, base, q), m, q)
        e >>= 1
    return result


def _pgcd(a, b, q):
    a, b = _ptrim(list(a)), _ptrim(list(b))
    while b:
        a, b = b, _pmod(a, b, q)
    return a


def _prime_factors(N: int) -> list[int]:
    out = []
    p = 2
    while p * p <= N:
        if N % p == 0:
            out.append(p)
            while N % p == 0:
                N //= p
        p += 1 if p == 2 else 2
    if N > 1:
        out.append(N)
    return out


def is_prime(q: int) -> bool:
    return q >= 2 and _prime_factors(q) == [q]


def is_irreducible(modulus: Sequence[int], q: int) -> bool:
    """Rabin's irreducibility test for a monic polynomial over GF(q)."""
    m = _ptrim([c % q for c in modulus])
    n = len(m) - 1
    if n < 1 or m[-1] != 1:
        return False
    if n == 1:
        return True
    x = [0, 1]
    # x^(q^n) == x (mod m)
    xp = x
    powers = {0: x}
    for i in range(1, n + 1):
        xp = _ppowmod(xp, q, m, q)
        powers[i] = xp
    if _psub(powers[n], x, q):
        return False
    for p in _prime_factors(n):
        g = _pgcd(m, _psub(powers[n // p], x, q), q)
        if len(g) != 1:
            return False
    return True


def is_primitive(modulus: Sequence[int], q: int) -> bool:
    m = [c % q for c in modulus]
    if not is_irreducible(m, q):
        return False
    N = q ** (len(m) - 1) - 1
    return all(_ppowmod([0, 1], N // p, m, q) != [1] for p in _prime_factors(N))


def find_primitive_modulus(q: int, n: int) -> tuple[int, ...]:
    """Smallest primitive monic polynomial of degree n, ordered by packed low coefficients."""
    for low in range(1, q ** n):
        coeffs = [(low // q ** i) % q for i in range(n)] + [1]
        if coeffs[0] and is_primitive(coeffs, q):
            return tuple(coeffs)
    raise ValueError(f"no primitive polynomial of degree {n} over GF({q})")


def find_irreducible_modulus(q: int, n: int) -> tuple[int, ...]:
    for low in range(1, q ** n):
        coeffs = [(low // q ** i) % q for i in range(n)] + [1]
        if coeffs[0] and is_irreducible(coeffs, q):
            return tuple(coeffs)
    raise ValueError(f"no irreducible polynomial of degree {n} over GF({q})")


# (q, n) -> little-endian primitive modulus; generated by find_primitive_modulus.
BUILTIN_MODULI: dict[tuple[int, int], tuple[int, ...]] = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (2, 5): (1, 0, 1, 0, 0, 1),
    (2, 6): (1, 1, 0, 0, 0, 0, 1),
    (2, 7): (1, 1, 0, 0, 0, 0, 0, 1),
    (2, 8): (1, 0, 1, 1, 1, 0, 0, 0, 1),
    (2, 9): (1, 0, 0, 0, 1, 0, 0, 0, 0, 1),
    (2, 10): (1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1),
    (2, 11): (1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1),
    (2, 12): (1, 1, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0, 1),
    (3, 2): (2, 1, 1),
    (3, 3): (1, 2, 0, 1),
    (3, 4): (2, 1, 0, 0, 1),
    (3, 5): (1, 2, 0, 0, 0, 1),
    (3, 6): (2, 1, 0, 0, 0, 0, 1),
    (3, 7): (1, 2, 1, 0, 0, 0, 0, 1),
    (3, 8): (2, 0, 0, 1, 0, 0, 0, 0, 1),
    (3, 9): (1, 0, 1, 2, 0, 0, 0, 0, 0, 1),
    (3, 10): (2, 1, 0, 1, 0, 0, 0, 0, 0, 0, 1),
    (3, 11): (1, 2, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1),
    (3, 12): (2, 2, 2, 1, 2, 0, 0, 0, 0, 0, 0, 0, 1),
    (5, 2): (2, 1, 1),
    (5, 3): (2, 3, 0, 1),
    (5, 4): (2, 2, 1, 0, 1),
    (5, 5): (2, 4, 0, 0, 0, 1),
    (5, 6): (2, 1, 0, 0, 0, 0, 1),
    (5, 7): (2, 3, 0, 0, 0, 0, 0, 1),
    (5, 8): (3, 2, 1, 0, 0, 0, 0, 0, 1),
    (5, 9): (3, 2, 1, 0, 0, 0, 0, 0, 0, 1),
    (5, 10): (3, 1, 1, 0, 0, 0, 0, 0, 0, 0, 1),
    (5, 11): (2, 3, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1),
    (5, 12): (3, 2, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1),
}


# ---------------------------------------------------------------------------
# Fields
# ---------------------------------------------------------------------------

class PrimeField:
    """GF(q) for prime q, with the same method names as :class:`FieldCtx`."""

    def __init__(self, q: int):
        if not is_prime(q):
            raise ValueError(f"q={q} is not prime")
        self.q = q

    def add(self, a, b):
        return (a + b) % self.q

    def sub(self, a, b):
        return (a - b) % self.q

    def neg(self, a):
        return -a % self.q

    def mul(self, a, b):
        return a * b % self.q

    def inv(self, a):
        if a % self.q == 0:
            raise DivisionByZero("inverse of zero")
        return pow(a, self.q - 2, self.q)

    def __repr__(self):
        return f"PrimeField({self.q})"


class FieldCtx:
    """The extension GF(q^n) / GF(q) defined by a monic irreducible modulus.

    Instances are immutable after construction; lookup tables are built
    eagerly so concurrent readers never race on them.
    """

    def __init__(self, q: int, n: int, modulus: Sequence[int] | None = None):
        if not is_prime(q):
            raise ValueError(f"q={q} is not prime")
        if n < 2:
            raise ValueError(f"extension degree must be >= 2, got {n}")
        if modulus is None:
            modulus = BUILTIN_MODULI.get((q, n))
        if modulus is None:
            small = q ** n <= TABLE_LIMIT
            modulus = find_primitive_modulus(q, n) if small else find_irreducible_modulus(q, n)
        modulus = tuple(int(c) % q for c in modulus)
        if len(modulus) != n + 1 or modulus[-1] != 1:
            raise ValueError(f"modulus must be monic of degree {n}: {modulus}")
        if not is_irreducible(modulus, q):
            raise ValueError(f"modulus {modulus} is reducible over GF({q})")

        self.q = q
        self.n = n
        self.modulus = modulus
        self.order = q ** n
        self.base = PrimeField(q)
        self._N = self.order - 1
        self._qpow = [q ** i for i in range(n + 1)]
        # x^n = -sum(m_i x^i): packed reduction term for each top digit value
        self._red = [self._pack([(-t * c) % q for c in modulus[:n]]) for t in range(q)]

        self._exp = self._log = self._zech = None
        primitive = self.order <= TABLE_LIMIT and is_primitive(modulus, q)
        if primitive or self.order <= SLOW_TABLE_LIMIT:
            self._build_tables(primitive)
        else:
            self._frob_mats = self._frobenius_matrices()

    # -- construction helpers ------------------------------------------------

    def _pack(self, digits: Iterable[int]) -> int:
        v = 0
        for i, d in enumerate(digits):
            v += d * self._qpow[i]
        return v

    def _digits(self, a: int) -> list[int]:
        q = self.q
        out = []
        for _ in range(self.n):
            a, d = divmod(a, q)
            out.append(d)
        return out

    def _digit_add(self, a: int, b: int) -> int:
        if self.q == 2:
            return a ^ b
        q = self.q
        v = 0
        p = 1
        while a or b:
            a, da = divmod(a, q)
            b, db = divmod(b, q)
            v += ((da + db) % q) * p
            p *= q
        return v

    def _times_x(self, a: int) -> int:
        top, rest = divmod(a, self._qpow[self.n - 1])
        if self.q == 2:
            return (rest << 1) ^ self._red[top]
        return self._digit_add(rest * self.q, self._red[top])

    def _poly_mul(self, a: int, b: int) -> int:
        prod = _pmul(self._digits(a), self._digits(b), self.q)
        return self._pack(_pmod(prod, list(self.modulus), self.q))

    def _poly_pow(self, a: int, e: int) -> int:
        result, base = 1, a
        while e:
            if e & 1:
                result = self._poly_mul(result, base)
            base = self._poly_mul(base, base)
            e >>= 1
        return result

    def _build_tables(self, primitive: bool) -> None:
        N = self._N
        if primitive:
            step = self._times_x
        else:
            g = self._find_generator_slow()
            step = lambda a: self._poly_mul(a, g)  # noqa: E731
        exp = [0] * (2 * N)
        log = [-1] * self.order
        a = 1
        for i in range(N):
            exp[i] = a
            log[a] = i
            a = step(a)
        exp[N:] = exp[:N]
        self._exp, self._log = exp, log
        if self.q != 2:
            q = self.q
            zech = [-1] * N
            for k in range(N):
                e = exp[k]
                d0 = e % q
                s = e - d0 + (d0 + 1) % q
                zech[k] = log[s] if s else -1
            self._zech = zech

    def _find_generator_slow(self) -> int:
        N = self._N
        factors = _prime_factors(N)
        for g in range(2, self.order):
            if all(self._poly_pow(g, N // p) != 1 for p in factors):
                return g
        raise AssertionError("multiplicative group has no generator")

    def _frobenius_matrices(self):
        # column c of mats[i] holds the digits of (x^c)^(q^i)
        cols = [self._poly_pow(self._qpow[c], self.q) for c in range(self.n)]
        first = [self._digits(v) for v in cols]
        mats = [None, first]
        for _ in range(2, self.n):
            prev = mats[-1]
            mats.append([self._apply_cols(first, self._pack(col)) for col in prev])
        return mats

    def _apply_cols(self, cols, a: int) -> list[int]:
        q = self.q
        out = [0] * self.n
        for c, d in enumerate(self._digits(a)):
            if d:
                for r, v in enumerate(cols[c]):
                    out[r] += d * v
        return [v % q for v in out]

    # -- element I/O -----------------------------------------------------------

    def fe(self, coeffs: Sequence[int]) -> int:
        """Pack a coefficient vector (little-endian, length n) into an element."""
        if len(coeffs) != self.n or any(not 0 <= c < self.q for c in coeffs):
            raise MalformedInput(f"expected {self.n} digits in [0,{self.q}): {list(coeffs)}")
        return self._pack(coeffs)

    def coeffs(self, a: int) -> tuple[int, ...]:
        return tuple(self._digits(a))

    def format_fe(self, a: int) -> str:
        return ",".join(map(str, self._digits(a)))

    def parse_fe(self, text: str) -> int:
        body = text.strip()
        if body.startswith("<") and body.endswith(">"):
            body = body[1:-1]
        try:
            digits = [int(tok) for tok in body.split(",")]
        except ValueError:
            raise MalformedInput(f"bad field element {text!r}") from None
        return self.fe(digits)

    def spec(self) -> str:
        return f"q={self.q} n={self.n} mod={','.join(map(str, self.modulus))}"

    @classmethod
    def from_spec(cls, text: str) -> "FieldCtx":
        """Parse ``q=<int> n=<int> [mod=<c0,...,cn>]``; eta/r keys are left for the caller."""
        fields = parse_spec_tokens(text)
        unknown = set(fields) - {"q", "n", "mod", "eta", "r"}
        if unknown or "q" not in fields or "n" not in fields:
            raise MalformedInput(f"bad field spec {text!r}")
        try:
            q, n = int(fields["q"]), int(fields["n"])
            mod = [int(c) for c in fields["mod"].split(",")] if "mod" in fields else None
            return cls(q, n, mod)
        except MalformedInput:
            raise
        except ValueError as exc:
            raise MalformedInput(f"bad field spec {text!r}: {exc}") from None

    # -- arithmetic --------------------------------------------------------------

    @property
    def tabulated(self) -> bool:
        return self._exp is not None

    def elements(self) -> Iterator[int]:
        return iter(range(self.order))

    def add(self, a: int, b: int) -> int:
        if self.q == 2:
            return a ^ b
        if self._zech is None:
            return self._digit_add(a, b)
        if not a:
            return b
        if not b:
            return a
        la = self._log[a]
        z = self._zech[(self._log[b] - la) % self._N]
        return 0 if z < 0 else self._exp[la + z]

    def neg(self, a: int) -> int:
        if self.q == 2 or not a:
            return a
        if self._exp is not None:
            return self._exp[self._log[a] + self._N // 2]
        return self._pack([(-d) % self.q for d in self._digits(a)])

    def sub(self, a: int, b: int) -> int:
        if self.q == 2:
            return a ^ b
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if not a or not b:
            return 0
        if self._exp is not None:
            return self._exp[self._log[a] + self._log[b]]
        return self._poly_mul(a, b)

    def inv(self, a: int) -> int:
        if not a:
            raise DivisionByZero("inverse of zero in GF(%d^%d)" % (self.q, self.n))
        if self._exp is not None:
            return self._exp[self._N - self._log[a]]
        return self._poly_pow(a, self._N - 1)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if not a:
            if e < 0:
                raise DivisionByZero("negative power of zero")
            return 1 if e == 0 else 0
        e %= self._N
        if self._exp is not None:
            return self._exp[(self._log[a] * e) % self._N]
        return self._poly_pow(a, e)

    def scalar(self, mu: int, a: int) -> int:
        """Multiply by a base-field scalar mu in GF(q)."""
        return self.mul(mu % self.q, a)

    def frobenius(self, a: int, i: int = 1) -> int:
        """``a ** (q ** (i mod n))``."""
        i %= self.n
        if not i or a < self.q:
            return a
        if self._exp is not None:
            return self._exp[(self._log[a] * self._qpow[i]) % self._N]
        return self._pack(self._apply_cols(self._frob_mats[i], a))

    def trace(self, a: int) -> int:
        t = a
        for i in range(1, self.n):
            t = self.add(t, self.frobenius(a, i))
        return t

    def norm(self, a: int) -> int:
        p = a
        for i in range(1, self.n):
            p = self.mul(p, self.frobenius(a, i))
        return p

    def log(self, a: int) -> int:
        if self._exp is None:
            raise NotImplementedError("discrete log needs a tabulated field")
        if not a:
            raise DivisionByZero("log of zero")
        return self._log[a]

    def exp(self, e: int) -> int:
        return self._exp[e % self._N]

    def __eq__(self, other):
        return isinstance(other, FieldCtx) and (self.q, self.n, self.modulus) == (
            other.q, other.n, other.modulus)

    def __hash__(self):
        return hash((self.q, self.n, self.modulus))

    def __repr__(self):
        return f"FieldCtx({self.spec()})"


def parse_spec_tokens(text: str) -> dict[str, str]:
    """Split ``key=value`` tokens separated by whitespace."""
    out = {}
    for tok in text.split():
        m = re.fullmatch(r"([A-Za-z_]+)=(\S+)", tok)
        if not m:
            raise MalformedInput(f"bad token {tok!r}")
        out[m.group(1)] = m.group(2)
    return out


# ---------------------------------------------------------------------------
# Linear algebra over any field object exposing add/sub/mul/inv
# ---------------------------------------------------------------------------

def rref(M: Matrix, F) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form; pivot = leftmost column, lowest row index."""
    R = [list(row) for row in M]
    rows = len(R)
    cols = len(R[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        p = next((i for i in range(r, rows) if R[i][c]), None)
        if p is None:
            continue
        R[r], R[p] = R[p], R[r]
        lead = R[r][c]
        if lead != 1:
            s = F.inv(lead)
            R[r] = [F.mul(s, x) for x in R[r]]
        pivot_row = R[r]
        for i in range(rows):
            f = R[i][c]
            if i != r and f:
                R[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(R[i], pivot_row)]
        pivots.append(c)
        r += 1
    return R, pivots


def rank(M: Matrix, F) -> int:
    return len(rref(M, F)[1])


def kernel(M: Matrix, F, ncols: int | None = None) -> list[list[int]]:
    """Right kernel basis; one vector per free column, with a 1 in that column."""
    if ncols is None:
        ncols = len(M[0]) if M else 0
    R, pivots = rref(M, F) if M else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for row, p in zip(R, pivots):
            v[p] = F.neg(row[f])
        basis.append(v)
    return basis


def inverse(M: Matrix, F) -> Matrix:
    n = len(M)
    if any(len(row) != n for row in M):
        raise SingularMatrix("matrix is not square")
    aug = [list(row) + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(M)]
    R, pivots = rref(aug, F)
    if pivots[:n] != list(range(n)):
        raise SingularMatrix("matrix is singular")
    return [row[n:] for row in R]


def solve(M: Matrix, b: Sequence[int], F) -> list[int]:
    """One solution x of M x = b (free variables set to zero)."""
    ncols = len(M[0])
    R, pivots = rref([list(row) + [bi] for row, bi in zip(M, b)], F)
    if ncols in pivots:
        raise SingularMatrix("inconsistent linear system")
    x = [0] * ncols
    for row, p in zip(R, pivots):
        x[p] = row[ncols]
    return x


def mat_mul(A: Matrix, B: Matrix, F) -> Matrix:
    cols = list(zip(*B))
    out = []
    for row in A:
        out_row = []
        for col in cols:
            acc = 0
            for x, y in zip(row, col):
                if x and y:
                    acc = F.add(acc, F.mul(x, y))
            out_row.append(acc)
        out.append(out_row)
    return out


def mat_vec(A: Matrix, v: Sequence[int], F) -> list[int]:
    out = []
    for row in A:
        acc = 0
        for x, y in zip(row, v):
            if x and y:
                acc = F.add(acc, F.mul(x, y))
        out.append(acc)
    return out


def identity(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


# Named entry points for the two fields in play.

def mat_rank_gfq(M: Matrix, q: int) -> int:
    return rank([[x % q for x in row] for row in M], PrimeField(q))


def mat_kernel_gfq(M: Matrix, q: int, ncols: int | None = None) -> list[list[int]]:
    return kernel([[x % q for x in row] for row in M], PrimeField(q), ncols)


def mat_rank_gfqn(ctx: FieldCtx, M: Matrix) -> int:
    return rank(M, ctx)


def mat_inv_gfqn(ctx: FieldCtx, M: Matrix) -> Matrix:
    return inverse(M, ctx)


def mat_kernel_gfqn(ctx: FieldCtx, M: Matrix, ncols: int | None = None) -> list[list[int]]:
    return kernel(M, ctx, ncols)


def fe_vector_rank(ctx: FieldCtx, v: Sequence[int]) -> int:
    """GF(q)-rank of a vector over GF(q^n): the rank metric weight."""
    rows = [ctx.coeffs(a) for a in v if a]
    if not rows:
        return 0
    if ctx.q == 2:
        return _gf2_rank([a for a in v if a])
    return rank(rows, ctx.base)


def _gf2_rank(vals: list[int]) -> int:
    # XOR basis over packed bit vectors
    basis: list[int] = []
    for v in vals:
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
            basis.sort(reverse=True)
    return len(basis)
