"""Small finite fields with log/antilog tables.

Elements of GF(p^m) are integers 0..q-1 whose base-p digits are polynomial
coefficients (lowest degree in the least significant digit).
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

# primitive polynomials, coefficients high degree first:
# x^2+x+1, x^3+x+1, x^2+2x+2 over GF(3), x^4+x+1
IRREDUCIBLE = {
    4: (2, (1, 1, 1)),
    8: (2, (1, 0, 1, 1)),
    9: (3, (1, 2, 2)),
    16: (2, (1, 0, 0, 1, 1)),
}
PRIMES = (2, 3, 5, 7, 11, 13)


class FieldError(ValueError):
    pass


class GF:
    """Arithmetic in GF(q) for q a prime or one of 4, 8, 9, 16."""

    def __init__(self, q: int):
        if q in PRIMES:
            self.p, self.m, self.poly = q, 1, None
        elif q in IRREDUCIBLE:
            self.p, self.poly = IRREDUCIBLE[q]
            self.m = len(self.poly) - 1
        else:
            raise FieldError(f"GF({q}) not supported (primes <= 13 and 4, 8, 9, 16)")
        self.q = q
        self._build_tables()

    def _digits(self, x: int) -> list[int]:
        return [(x // self.p**i) % self.p for i in range(self.m)]

    def _from_digits(self, d) -> int:
        return sum(int(c) * self.p**i for i, c in enumerate(d))

    def _poly_mul_x(self, x: int) -> int:
        # multiply by the generator x and reduce modulo the field polynomial
        d = [0] + self._digits(x)
        top = d[self.m]
        low = d[: self.m]
        if top:
            # poly = x^m + c_{m-1} x^{m-1} + ... + c_0, so x^m = -(c_{m-1}x^{m-1}+...)
            coeffs = list(reversed(self.poly[1:]))
            low = [(low[i] - top * coeffs[i]) % self.p for i in range(self.m)]
        return self._from_digits(low)

    def _build_tables(self):
        q = self.q
        self.exp = np.zeros(2 * q, dtype=np.int64)
        self.log = np.full(q, -1, dtype=np.int64)
        if self.m == 1:
            g = next(g for g in range(1, q) if _order_mod(g, q) == q - 1)
            x = 1
            for i in range(q - 1):
                self.exp[i] = x
                self.log[x] = i
                x = x * g % q
        else:
            x = 1
            for i in range(q - 1):
                if self.log[x] != -1:
                    raise FieldError(f"polynomial for GF({q}) is not primitive")
                self.exp[i] = x
                self.log[x] = i
                x = self._poly_mul_x(x)
        self.exp[q - 1 : 2 * q - 2] = self.exp[: q - 1]
        add = np.zeros((q, q), dtype=np.int64)
        for a in range(q):
            da = self._digits(a)
            for b in range(q):
                db = self._digits(b)
                add[a, b] = self._from_digits((x + y) % self.p for x, y in zip(da, db))
        self.add_table = add
        self.neg_table = np.array([int(np.flatnonzero(add[a] == 0)[0]) for a in range(q)])
        mul = np.zeros((q, q), dtype=np.int64)
        for a in range(1, q):
            for b in range(1, q):
                mul[a, b] = self.exp[(self.log[a] + self.log[b]) % (q - 1)]
        self.mul_table = mul

    def add(self, a: int, b: int) -> int:
        return int(self.add_table[a, b])

    def sub(self, a: int, b: int) -> int:
        return int(self.add_table[a, self.neg_table[b]])

    def neg(self, a: int) -> int:
        return int(self.neg_table[a])

    def mul(self, a: int, b: int) -> int:
        return int(self.mul_table[a, b])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return int(self.exp[(self.q - 1 - self.log[a]) % (self.q - 1)])

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def to_vector(self, a: int) -> list[int]:
        """Coordinates of ``a`` over the prime field, lowest degree first."""
        return self._digits(a)

    def __repr__(self):
        return f"GF({self.q})"


def _order_mod(g: int, p: int) -> int:
    if g == 0:
        return 0
    x, k = g, 1
    while x != 1:
        x = x * g % p
        k += 1
    return k


@lru_cache(maxsize=None)
def field(q: int) -> GF:
    return GF(q)


def is_supported(q: int) -> bool:
    return q in PRIMES or q in IRREDUCIBLE


def rank_over_prime_field(rows: np.ndarray, p: int) -> int:
    """Rank of an integer matrix over GF(p) by Gaussian elimination."""
    M = np.array(rows, dtype=np.int64) % p
    r = 0
    nrows, ncols = M.shape
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if M[i, c]), None)
        if piv is None:
            continue
        M[[r, piv]] = M[[piv, r]]
        inv = pow(int(M[r, c]), p - 2, p)
        M[r] = M[r] * inv % p
        for i in range(nrows):
            if i != r and M[i, c]:
                M[i] = (M[i] - M[i, c] * M[r]) % p
        r += 1
        if r == nrows:
            break
    return r
