"""Small finite fields GF(p^m) backed by log/antilog tables.

Field elements are plain ints in ``range(q)``.  The base-p digits of an
element are the coefficients of its polynomial representative, lowest
degree first, so for m = 1 the encoding is the usual residue mod p.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product

MAX_ORDER = 1 << 16


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def _digits(x: int, p: int, m: int) -> list[int]:
    out = []
    for _ in range(m):
        out.append(x % p)
        x //= p
    return out


def _undigits(ds, p: int) -> int:
    x = 0
    for d in reversed(ds):
        x = x * p + d
    return x


class GF:
    """The field with q = p**m elements.

    A monic polynomial of degree m for which ``x`` is a primitive element
    is found by search, which fixes the log tables deterministically.
    """

    def __init__(self, p: int, m: int = 1):
        if not is_prime(p):
            raise ValueError(f"p={p} is not prime")
        if m < 1:
            raise ValueError("m must be >= 1")
        q = p**m
        if q > MAX_ORDER:
            raise ValueError(f"field order {q} exceeds {MAX_ORDER}")
        self.p, self.m, self.q = p, m, q
        self.modulus = self._find_primitive_modulus()
        self._build_tables()

    def __repr__(self):
        return f"GF({self.p}^{self.m})" if self.m > 1 else f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, GF) and (self.p, self.m) == (other.p, other.m)

    def __hash__(self):
        return hash(("GF", self.p, self.m))

    # -- construction -------------------------------------------------

    def _times_x(self, ds: list[int], modulus: list[int]) -> list[int]:
        p, m = self.p, self.m
        top = ds[-1]
        shifted = [0] + ds[:-1]
        # x^m = -(c_0 + c_1 x + ... + c_{m-1} x^{m-1})
        return [(shifted[i] - top * modulus[i]) % p for i in range(m)]

    def _find_primitive_modulus(self) -> list[int]:
        p, m, q = self.p, self.m, self.q
        if m == 1:
            # x is replaced by the least primitive root mod p
            for g in range(1, p):
                seen, x = set(), 1
                for _ in range(p - 1):
                    seen.add(x)
                    x = x * g % p
                if len(seen) == p - 1:
                    return [(-g) % p]
            raise AssertionError("no primitive root")  # unreachable for prime p
        for coeffs in product(range(p), repeat=m):
            modulus = list(reversed(coeffs))
            if modulus[0] == 0:
                continue
            ds = [1] + [0] * (m - 1)
            seen = set()
            for _ in range(q - 1):
                key = tuple(ds)
                if key in seen:
                    break
                seen.add(key)
                ds = self._times_x(ds, modulus)
            if len(seen) == q - 1 and ds == [1] + [0] * (m - 1):
                return modulus
        raise AssertionError("no primitive polynomial found")

    def _build_tables(self):
        p, m, q = self.p, self.m, self.q
        exp = [0] * (2 * (q - 1))
        log = [0] * q
        ds = [1] + [0] * (m - 1)
        for i in range(q - 1):
            x = _undigits(ds, p)
            exp[i] = x
            log[x] = i
            ds = self._times_x(ds, self.modulus)
        for i in range(q - 1, 2 * (q - 1)):
            exp[i] = exp[i - (q - 1)]
        self._exp, self._log = exp, log
        self._neg = [_undigits([(-d) % p for d in _digits(x, p, m)], p) for x in range(q)]
        if q <= 256:
            self._add_table = [[self._add_slow(x, y) for y in range(q)] for x in range(q)]
        else:
            self._add_table = None

    def _add_slow(self, x: int, y: int) -> int:
        if self.p == 2:
            return x ^ y
        p, m = self.p, self.m
        return _undigits([(a + b) % p for a, b in zip(_digits(x, p, m), _digits(y, p, m))], p)

    # -- arithmetic ----------------------------------------------------

    def elements(self) -> range:
        return range(self.q)

    def add(self, x: int, y: int) -> int:
        if self._add_table is not None:
            return self._add_table[x][y]
        return self._add_slow(x, y)

    def neg(self, x: int) -> int:
        return self._neg[x]

    def sub(self, x: int, y: int) -> int:
        return self.add(x, self._neg[y])

    def mul(self, x: int, y: int) -> int:
        if x == 0 or y == 0:
            return 0
        return self._exp[self._log[x] + self._log[y]]

    def inv(self, x: int) -> int:
        if x == 0:
            raise ZeroDivisionError("0 has no inverse in " + repr(self))
        return self._exp[(self.q - 1 - self._log[x]) % (self.q - 1)]

    def pow(self, x: int, n: int) -> int:
        if x == 0:
            return 0 if n > 0 else 1
        return self._exp[(self._log[x] * n) % (self.q - 1)]

    def prime_basis(self) -> list[int]:
        """An F_p-basis of the field: the monomials 1, x, ..., x^{m-1}."""
        return [self.p**i for i in range(self.m)]

    # -- matrices (tuples of row tuples) -------------------------------

    def mat_mul(self, A, B):
        n, k, r = len(A), len(B), len(B[0])
        out = []
        for i in range(n):
            row = []
            for j in range(r):
                s = 0
                for t in range(k):
                    s = self.add(s, self.mul(A[i][t], B[t][j]))
                row.append(s)
            out.append(tuple(row))
        return tuple(out)

    def mat_vec(self, A, v):
        out = []
        for row in A:
            s = 0
            for a, x in zip(row, v):
                s = self.add(s, self.mul(a, x))
            out.append(s)
        return tuple(out)

    def identity_matrix(self, n: int):
        return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))

    def det(self, A) -> int:
        M = [list(r) for r in A]
        n = len(M)
        d = 1
        for c in range(n):
            piv = next((r for r in range(c, n) if M[r][c] != 0), None)
            if piv is None:
                return 0
            if piv != c:
                M[c], M[piv] = M[piv], M[c]
                d = self.neg(d)
            d = self.mul(d, M[c][c])
            inv = self.inv(M[c][c])
            for r in range(c + 1, n):
                if M[r][c]:
                    f = self.mul(M[r][c], inv)
                    M[r] = [self.sub(M[r][j], self.mul(f, M[c][j])) for j in range(n)]
        return d

    def mat_inv(self, A):
        n = len(A)
        M = [list(r) + [1 if i == j else 0 for j in range(n)] for i, r in enumerate(A)]
        for c in range(n):
            piv = next((r for r in range(c, n) if M[r][c] != 0), None)
            if piv is None:
                raise ZeroDivisionError("singular matrix")
            M[c], M[piv] = M[piv], M[c]
            inv = self.inv(M[c][c])
            M[c] = [self.mul(inv, x) for x in M[c]]
            for r in range(n):
                if r != c and M[r][c]:
                    f = M[r][c]
                    M[r] = [self.sub(x, self.mul(f, y)) for x, y in zip(M[r], M[c])]
        return tuple(tuple(r[n:]) for r in M)


@lru_cache(maxsize=None)
def field(p: int, m: int = 1) -> GF:
    return GF(p, m)
