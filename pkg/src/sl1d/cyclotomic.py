"""Exact arithmetic in the cyclotomic field Q(zeta_M).

Elements are coefficient tuples of length phi(M) modulo the M-th
cyclotomic polynomial; entries are Python ints or Fractions, so every
character identity below ([chi, chi] = 1, orthogonality, extension
checks) is decided exactly.  Character values enter as single roots of
unity zeta_M^e and stay small sums of them; no floating point anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache


def _poly_div_exact(num, den):
    """Exact division of integer polynomials (little-endian lists)."""
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for top in range(len(num) - 1, len(den) - 2, -1):
        c = num[top]
        if c % den[-1]:
            raise ArithmeticError("non-exact polynomial division")
        q = c // den[-1]
        out[top - len(den) + 1] = q
        if q:
            for i, d in enumerate(den):
                num[top - len(den) + 1 + i] -= q * d
    if any(num):
        raise ArithmeticError("non-exact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(M: int):
    """Little-endian integer coefficients of the M-th cyclotomic polynomial."""
    if M == 1:
        return (-1, 1)
    num = [0] * (M + 1)
    num[0] = -1
    num[M] = 1
    for d in range(1, M):
        if M % d == 0:
            num = _poly_div_exact(num, cyclotomic_poly(d))
    return tuple(num)


class CycloRing:
    """Q(zeta_M) with elements as length-phi(M) coefficient tuples."""

    def __init__(self, M: int):
        self.M = M
        self.modulus = cyclotomic_poly(M)
        self.degree = len(self.modulus) - 1
        # x^e reduced mod Phi_M, for e = 0..M-1 (integer vectors)
        red = []
        cur = [0] * self.degree
        cur[0] = 1
        red.append(tuple(cur))
        for _ in range(M - 1):
            cur = self._shift_reduce(cur)
            red.append(tuple(cur))
        self._red = red
        self.zero = tuple([0] * self.degree)
        self.one = red[0]

    def _shift_reduce(self, vec):
        out = [0] + list(vec[:-1])
        top = vec[-1]
        if top:
            for i in range(self.degree):
                out[i] -= top * self.modulus[i]
        return out

    # -- constructors --------------------------------------------------------

    def zeta(self, e: int):
        """zeta_M^e as a vector."""
        return self._red[e % self.M]

    def from_int(self, n):
        out = [0] * self.degree
        out[0] = n
        return tuple(out)

    # -- ring operations -----------------------------------------------------

    def add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple(x - y for x, y in zip(a, b))

    def neg(self, a):
        return tuple(-x for x in a)

    def scale(self, a, c):
        return tuple(x * c for x in a)

    def mul(self, a, b):
        n = self.degree
        conv = [0] * (2 * n - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        conv[i + j] += x * y
        out = list(conv[:n])
        for e in range(n, 2 * n - 1):
            c = conv[e]
            if c:
                row = self._red[e % self.M]
                for i in range(n):
                    if row[i]:
                        out[i] += c * row[i]
        return tuple(out)

    def conj(self, a):
        """Complex conjugation zeta -> zeta^{-1}."""
        out = [0] * self.degree
        for i, x in enumerate(a):
            if x:
                row = self._red[(self.M - i) % self.M]
                for k in range(self.degree):
                    if row[k]:
                        out[k] += x * row[k]
        return tuple(out)

    def is_zero(self, a):
        return all(x == 0 for x in a)

    def equal(self, a, b):
        return all(x == y for x, y in zip(a, b))

    def is_rational(self, a):
        return all(x == 0 for x in a[1:])

    def rational_value(self, a):
        if not self.is_rational(a):
            raise ArithmeticError("value is not rational")
        return a[0]

    def inv(self, a):
        """Field inverse by the extended Euclidean algorithm mod Phi_M.

        Invariant: s_i * a = r_i mod Phi_M; Phi_M is irreducible over Q, so
        the last nonzero remainder is a constant."""
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of zero in Q(zeta)")
        r0 = _trim([Fraction(c) for c in self.modulus])
        r1 = _trim([Fraction(x) for x in a])
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while not (len(r1) == 1 and r1[0] == 0):
            q, rem = _poly_divmod(r0, r1)
            r0, r1 = r1, rem
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        if len(r0) != 1 or r0[0] == 0:
            raise ZeroDivisionError("element is a zero divisor mod Phi_M")
        c = r0[0]
        inv_vec = [x / c for x in s0]
        inv_vec += [Fraction(0)] * (self.degree - len(inv_vec))
        return tuple(inv_vec[: self.degree])

    def div(self, a, b):
        return self.mul(a, self.inv(b))


def _trim(a):
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return a


def _poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _poly_sub(a, b):
    n = max(len(a), len(b))
    out = [Fraction(0)] * n
    for i, x in enumerate(a):
        out[i] += x
    for i, y in enumerate(b):
        out[i] -= y
    return _trim(out)


def _poly_divmod(a, b):
    a = [Fraction(x) for x in a]
    q = [Fraction(0)] * max(1, len(a) - len(b) + 1)
    inv_lead = 1 / b[-1]
    for top in range(len(a) - 1, len(b) - 2, -1):
        c = a[top] * inv_lead
        if c:
            q[top - len(b) + 1] = c
            for i, d in enumerate(b):
                a[top - len(b) + 1 + i] -= c * d
    return _trim(q), _trim(a)
