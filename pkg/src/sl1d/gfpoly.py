"""Polynomial arithmetic over GF(p) and small GF(p) linear algebra.

Polynomials are dense little-endian coefficient tuples of integers in
{0, ..., p-1}; the zero polynomial is ().  Only desk-scale helpers live
here (modulus validation, embeddings, kernels of small matrices); the
performance-critical field arithmetic is table-driven in sl1d.gf.
"""

from __future__ import annotations


def trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return tuple(a)


def add(a, b, p):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    for i, c in enumerate(b):
        a[i] = (a[i] + c) % p
    return trim(a)


def mul(a, b, p):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return trim(c % p for c in out)


def mod(a, m, p):
    """Remainder of a modulo monic m."""
    a = list(a)
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    for top in range(len(a) - 1, dm - 1, -1):
        c = (a[top] * inv_lead) % p
        if c:
            shift = top - dm
            for i in range(dm + 1):
                a[shift + i] = (a[shift + i] - c * m[i]) % p
    return trim(a[:dm])


def powmod(a, e, m, p):
    r = (1,)
    a = mod(a, m, p)
    while e:
        if e & 1:
            r = mod(mul(r, a, p), m, p)
        e >>= 1
        if e:
            a = mod(mul(a, a, p), m, p)
    return r


def gcd(a, b, p):
    a, b = trim(a), trim(b)
    while b:
        inv = pow(b[-1], p - 2, p)
        b = tuple((c * inv) % p for c in b)
        a, b = b, mod(a, b, p)
    return a


def evaluate(a, x, p):
    acc = 0
    for c in reversed(a):
        acc = (acc * x + c) % p
    return acc


def is_irreducible(f, p):
    """Test irreducibility of f over GF(p).

    Uses x^(p^n) = x mod f together with gcd(x^(p^(n/r)) - x, f) = 1 for
    every prime r dividing n = deg f.
    """
    f = trim(f)
    n = len(f) - 1
    if n < 1:
        return False
    x = (0, 1)
    if powmod(x, p**n, f, p) != mod(x, f, p):
        return False
    for r in _prime_divisors(n):
        g = add(powmod(x, p ** (n // r), f, p), (0, p - 1), p)
        if len(gcd(f, g, p)) > 1:
            return False
    return True


def _prime_divisors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def prime_factors(n):
    """Distinct prime factors of n by trial division (desk scale)."""
    return _prime_divisors(n)


def kernel_basis(rows, ncols, p):
    """Basis of the right kernel of a matrix over GF(p).

    `rows` is a list of length-`ncols` coefficient lists.  Returns a list
    of length-`ncols` tuples spanning {v : M v = 0}.
    """
    mat = [list(r) for r in rows]
    nrows = len(mat)
    pivot_col_of_row = []
    pivot_cols = set()
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, nrows):
            if mat[i][c] % p:
                piv = i
                break
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = pow(mat[r][c], p - 2, p)
        mat[r] = [(x * inv) % p for x in mat[r]]
        for i in range(nrows):
            if i != r and mat[i][c] % p:
                coef = mat[i][c]
                mat[i] = [(x - coef * y) % p for x, y in zip(mat[i], mat[r])]
        pivot_col_of_row.append(c)
        pivot_cols.add(c)
        r += 1
        if r == nrows:
            break
    basis = []
    for free in range(ncols):
        if free in pivot_cols:
            continue
        v = [0] * ncols
        v[free] = 1
        for i, c in enumerate(pivot_col_of_row):
            v[c] = (-mat[i][free]) % p
        basis.append(tuple(v))
    return basis
