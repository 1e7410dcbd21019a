# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled kernel for dense truncated skew-series arithmetic.

Same API and encoding as sl1d._core_py (the pure-Python fallback): a
residue of O/P^m is the integer sum(code(t_j) * Q**j); the product applies
the Galois twist a -> a^(q^j) through flat lookup tables.  Selected at
import by sl1d.kernel when built.
"""

from cpython cimport array
import array

from .errors import TooLarge

DEF MAXM = 40


cdef class Kernel:
    cdef long long[::1] exp_t
    cdef long long[::1] log_t
    cdef long long[::1] frob_t
    cdef long long[::1] add_t
    cdef long long[::1] neg_t
    cdef bint has_add
    cdef public long long p, ell, m, Q, order

    def __init__(self, p, ell, m, Q, exp, log, frob, add_table, neg_table):
        if Q ** m > (1 << 62):
            raise TooLarge(f"codes for Q={Q}, m={m} exceed 62 bits")
        if m > MAXM:
            raise TooLarge(f"precision {m} exceeds the compiled bound {MAXM}")
        self.p = p
        self.ell = ell
        self.m = m
        self.Q = Q
        self.order = Q - 1
        self.exp_t = array.array("q", exp)
        self.log_t = array.array("q", log)
        flat = []
        for fr in frob:
            flat.extend(fr)
        self.frob_t = array.array("q", flat)
        self.neg_t = array.array("q", neg_table)
        self.has_add = add_table is not None
        self.add_t = array.array("q", add_table if add_table is not None
                                 else [0])

    cdef inline long long fadd(self, long long a, long long b):
        cdef long long out, mul, ra, rb, p
        if self.has_add:
            return self.add_t[a * self.Q + b]
        out = 0
        mul = 1
        p = self.p
        while a or b:
            ra = a % p
            a = a / p
            rb = b % p
            b = b / p
            out += ((ra + rb) % p) * mul
            mul *= p
        return out

    cdef inline long long fmul(self, long long a, long long b):
        if a == 0 or b == 0:
            return 0
        return self.exp_t[(self.log_t[a] + self.log_t[b]) % self.order]

    cpdef long long mul(self, long long a, long long b):
        cdef long long ad[MAXM]
        cdef long long bd[MAXM]
        cdef long long out[MAXM]
        cdef long long Q = self.Q
        cdef int m = <int> self.m
        cdef int i, j
        cdef long long bj, ai, fa, prod, code
        cdef long long ell = self.ell
        for i in range(m):
            ad[i] = a % Q
            a = a / Q
            bd[i] = b % Q
            b = b / Q
            out[i] = 0
        for j in range(m):
            bj = bd[j]
            if bj:
                for i in range(m - j):
                    ai = ad[i]
                    if ai:
                        fa = self.frob_t[(j % ell) * Q + ai]
                        prod = self.fmul(fa, bj)
                        out[i + j] = self.fadd(out[i + j], prod)
        code = 0
        for i in range(m - 1, -1, -1):
            code = code * Q + out[i]
        return code

    cpdef long long sub(self, long long a, long long b):
        cdef long long out[MAXM]
        cdef long long Q = self.Q
        cdef int m = <int> self.m
        cdef int i
        cdef long long code
        for i in range(m):
            out[i] = self.fadd(a % Q, self.neg_t[b % Q])
            a = a / Q
            b = b / Q
        code = 0
        for i in range(m - 1, -1, -1):
            code = code * Q + out[i]
        return code

    cpdef long long inv(self, long long a):
        cdef long long Q = self.Q
        cdef long long t0 = a % Q
        cdef long long t0inv, z, y, lt, d, code
        cdef int m = <int> self.m
        cdef int i
        if t0 == 0:
            raise ZeroDivisionError("not a unit in O/P^m")
        t0inv = self.exp_t[(self.order - self.log_t[t0]) % self.order]
        z = self.sub(self.mul(t0inv, a), 1)
        y = 1
        for i in range(m - 1):
            y = self.sub(1, self.mul(z, y))
        # right constant factor acts coefficientwise
        cdef long long out[MAXM]
        for i in range(m):
            d = y % Q
            y = y / Q
            out[i] = self.fmul(d, t0inv)
        code = 0
        for i in range(m - 1, -1, -1):
            code = code * Q + out[i]
        return code

    cpdef long long pow(self, long long a, long long e):
        cdef long long r = 1
        if e < 0:
            a = self.inv(a)
            e = -e
        while e:
            if e & 1:
                r = self.mul(r, a)
            e >>= 1
            if e:
                a = self.mul(a, a)
        return r

    cpdef long long conj(self, long long g, long long x, long long ginv):
        return self.mul(self.mul(g, x), ginv)

    def digits(self, code):
        out = []
        for _ in range(self.m):
            code, r = divmod(code, self.Q)
            out.append(r)
        return out

    def encode(self, digits):
        c = 0
        for d in reversed(digits):
            c = c * self.Q + d
        return c

    def orbit(self, seed, gens, ginvs, limit):
        cdef long long x, y, g, gi
        cdef array.array garr = array.array("q", gens)
        cdef array.array giarr = array.array("q", ginvs)
        cdef long long[::1] gv = garr
        cdef long long[::1] giv = giarr
        cdef Py_ssize_t ng = len(gens), k
        seen = {seed}
        frontier = [seed]
        while frontier:
            nxt = []
            for xob in frontier:
                x = xob
                for k in range(ng):
                    y = self.mul(self.mul(gv[k], x), giv[k])
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            if len(seen) > limit:
                raise TooLarge(f"orbit exceeded guard of {limit} elements")
            frontier = nxt
        return frozenset(seen)

    def partition_classes(self, elements, gens, ginvs):
        remaining = set(elements)
        out = []
        for e in sorted(elements):
            if e not in remaining:
                continue
            cls = self.orbit(e, gens, ginvs, len(remaining))
            remaining -= cls
            out.append(tuple(sorted(cls)))
        return out
