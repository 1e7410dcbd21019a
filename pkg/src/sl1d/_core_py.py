"""Pure-Python kernel for dense truncated skew-series arithmetic.

A residue x = t_0 + nu t_1 + ... + nu^(m-1) t_(m-1) in O/P^m (valuation
>= 0) is encoded as the integer sum(code(t_j) * Q**j), Q the size of the
coefficient field.  The twisted product is

    (nu^i a)(nu^j b) = nu^(i+j) * a^(q^j) * b,

so one product is a double loop of table lookups.  This module is the
fallback backend; sl1d._core is the compiled twin with the same API.
"""

from __future__ import annotations

from .errors import TooLarge


class Kernel:
    """Skew-series operations at fixed precision m over a fixed tower."""

    __slots__ = (
        "p", "ell", "m", "Q", "exp", "log", "frob", "add_table", "neg_table",
        "order", "one",
    )

    def __init__(self, p, ell, m, Q, exp, log, frob, add_table, neg_table):
        if Q ** m > (1 << 62):
            raise TooLarge(f"codes for Q={Q}, m={m} exceed 62 bits")
        self.p = p
        self.ell = ell
        self.m = m
        self.Q = Q
        self.exp = exp
        self.log = log
        self.frob = frob
        self.add_table = add_table
        self.neg_table = neg_table
        self.order = Q - 1
        self.one = 1

    # -- field helpers -------------------------------------------------------

    def _fadd(self, a, b):
        t = self.add_table
        if t is not None:
            return t[a * self.Q + b]
        p = self.p
        out = 0
        mul = 1
        while a or b:
            a, ra = divmod(a, p)
            b, rb = divmod(b, p)
            out += ((ra + rb) % p) * mul
            mul *= p
        return out

    def digits(self, code):
        Q = self.Q
        out = []
        for _ in range(self.m):
            code, r = divmod(code, Q)
            out.append(r)
        return out

    def encode(self, digits):
        c = 0
        for d in reversed(digits):
            c = c * self.Q + d
        return c

    # -- series operations ---------------------------------------------------

    def mul(self, a, b):
        m, Q = self.m, self.Q
        exp, log, frob = self.exp, self.log, self.frob
        order, ell = self.order, self.ell
        ad = self.digits(a)
        bd = self.digits(b)
        out = [0] * m
        for j in range(m):
            bj = bd[j]
            if bj:
                fr = frob[j % ell]
                lbj = log[bj]
                for i in range(m - j):
                    ai = ad[i]
                    if ai:
                        fa = fr[ai]
                        prod = exp[(log[fa] + lbj) % order]
                        out[i + j] = self._fadd(out[i + j], prod)
        return self.encode(out)

    def sub(self, a, b):
        m, Q = self.m, self.Q
        neg = self.neg_table
        ad = self.digits(a)
        bd = self.digits(b)
        return self.encode([self._fadd(x, neg[y]) for x, y in zip(ad, bd)])

    def inv(self, a):
        """Inverse of a unit (nonzero constant digit) in O/P^m."""
        Q = self.Q
        t0 = a % Q
        if t0 == 0:
            raise ZeroDivisionError("not a unit in O/P^m")
        t0inv = self.exp[(-self.log[t0]) % self.order]
        z = self.sub(self.mul(t0inv, a), 1)  # a = t0 (1 + z), val z >= 1/ell
        y = 1
        for _ in range(self.m - 1):
            y = self.sub(1, self.mul(z, y))  # Horner for sum (-z)^k
        # a^{-1} = (1+z)^{-1} t0^{-1}; the right constant factor acts
        # coefficientwise.
        exp, log, order = self.exp, self.log, self.order
        lt = log[t0inv]
        out = [exp[(log[d] + lt) % order] if d else 0 for d in self.digits(y)]
        return self.encode(out)

    def pow(self, a, e):
        if e < 0:
            a = self.inv(a)
            e = -e
        r = 1
        while e:
            if e & 1:
                r = self.mul(r, a)
            e >>= 1
            if e:
                a = self.mul(a, a)
        return r

    def conj(self, g, x, ginv):
        return self.mul(self.mul(g, x), ginv)

    def orbit(self, seed, gens, ginvs, limit):
        """Closure of {seed} under x -> g x g^(-1), as a frozenset of codes."""
        seen = {seed}
        frontier = [seed]
        while frontier:
            nxt = []
            for x in frontier:
                for g, gi in zip(gens, ginvs):
                    y = self.mul(self.mul(g, x), gi)
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            if len(seen) > limit:
                raise TooLarge(f"orbit exceeded guard of {limit} elements")
            frontier = nxt
        return frozenset(seen)

    def partition_classes(self, elements, gens, ginvs):
        """Partition `elements` into closures under conjugation by the given
        generators.  Returns a list of sorted tuples covering the input."""
        remaining = set(elements)
        out = []
        for e in sorted(elements):
            if e not in remaining:
                continue
            cls = self.orbit(e, gens, ginvs, len(remaining))
            remaining -= cls
            out.append(tuple(sorted(cls)))
        return out
