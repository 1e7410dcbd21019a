"""Exact arithmetic in the finite-field tower F_p <= F_q <= F_{q^ell}.

An element of the top field F_Q (Q = p^(f*ell)) is encoded as the integer
whose base-p digits are its coordinates in the power basis of the top
modulus: code(c_0 + c_1 x + ... ) = c_0 + c_1 p + ....  Codes 0..p-1 are
the prime field.  Multiplication runs through discrete-log tables built
once at tower construction; the Galois action x -> x^(q^k), the relative
trace and norm, the embedding of F_q and the absolute trace are all
tabulated.  This keeps the twist applied inside every skew-series product
a single array lookup.

Default moduli are Conway polynomials (hard-coded in sl1d._conway for
p in {3,5,7,11,13} and the relevant degrees); explicit moduli may be
supplied instead.  With Conway defaults the residue class of x is a
primitive element and the embedding F_q -> F_{q^ell} is the norm-compatible
one sending generator to generator.
"""

from __future__ import annotations

from math import gcd as _int_gcd

from . import gfpoly
from ._conway import CONWAY
from .errors import ConfigError, EmptyFiber

#: Largest top-field size for which full tables are built.  Beyond this the
#: tower refuses to construct; big-field tuning is out of scope.
TABLE_LIMIT = 1 << 20

#: Largest field size for which the quadratic addition table is built; above
#: it addition falls back to base-p digit arithmetic.
ADD_TABLE_LIMIT = 1024


def _is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class FieldTower:
    """Tables for F_p <= F_q <= F_{q^ell} with the Frobenius generating
    Gal(F_{q^ell}/F_q).

    Immutable after construction; every operation is a pure function of
    integer codes, so instances are safe to share across threads.
    """

    def __init__(self, p, f, ell, modulus_q=None, modulus_qell=None):
        if not _is_prime(p) or p == 2:
            raise ConfigError(f"p must be an odd prime, got {p}")
        if not _is_prime(ell):
            raise ConfigError(f"ell must be prime, got {ell}")
        if ell == p:
            raise ConfigError(f"ell must differ from p, got ell = p = {p}")
        if f < 1:
            raise ConfigError(f"f must be positive, got {f}")
        self.p = p
        self.f = f
        self.ell = ell
        self.q = p**f
        self.deg = f * ell
        self.Q = p**self.deg
        if self.Q > TABLE_LIMIT:
            raise ConfigError(
                f"top field of size {self.Q} exceeds the table guard "
                f"{TABLE_LIMIT}; this engine targets desk-scale fields"
            )
        self.modulus_q = self._resolve_modulus(modulus_q, f)
        self.modulus_qell = self._resolve_modulus(modulus_qell, self.deg)
        self._build_tables()

    def _resolve_modulus(self, given, degree):
        p = self.p
        if given is not None:
            m = tuple(c % p for c in given)
            if len(m) != degree + 1 or m[-1] != 1:
                raise ConfigError(
                    f"modulus must be monic of degree {degree} "
                    f"(little-endian coefficients over GF({p}))"
                )
            if not gfpoly.is_irreducible(m, p):
                raise ConfigError(f"modulus {m} is reducible over GF({p})")
            return m
        try:
            m = CONWAY[(p, degree)]
        except KeyError:
            raise ConfigError(
                f"no default modulus for GF({p}^{degree}); pass one explicitly"
            ) from None
        if not gfpoly.is_irreducible(m, p):
            raise ConfigError(f"built-in modulus table corrupt at ({p},{degree})")
        return m

    # -- construction ------------------------------------------------------

    def _build_tables(self):
        p, Q, deg = self.p, self.Q, self.deg
        modulus = self.modulus_qell

        # exp/log for a generator of the multiplicative group.  The residue
        # of x is primitive for Conway moduli; otherwise search.
        gen = p  # code of the residue class of x (deg = f*ell >= 2)
        order = self._code_order(gen, modulus)
        if order != Q - 1:
            gen = self._find_generator(modulus)
        self.generator = gen

        exp = [1] * (Q - 1)
        log = [0] * Q  # log[0] unused
        acc = 1
        gen_poly = self._code_to_poly(gen)
        for k in range(Q - 1):
            exp[k] = acc
            log[acc] = k
            acc = self._poly_to_code(
                gfpoly.mod(gfpoly.mul(self._code_to_poly(acc), gen_poly, p), modulus, p)
            )
        if acc != 1:
            raise ConfigError("generator order mismatch while building tables")
        self.exp = exp
        self.log = log

        # addition
        if Q <= ADD_TABLE_LIMIT:
            addt = [0] * (Q * Q)
            digits = [self._digits(a) for a in range(Q)]
            for a in range(Q):
                da = digits[a]
                base = a * Q
                for b in range(a, Q):
                    s = 0
                    mulp = 1
                    db = digits[b]
                    for i in range(deg):
                        s += ((da[i] + db[i]) % p) * mulp
                        mulp *= p
                    addt[base + b] = s
                    addt[b * Q + a] = s
            self._add_table = addt
        else:
            self._add_table = None
        self.neg_table = [self._neg_digitwise(a) for a in range(Q)]

        # Frobenius powers x -> x^(q^k), k = 0..ell-1
        q = self.q
        frob1 = [0] * Q
        for a in range(1, Q):
            frob1[a] = exp[(log[a] * q) % (Q - 1)]
        frobs = [list(range(Q)), frob1]
        for _ in range(2, self.ell):
            prev = frobs[-1]
            frobs.append([frob1[prev[a]] for a in range(Q)])
        self.frob = frobs[: self.ell]

        # embedding of F_q = F_p[x]/modulus_q via x -> root, a root of
        # modulus_q inside the top field.  With compatible (Conway) moduli
        # the canonical root is generator^((Q-1)/(q-1)); otherwise any root,
        # found by scanning the unique subfield of order q.
        root = exp[(Q - 1) // (q - 1)] if q > 2 else 1
        if self._eval_small_modulus(root) != 0:
            root = None
            step = (Q - 1) // (q - 1)
            for k in range(1, q - 1):
                cand = exp[(k * step) % (Q - 1)]
                if self._eval_small_modulus(cand) == 0:
                    root = cand
                    break
            if root is None:
                raise ConfigError("small modulus has no root in the top field")
        self.embed_root = root
        embed = [0] * q
        root_pows = [1]
        for _ in range(self.f - 1):
            root_pows.append(self.mul(root_pows[-1], root))
        for small in range(q):
            acc = 0
            s = small
            for i in range(self.f):
                s, digit = divmod(s, p)
                if digit:
                    acc = self.add(acc, self.mul(digit, root_pows[i]))
            embed[small] = acc
        self.embed_table = embed
        self.embedded = frozenset(embed)
        self.embed_inverse = {big: small for small, big in enumerate(embed)}

        # relative trace/norm to the embedded F_q
        trace = [0] * Q
        for a in range(1, Q):
            t = 0
            for k in range(self.ell):
                t = self.add(t, self.frob[k][a])
            trace[a] = t
        self.trace_table = trace
        norm = [0] * Q
        step = (Q - 1) // (q - 1)
        for a in range(1, Q):
            norm[a] = exp[(log[a] * step) % (Q - 1)]
        self.norm_table = norm

        # absolute trace to F_p (codes 0..p-1 are the prime field)
        abs_trace = [0] * Q
        for a in range(1, Q):
            t = 0
            x = a
            for _ in range(deg):
                t = self.add(t, x)
                x = exp[(log[x] * p) % (Q - 1)] if x else 0
            if t >= p:
                raise ConfigError("absolute trace left the prime field")
            abs_trace[a] = t
        self.abs_trace_table = abs_trace
        # trace from the embedded F_q down to F_p: the absolute trace of an
        # embedded element picks up a factor ell, invertible since ell != p.
        self._inv_ell_mod_p = pow(self.ell % p, p - 2, p)

        # residue-character constant: embedded c with Tr_{F_q/F_p}(c) != 0
        # (c = 1 unless p divides f).
        self.psi_c = 1 if self.res_trace(1) != 0 else next(
            c for c in self.embed_table[1:] if self.res_trace(c) != 0
        )

        # norm-one subgroup of the top field (order (q^ell-1)/(q-1))
        self.norm_one = tuple(
            exp[(k * (q - 1)) % (Q - 1)] for k in range((Q - 1) // (q - 1))
        )
        self.sl1_generator = exp[(q - 1) % (Q - 1)]
        # trace-zero hyperplane (F_q-subspace of dimension ell-1)
        self.trace_zero = tuple(a for a in range(Q) if trace[a] == 0)

    # -- small-field helpers used only during construction ------------------

    def _digits(self, code):
        p = self.p
        out = []
        for _ in range(self.deg):
            code, r = divmod(code, p)
            out.append(r)
        return out

    def _code_to_poly(self, code):
        return gfpoly.trim(self._digits(code))

    def _poly_to_code(self, poly):
        c = 0
        for coef in reversed(poly):
            c = c * self.p + coef
        return c

    def _neg_digitwise(self, a):
        p = self.p
        out = 0
        mulp = 1
        while a:
            a, r = divmod(a, p)
            out += ((p - r) % p) * mulp
            mulp *= p
        return out

    def _code_order(self, code, modulus):
        if code == 0:
            return 0
        p = self.p
        poly = self._code_to_poly(code)
        acc = poly
        order = 1
        one = (1,)
        while gfpoly.trim(acc) != one:
            acc = gfpoly.mod(gfpoly.mul(acc, poly, p), modulus, p)
            order += 1
            if order > self.Q:
                raise ConfigError("order computation diverged")
        return order

    def _find_generator(self, modulus):
        factors = gfpoly.prime_factors(self.Q - 1)
        for cand in range(2, self.Q):
            poly = self._code_to_poly(cand)
            ok = True
            for r in factors:
                if gfpoly.powmod(poly, (self.Q - 1) // r, modulus, self.p) == (1,):
                    ok = False
                    break
            if ok and gfpoly.powmod(poly, self.Q - 1, modulus, self.p) == (1,):
                return cand
        raise ConfigError("no multiplicative generator found")

    def _eval_small_modulus(self, big_code):
        # evaluate modulus_q at an element of the top field
        acc = 0
        for coef in reversed(self.modulus_q):
            acc = self.mul(acc, big_code)
            acc = self.add(acc, coef % self.p)
        return acc

    # -- arithmetic on codes -------------------------------------------------

    def add(self, a, b):
        t = self._add_table
        if t is not None:
            return t[a * self.Q + b]
        p = self.p
        out = 0
        mulp = 1
        while a or b:
            a, ra = divmod(a, p)
            b, rb = divmod(b, p)
            out += ((ra + rb) % p) * mulp
            mulp *= p
        return out

    def neg(self, a):
        return self.neg_table[a]

    def sub(self, a, b):
        return self.add(a, self.neg_table[b])

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        return self.exp[(self.log[a] + self.log[b]) % (self.Q - 1)]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in the field")
        return self.exp[(-self.log[a]) % (self.Q - 1)]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e):
        if a == 0:
            if e <= 0:
                raise ZeroDivisionError("0 raised to a nonpositive power")
            return 0
        return self.exp[(self.log[a] * e) % (self.Q - 1)]

    def scalar(self, n):
        """Code of the prime-field element n mod p."""
        return n % self.p

    def frobenius(self, a, k):
        return self.frob[k % self.ell][a]

    def galois_trace(self, a):
        return self.trace_table[a]

    def galois_norm(self, a):
        return self.norm_table[a] if a else 0

    def abs_trace(self, a):
        """Absolute trace to F_p, returned as an integer in [0, p)."""
        return self.abs_trace_table[a]

    def res_trace(self, a):
        """Trace of an embedded F_q element down to F_p, in [0, p)."""
        return (self.abs_trace_table[a] * self._inv_ell_mod_p) % self.p

    def is_embedded(self, a):
        return a in self.embedded

    def embed(self, small_code):
        return self.embed_table[small_code]

    def element_order(self, a):
        if a == 0:
            raise ZeroDivisionError("0 has no multiplicative order")
        n = self.Q - 1
        return n // _int_gcd(n, self.log[a])

    def coeffs_of(self, code):
        """Coordinates of a code in the power basis (length f*ell)."""
        return tuple(self._digits(code))

    def code_of(self, coeffs):
        if len(coeffs) > self.deg:
            raise ConfigError("too many coordinates")
        c = 0
        for coef in reversed([x % self.p for x in coeffs]):
            c = c * self.p + coef
        return c

    def __repr__(self):
        return f"FieldTower(p={self.p}, f={self.f}, ell={self.ell})"


class FqlElem:
    """Element of the top field F_{q^ell}, a thin immutable wrapper over an
    integer code.  Supports ring operators; use the module-level functions
    for the Galois structure maps."""

    __slots__ = ("tower", "code")

    def __init__(self, tower, code):
        self.tower = tower
        self.code = code

    @property
    def coeffs(self):
        return self.tower.coeffs_of(self.code)

    def _coerce(self, other):
        if isinstance(other, FqlElem):
            if other.tower is not self.tower:
                raise ConfigError("elements of different towers")
            return other.code
        if isinstance(other, int):
            return other % self.tower.p
        return NotImplemented

    def __add__(self, other):
        c = self._coerce(other)
        if c is NotImplemented:
            return NotImplemented
        return FqlElem(self.tower, self.tower.add(self.code, c))

    __radd__ = __add__

    def __neg__(self):
        return FqlElem(self.tower, self.tower.neg(self.code))

    def __sub__(self, other):
        c = self._coerce(other)
        if c is NotImplemented:
            return NotImplemented
        return FqlElem(self.tower, self.tower.sub(self.code, c))

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        c = self._coerce(other)
        if c is NotImplemented:
            return NotImplemented
        return FqlElem(self.tower, self.tower.mul(self.code, c))

    __rmul__ = __mul__

    def __truediv__(self, other):
        c = self._coerce(other)
        if c is NotImplemented:
            return NotImplemented
        return FqlElem(self.tower, self.tower.div(self.code, c))

    def __pow__(self, e):
        return FqlElem(self.tower, self.tower.pow(self.code, e))

    def inverse(self):
        return FqlElem(self.tower, self.tower.inv(self.code))

    def __eq__(self, other):
        if isinstance(other, FqlElem):
            return self.tower is other.tower and self.code == other.code
        if isinstance(other, int):
            return self.code == other % self.tower.p
        return NotImplemented

    def __hash__(self):
        return hash((id(self.tower), self.code))

    def __bool__(self):
        return self.code != 0

    def __repr__(self):
        return f"FqlElem({self.code})"


def elem(tower, code):
    return FqlElem(tower, code)


def frobenius(x: FqlElem, k: int) -> FqlElem:
    """x^(q^k); a field automorphism fixing the embedded F_q, of order ell."""
    return FqlElem(x.tower, x.tower.frobenius(x.code, k))


def galois_trace(x: FqlElem) -> FqlElem:
    """Relative trace sum_{k<ell} x^(q^k), landing in the embedded F_q."""
    return FqlElem(x.tower, x.tower.galois_trace(x.code))


def galois_norm(x: FqlElem) -> FqlElem:
    """Relative norm prod_{k<ell} x^(q^k) = x^((q^ell-1)/(q-1)) for x != 0."""
    return FqlElem(x.tower, x.tower.galois_norm(x.code))


def hilbert90_fiber(u: FqlElem, k: int = 1):
    """All x with x / x^(q^k) = u, as a frozenset of FqlElem.

    The map x -> x/x^(q^k) is a homomorphism of the unit group; its image
    for k coprime to ell is the norm-one subgroup, and nonempty fibers are
    cosets of the embedded F_q^* (size q - 1).  Raises EmptyFiber when u is
    not attained.
    """
    tw = u.tower
    if u.code == 0:
        raise EmptyFiber("0 is not a twisted quotient of a unit")
    out = [
        x
        for x in range(1, tw.Q)
        if tw.div(x, tw.frobenius(x, k)) == u.code
    ]
    if not out:
        raise EmptyFiber(f"{u!r} is not of the form x / frobenius(x, {k})")
    return frozenset(FqlElem(tw, x) for x in out)
