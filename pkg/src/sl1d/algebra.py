"""Exact arithmetic in D = (L, sigma, pi) and its truncations O/P^m.

Elements are truncated twisted nu-series: x = sum_j nu^j t_j with
Teichmueller coefficients t_j in F_{q^ell} (equal characteristic, so the
constant field is literally the coefficient ring and addition carries no
carries).  The single multiplication law is

    (nu^i a) (nu^j b) = nu^(i+j) a^(q^j) b,        nu^ell = pi central.

A DElem stores (lo, coefficient window, precision): exponents j with
lo <= j < prec are determined, everything at or above prec is unknown.
prec = math.inf marks an exact finite series (a lift).  Ring operations
track precision: products of exact lifts stay exact, which is what the
duality pairing relies on.

Structure maps: valuation, reduced trace/norm (via the regular
representation on the basis 1, nu, ..., nu^(ell-1)), the jump of an
element and the central/ramified/unramified trichotomy, unique ell-th
roots of central one-units, factorization through the norm-one one-units,
constructive conjugation of unramified elements into L, and the truncated
exp/log between congruence layers.
"""

from __future__ import annotations

import enum
import itertools
import math
from fractions import Fraction

from .errors import (
    BadInput,
    InsufficientPrecision,
    NotAUnit,
    NotUnramified,
    PrecisionMismatch,
    TooLarge,
    UndeterminedAtPrecision,
    WindowViolation,
)
from .gf import FieldTower

INF = math.inf


class Params:
    """Working context: a field tower and the precision m of O/P^m."""

    __slots__ = ("tower", "m")

    def __init__(self, tower: FieldTower, m: int):
        if m < 1:
            raise BadInput(f"precision m must be >= 1, got {m}")
        self.tower = tower
        self.m = m

    # element factories ------------------------------------------------------

    def zero(self):
        return DElem(self.tower, self.m, 0, ())

    def one(self):
        return DElem(self.tower, self.m, 0, (1,))

    def nu(self, j=1):
        return nu(self.tower, j).truncate(self.m)

    def pi(self, j=1):
        return nu(self.tower, self.tower.ell * j).truncate(self.m)

    def teich(self, code):
        return teich(self.tower, code).truncate(self.m)

    def from_nu_coeffs(self, lo, coeffs):
        return DElem(self.tower, self.m, lo, tuple(coeffs))

    def from_code(self, code):
        return decode(self.tower, self.m, code)

    def __repr__(self):
        return f"Params({self.tower!r}, m={self.m})"


class DElem:
    """Truncated twisted nu-series; immutable and hashable."""

    __slots__ = ("tower", "prec", "lo", "coeffs")

    def __init__(self, tower, prec, lo, coeffs, _canonical=False):
        self.tower = tower
        if not _canonical:
            coeffs = tuple(coeffs)
            # trim leading zeros (raising lo) and trailing zeros
            i = 0
            while i < len(coeffs) and coeffs[i] == 0:
                i += 1
            j = len(coeffs)
            while j > i and coeffs[j - 1] == 0:
                j -= 1
            lo = lo + i
            coeffs = coeffs[i:j]
            if prec is not INF and coeffs and lo + len(coeffs) > prec:
                coeffs = coeffs[: prec - lo]
                # re-trim trailing zeros after truncation
                k = len(coeffs)
                while k and coeffs[k - 1] == 0:
                    k -= 1
                coeffs = coeffs[:k]
            if not coeffs:
                lo = 0
        self.prec = prec
        self.lo = lo
        self.coeffs = tuple(coeffs)

    # -- basic structure -----------------------------------------------------

    def is_zero(self):
        return not self.coeffs

    def nu_val(self):
        """nu-adic valuation: lo for nonzero, prec for a truncated zero,
        +inf for the exact zero."""
        if self.coeffs:
            return self.lo
        return self.prec

    def val(self):
        """Valuation normalized so val(pi) = 1; +inf semantics as nu_val."""
        v = self.nu_val()
        if v is INF:
            return INF
        return Fraction(v, self.tower.ell)

    def coeff(self, j):
        """Coefficient of nu^j; 0 outside the stored window but below the
        precision, error at or above the precision."""
        if self.prec is not INF and j >= self.prec:
            raise InsufficientPrecision(
                f"coefficient of nu^{j} not determined at precision {self.prec}"
            )
        if not self.coeffs or j < self.lo or j >= self.lo + len(self.coeffs):
            return 0
        return self.coeffs[j - self.lo]

    def support(self):
        return tuple(
            self.lo + i for i, c in enumerate(self.coeffs) if c
        )

    def exact_lift(self):
        """The stored window read as an exact element of D (zero-extended)."""
        return DElem(self.tower, INF, self.lo, self.coeffs)

    def truncate(self, prec):
        if self.prec is not INF and prec > self.prec:
            raise InsufficientPrecision(
                f"cannot refine precision {self.prec} to {prec}"
            )
        return DElem(self.tower, prec, self.lo, self.coeffs)

    # -- ring operations -----------------------------------------------------

    def _check(self, other):
        if not isinstance(other, DElem):
            raise TypeError(f"DElem expected, got {type(other).__name__}")
        if other.tower is not self.tower:
            raise PrecisionMismatch("operands live in different towers")

    # Precision follows the valuation-aware rule: a sum is known to the
    # smaller of the two precisions, a product x*y to
    # min(prec(x) + val(y), prec(y) + val(x)) in nu-exponents.  Exact
    # elements (prec = inf) never limit the result.

    def __add__(self, other):
        self._check(other)
        prec = min(self.prec, other.prec)
        if self.is_zero():
            return DElem(self.tower, prec, other.lo, other.coeffs)
        if other.is_zero():
            return DElem(self.tower, prec, self.lo, self.coeffs)
        lo = min(self.lo, other.lo)
        hi = max(self.lo + len(self.coeffs), other.lo + len(other.coeffs))
        add = self.tower.add
        out = [0] * (hi - lo)
        for i, c in enumerate(self.coeffs):
            out[self.lo - lo + i] = c
        for i, c in enumerate(other.coeffs):
            k = other.lo - lo + i
            out[k] = add(out[k], c)
        return DElem(self.tower, prec, lo, out)

    def __neg__(self):
        neg = self.tower.neg
        return DElem(
            self.tower, self.prec, self.lo,
            tuple(neg(c) for c in self.coeffs), _canonical=True,
        )

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        pa, pb = self.prec, other.prec
        va, vb = self.nu_val(), other.nu_val()
        prec = min(pa + vb if pa is not INF else INF,
                   pb + va if pb is not INF else INF)
        if self.is_zero() or other.is_zero():
            return DElem(self.tower, prec, 0, ())
        tw = self.tower
        ell = tw.ell
        lo = self.lo + other.lo
        hi = self.lo + len(self.coeffs) + other.lo + len(other.coeffs) - 1
        if prec is not INF:
            hi = min(hi, prec - 1)
        if hi < lo:
            return DElem(self.tower, prec, 0, ())
        out = [0] * (hi - lo + 1)
        add, mul, frob = tw.add, tw.mul, tw.frob
        for jo, b in enumerate(other.coeffs):
            if not b:
                continue
            j = other.lo + jo
            fr = frob[j % ell]
            for io, a in enumerate(self.coeffs):
                if not a:
                    continue
                k = self.lo + io + j
                if k > hi:
                    break
                out[k - lo] = add(out[k - lo], mul(fr[a], b))
        return DElem(self.tower, prec, lo, out)

    def __pow__(self, e):
        if e < 0:
            return inv(self) ** (-e)
        r = one(self.tower) if self.prec is INF else DElem(
            self.tower, self.prec, 0, (1,))
        b = self
        while e:
            if e & 1:
                r = r * b
            e >>= 1
            if e:
                b = b * b
        return r

    def scale_right(self, code):
        """x * t for a constant t: acts coefficientwise."""
        if code == 0:
            return DElem(self.tower, self.prec, 0, ())
        mul = self.tower.mul
        return DElem(self.tower, self.prec, self.lo,
                     tuple(mul(c, code) for c in self.coeffs),
                     _canonical=True)

    def scale_left(self, code):
        """t * x for a constant t: the twist applies t^(q^j) at nu^j."""
        if code == 0:
            return DElem(self.tower, self.prec, 0, ())
        tw = self.tower
        return DElem(
            self.tower, self.prec, self.lo,
            tuple(
                tw.mul(tw.frobenius(code, (self.lo + i) % tw.ell), c)
                for i, c in enumerate(self.coeffs)
            ),
            _canonical=True,
        )

    def central_shift(self, k):
        """x * pi^k (central): shifts every exponent by ell*k."""
        d = self.tower.ell * k
        prec = self.prec if self.prec is INF else self.prec + d
        return DElem(self.tower, prec, self.lo + d, self.coeffs,
                     _canonical=True)

    # -- comparisons ---------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, DElem):
            return NotImplemented
        return (
            self.tower is other.tower
            and self.prec == other.prec
            and (self.is_zero() and other.is_zero()
                 or (self.lo == other.lo and self.coeffs == other.coeffs))
        )

    def __hash__(self):
        return hash((id(self.tower), self.prec, self.lo if self.coeffs else 0,
                     self.coeffs))

    def __repr__(self):
        if not self.coeffs:
            return f"O(nu^{self.prec})"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c:
                j = self.lo + i
                parts.append(f"[{c}]nu^{j}" if j else f"[{c}]")
        tail = "" if self.prec is INF else f" + O(nu^{self.prec})"
        return " + ".join(parts) + tail

    # -- serialization -------------------------------------------------------

    def to_dict(self):
        tw = self.tower
        return {
            "lo": self.lo if self.coeffs else 0,
            "coeffs": [list(tw.coeffs_of(c)) for c in self.coeffs],
        }

    @classmethod
    def from_dict(cls, tower, d, prec):
        coeffs = tuple(tower.code_of(v) for v in d["coeffs"])
        return cls(tower, prec, d["lo"], coeffs)


# -- constructors ------------------------------------------------------------


def zero(tower, prec=INF):
    return DElem(tower, prec, 0, ())


def one(tower, prec=INF):
    return DElem(tower, prec, 0, (1,))


def nu(tower, j=1):
    return DElem(tower, INF, j, (1,))


def pi(tower, j=1):
    return DElem(tower, INF, tower.ell * j, (1,))


def teich(tower, code):
    if isinstance(code, int):
        c = code
    else:  # FqlElem
        c = code.code
    return DElem(tower, INF, 0, (c,))


def scalar(tower, n):
    return DElem(tower, INF, 0, (n % tower.p,))


# -- module operations --------------------------------------------------------


def val(x: DElem):
    return x.val()


def inv(x: DElem, prec=None) -> DElem:
    """Inverse of a unit of O (valuation 0), exact modulo the working
    precision.  Leading Teichmueller inversion followed by the geometric
    series for the one-unit part."""
    if x.nu_val() != 0:
        raise NotAUnit(f"valuation {x.val()} != 0")
    return _inv_by_val(x, prec)


def inv_general(x: DElem, prec=None) -> DElem:
    """Inverse in D of any nonzero element (negative valuations allowed)."""
    if x.is_zero():
        raise ZeroDivisionError("inverse of zero")
    return _inv_by_val(x, prec)


def _inv_by_val(x, prec):
    tw = x.tower
    v = x.lo
    u = DElem(tw, x.prec if x.prec is INF else x.prec - v, 0, x.coeffs)
    if u.prec is INF:
        if prec is None:
            if len(u.coeffs) == 1:
                return teich(tw, tw.inv(u.coeffs[0])) * nu(tw, -v) if v \
                    else teich(tw, tw.inv(u.coeffs[0]))
            raise InsufficientPrecision(
                "inverse of an exact non-monomial is an infinite series; "
                "pass prec"
            )
        u = u.truncate(prec)
    elif prec is not None:
        u = u.truncate(prec)
    t0 = u.coeffs[0]
    t0inv = tw.inv(t0)
    w = u.scale_left(t0inv)  # u = t0 * w with w a one-unit
    z = w - one(tw, u.prec)
    y = one(tw, u.prec)
    onel = one(tw, u.prec)
    for _ in range(int(u.prec) - 1):
        y = onel - z * y
    res = y.scale_right(t0inv)
    if v:
        res = res * nu(x.tower, -v)
    return res


def conjugate(g: DElem, x: DElem) -> DElem:
    """g x g^{-1} for a unit g, at the precision the operands support."""
    if g.nu_val() != 0:
        raise NotAUnit("conjugator must be a unit")
    gi = inv(g) if g.prec is not INF else inv(g, prec=None)
    return g * x * gi


def trd(x: DElem) -> DElem:
    """Reduced trace: the Galois trace of the L-component of nu-exponent
    0 mod ell, a central series."""
    tw = x.tower
    ell = tw.ell
    if x.prec is INF:
        prec = INF
    else:
        prec = ell * (-((-x.prec) // ell))  # ell * ceil(prec/ell)
    if x.is_zero():
        return DElem(tw, prec, 0, ())
    out = {}
    tr = tw.galois_trace
    for i, c in enumerate(x.coeffs):
        j = x.lo + i
        if c and j % ell == 0:
            t = tr(c)
            if t:
                out[j] = t
    if not out:
        return DElem(tw, prec, 0, ())
    lo = min(out)
    hi = max(out)
    return DElem(tw, prec, lo,
                 tuple(out.get(j, 0) for j in range(lo, hi + 1)))


def _series_mul(a, b, N, tw, twist=0):
    """Product of pi-coefficient lists mod pi^N; coefficients in F_{q^ell}.
    If twist != 0, a is first mapped through frobenius^twist coefficientwise.
    """
    out = [0] * N
    add, mul = tw.add, tw.mul
    fr = tw.frob[twist % tw.ell]
    for i in range(min(len(a), N)):
        ai = fr[a[i]] if twist else a[i]
        if ai:
            for j in range(min(len(b), N - i)):
                bj = b[j]
                if bj:
                    out[i + j] = add(out[i + j], mul(ai, bj))
    return out


def _series_det(mat, N, tw):
    """Determinant of a matrix of pi-series (cofactor expansion)."""
    n = len(mat)
    if n == 1:
        return list(mat[0][0])[:N] + [0] * max(0, N - len(mat[0][0]))
    out = [0] * N
    add, neg = tw.add, tw.neg
    for i in range(n):
        if all(c == 0 for c in mat[i][0]):
            continue
        minor = [row[1:] for k, row in enumerate(mat) if k != i]
        sub = _series_det(minor, N, tw)
        term = _series_mul(mat[i][0], sub, N, tw)
        if i % 2:
            term = [neg(c) for c in term]
        out = [add(x, y) for x, y in zip(out, term)]
    return out


def nrd_unit_series(tw, coeff_of, N):
    """Central pi-series (length N) of the reduced norm of a unit whose
    nu-coefficients are supplied by coeff_of(j).

    The regular representation of x = sum_i nu^i x_i (x_i in L) on the
    basis (1, nu, ..., nu^(ell-1)) has (i, j) entry sigma^j(x_{i-j}) for
    i >= j and pi * sigma^j(x_{ell+i-j}) for i < j; the determinant is the
    reduced norm.
    """
    ell = tw.ell
    xser = [[coeff_of(i + k * ell) for k in range(N)] for i in range(ell)]
    mat = []
    for i in range(ell):
        row = []
        for j in range(ell):
            if i >= j:
                src = xser[i - j]
                ser = [tw.frob[j % ell][c] for c in src]
            else:
                src = xser[ell + i - j]
                ser = [0] + [tw.frob[j % ell][c] for c in src[: N - 1]]
            row.append(ser)
        mat.append(row)
    return _series_det(mat, N, tw)


def nrd(x: DElem, central_prec=None) -> DElem:
    """Reduced norm, a central series; multiplicative.

    For a unit known mod P^m the result is exact mod p^ceil(m/ell); the
    requested central precision may not exceed that bound.
    """
    tw = x.tower
    ell = tw.ell
    if x.is_zero():
        if x.prec is INF:
            return zero(tw)
        return DElem(tw, ell * x.prec, 0, ())
    v = x.lo
    uprec = x.prec if x.prec is INF else x.prec - v
    avail = INF if uprec is INF else -((-uprec) // ell)  # ceil(uprec/ell)
    if central_prec is None:
        # exact input: the determinant of a finite series is finite; carry
        # enough pi-digits to hold it exactly.
        N = len(x.coeffs) + ell if avail is INF else avail
    else:
        if central_prec > avail:
            raise InsufficientPrecision(
                f"norm determined only mod pi^{avail} at this precision"
            )
        N = central_prec
    coeff_of = lambda j: (
        x.coeffs[j + v - x.lo] if 0 <= j + v - x.lo < len(x.coeffs) else 0
    )
    det = nrd_unit_series(tw, coeff_of, N)
    for c in det:
        if c and not tw.is_embedded(c):
            raise AssertionError("reduced norm left the base field")
    # nrd(nu^v) = ((-1)^(ell-1) pi)^v
    sign = 1 if ((ell - 1) * v) % 2 == 0 else -1
    coeffs = []
    for k, c in enumerate(det):
        coeffs.extend([c] + [0] * (ell - 1))
    out = DElem(tw, INF if uprec is INF else ell * N, 0, coeffs)
    out = out.central_shift(v)
    if sign < 0:
        out = -out
    return out


def jump(y: DElem):
    """First nu-expansion index where y leaves the center: the least j with
    nu^j t_j not central, i.e. (ell does not divide j and t_j != 0) or
    (ell divides j and t_j outside the embedded F_q).  +inf only for an
    exactly central element; a central-looking truncation raises."""
    tw = y.tower
    ell = tw.ell
    for i, c in enumerate(y.coeffs):
        j = y.lo + i
        if c and (j % ell != 0 or not tw.is_embedded(c)):
            return j
    if y.prec is INF:
        return INF
    raise UndeterminedAtPrecision(
        f"element is central to precision {y.prec}; jump undetermined"
    )


class ElementClass(enum.Enum):
    CENTRAL = "central"
    RAMIFIED = "ramified"
    UNRAMIFIED = "unramified"


def classify(y: DElem) -> ElementClass:
    j = jump(y)
    if j is INF:
        return ElementClass.CENTRAL
    if j % y.tower.ell != 0:
        return ElementClass.RAMIFIED
    return ElementClass.UNRAMIFIED


def jump_traceless_check(y: DElem) -> bool:
    """For traceless nonzero y the jump equals ell * val(y)."""
    if y.is_zero():
        raise BadInput("zero element")
    if not trd(y).is_zero():
        raise BadInput("element has nonzero reduced trace")
    return jump(y) == y.nu_val()


def is_central(x: DElem) -> bool:
    """Central within the stored window (exactly central when exact)."""
    tw = x.tower
    ell = tw.ell
    for i, c in enumerate(x.coeffs):
        j = x.lo + i
        if c and (j % ell != 0 or not tw.is_embedded(c)):
            return False
    return True


def ell_th_root_unit(u: DElem) -> DElem:
    """The unique central xi = 1 mod p with xi^ell = u, for central
    u = 1 mod p.  Newton iteration; converges because ell != p."""
    tw = u.tower
    if not is_central(u):
        raise BadInput("argument is not central")
    if u.prec is INF:
        raise BadInput("pass a truncated central element")
    if u.coeff(0) != 1:
        raise BadInput("argument is not a one-unit")
    ell = tw.ell
    ell_scalar = scalar(tw, ell).truncate(u.prec)
    xi = one(tw, u.prec)
    for _ in range(int(u.prec) + 1):
        f = xi**ell - u
        if f.is_zero():
            return xi
        deriv = ell_scalar * xi ** (ell - 1)
        xi = xi - f * inv(deriv)
    raise AssertionError("Newton iteration failed to converge")


def normalize_to_G1(x: DElem):
    """Factor a unit as x = t0 * xi * h with t0 Teichmueller, xi central in
    1 + p with xi^ell = Nrd(t0^{-1} x), and h a norm-one one-unit.
    Returns (h, t0, xi); h is a GroupElem at the precision of x."""
    if x.nu_val() != 0:
        raise NotAUnit(f"valuation {x.val()} != 0")
    if x.prec is INF:
        raise BadInput("pass a truncated unit")
    tw = x.tower
    m = int(x.prec)
    t0 = x.coeff(0)
    w = teich(tw, tw.inv(t0)).truncate(m) * x
    n = nrd(w)
    xi = ell_th_root_unit(n.truncate(m))
    h = inv(xi) * w
    return GroupElem(h, m), t0, xi


def conjugate_unramified_into_L(y: DElem):
    """For unramified y (finite precision), find h in G^1 and y_L in L with
    h y_L h^{-1} = y at the working precision.

    Constructive at each layer: if u = t_0 + ... has a stray coefficient
    t_j at an exponent j prime to ell, conjugating by 1 + nu^j s with
    s = -t_j / (t_0^(q^j) - t_0) clears it without touching lower layers.
    """
    if classify(y) is not ElementClass.UNRAMIFIED:
        raise NotUnramified("element is not unramified")
    if y.prec is INF:
        raise BadInput("pass a truncated element")
    tw = y.tower
    ell = tw.ell
    mwork = int(y.prec)
    j0 = jump(y)
    # central head below the jump
    head = DElem(tw, y.prec, y.lo,
                 tuple(c if (y.lo + i) < j0 else 0
                       for i, c in enumerate(y.coeffs)))
    y0 = y - head
    k = j0 // ell
    u = y0.central_shift(-k)
    M = int(u.prec)
    t0 = u.coeff(0)
    H = one(tw, mwork)
    for j in range(1, M):
        if j % ell == 0:
            continue
        t_j = u.coeff(j)
        if t_j == 0:
            continue
        denom = tw.sub(tw.frobenius(t0, j), t0)
        s = tw.neg(tw.div(t_j, denom))
        h_exact = one(tw) + nu(tw, j).scale_right(s)
        h = h_exact.truncate(M)
        u = inv(h) * u * h
        H = H * h_exact.truncate(mwork)
    y_L = head + u.central_shift(k)
    # adjust H into G^1 (central factor does not move conjugation)
    xi = ell_th_root_unit(nrd(H).truncate(mwork))
    h_out = inv(xi) * H
    return GroupElem(h_out, mwork), y_L


# -- congruence windows: Lie and group layers ---------------------------------


class LieElem:
    """A coset x + g^m with x in g^r: a traceless truncated series whose
    significant exponents lie in [r, m)."""

    __slots__ = ("d", "r", "m")

    def __init__(self, d: DElem, r: int, m: int, check=True):
        if d.prec is INF:
            d = d.truncate(m)
        if check:
            if d.prec != m:
                raise WindowViolation(
                    f"element precision {d.prec} != window top {m}")
            if not d.is_zero() and d.lo < r:
                raise WindowViolation(
                    f"element valuation {d.lo} below window bottom {r}")
            if not trd(d).is_zero():
                raise BadInput("window element has nonzero reduced trace")
        self.d = d
        self.r = r
        self.m = m

    def window(self):
        return (self.r, self.m)

    def __eq__(self, other):
        return (isinstance(other, LieElem) and self.d == other.d
                and self.r == other.r and self.m == other.m)

    def __hash__(self):
        return hash((self.d, self.r, self.m))

    def __add__(self, other):
        return LieElem(self.d + other.d, self.r, self.m, check=False)

    def __neg__(self):
        return LieElem(-self.d, self.r, self.m, check=False)

    def bracket(self, other):
        ab = (self.d * other.d).truncate(self.m)
        ba = (other.d * self.d).truncate(self.m)
        return LieElem(ab - ba, self.r, self.m, check=False)

    def __repr__(self):
        return f"LieElem({self.d!r}, window=({self.r},{self.m}))"


class GroupElem:
    """A coset of G^m in G: a unit series with reduced norm 1 at the
    central precision ceil(m/ell)."""

    __slots__ = ("d", "m")

    def __init__(self, d: DElem, m: int, check=True):
        if d.prec is INF:
            d = d.truncate(m)
        if check:
            if d.prec != m:
                raise PrecisionMismatch(
                    f"element precision {d.prec} != group precision {m}")
            if d.nu_val() != 0:
                raise NotAUnit("group element must be a unit")
            n = nrd(d)
            if n != one(d.tower, n.prec):
                raise BadInput("reduced norm is not 1 at this precision")
        self.d = d
        self.m = m

    def __mul__(self, other):
        return GroupElem(self.d * other.d, self.m, check=False)

    def inverse(self):
        return GroupElem(inv(self.d), self.m, check=False)

    def conj(self, x: "GroupElem"):
        """self * x * self^{-1}."""
        return GroupElem(self.d * x.d * inv(self.d), self.m, check=False)

    def __eq__(self, other):
        return isinstance(other, GroupElem) and self.d == other.d

    def __hash__(self):
        return hash(self.d)

    def code(self):
        return encode(self.d, self.m)

    def __repr__(self):
        return f"GroupElem({self.d!r})"


def texp(x: LieElem) -> GroupElem:
    """Truncated exponential 1 + x + x^2/2: a bijection of the window
    (r, m) layers for r <= m <= 3r, an isomorphism for m <= 2r."""
    r, m = x.r, x.m
    if not (r <= m <= 3 * r):
        raise WindowViolation(f"window ({r},{m}) outside r <= m <= 3r")
    tw = x.d.tower
    half = pow(2, tw.p - 2, tw.p)
    g = one(tw, m) + x.d + (x.d * x.d).truncate(m).scale_right(half)
    return GroupElem(g, m, check=False)


def tlog(g: GroupElem, r: int) -> LieElem:
    """Truncated logarithm X - X^2/2 for g = 1 + X, inverse to texp on the
    window (r, m)."""
    m = g.m
    if not (r <= m <= 3 * r):
        raise WindowViolation(f"window ({r},{m}) outside r <= m <= 3r")
    tw = g.d.tower
    X = g.d - one(tw, m)
    if not X.is_zero() and X.lo < r:
        raise WindowViolation(
            f"element is not in the congruence layer G^{r}")
    half = pow(2, tw.p - 2, tw.p)
    out = X - (X * X).truncate(m).scale_right(half)
    return LieElem(out, r, m, check=False)


def bch_check(x: LieElem, y: LieElem) -> bool:
    """Degree-2 Baker-Campbell-Hausdorff identities on a window (r, m),
    m <= 3r: log(exp x exp y) = x + y + [x,y]/2 and
    log of the group commutator = [x, y]."""
    if x.window() != y.window():
        raise WindowViolation("mismatched windows")
    r, m = x.window()
    tw = x.d.tower
    half = pow(2, tw.p - 2, tw.p)
    gx, gy = texp(x), texp(y)
    lhs1 = tlog(gx * gy, r).d
    rhs1 = x.d + y.d + x.bracket(y).d.scale_right(half)
    comm = gx * gy * gx.inverse() * gy.inverse()
    lhs2 = tlog(comm, r).d
    rhs2 = x.bracket(y).d
    return lhs1 == rhs1 and lhs2 == rhs2


# -- code packing and enumeration ---------------------------------------------


def encode(x: DElem, m: int) -> int:
    """Dense base-Q code of a valuation >= 0 element modulo P^m."""
    if not x.is_zero() and x.lo < 0:
        raise BadInput("cannot encode negative-valuation element")
    Q = x.tower.Q
    c = 0
    for j in reversed(range(m)):
        c = c * Q + x.coeff(j)
    return c


def decode(tower, m: int, code: int) -> DElem:
    Q = tower.Q
    out = []
    for _ in range(m):
        code, r = divmod(code, Q)
        out.append(r)
    return DElem(tower, m, 0, out)


def unit_codes(tower, m, guard=10**6):
    """All codes of units of O/P^m, ascending."""
    total = tower.Q**m
    if total > guard:
        raise TooLarge(f"{total} cosets exceed the guard {guard}")
    Q = tower.Q
    return (c for c in range(total) if c % Q)


def lie_window_elems(tower, r, m):
    """All elements of the traceless window g^r_m (exponents r..m-1, with
    trace-zero coefficients at exponents divisible by ell)."""
    ell = tower.ell
    pools = []
    for j in range(r, m):
        if j % ell == 0:
            pools.append(tower.trace_zero)
        else:
            pools.append(range(tower.Q))
    for combo in itertools.product(*pools):
        yield DElem(tower, m, r, combo)


def ceil_div(a, b):
    return -((-a) // b)


def lie_window_size(q, ell, r, m):
    """|g^r_m| = q^(ell(m-r) - (ceil(m/ell) - ceil(r/ell)))."""
    return q ** (ell * (m - r) - (ceil_div(m, ell) - ceil_div(r, ell)))
