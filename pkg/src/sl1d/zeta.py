"""Census formulas and the representation zeta function.

Exact integer counts a_m (number of irreducible characters of level m)
and degrees d_m, the congruence quotient orders |G_m|, the telescoping
identity sum_{k<=m} a_k d_k^2 = |G_{m+1}|, and the closed form

              a_0 (1 - q^(-C s)) + d_1^(-s) iota^2 (q-1) S(s)
    zeta(s) = ----------------------------------------------- ,
                      1 - q^((ell-1) - C s)

with C = ell(ell-1)/2, d_1 = (q^ell - 1)/(iota (q-1)), iota = gcd(q-1, ell)
and S(s) = sum_{lam=0}^{ell-2} q^(lam (1 - (ell-1) s / 2)).  The partial
sums of the Dirichlet series sum a_m d_m^(-s) converge to it for
Re(s) > 2/ell; the denominator exponent vanishes exactly at s = 2/ell,
the unique real pole.

Integer s evaluates in exact rational arithmetic; other s in complex
floating point.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import BadInput


def iota(q: int, ell: int) -> int:
    """Number of ell-th roots of unity in the base field: gcd(q-1, ell)."""
    return gcd(q - 1, ell)


def _ceil_div(a, b):
    return -((-a) // b)


def a_m(q: int, ell: int, m: int) -> int:
    """Number of irreducible characters of level m."""
    if m < 0:
        raise BadInput("level must be >= 0")
    if m == 0:
        return (q**ell - 1) // (q - 1)
    i = iota(q, ell)
    if m % ell:
        return i * i * (q - 1) * q ** (m - _ceil_div(m, ell))
    return ((q**ell - 1) // (q - 1)) * (q ** (ell - 1) - 1) * q ** (
        (ell - 1) * (m // ell - 1)
    )


def d_m(q: int, ell: int, m: int) -> int:
    """Common degree of the irreducible characters of level m."""
    if m < 0:
        raise BadInput("level must be >= 0")
    if m == 0:
        return 1
    if m % ell:
        # (ell-1)(m-1) is even here: ell odd makes ell-1 even, and for
        # ell = 2 this branch only sees odd m.
        num = (q**ell - 1) // (iota(q, ell) * (q - 1))
        return num * q ** ((ell - 1) * (m - 1) // 2)
    return q ** ((ell - 1) * m // 2)


def group_order(q: int, ell: int, r: int) -> int:
    """|G_r| = (q^ell - 1)/(q - 1) * q^((r-1) ell - ceil(r/ell) + 1)."""
    if r < 1:
        raise BadInput("quotient level must be >= 1")
    return ((q**ell - 1) // (q - 1)) * q ** ((r - 1) * ell - _ceil_div(r, ell) + 1)


def telescoping_check(q: int, ell: int, M: int) -> bool:
    """sum_{k=0}^{m} a_k d_k^2 = |G_{m+1}| for every m <= M, exactly."""
    acc = 0
    for m in range(M + 1):
        acc += a_m(q, ell, m) * d_m(q, ell, m) ** 2
        if acc != group_order(q, ell, m + 1):
            return False
    return True


def pole_location(q: int, ell: int) -> Fraction:
    """Real zero of the denominator exponent (ell-1) - C(ell,2) s: the
    abscissa 2/ell, independent of q."""
    binom = ell * (ell - 1) // 2
    return Fraction(ell - 1, binom)


@dataclass(frozen=True)
class ZetaEvaluation:
    s: object
    mode: str  # "ClosedForm" or "PartialSum(M)"
    value: object  # Fraction for exact integer s, complex otherwise
    exact: bool
    pole: Fraction
    at_pole: bool = False


def _qpow(q, e, exact):
    if exact:
        if isinstance(e, Fraction):
            if e.denominator != 1:
                raise BadInput("exact evaluation needs integer exponents")
            e = e.numerator
        return Fraction(q) ** e
    return complex(q) ** complex(e)


def zeta_closed_form(q: int, ell: int, s) -> ZetaEvaluation:
    """The closed form at s: exact rational for integer s, complex double
    otherwise.  At the pole (denominator zero) the evaluation is flagged
    rather than raised; the CLI surfaces it as structured output."""
    pole = pole_location(q, ell)
    exact = isinstance(s, int) or (isinstance(s, Fraction) and s.denominator == 1)
    i = iota(q, ell)
    a0 = Fraction(q**ell - 1, q - 1)
    d1 = Fraction(q**ell - 1, i * (q - 1))
    binom = ell * (ell - 1) // 2
    if exact:
        # every exponent is integral at integer s: for odd ell the factor
        # (ell-1)/2 is an integer, and for ell = 2 the geometric sum is the
        # single term lam = 0.
        sv = int(s)
        denom = 1 - _qpow(q, (ell - 1) - binom * sv, True)
        if denom == 0:
            return ZetaEvaluation(s, "ClosedForm", None, True, pole, True)
        ssum = sum(
            _qpow(q, lam * (2 - (ell - 1) * sv) // 2, True)
            for lam in range(ell - 1)
        )
        num = a0 * (1 - _qpow(q, -binom * sv, True)) + (
            d1**-sv
        ) * i * i * (q - 1) * ssum
        return ZetaEvaluation(s, "ClosedForm", num / denom, True, pole)
    sc = complex(s)
    denomc = 1 - complex(q) ** ((ell - 1) - binom * sc)
    if abs(denomc) < 1e-14:
        return ZetaEvaluation(s, "ClosedForm", None, False, pole, True)
    ssumc = sum(
        complex(q) ** (lam * (1 - (ell - 1) * sc / 2)) for lam in range(ell - 1)
    )
    numc = complex(a0) * (1 - complex(q) ** (-binom * sc)) + complex(
        d1
    ) ** (-sc) * i * i * (q - 1) * ssumc
    return ZetaEvaluation(s, "ClosedForm", numc / denomc, False, pole)


def zeta_partial_sum(q: int, ell: int, s, M: int) -> ZetaEvaluation:
    """sum_{m=0}^{M} a_m d_m^(-s); exact rational for integer s."""
    if M < 0:
        raise BadInput("M must be >= 0")
    pole = pole_location(q, ell)
    exact = isinstance(s, int) or (isinstance(s, Fraction) and s.denominator == 1)
    if exact:
        sv = int(s)
        total = Fraction(0)
        for m in range(M + 1):
            total += a_m(q, ell, m) * Fraction(d_m(q, ell, m)) ** (-sv)
        return ZetaEvaluation(s, f"PartialSum({M})", total, True, pole)
    sc = complex(s)
    total = 0j
    for m in range(M + 1):
        total += a_m(q, ell, m) * cmath.exp(-sc * cmath.log(d_m(q, ell, m)))
    return ZetaEvaluation(s, f"PartialSum({M})", total, False, pole)


def census(q: int, ell: int, m: int):
    """(a_m, d_m) for the level-m characters."""
    return a_m(q, ell, m), d_m(q, ell, m)


def census_rows(q: int, ell: int, max_level: int):
    """Rows (m, a_m, d_m, sum a, sum a d^2, |G_{m+1}|, check) for the
    census table; check is the exact telescoping identity at that level."""
    rows = []
    sa = 0
    sad2 = 0
    for m in range(max_level + 1):
        a = a_m(q, ell, m)
        d = d_m(q, ell, m)
        sa += a
        sad2 += a * d * d
        order = group_order(q, ell, m + 1)
        rows.append(
            {
                "m": m,
                "a_m": a,
                "d_m": d,
                "sum_a": sa,
                "sum_a_d2": sad2,
                "group_order_next": order,
                "check": sad2 == order,
            }
        )
    return rows
