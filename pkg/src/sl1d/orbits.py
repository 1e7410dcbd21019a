"""Similarity classes and congruence stabilizers in the quotients O/P^m.

Closed-form orbit sizes under the unit group, the norm-one group G and
its pro-p radical G^1, next to an independent brute-force enumerator that
closes a coset under conjugation by an explicit generating set of the
acting group.  The m-th similarity class of y is the orbit of y + P^m
under conjugation; the m-th congruence stabilizer is the subgroup moving
y by an element of P^m only.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from math import gcd
from typing import Optional

from . import algebra as alg
from .algebra import DElem, ElementClass, ceil_div
from .errors import BadInput, JumpNotBelowM, TooLarge
from .kernel import make_kernel

DEFAULT_COSET_GUARD = 10**6


class ActingGroup(enum.Enum):
    OUNITS = "Ounits"
    G = "G"
    G1 = "G1"


class StabilizerCase(enum.Enum):
    WHOLE_GROUP = "WholeGroup"
    CENTRALIZER_TIMES_CONGRUENCE = "CentralizerTimesCongruence"


@dataclass(frozen=True)
class StabilizerStructure:
    case: StabilizerCase
    jump: object  # int or math.inf
    congruence_level: Optional[int]
    centralizer_kind: Optional[ElementClass]


@dataclass(frozen=True)
class OrbitReport:
    acting_group: ActingGroup
    m: int
    formula_size: int
    bruteforce_size: Optional[int] = None
    splitting_count: Optional[int] = None
    ratio_G_over_G1: Optional[object] = None
    ratio_units_over_G1: Optional[object] = None


def stabilizer_structure(y: DElem, m: int) -> StabilizerStructure:
    """Shape of the m-th congruence stabilizer of y under the unit group:
    the whole group when the jump reaches m, otherwise the product of the
    centralizer with the one-units of level m - jump."""
    j = alg.jump(y)
    if j >= m:
        return StabilizerStructure(StabilizerCase.WHOLE_GROUP, j, None, None)
    return StabilizerStructure(
        StabilizerCase.CENTRALIZER_TIMES_CONGRUENCE,
        j,
        m - j,
        alg.classify(y),
    )


def orbit_size_Ounits(y: DElem, m: int) -> int:
    """Closed-form size of the m-th similarity class under the unit group."""
    j = alg.jump(y)
    if j >= m:
        raise JumpNotBelowM(
            f"jump {j} >= m {m}: the class is the single coset of a central "
            "element"
        )
    tw = y.tower
    q, ell = tw.q, tw.ell
    d = m - j
    if alg.classify(y) is ElementClass.UNRAMIFIED:
        return q ** (ell * (d - ceil_div(d, ell)))
    return ((q**ell - 1) // (q - 1)) * q ** ((ell - 1) * (d - 1))


def orbit_size_G(y: DElem, m: int, bruteforce: bool = False) -> OrbitReport:
    """Size of the m-th similarity class under the norm-one group G.

    Unramified classes coincide with the unit-group classes; ramified
    unit-group classes split into iota = gcd(q-1, ell) equal G-classes.
    Also records the index ratios against the G^1-classes."""
    tw = y.tower
    q, ell = tw.q, tw.ell
    iota = gcd(q - 1, ell)
    base = orbit_size_Ounits(y, m)
    kind = alg.classify(y)
    if kind is ElementClass.UNRAMIFIED:
        size = base
        split = 1
        ratio_g = 1
        ratio_u = 1
    else:
        size = base // iota
        split = iota
        ratio_g = (q**ell - 1) // (iota * (q - 1))
        ratio_u = (q**ell - 1) // (q - 1)
    bf = None
    if bruteforce:
        bf = len(brute_force_orbit(y, m, ActingGroup.G))
    return OrbitReport(
        acting_group=ActingGroup.G,
        m=m,
        formula_size=size,
        bruteforce_size=bf,
        splitting_count=split,
        ratio_G_over_G1=ratio_g,
        ratio_units_over_G1=ratio_u,
    )


# -- brute force ---------------------------------------------------------------


def acting_generators(tower, m: int, acting: ActingGroup):
    """Codes of a generating set of the acting group modulo the one-units
    of level m.

    Unit group: a Teichmueller generator plus the one-unit layers
    1 + nu^k b over a basis of the coefficient field.  G: the norm-one
    Teichmueller generator plus norm-corrected layers (trace-zero b at
    exponents divisible by ell).  G^1: the corrected layers only.
    """
    ell = tower.ell
    gens = []
    if acting is ActingGroup.OUNITS:
        gens.append(alg.teich(tower, tower.generator).truncate(m))
    elif acting is ActingGroup.G:
        gens.append(alg.teich(tower, tower.sl1_generator).truncate(m))
    basis = [tower.p**i for i in range(tower.deg)]
    tz_basis = _trace_zero_basis(tower)
    for k in range(1, m):
        if acting is ActingGroup.OUNITS:
            for b in basis:
                gens.append(
                    (alg.one(tower) + alg.nu(tower, k).scale_right(b))
                    .truncate(m)
                )
        else:
            use = basis if k % ell else tz_basis
            for b in use:
                g = (alg.one(tower) + alg.nu(tower, k).scale_right(b)) \
                    .truncate(m)
                n = alg.nrd(g)
                xi = alg.ell_th_root_unit(n.truncate(m))
                gens.append(alg.inv(xi) * g)
    return [alg.encode(g, m) for g in gens]


def _trace_zero_basis(tower):
    """An F_p-basis of the trace-zero hyperplane of F_{q^ell}."""
    from .gfpoly import kernel_basis

    deg, p = tower.deg, tower.p
    rows = []
    f = tower.f
    # trace of each power-basis vector, as f*ell coordinates; stack the
    # F_p-linear conditions "all coordinates of the trace vanish".
    cols = [tower.coeffs_of(tower.galois_trace(p**i)) for i in range(deg)]
    for coord in range(deg):
        rows.append([cols[i][coord] for i in range(deg)])
    basis_vecs = kernel_basis(rows, deg, p)
    return [tower.code_of(v) for v in basis_vecs]


def brute_force_orbit(y: DElem, m: int, acting=ActingGroup.OUNITS,
                      guard=DEFAULT_COSET_GUARD):
    """Exact m-th similarity class of y by closure under conjugation by
    group generators, as a frozenset of DElem cosets mod P^m.

    Requires val(y) >= 0.  The result is independent of generator order;
    the closure runs over packed integer codes through the kernel backend.
    """
    if isinstance(acting, str):
        acting = ActingGroup(acting)
    tw = y.tower
    if tw.Q**m > guard:
        raise TooLarge(f"{tw.Q**m} cosets exceed the guard {guard}")
    if not y.is_zero() and y.lo < 0:
        raise BadInput(
            "brute_force_orbit acts on O/P^m; rescale by a central power "
            "first (conjugation commutes with central scaling)"
        )
    kern = make_kernel(tw, m)
    gens = acting_generators(tw, m, acting)
    ginvs = [kern.inv(g) for g in gens]
    seed = alg.encode(y.truncate(m) if y.prec is alg.INF or y.prec > m else y,
                      m)
    codes = kern.orbit(seed, gens, ginvs, guard)
    return frozenset(alg.decode(tw, m, c) for c in codes)


def brute_force_stabilizer(y: DElem, m: int, acting=ActingGroup.OUNITS,
                           guard=10**5):
    """Stabilizer set {g : g y g^{-1} = y mod P^m} by full enumeration of
    the acting group modulo the one-units of level m (small m only)."""
    if isinstance(acting, str):
        acting = ActingGroup(acting)
    tw = y.tower
    kern = make_kernel(tw, m)
    yc = alg.encode(y.truncate(m) if y.prec is alg.INF or y.prec > m else y,
                    m)
    out = []
    for g in acting_group_codes(tw, m, acting, guard=guard):
        if kern.conj(g, yc, kern.inv(g)) == yc:
            out.append(g)
    return out


def acting_group_codes(tower, m: int, acting: ActingGroup, guard=10**5):
    """All codes of the acting group modulo the one-units of level m."""
    if isinstance(acting, str):
        acting = ActingGroup(acting)
    total = tower.Q**m
    if total > guard * 10:
        raise TooLarge(f"{total} cosets exceed the enumeration guard")
    Q, ell = tower.Q, tower.ell
    out = []
    nprec = ceil_div(m, ell)
    for c in range(total):
        if c % Q == 0:
            continue
        if acting is ActingGroup.G1 and c % Q != 1:
            continue
        if acting is not ActingGroup.OUNITS:
            x = alg.decode(tower, m, c)
            n = alg.nrd(x)
            if n != alg.one(tower, n.prec):
                continue
        out.append(c)
        if len(out) > guard:
            raise TooLarge(f"acting group exceeds the guard {guard}")
    return out
