"""Explicit construction and verification of the irreducible characters of
the finite congruence quotients G_{m+1}.

For each level m a datum is produced from a dual-layer orbit
representative y with leading index -m:

  * odd m (half-level r = (m+1)/2): the layer character attached to y on
    G^r glues with a linear character of the abelian centralizer image to
    a linear character of the inertia subgroup C(Y) G^r; inducing to
    G_{m+1} is irreducible of degree d_m.
  * m divisible by 2 ell (r = m/2, so ell | r and G^r is abelian): the
    same shape one layer up, gluing an extension of the layer character.
  * even m with ell odd: the isotropic-subspace subgroup J below the
    class-2 layer replaces G^r; the glued character is linear on C(Y) J
    and induces irreducibly.
  * ell = 2, m = 2 mod 4: no isotropic line is centralizer-stable, so the
    construction first induces inside N = P(Y) Gamma^1 (an irreducible of
    degree q) and then extends across the cyclic quotient I/N of order
    q + 1 by an explicit intertwiner; the q + 1 rescalings of the
    intertwiner are exactly the q + 1 extensions.

Verification materializes the finite group, induces with exact cyclotomic
values and checks [chi, chi] = 1, chi(1) = d_m, and the level.
"""

from __future__ import annotations

import enum
import itertools
import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Optional

from . import algebra as alg
from . import duality as du
from . import zeta
from .algebra import DElem, GroupElem, ceil_div
from .cyclotomic import CycloRing
from .duality import DualElement, HeisenbergLayer
from .errors import (
    BadInput,
    BadRepresentative,
    TooLarge,
    VerificationFailed,
)
from .kernel import make_kernel
from .orbits import ActingGroup, acting_generators

DEFAULT_GROUP_GUARD = 10**5


@lru_cache(maxsize=8)
def _ring(N):
    return CycloRing(N)


class QuotientGroup:
    """The finite group G_m = G/G^m as an explicit list of packed codes."""

    def __init__(self, tower, m, guard=DEFAULT_GROUP_GUARD, method="layers"):
        expected = zeta.group_order(tower.q, tower.ell, m)
        if expected > guard:
            raise TooLarge(
                f"|G_{m}| = {expected} exceeds the guard {guard}")
        self.tower = tower
        self.m = m
        self.kern = make_kernel(tower, m)
        self.order = expected
        if method == "layers":
            self.elements = self._enumerate_layers()
        elif method == "filter":
            self.elements = self._enumerate_filter()
        else:
            raise BadInput(f"unknown enumeration method {method!r}")
        if len(self.elements) != expected:
            raise AssertionError(
                f"group order mismatch: built {len(self.elements)}, "
                f"formula {expected}")
        self.element_set = frozenset(self.elements)
        self.identity = 1
        self._inv = {}
        self._classes = None
        self._class_of = None
        self._exponent = None
        self._commutator = None

    def _enumerate_filter(self):
        """Oracle enumeration: all unit cosets with reduced norm 1 at the
        induced central precision (quadratic in the coset count)."""
        tw, m = self.tower, self.m
        Q, ell = tw.Q, tw.ell
        N = ceil_div(m, ell)
        out = []
        for c in range(Q**m):
            if c % Q == 0:
                continue
            digits = []
            cc = c
            for _ in range(m):
                cc, r = divmod(cc, Q)
                digits.append(r)
            det = alg.nrd_unit_series(
                tw, lambda j: digits[j] if j < m else 0, N)
            if det[0] == 1 and all(x == 0 for x in det[1:]):
                out.append(c)
        return out

    def _enumerate_layers(self):
        """Bijective enumeration through the congruence filtration: every
        element factors uniquely as a norm-one Teichmueller representative
        times one norm-corrected layer element 1 + nu^k t per level k (t
        trace-zero when ell | k); the factor sets multiply out to exactly
        the group.  Linear in the group order."""
        tw, m = self.tower, self.m
        kern = self.kern
        elements = [alg.encode(alg.teich(tw, t).truncate(m), m)
                    for t in tw.norm_one]
        for k in range(1, m):
            layer = []
            use = (tw.trace_zero if k % tw.ell == 0
                   else tuple(range(tw.Q)))
            for t in use:
                g = (alg.one(tw) + alg.nu(tw, k).scale_right(t)).truncate(m)
                n = alg.nrd(g)
                xi = alg.ell_th_root_unit(n.truncate(m))
                layer.append(alg.encode(alg.inv(xi) * g, m))
            elements = [kern.mul(e, glay) for e in elements
                        for glay in layer]
        elements.sort()
        return elements

    # -- group operations ----------------------------------------------------

    def mul(self, a, b):
        return self.kern.mul(a, b)

    def inv(self, a):
        v = self._inv.get(a)
        if v is None:
            v = self.kern.inv(a)
            self._inv[a] = v
        return v

    def conj(self, g, x):
        return self.kern.mul(self.kern.mul(g, x), self.inv(g))

    def power(self, a, e):
        return self.kern.pow(a, e)

    def element_order(self, a):
        o = 1
        x = a
        while x != self.identity:
            x = self.mul(x, a)
            o += 1
        return o

    def generators(self):
        return acting_generators(self.tower, self.m, ActingGroup.G)

    # -- conjugacy classes ---------------------------------------------------

    def conjugacy_classes(self):
        if self._classes is None:
            gens = self.generators()
            ginvs = [self.kern.inv(g) for g in gens]
            self._classes = self.kern.partition_classes(
                self.elements, gens, ginvs)
            self._class_of = {}
            for i, cls in enumerate(self._classes):
                for c in cls:
                    self._class_of[c] = i
        return self._classes

    def class_of(self, code):
        self.conjugacy_classes()
        return self._class_of[code]

    def class_count(self):
        return len(self.conjugacy_classes())

    def centralizer_order(self, code):
        cls = self.conjugacy_classes()[self.class_of(code)]
        return self.order // len(cls)

    def exponent(self):
        if self._exponent is None:
            N = 1
            for cls in self.conjugacy_classes():
                o = self.element_order(cls[0])
                N = N * o // gcd(N, o)
            self._exponent = N
        return self._exponent

    # -- subgroups -----------------------------------------------------------

    def congruence_subgroup(self, k):
        """Image of G^k: the elements congruent to 1 modulo nu^k."""
        Qk = self.tower.Q**k
        return frozenset(c for c in self.elements if c % Qk == 1)

    def subgroup_closure(self, gens):
        gens = [g for g in gens if g != self.identity]
        seen = {self.identity}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.mul(x, g)
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(seen)

    def product_set(self, A, B):
        out = set()
        for a in A:
            for b in B:
                out.add(self.mul(a, b))
        return frozenset(out)

    def commutator_subgroup(self):
        """Derived subgroup: normal closure of the generator commutators,
        grown by alternating subgroup closure with conjugation."""
        if self._commutator is None:
            gens = self.generators()
            normal_gens = set()
            for g in gens:
                for h in gens:
                    normal_gens.add(
                        self.mul(self.mul(g, h),
                                 self.mul(self.inv(g), self.inv(h))))
            normal_gens.discard(self.identity)
            K = self.subgroup_closure(normal_gens)
            while True:
                new = set()
                for s in normal_gens:
                    for g in gens:
                        c = self.conj(g, s)
                        if c not in K:
                            new.add(c)
                if not new:
                    break
                normal_gens |= new
                K = self.subgroup_closure(normal_gens)
            self._commutator = K
        return self._commutator

    def abelianization_order(self):
        return self.order // len(self.commutator_subgroup())

    def decode(self, code) -> GroupElem:
        return GroupElem(alg.decode(self.tower, self.m, code), self.m,
                         check=False)


def build_quotient_group(tower, m, guard=DEFAULT_GROUP_GUARD,
                         method="layers"):
    """The units of O/P^m with reduced norm 1 at the induced central
    precision, as an explicit group.  `method="layers"` enumerates through
    the congruence filtration (linear in the order); `method="filter"` is
    the quadratic norm-filter oracle the tests compare against."""
    return QuotientGroup(tower, m, guard, method)


def conjugacy_class_count(G: QuotientGroup) -> int:
    return G.class_count()


# -- inducing data -------------------------------------------------------------


class CaseTag(enum.Enum):
    ODD = "Odd"
    DIVISIBLE_BY_2ELL = "DivisibleBy2ell"
    EVEN_ODD_ELL = "EvenOddEll"
    EVEN_QUATERNION = "EvenQuaternion"


def case_of_level(ell: int, m: int) -> CaseTag:
    if m % 2 == 1:
        return CaseTag.ODD
    if m % (2 * ell) == 0:
        return CaseTag.DIVISIBLE_BY_2ELL
    if ell == 2:
        return CaseTag.EVEN_QUATERNION
    return CaseTag.EVEN_ODD_ELL


@dataclass
class InducingDatum:
    level: int
    case: CaseTag
    r: int
    rtop: int  # the abelian layer whose dual parametrizes theta
    y: DualElement
    Y: DElem  # exact lift of y
    predicted_degree: int
    predicted_inertia_index: int
    monomial: bool
    subgroup: str
    lift: Optional[du.LiftDatum] = None
    layer: Optional[HeisenbergLayer] = None
    extension_count: Optional[int] = None

    def linear_character(self, G: "QuotientGroup", N: Optional[int] = None):
        """Evaluation rule of the layer character on the congruence
        subgroup G^r of the supplied quotient, as an exponent map mod N
        (default: the group exponent).  The inducing characters are the
        gluings of this map with centralizer characters."""
        if N is None:
            N = G.exponent()
        return _scaled_theta(G, self, N)


def canonical_level_representative(tower, m: int) -> DElem:
    """The default traceless representative of leading index -m: nu^{-m} t
    for a fixed Teichmueller generator when ell does not divide m, and
    pi^{-m/ell} omega for a fixed trace-zero noncentral omega otherwise."""
    ell = tower.ell
    if m % ell:
        return alg.nu(tower, -m).scale_right(tower.generator)
    omega = next(
        c for c in tower.trace_zero if c and not tower.is_embedded(c))
    return alg.nu(tower, -m).scale_right(omega)


def dual_window_of_level(ell: int, m: int):
    """(rtop, mtop): theta lives on the abelian layer G^rtop_{m+1}."""
    if m % 2 == 1:
        r = (m + 1) // 2
        return r, r
    r = m // 2
    return r, r + 1


def level_orbit_representatives(tower, m: int, guard=DEFAULT_GROUP_GUARD):
    """One dual element per G-orbit on the layer duals with leading index
    exactly -m, together with the orbit size.

    Representatives at levels divisible by ell are conjugated into L so
    that their centralizers are literally the norm-one units of the
    unramified subfield."""
    ell = tower.ell
    r, rtop = dual_window_of_level(ell, m)
    lo = -m
    prec = -rtop + 1
    N = ceil_div(m, ell)
    shift = ell * N
    kern_m = shift + prec
    window = alg.lie_window_size(tower.q, ell, lo, prec)
    if window > guard * 10:
        raise TooLarge("dual window too large to orbit-partition")
    kern = make_kernel(tower, kern_m)
    gens = acting_generators(tower, kern_m, ActingGroup.G)
    ginvs = [kern.inv(g) for g in gens]
    seen = set()
    reps = []
    for d in alg.lie_window_elems(tower, lo, prec):
        if d.coeff(lo) == 0:
            continue
        code = alg.encode(d.central_shift(N), kern_m)
        if code in seen:
            continue
        orb = kern.orbit(code, gens, ginvs, guard)
        seen |= orb
        rep_code = min(orb)
        rep_int = alg.decode(tower, kern_m, rep_code)
        if m % ell == 0:
            # conjugating into L keeps the orbit and makes the centralizer
            # literally the norm-one units of the unramified subfield
            _, rep_int = alg.conjugate_unramified_into_L(rep_int)
        rep = rep_int.central_shift(-N)
        reps.append((DualElement(rep, rtop, m + 1), len(orb)))
    return reps


def construct_inducing_datum(tower, m: int, y: Optional[DualElement] = None
                             ) -> InducingDatum:
    """Datum from which every level-m character over the orbit of y is
    produced.  Works at formula level; materialization happens in
    induce_and_verify."""
    if m < 1:
        raise BadInput("level must be >= 1")
    ell = tower.ell
    q = tower.q
    r, rtop = dual_window_of_level(ell, m)
    if y is None:
        y = DualElement(canonical_level_representative(tower, m), rtop, m + 1)
    Y = y.d.exact_lift()
    if not alg.trd(Y).is_zero():
        raise BadRepresentative("representative has nonzero reduced trace")
    if alg.jump(Y) != -m:
        raise BadRepresentative(
            f"representative jump {alg.jump(Y)} != -{m}")
    case = case_of_level(ell, m)
    d = zeta.d_m(q, ell, m)
    if case is CaseTag.ODD or case is CaseTag.DIVISIBLE_BY_2ELL:
        index = d
        subgroup = "C(Y) * G^r"
        lift = None
        layer = None
        ext = None
        monomial = True
    else:
        layer = HeisenbergLayer.from_dual_element(y)
        lift = du.heisenberg_lift_data(layer)
        if case is CaseTag.EVEN_ODD_ELL:
            index = d // lift.lift_degree
            subgroup = "C(Y) * J_theta"
            ext = None
            monomial = True
        else:
            index = d // q
            subgroup = "P(Y) * J_theta, then extend across I/N (cyclic q+1)"
            ext = q + 1
            monomial = False
    return InducingDatum(
        level=m,
        case=case,
        r=r,
        rtop=rtop,
        y=y,
        Y=Y,
        predicted_degree=d,
        predicted_inertia_index=index,
        monomial=monomial,
        subgroup=subgroup,
        lift=lift,
        layer=layer,
        extension_count=ext,
    )


# -- linear character machinery -------------------------------------------------


def layer_character_exponents(G: QuotientGroup, y_dual: DElem, rtop: int,
                              N: int):
    """Exponent map (mod N) of the layer character attached to the dual
    element on the congruence subgroup G^rtop of G_{m+1}."""
    tw = G.tower
    p = tw.p
    if N % p:
        raise AssertionError("cyclotomic order must be divisible by p")
    scale = N // p
    out = {}
    for c in G.congruence_subgroup(rtop):
        g = G.decode(c)
        x = alg.tlog(g, rtop)
        out[c] = (du.pairing_raw(x.d, y_dual) * scale) % N
    return out


def linear_extensions(G: QuotientGroup, A, base: dict, N: int):
    """All extensions of a linear character from a subgroup of the abelian
    group A (given as exponent dicts mod N); the count is the index."""
    exts = [dict(base)]
    for a in sorted(A):
        if all(a in e for e in exts):
            continue
        new_exts = []
        for ext in exts:
            if a in ext:
                new_exts.append(ext)
                continue
            o = 1
            x = a
            while x not in ext:
                x = G.mul(x, a)
                o += 1
            e0 = ext[x]
            g = gcd(o, N)
            if e0 % g:
                raise AssertionError("no character extension (bad N)")
            base_sol = (e0 // g * pow(o // g, -1, N // g)) % (N // g)
            dom = list(ext.keys())
            powers = [a]
            for _ in range(o - 2):
                powers.append(G.mul(powers[-1], a))
            for t in range(g):
                e = (base_sol + t * (N // g)) % N
                ext2 = dict(ext)
                for k, ak in enumerate(powers, start=1):
                    for s in dom:
                        ext2[G.mul(s, ak)] = (ext[s] + k * e) % N
                new_exts.append(ext2)
        exts = new_exts
    return exts


def glue_characters(G: QuotientGroup, chi: dict, theta: dict, N: int) -> dict:
    """Linear character on the product set dom(chi) * dom(theta) defined by
    (a, b) -> chi(a) + theta(b); raises if the two sides are inconsistent
    on overlaps (they agree when chi extends theta's restriction)."""
    values = {}
    for a, ea in chi.items():
        for b, eb in theta.items():
            h = G.mul(a, b)
            v = (ea + eb) % N
            prev = values.get(h)
            if prev is None:
                values[h] = v
            elif prev != v:
                raise VerificationFailed(
                    "gluing inconsistency: the pieces do not match on the "
                    "overlap")
    return values


def assert_homomorphism(G: QuotientGroup, values: dict, N: int, sample=None):
    dom = sorted(values)
    pairs = (
        itertools.product(dom, dom)
        if sample is None
        else sample
    )
    for a, b in pairs:
        if (values[a] + values[b]) % N != values[G.mul(a, b)]:
            raise VerificationFailed("glued map is not a homomorphism")


# -- centralizer images ---------------------------------------------------------


def centralizer_image(G: QuotientGroup, Y: DElem):
    """Image in G_{m+1} of the norm-one units of the field generated by Y.

    Unramified Y supported in L: the L-supported codes of norm one.
    Ramified Y: integral combinations of powers of the uniformizer
    pi^alpha W^beta of K(Y), filtered by norm one."""
    tw = G.tower
    m1 = G.m
    ell = tw.ell
    kind = alg.classify(Y)
    if kind is alg.ElementClass.UNRAMIFIED:
        if any(j % ell for j in Y.support()):
            raise BadRepresentative(
                "unramified representative must be conjugated into L first")
        Qell = tw.Q
        out = []
        for c in G.elements:
            cc = c
            ok = True
            for j in range(m1):
                cc, dig = divmod(cc, Qell)
                if dig and j % ell:
                    ok = False
                    break
            if ok:
                out.append(c)
        return frozenset(out)
    if kind is not alg.ElementClass.RAMIFIED:
        raise BadRepresentative("central element has no inducing datum")
    # ramified: uniformizer of K(Y)
    jY = alg.jump(Y)
    Nsh = ceil_div(max(0, -jY), ell) + 1
    W = Y.central_shift(Nsh)
    jW = alg.jump(W)
    assert jW > 0 and jW % ell
    beta = pow(jW, -1, ell)  # ell*alpha + jW*beta = 1 with 1 <= beta < ell
    alpha = (1 - jW * beta) // ell
    wt = (W**beta).central_shift(alpha)  # uniformizer of K(Y), val 1/ell
    wt_pows = [alg.one(tw)]
    for _ in range(ell - 1):
        wt_pows.append((wt_pows[-1] * wt))
    wt_pows = [w.truncate(m1) if w.prec is alg.INF or w.prec > m1 else w
               for w in wt_pows]
    # central digit slots: c_i has pi-digits k with ell*k + i <= m1 - 1
    slots = [ceil_div(m1 - i, ell) for i in range(ell)]
    embedded = sorted(tw.embedded)
    out = set()
    for combo in itertools.product(*(
            itertools.product(embedded, repeat=s) for s in slots)):
        x = alg.zero(tw, m1)
        for i in range(ell):
            ci = alg.DElem(tw, alg.INF, 0,
                           _central_coeffs(combo[i], ell))
            if ci.is_zero():
                continue
            x = x + (ci.truncate(m1) * wt_pows[i]).truncate(m1)
        if x.is_zero() or x.nu_val() != 0:
            continue
        n = alg.nrd(x)
        if n != alg.one(tw, n.prec):
            continue
        code = alg.encode(x, m1)
        out.add(code)
    if not out <= G.element_set:
        raise AssertionError("centralizer image left the group")
    return frozenset(out)


def _central_coeffs(digs, ell):
    out = []
    for d in digs:
        out.append(d)
        out.extend([0] * (ell - 1))
    return tuple(out)


# -- induction and verification --------------------------------------------------


@dataclass
class VerificationReport:
    level: int
    case: str
    ok: bool
    degree_expected: int
    degree_actual: object
    norm_value: object
    level_actual: int
    monomial: bool
    gluing_count: Optional[int]
    extension_count: Optional[int]
    inertia_order: Optional[int]
    characters_from_orbit: Optional[int]
    details: list = field(default_factory=list)
    seconds: float = 0.0


def induce_linear_character(G: QuotientGroup, values: dict, N: int):
    """Class-function values (ring vectors) of Ind_H^G of a linear
    character given by exponents mod N on the subgroup H = dom(values)."""
    ring = _ring(N)
    classes = G.conjugacy_classes()
    H = len(values)
    out = []
    for cls in classes:
        s = ring.zero
        for h in cls:
            e = values.get(h)
            if e is not None:
                s = ring.add(s, ring.zeta(e))
        factor = Fraction(G.order, len(cls) * H)
        out.append(ring.scale(s, factor))
    return out


def induce_class_function(G: QuotientGroup, values: dict, N: int):
    """Ind_H^G of an arbitrary character of H given as ring vectors."""
    ring = _ring(N)
    classes = G.conjugacy_classes()
    H = len(values)
    out = []
    for cls in classes:
        s = ring.zero
        for h in cls:
            v = values.get(h)
            if v is not None:
                s = ring.add(s, v)
        factor = Fraction(G.order, len(cls) * H)
        out.append(ring.scale(s, factor))
    return out


def character_norm(G: QuotientGroup, class_values, N: int):
    """[chi, chi] as an exact ring element (rational for class functions)."""
    ring = _ring(N)
    classes = G.conjugacy_classes()
    acc = ring.zero
    for cls, v in zip(classes, class_values):
        acc = ring.add(acc, ring.scale(ring.mul(v, ring.conj(v)), len(cls)))
    return ring.scale(acc, Fraction(1, G.order))


def character_level(G: QuotientGroup, class_values, N: int) -> int:
    """Largest k <= m such that the restriction to G^k is nontrivial; 0 for
    characters trivial on all positive layers."""
    ring = _ring(N)
    deg = class_values[G.class_of(G.identity)]
    for k in range(G.m - 1, 0, -1):
        sub = G.congruence_subgroup(k)
        s = ring.zero
        for c in sub:
            s = ring.add(s, class_values[G.class_of(c)])
        if not ring.equal(s, ring.scale(deg, len(sub))):
            return k
    return 0


def _scaled_theta(G, datum, N):
    """Exponents of theta-hat-r on G^r: the layer character of the dual
    element, zero-extended to the dual window of G^r when rtop > r."""
    y_ext = alg.DElem(G.tower, -datum.r + 1, datum.y.d.lo, datum.y.d.coeffs)
    return layer_character_exponents(G, y_ext, datum.r, N)


def induce_and_verify(G: QuotientGroup, datum: InducingDatum,
                      all_gluings=False) -> VerificationReport:
    """Materialize the datum inside G = G_{m+1}, induce, and check
    irreducibility, degree, and level exactly."""
    t0 = time.time()
    if G.m != datum.level + 1:
        raise BadInput(
            f"datum at level {datum.level} needs the quotient G_{datum.level+1}")
    N = G.exponent()
    details = []
    if datum.case in (CaseTag.ODD, CaseTag.DIVISIBLE_BY_2ELL,
                      CaseTag.EVEN_ODD_ELL):
        reports = _verify_glued_monomial(G, datum, N, details, all_gluings)
    else:
        reports = _verify_quaternion(G, datum, N, details)
    norm, degree, level_actual, gluings, ext, inertia, nchars = reports
    d_expected = datum.predicted_degree
    ring = _ring(N)
    ok = (
        ring.equal(norm, ring.one)
        and ring.equal(degree, ring.from_int(d_expected))
        and level_actual == datum.level
    )
    return VerificationReport(
        level=datum.level,
        case=datum.case.value,
        ok=ok,
        degree_expected=d_expected,
        degree_actual=degree[0],
        norm_value=norm[0],
        level_actual=level_actual,
        monomial=datum.monomial,
        gluing_count=gluings,
        extension_count=ext,
        inertia_order=inertia,
        characters_from_orbit=nchars,
        details=details,
        seconds=time.time() - t0,
    )


def _verify_glued_monomial(G, datum, N, details, all_gluings):
    ring = _ring(N)
    theta_base = _scaled_theta(G, datum, N)
    C = centralizer_image(G, datum.Y)
    if datum.case is CaseTag.DIVISIBLE_BY_2ELL:
        # the layer character on G^{r+1} extends to the abelian G^r in
        # several ways; each extension is part of the datum
        Gr = G.congruence_subgroup(datum.r)
        base_r = {c: theta_base[c]
                  for c in G.congruence_subgroup(datum.rtop)}
        theta_candidates = linear_extensions(G, Gr, base_r, N)
        details.append(f"layer extensions = {len(theta_candidates)}")
    elif datum.case is CaseTag.EVEN_ODD_ELL:
        # the characters over theta biject with its extensions across the
        # radical preimage; lifts of y differing in the nu^{-r} coefficient
        # realize all of them, deduplicated by their restriction there
        tw = G.tower
        r = datum.r
        gamma1 = G.congruence_subgroup(r)
        layer = datum.layer
        iso = du.isotropic_complete(layer)
        rad = du.radical(layer)
        fco = {c: layer.fcoord(G.decode(c)) for c in gamma1}
        Jset = sorted(c for c in gamma1 if fco[c] in iso.elements)
        Rset = sorted(c for c in gamma1 if fco[c] in rad.elements)
        details.append(f"|J_theta| = {len(Jset)}, |R_theta| = {len(Rset)}")
        # pairing against the lift perturbation nu^{-r} s is additive and
        # depends only on the layer coordinate:
        # delta_s(c) = psi(pi^{-1} Tr(fcoord(c) * twisted s))
        scale = N // tw.p
        theta_candidates = []
        seen_on_R = set()
        for s in range(tw.Q):
            def delta(c, s=s):
                return (tw.res_trace(tw.mul(
                    tw.psi_c,
                    tw.galois_trace(tw.mul(fco[c], s)))) * scale) % N
            key = tuple((theta_base[c] + delta(c)) % N for c in Rset)
            if key in seen_on_R:
                continue
            seen_on_R.add(key)
            theta_candidates.append(
                {c: (theta_base[c] + delta(c)) % N for c in Jset})
        if len(theta_candidates) != datum.lift.extension_count:
            raise VerificationFailed(
                f"found {len(theta_candidates)} radical extensions, "
                f"expected {datum.lift.extension_count}")
    else:
        theta_candidates = [theta_base]
    norm = degree = None
    level_actual = None
    inertia = None
    gluings = 0
    pairs = []
    for theta in theta_candidates:
        dom_theta = frozenset(theta)
        base = {c: theta[c] for c in C & dom_theta}
        exts = linear_extensions(G, C, base, N)
        gluings += len(exts)
        pairs.extend((theta, chi) for chi in exts)
    chosen = pairs if all_gluings else pairs[:1]
    tables = {}
    for theta, chi in chosen:
        glued = glue_characters(G, chi, theta, N)
        assert_homomorphism(G, glued, N,
                            sample=_hom_sample(G, sorted(glued)))
        vals = induce_linear_character(G, glued, N)
        key = tuple(vals)
        if key not in tables:
            nrm = character_norm(G, vals, N)
            deg = vals[G.class_of(G.identity)]
            lvl = character_level(G, vals, N)
            ok = (ring.equal(nrm, ring.one)
                  and ring.equal(deg, ring.from_int(datum.predicted_degree))
                  and lvl == datum.level)
            tables[key] = ok
            if not ok:
                raise VerificationFailed(
                    "a gluing induced a defective character")
        if norm is None:
            norm = character_norm(G, vals, N)
            degree = vals[G.class_of(G.identity)]
            level_actual = character_level(G, vals, N)
            inertia = len(glued)
            details.append(f"|inertia| = {inertia}")
    details.append(f"gluings = {gluings}")
    nchars = len(tables) if all_gluings else None
    return norm, degree, level_actual, gluings, None, inertia, nchars


def _hom_sample(G, dom, k=60):
    import random

    rng = random.Random(0)
    n = len(dom)
    return [(dom[rng.randrange(n)], dom[rng.randrange(n)])
            for _ in range(min(k, n * n))]


def _verify_quaternion(G, datum, N, details):
    tw = G.tower
    q = tw.q
    r = datum.r
    ring = _ring(N)
    layer = datum.layer
    iso = du.isotropic_complete(layer)
    gamma1 = G.congruence_subgroup(r)
    theta1 = _scaled_theta(G, datum, N)  # on G^r, linear only on J
    Jset = frozenset(
        c for c in gamma1 if layer.fcoord(G.decode(c)) in iso.elements)
    theta_J = {c: theta1[c] for c in Jset}
    assert_homomorphism(G, theta_J, N)
    C = centralizer_image(G, datum.Y)
    P = frozenset(c for c in C if c % tw.Q == 1)
    base = {c: theta_J[c] for c in P & Jset}
    chi_exts = linear_extensions(G, P, base, N)
    details.append(f"P-gluings = {len(chi_exts)}")
    glued = glue_characters(G, chi_exts[0], theta_J, N)
    H = frozenset(glued)
    Nsub = G.product_set(P, gamma1)
    details.append(f"|H| = {len(H)}, |N| = {len(Nsub)}")
    # monomial representation of N affording the inner induced character
    rho = _MonomialRep(G, Nsub, H, glued, N)
    inner_norm = _rep_character_norm(G, ring, rho, Nsub)
    if not ring.equal(inner_norm, ring.one):
        raise VerificationFailed("inner induced character is not irreducible")
    # cyclic quotient I/N generated by the norm-one Teichmueller generator
    c_gen = alg.encode(
        alg.teich(tw, tw.sl1_generator).truncate(G.m), G.m)
    n_ext = q + 1
    I = G.product_set(C, gamma1)
    if (G.element_order(c_gen) != n_ext or len(I) != len(Nsub) * n_ext
            or N % n_ext):
        raise VerificationFailed("cyclic extension layout is off")
    S = _normalized_intertwiner(G, ring, rho, c_gen, n_ext)
    # the q+1 rescalings of S are the q+1 extensions
    ext_values = []
    for j in range(n_ext):
        Sj = _mat_scale(ring, S, ring.zeta((N // n_ext) * j))
        vals = _extension_values(G, ring, rho, I, Nsub, c_gen, n_ext, Sj)
        ext_values.append(vals)
    details.append(f"extensions = {len(ext_values)}")
    # all extensions restrict to the same character of N and are distinct
    distinct = {tuple(sorted(v.items())) for v in ext_values}
    if len(distinct) != n_ext:
        raise VerificationFailed("extensions are not pairwise distinct")
    # verify the first extension fully; induce to G if I is proper
    theta_hat = ext_values[0]
    if len(I) == G.order:
        classes = G.conjugacy_classes()
        vals = [theta_hat[cls[0]] for cls in classes]
        # class-function sanity: constant on classes
        for cls in classes:
            v0 = theta_hat[cls[0]]
            for c in cls[1:]:
                if not ring.equal(theta_hat[c], v0):
                    raise VerificationFailed(
                        "extension is not a class function")
    else:
        vals = induce_class_function(G, theta_hat, N)
    norm = character_norm(G, vals, N)
    degree = vals[G.class_of(G.identity)]
    level_actual = character_level(G, vals, N)
    return (norm, degree, level_actual, len(chi_exts), n_ext, len(I),
            n_ext * len(chi_exts))


class _MonomialRep:
    """Induced representation Ind_H^N(lambda) in its monomial basis, for a
    linear lambda given by exponents mod N."""

    def __init__(self, G, Nsub, H, lam, N):
        self.G = G
        self.ring = _ring(N)
        self.N = N
        self.lam = lam
        self.H = H
        reps = []
        covered = set()
        for g in sorted(Nsub):
            if g not in covered:
                reps.append(g)
                for h in H:
                    covered.add(G.mul(g, h))
        self.reps = reps
        self.rep_index = {g: i for i, g in enumerate(reps)}
        self.dim = len(reps)
        self._coset_of = {}
        for i, x in enumerate(reps):
            for h in H:
                self._coset_of[G.mul(x, h)] = i

    def matrix(self, g):
        """Dense matrix of rho(g) over the ring."""
        G, ring = self.G, self.ring
        n = self.dim
        mat = [[ring.zero] * n for _ in range(n)]
        for col, x in enumerate(self.reps):
            gx = G.mul(g, x)
            row = self._coset_of[gx]
            h = G.mul(G.inv(self.reps[row]), gx)
            mat[row][col] = ring.zeta(self.lam[h])
        return mat

    def trace(self, g):
        G, ring = self.G, self.ring
        acc = ring.zero
        for col, x in enumerate(self.reps):
            gx = G.mul(g, x)
            if self._coset_of[gx] == col:
                h = G.mul(G.inv(x), gx)
                acc = ring.add(acc, ring.zeta(self.lam[h]))
        return acc


def _rep_character_norm(G, ring, rho, Nsub):
    acc = ring.zero
    for g in Nsub:
        v = rho.trace(g)
        acc = ring.add(acc, ring.mul(v, ring.conj(v)))
    return ring.scale(acc, Fraction(1, len(Nsub)))


def _mat_mul(ring, A, B):
    n = len(A)
    out = [[ring.zero] * n for _ in range(n)]
    for i in range(n):
        for k in range(n):
            a = A[i][k]
            if ring.is_zero(a):
                continue
            for j in range(n):
                b = B[k][j]
                if not ring.is_zero(b):
                    out[i][j] = ring.add(out[i][j], ring.mul(a, b))
    return out


def _mat_scale(ring, A, c):
    return [[ring.mul(x, c) for x in row] for row in A]


def _mat_det(ring, A):
    n = len(A)
    if n == 1:
        return A[0][0]
    acc = ring.zero
    for i in range(n):
        if ring.is_zero(A[i][0]):
            continue
        minor = [row[1:] for k, row in enumerate(A) if k != i]
        term = ring.mul(A[i][0], _mat_det(ring, minor))
        if i % 2:
            term = ring.neg(term)
        acc = ring.add(acc, term)
    return acc


def _normalized_intertwiner(G, ring, rho, c_gen, n_ext):
    """Matrix S with S rho(x) S^{-1} = rho(c x c^{-1}) and S^n = 1.

    A nonzero solution T of the linear intertwining system is unique up to
    scale; T^n is then a scalar kappa.  Writing u n + v q = 1 (q = deg rho
    is a p-power, coprime to n) and d = det T, kappa = (kappa^u d^v)^n, so
    mu = (kappa^u d^v)^{-1} rescales T to S with S^n = 1 -- no root
    extraction needed."""
    T = _solve_intertwiner(G, ring, rho, c_gen)
    n = n_ext
    qdim = rho.dim
    Tn = T
    for _ in range(n - 1):
        Tn = _mat_mul(ring, Tn, T)
    kappa = Tn[0][0]
    for i in range(qdim):
        for j in range(qdim):
            want = kappa if i == j else ring.zero
            if not ring.equal(Tn[i][j], want):
                raise VerificationFailed("intertwiner power is not scalar")
    d = _mat_det(ring, T)
    u, v = _bezout(n, qdim)
    mu = ring.inv(ring.mul(_ring_pow(ring, kappa, u), _ring_pow(ring, d, v)))
    S = _mat_scale(ring, T, mu)
    Sn = S
    for _ in range(n - 1):
        Sn = _mat_mul(ring, Sn, S)
    for i in range(qdim):
        for j in range(qdim):
            want = ring.one if i == j else ring.zero
            if not ring.equal(Sn[i][j], want):
                raise VerificationFailed("normalized intertwiner S^n != 1")
    return S


def _bezout(a, b):
    # u*a + v*b = 1
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        qq = old_r // r
        old_r, r = r, old_r - qq * r
        old_s, s = s, old_s - qq * s
        old_t, t = t, old_t - qq * t
    assert old_r == 1
    return old_s, old_t


def _ring_pow(ring, a, e):
    if e < 0:
        return _ring_pow(ring, ring.inv(a), -e)
    out = ring.one
    b = a
    while e:
        if e & 1:
            out = ring.mul(out, b)
        e >>= 1
        if e:
            b = ring.mul(b, b)
    return out


def _solve_intertwiner(G, ring, rho, c_gen):
    """One nonzero solution T of rho(c x c^{-1}) T = T rho(x) for all x."""
    n = rho.dim
    nn = n * n
    rows = []
    cinv = G.inv(c_gen)
    for x in sorted(rho._coset_of):
        # use every element of N as an equation source; small groups only
        A = rho.matrix(G.mul(G.mul(c_gen, x), cinv))
        B = rho.matrix(x)
        for i in range(n):
            for j in range(n):
                row = [ring.zero] * nn
                for k in range(n):
                    # (A T)_{ij} term: A[i][k] T[k][j]
                    row[k * n + j] = ring.add(row[k * n + j], A[i][k])
                    # -(T B)_{ij} term: T[i][k] B[k][j]
                    row[i * n + k] = ring.sub(row[i * n + k], B[k][j])
                rows.append(row)
    basis = _nullspace(ring, rows, nn)
    if len(basis) != 1:
        raise VerificationFailed(
            f"intertwiner space has dimension {len(basis)}, expected 1")
    v = basis[0]
    return [[v[i * n + j] for j in range(n)] for i in range(n)]


def _nullspace(ring, rows, ncols):
    """Right kernel basis of a matrix over the cyclotomic field (RREF)."""
    mat = [list(r) for r in rows]
    processed = []  # (pivot_col, fully reduced pivot row)
    for col in range(ncols):
        piv_idx = None
        for idx, r in enumerate(mat):
            if not ring.is_zero(r[col]):
                piv_idx = idx
                break
        if piv_idx is None:
            continue
        piv = mat.pop(piv_idx)
        inv = ring.inv(piv[col])
        piv = [ring.mul(x, inv) for x in piv]
        for idx, r in enumerate(mat):
            c = r[col]
            if not ring.is_zero(c):
                mat[idx] = [ring.sub(x, ring.mul(c, y))
                            for x, y in zip(r, piv)]
        for t, (pc, pr) in enumerate(processed):
            c = pr[col]
            if not ring.is_zero(c):
                processed[t] = (pc, [ring.sub(x, ring.mul(c, y))
                                     for x, y in zip(pr, piv)])
        processed.append((col, piv))
        mat = [r for r in mat if any(not ring.is_zero(x) for x in r)]
    pivot_cols = {pc for pc, _ in processed}
    basis = []
    for free in range(ncols):
        if free in pivot_cols:
            continue
        v = [ring.zero] * ncols
        v[free] = ring.one
        for pc, pr in processed:
            v[pc] = ring.neg(pr[free])
        basis.append(v)
    return basis


def _extension_values(G, ring, rho, I, Nsub, c_gen, n_ext, S):
    """Values of the extension with rho-hat(x c^k) = rho(x) S^k, on every
    element of I."""
    Spow = [None] * n_ext
    cur = [[ring.one if i == j else ring.zero for j in range(rho.dim)]
           for i in range(rho.dim)]
    for k in range(n_ext):
        Spow[k] = cur
        cur = _mat_mul(ring, cur, S)
    cpows = [G.identity]
    for _ in range(n_ext - 1):
        cpows.append(G.mul(cpows[-1], c_gen))
    out = {}
    for g in I:
        for k in range(n_ext):
            x = G.mul(g, G.inv(cpows[k]))
            if x in Nsub:
                M = rho.matrix(x)
                prod = _mat_mul(ring, M, Spow[k])
                tr = ring.zero
                for i in range(rho.dim):
                    tr = ring.add(tr, prod[i][i])
                out[g] = tr
                break
        else:
            raise VerificationFailed("element of I missed every coset of N")
    return out


# -- census ---------------------------------------------------------------------


def census(q: int, ell: int, m: int, cross_validate: Optional[QuotientGroup]
           = None):
    """(a_m, d_m); with a quotient group G_{m+1} supplied, also asserts the
    class-count and sum-of-squares identities against it."""
    a, d = zeta.census(q, ell, m)
    if cross_validate is not None:
        G = cross_validate
        total = sum(zeta.a_m(q, ell, k) for k in range(m + 1))
        if G.class_count() != total:
            raise VerificationFailed(
                f"class count {G.class_count()} != sum of a_k = {total}")
        sq = sum(zeta.a_m(q, ell, k) * zeta.d_m(q, ell, k) ** 2
                 for k in range(m + 1))
        if sq != G.order:
            raise VerificationFailed("sum of squares != group order")
    return a, d
