"""Machine-checkable invariant suites behind the `verify` CLI command.

Each suite returns a list of CheckResult records (name, claim in domain
language, pass/fail, details, timing).  Suites are deterministic given
the seed; failures never raise out of the suite runner.
"""

from __future__ import annotations

import random
import time
import traceback
from dataclasses import dataclass
from math import gcd

from . import algebra as alg
from . import construction as cons
from . import duality as du
from . import orbits as orb
from . import zeta
from .errors import SL1DError, UndeterminedAtPrecision
from .gf import FieldTower


@dataclass
class CheckResult:
    suite: str
    name: str
    claim: str
    ok: bool
    detail: str = ""
    seconds: float = 0.0


class _Suite:
    def __init__(self, name):
        self.name = name
        self.results = []

    def check(self, name, claim, fn):
        t0 = time.time()
        try:
            detail = fn()
            ok = True
            detail = "" if detail is None else str(detail)
        except AssertionError as exc:
            ok = False
            detail = f"assertion failed: {exc}"
        except SL1DError as exc:
            ok = False
            detail = f"{type(exc).__name__}: {exc}"
        except Exception:
            ok = False
            detail = traceback.format_exc(limit=2)
        self.results.append(CheckResult(
            self.name, name, claim, ok, detail, time.time() - t0))


def _random_unit(tower, m, rng):
    return alg.DElem(
        tower, m, 0,
        tuple([rng.randrange(1, tower.Q)]
              + [rng.randrange(tower.Q) for _ in range(m - 1)]))


def _random_elem(tower, m, rng):
    return alg.DElem(tower, m, 0,
                     tuple(rng.randrange(tower.Q) for _ in range(m)))


def suite_arith(tower: FieldTower, m: int = 6, seed: int = 0,
                trials: int = 40):
    s = _Suite("arith")
    rng = random.Random(seed)
    tw = tower

    def ring_axioms():
        def eqm(a, b):
            return a.truncate(m) == b.truncate(m)

        for _ in range(trials):
            x, y, z = (_random_elem(tw, m, rng) for _ in range(3))
            assert eqm((x + y) + z, x + (y + z))
            assert eqm(x + y, y + x)
            assert eqm((x * y) * z, x * (y * z))
            assert eqm(x * (y + z), x * y + x * z)
            assert eqm((x + y) * z, x * z + y * z)

    s.check("ring-axioms",
            "truncated skew series form an associative ring mod P^m",
            ring_axioms)

    def s_mul_law():
        t = tw.generator
        lhs = alg.teich(tw, t) * alg.nu(tw)
        rhs = alg.nu(tw) * alg.teich(tw, tw.frobenius(t, 1))
        assert lhs == rhs
        for _ in range(trials):
            x = _random_elem(tw, m, rng)
            assert alg.pi(tw) * x == x * alg.pi(tw)

    s.check("twist-law", "t nu = nu t^q and pi is central", s_mul_law)

    def valuation():
        for _ in range(trials):
            x, y = _random_elem(tw, m, rng), _random_elem(tw, m, rng)
            if x.is_zero() or y.is_zero() or (x * y).is_zero():
                continue
            assert (x * y).val() == x.val() + y.val()
            if not (x + y).is_zero():
                assert (x + y).val() >= min(x.val(), y.val())

    s.check("valuation", "val is multiplicative and ultrametric", valuation)

    def inverses():
        for _ in range(trials):
            x = _random_unit(tw, m, rng)
            assert x * alg.inv(x) == alg.one(tw, m)

    s.check("unit-inverse", "units of O/P^m invert exactly", inverses)

    def trace_norm():
        for _ in range(trials):
            x, y = _random_elem(tw, m, rng), _random_elem(tw, m, rng)
            assert alg.trd(x * y) == alg.trd(y * x)
            assert alg.trd(x * y - y * x).is_zero()
            u, v = _random_unit(tw, m, rng), _random_unit(tw, m, rng)
            n1 = alg.nrd(u * v)
            n2 = alg.nrd(u) * alg.nrd(v)
            assert n1 == n2.truncate(n1.prec)

    s.check("trace-norm", "Trd is symmetric and Nrd multiplicative",
            trace_norm)

    def norm_one_units():
        for t0 in range(1, tw.Q):
            for t1 in range(tw.Q):
                x = alg.DElem(tw, 2, 0, (t0, t1))
                if t0 == 1:
                    n = alg.nrd(x)
                    assert n.coeff(0) == 1

    s.check("norm-of-one-units",
            "reduced norms of one-units are one-units (exhaustive mod P^2)",
            norm_one_units)

    def jump_props():
        for _ in range(trials):
            x = _random_elem(tw, m, rng)
            try:
                j = alg.jump(x)
            except UndeterminedAtPrecision:
                continue
            lam = rng.choice(sorted(tw.embedded))
            shifted = x + alg.teich(tw, lam).truncate(m)
            try:
                assert alg.jump(shifted) == j
            except UndeterminedAtPrecision:
                pass
            g = _random_unit(tw, m, rng)
            assert alg.jump(alg.conjugate(g, x).truncate(m)) == j

    s.check("jump-invariance",
            "the jump ignores central shifts and conjugation", jump_props)

    def traceless_jump():
        half = pow(tw.ell % tw.p, tw.p - 2, tw.p)
        seen = 0
        for _ in range(trials * 3):
            x = _random_elem(tw, m, rng)
            y = x - alg.trd(x).scale_right(half).truncate(m)
            if y.is_zero():
                continue
            try:
                assert alg.jump_traceless_check(y)
                seen += 1
            except UndeterminedAtPrecision:
                continue
        assert seen > 0

    s.check("traceless-jump",
            "traceless elements have jump equal to ell * val", traceless_jump)

    def explog():
        r0 = max(1, (m - 1) // 2)
        for d in alg.lie_window_elems(tw, r0, min(m, 2 * r0)):
            x = alg.LieElem(d, r0, min(m, 2 * r0))
            assert alg.tlog(alg.texp(x), r0).d == x.d

    s.check("exp-log", "truncated exp/log are mutually inverse", explog)

    def roots():
        for _ in range(trials):
            c = alg.one(tw) + alg.pi(tw).scale_right(
                rng.choice(sorted(tw.embedded)))
            u = (c ** tw.ell).truncate(m)
            xi = alg.ell_th_root_unit(u)
            assert (xi ** tw.ell) == u

    s.check("ell-th-roots", "central one-units have unique ell-th roots",
            roots)

    def factorization():
        for _ in range(trials):
            x = _random_unit(tw, m, rng)
            h, t0, xi = alg.normalize_to_G1(x)
            assert alg.teich(tw, t0).truncate(m) * xi.truncate(m) * h.d == x

    s.check("norm-one-factorization",
            "units factor as Teichmueller * central root * norm-one one-unit",
            factorization)

    def conj_into_L():
        omega = next(c for c in range(tw.Q) if c and not tw.is_embedded(c))
        for _ in range(trials):
            g = _random_unit(tw, m, rng)
            y = alg.conjugate(g, alg.teich(tw, omega)).truncate(m)
            h, yL = alg.conjugate_unramified_into_L(y)
            assert all(j % tw.ell == 0 for j in yL.support())
            assert alg.conjugate(h.d, yL).truncate(m) == y

    s.check("skolem-noether",
            "unramified elements conjugate into the unramified subfield "
            "by a norm-one one-unit", conj_into_L)
    return s.results


def suite_orbits(tower: FieldTower, seed: int = 0):
    s = _Suite("orbits")
    tw = tower

    def formula_vs_bruteforce():
        rng = random.Random(seed)
        if tw.Q <= 16:
            pairs = [(t0, t1) for t0 in range(tw.Q) for t1 in range(tw.Q)]
            label = "exhaustive"
        else:
            pairs = [(rng.randrange(tw.Q), rng.randrange(tw.Q))
                     for _ in range(40)]
            label = "sampled"
        checked = 0
        for t0, t1 in pairs:
            y2 = alg.DElem(tw, 2, 0, (t0, t1))
            try:
                j = alg.jump(y2)
            except UndeterminedAtPrecision:
                continue
            y = alg.DElem(tw, 3, 0, (t0, t1))
            for m in (j + 1, j + 2):
                if tw.Q ** m > 10**6:
                    continue
                f = orb.orbit_size_Ounits(y, m)
                bf = len(orb.brute_force_orbit(y, m, "Ounits"))
                assert f == bf, (t0, t1, m, f, bf)
                rep = orb.orbit_size_G(y, m)
                bfg = len(orb.brute_force_orbit(y, m, "G"))
                assert rep.formula_size == bfg, (t0, t1, m)
                bslf = len(orb.brute_force_orbit(y, m, "G1"))
                assert bf % bslf == 0 and bf // bslf in (
                    1, (tw.q**tw.ell - 1) // (tw.q - 1))
                checked += 1
        return f"{checked} (y, m) pairs, {label}"

    s.check("orbit-sizes",
            "closed-form similarity class sizes match brute-force closure "
            "for every non-central coset mod P^2", formula_vs_bruteforce)

    def splitting():
        y = alg.nu(tw).truncate(3)
        iota = gcd(tw.q - 1, tw.ell)
        full = orb.brute_force_orbit(y, 2, "Ounits")
        sizes = []
        seen = set()
        for x in sorted(alg.encode(d, 2) for d in full):
            if x in seen:
                continue
            cls = orb.brute_force_orbit(alg.decode(tw, 2, x), 2, "G")
            codes = {alg.encode(d, 2) for d in cls}
            seen |= codes
            sizes.append(len(codes))
        assert len(sizes) == iota and len(set(sizes)) == 1, sizes

    s.check("ramified-splitting",
            "a ramified unit-group class splits into gcd(q-1, ell) equal "
            "norm-one classes", splitting)

    def stabilizer_product():
        from .kernel import make_kernel

        # the exact centralizers of the canonical representatives are
        # describable coefficientwise: nu-series with central coefficients
        # commute with nu, and L-supported series commute with omega.
        def central_digits(code, m):
            for _ in range(m):
                code, d = divmod(code, tw.Q)
                if d not in tw.embedded:
                    return False
            return True

        def l_supported(code, m):
            for j in range(m):
                code, d = divmod(code, tw.Q)
                if d and j % tw.ell:
                    return False
            return True

        omega = next(c for c in range(tw.Q) if c and not tw.is_embedded(c))
        cases = [(alg.nu(tw), central_digits),
                 (alg.teich(tw, omega), l_supported)]
        done = 0
        for y, cent_pred in cases:
            j = alg.jump(y)
            m = j + 2
            if tw.Q ** m > 3000:
                m = j + 1
            if m <= j or tw.Q ** m > 50000:
                continue
            done += 1
            k = make_kernel(tw, m)
            st = set(orb.brute_force_stabilizer(y.truncate(m + 1), m,
                                                "Ounits"))
            units = orb.acting_group_codes(tw, m, "Ounits")
            cents = [g for g in units if cent_pred(g, m)]
            Qmj = tw.Q ** (m - j)
            ones = [g for g in units if g % Qmj == 1]
            prodset = {k.mul(a, b) for a in cents for b in ones}
            assert st == prodset, (y, m)
        return f"{done} cases" if done else "skipped: acting group too large"

    s.check("stabilizer-decomposition",
            "the congruence stabilizer is exactly centralizer times the "
            "one-unit layer at level m - jump", stabilizer_product)

    def orbit_stabilizer():
        y = alg.nu(tw).truncate(3)
        m = 2
        if (tw.Q - 1) * tw.Q ** (m - 1) > 50000:
            return "skipped: acting group too large"
        grp = orb.acting_group_codes(tw, m, "Ounits")
        stab = orb.brute_force_stabilizer(y, m, "Ounits")
        o = len(orb.brute_force_orbit(y, m, "Ounits"))
        assert len(grp) == o * len(stab)

    s.check("orbit-stabilizer",
            "group order equals orbit size times stabilizer size",
            orbit_stabilizer)
    return s.results


def suite_duality(tower: FieldTower, seed: int = 0):
    s = _Suite("duality")
    tw = tower
    rng = random.Random(seed)

    def nondegeneracy():
        windows = [(1, 2), (2, 3), (2, 4)]
        for (r, m) in windows:
            if alg.lie_window_size(tw.q, tw.ell, r, m) > 4000:
                continue
            xs = [alg.LieElem(d, r, m)
                  for d in alg.lie_window_elems(tw, r, m)]
            ys = list(du.dual_window_elems(tw, r, m))
            for xe in xs:
                if xe.d.is_zero():
                    continue
                assert any(du.pairing(xe, ye) != 0 for ye in ys), (r, m)

    s.check("pairing-nondegenerate",
            "the residue pairing separates the dual congruence windows",
            nondegeneracy)

    def char_count():
        r, m = 2, 4
        if alg.lie_window_size(tw.q, tw.ell, r, m) > 2000:
            r, m = 1, 2
        grp = [alg.texp(alg.LieElem(d, r, m))
               for d in alg.lie_window_elems(tw, r, m)]
        tables = set()
        for ye in du.dual_window_elems(tw, r, m):
            ch = du.phi_y_as_character(ye)
            tables.add(ch.table(grp))
        assert len(tables) == alg.lie_window_size(tw.q, tw.ell, r, m)

    s.check("dual-parametrization",
            "the dual window enumerates all characters of an abelian layer "
            "without repetition", char_count)

    def invariance():
        r, m = 1, 2
        xs = [alg.LieElem(d, r, m) for d in alg.lie_window_elems(tw, r, m)]
        ys = list(du.dual_window_elems(tw, r, m))
        mw = 3 * m
        for _ in range(20):
            x0, y0 = rng.choice(xs), rng.choice(ys)
            g = _random_unit(tw, mw, rng)
            h, _, _ = alg.normalize_to_G1(g)
            gx = alg.conjugate(h.d, x0.d.exact_lift())
            gy = alg.conjugate(h.d, y0.d.exact_lift())
            assert du.pairing_raw(gx, gy) == du.pairing(x0, y0)

    s.check("pairing-invariance",
            "the pairing is invariant under simultaneous conjugation",
            invariance)

    def commutator_form():
        r = 1
        mtop = 2 * r + 1
        if alg.lie_window_size(tw.q, tw.ell, r, mtop) > 800:
            return "skipped (layer too large)"
        grp = [alg.texp(alg.LieElem(d, r, mtop))
               for d in alg.lie_window_elems(tw, r, mtop)]
        cnt = 0
        for ye in du.dual_window_elems(tw, r + 1, mtop):
            if ye.d.is_zero() or ye.d.coeff(-2 * r) == 0:
                continue
            layer = du.HeisenbergLayer.from_dual_element(ye)
            for a in grp:
                for b in grp:
                    lhs = du.b_theta_group(layer, ye, a, b)
                    rhs = du.psi_scalar(
                        tw, du.beta_form(layer, layer.fcoord(a),
                                         layer.fcoord(b)))
                    assert lhs == rhs
                    cnt += 1
        return f"{cnt} commutator pairs"

    s.check("commutator-form",
            "the commutator pairing of a class-2 layer equals the "
            "antisymmetric trace form", commutator_form)

    def radicals():
        cnt = 0
        for r in (1, 2):
            if r % tw.ell == 0:
                continue
            for y_res in range(1, tw.Q):
                if tw.ell == 2 and tw.galois_trace(y_res) != 0:
                    continue
                layer = du.HeisenbergLayer(tw, r, y_res)
                rad = du.radical(layer)
                want = 1 if tw.ell == 2 else tw.q
                assert len(rad) == want, (r, y_res)
                if tw.ell != 2:
                    assert rad.elements == \
                        du.radical_hilbert90_description(layer)
                iso = du.isotropic_complete(layer)
                for a in iso.elements:
                    for b in iso.elements:
                        assert du.beta_form(layer, a, b) == 0
                dat = du.heisenberg_lift_data(layer)
                want_deg = tw.q if tw.ell == 2 else tw.q ** ((tw.ell - 1) // 2)
                assert dat.lift_degree == want_deg
                cnt += 1
        return f"{cnt} layers"

    s.check("radical-dimension",
            "the radical of the layer form is trivial for degree 2 and a "
            "line for odd degree, matching the twisted-quotient fiber",
            radicals)
    return s.results


def suite_construction(tower: FieldTower, max_level: int = None,
                       guard: int = cons.DEFAULT_GROUP_GUARD,
                       all_gluings: bool = True):
    s = _Suite("construction")
    tw = tower
    q, ell = tw.q, tw.ell
    if max_level is None:
        max_level = 0
        while zeta.group_order(q, ell, max_level + 2) <= guard:
            max_level += 1
    groups = {}

    def orders():
        for m in range(1, max_level + 2):
            G = cons.build_quotient_group(tw, m, guard)
            groups[m] = G
            assert G.order == zeta.group_order(q, ell, m)
        return f"m <= {max_level + 1}"

    s.check("group-orders",
            "explicit congruence quotients have the closed-form order",
            orders)

    def class_census():
        for m, G in groups.items():
            want = sum(zeta.a_m(q, ell, k) for k in range(m))
            assert G.class_count() == want, (m, G.class_count(), want)
        return f"{len(groups)} quotients"

    s.check("class-census",
            "conjugacy class counts equal the cumulative character census",
            class_census)

    def linear_chars():
        for m, G in groups.items():
            if m < 2:
                continue
            assert G.abelianization_order() == zeta.a_m(q, ell, 0)

    s.check("linear-character-count",
            "the abelianization has exactly the level-zero characters",
            linear_chars)

    def per_level():
        lines = []
        for m in range(1, max_level + 1):
            G = groups[m + 1]
            reps = cons.level_orbit_representatives(tw, m)
            a = zeta.a_m(q, ell, m)
            full = all_gluings and a <= 120 and G.order <= 6000
            total = 0
            for y, osize in reps[: len(reps) if full else min(3, len(reps))]:
                datum = cons.construct_inducing_datum(tw, m, y)
                rep = cons.induce_and_verify(G, datum, all_gluings=full)
                assert rep.ok, (m, rep)
                total += (rep.characters_from_orbit
                          if full else 0)
            if full:
                assert total == a, (m, total, a)
                lines.append(f"m={m}:{len(reps)} orbits, {total} characters")
            else:
                lines.append(f"m={m}:{len(reps)} orbits (sampled)")
        return "; ".join(lines)

    s.check("induced-characters",
            "every level's inducing data produce irreducible characters of "
            "the predicted degree and level, in census quantity where "
            "enumerated", per_level)
    return s.results


def suite_zeta(q: int, ell: int, M: int = 40):
    s = _Suite("zeta")

    def telescoping():
        assert zeta.telescoping_check(q, ell, M)

    s.check("telescoping",
            "partial sums at s = -2 reproduce the group orders exactly",
            telescoping)

    def closed_form():
        for sv in (1, 2, 3):
            if zeta.pole_location(q, ell) == sv:
                continue
            cf = zeta.zeta_closed_form(q, ell, sv)
            ps = zeta.zeta_partial_sum(q, ell, sv, 220)
            diff = abs(float(cf.value) - float(ps.value))
            assert diff <= 1e-11, (sv, diff)

    s.check("closed-form",
            "the Dirichlet series converges to the closed form to the right "
            "of the abscissa", closed_form)

    def pole():
        from fractions import Fraction

        assert zeta.pole_location(q, ell) == Fraction(2, ell)
        assert zeta.zeta_closed_form(
            q, ell, Fraction(2, ell)).at_pole or ell == 1

    s.check("pole", "the unique real pole sits at s = 2/ell", pole)
    return s.results


SUITES = ("arith", "orbits", "duality", "construction", "zeta")


def run_suites(q: int, ell: int, suites=("all",), seed: int = 0,
               max_level=None, guard=cons.DEFAULT_GROUP_GUARD):
    """Run the requested suites for residual cardinality q and degree ell."""
    chosen = list(SUITES) if "all" in suites else list(suites)
    p, f = _factor_prime_power(q)
    results = []
    tower = None
    if any(x != "zeta" for x in chosen):
        tower = FieldTower(p, f, ell)
    for name in chosen:
        if name == "arith":
            results.extend(suite_arith(tower, seed=seed))
        elif name == "orbits":
            results.extend(suite_orbits(tower, seed=seed))
        elif name == "duality":
            results.extend(suite_duality(tower, seed=seed))
        elif name == "construction":
            results.extend(suite_construction(tower, max_level=max_level,
                                              guard=guard))
        elif name == "zeta":
            results.extend(suite_zeta(q, ell))
        else:
            raise SL1DError(f"unknown suite {name!r}")
    return results


def _factor_prime_power(q):
    for p in range(2, q + 1):
        if q % p == 0:
            f = 0
            while q % p == 0:
                q //= p
                f += 1
            if q != 1:
                raise SL1DError("q must be a prime power")
            return p, f
    raise SL1DError("q must be a prime power >= 3")
