"""Similarity classes: closed-form sizes against exhaustive brute force,
stabilizer shapes, splitting, and the index ratio identities."""

import pytest

from sl1d import algebra as alg
from sl1d import orbits as orb
from sl1d.errors import JumpNotBelowM, TooLarge


class TestStabilizerStructure:
    def test_whole_group_below_jump(self, tower32):
        st = orb.stabilizer_structure(alg.nu(tower32), 1)
        assert st.case is orb.StabilizerCase.WHOLE_GROUP

    def test_product_shape(self, tower32):
        st = orb.stabilizer_structure(alg.nu(tower32), 3)
        assert st.case is orb.StabilizerCase.CENTRALIZER_TIMES_CONGRUENCE
        assert st.congruence_level == 2
        assert st.centralizer_kind is alg.ElementClass.RAMIFIED
        om = next(c for c in range(9) if c and not tower32.is_embedded(c))
        st = orb.stabilizer_structure(alg.teich(tower32, om), 2)
        assert st.congruence_level == 2
        assert st.centralizer_kind is alg.ElementClass.UNRAMIFIED


class TestFormulaSizes:
    def test_spec_values(self, tower32, tower53):
        # ramified nu at (3,2), m=2: (q^2-1)/(q-1) * q^0 = 4
        assert orb.orbit_size_Ounits(alg.nu(tower32), 2) == 4
        # unramified omega with jump 0, m=2: q^(2(2-1)) = 9
        om = next(c for c in range(9) if c and not tower32.is_embedded(c))
        assert orb.orbit_size_Ounits(alg.teich(tower32, om), 2) == 9
        # (5,3): nu at m=2: 31
        assert orb.orbit_size_Ounits(alg.nu(tower53), 2) == 31

    def test_rejects_jump_at_or_above_m(self, tower32):
        with pytest.raises(JumpNotBelowM):
            orb.orbit_size_Ounits(alg.nu(tower32), 1)

    def test_g_orbit_reports(self, tower32, tower53):
        rep = orb.orbit_size_G(alg.nu(tower32), 2)
        assert rep.formula_size == 2 and rep.splitting_count == 2
        assert rep.ratio_G_over_G1 == 2 and rep.ratio_units_over_G1 == 4
        rep53 = orb.orbit_size_G(alg.nu(tower53), 2)
        assert rep53.formula_size == 31 and rep53.splitting_count == 1
        om = next(c for c in range(9) if c and not tower32.is_embedded(c))
        repu = orb.orbit_size_G(alg.teich(tower32, om), 2)
        assert repu.formula_size == 9 and repu.splitting_count == 1


class TestBruteForce:
    def test_central_orbit_is_singleton(self, tower32):
        y = alg.pi(tower32).truncate(3)
        assert orb.brute_force_orbit(y, 3, "Ounits") == frozenset(
            [alg.pi(tower32).truncate(3)])

    def test_spec_examples(self, tower32):
        y = alg.nu(tower32).truncate(3)
        assert len(orb.brute_force_orbit(y, 2, "Ounits")) == 4
        assert len(orb.brute_force_orbit(y, 2, "G")) == 2

    def test_exhaustive_mod_p2(self, tower32):
        """Every non-central coset mod P^2 at (3,2), checked at
        m = jump+1 and jump+2 under all three acting groups."""
        tw = tower32
        iota_ratio = (tw.q**tw.ell - 1) // (tw.q - 1)
        checked = 0
        for t0 in range(tw.Q):
            for t1 in range(tw.Q):
                y2 = alg.DElem(tw, 2, 0, (t0, t1))
                try:
                    j = alg.jump(y2)
                except Exception:
                    continue
                y = alg.DElem(tw, 3, 0, (t0, t1))
                for m in (j + 1, j + 2):
                    f = orb.orbit_size_Ounits(y, m)
                    bf_u = len(orb.brute_force_orbit(y, m, "Ounits"))
                    assert f == bf_u
                    rep = orb.orbit_size_G(y, m)
                    bf_g = len(orb.brute_force_orbit(y, m, "G"))
                    assert rep.formula_size == bf_g
                    bf_1 = len(orb.brute_force_orbit(y, m, "G1"))
                    # index ratio identities against the norm-one one-units
                    if alg.classify(y) is alg.ElementClass.RAMIFIED:
                        assert bf_u == iota_ratio * bf_1
                        assert bf_g == rep.ratio_G_over_G1 * bf_1
                        assert bf_g == bf_u // rep.splitting_count
                    else:
                        assert bf_u == bf_g == bf_1
                    checked += 1
        assert checked == 156

    def test_ramified_class_splits_equally(self, tower32):
        tw = tower32
        y = alg.nu(tw).truncate(3)
        full = orb.brute_force_orbit(y, 2, "Ounits")
        seen = set()
        sizes = []
        for d in sorted(full, key=lambda e: alg.encode(e, 2)):
            c = alg.encode(d, 2)
            if c in seen:
                continue
            cls = orb.brute_force_orbit(d, 2, "G")
            codes = {alg.encode(e, 2) for e in cls}
            seen |= codes
            sizes.append(len(codes))
        assert sizes == [2, 2]

    def test_guard(self, tower32):
        with pytest.raises(TooLarge):
            orb.brute_force_orbit(alg.nu(tower32).truncate(20), 20,
                                  "Ounits", guard=100)

    def test_orbit_stabilizer_consistency(self, tower32):
        tw = tower32
        y = alg.nu(tw).truncate(3)
        for m in (1, 2):
            grp = orb.acting_group_codes(tw, m, "Ounits")
            stab = orb.brute_force_stabilizer(y, m, "Ounits")
            o = len(orb.brute_force_orbit(y, m, "Ounits"))
            assert len(grp) == o * len(stab)

    def test_stabilizer_is_product(self, tower32):
        """The brute stabilizer set equals {centralizer} x {one-units of
        level m - jump}: the centralizer of nu mod precision is the set of
        series with central coefficients."""
        from sl1d.kernel import make_kernel

        tw = tower32
        y = alg.nu(tw)
        m = 2
        j = alg.jump(y)
        k = make_kernel(tw, m)
        st = set(orb.brute_force_stabilizer(y.truncate(3), m, "Ounits"))
        units = orb.acting_group_codes(tw, m, "Ounits")

        def central_digits(code):
            for _ in range(m):
                code, d = divmod(code, tw.Q)
                if d not in tw.embedded:
                    return False
            return True

        cents = [g for g in units if central_digits(g)]
        ones = [g for g in units if g % tw.Q ** (m - j) == 1]
        assert st == {k.mul(a, b) for a in cents for b in ones}


class TestGeneratorSets:
    def test_generators_generate(self, tower32):
        """Closure of the generator set under multiplication is the whole
        acting group modulo the one-units of level m."""
        from sl1d.kernel import make_kernel

        tw = tower32
        m = 3
        k = make_kernel(tw, m)
        for acting, total in ((orb.ActingGroup.OUNITS, 8 * 81),
                              (orb.ActingGroup.G, 4 * 27),
                              (orb.ActingGroup.G1, 27)):
            gens = orb.acting_generators(tw, m, acting)
            seen = {1}
            frontier = [1]
            while frontier:
                nxt = []
                for x in frontier:
                    for g in gens:
                        y = k.mul(x, g)
                        if y not in seen:
                            seen.add(y)
                            nxt.append(y)
                frontier = nxt
            assert len(seen) == total, acting
            assert seen == set(orb.acting_group_codes(tw, m, acting))
