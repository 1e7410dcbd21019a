"""Explicit quotient groups and the end-to-end character construction."""

import pytest

from sl1d import algebra as alg
from sl1d import construction as cons
from sl1d import zeta
from sl1d.errors import TooLarge


@pytest.fixture(scope="module")
def groups32(tower32):
    return {m: cons.build_quotient_group(tower32, m) for m in (1, 2, 3, 4)}


class TestQuotientGroup:
    def test_orders_match_formula(self, groups32):
        for m, want in ((1, 4), (2, 36), (3, 108), (4, 972)):
            assert groups32[m].order == want

    def test_layer_enumeration_equals_norm_filter(self, tower32, tower53):
        for tw, ms in ((tower32, (1, 2, 3)), (tower53, (1, 2))):
            for m in ms:
                gl = cons.build_quotient_group(tw, m, method="layers")
                gf = cons.build_quotient_group(tw, m, method="filter")
                assert gl.elements == gf.elements

    def test_group_axioms_small(self, groups32):
        G = groups32[2]
        els = G.elements
        for a in els[:12]:
            assert G.mul(a, G.inv(a)) == G.identity
            for b in els[:12]:
                c = G.mul(a, b)
                assert c in G.element_set

    def test_guard(self, tower32):
        with pytest.raises(TooLarge):
            cons.build_quotient_group(tower32, 9, guard=10**4)

    def test_class_counts(self, groups32):
        # 12 = 4 + 8, 20 = 4+8+8, 44 = 4+8+8+24: cumulative census
        for m, want in ((1, 4), (2, 12), (3, 20), (4, 44)):
            assert cons.conjugacy_class_count(groups32[m]) == want

    def test_g1_is_abelian(self, groups32):
        G = groups32[1]
        for a in G.elements:
            for b in G.elements:
                assert G.mul(a, b) == G.mul(b, a)

    def test_abelianization(self, groups32):
        for m in (2, 3, 4):
            assert groups32[m].abelianization_order() == 4

    def test_congruence_subgroup_sizes(self, groups32):
        G = groups32[4]
        for k in (1, 2, 3):
            assert len(G.congruence_subgroup(k)) == \
                alg.lie_window_size(3, 2, k, 4)

    def test_exponent(self, groups32):
        # lcm of element orders: the Teichmueller part contributes q + 1,
        # the one-units a p-power growing with the depth
        assert groups32[2].exponent() == 12
        assert groups32[3].exponent() == 12
        assert groups32[4].exponent() == 36
        for m in (2, 3, 4):
            G = groups32[m]
            for cls in G.conjugacy_classes():
                assert G.exponent() % G.element_order(cls[0]) == 0


class TestLevelData:
    def test_canonical_representatives(self, tower32, tower53):
        for tw in (tower32, tower53):
            for m in (1, 2, 3):
                Y = cons.canonical_level_representative(tw, m)
                assert alg.trd(Y).is_zero()
                assert alg.jump(Y) == -m

    def test_orbit_representative_counts(self, tower32):
        for m, want_orbits, want_sizes in (
                (1, 4, {2}), (2, 2, {1}), (3, 4, {6}), (4, 2, {9})):
            reps = cons.level_orbit_representatives(tower32, m)
            assert len(reps) == want_orbits
            assert {s for _, s in reps} == want_sizes

    def test_datum_cases(self, tower32, tower53):
        assert cons.construct_inducing_datum(tower32, 1).case is \
            cons.CaseTag.ODD
        assert cons.construct_inducing_datum(tower32, 2).case is \
            cons.CaseTag.EVEN_QUATERNION
        assert cons.construct_inducing_datum(tower32, 4).case is \
            cons.CaseTag.DIVISIBLE_BY_2ELL
        assert cons.construct_inducing_datum(tower53, 2).case is \
            cons.CaseTag.EVEN_ODD_ELL
        assert cons.construct_inducing_datum(tower53, 6).case is \
            cons.CaseTag.DIVISIBLE_BY_2ELL

    def test_datum_degrees_match_census(self, tower32, tower53):
        for tw, q, ell in ((tower32, 3, 2), (tower53, 5, 3)):
            for m in range(1, 7):
                d = cons.construct_inducing_datum(tw, m)
                assert d.predicted_degree == zeta.d_m(q, ell, m)

    def test_monomial_flags(self, tower32, tower53):
        # odd degree: always monomial; degree 2: except m = 2 mod 4
        for m in range(1, 7):
            d53 = cons.construct_inducing_datum(tower53, m)
            assert d53.monomial
            d32 = cons.construct_inducing_datum(tower32, m)
            assert d32.monomial == (m % 4 != 2)

    def test_datum_linear_character_rule(self, tower32, groups32):
        datum = cons.construct_inducing_datum(tower32, 1)
        G = groups32[2]
        rule = datum.linear_character(G)
        N = G.exponent()
        dom = G.congruence_subgroup(1)
        assert set(rule) == dom
        for a in dom:
            for b in dom:
                assert rule[G.mul(a, b)] == (rule[a] + rule[b]) % N

    def test_even_datum_carries_lift_data(self, tower53):
        d = cons.construct_inducing_datum(tower53, 2)
        assert d.lift.extension_count == 5
        assert d.lift.lift_degree == 5
        assert d.predicted_inertia_index * d.lift.lift_degree == \
            d.predicted_degree


class TestInduction:
    @pytest.mark.parametrize("m", [1, 2, 3])
    def test_full_verification(self, tower32, groups32, m):
        G = groups32[m + 1]
        reps = cons.level_orbit_representatives(tower32, m)
        total = 0
        for y, osize in reps:
            datum = cons.construct_inducing_datum(tower32, m, y)
            rep = cons.induce_and_verify(G, datum, all_gluings=True)
            assert rep.ok
            assert rep.degree_actual == rep.degree_expected
            assert rep.norm_value == 1
            assert rep.level_actual == m
            total += rep.characters_from_orbit
        assert total == zeta.a_m(3, 2, m)

    def test_level4_divisible_by_2ell(self, tower32):
        G = cons.build_quotient_group(tower32, 5)
        reps = cons.level_orbit_representatives(tower32, 4)
        total = 0
        for y, _ in reps:
            datum = cons.construct_inducing_datum(tower32, 4, y)
            assert datum.case is cons.CaseTag.DIVISIBLE_BY_2ELL
            rep = cons.induce_and_verify(G, datum, all_gluings=True)
            assert rep.ok and rep.degree_actual == 9
            total += rep.characters_from_orbit
        assert total == zeta.a_m(3, 2, 4) == 24

    def test_quaternion_extension_bookkeeping(self, tower32, groups32):
        reps = cons.level_orbit_representatives(tower32, 2)
        y, _ = reps[0]
        datum = cons.construct_inducing_datum(tower32, 2, y)
        rep = cons.induce_and_verify(groups32[3], datum, all_gluings=True)
        assert rep.extension_count == 4  # q + 1
        assert rep.characters_from_orbit == 4
        assert not rep.monomial
        assert rep.inertia_order == groups32[3].order  # inertia is everything

    def test_level1_odd_case_at_5_3(self, tower53):
        G = cons.build_quotient_group(tower53, 2)
        reps = cons.level_orbit_representatives(tower53, 2 - 1)
        assert len(reps) == 4
        total = 0
        for y, _ in reps:
            datum = cons.construct_inducing_datum(tower53, 1, y)
            rep = cons.induce_and_verify(G, datum, all_gluings=True)
            assert rep.ok and rep.degree_actual == 31
            total += rep.characters_from_orbit
        assert total == zeta.a_m(5, 3, 1) == 4

    def test_census_cross_validation(self, tower32, groups32):
        a, d = cons.census(3, 2, 3, cross_validate=groups32[4])
        assert (a, d) == (24, 6)
        assert cons.census(5, 3, 1) == (4, 31)
        assert cons.census(3, 2, 0) == (4, 1)

    def test_level_partition_from_class_counts(self, groups32):
        # characters of each level k, inferred from successive quotients
        counts = {m: groups32[m].class_count() for m in (1, 2, 3, 4)}
        assert counts[1] == zeta.a_m(3, 2, 0)
        for m in (1, 2, 3):
            assert counts[m + 1] - counts[m] == zeta.a_m(3, 2, m)


class TestLiftIndependence:
    def test_inner_induced_character_independent_of_isotropic_choice(
            self, tower32, groups32):
        """Inducing the layer character from any maximal isotropic line of
        the class-2 layer yields the same irreducible character."""
        from sl1d import duality as du
        from sl1d.cyclotomic import CycloRing

        tw = tower32
        G = groups32[3]
        r = 1
        y, _ = cons.level_orbit_representatives(tw, 2)[0]
        layer = du.HeisenbergLayer.from_dual_element(y)
        gamma1 = sorted(G.congruence_subgroup(r))
        N = G.exponent()
        ring = CycloRing(N)
        theta = cons.layer_character_exponents(
            G, alg.DElem(tw, -r + 1, y.d.lo, y.d.coeffs), r, N)

        # all maximal isotropic (= all) lines of the coordinate plane
        lines = set()
        for v in range(1, tw.Q):
            span = {0}
            acc = 0
            for _ in range(tw.p - 1):
                acc = tw.add(acc, v)
                span.add(acc)
            lines.add(frozenset(span))
        assert len(lines) == tw.q + 1

        tables = set()
        for line in lines:
            Jset = sorted(c for c in gamma1
                          if layer.fcoord(G.decode(c)) in line)
            lam = {c: theta[c] for c in Jset}
            # unnormalized induced character of Gamma^1 from the line
            vals = []
            for g in gamma1:
                acc = ring.zero
                for x in gamma1:
                    h = G.mul(G.mul(G.inv(x), g), x)
                    if h in lam:
                        acc = ring.add(acc, ring.zeta(lam[h]))
                vals.append(acc)
            tables.add(tuple(vals))
        assert len(tables) == 1


class TestCentralizerImages:
    def test_unramified_centralizer_is_L_units(self, tower32, groups32):
        G = groups32[3]
        Y = cons.canonical_level_representative(tower32, 2)
        C = cons.centralizer_image(G, Y.exact_lift())
        # norm-one units of the unramified quadratic subfield mod P^3
        assert len(C) == 12
        for c in C:
            cc = c
            for j in range(3):
                cc, d = divmod(cc, tower32.Q)
                assert not (d and j % 2)

    def test_ramified_centralizer_abelian(self, tower32, groups32):
        G = groups32[2]
        Y = cons.canonical_level_representative(tower32, 1)
        C = cons.centralizer_image(G, Y.exact_lift())
        for a in C:
            for b in C:
                assert G.mul(a, b) == G.mul(b, a)
        # inertia subgroup C * G^1 has index d_1 = 2
        H = G.product_set(C, G.congruence_subgroup(1))
        assert len(H) == G.order // 2
