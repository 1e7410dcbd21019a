"""Census formulas, group orders, telescoping, and the zeta function."""

import random
from fractions import Fraction

import pytest

from sl1d import zeta
from sl1d.errors import BadInput


class TestCensusFormulas:
    def test_frozen_values_32(self):
        # validated against the class-count oracle in test_construction
        table = {0: (4, 1), 1: (8, 2), 2: (8, 3), 3: (24, 6), 4: (24, 9),
                 5: (72, 18), 6: (72, 27)}
        for m, (a, d) in table.items():
            assert zeta.census(3, 2, m) == (a, d)

    def test_frozen_values_53(self):
        assert zeta.census(5, 3, 0) == (31, 1)
        assert zeta.census(5, 3, 1) == (4, 31)
        assert zeta.census(5, 3, 2) == (20, 155)
        assert zeta.census(5, 3, 3) == (31 * 24, 125)

    def test_iota(self):
        assert zeta.iota(3, 2) == 2
        assert zeta.iota(5, 3) == 1
        assert zeta.iota(7, 3) == 3
        assert zeta.iota(3, 5) == 1

    def test_negative_level_rejected(self):
        with pytest.raises(BadInput):
            zeta.a_m(3, 2, -1)


class TestGroupOrders:
    def test_frozen(self):
        for r, want in ((1, 4), (2, 36), (3, 108), (4, 972), (5, 2916)):
            assert zeta.group_order(3, 2, r) == want
        assert zeta.group_order(5, 3, 2) == 3875
        # |G_1| is the norm-one residue group
        assert zeta.group_order(5, 3, 1) == 31
        assert zeta.group_order(7, 3, 1) == 57

    def test_sum_of_squares_identity(self):
        # independent of telescoping_check: direct big-integer sums
        for (q, ell) in ((3, 2), (5, 3), (7, 3), (3, 5), (11, 2), (13, 3)):
            acc = 0
            for m in range(31):
                acc += zeta.a_m(q, ell, m) * zeta.d_m(q, ell, m) ** 2
                assert acc == zeta.group_order(q, ell, m + 1), (q, ell, m)

    def test_telescoping_check(self):
        for (q, ell) in ((3, 2), (5, 3), (7, 3), (3, 5)):
            assert zeta.telescoping_check(q, ell, 40)


class TestZetaFunction:
    def test_exact_value_at_two(self):
        # hand evaluation of the closed form at (3, 2), s = 2:
        # [4(1 - 1/9) + (1/4) * 8] / (2/3) = 25/3
        cf = zeta.zeta_closed_form(3, 2, 2)
        assert cf.exact and cf.value == Fraction(25, 3)

    def test_partial_sums_converge(self):
        for (q, ell, s) in ((3, 2, 2), (5, 3, 1)):
            cf = zeta.zeta_closed_form(q, ell, s)
            ps = zeta.zeta_partial_sum(q, ell, s, 200)
            assert abs(float(cf.value) - float(ps.value)) <= 1e-12

    def test_exact_tail_shrinks_geometrically(self):
        cf = zeta.zeta_closed_form(3, 2, 2)
        errs = [abs(cf.value - zeta.zeta_partial_sum(3, 2, 2, M).value)
                for M in (10, 20, 40)]
        assert errs[0] > errs[1] > errs[2] > 0
        # tail of a convergent geometric-type series: the per-level decay
        # ratio is q^{-1/2}, so ten more terms shrink the error by q^{-5}
        assert errs[1] <= errs[0] * Fraction(1, 3**5)
        assert errs[2] <= errs[1] * Fraction(1, 3**5)

    def test_complex_agreement(self):
        rng = random.Random(12)
        for _ in range(5):
            s = complex(1.5 + rng.random() * 2, rng.random() * 3)
            cf = zeta.zeta_closed_form(3, 2, s)
            ps = zeta.zeta_partial_sum(3, 2, s, 300)
            assert abs(cf.value - ps.value) < 1e-10

    def test_pole_location_symbolic(self):
        assert zeta.pole_location(3, 2) == Fraction(1)
        assert zeta.pole_location(5, 3) == Fraction(2, 3)
        assert zeta.pole_location(7, 5) == Fraction(2, 5)
        assert zeta.zeta_closed_form(3, 2, 1).at_pole

    def test_divergence_below_abscissa(self):
        # below s = 2/ell the terms do not tend to zero: the exponent of q
        # in a_m d_m^{-s} over one period of ell levels is
        # (ell-1) - binom(ell,2) s > 0
        for (q, ell) in ((3, 2), (5, 3)):
            s = float(zeta.pole_location(q, ell)) * 0.9
            terms = [zeta.a_m(q, ell, m) * zeta.d_m(q, ell, m) ** (-s)
                     for m in range(5, 40)]
            assert terms[-1] > terms[0]
            ps1 = zeta.zeta_partial_sum(q, ell, s, 30).value.real
            ps2 = zeta.zeta_partial_sum(q, ell, s, 60).value.real
            assert ps2 > ps1 * 1.5

    def test_group_orders_from_series_at_minus_two(self):
        for M in (3, 7, 11):
            ps = zeta.zeta_partial_sum(3, 2, -2, M)
            assert ps.exact and ps.value == zeta.group_order(3, 2, M + 1)

    def test_census_rows(self):
        rows = zeta.census_rows(3, 2, 4)
        assert [r["a_m"] for r in rows] == [4, 8, 8, 24, 24]
        assert [r["d_m"] for r in rows] == [1, 2, 3, 6, 9]
        assert rows[-1]["sum_a"] == 68
        assert all(r["check"] for r in rows)

    def test_iota_branch_coverage(self):
        # all three arithmetic situations of gcd(q-1, ell)
        for (q, ell, i) in ((5, 3, 1), (3, 2, 2), (7, 3, 3)):
            assert zeta.iota(q, ell) == i
            assert zeta.telescoping_check(q, ell, 25)
