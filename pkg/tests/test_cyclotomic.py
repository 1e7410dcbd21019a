"""Exact cyclotomic arithmetic used by the character verifier."""

import random
from fractions import Fraction

import pytest

from sl1d.cyclotomic import CycloRing, cyclotomic_poly


def test_cyclotomic_polynomials():
    assert cyclotomic_poly(1) == (-1, 1)
    assert cyclotomic_poly(2) == (1, 1)
    assert cyclotomic_poly(3) == (1, 1, 1)
    assert cyclotomic_poly(4) == (1, 0, 1)
    assert cyclotomic_poly(12) == (1, 0, -1, 0, 1)
    # degree is Euler phi
    assert len(cyclotomic_poly(36)) - 1 == 12
    assert len(cyclotomic_poly(155)) - 1 == 120


@pytest.mark.parametrize("M", [4, 12, 36])
def test_root_of_unity_relations(M):
    R = CycloRing(M)
    z = R.zeta(1)
    acc = R.one
    for k in range(1, M + 1):
        acc = R.mul(acc, z)
        if k < M:
            assert not R.equal(acc, R.one)
    assert R.equal(acc, R.one)
    total = R.zero
    for k in range(M):
        total = R.add(total, R.zeta(k))
    assert R.is_zero(total)


def test_conjugation_is_inverse_on_roots():
    R = CycloRing(36)
    for k in range(36):
        assert R.equal(R.mul(R.zeta(k), R.conj(R.zeta(k))), R.one)
        assert R.equal(R.conj(R.zeta(k)), R.zeta(-k))


def test_field_inverse_random():
    R = CycloRing(36)
    rng = random.Random(7)
    for _ in range(40):
        a = tuple(Fraction(rng.randrange(-5, 6)) for _ in range(R.degree))
        if R.is_zero(a):
            continue
        assert R.equal(R.mul(a, R.inv(a)), R.one)


def test_subgroup_sums_vanish():
    # sum over the p-th roots inside mu_M is zero
    R = CycloRing(36)
    s = R.zero
    for j in range(3):
        s = R.add(s, R.zeta(12 * j))
    assert R.is_zero(s)
    s4 = R.zero
    for j in range(4):
        s4 = R.add(s4, R.zeta(9 * j))
    assert R.is_zero(s4)


def test_rational_detection():
    R = CycloRing(12)
    assert R.is_rational(R.from_int(5))
    assert R.rational_value(R.from_int(5)) == 5
    assert not R.is_rational(R.zeta(1))
    with pytest.raises(ArithmeticError):
        R.rational_value(R.zeta(1))
