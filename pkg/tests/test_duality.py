"""Duality layer: the residue character, the pairing and its dual
parametrization, and the Heisenberg form data."""

import random

import pytest

from sl1d import algebra as alg
from sl1d import duality as du
from sl1d.errors import (
    DegenerateLayer,
    NotCentral,
    WindowMismatch,
    WindowViolation,
)

class TestPsi:
    def test_vanishes_on_integers(self, tower32):
        tw = tower32
        for x in (alg.one(tw), alg.pi(tw), alg.pi(tw, 3),
                  alg.scalar(tw, 2)):
            assert du.psi(x) == 0

    def test_nontrivial_at_pi_inverse(self, tower32, tower53):
        for tw in (tower32, tower53):
            cinv = tw.inv(tw.psi_c)
            x = alg.nu(tw, -tw.ell).scale_right(cinv)
            assert du.psi(x) != 0

    def test_order_p(self, tower32):
        tw = tower32
        e = du.psi(alg.nu(tw, -2))
        assert (e * tw.p) % tw.p == 0
        assert 0 <= e < tw.p

    def test_rejects_noncentral(self, tower32):
        with pytest.raises(NotCentral):
            du.psi(alg.nu(tower32))


class TestPairing:
    WINDOWS = [(1, 2), (2, 3), (2, 4)]

    def test_zero_pairs_trivially(self, tower32):
        tw = tower32
        y0 = du.DualElement(alg.zero(tw, -1 + 1), 1, 2, check=False)
        for d in alg.lie_window_elems(tw, 1, 2):
            assert du.pairing(alg.LieElem(d, 1, 2), y0) == 0

    @pytest.mark.parametrize("r,m", WINDOWS)
    def test_nondegenerate_exhaustive(self, tower32, r, m):
        tw = tower32
        xs = [alg.LieElem(d, r, m) for d in alg.lie_window_elems(tw, r, m)]
        ys = list(du.dual_window_elems(tw, r, m))
        assert len(xs) == len(ys) == alg.lie_window_size(3, 2, r, m)
        for xe in xs:
            if xe.d.is_zero():
                continue
            assert any(du.pairing(xe, ye) != 0 for ye in ys)
        for ye in ys:
            if ye.d.is_zero():
                continue
            assert any(du.pairing(xe, ye) != 0 for xe in xs)

    @pytest.mark.parametrize("r,m", WINDOWS)
    def test_well_defined_under_lift_change(self, tower32, r, m):
        tw = tower32
        rng = random.Random(31)
        xs = [alg.LieElem(d, r, m) for d in alg.lie_window_elems(tw, r, m)]
        ys = list(du.dual_window_elems(tw, r, m))
        for _ in range(15):
            xe, ye = rng.choice(xs), rng.choice(ys)
            base = du.pairing(xe, ye)
            pert_x = xe.d.exact_lift() + \
                alg.nu(tw, m).scale_right(rng.randrange(1, tw.Q))
            assert du.pairing_raw(pert_x, ye.d) == base
            pert_y = ye.d.exact_lift() + \
                alg.nu(tw, -r + 1).scale_right(rng.randrange(1, tw.Q))
            assert du.pairing_raw(xe.d, pert_y) == base

    def test_biadditive(self, tower32):
        tw = tower32
        r, m = 1, 2
        xs = [alg.LieElem(d, r, m) for d in alg.lie_window_elems(tw, r, m)]
        ys = list(du.dual_window_elems(tw, r, m))
        for x1 in xs[:4]:
            for x2 in xs[:4]:
                for ye in ys[:4]:
                    assert du.pairing(x1 + x2, ye) % 3 == (
                        du.pairing(x1, ye) + du.pairing(x2, ye)) % 3

    def test_invariance_under_conjugation(self, tower32):
        tw = tower32
        rng = random.Random(32)
        r, m = 2, 3
        xs = [alg.LieElem(d, r, m) for d in alg.lie_window_elems(tw, r, m)]
        ys = list(du.dual_window_elems(tw, r, m))
        for _ in range(25):
            x0, y0 = rng.choice(xs), rng.choice(ys)
            g = alg.DElem(tw, 9, 0, tuple(
                [rng.randrange(1, 9)] + [rng.randrange(9) for _ in range(8)]))
            h, _, _ = alg.normalize_to_G1(g)
            gx = alg.conjugate(h.d, x0.d.exact_lift())
            gy = alg.conjugate(h.d, y0.d.exact_lift())
            assert du.pairing_raw(gx, gy) == du.pairing(x0, y0)

    def test_nondegeneracy_witness_construction(self, tower32):
        """Independent witness: for nonzero traceless x, the element
        (1/ell) x^{-1} minus its trace part pairs nontrivially with x."""
        tw = tower32
        inv_ell = pow(tw.ell % tw.p, tw.p - 2, tw.p)
        inv_ell_c = tw.mul(inv_ell, tw.inv(tw.psi_c))
        for (r, m) in self.WINDOWS:
            for d in alg.lie_window_elems(tw, r, m):
                if d.is_zero():
                    continue
                X = d.exact_lift()
                Yp = alg.inv_general(X, prec=1).scale_right(inv_ell)
                Y = Yp - alg.trd(Yp).scale_right(inv_ell)
                assert Y.lo >= -m + 1
                val = du.pairing_raw(X, Y)
                assert val != 0

    def test_window_mismatch(self, tower32):
        tw = tower32
        x = alg.LieElem(alg.nu(tw).truncate(2), 1, 2)
        y = next(iter(du.dual_window_elems(tw, 2, 3)))
        with pytest.raises(WindowMismatch):
            du.pairing(x, y)


class TestLayerCharacters:
    def test_trivial_for_zero(self, tower32):
        tw = tower32
        r, m = 2, 4
        y0 = du.DualElement(alg.zero(tw, -r + 1), r, m, check=False)
        ch = du.phi_y_as_character(y0)
        for d in alg.lie_window_elems(tw, r, m):
            assert ch(alg.texp(alg.LieElem(d, r, m))) == 0

    def test_all_characters_distinct(self, tower32):
        tw = tower32
        r, m = 2, 4
        grp = [alg.texp(alg.LieElem(d, r, m))
               for d in alg.lie_window_elems(tw, r, m)]
        tables = set()
        for ye in du.dual_window_elems(tw, r, m):
            tables.add(du.phi_y_as_character(ye).table(grp))
        assert len(tables) == 27

    def test_homomorphism(self, tower32):
        tw = tower32
        rng = random.Random(33)
        r, m = 2, 4
        grp = [alg.texp(alg.LieElem(d, r, m))
               for d in alg.lie_window_elems(tw, r, m)]
        for ye in du.dual_window_elems(tw, r, m):
            ch = du.phi_y_as_character(ye)
            for _ in range(6):
                g1, g2 = rng.choice(grp), rng.choice(grp)
                assert ch(g1 * g2) == (ch(g1) + ch(g2)) % tw.p

    def test_window_gate(self, tower32):
        tw = tower32
        y = next(iter(du.dual_window_elems(tw, 1, 3)))
        with pytest.raises(WindowViolation):
            du.phi_y_as_character(y)  # m = 3 > 2r = 2


class TestHeisenberg:
    def test_layer_requires_coprime_r_and_nonzero_residue(self, tower32):
        with pytest.raises(Exception):
            du.HeisenbergLayer(tower32, 2, 1)  # ell | r
        with pytest.raises(DegenerateLayer):
            du.HeisenbergLayer(tower32, 1, 0)

    def test_beta_antisymmetric_biadditive(self, tower32):
        tw = tower32
        y_res = next(c for c in tw.trace_zero if c)
        layer = du.HeisenbergLayer(tw, 1, y_res)
        for a in range(tw.Q):
            assert du.beta_form(layer, a, a) == 0
            for b in range(tw.Q):
                lhs = du.beta_form(layer, a, b)
                assert lhs == tw.neg(du.beta_form(layer, b, a))
                assert lhs in tw.embedded
        for a in range(0, tw.Q, 2):
            for b in range(tw.Q):
                for c in range(0, tw.Q, 3):
                    assert du.beta_form(layer, tw.add(a, c), b) == tw.add(
                        du.beta_form(layer, a, b), du.beta_form(layer, c, b))

    def test_quadratic_case_reduces_to_untwisted_form(self, tower32):
        # for degree 2 the twist tau^2 is the identity, so beta is the
        # untwisted antisymmetrized trace form
        tw = tower32
        y_res = next(c for c in tw.trace_zero if c)
        layer = du.HeisenbergLayer(tw, 1, y_res)
        for a in range(tw.Q):
            for b in range(tw.Q):
                direct = tw.galois_trace(tw.mul(
                    tw.sub(tw.mul(a, layer.tau(b)),
                           tw.mul(layer.tau(a), b)), y_res))
                assert du.beta_form(layer, a, b) == direct

    def test_gram_rank_full_for_quadratic(self, tower32):
        tw = tower32
        for y_res in tw.trace_zero:
            if not y_res:
                continue
            layer = du.HeisenbergLayer(tw, 1, y_res)
            rad = du.radical(layer)
            assert rad.elements == {0}

    def test_radical_by_scan_oracle(self, tower32, tower52, tower53):
        for tw in (tower32, tower52, tower53):
            for r in (1, 2):
                if r % tw.ell == 0:
                    continue
                residues = (tw.trace_zero if tw.ell == 2
                            else range(tw.Q))
                for y_res in residues:
                    if not y_res:
                        continue
                    layer = du.HeisenbergLayer(tw, r, y_res)
                    rad = du.radical(layer)
                    scan = {x for x in range(tw.Q)
                            if all(du.beta_form(layer, x, e) == 0
                                   for e in range(tw.Q))}
                    assert rad.elements == scan

    def test_radical_sizes_and_hilbert90(self, tower52, tower53):
        # degree 2, q = 5: trivial radical on every admissible residue
        tw = tower52
        count = 0
        for y_res in tw.trace_zero:
            if not y_res:
                continue
            assert len(du.radical(du.HeisenbergLayer(tw, 1, y_res))) == 1
            count += 1
        assert count == 4
        # degree 3, q = 5: a line for all 124 residues, matching the
        # twisted-quotient description
        tw = tower53
        for r in (1, 2):
            for y_res in range(1, tw.Q):
                layer = du.HeisenbergLayer(tw, r, y_res)
                rad = du.radical(layer)
                assert len(rad) == 5
                assert rad.elements == \
                    du.radical_hilbert90_description(layer)

    def test_isotropic_completion(self, tower32, tower53):
        for tw, want_dim in ((tower32, 1), (tower53, 2)):
            y_res = (next(c for c in tw.trace_zero if c)
                     if tw.ell == 2 else 7)
            layer = du.HeisenbergLayer(tw, 1, y_res)
            iso = du.isotropic_complete(layer)
            assert len(iso) == tw.q**want_dim
            for a in iso.elements:
                for b in iso.elements:
                    assert du.beta_form(layer, a, b) == 0
            assert du.radical(layer).elements <= iso.elements

    def test_lift_data(self, tower32, tower53):
        layer32 = du.HeisenbergLayer(
            tower32, 1, next(c for c in tower32.trace_zero if c))
        d32 = du.heisenberg_lift_data(layer32)
        assert d32 == du.LiftDatum(1, 3, 1, 3)
        layer53 = du.HeisenbergLayer(tower53, 1, 7)
        d53 = du.heisenberg_lift_data(layer53)
        assert d53.extension_count == 5 and d53.lift_degree == 5

    def test_commutator_pairing_matches_form(self, tower32):
        """Group-side commutator pairing equals psi(beta) under the layer
        coordinate, exhaustively on the class-2 layer at r = 1."""
        tw = tower32
        r = 1
        mtop = 2 * r + 1
        grp = [alg.texp(alg.LieElem(d, r, mtop))
               for d in alg.lie_window_elems(tw, r, mtop)]
        layers = 0
        for ye in du.dual_window_elems(tw, r + 1, mtop):
            if ye.d.is_zero() or ye.d.coeff(-2 * r) == 0:
                continue
            layer = du.HeisenbergLayer.from_dual_element(ye)
            for a in grp:
                for b in grp:
                    assert du.b_theta_group(layer, ye, a, b) == \
                        du.psi_scalar(tw, du.beta_form(
                            layer, layer.fcoord(a), layer.fcoord(b)))
            layers += 1
        assert layers == 2
