"""Gamma algebra, spinor normalization and the light-front form.

Oracles here are dense matrix arithmetic built independently of the
library's helpers wherever a contract is nontrivial.
"""

import numpy as np
import pytest

from volkovwp import algebra as alg
from volkovwp.algebra import (FourVector, N_PLANE, dirac_residual,
                              dressed_bispinor, free_spinor,
                              free_spinor_columns, lightfront_density,
                              minkowski_dot, onshell_fourvector)

RNG = np.random.default_rng(20260809)


def random_onshell(rng, p_scale=1.0):
    p1, p2, p3 = rng.normal(scale=p_scale, size=3)
    p = onshell_fourvector(p1, p2, p3)
    if p.minus <= 1e-6:
        return random_onshell(rng, p_scale)
    return p


class TestGammaBasis:
    def test_anticommutators_exact(self):
        # {gamma_mu, gamma_nu} = 2 g_mu_nu, entrywise exact (integer entries)
        for mu in range(4):
            for nu in range(4):
                anti = alg.GAMMAS[mu] @ alg.GAMMAS[nu] \
                    + alg.GAMMAS[nu] @ alg.GAMMAS[mu]
                expected = 2.0 * alg.METRIC[mu, nu] * np.eye(4)
                assert np.array_equal(anti, expected), (mu, nu)

    def test_gamma_minus_nilpotent(self):
        assert np.array_equal(alg.GAMMA_MINUS @ alg.GAMMA_MINUS,
                              np.zeros((4, 4)))

    def test_lightfront_form_psd(self):
        evals = np.linalg.eigvalsh(alg.LF_FORM)
        assert np.all(evals >= -1e-15)
        assert np.allclose(sorted(evals), [0, 0, 2, 2], atol=1e-14)


class TestMinkowskiDot:
    def test_null_plane_direction(self):
        assert minkowski_dot(N_PLANE, N_PLANE) == 0.0

    def test_onshell_reference_point(self):
        # p_minus = 3m on-axis point: p = (5/3, 0, 0, -4/3); p.p = 25/9 - 16/9
        p = FourVector(5.0 / 3.0, 0.0, 0.0, -4.0 / 3.0)
        assert minkowski_dot(p, p) == pytest.approx(1.0, abs=1e-15)
        assert p.minus == pytest.approx(3.0, abs=1e-15)

    def test_lightfront_identity(self):
        omega = 0.01
        k = FourVector(omega, 0.0, 0.0, omega)
        x = FourVector(7.0, 1.0, -2.0, 3.5)
        assert minkowski_dot(k, x) == pytest.approx(omega * x.minus, rel=1e-15)


class TestFreeSpinor:
    def test_rest_frame_norm(self):
        u = free_spinor(FourVector(1.0, 0.0, 0.0, 0.0))
        dens = lightfront_density(u)
        assert dens == pytest.approx(2.0, rel=1e-14)

    def test_reference_point_norm(self):
        u = free_spinor(FourVector(5.0 / 3.0, 0.0, 0.0, -4.0 / 3.0))
        assert lightfront_density(u) == pytest.approx(6.0, rel=1e-13)

    @pytest.mark.parametrize("spin", ["up", "down"])
    def test_dirac_equation_residual(self, spin):
        for scale in (0.1, 1.0, 30.0, 1e3):
            p = random_onshell(RNG, scale)
            u = free_spinor(p, spin)
            # residual normalized by the spinor magnitude at large |p|
            assert dirac_residual(p, u) / max(1.0, np.max(np.abs(u))) < 1e-12

    def test_norm_matches_2pminus(self):
        for _ in range(200):
            p = random_onshell(RNG)
            u = free_spinor(p, "up")
            assert lightfront_density(u) == pytest.approx(2.0 * p.minus,
                                                          rel=1e-12)

    def test_rejects_nonpositive_pminus(self):
        p = FourVector(1.0, 0.0, 0.0, 1.5)
        with pytest.raises(ValueError):
            free_spinor(p)

    def test_vectorized_columns_match_scalar(self):
        for spin in ("up", "down"):
            p = random_onshell(RNG)
            u_ref = free_spinor(FourVector(p.t, p.x1, 0.0, p.x3), spin)
            u_vec = free_spinor_columns(np.array([p.t]),
                                        np.array([p.x1]),
                                        np.array([p.x3]), spin)[0]
            assert np.allclose(u_vec, np.real(u_ref), atol=1e-14)
            assert np.allclose(np.imag(u_ref), 0.0)


class TestDressedBispinor:
    def test_zero_field_identity(self):
        p = random_onshell(RNG)
        u = free_spinor(p)
        assert np.array_equal(dressed_bispinor(u, p.minus, 0.0), u)

    def test_lightfront_norm_invariant(self):
        # Vbar gamma_minus V = ubar gamma_minus u for 1000 random (p, A1)
        for _ in range(1000):
            p = random_onshell(RNG, p_scale=2.0)
            a1 = RNG.normal(scale=5.0)
            u = free_spinor(p, RNG.choice(["up", "down"]))
            v = dressed_bispinor(u, p.minus, a1)
            assert lightfront_density(v) == pytest.approx(
                2.0 * p.minus, rel=1e-12)

    def test_matches_dense_matrix_oracle(self):
        # independent dense construction of [1 - gm g1 a/(2 p_minus)]
        p = FourVector(5.0 / 3.0, 0.0, 0.0, -4.0 / 3.0)
        e_a1 = 3.0
        u = free_spinor(p)
        g_minus = alg.GAMMA0 - alg.GAMMA3
        mat = np.eye(4, dtype=complex) - (e_a1 / (2.0 * p.minus)) \
            * (g_minus @ alg.GAMMA1)
        assert np.allclose(dressed_bispinor(u, p.minus, e_a1), mat @ u,
                           atol=1e-15)

    def test_rejects_nonpositive_pminus(self):
        u = free_spinor(FourVector(1.0, 0.0, 0.0, 0.0))
        with pytest.raises(ValueError):
            dressed_bispinor(u, 0.0, 1.0)


class TestLightfrontDensity:
    def test_zero(self):
        assert lightfront_density(np.zeros(4, dtype=complex)) == 0.0

    def test_positive_and_real_random(self):
        for _ in range(1000):
            psi = RNG.normal(size=4) + 1j * RNG.normal(size=4)
            val = lightfront_density(psi)
            oracle = np.conjugate(psi) @ alg.GAMMA0 @ alg.GAMMA_MINUS @ psi
            assert abs(np.imag(oracle)) < 1e-14
            assert val >= 0.0
            assert val == pytest.approx(np.real(oracle), rel=1e-12, abs=1e-13)

    def test_quadratic_scaling(self):
        psi = RNG.normal(size=4) + 1j * RNG.normal(size=4)
        alpha = 0.3 - 1.7j
        assert lightfront_density(alpha * psi) == pytest.approx(
            abs(alpha) ** 2 * lightfront_density(psi), rel=1e-12)

    def test_stacked_slices(self):
        stack = RNG.normal(size=(7, 4)) + 1j * RNG.normal(size=(7, 4))
        vals = lightfront_density(stack)
        assert vals.shape == (7,)
        for i in range(7):
            assert vals[i] == pytest.approx(lightfront_density(stack[i]),
                                            rel=1e-12)
