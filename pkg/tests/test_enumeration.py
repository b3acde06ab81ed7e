import math

import numpy as np
import pytest
from scipy import integrate

from graffiti_lattice import ChainSpec, CouplingParams, Lattice, compare_to_oracle
from graffiti_lattice.enumeration import (
    CapacityError,
    all_eta_configs,
    encode_eta,
    exact_eta_marginal,
)


def quadrature_log_weight(eta, lattice, params):
    """Independent oracle: integrate the joint density over g numerically.

    The g integral factorizes per site: int exp(h_i g - lam g^2) dg, with
    h_i depending only on eta. Computed with adaptive quadrature, no use
    of the closed-form Gaussian result.
    """
    eta = np.asarray(eta, dtype=float)
    h = params.j * lattice.neighbor_sum(eta) + params.k * eta
    log_w = params.alpha * float(np.sum(eta**2))
    for hi in h:
        val, _ = integrate.quad(
            lambda g: math.exp(hi * g - params.lam * g * g),
            -40.0,
            40.0,
            epsabs=0.0,
            epsrel=1e-12,
            limit=200,
        )
        log_w += math.log(val)
    return log_w


class TestEnumerationTable:
    def test_canonical_order(self):
        configs = all_eta_configs(2)
        assert configs.shape == (9, 2)
        assert list(configs[0]) == [-1, -1]
        assert list(configs[-1]) == [1, 1]
        assert np.array_equal(encode_eta(configs), np.arange(9))

    def test_capacity_error(self):
        with pytest.raises(CapacityError):
            all_eta_configs(16)  # 3^16 > 10^6

    def test_sums_to_one(self, torus3):
        params = CouplingParams(j=0.5, k=0.5, alpha=0.3, lam=1.0)
        probs = exact_eta_marginal(torus3, params)
        assert probs.shape == (3**9,)
        assert probs.sum() == pytest.approx(1.0, abs=1e-12)

    def test_decoupled_uniform(self, torus3):
        params = CouplingParams(j=0.0, k=0.0, alpha=0.0, lam=1.0)
        probs = exact_eta_marginal(torus3, params)
        assert np.allclose(probs, 1.0 / 3**9, rtol=1e-12)

    def test_decoupled_product_measure(self, torus3):
        # J = K = 0: P factorizes with per-site weights (e^a, 1, e^a)
        alpha = 0.8
        params = CouplingParams(j=0.0, k=0.0, alpha=alpha, lam=1.0)
        probs = exact_eta_marginal(torus3, params)
        site = np.array([math.exp(alpha), 1.0, math.exp(alpha)])
        site /= site.sum()
        configs = all_eta_configs(9)
        expected = np.prod(site[configs + 1], axis=1)
        assert np.allclose(probs, expected, rtol=1e-12)

    def test_flip_symmetry_exact(self, torus3):
        params = CouplingParams(j=0.5, k=0.5, alpha=-0.2, lam=1.0)
        probs = exact_eta_marginal(torus3, params)
        configs = all_eta_configs(9)
        flipped_index = encode_eta(-configs)
        assert np.array_equal(probs, probs[flipped_index])

    def test_matches_quadrature_oracle(self, torus3):
        params = CouplingParams(j=0.5, k=0.5, alpha=0.0, lam=1.0)
        probs = exact_eta_marginal(torus3, params)
        rng = np.random.default_rng(0)
        reference = np.zeros(9, dtype=np.int8)  # eta = 0 everywhere
        ref_logw = quadrature_log_weight(reference, torus3, params)
        ref_prob = probs[encode_eta(reference)]
        for _ in range(3):
            eta = rng.integers(-1, 2, 9).astype(np.int8)
            logw = quadrature_log_weight(eta, torus3, params)
            ratio_quad = math.exp(logw - ref_logw)
            ratio_table = probs[encode_eta(eta)] / ref_prob
            assert ratio_table == pytest.approx(ratio_quad, rel=1e-8)


class TestOracleComparison:
    def test_tv_in_unit_interval(self, torus3):
        params = CouplingParams(j=0.5, k=0.5, alpha=0.0, lam=1.0)
        spec = ChainSpec(seed=3, burn_in_sweeps=50, sweeps=20000)
        tv = compare_to_oracle(torus3, params, spec)
        assert 0.0 <= tv <= 1.0

    def test_tv_shrinks_with_samples(self, torus3):
        params = CouplingParams(j=0.5, k=0.5, alpha=0.0, lam=1.0)
        small = ChainSpec(seed=3, burn_in_sweeps=50, sweeps=5000)
        large = ChainSpec(seed=3, burn_in_sweeps=50, sweeps=200000)
        tv_small = compare_to_oracle(torus3, params, small)
        tv_large = compare_to_oracle(torus3, params, large)
        assert tv_large < tv_small

    def test_decoupled_exact(self):
        # on a tiny decoupled lattice the empirical law converges fast
        lattice = Lattice.from_edges(2, [(0, 1)])
        params = CouplingParams(j=0.0, k=0.0, alpha=0.0, lam=1.0)
        spec = ChainSpec(seed=4, burn_in_sweeps=5, sweeps=100000)
        assert compare_to_oracle(lattice, params, spec) < 0.01
