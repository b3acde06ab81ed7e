import math

import numpy as np
import pytest

from graffiti_lattice import (
    CouplingParams,
    bound_report,
    classify_regime,
    constrained_logz_per_site,
    epsilon0,
    incoherent_bond_bounds,
    peierls_bound,
    piy_epsilon,
    sparse_report,
)
from graffiti_lattice.bounds import (
    LAMBDA2_REPORTED,
    LAMBDA2_SAFE,
    PC_DIAMOND_LOWER,
    _delta_alpha,
    _delta_gamma,
    write_bounds_csv,
)


def piy_trapezoid_oracle(j, k, lam):
    """Independent second quadrature: plain trapezoid on a fine uniform grid."""
    upper = (4 * j + k) / (2 * lam) + 40 / math.sqrt(lam)
    q = np.linspace(1e-12, upper, 400000)
    base = np.exp(-lam * q * q) * np.sinh(k * q)
    num = np.trapezoid(base * np.sinh(j * q) ** 4, q)
    den = np.trapezoid(base * np.sinh(j * q) ** 3, q)
    return 2.0 * num / den


class TestConstrainedLogZ:
    def test_decoupled_patterns_coincide(self):
        params = CouplingParams(j=0.0, k=0.0, alpha=0.7, lam=1.3)
        assert constrained_logz_per_site("++", params) == pytest.approx(
            constrained_logz_per_site("+-", params), abs=1e-15
        )

    def test_coherent_minus_void_gap(self):
        params = CouplingParams(j=1.2, k=0.7, alpha=-0.4, lam=0.9)
        gap = constrained_logz_per_site("++", params) - constrained_logz_per_site(
            "00", params
        )
        expected = params.alpha + (4 * params.j + params.k) ** 2 / (4 * params.lam)
        assert gap == pytest.approx(expected, abs=1e-12)

    def test_unit_coherent_value(self):
        params = CouplingParams(j=1.0, k=1.0, alpha=0.0, lam=1.0)
        assert constrained_logz_per_site("++", params) == pytest.approx(
            0.5 * math.log(math.pi) + 25.0 / 4.0, abs=1e-12
        )

    def test_pattern_aliases(self):
        params = CouplingParams(j=0.5, k=0.3, alpha=0.1, lam=1.0)
        assert constrained_logz_per_site("--", params) == constrained_logz_per_site(
            "++", params
        )
        assert constrained_logz_per_site("0-", params) == constrained_logz_per_site(
            "+0", params
        )

    def test_unknown_pattern(self):
        with pytest.raises(ValueError):
            constrained_logz_per_site("xx", CouplingParams(1, 1, 0, 1))


class TestIncoherentBounds:
    def test_unit_point_pm_value(self):
        params = CouplingParams(j=1.0, k=1.0, alpha=0.0, lam=1.0)
        _, bpm, _, _ = incoherent_bond_bounds(params)
        assert bpm == pytest.approx(math.exp(-2.0), abs=1e-15)

    def test_two_path_consistency_randomized(self):
        rng = np.random.default_rng(2024)
        for _ in range(100):
            params = CouplingParams(
                j=rng.uniform(0.05, 4.0),
                k=rng.uniform(0.05, 4.0),
                alpha=rng.uniform(-3.0, 3.0),
                lam=rng.uniform(0.2, 4.0),
            )
            b00, bpm, bp0, eps = incoherent_bond_bounds(params)
            ref = constrained_logz_per_site("++", params)
            for bound, pattern in ((b00, "00"), (bpm, "+-"), (bp0, "+0")):
                path2 = math.exp(
                    (constrained_logz_per_site(pattern, params) - ref) / 2.0
                )
                assert bound == pytest.approx(path2, rel=1e-12)
            assert eps == pytest.approx(b00 + 2 * bpm + 4 * bp0, rel=1e-15)

    def test_epsilon_monotone_in_coupling(self):
        lam, alpha = 1.0, 0.0
        js = np.logspace(-1, 1, 25)
        eps = [
            incoherent_bond_bounds(CouplingParams(j=j, k=j, alpha=alpha, lam=lam))[3]
            for j in js
        ]
        assert all(e2 < e1 for e1, e2 in zip(eps, eps[1:]))
        assert eps[-1] < 1e-10


class TestPeierls:
    def test_zero_epsilon(self):
        assert peierls_bound(0.0) == 0.0

    def test_half_matches_brute_force(self):
        x = 0.5
        lengths = np.arange(4, 2000001, 2, dtype=np.float64)
        brute = float(2.0 * np.sum(lengths**2 * x**lengths))
        assert peierls_bound(x / LAMBDA2_REPORTED, lambda2=LAMBDA2_REPORTED) == (
            pytest.approx(brute, rel=1e-12)
        )

    def test_divergent_series(self):
        assert peierls_bound(1.0 / LAMBDA2_REPORTED) == math.inf
        assert peierls_bound(10.0) == math.inf

    def test_negative_epsilon_rejected(self):
        with pytest.raises(ValueError):
            peierls_bound(-0.1)


class TestPiyEpsilon:
    def test_unit_point_against_trapezoid_oracle(self):
        val = piy_epsilon(1.0, 1.0, 1.0)
        assert val == pytest.approx(piy_trapezoid_oracle(1.0, 1.0, 1.0), rel=1e-6)

    def test_scale_invariance(self):
        base = piy_epsilon(0.8, 1.4, 1.1)
        for s in (0.3, 2.0, 7.0):
            scaled = piy_epsilon(0.8 / s, 1.4 / s, 1.1 / (s * s))
            assert scaled == pytest.approx(base, rel=1e-9)

    def test_small_coupling_linear_scaling(self):
        # piy_epsilon(J)/J approaches a constant as J -> 0
        ratios = [piy_epsilon(j, 1.0, 1.0) / j for j in (1e-2, 1e-3, 1e-4)]
        assert ratios[1] == pytest.approx(ratios[2], rel=1e-3)
        assert ratios[0] == pytest.approx(ratios[2], rel=0.05)

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            piy_epsilon(0.0, 1.0, 1.0)


class TestEpsilon0:
    def test_value(self):
        assert epsilon0() == pytest.approx(math.sqrt(2) - 1, abs=1e-12)

    def test_defining_relation(self):
        e0 = epsilon0()
        assert e0 + e0 * e0 / 2 - 0.5 == pytest.approx(0.0, abs=1e-15)

    def test_bracket(self):
        assert 0 < epsilon0() < 0.5


class TestSparse:
    def test_delta_gamma_vertex(self):
        params = CouplingParams(j=1.0, k=1.0, alpha=0.0, lam=1.0)
        assert _delta_gamma(2.5, params) == pytest.approx(0.5, abs=1e-15)

    def test_delta_gamma_requires_admissible_gamma(self):
        params = CouplingParams(j=1.0, k=1.0, alpha=0.0, lam=1.0)
        with pytest.raises(ValueError):
            _delta_gamma(1.0, params)

    def test_very_negative_alpha_limit(self):
        # alpha -> -inf at fixed gamma: delta_alpha -> 5 delta_gamma
        gamma = 4.0
        params = CouplingParams(j=1.0, k=1.0, alpha=-500.0, lam=1.0)
        assert _delta_alpha(gamma, params) == pytest.approx(
            5 * _delta_gamma(gamma, params), abs=1e-15
        )

    def test_report_fields(self):
        params = CouplingParams(j=1.0, k=1.0, alpha=-10.0, lam=1.0)
        rep = sparse_report(params)
        assert rep.pc_diamond_lower == PC_DIAMOND_LOWER
        assert rep.gamma >= (4 * params.j + params.k) / (2 * params.lam)
        assert rep.satisfied == (rep.delta_alpha < PC_DIAMOND_LOWER)

    def test_certificate_requires_very_negative_alpha(self):
        # with J=K=lam=1, the occupation term alone exceeds 0.92 for any
        # admissible gamma at alpha = -10, so the certificate cannot fire
        # there; it does fire once alpha is pushed far enough down.
        assert not sparse_report(CouplingParams(1.0, 1.0, -10.0, 1.0)).satisfied
        assert sparse_report(CouplingParams(1.0, 1.0, -30.0, 1.0)).satisfied

    def test_explicit_gamma_respected(self):
        params = CouplingParams(j=1.0, k=1.0, alpha=-30.0, lam=1.0)
        rep = sparse_report(params, gamma=6.0)
        assert rep.gamma == 6.0
        assert rep.delta_alpha == pytest.approx(_delta_alpha(6.0, params))


class TestClassification:
    def test_strong_coupling_ordered(self):
        assert classify_regime(CouplingParams(5.0, 5.0, 0.0, 1.0)) == "proven_ordered"

    def test_weak_coupling_unique(self):
        assert (
            classify_regime(CouplingParams(0.01, 0.01, 0.0, 1.0))
            == "proven_unique_hightemp"
        )

    def test_sparse_unique(self):
        assert (
            classify_regime(CouplingParams(1.0, 1.0, -30.0, 1.0))
            == "proven_unique_sparse"
        )

    def test_intermediate_unresolved(self):
        assert classify_regime(CouplingParams(1.0, 1.0, 0.0, 1.0)) == "unresolved"

    def test_soundness_no_double_claims(self):
        # wherever the ordered certificate fires, neither uniqueness
        # certificate may fire (the regimes are provably disjoint)
        rng = np.random.default_rng(7)
        checked = 0
        for _ in range(2500):
            params = CouplingParams(
                j=rng.uniform(0.01, 6.0),
                k=rng.uniform(0.01, 6.0),
                alpha=rng.uniform(-5.0, 3.0),
                lam=rng.uniform(0.1, 5.0),
            )
            _, _, _, eps = incoherent_bond_bounds(params)
            ordered = peierls_bound(eps, lambda2=LAMBDA2_SAFE) < 0.5
            if not ordered:
                continue
            checked += 1
            assert piy_epsilon(params.j, params.k, params.lam) >= epsilon0()
            assert not sparse_report(params).satisfied
        assert checked > 50  # the sweep must actually exercise the ordered cell

    def test_report_consistency(self):
        params = CouplingParams(5.0, 5.0, 0.0, 1.0)
        rep = bound_report(params)
        assert rep.lambda2 == LAMBDA2_REPORTED
        assert rep.classification == "proven_ordered"
        assert rep.peierls_total < 0.5
        assert set(rep.logz_per_site) == {"00", "++", "+-", "+0"}

    def test_csv_export(self, tmp_path):
        points = [CouplingParams(5.0, 5.0, 0.0, 1.0), CouplingParams(1.0, 1.0, 0.0, 1.0)]
        path = write_bounds_csv(points, tmp_path / "bounds.csv")
        lines = open(path).read().splitlines()
        assert lines[0].startswith("J,K,lambda,alpha,")
        assert lines[1].endswith("proven_ordered")
        assert lines[2].endswith("unresolved")
