"""Exhaustive enumeration oracle for small lattices.

Integrating out the Gaussian graffiti fields gives the agent marginal

    P(eta) ~ exp(alpha * sum_i eta_i^2) * prod_i exp(h_i^2 / (4 lam)),

with h_i = J * sum_{j~i} eta_j + K * eta_i. On lattices with 3^V <= 10^6
states this can be tabulated exactly and used as a ground truth for the
sampler.
"""

from __future__ import annotations

import numpy as np
from scipy.special import logsumexp

from .sampler import run_batched_eta_samples

MAX_STATES = 1_000_000


class CapacityError(ValueError):
    """Lattice too large for exhaustive enumeration."""


def all_eta_configs(num_sites):
    """All 3^V agent configurations in canonical order (base-3, site-major).

    Configuration index = sum_i (eta_i + 1) * 3^(V - 1 - i).
    """
    n_states = 3**num_sites
    if n_states > MAX_STATES:
        raise CapacityError(
            "3^%d = %d states exceeds the %d enumeration cap"
            % (num_sites, n_states, MAX_STATES)
        )
    powers = 3 ** np.arange(num_sites - 1, -1, -1, dtype=np.int64)
    digits = (np.arange(n_states, dtype=np.int64)[:, None] // powers) % 3
    return (digits - 1).astype(np.int8)


def encode_eta(eta):
    """Canonical index of eta configurations; supports a leading batch dimension."""
    eta = np.asarray(eta, dtype=np.int64)
    v = eta.shape[-1]
    powers = 3 ** np.arange(v - 1, -1, -1, dtype=np.int64)
    return (eta + 1) @ powers


def exact_eta_log_weights(lattice, params):
    """Unnormalized log-probabilities of all eta configurations in canonical order."""
    etas = all_eta_configs(lattice.num_sites).astype(np.float64)
    h = params.j * lattice.neighbor_sum(etas) + params.k * etas
    return params.alpha * np.sum(etas * etas, axis=-1) + np.sum(
        h * h / (4.0 * params.lam), axis=-1
    )


def exact_eta_marginal(lattice, params):
    """Normalized probability vector over all eta configurations."""
    logw = exact_eta_log_weights(lattice, params)
    return np.exp(logw - logsumexp(logw))


def compare_to_oracle(lattice, params, spec, num_chains=256):
    """Total-variation distance between sampled eta frequencies and the exact table.

    Draws spec.sweeps // spec.thinning configurations from independent chains
    (vectorized; seeds derived from spec.seed).
    """
    exact = exact_eta_marginal(lattice, params)
    samples = run_batched_eta_samples(lattice, params, spec, num_chains=num_chains)
    counts = np.bincount(encode_eta(samples), minlength=len(exact))
    empirical = counts / counts.sum()
    return 0.5 * float(np.abs(empirical - exact).sum())
