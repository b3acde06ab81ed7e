"""Lattice geometry, spin configurations, couplings, energy, and observables.

Site variables are pairs (eta_i, g_i): a three-valued agent spin
eta in {-1, 0, +1} (blue / vacant / red) and a real graffiti field g.
The energy of a configuration is

    -H = J * sum_{ordered (i,j)} eta_i g_j + K * sum_i eta_i g_i
         + alpha * sum_i eta_i^2 - lambda * sum_i g_i^2

where the first sum runs over the orientation-complete directed edge list,
i.e. each undirected bond contributes both eta_i g_j and eta_j g_i.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import sparse


class ConfigurationError(ValueError):
    """Raised when a configuration does not match its lattice or is invalid."""


@dataclass(frozen=True)
class CouplingParams:
    """The four couplings: neighbor (j), on-site (k), proclivity (alpha), suppression (lam)."""

    j: float
    k: float
    alpha: float
    lam: float

    def __post_init__(self):
        vals = (self.j, self.k, self.alpha, self.lam)
        if not all(np.isfinite(v) for v in vals):
            raise ValueError("couplings must be finite, got %r" % (vals,))
        if self.j < 0 or self.k < 0:
            raise ValueError("j and k must be non-negative")
        if self.lam <= 0:
            raise ValueError("lam must be positive (stability)")


class Lattice:
    """Finite graph with an orientation-complete directed edge list.

    Use :meth:`torus2d` for the standard L x L square torus (L >= 3) or
    :meth:`from_edges` for an arbitrary simple graph given as undirected bonds.
    """

    def __init__(self, num_sites, directed_edges, kind, side=None):
        directed_edges = np.asarray(directed_edges, dtype=np.int64)
        if directed_edges.ndim != 2 or directed_edges.shape[1] != 2:
            raise ValueError("directed_edges must have shape (E, 2)")
        if np.any(directed_edges[:, 0] == directed_edges[:, 1]):
            raise ValueError("self-edges are not allowed (on-site term is separate)")
        if directed_edges.size and (
            directed_edges.min() < 0 or directed_edges.max() >= num_sites
        ):
            raise ValueError("edge endpoints out of range")
        fwd = {(int(a), int(b)) for a, b in directed_edges}
        if any((b, a) not in fwd for a, b in fwd):
            raise ValueError("edge list must contain both orientations of every bond")

        self.num_sites = int(num_sites)
        self.directed_edges = directed_edges
        self.kind = kind
        self.side = side
        deg = np.zeros(self.num_sites, dtype=np.int64)
        np.add.at(deg, directed_edges[:, 0], 1)
        self.site_degree = deg

        self._adj = sparse.csr_matrix(
            (
                np.ones(len(directed_edges)),
                (directed_edges[:, 0], directed_edges[:, 1]),
            ),
            shape=(self.num_sites, self.num_sites),
        )
        # regular-degree lattices get a gather table, which is much faster
        # than a sparse matvec for batched updates
        self._nbr = None
        if deg.size and np.all(deg == deg[0]) and deg[0] > 0:
            order = np.lexsort((directed_edges[:, 1], directed_edges[:, 0]))
            self._nbr = directed_edges[order, 1].reshape(self.num_sites, deg[0])

    @classmethod
    def torus2d(cls, side):
        """Standard square torus of side L >= 3 with 4 nearest neighbors per site."""
        if side < 3:
            raise ValueError("torus2d requires side >= 3")
        idx = np.arange(side * side).reshape(side, side)
        edges = []
        for shift_axis in (0, 1):
            nb = np.roll(idx, -1, axis=shift_axis)
            edges.append(np.column_stack([idx.ravel(), nb.ravel()]))
            edges.append(np.column_stack([nb.ravel(), idx.ravel()]))
        return cls(side * side, np.concatenate(edges), kind="torus2d", side=side)

    @classmethod
    def from_edges(cls, num_sites, bonds):
        """Explicit lattice from a list of undirected bonds (i, j)."""
        bonds = np.asarray(bonds, dtype=np.int64)
        directed = np.concatenate([bonds, bonds[:, ::-1]])
        return cls(num_sites, directed, kind="explicit")

    def neighbor_sum(self, x):
        """For each site i, sum of x over neighbors j ~ i. Supports batch dims (..., V)."""
        x = np.asarray(x)
        if self._nbr is not None:
            return x[..., self._nbr].sum(axis=-1)
        flat = x.reshape(-1, self.num_sites)
        return np.asarray((self._adj @ flat.T).T).reshape(x.shape)


@dataclass
class SpinConfig:
    """Per-site agent spins eta in {-1,0,+1} and real graffiti field g."""

    eta: np.ndarray
    g: np.ndarray

    def __post_init__(self):
        self.eta = np.asarray(self.eta, dtype=np.int8)
        self.g = np.asarray(self.g, dtype=np.float64)
        if self.eta.shape != self.g.shape or self.eta.ndim != 1:
            raise ConfigurationError("eta and g must be 1-d arrays of equal length")
        if np.any(np.abs(self.eta) > 1):
            raise ConfigurationError("eta values must lie in {-1, 0, +1}")
        if not np.all(np.isfinite(self.g)):
            raise ConfigurationError("g values must be finite")

    @classmethod
    def zeros(cls, num_sites):
        return cls(np.zeros(num_sites, dtype=np.int8), np.zeros(num_sites))

    def copy(self):
        return SpinConfig(self.eta.copy(), self.g.copy())


@dataclass
class Observables:
    """Macroscopic summary of a configuration."""

    b: float  # occupied fraction
    n: float  # red excess fraction
    G: float  # mean graffiti
    energy_per_site: float | None = None


def _check_sizes(config, lattice):
    if config.eta.shape[0] != lattice.num_sites:
        raise ConfigurationError(
            "configuration has %d sites, lattice has %d"
            % (config.eta.shape[0], lattice.num_sites)
        )


def total_energy(config, lattice, params):
    """Energy H of a configuration; the bond sum runs over both orientations."""
    _check_sizes(config, lattice)
    eta = config.eta.astype(np.float64)
    g = config.g
    bond = eta * lattice.neighbor_sum(g)
    onsite = eta * g
    terms = params.j * bond + params.k * onsite + params.alpha * eta * eta - params.lam * g * g
    if lattice.num_sites >= 10_000:
        # extended-precision accumulation bounds round-off on big lattices
        return -float(np.sum(terms, dtype=np.longdouble))
    return -float(np.sum(terms))


def agent_fields(config, lattice, params):
    """h_i = J * sum_{j~i} eta_j + K * eta_i for every site (coefficient of g_i in -H)."""
    _check_sizes(config, lattice)
    eta = config.eta.astype(np.float64)
    return params.j * lattice.neighbor_sum(eta) + params.k * eta


def agent_field(config, lattice, params, i):
    """h_i at one site; g_i | eta is Normal(h_i / (2 lam), 1 / (2 lam))."""
    return float(agent_fields(config, lattice, params)[i])


def graffiti_fields(config, lattice, params):
    """f_i = J * sum_{j~i} g_j + K * g_i for every site (coefficient of eta_i in -H)."""
    _check_sizes(config, lattice)
    return params.j * lattice.neighbor_sum(config.g) + params.k * config.g


def graffiti_field(config, lattice, params, i):
    """f_i at one site; eta_i | g has weights exp(f_i * eta + alpha * eta^2)."""
    return float(graffiti_fields(config, lattice, params)[i])


def measure(config, lattice, params=None):
    """Exact observables of a configuration; energy only if params are supplied."""
    _check_sizes(config, lattice)
    v = lattice.num_sites
    n_plus = int(np.sum(config.eta == 1))
    n_minus = int(np.sum(config.eta == -1))
    energy = total_energy(config, lattice, params) / v if params is not None else None
    return Observables(
        b=(n_plus + n_minus) / v,
        n=(n_plus - n_minus) / v,
        G=float(np.mean(config.g)),
        energy_per_site=energy,
    )


_ETA_CHARS = {1: "+", -1: "-", 0: "0"}


def write_snapshot(config, lattice, params, seed, prefix):
    """Export a configuration: eta as a character grid, g as a row-major CSV.

    Writes ``<prefix>.eta.txt`` and ``<prefix>.g.csv``; both carry a header
    line recording L, couplings, and seed. Returns the two paths.
    """
    if lattice.kind != "torus2d":
        raise ValueError("snapshot export requires a torus2d lattice")
    side = lattice.side
    header = "# L=%d J=%.12g K=%.12g alpha=%.12g lambda=%.12g seed=%s" % (
        side,
        params.j,
        params.k,
        params.alpha,
        params.lam,
        seed,
    )
    eta_path = str(prefix) + ".eta.txt"
    g_path = str(prefix) + ".g.csv"
    grid = config.eta.reshape(side, side)
    with open(eta_path, "w") as fh:
        fh.write(header + "\n")
        for row in grid:
            fh.write("".join(_ETA_CHARS[int(v)] for v in row) + "\n")
    with open(g_path, "w") as fh:
        fh.write(header + "\n")
        for row in config.g.reshape(side, side):
            fh.write(",".join("%.12g" % v for v in row) + "\n")
    return eta_path, g_path
