"""Agent-based model: multi-occupancy agents tagging, moving, graffiti decay.

Each step, every agent (in fixed index order, with immediate graffiti
writes) first tags its current site with one unit of own-color graffiti
with probability p_m (0.1 on sites without opposite-color graffiti, 1.0
otherwise), then moves to one of its 4 torus neighbors with probability
proportional to exp(-g_opp), where g_opp is the opposite color's graffiti
count at the target. After all agents have acted, every graffiti unit at
every site is removed independently with probability p_g (binomial
thinning; a deterministic multiplicative mode is available).

The inner loop is JIT-compiled; runs are deterministic given the seed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit


@dataclass(frozen=True)
class AbmConfig:
    side: int = 100
    n_red: int = 100_000
    n_blue: int = 100_000
    p_m_unmarked: float = 0.1
    p_m_marked: float = 1.0
    p_g: float = 0.25
    steps: int = 1000
    seed: int = 0
    snapshot_times: tuple = ()
    decay: str = "binomial"  # binomial | multiplicative

    def __post_init__(self):
        if self.side < 3:
            raise ValueError("side must be >= 3")
        for p in (self.p_m_unmarked, self.p_m_marked, self.p_g):
            if not 0.0 <= p <= 1.0:
                raise ValueError("probabilities must lie in [0, 1]")
        if self.decay not in ("binomial", "multiplicative"):
            raise ValueError("unknown decay mode %r" % (self.decay,))


@dataclass
class AbmState:
    positions: np.ndarray  # flat site index per agent (int32)
    colors: np.ndarray  # +1 red, -1 blue
    red_graffiti: np.ndarray  # flat per-site unit counts (int32)
    blue_graffiti: np.ndarray
    side: int
    time: int = 0

    def agent_count_grid(self):
        """Net agent color count per site (red minus blue), as an (L, L) grid."""
        v = self.side * self.side
        red = np.bincount(self.positions[self.colors > 0], minlength=v)
        blue = np.bincount(self.positions[self.colors < 0], minlength=v)
        return (red - blue).reshape(self.side, self.side)

    def graffiti_grid(self):
        """Net graffiti count per site (red minus blue), as an (L, L) grid."""
        return (self.red_graffiti - self.blue_graffiti).reshape(self.side, self.side)


@njit(cache=True)
def _seed_rng(seed):
    np.random.seed(seed)


# lookup table for exp(-d) over the capped graffiti-count differences
_EXP_TABLE = np.exp(-np.arange(61, dtype=np.float64))


def _neighbor_table(side):
    """(side*side, 4) flat indices of the up/down/left/right torus neighbors."""
    rows, cols = np.divmod(np.arange(side * side), side)
    return np.stack(
        [
            ((rows - 1) % side) * side + cols,
            ((rows + 1) % side) * side + cols,
            rows * side + (cols - 1) % side,
            rows * side + (cols + 1) % side,
        ],
        axis=1,
    ).astype(np.int32)


@njit(cache=True)
def _abm_step(pos, colors, red_g, blue_g, side, p_unmarked, p_marked, p_g,
              multiplicative_decay, exp_table, nbr):
    n_agents = pos.shape[0]
    for a in range(n_agents):
        site = pos[a]
        red = colors[a] > 0
        if red:
            opp_here = blue_g[site]
        else:
            opp_here = red_g[site]
        p_m = p_marked if opp_here > 0 else p_unmarked
        if p_m >= 1.0 or np.random.random() < p_m:
            if red:
                red_g[site] += 1
            else:
                blue_g[site] += 1
        # move to a neighbor, favoring the least opposite-color graffiti
        up = nbr[site, 0]
        down = nbr[site, 1]
        left = nbr[site, 2]
        right = nbr[site, 3]
        if red:
            g0, g1, g2, g3 = blue_g[up], blue_g[down], blue_g[left], blue_g[right]
        else:
            g0, g1, g2, g3 = red_g[up], red_g[down], red_g[left], red_g[right]
        gmin = min(min(g0, g1), min(g2, g3))
        if g0 == gmin and g1 == gmin and g2 == gmin and g3 == gmin:
            u4 = np.random.random() * 4.0
            if u4 < 1.0:
                pos[a] = up
            elif u4 < 2.0:
                pos[a] = down
            elif u4 < 3.0:
                pos[a] = left
            else:
                pos[a] = right
            continue
        w0 = exp_table[min(g0 - gmin, 60)]
        w1 = exp_table[min(g1 - gmin, 60)]
        w2 = exp_table[min(g2 - gmin, 60)]
        w3 = exp_table[min(g3 - gmin, 60)]
        u = np.random.random() * (w0 + w1 + w2 + w3)
        if u < w0:
            pos[a] = up
        elif u < w0 + w1:
            pos[a] = down
        elif u < w0 + w1 + w2:
            pos[a] = left
        else:
            pos[a] = right
    if p_g > 0.0:
        keep = 1.0 - p_g
        for site in range(side * side):
            if red_g[site] > 0:
                if multiplicative_decay:
                    red_g[site] = int(red_g[site] * keep)
                else:
                    red_g[site] = np.random.binomial(red_g[site], keep)
            if blue_g[site] > 0:
                if multiplicative_decay:
                    blue_g[site] = int(blue_g[site] * keep)
                else:
                    blue_g[site] = np.random.binomial(blue_g[site], keep)


def abm_init(config):
    """Uniform random placement (overlaps allowed), no graffiti at t=0."""
    _seed_rng(config.seed)
    v = config.side * config.side
    rng = np.random.default_rng(config.seed)
    n = config.n_red + config.n_blue
    positions = rng.integers(0, v, size=n).astype(np.int32)
    colors = np.concatenate(
        [np.ones(config.n_red, dtype=np.int8), -np.ones(config.n_blue, dtype=np.int8)]
    )
    return AbmState(
        positions=positions,
        colors=colors,
        red_graffiti=np.zeros(v, dtype=np.int32),
        blue_graffiti=np.zeros(v, dtype=np.int32),
        side=config.side,
        time=0,
    )


_NBR_CACHE = {}


def abm_step(state, config):
    """Advance one step in place; agents processed in fixed index order."""
    nbr = _NBR_CACHE.get(state.side)
    if nbr is None:
        nbr = _NBR_CACHE[state.side] = _neighbor_table(state.side)
    _abm_step(
        state.positions,
        state.colors,
        state.red_graffiti,
        state.blue_graffiti,
        state.side,
        config.p_m_unmarked,
        config.p_m_marked,
        config.p_g,
        config.decay == "multiplicative",
        _EXP_TABLE,
        nbr,
    )
    state.time += 1
    return state


def segregation_index(state):
    """Adjacency-averaged product of per-site color scores, in [-1, 1].

    c_i = (red_i - blue_i) / (red_i + blue_i) over occupied sites; the index
    averages c_i * c_j over torus-adjacent pairs with both sites occupied.
    """
    side = state.side
    v = side * side
    red = np.bincount(state.positions[state.colors > 0], minlength=v).reshape(side, side)
    blue = np.bincount(state.positions[state.colors < 0], minlength=v).reshape(side, side)
    total = red + blue
    occupied = total > 0
    c = np.zeros((side, side))
    c[occupied] = (red[occupied] - blue[occupied]) / total[occupied]
    num = 0.0
    den = 0
    for axis in (0, 1):
        occ_shift = np.roll(occupied, -1, axis=axis)
        both = occupied & occ_shift
        num += float(np.sum(c * np.roll(c, -1, axis=axis) * both))
        den += int(np.sum(both))
    if den == 0:
        return 0.0
    return num / den


def abm_run(config):
    """Full run: returns (index time series, state, snapshots dict at requested times)."""
    state = abm_init(config)
    snap_times = set(config.snapshot_times)
    snapshots = {}
    if 0 in snap_times:
        snapshots[0] = (state.agent_count_grid(), state.graffiti_grid())
    indices = np.empty(config.steps)
    for t in range(1, config.steps + 1):
        abm_step(state, config)
        indices[t - 1] = segregation_index(state)
        if t in snap_times:
            snapshots[t] = (state.agent_count_grid(), state.graffiti_grid())
    return indices, state, snapshots


def write_index_csv(indices, path):
    with open(path, "w") as fh:
        fh.write("step,segregation_index\n")
        for t, v in enumerate(indices, start=1):
            fh.write("%d,%.12g\n" % (t, v))
    return path


def write_snapshot_csvs(snapshots, prefix):
    """Two CSV grids per snapshot: net agent color and net graffiti per site."""
    paths = []
    for t in sorted(snapshots):
        agents, graffiti = snapshots[t]
        for name, grid in (("agents", agents), ("graffiti", graffiti)):
            path = "%s_t%06d_%s.csv" % (prefix, t, name)
            np.savetxt(path, grid, fmt="%d", delimiter=",")
            paths.append(path)
    return paths
