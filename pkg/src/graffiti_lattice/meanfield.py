"""Mean-field (complete-graph) free energy: minimization and phase structure.

The thermodynamics reduces to minimizing

    Phi(b, n, G) = -J n G - alpha b + lam G^2
                   + ((b+n)/2) log((b+n)/2) + ((b-n)/2) log((b-n)/2)
                   + (1-b) log(1-b)

over the occupied fraction b, red excess n, and mean graffiti G. Eliminating
G at its stationary value G = J n / (2 lam) leaves a two-variable problem
parameterized by mu = J^2 / (2 lam) and the ambient occupation
b_R = 2 e^alpha / (1 + 2 e^alpha). The spontaneous branch appears at
mu_S = 1 / b_R for b_R >= 1/3 (continuous transition) and strictly earlier,
with a jump in n, for b_R < 1/3.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

_DOMAIN_EPS = 1e-12


class DomainError(ValueError):
    """Arguments outside 0 < b < 1, |n| < b."""


def alpha_of_ambient(b_r):
    """alpha such that the trivial solution sits at b = b_r: log(b_r / (2 (1 - b_r)))."""
    if not 0 < b_r < 1:
        raise DomainError("b_r must lie in (0, 1)")
    return math.log(b_r / (2.0 * (1.0 - b_r)))


def ambient_of_alpha(alpha):
    """Inverse of :func:`alpha_of_ambient`: b_r = 2 e^alpha / (1 + 2 e^alpha)."""
    return 2.0 * math.exp(alpha) / (1.0 + 2.0 * math.exp(alpha))


@dataclass(frozen=True)
class MFParams:
    """Reduced mean-field parameters (b_r, mu); mu = J^2 / (2 lam)."""

    b_r: float
    mu: float

    def __post_init__(self):
        if not 0 < self.b_r < 1:
            raise DomainError("b_r must lie in the open interval (0, 1)")
        if self.mu < 0:
            raise DomainError("mu must be non-negative")

    @property
    def alpha(self):
        return alpha_of_ambient(self.b_r)

    @classmethod
    def from_couplings(cls, j, alpha, lam):
        return cls(b_r=ambient_of_alpha(alpha), mu=j * j / (2.0 * lam))


@dataclass
class MFSolution:
    """Minimizer of the reduced free energy with diagnostics."""

    b: float
    n: float
    phi_value: float
    is_trivial: bool
    residuals: tuple
    theta: float
    G: float | None = None
    converged: bool = True


@dataclass
class TransitionReport:
    """Location and order of the transition along fixed b_r."""

    mu_T: float
    mu_S: float
    order: str  # 'continuous' | 'first_order'
    n_jump: float


def phi_full(b, n, G, j, alpha, lam):
    """Three-variable free energy; stationary in G at G = j n / (2 lam)."""
    _check_domain(b, n)
    ent = _entropy(b, n)
    return float(-j * n * G - alpha * b + lam * G * G + ent)


def phi_reduced(b, n, params):
    """Two-variable free energy with G eliminated; equals min over G of phi_full."""
    _check_domain(b, n)
    return float(_phi(b, n, params.b_r, params.mu))


def _check_domain(b, n):
    b = np.asarray(b)
    n = np.asarray(n)
    if np.any(b <= 0) or np.any(b >= 1) or np.any(np.abs(n) >= b):
        raise DomainError("need 0 < b < 1 and |n| < b")


def _entropy(b, n):
    bp = (b + n) / 2.0
    bm = (b - n) / 2.0
    return (
        _xlogx(bp) + _xlogx(bm) + _xlogx(1.0 - b)
    )


def _xlogx(x):
    x = np.asarray(x, dtype=np.float64)
    out = np.zeros_like(x)
    pos = x > 0
    out[pos] = x[pos] * np.log(x[pos])
    return out if out.ndim else float(out)


def _phi(b, n, b_r, mu, dtype=np.float64):
    """Reduced free energy, vectorized; no domain checks."""
    one = dtype(1.0)
    b = np.asarray(b, dtype=dtype)
    n = np.asarray(n, dtype=dtype)
    alpha = np.log(np.asarray(b_r, dtype=dtype) / (2 * (one - dtype(b_r))))
    bp = (b + n) / 2
    bm = (b - n) / 2
    val = (
        -dtype(mu) / 2 * n * n
        - alpha * b
        + bp * np.log(bp)
        + bm * np.log(bm)
        + (one - b) * np.log(one - b)
    )
    return val


def trivial_phi(params, dtype=np.float64):
    """Phi at the trivial point (b_r, 0) in closed form."""
    b_r = dtype(params.b_r)
    one = dtype(1.0)
    alpha = np.log(b_r / (2 * (one - b_r)))
    return -alpha * b_r + b_r * np.log(b_r / 2) + (one - b_r) * np.log(one - b_r)


def mf_residuals(b, n, params):
    """Residuals of the stationarity system.

    r1 = 4 e^{2 alpha} (1-b)^2 - (b^2 - n^2);  r2 = mu n - arctanh(n/b).
    """
    if b <= abs(n):
        raise DomainError("need |n| < b")
    e2a = (params.b_r / (2.0 * (1.0 - params.b_r))) ** 2
    r1 = 4.0 * e2a * (1.0 - b) ** 2 - (b * b - n * n)
    r2 = params.mu * n - 0.5 * math.log((b + n) / (b - n))
    return (r1, r2)


def _grad_hess(b, n, params):
    mu = params.mu
    alpha = params.alpha
    bp = b + n
    bm = b - n
    db = -alpha + 0.5 * math.log(bp * bm / 4.0) - math.log(1.0 - b)
    dn = -mu * n + 0.5 * math.log(bp / bm)
    s = 0.5 * (1.0 / bp + 1.0 / bm)
    d = 0.5 * (1.0 / bp - 1.0 / bm)
    hbb = s + 1.0 / (1.0 - b)
    hnn = -mu + s
    return np.array([db, dn]), np.array([[hbb, d], [d, hnn]])


def _newton_polish(b, n, params, max_iter=100, tol=1e-12):
    """Damped Newton iteration on the gradient of the reduced free energy."""
    lo = _DOMAIN_EPS
    for _ in range(max_iter):
        grad, hess = _grad_hess(b, n, params)
        gn = np.max(np.abs(grad))
        if gn < tol:
            return b, n, True
        try:
            step = np.linalg.solve(hess, -grad)
        except np.linalg.LinAlgError:
            return b, n, False
        scale = 1.0
        for _ in range(60):
            b2 = b + scale * step[0]
            n2 = abs(n + scale * step[1])
            if lo < b2 < 1.0 - lo and b2 - n2 >= lo:
                g2, _ = _grad_hess(b2, n2, params)
                if np.max(np.abs(g2)) < gn or scale < 1e-6:
                    b, n = b2, n2
                    break
            scale *= 0.5
        else:
            return b, n, False
    grad, _ = _grad_hess(b, n, params)
    return b, n, bool(np.max(np.abs(grad)) < 1e-8)


def _grid_candidates(params, resolution):
    """Best nontrivial point of a coarse grid scan over 0 <= n < b < 1."""
    lo = 1e-6
    b = np.linspace(lo, 1.0 - lo, resolution)
    n = np.linspace(0.0, 1.0 - lo, resolution)
    bb, nn = np.meshgrid(b, n, indexing="ij")
    spacing = n[1] - n[0]
    mask = (nn >= 2.0 * spacing) & (bb - nn >= spacing)
    if not np.any(mask):
        return None
    phi = np.where(mask, _phi(np.where(mask, bb, 0.5), np.where(mask, nn, 0.0),
                              params.b_r, params.mu), np.inf)
    i, j = np.unravel_index(np.argmin(phi), phi.shape)
    return float(bb[i, j]), float(nn[i, j]), spacing


def _seed_points(params, grid_best):
    seeds = []
    if grid_best is not None:
        seeds.append(grid_best[:2])
    mu = params.mu
    b_r = params.b_r
    # along r2 = 0: b = n / tanh(mu n), for a ladder of n values down to
    # the scale of the smallest minima the trivial-margin can resolve
    for n0 in (0.5, 0.2, 0.1, 0.03, 0.01, 3e-3, 1e-3, 3e-4, 1e-4):
        if mu <= 0:
            break
        b0 = n0 / math.tanh(mu * n0)
        if n0 + _DOMAIN_EPS < b0 < 1.0 - 1e-9:
            seeds.append((b0, n0))
    # leading-order branch prediction for the continuous regime
    if b_r > 1.0 / 3.0 and mu > 1.0 / b_r:
        n0 = math.sqrt(2.0 * b_r**3 * (mu - 1.0 / b_r) / (b_r - 1.0 / 3.0))
        if 0 < n0 < b_r:
            seeds.append((min(b_r * 1.01, 0.5 * (1 + b_r)), n0))
    return seeds


def minimize_phi(params, resolution=800, trivial_margin=1e-12, max_newton=100,
                 couplings=None):
    """Global minimizer of the reduced free energy over 0 < b < 1, 0 <= n < b.

    Coarse grid scan followed by damped Newton polish of several candidate
    starts; the trivial point (b_r, 0) wins unless a nontrivial stationary
    point beats it by more than ``trivial_margin`` (compared in extended
    precision). ``couplings`` may be a (j, lam) pair to report G = j n / (2 lam).
    """
    phi0 = trivial_phi(params, dtype=np.longdouble)
    grid_best = _grid_candidates(params, resolution)

    best = None  # (phi_longdouble, b, n, converged)
    for b0, n0 in _seed_points(params, grid_best):
        b1, n1, ok = _newton_polish(b0, n0, params, max_iter=max_newton)
        if n1 < 1e-9 or not (_DOMAIN_EPS < b1 < 1 - _DOMAIN_EPS) or b1 - n1 < _DOMAIN_EPS:
            continue
        val = _phi(b1, n1, params.b_r, params.mu, dtype=np.longdouble)
        if ok and (best is None or val < best[0]):
            best = (val, b1, n1, True)
    if best is None and grid_best is not None:
        # Newton never converged: fall back to the finest-grid point, flagged
        b1, n1 = grid_best[:2]
        best = (_phi(b1, n1, params.b_r, params.mu, dtype=np.longdouble), b1, n1, False)

    if best is not None and best[0] < phi0 - trivial_margin:
        val, b1, n1, ok = best
        sol = MFSolution(
            b=b1,
            n=n1,
            phi_value=float(val),
            is_trivial=False,
            residuals=mf_residuals(b1, n1, params),
            theta=n1 / b1,
            converged=ok,
        )
    else:
        sol = MFSolution(
            b=params.b_r,
            n=0.0,
            phi_value=float(phi0),
            is_trivial=True,
            residuals=(0.0, 0.0),
            theta=0.0,
        )
    if couplings is not None:
        j, lam = couplings
        sol.G = j * sol.n / (2.0 * lam)
    return sol


FIRST_ORDER_JUMP = 1e-3


def transition(b_r, tolerance=1e-7, resolution=800):
    """Locate mu_T by bisection on "the global minimizer is nontrivial".

    Reports the transition order from the jump in n at mu_T: first_order iff
    n_jump > 1e-3, where n_jump estimates lim_{mu -> mu_T+} n by linear
    extrapolation of n^2 from mu_T + tolerance and mu_T + 2 tolerance (for a
    continuous branch n^2 grows linearly from zero, so the extrapolation
    cancels the offset; a genuine jump survives it). The nontrivial-minimum
    margin is kept tight (1e-15, extended-precision comparison) so continuous
    transitions near mu_S are not mistaken for jumps.
    """
    if not 0 < b_r < 1:
        raise DomainError("b_r must lie in (0, 1)")
    mu_s = 1.0 / b_r
    margin = 1e-15

    def nontrivial(mu):
        sol = minimize_phi(MFParams(b_r, mu), resolution=resolution,
                           trivial_margin=margin)
        return not sol.is_trivial, sol

    lo, hi = 1.0, mu_s + 1.0
    ok_hi, _ = nontrivial(hi)
    if not ok_hi:
        raise RuntimeError("bisection bracket failure: no ordered phase below mu=%g" % hi)
    ok_lo, _ = nontrivial(lo)
    if ok_lo:
        raise RuntimeError("bisection bracket failure: ordered phase already at mu=1")
    while hi - lo > tolerance:
        mid = 0.5 * (lo + hi)
        if nontrivial(mid)[0]:
            hi = mid
        else:
            lo = mid
    # mu_S is a rigorous upper bound for mu_T (the trivial point destabilizes
    # there), so clamp away the bisection-tolerance overshoot
    mu_t = min(0.5 * (lo + hi), mu_s)
    _, sol1 = nontrivial(mu_t + tolerance)
    _, sol2 = nontrivial(mu_t + 2.0 * tolerance)
    n_jump = math.sqrt(max(2.0 * sol1.n**2 - sol2.n**2, 0.0))
    order = "first_order" if n_jump > FIRST_ORDER_JUMP else "continuous"
    return TransitionReport(mu_T=mu_t, mu_S=mu_s, order=order, n_jump=n_jump)


@dataclass
class TricriticalPoint:
    b_r: float
    alpha: float


def tricritical_scan(b_lo=0.25, b_hi=0.45, tolerance=5e-3, resolution=800):
    """b_r at which the transition order flips, by bisection on b_r.

    First-order below the returned value, continuous above; also reports the
    proclivity alpha corresponding to that ambient density.
    """
    def first_order(b_r):
        return transition(b_r, resolution=resolution).order == "first_order"

    if not first_order(b_lo):
        raise RuntimeError("expected a first-order transition at b_r=%g" % b_lo)
    if first_order(b_hi):
        raise RuntimeError("expected a continuous transition at b_r=%g" % b_hi)
    lo, hi = b_lo, b_hi
    while hi - lo > tolerance:
        mid = 0.5 * (lo + hi)
        if first_order(mid):
            lo = mid
        else:
            hi = mid
    b_star = 0.5 * (lo + hi)
    return TricriticalPoint(b_r=b_star, alpha=alpha_of_ambient(b_star))


def phase_diagram(b_r_values, mu_values, resolution=400):
    """Minimize over a (b_r, mu) grid; returns a list of row dicts.

    Columns: b_r, mu, b, n, G_reduced (= mu * n, the solver-internal proxy),
    phi, order_flag ('ordered' when the minimizer is nontrivial).
    """
    rows = []
    for b_r in b_r_values:
        for mu in mu_values:
            sol = minimize_phi(MFParams(b_r, mu), resolution=resolution)
            rows.append(
                {
                    "b_r": b_r,
                    "mu": mu,
                    "b": sol.b,
                    "n": sol.n,
                    "G_reduced": mu * sol.n,
                    "phi": sol.phi_value,
                    "order_flag": "trivial" if sol.is_trivial else "ordered",
                }
            )
    return rows


def write_phase_diagram_csv(rows, path):
    cols = ("b_r", "mu", "b", "n", "G_reduced", "phi", "order_flag")
    with open(path, "w") as fh:
        fh.write(",".join(cols) + "\n")
        for row in rows:
            out = []
            for c in cols:
                v = row[c]
                out.append(v if isinstance(v, str) else "%.12g" % v)
            fh.write(",".join(out) + "\n")
    return path
