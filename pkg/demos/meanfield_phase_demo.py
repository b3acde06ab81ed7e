"""Mean-field phase structure: spinodal, transition order, tricritical point.

The reduced free energy depends on the ambient occupation b_R and the
coupling mu = J^2 / (2 lambda). For b_R >= 1/3 the ordered branch grows
continuously from mu_S = 1/b_R; for b_R < 1/3 the transition jumps first
order strictly before the spinodal. The crossover (tricritical) point
sits at b_R = 1/3, i.e. alpha = -2 log 2.

Run:  python demos/meanfield_phase_demo.py
"""

import math

import numpy as np

from graffiti_lattice import MFParams, minimize_phi, transition, tricritical_scan

print("order parameter n(mu) at b_R = 0.5 (continuous branch):")
for mu in np.linspace(1.9, 2.4, 6):
    sol = minimize_phi(MFParams(b_r=0.5, mu=mu))
    print("  mu = %.2f: b = %.4f, n = %.4f%s"
          % (mu, sol.b, sol.n, "  (trivial)" if sol.is_trivial else ""))

print("\ntransition reports:")
for b_r in (0.5, 0.34, 0.32, 0.2):
    rep = transition(b_r)
    print(
        "  b_R = %.2f: mu_T = %.6f (mu_S = %.4f), %s, n_jump = %.4g"
        % (b_r, rep.mu_T, rep.mu_S, rep.order, rep.n_jump)
    )

print("\nscanning for the tricritical point ...")
point = tricritical_scan()
print("  order flips at b_R = %.4f (expected 1/3 = %.4f)" % (point.b_r, 1 / 3))
print("  corresponding alpha = %.6f (expected -2 log 2 = %.6f)"
      % (point.alpha, -2 * math.log(2)))
