"""Narrative demo 3: the spiral variant of the activist escape.

With a weaker liability response the trap's Jacobian has complex roots:
paths leave it by spiraling outward rather than along a straight branch.
The connecting orbit to the target still exists; it just winds around
the trap several times on the way out.

Run:  python demos/03_spiral_case.py
"""

import numpy as np

from olgdyn import (
    eigen2,
    heteroclinic,
    integrate,
    jacobian_activist,
    preset,
    solve_activist,
)

cfg = preset("figure3")
trap, target = solve_activist(cfg.params, cfg.rule, cfg.regime)

rep = eigen2(jacobian_activist(cfg.params, cfg.rule, cfg.regime, trap))
lam = complex(rep.eigenvalues[0])
print(f"Trap classification: {rep.classification}")
print(f"  eigenvalues {lam.real:+.4f} +/- {abs(lam.imag):.4f}i")
print(f"  (slow radial growth, so the spiral makes several full turns)")

# Count the turns between radius 1e-4 and 1e-2 around the trap.
traj = integrate(cfg.regime, cfg.params, cfg.rule, (trap.a + 1e-4, trap.pi),
                 horizon=100.0, sample_interval=0.02, box=cfg.box)
radius = np.hypot(traj.a - trap.a, traj.pi - trap.pi)
stop = np.argmax(radius > 1e-2)
angles = np.unwrap(np.arctan2(
    (traj.pi[:stop] - trap.pi) * trap.a / 0.01, traj.a[:stop] - trap.a
))
print(f"\nWinding from radius 1e-4 to 1e-2: "
      f"{abs(angles[-1] - angles[0]) / (2 * np.pi):.1f} turns")

orbit = heteroclinic(cfg.regime, cfg.params, cfg.rule, trap, target,
                     box=cfg.box)
print(f"\nThe connecting orbit still reaches the target: "
      f"{len(orbit.t)} samples, a in "
      f"[{orbit.a.min():.3f}, {orbit.a.max():.3f}]")
