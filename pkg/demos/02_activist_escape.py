"""Narrative demo 2: escaping the trap with an activist fiscal rule.

When the surplus responds to the real rate instead of targeting a debt
level, the trap can be destabilized: with a strong enough deficit
response the low steady state becomes an unstable node, and a unique
connecting orbit runs from it to the target saddle.  Along that orbit
the government's intertemporal budget still balances.

Run:  python demos/02_activist_escape.py
"""

from olgdyn import (
    activist_conditions,
    eigen2,
    heteroclinic,
    jacobian_activist,
    preset,
    solvency_report,
    solve_activist,
)

cfg = preset("figure2")
trap, target = solve_activist(cfg.params, cfg.rule, cfg.regime)

print("Activist-regime steady states:")
for label, ss in (("trap  ", trap), ("target", target)):
    rep = eigen2(jacobian_activist(cfg.params, cfg.rule, cfg.regime, ss))
    print(f"  {label}: a = {ss.a:.4f}  pi = {ss.pi:+.4f}  "
          f"->  {rep.classification}")

cond = activist_conditions(cfg.params, cfg.rule, cfg.regime, target, trap)
print("\nDisplayed parameter conditions:")
print(f"  determinate target        : {cond.target_determinacy}")
print(f"  trap det > 0 (unstable)   : {cond.trap_positive_det}")
print(f"  trap trace > 0            : {cond.trap_positive_trace}")
print(f"  real roots (node case)    : {cond.real_roots_at_trap}")

orbit = heteroclinic(cfg.regime, cfg.params, cfg.rule, trap, target,
                     box=cfg.box)
print(f"\nConnecting orbit: {len(orbit.t)} samples, "
      f"a in [{orbit.a.min():.3f}, {orbit.a.max():.3f}]")
print("Liabilities first fall as deficits push inflation up, then turn")
print("around where the orbit crosses the a_dot = 0 locus.")

solv = solvency_report(orbit, cfg.params, cfg.rule, cfg.regime,
                       horizon=cfg.horizon)
print(f"\nSolvency along the orbit (horizon {cfg.horizon:.0f}):")
print(f"  discounted terminal liabilities : {solv.discounted_terminal:.2e}")
print(f"  intertemporal budget residual   : {solv.ibc_residual:.2e}")
