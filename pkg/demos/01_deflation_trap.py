"""Narrative demo 1: the deflationary trap under debt targeting.

With an exponential interest-rate rule that is active at the intended
target, the modified Fisher relation has a second, low-inflation root
where the rule has gone passive.  The target is a saddle -- only initial
conditions exactly on its stable arm reach it -- while the trap is a
stable node that attracts everything below the arm.

Run:  python demos/01_deflation_trap.py
"""

from olgdyn import (
    comparative_statics,
    eigen2,
    integrate,
    jacobian_debt,
    preset,
    solve_debt_targeting,
)

cfg = preset("figure1")
trap, target = solve_debt_targeting(cfg.params, cfg.rule, cfg.regime)

print("Two steady states at the liability target a* =", cfg.regime.a_star)
for label, ss in (("trap  ", trap), ("target", target)):
    rep = eigen2(jacobian_debt(cfg.params, cfg.rule, cfg.regime, ss))
    slope = cfg.rule.psi_prime(ss.pi)
    print(f"  {label}: pi = {ss.pi:+.4f}  R = {ss.R:.4f}  "
          f"psi' = {slope:.3f}  ->  {rep.classification}")

print("\nThe rule is active (slope > 1) at the target and passive at the")
print("trap; the trap therefore satisfies the local stability condition.")

# A nearby start below the target's stable arm slides into the trap.
start = (0.8, target.pi - 0.005)
traj = integrate(cfg.regime, cfg.params, cfg.rule, start, horizon=2000.0,
                 steady_states=[trap, target], box=cfg.box)
print(f"\nFrom {start}: {traj.status} at "
      f"(a, pi) = ({traj.final_state[0]:.4f}, {traj.final_state[1]:+.4f})")

# Raising the liability target raises long-run inflation, but the impact
# response undershoots the long-run response.
long_run, impact = comparative_statics(cfg.params, cfg.rule, cfg.regime,
                                       nominal_ratio=1.0)
print(f"\nd pi*/d a* = {long_run:.6f} (long run), {impact:.6f} (impact):")
print("the price level jumps by less than the eventual steady-state shift.")
