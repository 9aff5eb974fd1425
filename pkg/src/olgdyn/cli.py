"""Command-line front end.

Loads a validated RunConfig (from --config JSON or a named --preset),
runs one experiment, and emits bit-stable CSV/JSON for downstream figure
scripts.  Exit codes: 0 success, 1 numerical failure, 2 config error.
"""

from __future__ import annotations

import json
import math
import os
import sys

import click
import numpy as np

from .calib import BASELINE, j22_local, sweep_j22
from .config import PRESET_NAMES, RunConfig, dump_config, load_config, preset
from .errors import ConfigError, OlgdynError
from .flow import integrate, solvency_report
from .localdyn import (
    activist_conditions,
    eigen2,
    jacobian_activist,
    jacobian_debt,
)
from .policy import Activist, DebtTargeting
from .portrait import build_portrait, heteroclinic
from .steady import solve_activist, solve_debt_targeting

FLOAT_FMT = ".17g"


def _fmt(x: float) -> str:
    return format(float(x), FLOAT_FMT)


def _write_csv(path: str, header: list, rows) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(
                ",".join(
                    _fmt(v) if isinstance(v, (int, float, np.floating)) else str(v)
                    for v in row
                )
                + "\n"
            )


def _write_json(path: str, doc) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _trajectory_rows(traj):
    return zip(traj.t, traj.a, traj.pi, traj.R, traj.m, traj.b, traj.s)


def _trajectory_doc(traj) -> dict:
    return {
        "t": [float(v) for v in traj.t],
        "a": [float(v) for v in traj.a],
        "pi": [float(v) for v in traj.pi],
        "R": [float(v) for v in traj.R],
        "m": [float(v) for v in traj.m],
        "b": [float(v) for v in traj.b],
        "s": [float(v) for v in traj.s],
        "status": traj.status,
        "direction": traj.direction,
    }


def _solve(cfg: RunConfig):
    if isinstance(cfg.regime, DebtTargeting):
        return solve_debt_targeting(cfg.params, cfg.rule, cfg.regime)
    return solve_activist(cfg.params, cfg.rule, cfg.regime)


def _jacobian(cfg: RunConfig, ss):
    if isinstance(cfg.regime, DebtTargeting):
        return jacobian_debt(cfg.params, cfg.rule, cfg.regime, ss)
    return jacobian_activist(cfg.params, cfg.rule, cfg.regime, ss)


def _load(config_path, preset_name, horizon, resolution, seed_eps) -> RunConfig:
    if config_path is None and preset_name is None:
        raise ConfigError(["one of --config or --preset is required"])
    if config_path is not None and preset_name is not None:
        raise ConfigError(["--config and --preset are mutually exclusive"])
    cfg = load_config(config_path) if config_path else preset(preset_name)
    updates = {}
    if horizon is not None:
        if horizon <= 0:
            raise ConfigError([f"--horizon must be positive, got {horizon}"])
        updates["horizon"] = horizon
    if resolution is not None:
        if resolution < 2:
            raise ConfigError([f"--resolution must be >= 2, got {resolution}"])
        updates["resolution"] = resolution
    if seed_eps is not None:
        if not 0 < seed_eps < 1e-2:
            raise ConfigError([f"--seed-eps must be in (0, 1e-2), got {seed_eps}"])
        updates["seed_eps"] = seed_eps
    if updates:
        from dataclasses import replace

        cfg = replace(cfg, **updates)
    return cfg


def _common(fn):
    fn = click.option("--config", "config_path", type=click.Path(), default=None,
                      help="JSON run configuration.")(fn)
    fn = click.option("--preset", "preset_name",
                      type=click.Choice(list(PRESET_NAMES)), default=None,
                      help="Named built-in configuration.")(fn)
    fn = click.option("--out", "out_dir", type=click.Path(), default=".",
                      help="Output directory (created if absent).")(fn)
    fn = click.option("--horizon", type=float, default=None,
                      help="Override the integration horizon (years).")(fn)
    fn = click.option("--resolution", type=int, default=None,
                      help="Override the grid resolution / points per axis.")(fn)
    fn = click.option("--seed-eps", type=float, default=None,
                      help="Override the manifold seeding offset.")(fn)
    return fn


@click.group()
def main() -> None:
    """Planar monetary-dynamics toolkit: steady states, classifications,
    phase portraits, connecting orbits, and calibration sweeps."""


def _run(out_dir, body):
    try:
        os.makedirs(out_dir, exist_ok=True)
        body()
    except ConfigError as exc:
        for problem in exc.problems:
            click.echo(f"config error: {problem}", err=True)
        sys.exit(2)
    except OlgdynError as exc:
        click.echo(f"numerical failure: {exc}", err=True)
        sys.exit(1)


@main.command()
@_common
def steady(config_path, preset_name, out_dir, horizon, resolution, seed_eps):
    """Locate both steady states and write them as CSV + JSON."""

    def body():
        cfg = _load(config_path, preset_name, horizon, resolution, seed_eps)
        states = _solve(cfg)
        header = ["a", "pi", "R", "regime", "residual"]
        rows = [(s.a, s.pi, s.R, s.regime_tag, s.residual) for s in states]
        _write_csv(os.path.join(out_dir, "steady_states.csv"), header, rows)
        _write_json(
            os.path.join(out_dir, "steady_states.json"),
            {
                "steady_states": [
                    {
                        "a": s.a, "pi": s.pi, "R": s.R,
                        "regime": s.regime_tag, "residual": s.residual,
                    }
                    for s in states
                ],
                "config": json.loads(dump_config(cfg)),
            },
        )
        for s in states:
            click.echo(f"a={_fmt(s.a)} pi={_fmt(s.pi)} R={_fmt(s.R)}")

    _run(out_dir, body)


@main.command()
@_common
def classify(config_path, preset_name, out_dir, horizon, resolution, seed_eps):
    """Eigen-classify both steady states; include the activist predicates."""

    def body():
        cfg = _load(config_path, preset_name, horizon, resolution, seed_eps)
        states = _solve(cfg)
        report = []
        for s in states:
            rep = eigen2(_jacobian(cfg, s))
            entry = {
                "a": s.a, "pi": s.pi,
                "classification": rep.classification,
                "trace": rep.trace, "det": rep.det,
                "discriminant": rep.discriminant,
                "eigenvalues_real": [complex(v).real for v in rep.eigenvalues],
                "eigenvalues_imag": [complex(v).imag for v in rep.eigenvalues],
            }
            report.append(entry)
        doc = {"steady_states": report}
        if isinstance(cfg.regime, Activist):
            trap, target = sorted(states, key=lambda s: s.pi)
            c = activist_conditions(cfg.params, cfg.rule, cfg.regime, target, trap)
            doc["conditions"] = {
                "target_determinacy": c.target_determinacy,
                "trap_positive_det": c.trap_positive_det,
                "trap_positive_trace": c.trap_positive_trace,
                "real_roots_at_trap": c.real_roots_at_trap,
                "node_case": c.node_case,
                "spiral_case": c.spiral_case,
            }
        _write_json(os.path.join(out_dir, "classification.json"), doc)
        _write_csv(
            os.path.join(out_dir, "classification.csv"),
            ["a", "pi", "classification", "trace", "det", "discriminant"],
            [
                (e["a"], e["pi"], e["classification"], e["trace"], e["det"],
                 e["discriminant"])
                for e in report
            ],
        )
        for e in report:
            click.echo(f"pi={_fmt(e['pi'])}: {e['classification']}")

    _run(out_dir, body)


def _polyline_doc(poly) -> dict:
    return {
        "name": poly.name,
        "a": [float(v) for v in poly.a],
        "pi": [float(v) for v in poly.pi],
    }


@main.command()
@_common
@click.option("--with-basin/--no-basin", default=True,
              help="Compute the basin-of-attraction grid.")
def portrait(config_path, preset_name, out_dir, horizon, resolution, seed_eps,
             with_basin):
    """Emit the full phase portrait: isoclines, manifolds, basin, orbit."""

    def body():
        cfg = _load(config_path, preset_name, horizon, resolution, seed_eps)
        states = _solve(cfg)
        want_orbit = isinstance(cfg.regime, Activist)
        port = build_portrait(
            cfg.regime, cfg.params, cfg.rule, states, cfg.pi_range,
            box=cfg.box,
            basin_resolution=cfg.resolution if with_basin else None,
            with_heteroclinic=want_orbit,
        )
        doc = {
            "steady_states": [
                {
                    "a": s.a, "pi": s.pi, "R": s.R,
                    "regime": s.regime_tag, "residual": s.residual,
                    "classification": cls,
                }
                for s, cls in zip(port.steady_states, port.classifications)
            ],
            "isocline_pi": _polyline_doc(port.isocline_pi),
            "isocline_a": _polyline_doc(port.isocline_a),
            "manifolds": [_polyline_doc(m) for m in port.manifolds],
            "heteroclinic": (
                _polyline_doc(port.heteroclinic) if port.heteroclinic else None
            ),
            "basin": None,
            "config": json.loads(dump_config(cfg)),
        }
        if port.basin is not None:
            doc["basin"] = {
                "a0": [float(v) for v in port.basin["a0"]],
                "pi0": [float(v) for v in port.basin["pi0"]],
                "labels": list(port.basin["labels"]),
                "resolution": port.basin["resolution"],
            }
            _write_csv(
                os.path.join(out_dir, "basin.csv"),
                ["a0", "pi0", "label"],
                zip(port.basin["a0"], port.basin["pi0"], port.basin["labels"]),
            )
        _write_json(os.path.join(out_dir, "portrait.json"), doc)
        click.echo(
            f"portrait: {len(port.manifolds)} manifold arms, "
            f"heteroclinic={'yes' if port.heteroclinic else 'no'}, "
            f"basin={'yes' if port.basin else 'no'}"
        )

    _run(out_dir, body)


@main.command()
@_common
def orbit(config_path, preset_name, out_dir, horizon, resolution, seed_eps):
    """Trace the trap-to-target connecting orbit (activist regimes)."""

    def body():
        cfg = _load(config_path, preset_name, horizon, resolution, seed_eps)
        if not isinstance(cfg.regime, Activist):
            raise ConfigError(["orbit requires an activist-regime config"])
        states = _solve(cfg)
        trap, target = sorted(states, key=lambda s: s.pi)
        traj = heteroclinic(cfg.regime, cfg.params, cfg.rule, trap, target,
                            box=cfg.box)
        _write_csv(
            os.path.join(out_dir, "orbit.csv"),
            ["t", "a", "pi", "R", "m", "b", "s"],
            _trajectory_rows(traj),
        )
        start_resid = math.hypot(traj.a[0] - trap.a, traj.pi[0] - trap.pi)
        end_resid = math.hypot(traj.a[-1] - target.a, traj.pi[-1] - target.pi)
        solv = solvency_report(traj, cfg.params, cfg.rule, cfg.regime,
                               horizon=cfg.horizon)
        _write_json(
            os.path.join(out_dir, "orbit.json"),
            {
                "trajectory": _trajectory_doc(traj),
                "endpoint_residuals": {
                    "trap": float(start_resid),
                    "target": float(end_resid),
                },
                "solvency": {
                    "discounted_terminal": solv.discounted_terminal,
                    "ibc_residual": solv.ibc_residual,
                    "theta_integral": solv.theta_integral,
                    "truncated": solv.truncated,
                },
                "config": json.loads(dump_config(cfg)),
            },
        )
        click.echo(
            f"orbit: {len(traj.t)} samples, residuals "
            f"trap={start_resid:.3e} target={end_resid:.3e}"
        )

    _run(out_dir, body)


@main.command()
@click.option("--out", "out_dir", type=click.Path(), default=".",
              help="Output directory (created if absent).")
@click.option("--resolution", type=int, default=5,
              help="Grid points per axis for the robustness sweep.")
@click.option("--seed-eps", "eps", type=float, default=0.6,
              help="Elasticity at which the point check is evaluated.")
def sweep(out_dir, resolution, eps):
    """Run the calibration robustness sweep and write the grid summary."""

    def body():
        if resolution < 2:
            raise ConfigError([f"--resolution must be >= 2, got {resolution}"])
        if not 0 < eps < 1:
            raise ConfigError([f"--seed-eps must be in (0, 1), got {eps}"])
        value = j22_local(BASELINE, eps)
        report = sweep_j22(BASELINE, points_per_axis=resolution)
        _write_json(
            os.path.join(out_dir, "sweep.json"),
            {
                "point_check": {"eps": eps, "j22": value},
                "grid": {
                    "points_per_axis": resolution,
                    "n_points": report.n_points,
                    "min": report.min_value,
                    "max": report.max_value,
                    "all_negative": report.all_negative,
                    "sign_violations": report.sign_violations,
                },
            },
        )
        click.echo(
            f"j22(eps={_fmt(eps)}) = {_fmt(value)}; grid of {report.n_points}: "
            f"max {_fmt(report.max_value)}, "
            f"{'all negative' if report.all_negative else 'SIGN VIOLATIONS'}"
        )
        if not report.all_negative:
            sys.exit(1)

    _run(out_dir, body)


@main.command("replicate-appendix-c")
@click.option("--out", "out_dir", type=click.Path(), default=".",
              help="Output directory (created if absent).")
def replicate_appendix_c(out_dir):
    """Reproduce the calibration point checks and the robustness sweep."""

    def body():
        v06 = j22_local(BASELINE, 0.6)
        v05 = j22_local(BASELINE, 0.5)
        report = sweep_j22(BASELINE)
        _write_json(
            os.path.join(out_dir, "appendix_c.json"),
            {
                "j22_eps_0.6": v06,
                "j22_eps_0.5": v05,
                "sweep": {
                    "n_points": report.n_points,
                    "min": report.min_value,
                    "max": report.max_value,
                    "all_negative": report.all_negative,
                },
            },
        )
        click.echo(f"J22(eps=0.6) = {v06:.3f}")
        click.echo(f"J22(eps=0.5) = {v05:.3f}")
        click.echo(
            f"sweep over {report.n_points} grid points: "
            f"max = {_fmt(report.max_value)}, "
            f"{'all negative' if report.all_negative else 'SIGN VIOLATIONS'}"
        )
        if not report.all_negative:
            sys.exit(1)

    _run(out_dir, body)


if __name__ == "__main__":
    main()
