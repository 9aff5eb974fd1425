"""Run configuration: JSON (de)serialization with aggregated validation,
and the named presets used by the command-line front end.

A RunConfig bundles the model parameters, the interest-rate rule, the
fiscal regime, and the numeric options every experiment shares.  Loading
collects *all* problems found in a document and reports them in a single
ConfigError rather than failing at the first one.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .errors import ConfigError, DomainError
from .flow import Box
from .policy import Activist, DebtTargeting, FiscalRegime, TaylorRule
from .prefs import ModelParams, calibrate_delta

__all__ = ["RunConfig", "PRESET_NAMES", "preset", "load_config", "dump_config"]


@dataclass(frozen=True)
class RunConfig:
    """Everything a subcommand needs to run one experiment."""

    params: ModelParams
    rule: TaylorRule
    regime: FiscalRegime
    horizon: float = 2000.0
    resolution: int = 20
    seed_eps: float = 1e-6
    box: Box = field(default_factory=lambda: Box(-0.5, 5.0, -0.4, 0.4))

    @property
    def pi_range(self) -> tuple:
        """Inflation window scanned for steady states and isoclines."""
        return (self.rule.pi_star - 0.25, self.rule.pi_star + 0.10)


def _build_params(doc: dict, problems: list) -> ModelParams | None:
    required = ("rho", "mu", "n", "beta", "eps", "delta")
    missing = [k for k in required if k not in doc]
    if missing:
        problems.append(f"params: missing fields {missing}")
        return None
    try:
        return ModelParams(**{k: float(doc[k]) for k in required})
    except (DomainError, TypeError, ValueError) as exc:
        problems.append(f"params: {exc}")
        return None


def _build_rule(doc: dict, problems: list) -> TaylorRule | None:
    required = ("pi_star", "r_star", "slope_at_target")
    missing = [k for k in required if k not in doc]
    if missing:
        problems.append(f"rule: missing fields {missing}")
        return None
    try:
        return TaylorRule(**{k: float(doc[k]) for k in required})
    except (DomainError, TypeError, ValueError) as exc:
        problems.append(f"rule: {exc}")
        return None


def _build_regime(doc: dict, problems: list) -> FiscalRegime | None:
    kind = doc.get("kind")
    if kind == "debt_targeting":
        required = ("a_star", "phi")
        cls = DebtTargeting
    elif kind == "activist":
        required = ("theta0", "theta1", "gamma0", "gamma1", "a_threshold")
        cls = Activist
    else:
        problems.append(
            f"regime: kind must be 'debt_targeting' or 'activist', got {kind!r}"
        )
        return None
    missing = [k for k in required if k not in doc]
    if missing:
        problems.append(f"regime: missing fields {missing}")
        return None
    try:
        return cls(**{k: float(doc[k]) for k in required})
    except (DomainError, TypeError, ValueError) as exc:
        problems.append(f"regime: {exc}")
        return None


def _from_dict(doc: dict) -> RunConfig:
    problems: list[str] = []
    if not isinstance(doc, dict):
        raise ConfigError(["document root must be a JSON object"])
    params = _build_params(doc.get("params", {}), problems)
    rule = _build_rule(doc.get("rule", {}), problems)
    regime = _build_regime(doc.get("regime", {}), problems)
    options = doc.get("options", {})

    horizon = options.get("horizon", 2000.0)
    resolution = options.get("resolution", 20)
    seed_eps = options.get("seed_eps", 1e-6)
    box_vals = options.get("box", [-0.5, 5.0, -0.4, 0.4])
    if not (isinstance(horizon, (int, float)) and horizon > 0):
        problems.append(f"options.horizon: must be a positive number, got {horizon!r}")
    if not (isinstance(resolution, int) and resolution >= 2):
        problems.append(
            f"options.resolution: must be an integer >= 2, got {resolution!r}"
        )
    if not (isinstance(seed_eps, (int, float)) and 0 < seed_eps < 1e-2):
        problems.append(
            f"options.seed_eps: must be a number in (0, 1e-2), got {seed_eps!r}"
        )
    box = None
    if (
        isinstance(box_vals, (list, tuple))
        and len(box_vals) == 4
        and all(isinstance(v, (int, float)) for v in box_vals)
        and box_vals[0] < box_vals[1]
        and box_vals[2] < box_vals[3]
    ):
        box = Box(*map(float, box_vals))
    else:
        problems.append(
            "options.box: must be [a_min, a_max, pi_min, pi_max] with "
            f"min < max on both axes, got {box_vals!r}"
        )
    if problems:
        raise ConfigError(problems)
    return RunConfig(
        params=params,
        rule=rule,
        regime=regime,
        horizon=float(horizon),
        resolution=int(resolution),
        seed_eps=float(seed_eps),
        box=box,
    )


def _to_dict(cfg: RunConfig) -> dict:
    p = cfg.params
    r = cfg.rule
    doc = {
        "params": {
            "rho": p.rho, "mu": p.mu, "n": p.n,
            "beta": p.beta, "eps": p.eps, "delta": p.delta,
        },
        "rule": {
            "pi_star": r.pi_star, "r_star": r.r_star,
            "slope_at_target": r.slope_at_target,
        },
    }
    g = cfg.regime
    if isinstance(g, DebtTargeting):
        doc["regime"] = {"kind": "debt_targeting", "a_star": g.a_star, "phi": g.phi}
    else:
        doc["regime"] = {
            "kind": "activist",
            "theta0": g.theta0, "theta1": g.theta1,
            "gamma0": g.gamma0, "gamma1": g.gamma1,
            "a_threshold": g.a_threshold,
        }
    doc["options"] = {
        "horizon": cfg.horizon,
        "resolution": cfg.resolution,
        "seed_eps": cfg.seed_eps,
        "box": [cfg.box.a_min, cfg.box.a_max, cfg.box.pi_min, cfg.box.pi_max],
    }
    return doc


def load_config(path: str) -> RunConfig:
    """Parse and validate a JSON config file; raises ConfigError on any problem."""
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError([f"cannot read config {path}: {exc}"]) from exc
    return _from_dict(doc)


def dump_config(cfg: RunConfig) -> str:
    """Serialize a RunConfig to its canonical JSON form (round-trip safe)."""
    return json.dumps(_to_dict(cfg), indent=2, sort_keys=True)


# --------------------------------------------------------------------------
# Named presets.
#
# figure1: debt-targeting regime with a deflationary trap below the target.
# figure2: activist regime whose trap is an unstable node; the connecting
#          orbit runs from the trap to the target saddle.
# figure3: activist regime whose trap is an unstable spiral (slow radial
#          growth, ~5 turns between radii 1e-4 and 1e-2).
# appendix-c: alias of figure1's dynamic configuration; the calibration
#          report itself is produced by the calib module's baseline preset.
# --------------------------------------------------------------------------

_DELTA = calibrate_delta(1.0, 0.06, 0.6)

_FIGURE1 = RunConfig(
    params=ModelParams.from_demographics(
        rho=0.04, n=0.0047, mu=0.012366, eps=0.6, delta=_DELTA
    ),
    rule=TaylorRule(pi_star=0.02, r_star=0.06, slope_at_target=1.5),
    regime=DebtTargeting(a_star=0.6, phi=2.0),
)

_ACTIVIST_PARAMS = ModelParams.from_demographics(
    rho=0.02, n=0.015, mu=0.035, eps=0.6, delta=_DELTA
)
_ACTIVIST_RULE = TaylorRule(pi_star=0.03, r_star=0.06, slope_at_target=1.5)

_FIGURE2 = RunConfig(
    params=_ACTIVIST_PARAMS,
    rule=_ACTIVIST_RULE,
    regime=Activist(
        theta0=-3.0, theta1=1.0,
        gamma0=-30.693738415359533, gamma1=1400.0, a_threshold=1e6,
    ),
    box=Box(-0.5, 8.0, -0.4, 0.4),
)

_FIGURE3 = RunConfig(
    params=_ACTIVIST_PARAMS,
    rule=_ACTIVIST_RULE,
    regime=Activist(
        theta0=-1.3, theta1=1.0,
        gamma0=-31.148490070308167, gamma1=1200.0, a_threshold=1e6,
    ),
    box=Box(-0.5, 10.0, -0.4, 0.4),
)

_PRESETS = {
    "figure1": _FIGURE1,
    "figure2": _FIGURE2,
    "figure3": _FIGURE3,
    "appendix-c": _FIGURE1,
}

PRESET_NAMES = tuple(_PRESETS)


def preset(name: str) -> RunConfig:
    """Look up a named preset; raises ConfigError for unknown names."""
    try:
        return _PRESETS[name]
    except KeyError:
        raise ConfigError(
            [f"unknown preset {name!r}; available: {', '.join(PRESET_NAMES)}"]
        ) from None
