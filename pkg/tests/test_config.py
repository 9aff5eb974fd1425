"""Configuration loading: round trips, aggregated error reporting, and
the named presets."""

import json

import pytest

from olgdyn.config import (
    PRESET_NAMES,
    RunConfig,
    dump_config,
    load_config,
    preset,
)
from olgdyn.errors import ConfigError
from olgdyn.policy import Activist, DebtTargeting


class TestRoundTrip:
    @pytest.mark.parametrize("name", PRESET_NAMES)
    def test_dump_then_load_is_identity(self, name, tmp_path):
        cfg = preset(name)
        path = tmp_path / "cfg.json"
        path.write_text(dump_config(cfg))
        again = load_config(str(path))
        assert again == cfg

    def test_dump_is_canonical_json(self):
        doc = json.loads(dump_config(preset("figure1")))
        assert set(doc) == {"params", "rule", "regime", "options"}
        assert doc["regime"]["kind"] == "debt_targeting"
        assert json.loads(dump_config(preset("figure2")))["regime"]["kind"] == \
            "activist"


class TestValidation:
    def test_all_problems_reported_at_once(self, tmp_path):
        bad = {
            "params": {"rho": 0.04},                      # missing fields
            "rule": {"pi_star": 0.02, "r_star": 0.06,
                     "slope_at_target": 0.5},             # slope below one
            "regime": {"kind": "nonsense"},
            "options": {"horizon": -1, "resolution": 1,
                        "seed_eps": 0.5, "box": [1, 0, 0, 1]},
        }
        path = tmp_path / "bad.json"
        path.write_text(json.dumps(bad))
        with pytest.raises(ConfigError) as exc:
            load_config(str(path))
        text = str(exc.value)
        for needle in ("params", "rule", "regime", "options.horizon",
                       "options.resolution", "options.seed_eps", "options.box"):
            assert needle in text
        assert len(exc.value.problems) >= 7

    def test_unreadable_file(self, tmp_path):
        with pytest.raises(ConfigError):
            load_config(str(tmp_path / "missing.json"))

    def test_malformed_json(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{not json")
        with pytest.raises(ConfigError):
            load_config(str(path))

    def test_non_object_root(self, tmp_path):
        path = tmp_path / "list.json"
        path.write_text("[1, 2, 3]")
        with pytest.raises(ConfigError):
            load_config(str(path))


class TestPresets:
    def test_names(self):
        assert set(PRESET_NAMES) == {"figure1", "figure2", "figure3",
                                     "appendix-c"}

    def test_regime_kinds(self):
        assert isinstance(preset("figure1").regime, DebtTargeting)
        assert isinstance(preset("figure2").regime, Activist)
        assert isinstance(preset("figure3").regime, Activist)
        assert preset("appendix-c") == preset("figure1")

    def test_unknown_name(self):
        with pytest.raises(ConfigError, match="unknown preset"):
            preset("figure9")

    def test_pi_range_tracks_rule_target(self):
        cfg = preset("figure2")
        lo, hi = cfg.pi_range
        assert lo == pytest.approx(cfg.rule.pi_star - 0.25)
        assert hi == pytest.approx(cfg.rule.pi_star + 0.10)
