import pytest

from nslen.config import RunConfig, load_yaml, resolve
from nslen.errors import ConfigError


def test_file_values_fill_in_defaults(fixtures_dir):
    cfg = resolve("analyze", {"seed": 0, "mode": "auto"}, {"seed": False, "mode": False},
                  str(fixtures_dir / "settings.yaml"))
    assert cfg.mode == "exact"
    assert cfg.seed == 7
    assert cfg.primes == (5,)
    assert cfg.command == "analyze"


def test_explicit_flags_beat_the_file(fixtures_dir):
    cfg = resolve("analyze", {"seed": 3}, {"seed": True}, str(fixtures_dir / "settings.yaml"))
    assert cfg.seed == 3
    assert cfg.mode == "exact"


def test_unknown_and_mistyped_settings(tmp_path):
    bad = tmp_path / "bad.yaml"
    bad.write_text("colour: blue\n")
    with pytest.raises(ConfigError):
        load_yaml(str(bad))
    bad.write_text("seed: many\n")
    with pytest.raises(ConfigError):
        load_yaml(str(bad))
    bad.write_text("- 1\n- 2\n")
    with pytest.raises(ConfigError):
        load_yaml(str(bad))
    with pytest.raises(ConfigError):
        load_yaml(str(tmp_path / "missing.yaml"))


def test_run_config_validation():
    with pytest.raises(ConfigError):
        RunConfig(samples=0)
    with pytest.raises(ConfigError):
        RunConfig(mode="fast")
    with pytest.raises(ConfigError):
        RunConfig(e=0)
    echo = RunConfig(primes=(3, 5), out="x.json").echo()
    assert echo["primes"] == [3, 5]
    assert "out" not in echo
