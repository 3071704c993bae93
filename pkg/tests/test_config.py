import pytest

from knapsack_dnc.common.config import (
    CONFIG_FILE,
    DP_MAX_CELLS,
    FORMULA_VARIANT,
    MIN_SUBPROBLEM_SIZE,
    OUTPUT_DIR,
    OUTPUT_DIR_ENV,
    Config,
    default_output_dir,
)
from knapsack_dnc.common.data_types import FormulaVariant


@pytest.fixture
def config():
    return Config(CONFIG_FILE)


def test_singleton(config):
    assert Config(CONFIG_FILE) is config


def test_typed_values(config):
    assert config.get("min_subproblem_size", int) == MIN_SUBPROBLEM_SIZE == 2
    assert config.get("confidence_z", float) == 1.96
    # integers are accepted where floats are asked for
    assert config.get("workers", float) == 1.0
    assert DP_MAX_CELLS > 0
    assert FormulaVariant(FORMULA_VARIANT) in FormulaVariant


def test_missing_and_mistyped_keys(config):
    with pytest.raises(KeyError):
        config.get("no_such_key", int)
    with pytest.raises(TypeError):
        config.get("output_dir", int)


def test_output_dir_override(monkeypatch, tmp_path):
    monkeypatch.delenv(OUTPUT_DIR_ENV, raising=False)
    assert default_output_dir() == OUTPUT_DIR
    monkeypatch.setenv(OUTPUT_DIR_ENV, str(tmp_path))
    assert default_output_dir() == str(tmp_path)


def test_reset_rebuilds(tmp_path):
    custom = tmp_path / "config.yml"
    custom.write_text("min_subproblem_size: 3\n")
    Config.reset_instance()
    try:
        assert Config(str(custom)).get("min_subproblem_size", int) == 3
    finally:
        Config.reset_instance()
        Config(CONFIG_FILE)
