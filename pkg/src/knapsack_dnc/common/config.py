"""config.py - Loader/API for toolkit settings
Author: Dana Whitlock
Date: 2025-06-02
"""

import os
from os import path
from typing import Type, TypeVar

import yaml

from knapsack_dnc.common.singleton_meta import SingletonMeta

LOCAL_DIR = path.dirname(path.abspath(__file__))
CONFIG_FILE = path.join(LOCAL_DIR, "config.yml")

ConfigValue = TypeVar("ConfigValue", str, int, float, bool)


class Config(metaclass=SingletonMeta):
    """Singleton holding the parsed YAML settings."""

    def __init__(self, config_file: str):
        self.config_file = config_file
        self.config_data = self.load_config()

    def load_config(self) -> dict:
        """Load the configuration file."""
        with open(self.config_file, "r") as file:
            data = yaml.safe_load(file)
        if not isinstance(data, dict):
            raise TypeError(f"Configuration file {self.config_file} is not a mapping.")
        return data

    def get(self, key: str, T: Type[ConfigValue]) -> ConfigValue:
        """Get a configuration value by key."""
        value = self.config_data.get(key)
        if value is None:
            raise KeyError(f"Key '{key}' not found in configuration.")
        # yaml reads 1.96 as float but 2 as int; accept ints where floats are asked
        if T is float and isinstance(value, int) and not isinstance(value, bool):
            value = float(value)
        if not isinstance(value, T):
            raise TypeError(
                f"Expected type {str(T)} for key '{key}', "
                f"but got {str(type(value))}."
            )
        return value


EXACT_MAX_DELTA: int = Config(CONFIG_FILE).get("exact_max_delta", int)
DP_MAX_CELLS: int = Config(CONFIG_FILE).get("dp_max_cells", int)
COMPOSITION_LIMIT: int = Config(CONFIG_FILE).get("composition_limit", int)
MIN_SUBPROBLEM_SIZE: int = Config(CONFIG_FILE).get("min_subproblem_size", int)
CONFIDENCE_Z: float = Config(CONFIG_FILE).get("confidence_z", float)
CONFIDENCE_MARGIN: float = Config(CONFIG_FILE).get("confidence_margin", float)
DEFAULT_SEED: int = Config(CONFIG_FILE).get("default_seed", int)
WORKERS: int = Config(CONFIG_FILE).get("workers", int)
FORMULA_VARIANT: str = Config(CONFIG_FILE).get("formula_variant", str)
EFFICIENCY_TOLERANCE: float = Config(CONFIG_FILE).get("efficiency_tolerance", float)
OUTPUT_DIR: str = Config(CONFIG_FILE).get("output_dir", str)
OUTPUT_DIR_ENV: str = Config(CONFIG_FILE).get("output_dir_env", str)


def default_output_dir() -> str:
    """Output directory, honouring the environment override."""
    return os.environ.get(OUTPUT_DIR_ENV) or OUTPUT_DIR
