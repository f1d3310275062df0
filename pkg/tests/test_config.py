"""
Tests for the workbench configuration.
"""
import pytest

from restrictcat.config import DEFAULT_CONFIG, WorkbenchConfig


def test_defaults():
    """Test the default search bounds."""
    assert DEFAULT_CONFIG.shape_bound == 3
    assert DEFAULT_CONFIG.max_arrows == 4
    assert DEFAULT_CONFIG.output_format == "json"


@pytest.mark.parametrize(
    "values",
    [
        {"shape_bound": 0},
        {"max_arrows": -1},
        {"max_diagrams": 0},
        {"max_summands": 0},
        {"enumeration_limit": 0},
        {"output_format": "yaml"},
        {"log_level": "chatty"},
    ],
)
def test_invalid_values_raise(values):
    """Test validation of every bounded field."""
    with pytest.raises(ValueError):
        WorkbenchConfig(**values)


def test_from_dict_ignores_unknown_keys():
    """Test building a configuration from a loose dictionary."""
    config = WorkbenchConfig.from_dict({"seed": 5, "shape_bound": 2, "colour": "blue", "log_level": "debug"})
    assert config.seed == 5
    assert config.shape_bound == 2
    assert config.log_level == "DEBUG"
