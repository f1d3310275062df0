"""
Configuration module for restrictcat.

This module provides the settings that bound the finite searches of the
workbench (diagram shapes, enumeration sizes, sampling seed) and the output
format used by the command-line interface.
"""
from __future__ import annotations
from dataclasses import dataclass
from typing import Any, Dict


@dataclass
class WorkbenchConfig:
    """Configuration for search bounds and reporting.

    Attributes:
        seed: Seed for sampled enumerations and property tests
        shape_bound: Maximum number of objects in a diagram shape
        max_arrows: Maximum number of non-identity arrows in a diagram shape
        max_diagrams: Cap on generated diagrams per shape before sampling
        max_summands: Coproduct width for generated presheaf families
        enumeration_limit: Morphism cap for restriction-structure enumeration
        output_format: Report format ('json' or 'text')
        log_level: Log level used by the command-line interface
    """
    seed: int = 20240601
    shape_bound: int = 3
    max_arrows: int = 4
    max_diagrams: int = 5000
    max_summands: int = 3
    enumeration_limit: int = 40
    output_format: str = "json"
    log_level: str = "WARNING"

    def __post_init__(self) -> None:
        """Validate configuration values.

        Raises:
            ValueError: If any configuration parameter has an invalid value
        """
        if self.shape_bound < 1:
            raise ValueError("shape_bound must be positive")
        if self.max_arrows < 0:
            raise ValueError("max_arrows must be non-negative")
        if self.max_diagrams < 1:
            raise ValueError("max_diagrams must be positive")
        if self.max_summands < 1:
            raise ValueError("max_summands must be positive")
        if self.enumeration_limit < 1:
            raise ValueError("enumeration_limit must be positive")
        if self.output_format not in ("json", "text"):
            raise ValueError("output_format must be either 'json' or 'text'")
        self.log_level = self.log_level.upper()
        if self.log_level not in ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"):
            raise ValueError(f"unknown log_level: {self.log_level}")

    @classmethod
    def from_dict(cls, config_dict: Dict[str, Any]) -> WorkbenchConfig:
        """Create a WorkbenchConfig instance from a dictionary.

        Args:
            config_dict: Dictionary containing configuration values

        Returns:
            A new WorkbenchConfig instance with values from the dictionary

        Notes:
            Only keys that match WorkbenchConfig fields will be used.
            Other keys in the dictionary will be ignored.
        """
        return cls(**{
            k: v for k, v in config_dict.items()
            if k in cls.__dataclass_fields__
        })


# Default configuration used if none provided
DEFAULT_CONFIG = WorkbenchConfig()
