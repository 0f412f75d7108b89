"""Configuration management package for the tag pipeline"""

from .config_manager import ConfigurationManager, RunConfig, parse_thresholds, SELECT

__all__ = [
    'ConfigurationManager',
    'RunConfig',
    'parse_thresholds',
    'SELECT',
]
