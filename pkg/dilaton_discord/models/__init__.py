"""
Data models for the toolkit.
"""

from .params import DilatonParams, SqueezeAngle, SweepConfig
from .report import CorrelationReport, OracleReport

__all__ = ["DilatonParams", "SqueezeAngle", "SweepConfig", "CorrelationReport", "OracleReport"]
