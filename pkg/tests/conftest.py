"""Shared fixtures."""

import pytest

from dilaton_discord.models.params import SweepConfig
from dilaton_discord.sweep import compute_reports


@pytest.fixture(scope="session")
def default_sweep():
    """The full 200-point sweep at M = ω = q_R = 1."""
    return compute_reports(SweepConfig(), workers=4)
