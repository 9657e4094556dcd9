"""
Configuration management for dilaton_discord.
"""

import yaml
from pathlib import Path
from pydantic_settings import BaseSettings, SettingsConfigDict
from pydantic import Field

from .models.params import SweepConfig


class Settings(BaseSettings):
    """Defaults loaded from DILATON_* environment variables (or .env)."""

    model_config = SettingsConfigDict(
        env_prefix="DILATON_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    # Scenario (figure configuration: M = ω = 1, q_R = 1)
    mass: float = Field(1.0, description="Black-hole mass M")
    omega: float = Field(1.0, description="Mode frequency ω")
    q_r: float = Field(1.0, description="Particle-branch weight q_R")
    alpha_min: float = Field(0.0, description="Sweep start")
    alpha_max: float = Field(0.999, description="Sweep end (must stay below mass)")
    steps: int = Field(200, description="Sweep points")

    # Optimizer
    coarse_grid: int = Field(64, description="Coarse (θ, φ) grid size per axis")
    refine_tol: float = Field(1e-9, description="Absolute objective tolerance of the refinement")
    validation_grid: int = Field(256, description="Grid size of the brute-force discord oracle")

    # Crossing search
    crossing_tol: float = Field(
        1e-8,
        description="Final bracket width of the crossing search",
    )

    # Processing
    sweep_workers: int = Field(4, description="Worker processes used to compute sweep rows")
    log_level: str = Field("INFO", description="Root log level")
    metrics_port: int = Field(0, description="Prometheus port; 0 disables the endpoint")

    # Chart geometry
    plot_config_path: str = Field(
        "config/plot.yaml",
        description="Path to SVG chart geometry file",
    )

    def sweep_config(self, **overrides) -> SweepConfig:
        """SweepConfig from these settings, with non-None overrides applied."""
        values = {
            "mass": self.mass,
            "omega": self.omega,
            "q_r": self.q_r,
            "alpha_min": self.alpha_min,
            "alpha_max": self.alpha_max,
            "steps": self.steps,
        }
        values.update({k: v for k, v in overrides.items() if v is not None})
        return SweepConfig(**values)

    def load_plot_config(self) -> dict:
        """Load chart geometry from YAML file."""
        config_path = Path(self.plot_config_path)

        if not config_path.exists():
            return self._default_plot_config()

        with open(config_path, "r") as f:
            loaded = yaml.safe_load(f) or {}
        config = self._default_plot_config()
        for section, values in loaded.items():
            if isinstance(values, dict) and isinstance(config.get(section), dict):
                config[section].update(values)
            else:
                config[section] = values
        return config

    def _default_plot_config(self) -> dict:
        """Default chart geometry."""
        return {
            "canvas": {"width": 720, "height": 480},
            "margins": {"left": 60, "right": 20, "top": 30, "bottom": 60},
            "axes": {"y_min": 0.0, "y_max": 2.0, "y_ticks": 5, "x_ticks": 6},
            "styles": {
                "solid": "",
                "dashed": "8,4",
                "dotted": "2,3",
            },
            "colors": ["#1f77b4", "#d62728", "#2ca02c"],
        }
