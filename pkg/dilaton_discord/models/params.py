"""
Physical inputs: black-hole parameters, squeeze angle and sweep configuration.
"""

import math
from dataclasses import dataclass
from typing import List, Optional

import numpy as np
from pydantic import BaseModel, Field, model_validator

from ..exceptions import ContractViolationError, DomainError

NORMALIZATION_TOL = 1e-12


@dataclass(frozen=True)
class DilatonParams:
    """
    Scenario inputs in geometric units (G = c = ħ = k_B = 1).

    Attributes:
        mass: black-hole mass M > 0
        alpha: dilaton, 0 <= alpha < M
        omega: mode frequency > 0
        q_r: weight of the particle branch, |q_r| <= 1 (may be complex)
    """
    mass: float
    alpha: float
    omega: float
    q_r: complex = 1.0

    def __post_init__(self):
        if not self.mass > 0:
            raise DomainError(f"mass must be positive, got {self.mass}")
        if not self.omega > 0:
            raise DomainError(f"omega must be positive, got {self.omega}")
        if not self.alpha >= 0:
            raise DomainError(f"alpha must be non-negative, got {self.alpha}")
        if not self.alpha < self.mass:
            raise DomainError(
                f"alpha must be strictly below the mass (alpha={self.alpha}, M={self.mass})"
            )
        if abs(self.q_r) > 1 + NORMALIZATION_TOL:
            raise DomainError(f"|q_R| must not exceed 1, got {abs(self.q_r)}")

    @property
    def q_l(self) -> float:
        """Real, non-negative q_L = sqrt(1 - |q_R|^2)."""
        return math.sqrt(max(0.0, 1.0 - abs(self.q_r) ** 2))

    def to_dict(self) -> dict:
        q_r = complex(self.q_r)
        return {
            "mass": self.mass,
            "alpha": self.alpha,
            "omega": self.omega,
            "q_r": q_r.real if q_r.imag == 0 else [q_r.real, q_r.imag],
            "q_l": self.q_l,
        }


@dataclass(frozen=True)
class SqueezeAngle:
    """(cos r, sin r) of the horizon mode mixing."""
    cos_r: float
    sin_r: float

    def __post_init__(self):
        norm = self.cos_r ** 2 + self.sin_r ** 2
        if abs(norm - 1.0) > NORMALIZATION_TOL:
            raise ContractViolationError(f"cos^2 r + sin^2 r = {norm!r}, expected 1")

    @property
    def r(self) -> float:
        return math.atan2(self.sin_r, self.cos_r)

    @classmethod
    def from_angle(cls, r: float) -> "SqueezeAngle":
        return cls(math.cos(r), math.sin(r))


class SweepConfig(BaseModel):
    """Alpha sweep at fixed (M, ω, q_R)."""

    mass: float = Field(1.0, gt=0, description="Black-hole mass M")
    omega: float = Field(1.0, gt=0, description="Mode frequency ω")
    q_r: float = Field(1.0, ge=0, le=1, description="Particle-branch weight q_R")
    alpha_min: float = Field(0.0, ge=0, description="First dilaton value")
    alpha_max: float = Field(0.999, description="Last dilaton value (< mass)")
    steps: int = Field(200, ge=2, description="Number of uniformly spaced alpha values")
    output_path: Optional[str] = Field(None, description="Where results are written")

    @model_validator(mode="after")
    def _check_range(self) -> "SweepConfig":
        if not self.alpha_min < self.alpha_max:
            raise ValueError(
                f"alpha_min ({self.alpha_min}) must be below alpha_max ({self.alpha_max})"
            )
        if not self.alpha_max < self.mass:
            raise ValueError(
                f"alpha_max ({self.alpha_max}) must be below the mass ({self.mass})"
            )
        return self

    def alphas(self) -> List[float]:
        return [float(a) for a in np.linspace(self.alpha_min, self.alpha_max, self.steps)]

    def params_at(self, alpha: float) -> DilatonParams:
        return DilatonParams(mass=self.mass, alpha=alpha, omega=self.omega, q_r=self.q_r)
