"""
Result records: correlations at one parameter point and oracle diagnostics.
"""

from dataclasses import dataclass, field
from typing import Dict, List

from ..exceptions import ContractViolationError
from ..qcore.measurement import BlochMeasurement
from .params import DilatonParams

ADDITIVITY_TOL = 1e-9
NEGATIVITY_TOL = 1e-9

CSV_COLUMNS = [
    "alpha",
    "temperature",
    "sin_r",
    "mutual_info",
    "cc_A",
    "cc_B",
    "discord_A",
    "discord_B",
    "mid_classical",
    "mid_quantum",
]


@dataclass(frozen=True)
class CorrelationReport:
    """
    Every correlation measure of the shared state at one parameter point.

    All values are in bits. `classical_a`/`discord_a` come from measuring
    the inertial side A, `classical_b`/`discord_b` from measuring the
    near-horizon mode.
    """
    params: DilatonParams
    temperature: float
    occupation: float
    sin_r: float
    mutual_info: float
    classical_a: float
    classical_b: float
    discord_a: float
    discord_b: float
    mid_classical: float
    mid_quantum: float
    argmin_a: BlochMeasurement
    argmin_b: BlochMeasurement

    def __post_init__(self):
        for name, c, d in (
            ("A", self.classical_a, self.discord_a),
            ("B", self.classical_b, self.discord_b),
        ):
            gap = abs(self.mutual_info - (c + d))
            if gap > ADDITIVITY_TOL:
                raise ContractViolationError(
                    f"I != C + D for side {name} (gap {gap:.3e})"
                )
        for name, value in self.measures().items():
            if value < -NEGATIVITY_TOL:
                raise ContractViolationError(f"{name} is negative ({value:.3e})")

    def measures(self) -> Dict[str, float]:
        return {
            "mutual_info": self.mutual_info,
            "cc_A": self.classical_a,
            "cc_B": self.classical_b,
            "discord_A": self.discord_a,
            "discord_B": self.discord_b,
            "mid_classical": self.mid_classical,
            "mid_quantum": self.mid_quantum,
        }

    def csv_row(self) -> List[float]:
        """Values in CSV_COLUMNS order."""
        return [
            self.params.alpha,
            self.temperature,
            self.sin_r,
            *self.measures().values(),
        ]

    def to_dict(self) -> dict:
        return {
            "params": self.params.to_dict(),
            "temperature": self.temperature,
            "occupation": self.occupation,
            "sin_r": self.sin_r,
            **self.measures(),
            "argmin_A": self.argmin_a.to_dict(),
            "argmin_B": self.argmin_b.to_dict(),
        }


@dataclass
class OracleReport:
    """
    Outcome of the independent verification paths at one parameter point.

    `checks` maps each asserted check to pass/fail; checks that are only
    diagnostic for this configuration are listed in `diagnostic_only`.
    """
    params: DilatonParams
    max_entrywise_deviation: float
    max_objective_gap: float
    vacuum_excited_overlap: complex
    eigenvalue_deviation: float = 0.0
    printed_measurement_deviation: float = 0.0
    checks: Dict[str, bool] = field(default_factory=dict)
    diagnostic_only: List[str] = field(default_factory=list)

    def __post_init__(self):
        for name in ("max_entrywise_deviation", "max_objective_gap",
                     "eigenvalue_deviation", "printed_measurement_deviation"):
            if getattr(self, name) < 0:
                raise ContractViolationError(f"{name} must be non-negative")

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def to_dict(self) -> dict:
        return {
            "params": self.params.to_dict(),
            "max_entrywise_deviation": self.max_entrywise_deviation,
            "max_objective_gap": self.max_objective_gap,
            "vacuum_excited_overlap": [
                self.vacuum_excited_overlap.real,
                self.vacuum_excited_overlap.imag,
            ],
            "eigenvalue_deviation": self.eigenvalue_deviation,
            "printed_measurement_deviation": self.printed_measurement_deviation,
            "checks": dict(self.checks),
            "diagnostic_only": list(self.diagnostic_only),
            "passed": self.passed,
        }
