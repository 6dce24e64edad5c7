"""Growth-rate results shared by the asymptotic evaluators."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any


class RateUnits(str, Enum):
    BITS = "bits"
    NATS = "nats"


@dataclass(frozen=True)
class OmegaResult:
    """Maximum of a growth-rate objective.

    ``value`` is log2 per variable for SAT and ln per vertex for COL.
    ``argmax`` is t for the UC and COL rates and y2 for GUC.
    """

    value: float
    argmax: float
    boundary_flag: bool
    variant: str
    units: RateUnits = RateUnits.BITS
    diagnostics: dict[str, Any] = field(default_factory=dict)

    def as_dict(self) -> dict[str, Any]:
        return {
            "value": self.value,
            "argmax": self.argmax,
            "boundary_flag": self.boundary_flag,
            "variant": self.variant,
            "units": self.units.value,
            **self.diagnostics,
        }
