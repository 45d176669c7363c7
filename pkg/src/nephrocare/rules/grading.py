"""Urine protein grading, severity colors and BMI arithmetic.

Everything here is pure: no I/O, no clock, no hidden state.
"""

from __future__ import annotations

from decimal import ROUND_HALF_UP, Decimal
from enum import Enum, IntEnum

from .errors import DomainError


class Sex(Enum):
    FEMALE = "F"
    MALE = "M"


class UrineProteinGrade(IntEnum):
    """Semi-quantitative dipstick reading, ordered from negative to 4+."""

    NEGATIVE = 0
    TRACE = 1
    ONE_PLUS = 2
    TWO_PLUS = 3
    THREE_PLUS = 4
    FOUR_PLUS = 5

    @property
    def label(self) -> str:
        return _GRADE_LABELS[self]

    @property
    def nominal_mg_dl(self) -> int | None:
        """Nominal protein concentration for the positive grades, else None."""
        return _GRADE_MG_DL.get(self)

    @classmethod
    def from_label(cls, label: str) -> "UrineProteinGrade":
        try:
            return _LABEL_TO_GRADE[label.strip().lower()]
        except KeyError:
            raise DomainError(f"unknown urine protein grade: {label!r}") from None


_GRADE_LABELS = {
    UrineProteinGrade.NEGATIVE: "negative",
    UrineProteinGrade.TRACE: "trace",
    UrineProteinGrade.ONE_PLUS: "1+",
    UrineProteinGrade.TWO_PLUS: "2+",
    UrineProteinGrade.THREE_PLUS: "3+",
    UrineProteinGrade.FOUR_PLUS: "4+",
}
_LABEL_TO_GRADE = {label: grade for grade, label in _GRADE_LABELS.items()}

_GRADE_MG_DL = {
    UrineProteinGrade.ONE_PLUS: 30,
    UrineProteinGrade.TWO_PLUS: 100,
    UrineProteinGrade.THREE_PLUS: 300,
    UrineProteinGrade.FOUR_PLUS: 2000,
}


class SeverityColor(IntEnum):
    """Chart point color, ordered by severity."""

    GREEN = 0
    YELLOW = 1
    RED = 2

    @property
    def label(self) -> str:
        return self.name.lower()


def classify_urine_protein(grade: UrineProteinGrade) -> SeverityColor:
    """Map a dipstick grade to its chart color.

    Negative and trace readings are green, 1+/2+ yellow, 3+/4+ red.
    """
    if grade >= UrineProteinGrade.THREE_PLUS:
        return SeverityColor.RED
    if grade >= UrineProteinGrade.ONE_PLUS:
        return SeverityColor.YELLOW
    return SeverityColor.GREEN


def is_heavy(grade: UrineProteinGrade) -> bool:
    """True for the relapse-relevant grades (3+ and 4+)."""
    return grade >= UrineProteinGrade.THREE_PLUS


def compute_bmi(weight_kg: float, height_cm: float) -> float:
    """Body mass index in kg/m², unrounded.

    Classification always uses this exact value; use round_display()
    only when rendering.
    """
    if weight_kg <= 0:
        raise DomainError(f"weight must be positive, got {weight_kg}")
    if height_cm <= 0:
        raise DomainError(f"height must be positive, got {height_cm}")
    height_m = height_cm / 100.0
    return weight_kg / (height_m * height_m)


def round_display(value: float, digits: int = 1) -> float:
    """Round half-up to the given number of decimals, for display only."""
    quantum = Decimal(1).scaleb(-digits)
    return float(Decimal(repr(value)).quantize(quantum, rounding=ROUND_HALF_UP))
