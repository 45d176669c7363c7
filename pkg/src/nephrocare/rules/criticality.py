"""Patient criticality: the flag behind the warning badge and the
doctor's critical-patient count."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .bp import BpStage
from .grading import SeverityColor
from .growth import GrowthMetric
from .relapse import RelapseState, RelapseStatus


@dataclass(frozen=True)
class LatestAssessments:
    """Most recent assessment per channel; channels without data stay None/empty."""

    urine_color: SeverityColor | None = None
    bp_stage: BpStage | None = None
    growth_bands: Mapping[GrowthMetric, SeverityColor] = field(default_factory=dict)


def patient_criticality(latest: LatestAssessments, relapse: RelapseState | None) -> bool:
    """True when any channel signals red: active relapse, stage-2 BP, or a
    red urine/growth band. Escalating any single channel never clears the flag."""
    if relapse is not None and relapse.status is RelapseStatus.RELAPSE:
        return True
    if latest.bp_stage is BpStage.STAGE2:
        return True
    if latest.urine_color is SeverityColor.RED:
        return True
    return any(band is SeverityColor.RED for band in latest.growth_bands.values())
