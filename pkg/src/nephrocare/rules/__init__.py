"""Pure clinical classification rules: colors, stages, relapse, adherence.

No I/O and no clock access; reference tables are loaded explicitly and
passed in as values.
"""

from .adherence import AdherenceWindow, DoseSchedule, adherence_rate
from .bp import (
    ADOLESCENT_AGE_MONTHS,
    BpReading,
    BpReferenceTable,
    BpStage,
    HeightBand,
    StaticThresholds,
    bp_color,
    classify_bp,
)
from .criticality import LatestAssessments, patient_criticality
from .errors import DomainError, InvalidWindow, ReferenceMiss, RulesError, UnsortedInput
from .grading import (
    Sex,
    SeverityColor,
    UrineProteinGrade,
    classify_urine_protein,
    compute_bmi,
    is_heavy,
    round_display,
)
from .growth import (
    GrowthAssessment,
    GrowthMetric,
    GrowthReferenceTable,
    assess_growth,
    band_for_z,
)
from .relapse import (
    RELAPSE_RUN_LENGTH,
    EntryFlag,
    RelapseState,
    RelapseStatus,
    extend_relapse,
    relapse_scan,
    scan_state,
)

__all__ = [
    "ADOLESCENT_AGE_MONTHS",
    "AdherenceWindow",
    "BpReading",
    "BpReferenceTable",
    "BpStage",
    "DomainError",
    "DoseSchedule",
    "EntryFlag",
    "GrowthAssessment",
    "GrowthMetric",
    "GrowthReferenceTable",
    "HeightBand",
    "InvalidWindow",
    "LatestAssessments",
    "RELAPSE_RUN_LENGTH",
    "ReferenceMiss",
    "RelapseState",
    "RelapseStatus",
    "RulesError",
    "Sex",
    "SeverityColor",
    "StaticThresholds",
    "UnsortedInput",
    "UrineProteinGrade",
    "adherence_rate",
    "assess_growth",
    "band_for_z",
    "bp_color",
    "classify_bp",
    "classify_urine_protein",
    "compute_bmi",
    "extend_relapse",
    "is_heavy",
    "patient_criticality",
    "relapse_scan",
    "round_display",
    "scan_state",
]
