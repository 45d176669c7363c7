"""Relapse detection over a date-ordered sequence of dipstick readings.

A relapse is three consecutive heavy (3+/4+) diary entries. The scan keeps
the trailing run of heavy entries, so the state can be extended one entry
at a time with the same result as rescanning the full history.
"""

from __future__ import annotations

from dataclasses import dataclass
from datetime import date
from enum import Enum
from typing import Iterable, Sequence

from .errors import UnsortedInput
from .grading import UrineProteinGrade, is_heavy

RELAPSE_RUN_LENGTH = 3


class RelapseStatus(Enum):
    NO_RELAPSE = "no_relapse"
    SUSPECTED = "suspected"
    RELAPSE = "relapse"


@dataclass(frozen=True)
class EntryFlag:
    """Per-entry scan flag."""

    heavy: bool


@dataclass(frozen=True)
class RelapseState:
    """Relapse status derived from the trailing run of heavy entries.

    suspect_count is the length of that run; run_start is the date of its
    first entry (None when the run is empty). onset_date is exposed only
    once the run qualifies as a relapse.
    """

    status: RelapseStatus
    suspect_count: int
    run_start: date | None = None

    @property
    def onset_date(self) -> date | None:
        return self.run_start if self.status is RelapseStatus.RELAPSE else None

    @classmethod
    def initial(cls) -> "RelapseState":
        return cls(RelapseStatus.NO_RELAPSE, 0, None)


def _status_for(count: int) -> RelapseStatus:
    if count >= RELAPSE_RUN_LENGTH:
        return RelapseStatus.RELAPSE
    if count >= 1:
        return RelapseStatus.SUSPECTED
    return RelapseStatus.NO_RELAPSE


def extend_relapse(
    state: RelapseState, entry_date: date, grade: UrineProteinGrade
) -> tuple[EntryFlag, RelapseState]:
    """Advance the scan state by one entry.

    The caller is responsible for feeding entries in strictly increasing
    date order; relapse_scan() enforces that for full sequences.
    """
    heavy = is_heavy(grade)
    if not heavy:
        return EntryFlag(False), RelapseState.initial()
    count = state.suspect_count + 1
    run_start = state.run_start if state.suspect_count > 0 else entry_date
    return EntryFlag(True), RelapseState(_status_for(count), count, run_start)


def relapse_scan(
    entries: Iterable[tuple[date, UrineProteinGrade]],
) -> tuple[list[EntryFlag], RelapseState]:
    """Scan a full entry sequence, returning per-entry flags and the final state.

    Entries must be strictly ascending by date with at most one entry per
    calendar date (same-day duplicates are collapsed by the caller).
    """
    flags: list[EntryFlag] = []
    state = RelapseState.initial()
    previous: date | None = None
    for entry_date, grade in entries:
        if previous is not None and entry_date <= previous:
            raise UnsortedInput(
                f"entry dates must be strictly increasing: {entry_date} after {previous}"
            )
        previous = entry_date
        flag, state = extend_relapse(state, entry_date, grade)
        flags.append(flag)
    return flags, state


def scan_state(entries: Sequence[tuple[date, UrineProteinGrade]]) -> RelapseState:
    """Final relapse state of a sequence; convenience over relapse_scan()."""
    _, state = relapse_scan(entries)
    return state
