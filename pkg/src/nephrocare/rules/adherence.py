"""Medication adherence over a date window.

A dose event is a per-day tick for one prescription: ticking a day counts
all of that day's scheduled doses as taken (the diary stores at most one
event per prescription and day).
"""

from __future__ import annotations

from dataclasses import dataclass
from datetime import date, timedelta
from typing import Iterable

from .errors import DomainError, InvalidWindow


@dataclass(frozen=True)
class DoseSchedule:
    """Scheduled intake: doses_per_day every day from start to end (inclusive).

    An open-ended prescription has end=None.
    """

    doses_per_day: int
    start: date
    end: date | None = None

    def __post_init__(self) -> None:
        if self.doses_per_day < 1:
            raise DomainError(f"doses_per_day must be >= 1, got {self.doses_per_day}")
        if self.end is not None and self.end < self.start:
            raise DomainError(f"schedule end {self.end} before start {self.start}")

    def active_on(self, day: date) -> bool:
        if day < self.start:
            return False
        return self.end is None or day <= self.end


@dataclass(frozen=True)
class AdherenceWindow:
    start: date
    end: date
    expected_doses: int
    taken_doses: int
    rate: float


def adherence_rate(
    schedule: DoseSchedule,
    events: Iterable[tuple[date, bool]],
    window: tuple[date, date],
) -> AdherenceWindow:
    """Adherence over [start, end]: taken doses against scheduled doses.

    Only days inside both the window and the schedule's validity count.
    With nothing scheduled in the window the rate is 1.0 by convention.
    """
    start, end = window
    if start > end:
        raise InvalidWindow(f"window start {start} after end {end}")

    ticked = {day for day, taken in events if taken}
    expected = 0
    taken = 0
    day = start
    while day <= end:
        if schedule.active_on(day):
            expected += schedule.doses_per_day
            if day in ticked:
                taken += schedule.doses_per_day
        day += timedelta(days=1)

    taken = min(taken, expected)
    rate = taken / expected if expected > 0 else 1.0
    return AdherenceWindow(
        start=start, end=end, expected_doses=expected, taken_doses=taken, rate=rate
    )
