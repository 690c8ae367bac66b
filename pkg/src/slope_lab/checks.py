"""The result record shared by every inequality checker."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .rational import fmt


@dataclass(frozen=True)
class CheckReport:
    theorem_id: str
    lhs: Fraction
    rhs: Fraction
    holds: Optional[bool]
    hypothesis_ok: bool
    notes: str = ""
    coefficient: Optional[Fraction] = None

    @property
    def slack(self) -> Fraction:
        return self.lhs - self.rhs

    def to_json(self) -> dict:
        out = {"theorem": self.theorem_id, "lhs": fmt(self.lhs), "rhs": fmt(self.rhs),
               "holds": self.holds, "slack": fmt(self.slack),
               "hypothesis_ok": self.hypothesis_ok}
        if self.coefficient is not None:
            out["coefficient"] = fmt(self.coefficient)
        if self.notes:
            out["notes"] = self.notes
        return out


def compare(theorem_id: str, lhs: Fraction, rhs: Fraction, notes: str = "",
            coefficient: Optional[Fraction] = None) -> CheckReport:
    return CheckReport(theorem_id, Fraction(lhs), Fraction(rhs), lhs >= rhs, True, notes,
                       None if coefficient is None else Fraction(coefficient))
