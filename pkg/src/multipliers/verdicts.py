# src/multipliers/verdicts.py

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional

import numpy as np


class Verdict(str, Enum):
    VERIFIED = "verified"
    INCONCLUSIVE = "inconclusive"
    COUNTEREXAMPLE = "counterexample"


def classify(
    lhs: float,
    constant: float,
    rhs_lower: float,
    rhs_upper: float,
    tol_abs: float = 1e-12,
    tol_rel: float = 1e-9,
) -> Verdict:
    """verified iff lhs <= C*lower, counterexample iff lhs > C*upper (within tolerance)."""
    low = constant * rhs_lower
    high = constant * rhs_upper
    if lhs <= low + tol_abs + tol_rel * abs(low):
        return Verdict.VERIFIED
    if lhs > high + tol_abs + tol_rel * abs(high):
        return Verdict.COUNTEREXAMPLE
    return Verdict.INCONCLUSIVE


def _plain(value: Any) -> Any:
    if isinstance(value, (np.floating, np.integer)):
        return value.item()
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, dict):
        return {k: _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    return value


@dataclass
class VerdictReport:
    lhs: float
    rhs_lower: float
    rhs_upper: float
    constant_used: float
    verdict: Verdict
    notes: List[str] = field(default_factory=list)
    check_id: str = ""
    anchor: str = ""
    space: str = ""
    m: Optional[int] = None
    n: Optional[int] = None
    p: Optional[float] = None
    seed: Optional[int] = None
    inputs: Dict[str, Any] = field(default_factory=dict)
    provenance: Dict[str, str] = field(default_factory=dict)

    @classmethod
    def build(
        cls,
        lhs: float,
        constant: float,
        rhs_lower: float,
        rhs_upper: float,
        *,
        envelope: bool = False,
        tol_abs: float = 1e-12,
        tol_rel: float = 1e-9,
        **fields,
    ) -> "VerdictReport":
        """
        Apply the trichotomy. Envelope checks (unpinned constants) are never
        allowed to produce a counterexample; an exceeded envelope is recorded
        as inconclusive with a note.
        """
        verdict = classify(lhs, constant, rhs_lower, rhs_upper, tol_abs, tol_rel)
        notes = list(fields.pop("notes", []))
        if envelope and verdict is Verdict.COUNTEREXAMPLE:
            verdict = Verdict.INCONCLUSIVE
            notes.append("envelope exceeded; constant is not pinned, no counterexample issued")
        return cls(
            lhs=float(lhs),
            rhs_lower=float(rhs_lower),
            rhs_upper=float(rhs_upper),
            constant_used=float(constant),
            verdict=verdict,
            notes=notes,
            **fields,
        )

    @classmethod
    def exact(cls, holds: bool, lhs: float, rhs: float, **fields) -> "VerdictReport":
        """Report for an exact comparison lhs <= rhs (both sides computed exactly)."""
        verdict = Verdict.VERIFIED if holds else Verdict.COUNTEREXAMPLE
        return cls(
            lhs=float(lhs),
            rhs_lower=float(rhs),
            rhs_upper=float(rhs),
            constant_used=1.0,
            verdict=verdict,
            **fields,
        )

    @property
    def ratio(self) -> Optional[float]:
        denom = self.constant_used * self.rhs_lower
        return self.lhs / denom if denom else None

    def to_entry(self) -> Dict[str, Any]:
        entry = {
            "check_id": self.check_id,
            "anchor": self.anchor,
            "space": self.space,
            "m": self.m,
            "n": self.n,
            "p": self.p,
            "lhs": self.lhs,
            "constant": self.constant_used,
            "bracket_lower": self.rhs_lower,
            "bracket_upper": self.rhs_upper,
            "verdict": self.verdict.value,
            "seed": self.seed,
            "inputs": self.inputs,
            "provenance": self.provenance,
            "notes": self.notes,
        }
        return _plain(entry)
