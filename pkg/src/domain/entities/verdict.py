"""
Results of double-checking a state or a trace.
"""
import json
from enum import Enum
from typing import List, Optional

from pydantic import BaseModel, ConfigDict, model_validator


class Outcome(str, Enum):
    AGREE = "AGREE"
    DISAGREE = "DISAGREE"
    ERROR = "ERROR"
    OK = "OK"
    VIOLATION = "VIOLATION"


class Claim(str, Enum):
    """Result claimed by the primary tool for a state."""
    OK = "ok"
    VIOLATION = "violation"


class ClauseKind(str, Enum):
    PROPERTIES = "PROPERTIES"
    INVARIANT = "INVARIANT"
    ASSERTIONS = "ASSERTIONS"


class ClauseResult(str, Enum):
    TRUE = "TRUE"
    FALSE = "FALSE"
    ERROR = "ERROR"


class ClauseCheck(BaseModel):
    """Result of evaluating one top-level conjunct."""
    model_config = ConfigDict(frozen=True)

    clause: ClauseKind
    text: str
    result: ClauseResult
    diagnostic: Optional[str] = None

    def render(self) -> str:
        line = f"CLAUSE {self.text}: {self.result.value}"
        if self.diagnostic:
            line += f" {self.diagnostic}"
        return line


class StepResult(BaseModel):
    """Result of replaying one trace step."""
    model_config = ConfigDict(frozen=True)

    index: int
    operation: str
    outcome: Outcome
    diagnostic: Optional[str] = None

    def render(self) -> str:
        line = f"STEP {self.index} {self.operation}: {self.outcome.value}"
        if self.diagnostic:
            line += f" {self.diagnostic}"
        return line


class Verdict(BaseModel):
    """
    Outcome of a check plus the per-clause and per-step evidence behind it.

    Without a claim the outcome is OK, VIOLATION or ERROR; AGREE and
    DISAGREE only arise when comparing against a claim or a trace.
    """
    model_config = ConfigDict(frozen=True)

    outcome: Outcome
    claim: Optional[Claim] = None
    clauses: List[ClauseCheck] = []
    steps: List[StepResult] = []
    diagnostic: Optional[str] = None

    @model_validator(mode="after")
    def check_consistency(self) -> "Verdict":
        if self.outcome == Outcome.AGREE and any(
                c.result == ClauseResult.ERROR for c in self.clauses):
            raise ValueError("AGREE verdict with an erroneous clause")
        return self

    @property
    def failed_clauses(self) -> List[ClauseCheck]:
        return [c for c in self.clauses if c.result == ClauseResult.FALSE]

    @property
    def is_success(self) -> bool:
        return self.outcome in (Outcome.AGREE, Outcome.OK)

    def render_text(self) -> str:
        lines = [c.render() for c in self.clauses]
        lines.extend(s.render() for s in self.steps)
        if self.diagnostic:
            lines.append(f"DIAGNOSTIC {self.diagnostic}")
        lines.append(f"VERDICT: {self.outcome.value}")
        return "\n".join(lines)

    def render_structured(self) -> str:
        return json.dumps(self.to_document(), indent=2, sort_keys=True)

    def to_document(self) -> dict:
        """JSON-ready form with keys ``outcome``, ``claim``, ``clauses`` and ``steps``."""
        document = {
            "outcome": self.outcome.value,
            "claim": self.claim.value if self.claim else None,
            "clauses": [
                {
                    "clause": c.clause.value,
                    "text": c.text,
                    "result": c.result.value,
                    "diagnostic": c.diagnostic,
                }
                for c in self.clauses
            ],
        }
        if self.steps:
            document["steps"] = [s.model_dump(mode="json") for s in self.steps]
        if self.diagnostic:
            document["diagnostic"] = self.diagnostic
        return document
