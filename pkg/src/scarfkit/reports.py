"""Small result containers for report-style checks and verifiers."""
from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class ValidationReport:
    """Every violated hypothesis, in discovery order. Empty means valid."""

    violations: list[str] = field(default_factory=list)
    inconclusive: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations and not self.inconclusive

    def add(self, message: str) -> None:
        self.violations.append(message)

    def __iter__(self):
        return iter(self.violations)

    def __len__(self) -> int:
        return len(self.violations)


@dataclass
class Verdict:
    """Boolean outcome of a verifier plus the reasons it failed.

    Truthiness follows ``ok`` so verifiers can be used directly in
    ``if``/``assert`` statements.
    """

    ok: bool
    failures: list[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok

    @property
    def reason(self) -> str:
        return self.failures[0] if self.failures else ""

    @classmethod
    def from_failures(cls, failures: list[str]) -> "Verdict":
        return cls(not failures, failures)
