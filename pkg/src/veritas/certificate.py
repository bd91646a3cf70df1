from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class Certificate:
    """Outcome of a structural check, with an optional explicit witness."""

    name: str
    passed: bool
    witness: list[int] | None = None
    details: dict[str, Any] = field(default_factory=dict)

    def __bool__(self):
        return self.passed

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "witness": self.witness,
            "details": self.details,
        }
