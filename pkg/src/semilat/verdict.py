from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Verdict:
    """Outcome of one named check; ``witness`` describes the first failure."""

    name: str
    passed: bool
    witness: str = ""
    skipped: bool = False
    details: dict = field(default_factory=dict, compare=False)

    def __bool__(self):
        return self.passed

    @classmethod
    def ok(cls, name, **details):
        return cls(name, True, details=details)

    @classmethod
    def fail(cls, name, witness, **details):
        return cls(name, False, str(witness), details=details)

    @classmethod
    def skip(cls, name, reason):
        # skipped checks do not count against the conjunction
        return cls(name, True, reason, skipped=True)

    def line(self) -> str:
        status = "SKIP" if self.skipped else ("PASS" if self.passed else "FAIL")
        tail = f"  ({self.witness})" if self.witness else ""
        return f"{status} {self.name}{tail}"
