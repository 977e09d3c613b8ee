"""Machine-checkable certificate records shared by the symbolic engines."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Any


@dataclass(frozen=True)
class Step:
    step: str
    law: str
    inputs: dict = field(default_factory=dict)
    value: Any = None
    verdict: str = "pass"  # "pass" | "fail"

    @property
    def ok(self) -> bool:
        return self.verdict == "pass"


def check(step: str, law: str, ok: bool, inputs: dict | None = None, value: Any = None) -> Step:
    return Step(step, law, inputs or {}, value, "pass" if ok else "fail")


@dataclass(frozen=True)
class Certificate:
    name: str
    steps: tuple = ()
    conclusions: dict = field(default_factory=dict)

    @property
    def valid(self) -> bool:
        return bool(self.steps) and all(s.ok for s in self.steps)

    def failed_steps(self) -> list[Step]:
        return [s for s in self.steps if not s.ok]

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "valid": self.valid,
            "steps": [asdict(s) for s in self.steps],
            "conclusions": dict(self.conclusions),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> "Certificate":
        return cls(data["name"], tuple(Step(**s) for s in data["steps"]), dict(data.get("conclusions", {})))
