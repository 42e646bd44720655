from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class ValidationReport:
    """A list of violated conditions; empty means valid."""

    issues: list[str] = field(default_factory=list)
    checked: int = 0

    @property
    def ok(self) -> bool:
        return not self.issues

    def __bool__(self) -> bool:
        return self.ok

    def add(self, message: str) -> None:
        self.issues.append(message)

    def require(self, condition: bool, message: str) -> bool:
        self.checked += 1
        if not condition:
            self.issues.append(message)
        return condition

    def extend(self, other: "ValidationReport", prefix: str = "") -> None:
        self.checked += other.checked
        self.issues.extend(prefix + m for m in other.issues)

    def to_json(self) -> dict:
        return {"ok": self.ok, "checked": self.checked, "issues": list(self.issues)}

    def __str__(self) -> str:
        if self.ok:
            return "ok"
        return "\n".join(f"- {m}" for m in self.issues)
