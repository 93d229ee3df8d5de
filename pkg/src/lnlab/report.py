"""Structured pass/fail reports for identity checks.

Every check produces a CheckReport: a list of items, one per verified law,
each carrying the symbolic defect that was tested for vanishing.  A report
passes exactly when every item does, so a report is a certificate that can be
rendered for humans or inspected programmatically.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

__all__ = ["CheckItem", "CheckReport"]


def _render(obj: Any) -> str:
    if obj is None:
        return ""
    if hasattr(obj, "render"):
        try:
            return obj.render()  # type: ignore[call-arg]
        except TypeError:
            pass
    return str(obj)


@dataclass
class CheckItem:
    """One verified identity: the law name and its computed defect."""

    law: str
    passed: bool
    defect: Any = None
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        out = f"[{status}] {self.law}"
        if self.detail:
            out += f"  ({self.detail})"
        if not self.passed and self.defect is not None:
            out += f"\n       defect: {_render(self.defect)}"
        return out


@dataclass
class CheckReport:
    """Aggregate of check items for one structure."""

    title: str
    items: list[CheckItem] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def add(self, law: str, passed: bool, defect: Any = None, detail: str = "") -> None:
        self.items.append(CheckItem(law, passed, defect, detail))

    def add_zero(self, law: str, obj: Any, detail: str = "") -> None:
        """Record that obj must vanish; passes iff obj.is_zero."""
        self.add(law, bool(obj.is_zero), None if obj.is_zero else obj, detail)

    def extend(self, other: "CheckReport", prefix: str = "") -> None:
        for item in other.items:
            law = f"{prefix}{item.law}" if prefix else item.law
            self.items.append(CheckItem(law, item.passed, item.defect, item.detail))
        self.notes.extend(other.notes)

    @property
    def passed(self) -> bool:
        return all(item.passed for item in self.items)

    @property
    def verdict(self) -> str:
        return "PASS" if self.passed else "FAIL"

    def failures(self) -> list[CheckItem]:
        return [i for i in self.items if not i.passed]

    def render_text(self) -> str:
        lines = [f"{self.title}: {self.verdict}"]
        lines += [item.line() for item in self.items]
        lines += [f"note: {n}" for n in self.notes]
        return "\n".join(lines)

    def render_table(self) -> str:
        width = max([len(i.law) for i in self.items] + [3])
        lines = [f"{self.title}: {self.verdict}",
                 f"{'law'.ljust(width)} | status | detail",
                 f"{'-' * width}-+--------+-------"]
        for i in self.items:
            status = "pass" if i.passed else "FAIL"
            lines.append(f"{i.law.ljust(width)} | {status.ljust(6)} | {i.detail}")
        lines += [f"note: {n}" for n in self.notes]
        return "\n".join(lines)

    def __str__(self) -> str:
        return self.render_text()
