"""Pass/fail records shared by all verification routines."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""


@dataclass
class Report:
    title: str
    checks: list[Check] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def add(self, name: str, ok: bool, detail: str = "") -> None:
        self.checks.append(Check(name, bool(ok), detail))

    def extend(self, other: "Report") -> None:
        for c in other.checks:
            self.checks.append(Check(f"{other.title}: {c.name}", c.ok, c.detail))

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.ok]

    def lines(self, verbose: bool = False) -> list[str]:
        out = [f"[{'PASS' if self.ok else 'FAIL'}] {self.title} ({len(self.checks)} checks)"]
        for c in self.checks:
            if verbose or not c.ok:
                tail = f" -- {c.detail}" if c.detail and not c.ok else ""
                out.append(f"  {'ok  ' if c.ok else 'FAIL'} {c.name}{tail}")
        return out

    def __str__(self) -> str:
        return "\n".join(self.lines())
