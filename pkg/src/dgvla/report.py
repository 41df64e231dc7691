"""Axiom reports: per-check status with localized defects."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional


@dataclass
class CheckResult:
    name: str
    cells: int = 0
    defects: list[tuple[str, str]] = field(default_factory=list)
    note: Optional[str] = None

    @property
    def passed(self) -> bool:
        return not self.defects

    def record(self, cell: str, defect) -> None:
        """Count a cell; keep it as a defect when ``defect`` is nonzero."""
        self.cells += 1
        if defect:
            self.defects.append((cell, str(defect)))


@dataclass
class AxiomReport:
    subject: str
    window: Optional[tuple[int, int]] = None
    scope: str = "verified on generators"
    checks: list[CheckResult] = field(default_factory=list)
    info: dict[str, str] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def check(self, name: str) -> CheckResult:
        for c in self.checks:
            if c.name == name:
                return c
        c = CheckResult(name)
        self.checks.append(c)
        return c

    def to_text(self, max_defects: int = 5) -> str:
        head = f"{self.subject}: {'PASS' if self.passed else 'FAIL'}"
        lines = [head]
        if self.window is not None:
            lines.append(f"  window: [{self.window[0]}, {self.window[1]}]")
        if self.scope:
            lines.append(f"  scope: {self.scope}")
        for key, val in self.info.items():
            lines.append(f"  {key}: {val}")
        for c in self.checks:
            status = "PASS" if c.passed else f"FAIL ({len(c.defects)} defects)"
            lines.append(f"  {c.name}: {status} [{c.cells} cells]")
            if c.note:
                lines.append(f"    note: {c.note}")
            for cell, d in c.defects[:max_defects]:
                lines.append(f"    {cell}: {d}")
            if len(c.defects) > max_defects:
                lines.append(f"    ... {len(c.defects) - max_defects} more")
        return "\n".join(lines)

    def to_records(self) -> list[dict]:
        out: list[dict] = [
            {
                "record": "report",
                "subject": self.subject,
                "status": "PASS" if self.passed else "FAIL",
                "window": list(self.window) if self.window else None,
                "scope": self.scope,
                "info": dict(self.info),
            }
        ]
        for c in self.checks:
            out.append(
                {
                    "record": "check",
                    "name": c.name,
                    "status": "PASS" if c.passed else "FAIL",
                    "cells": c.cells,
                    "defects": [{"cell": cell, "defect": d} for cell, d in c.defects],
                }
            )
        return out

    def to_json_lines(self) -> str:
        return "\n".join(json.dumps(r, ensure_ascii=False, sort_keys=True) for r in self.to_records())
