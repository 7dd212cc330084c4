"""Verification reports and their JSON / text serialisations."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

PASS = "pass"
FAIL = "fail"


@dataclass
class CheckResult:
    name: str
    status: str
    witness: Optional[str] = None
    detail: Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {"name": self.name, "status": self.status}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.detail is not None:
            out["detail"] = self.detail
        return out


@dataclass
class VerificationReport:
    group: Optional[str]
    s: int
    checks: List[CheckResult] = field(default_factory=list)
    dimension: Optional[int] = None
    f: Optional[int] = None
    tau: Optional[int] = None
    chi: Optional[int] = None
    runtime_ms: float = 0.0

    def add(self, name: str, ok: bool, witness: Optional[str] = None,
            detail: Optional[str] = None) -> CheckResult:
        result = CheckResult(name, PASS if ok else FAIL, None if ok else witness, detail)
        self.checks.append(result)
        return result

    def extend(self, other: "VerificationReport"):
        self.checks.extend(other.checks)
        for key in ("dimension", "f", "tau", "chi"):
            if getattr(other, key) is not None:
                setattr(self, key, getattr(other, key))

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> List[CheckResult]:
        return [c for c in self.checks if not c.passed]

    def check(self, name: str) -> CheckResult:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {"group": self.group, "s": self.s,
                               "checks": [c.to_dict() for c in self.checks]}
        for key in ("dimension", "f", "tau", "chi"):
            value = getattr(self, key)
            if value is not None:
                out[key] = value
        out["runtime_ms"] = round(self.runtime_ms, 3)
        return out

    def to_text(self) -> str:
        head = f"{self.group or '-'} s={self.s}"
        lines = [head]
        for c in self.checks:
            line = f"  [{c.status}] {c.name}"
            if c.witness is not None:
                line += f"  witness: {c.witness}"
            if c.detail is not None:
                line += f"  ({c.detail})"
            lines.append(line)
        extras = [f"{k}={getattr(self, k)}" for k in ("dimension", "f", "tau", "chi")
                  if getattr(self, k) is not None]
        if extras:
            lines.append("  " + " ".join(extras))
        lines.append(f"  runtime_ms={self.runtime_ms:.1f}")
        return "\n".join(lines)


def dump_reports(reports: List[VerificationReport], tool_version: str,
                 config: Dict[str, Any], indent: int = 2) -> str:
    payload = {"tool_version": tool_version, "config": config,
               "reports": [r.to_dict() for r in reports]}
    return json.dumps(payload, indent=indent, sort_keys=False)
