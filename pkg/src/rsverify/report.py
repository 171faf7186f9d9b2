from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass, field


@dataclass
class VerificationReport:
    """Outcome of one check, in the shape the CLI serializes."""

    check: str
    params: dict = field(default_factory=dict)
    status: str = "pass"
    detail: str = ""
    residual: float | None = None
    duration_ms: float = 0.0

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def __bool__(self):
        return self.passed

    def sort_key(self):
        """Check name, then parameters in key order with numbers compared numerically."""
        def natural(v):
            if isinstance(v, (int, float)) and not isinstance(v, bool):
                return (0, v, "")
            return (1, 0, json.dumps(v, sort_keys=True))
        return (self.check, tuple((k, natural(v)) for k, v in sorted(self.params.items())))

    def to_dict(self, include_duration: bool = True) -> dict:
        residual = self.residual
        if residual is not None and not math.isfinite(residual):
            residual = None
        out = {
            "check": self.check,
            "params": self.params,
            "status": self.status,
            "detail": self.detail,
            "residual": residual,
        }
        if include_duration:
            out["duration_ms"] = round(self.duration_ms, 3)
        return out

    def to_text(self) -> str:
        params = ", ".join(f"{k}={v}" for k, v in sorted(self.params.items()))
        line = f"[{self.status.upper()}] {self.check} ({params})"
        if self.residual is not None:
            line += f" residual={self.residual:.3e}"
        if self.detail:
            line += f" :: {self.detail}"
        return line


def make_report(check: str, params: dict, passed: bool, detail: str = "",
                residual: float | None = None, started: float | None = None) -> VerificationReport:
    duration = 0.0 if started is None else (time.perf_counter() - started) * 1e3
    return VerificationReport(check, dict(params), "pass" if passed else "fail",
                              detail, None if residual is None else float(residual), duration)


def render_json(reports, include_duration: bool = True) -> str:
    return json.dumps([r.to_dict(include_duration) for r in reports], indent=2,
                      sort_keys=False, ensure_ascii=False)


def render_text(reports) -> str:
    lines = [r.to_text() for r in reports]
    n_pass = sum(r.passed for r in reports)
    lines.append(f"{n_pass}/{len(reports)} checks passed")
    return "\n".join(lines)
