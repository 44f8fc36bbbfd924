"""Check reports with a stable JSON form."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field


def _clean(v):
    if isinstance(v, float):
        if math.isnan(v) or math.isinf(v):
            return repr(v)
        return float(v)
    if isinstance(v, dict):
        return {str(k): _clean(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_clean(x) for x in v]
    if hasattr(v, "item"):
        return _clean(v.item())
    return v


@dataclass
class Report:
    check: str
    params: dict
    tolerance: float
    passed: bool
    residual: float | None = None
    ratio: float | None = None
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        d = {"check": self.check, "params": _clean(self.params)}
        if self.residual is not None:
            d["residual"] = _clean(float(self.residual))
        if self.ratio is not None:
            d["ratio"] = _clean(float(self.ratio))
        d["tolerance"] = float(self.tolerance)
        d["pass"] = bool(self.passed)
        if self.extra:
            d["extra"] = _clean(self.extra)
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def reports_to_json(reports) -> str:
    return json.dumps([r.to_dict() for r in reports], indent=2, sort_keys=True)
