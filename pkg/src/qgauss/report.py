"""Machine-readable check outcomes shared by the library and the CLI."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Dict, Optional

from .polyalg import IntPoly

PASS, FAIL, ERROR = "pass", "fail", "error"
STATUSES = (PASS, FAIL, ERROR)


@dataclass
class CheckReport:
    check: str
    params: Dict[str, int]
    status: str
    witness: Optional[IntPoly] = None
    failing_index: Optional[int] = None
    wall_time: float = 0.0
    detail: Optional[str] = None

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"bad status {self.status!r}")
        if self.status == FAIL and self.witness is None:
            raise ValueError("a failing report must carry a witness")

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_dict(self) -> Dict[str, Any]:
        # field order is part of the wire format
        return {
            "check": self.check,
            "params": dict(self.params),
            "status": self.status,
            "witness": None if self.witness is None else self.witness.to_json(),
            "failing_index": self.failing_index,
            "wall_time": self.wall_time,
            "detail": self.detail,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_dict(cls, d: Dict[str, Any]) -> "CheckReport":
        w = d.get("witness")
        return cls(
            check=d["check"],
            params={k: int(v) for k, v in d["params"].items()},
            status=d["status"],
            witness=None if w is None else IntPoly.from_json(w),
            failing_index=d.get("failing_index"),
            wall_time=float(d.get("wall_time", 0.0)),
            detail=d.get("detail"),
        )

    @classmethod
    def from_json(cls, s: str) -> "CheckReport":
        return cls.from_dict(json.loads(s))


def exit_code(reports) -> int:
    """0 when everything passed, 3 if any check errored, else 1 on a failure."""
    statuses = {r.status for r in reports}
    if ERROR in statuses:
        return 3
    if FAIL in statuses:
        return 1
    return 0
