"""Machine-readable run reports.

JSON layout::

    {
      "metadata": {"command": ..., "preset": ..., "p": ..., "version": ..., ...},
      "tables": {name: {"window": {s_min, s_max, t_min, t_max},
                        "entries": [[s, t, dim], ...]}},
      "verdicts": [{"name": ..., "passed": bool, "detail": str,
                    "witness": null | {"bidegree": [s, t], "left": int, "right": int}}],
      "passed": bool
    }

Keys are sorted and no wall-clock data is recorded, so identical flags give
byte-identical documents.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field

from .fpgca import Bidegree, BigradedDimTable


@dataclass(frozen=True)
class Witness:
    bidegree: Bidegree
    left: int
    right: int


@dataclass(frozen=True)
class Verdict:
    name: str
    passed: bool
    detail: str = ""
    witness: Witness | None = None

    def __post_init__(self):
        if not self.passed and self.witness is None:
            raise ValueError(f"failing verdict {self.name!r} needs a witness")

    def as_dict(self) -> dict:
        w = None
        if self.witness is not None:
            w = {
                "bidegree": list(self.witness.bidegree),
                "left": self.witness.left,
                "right": self.witness.right,
            }
        return {"name": self.name, "passed": self.passed, "detail": self.detail, "witness": w}


@dataclass
class Report:
    metadata: dict = field(default_factory=dict)
    tables: dict = field(default_factory=dict)
    verdicts: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(v.passed for v in self.verdicts)

    def add_table(self, name: str, table: BigradedDimTable) -> None:
        self.tables[name] = table

    def add(self, verdict: Verdict) -> None:
        self.verdicts.append(verdict)

    def merge(self, other: "Report", prefix: str) -> None:
        for name, table in other.tables.items():
            self.tables[f"{prefix}.{name}"] = table
        for v in other.verdicts:
            self.verdicts.append(Verdict(f"{prefix}.{v.name}", v.passed, v.detail, v.witness))

    def as_dict(self) -> dict:
        return {
            "metadata": self.metadata,
            "tables": {
                name: {"window": t.window.as_dict(), "entries": t.rows()}
                for name, t in self.tables.items()
            },
            "verdicts": [v.as_dict() for v in self.verdicts],
            "passed": self.passed,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True, indent=2) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["table", "s", "t", "dim"])
        for name in sorted(self.tables):
            for s, t, d in self.tables[name].rows():
                writer.writerow([name, s, t, d])
        return buf.getvalue()

    def summary(self) -> str:
        lines = []
        for v in self.verdicts:
            mark = "PASS" if v.passed else "FAIL"
            extra = ""
            if v.witness is not None:
                w = v.witness
                extra = f" at {tuple(w.bidegree)}: {w.left} vs {w.right}"
            lines.append(f"{mark} {v.name}{extra}")
        return "\n".join(lines)
