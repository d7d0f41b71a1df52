"""Verification reports: pass/fail with exact witnesses."""

from __future__ import annotations

import json
from dataclasses import dataclass, field


@dataclass(frozen=True)
class Witness:
    """First disagreement at one point: ``[q^exponent]`` (or ``[y^exponent]``) of both sides."""

    point: tuple[int, ...]
    exponent: int | tuple[int, ...]
    lhs: int
    rhs: int

    def to_dict(self) -> dict:
        e = list(self.exponent) if isinstance(self.exponent, tuple) else self.exponent
        return {"M": list(self.point), "exponent": e, "lhs": self.lhs, "rhs": self.rhs}


@dataclass
class VerificationReport:
    subject: str
    box: tuple[int, ...]
    order: int
    points: int = 0
    witnesses: list[Witness] = field(default_factory=list)
    failed_points: int = 0
    millis: float = 0.0
    note: str = ""

    @property
    def passed(self) -> bool:
        return self.failed_points == 0

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"

    def record(self, point, lhs_coeffs, rhs_coeffs, max_witnesses: int = 10) -> bool:
        """Compare two coefficient sequences at ``point``; keep the first difference."""
        self.points += 1
        for k, (a, b) in enumerate(zip(lhs_coeffs, rhs_coeffs)):
            if a != b:
                self.failed_points += 1
                if len(self.witnesses) < max_witnesses:
                    self.witnesses.append(Witness(tuple(point), k, a, b))
                return False
        return True

    def merge(self, other: VerificationReport) -> VerificationReport:
        self.points += other.points
        self.failed_points += other.failed_points
        self.witnesses.extend(other.witnesses)
        self.witnesses.sort(key=lambda w: w.point)
        self.millis += other.millis
        return self

    def to_dict(self) -> dict:
        out = {
            "subject": self.subject,
            "box": list(self.box),
            "order": self.order,
            "status": self.status,
            "points": self.points,
            "failed_points": self.failed_points,
            "witnesses": [w.to_dict() for w in self.witnesses],
            "millis": round(self.millis, 1),
        }
        if self.note:
            out["note"] = self.note
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def to_table(self) -> str:
        box = "x".join(str(b) for b in self.box) or "-"
        lines = [
            f"subject  {self.subject}",
            f"box      M_i <= {box}",
            f"order    {self.order}",
            f"points   {self.points} ({self.failed_points} failed)",
            f"status   {self.status}",
            f"millis   {self.millis:.1f}",
        ]
        if self.note:
            lines.append(f"note     {self.note}")
        if self.witnesses:
            lines.append("witnesses:")
            lines.append("  M                 exponent  lhs       rhs")
            for w in self.witnesses:
                e = w.exponent if isinstance(w.exponent, int) else ",".join(map(str, w.exponent))
                point = ",".join(map(str, w.point))
                lines.append(f"  ({point}){'':<{max(0, 16 - len(point))}}{e!s:<10}{w.lhs:<10}{w.rhs}")
        return "\n".join(lines) + "\n"

    def render(self, fmt: str = "table") -> str:
        if fmt == "json":
            return self.to_json()
        if fmt == "table":
            return self.to_table()
        raise ValueError(f"unknown report format {fmt!r}")
