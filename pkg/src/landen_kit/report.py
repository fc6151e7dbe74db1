from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Any, Iterable


def residual(lhs, rhs) -> float:
    """|lhs - rhs|, made relative once the values exceed 1 in magnitude."""
    scale = max(1.0, abs(lhs), abs(rhs))
    return abs(lhs - rhs) / scale


@dataclass
class ResidualReport:
    """Outcome of checking one identity over a set of sample points."""

    id: str
    params: dict
    samples: list = field(default_factory=list)
    max_residual: float = 0.0
    tol: float = 0.0
    skipped: int = 0
    error: str | None = None
    extra: dict = field(default_factory=dict)

    @property
    def evaluated(self) -> int:
        return len(self.samples)

    @property
    def passed(self) -> bool:
        return self.error is None and self.evaluated > 0 and self.max_residual < self.tol

    @property
    def status(self) -> str:
        if self.error is not None:
            return "error"
        if self.evaluated == 0:
            return "skipped-pole" if self.skipped else "empty"
        return "pass" if self.passed else "fail"

    def add(self, sample: Any, lhs, rhs) -> float:
        r = residual(lhs, rhs)
        self.samples.append(sample)
        self.max_residual = max(self.max_residual, r)
        return r

    @classmethod
    def from_pairs(cls, id: str, params: dict, pairs: Iterable, tol: float, samples=None) -> "ResidualReport":
        rep = cls(id=id, params=dict(params), tol=tol)
        pairs = list(pairs)
        samples = samples if samples is not None else list(range(len(pairs)))
        for s, (lhs, rhs) in zip(samples, pairs):
            rep.add(s, lhs, rhs)
        return rep

    def merge(self, other: "ResidualReport") -> None:
        self.samples.extend(other.samples)
        self.max_residual = max(self.max_residual, other.max_residual)
        self.skipped += other.skipped
        if other.error and not self.error:
            self.error = other.error

    def to_dict(self) -> dict:
        d = asdict(self)
        d["status"] = self.status
        d["evaluated"] = self.evaluated
        return d
