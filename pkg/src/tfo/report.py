"""Structured results of verification suites."""

from __future__ import annotations

import math
from dataclasses import dataclass, field


@dataclass(frozen=True)
class Claim:
    """One checked statement.

    ``passed`` is ``None`` for informational entries that are reported but not
    asserted (e.g. a check that does not apply at the working tolerance).
    """

    id: str
    anchor: str
    value: float | None
    tol: float | None
    passed: bool | None

    @classmethod
    def at_most(cls, id: str, anchor: str, value: float, tol: float) -> Claim:
        value = float(value)
        return cls(id, anchor, value, tol, bool(math.isfinite(value) and value <= tol))

    @classmethod
    def at_least(cls, id: str, anchor: str, value: float, tol: float) -> Claim:
        value = float(value)
        return cls(id, anchor, value, tol, bool(math.isfinite(value) and value >= tol))

    @classmethod
    def flag(cls, id: str, anchor: str, ok: bool, value: float | None = None) -> Claim:
        return cls(id, anchor, value, None, bool(ok))

    @classmethod
    def info(cls, id: str, anchor: str, value: float | None = None,
             tol: float | None = None) -> Claim:
        return cls(id, anchor, None if value is None else float(value), tol, None)

    def to_dict(self) -> dict:
        return {"id": self.id, "anchor": self.anchor, "value": self.value,
                "tol": self.tol, "pass": self.passed}


@dataclass
class SpectralReport:
    suite: str
    claims: list[Claim] = field(default_factory=list)
    grid: dict = field(default_factory=dict)
    seed: int | None = None
    data: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed is not False for c in self.claims)

    @property
    def failures(self) -> list[Claim]:
        return [c for c in self.claims if c.passed is False]

    def add(self, claim: Claim) -> Claim:
        self.claims.append(claim)
        return claim

    def extend(self, claims, prefix: str = "") -> None:
        for c in claims:
            if prefix:
                c = Claim(f"{prefix}.{c.id}", c.anchor, c.value, c.tol, c.passed)
            self.claims.append(c)

    def merge(self, other: SpectralReport, prefix: str | None = None) -> None:
        self.extend(other.claims, prefix=other.suite if prefix is None else prefix)

    def claim(self, id: str) -> Claim:
        for c in self.claims:
            if c.id == id:
                return c
        raise KeyError(id)

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "grid": {k: self.grid.get(k) for k in ("kind", "a", "cutoff", "n")},
            "seed": self.seed,
            "claims": [c.to_dict() for c in self.claims],
        }

    def summary(self) -> str:
        lines = [f"[{self.suite}] {'PASS' if self.passed else 'FAIL'}"]
        for c in self.claims:
            mark = {True: "pass", False: "FAIL", None: "info"}[c.passed]
            val = "-" if c.value is None else f"{c.value:.3e}"
            tol = "" if c.tol is None else f" (tol {c.tol:.1e})"
            lines.append(f"  {mark:4s} {c.id}: {val}{tol}  [{c.anchor}]")
        return "\n".join(lines)
