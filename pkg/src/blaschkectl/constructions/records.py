"""Per-square construction records, exported as JSON lines."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterator, Optional

from ..const import SquareBranch
from ..errors import ParseError
from ..hypgeo import WhitneySquare


@dataclass(frozen=True)
class Check:
    """One inequality of a construction with its signed margin."""

    passed: bool
    margin: float
    value: Optional[float] = None

    @classmethod
    def at_least(cls, value: float, bound: float) -> "Check":
        return cls(value >= bound, value - bound, value)

    @classmethod
    def at_most(cls, value: float, bound: float) -> "Check":
        return cls(value <= bound, bound - value, value)

    def to_dict(self) -> dict[str, Any]:
        row: dict[str, Any] = {"passed": self.passed, "margin": self.margin}
        if self.value is not None:
            row["value"] = self.value
        return row


@dataclass
class ConstructionRecord:
    k: int
    z: complex
    h_value: float
    radius: Optional[float]
    multiplicity: int
    placed: int = 1
    capped: bool = False
    square: Optional[WhitneySquare] = None
    branch: Optional[SquareBranch] = None
    checks: dict[str, Check] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks.values())

    def to_dict(self) -> dict[str, Any]:
        row: dict[str, Any] = {
            "k": self.k,
            "z_re": self.z.real,
            "z_im": self.z.imag,
            "H": self.h_value,
            "R": self.radius,
            "N": self.multiplicity,
            "placed": self.placed,
            "capped": self.capped,
            "checks": {name: c.to_dict() for name, c in self.checks.items()},
        }
        if self.square is not None:
            row["square"] = [self.square.level, self.square.sector]
        if self.branch is not None:
            row["branch"] = self.branch.value
        return row

    @classmethod
    def from_dict(cls, raw: dict[str, Any]) -> "ConstructionRecord":
        try:
            square = raw.get("square")
            branch = raw.get("branch")
            radius = raw.get("R")
            return cls(
                k=int(raw["k"]),
                z=complex(float(raw["z_re"]), float(raw["z_im"])),
                h_value=float(raw["H"]),
                radius=None if radius is None else float(radius),
                multiplicity=int(raw["N"]),
                placed=int(raw.get("placed", 1)),
                capped=bool(raw.get("capped", False)),
                square=WhitneySquare(int(square[0]), int(square[1])) if square else None,
                branch=SquareBranch(branch) if branch else None,
                checks={
                    name: Check(
                        bool(c["passed"]),
                        float(c["margin"]),
                        None if c.get("value") is None else float(c["value"]),
                    )
                    for name, c in raw.get("checks", {}).items()
                },
            )
        except (KeyError, TypeError, ValueError, IndexError) as exc:
            raise ParseError(f"malformed construction record: {exc}")


@dataclass
class ConstructionLog:
    records: list[ConstructionRecord] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self) -> Iterator[ConstructionRecord]:
        return iter(self.records)

    def append(self, record: ConstructionRecord) -> None:
        self.records.append(record)

    def margins(self, name: str) -> list[float]:
        return [r.checks[name].margin for r in self.records if name in r.checks]

    def values(self, name: str) -> list[float]:
        """Measured values of one check along the log, where recorded."""
        return [
            r.checks[name].value
            for r in self.records
            if name in r.checks and r.checks[name].value is not None
        ]


def is_monotone(values: list[float], increasing: bool = True, rtol: float = 1e-12) -> bool:
    """Whether ``values`` is monotone in the given direction, up to rounding."""
    for a, b in zip(values, values[1:]):
        slack = rtol * max(1.0, abs(a))
        if increasing and b < a - slack:
            return False
        if not increasing and b > a + slack:
            return False
    return True

