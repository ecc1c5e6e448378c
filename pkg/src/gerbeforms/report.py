"""Per-equation residual records."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .matrix import Matrix
from .poly import Poly, format_poly


def _leading_poly(p: Poly, names=None) -> str:
    exp, c = p.leading_term()
    return format_poly(Poly(p.dim, {exp: c}), names)


def leading_term(residual, names: Sequence[str] | None = None) -> str | None:
    """Human-readable leading nonzero term of a residual, ``None`` if it vanishes."""
    if residual is None:
        return None
    if hasattr(residual, "leading_term_str"):
        return residual.leading_term_str(names)
    if isinstance(residual, Poly):
        return None if residual.is_zero() else _leading_poly(residual, names)
    if isinstance(residual, Matrix):
        for i, row in enumerate(residual.rows):
            for j, x in enumerate(row):
                if not x.is_zero():
                    text = (x.leading_term_str(names) if hasattr(x, "leading_term_str")
                            else _leading_poly(x, names))
                    return f"[{i + 1},{j + 1}] {text}"
        return None
    raise TypeError(f"cannot describe residual of type {type(residual).__name__}")


def is_zero_residual(residual) -> bool:
    return residual.is_zero()


@dataclass(frozen=True)
class Record:
    equation: str
    index: tuple = ()
    passed: bool = True
    leading: str | None = None
    note: str = ""

    @property
    def status(self) -> str:
        return "PASS" if self.passed else "FAIL"

    @classmethod
    def from_residual(cls, equation: str, index: tuple, residual, names=None, note: str = "") -> Record:
        lead = leading_term(residual, names)
        return cls(equation, tuple(index), lead is None, lead, note)

    def to_dict(self) -> dict:
        return {
            "equation": self.equation,
            "index": list(self.index),
            "status": self.status,
            "leading": self.leading,
        }


@dataclass
class Report:
    title: str = ""
    records: list[Record] = field(default_factory=list)

    def add(self, record: Record) -> Record:
        self.records.append(record)
        return record

    def check(self, equation: str, index: tuple, residual, names=None) -> Record:
        return self.add(Record.from_residual(equation, index, residual, names))

    def extend(self, records: Iterable[Record]) -> None:
        self.records.extend(records)

    def merge(self, other: Report) -> Report:
        self.records.extend(other.records)
        return self

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records)

    def failures(self) -> list[Record]:
        return [r for r in self.records if not r.passed]

    def equations(self) -> list[str]:
        seen: dict[str, None] = {}
        for r in self.records:
            seen.setdefault(r.equation, None)
        return list(seen)

    def first_failure(self, equation: str | None = None) -> Record | None:
        for r in self.records:
            if not r.passed and (equation is None or r.equation == equation):
                return r
        return None

    def summary(self) -> dict:
        npass = sum(r.passed for r in self.records)
        return {"total": len(self.records), "passed": npass, "failed": len(self.records) - npass}

    def by_equation(self) -> dict[str, tuple[int, int]]:
        out: dict[str, list[int]] = {}
        for r in self.records:
            c = out.setdefault(r.equation, [0, 0])
            c[0 if r.passed else 1] += 1
        return {k: (v[0], v[1]) for k, v in out.items()}
