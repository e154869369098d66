"""Residual reports shared by every verification routine."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


def relative_residual(lhs: complex, rhs: complex) -> float:
    """|lhs - rhs| / (1 + |lhs|), safe near zeros of either side."""
    return abs(lhs - rhs) / (1.0 + abs(lhs))


@dataclass(frozen=True)
class ResidualReport:
    """Outcome of one numerical check.

    ``passed`` is always ``residual <= tol``; ``extra`` carries
    check-specific diagnostics (literal-constant residuals, fitted
    constants, widths, ...).
    """

    name: str
    params: dict[str, Any]
    lhs: complex
    rhs: complex
    residual: float
    tol: float
    extra: dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return bool(self.residual <= self.tol)

    def as_row(self) -> dict[str, Any]:
        row = {"name": self.name}
        row.update(self.params)
        row.update(
            lhs_re=complex(self.lhs).real,
            lhs_im=complex(self.lhs).imag,
            rhs_re=complex(self.rhs).real,
            rhs_im=complex(self.rhs).imag,
            residual=float(self.residual),
            tol=float(self.tol),
            passed=self.passed,
        )
        row.update(self.extra)
        return row


@dataclass(frozen=True)
class VariantReport:
    """Several candidate readings of one relation, scored side by side.

    ``selected`` names the first reading (in the fixed order of ``rows``)
    whose residual is within tolerance, or ``None`` if none is.
    """

    check: str
    params: dict[str, Any]
    rows: tuple[ResidualReport, ...]

    @property
    def selected(self) -> str | None:
        for row in self.rows:
            if row.passed:
                return row.name
        return None

    @property
    def passed(self) -> bool:
        return self.selected is not None

    def residual(self, name: str) -> float:
        for row in self.rows:
            if row.name == name:
                return row.residual
        raise KeyError(name)
