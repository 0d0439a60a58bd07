"""Result records shared by all solvers."""

from __future__ import annotations

from dataclasses import dataclass, field

__all__ = ["GaugeSolution", "ResidualReport"]


@dataclass(frozen=True)
class GaugeSolution:
    """One computed gauge-function value and its decomposition.

    ``lambda_value = lambda0 + dirac_part + nonlocal_part +
    gauge_fix_part + multiplicity_part`` holds exactly by construction.
    ``branch`` names which path solution produced the value; ``extras``
    carries solver-specific detail (segment senses, sub-splits).
    """

    lambda_value: float
    lambda0: float
    dirac_part: float
    nonlocal_part: float
    gauge_fix_part: float
    multiplicity_part: float
    branch: str
    sense: str = ""
    extras: dict = field(default_factory=dict)

    @classmethod
    def assemble(cls, lambda0, dirac, nonlocal_, gauge_fix, multiplicity,
                 branch, sense="", extras=None):
        return cls(
            lambda_value=lambda0 + dirac + nonlocal_ + gauge_fix + multiplicity,
            lambda0=lambda0,
            dirac_part=dirac,
            nonlocal_part=nonlocal_,
            gauge_fix_part=gauge_fix,
            multiplicity_part=multiplicity,
            branch=branch,
            sense=sense,
            extras=extras or {},
        )


@dataclass(frozen=True)
class ResidualReport:
    """Finite-difference residuals of the defining PDE system at a point."""

    residuals: dict
    tol: float
    passed: bool
    point: tuple
    branch: str = ""

    @property
    def max_residual(self) -> float:
        return max(abs(v) for v in self.residuals.values())

    def __str__(self):
        status = "pass" if self.passed else "FAIL"
        parts = ", ".join(f"{k}={v:.3e}" for k, v in self.residuals.items())
        return f"residuals {status} at {self.point}: {parts} (tol {self.tol:g})"
