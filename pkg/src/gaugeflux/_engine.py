"""Shared two-coordinate solver for the generalized path solutions.

The static (x, y), dynamic (x, t) and polar (rho, phi) problems are the
same system of two PDEs after renaming coordinates, so one engine
computes both path solutions.  Writing (u, v) for the coordinate pair:

    branch 1:  pot_u at v-row  + pot_v at u0-column + { +flux + g(u) } + m1
    branch 2:  pot_u at v0-row + pot_v at u-column  + { -flux + h(v) } + m2

with the gauge-fix functions realized from reference coordinates,

    g(u) = -[ F(u, v_ref) - F(u0, v_ref) ]
    h(v) = +[ F(u_ref, v) - F(u_ref, v_ref) ]

where F(u', v') is the flux over the rectangle spanned by (u0, v0) and
(u', v').  Anchoring both at the same v_ref makes the two branches share
their arbitrary constant, which is what produces the exact cancellation
of the two solutions in simple-connected regions.

Validity is sampled, not assumed: the field difference must vanish at
the observation point, and on the reference patch spanned by the
observation point and the reference coordinates (the patch degenerates
to the segments named in each branch's precondition when the references
take their defaults).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DecompositionUnsupportedError, FieldAtObservationError
from .solution import GaugeSolution

N_VALIDATION_SAMPLES = 9


@dataclass(frozen=True)
class PlaneProblem:
    """Closures binding a concrete configuration to the (u, v) engine."""

    pot_u: Callable[[float, float, float], float]   # (u_a, u_b, v) -> line integral
    pot_v: Callable[[float, float, float], float]   # (v_a, v_b, u) -> line integral
    flux: Callable[[float, float, float, float], float]  # (u_a,u_b,v_a,v_b) signed
    field: Callable[[float, float], float]          # pointwise field difference
    u_name: str = "x"
    v_name: str = "y"


def _axis_samples(a: float, b: float) -> np.ndarray:
    if a == b:
        return np.array([a])
    return np.linspace(min(a, b), max(a, b), N_VALIDATION_SAMPLES)


def validate_frame(problem: PlaneProblem, u0, v0, u, v, u_ref, v_ref,
                   field_tol: float) -> None:
    """Field-free checks at the observation point and reference patch."""
    val = abs(problem.field(u, v))
    if not val <= field_tol:
        raise FieldAtObservationError(
            f"field difference {val:.3e} at observation point "
            f"({problem.u_name}={u:g}, {problem.v_name}={v:g}) exceeds {field_tol:g}",
            point=(u, v), value=val)
    for us in _axis_samples(u, u_ref):
        for vs in _axis_samples(v, v_ref):
            fv = abs(problem.field(float(us), float(vs)))
            if not fv <= field_tol:
                raise DecompositionUnsupportedError(
                    f"gauge-fix function undefined: field {fv:.3e} at "
                    f"({problem.u_name}={us:g}, {problem.v_name}={vs:g}) on the "
                    f"reference patch exceeds {field_tol:g}",
                    coordinate=(float(us), float(vs)), value=fv)


def solve_branch(problem: PlaneProblem, branch: int, lambda0,
                 u0, v0, u, v, u_ref, v_ref,
                 multiplicity: float,
                 branch_name: str, sense: str,
                 field_tol: float = 1e-6,
                 validate: bool = True) -> GaugeSolution:
    if validate:
        validate_frame(problem, u0, v0, u, v, u_ref, v_ref, field_tol)
    if branch == 1:
        dirac = problem.pot_u(u0, u, v) + problem.pot_v(v0, v, u0)
        nonlocal_ = problem.flux(u0, u, v0, v)
        gauge_fix = -(problem.flux(u0, u, v0, v_ref) - problem.flux(u0, u0, v0, v_ref))
    elif branch == 2:
        dirac = problem.pot_u(u0, u, v0) + problem.pot_v(v0, v, u)
        nonlocal_ = -problem.flux(u0, u, v0, v)
        gauge_fix = problem.flux(u0, u_ref, v0, v) - problem.flux(u0, u_ref, v0, v_ref)
    else:
        raise ValueError("branch must be 1 or 2")
    return GaugeSolution.assemble(
        lambda0, dirac, nonlocal_, gauge_fix, multiplicity,
        branch=branch_name, sense=sense,
        extras={problem.u_name + "_ref": u_ref, problem.v_name + "_ref": v_ref},
    )
