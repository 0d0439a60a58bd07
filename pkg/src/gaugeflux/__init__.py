"""Generalized gauge functions for pairs of electromagnetic systems.

The phase connection between two quantum systems in different potentials
is a scalar whose gradient and time derivative reproduce the potential
differences.  Beyond the classic line-integral (Dirac-phase) form, the
defining equations admit solutions with nonlocal field-flux terms over
the observation rectangle.  This package evaluates those solutions by
numerical quadrature over user-defined field configurations and checks
the identities they satisfy: the defining PDEs, the cancellation of the
two path solutions, Aharonov-Bohm multiplicities, causal behavior of a
time-dependent confined flux, and the semiclassical fringe-shift sign
relation.
"""

from ._version import __version__
from .errors import (DecompositionUnsupportedError, EvaluatorError,
                     FieldAtObservationError, GaugeFluxError, GridFormatError,
                     ScenarioError, SingularPointError, ToleranceNotMetError)
from .fields import (FieldConfig, FluxProfile, PhysicalConstants, Rect,
                     builtin_configs, capacitor_1d, check_consistency,
                     circular_blob, horizontal_strip, load_grid_config,
                     make_config, retarded_flux, retarded_flux_fields,
                     solenoid_flux, spacetime_flux, triangle, vertical_strip,
                     zero_config)
from .quadrature import DEFAULT_SPEC, QuadratureSpec, integrate_1d, integrate_rect
from .solution import GaugeSolution, ResidualReport
from .static2d import (MultiplicityLedger, ObservationFrame, PolarFrame,
                       PolarPoint, ab_multiplicities, annular_flux,
                       cancellation_check, lambda1_static, lambda2_static,
                       lambda_polar, rect_flux, verify_gradient)
from .dynamic1d import (ElectricMultiplicities, SpacetimeFrame,
                        cancellation_check_xt, electric_ab_multiplicities,
                        lambda3_dynamic, lambda4_dynamic, lambda_naive,
                        spacetime_flux_integral, verify_xt_system)
from .full3 import (ConditionSet, Frame3, Ledger3, conditions_from_references,
                    flux_ledger, lambda_full, loop_a_integral,
                    loop_e_time_integral, van_kampen_delta, verify_full_system)
from .semiclassical import (FringeResult, FringeSetupElectric,
                            FringeSetupMagnetic, electric_fringe,
                            magnetic_fringe)
from .scenario import Report, Scenario, emit_csv, emit_json, load_scenario, run_scenario
