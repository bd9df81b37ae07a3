"""Exact drifting Rossby-wave and vortex solutions of the 3-D Charney-Obukhov equation."""
from .errors import (
    BadParameter,
    ConfigError,
    ConstraintViolation,
    DomainError,
    EvaluationError,
    FieldIOError,
    MixedWavenumbers,
    OutOfEnvelope,
    ResonantDepth,
    RossbyError,
    WavenumberMismatch,
)
from .bessel import bessel_j, bessel_j_table
from .families import FAMILY_SUMMARY, Solution, build_solution, compute_M, eval_solution, vertical_profile
from .fieldio import FieldBlock, GridSpec, export_csv, export_vtk, read_csv, sample_grid, write_report
from .helmholtz import BesselVortex, PlaneWave, Superposition, bessel_vortex, plane_wave, superpose
from .model import FamilySpec, PhysicalParams, ValidatedSpec, resonance_sweep, validate
from .verify import SamplingPlan, VerificationReport, verify_solution

__version__ = "0.1.0"
