"""Exact convergence analysis for rational recurrence sequences."""

from recconv.analyzer import (
    ConditionBreakdown,
    condition_v,
    decide_linear,
    decide_poly_zero,
    fixed_point_residual,
    phi,
    quadratic_family,
)
from recconv.dsl import ParseError, RecurrenceFile, parse, render, to_recurrence
from recconv.gf_verifier import (
    CancellationReport,
    build_A,
    build_B,
    check_example_identity,
    check_linear_identity,
)
from recconv.kernels import BACKEND
from recconv.model import (
    LinearRecurrence,
    PolynomialRecurrence,
    ValidationError,
    Verdict,
    as_polynomial,
    step_linear,
    step_polynomial,
    validate,
)
from recconv.numeric import TruncatedSeries, rational, series_add, series_coeff, series_mul
from recconv.oracle import OracleConfig, decide_combined, simulate
from recconv.xval import GridSpec, SweepReport, sweep_condition_v, sweep_linear

__version__ = "0.1.0"
