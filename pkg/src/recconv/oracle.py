"""Brute-force exact simulation, the ground truth for every closed-form test.

A run is certified as converged when L consecutive terms equal K *and* the
constant-K window is a fixed point of the rule: from then on the orbit is
constant by forward determinism. Running out of steps proves nothing.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from recconv import kernels
from recconv.analyzer import decide_linear, decide_poly_zero, fixed_point_residual
from recconv.model import (
    DOES_NOT_CONVERGE,
    LinearRecurrence,
    Recurrence,
    Verdict,
    as_polynomial,
    validate,
)
from recconv.numeric import RationalLike, rational


@dataclass(frozen=True)
class OracleConfig:
    max_steps: int = 1000
    max_bits: int = 4096

    def __post_init__(self) -> None:
        if self.max_steps < 1 or self.max_bits < 1:
            raise ValueError("max_steps and max_bits must be positive")


@dataclass(frozen=True)
class Converged:
    M: int
    trajectory: tuple[Fraction, ...]
    kind = "converged"


@dataclass(frozen=True)
class NotWithinBound:
    steps: int
    trajectory: tuple[Fraction, ...]
    kind = "not-within-bound"


@dataclass(frozen=True)
class Blowup:
    step: int
    bits: int
    trajectory: tuple[Fraction, ...]
    kind = "blowup"


OracleOutcome = Union[Converged, NotWithinBound, Blowup]


def simulate(rec: Recurrence, K: RationalLike, cfg: OracleConfig = OracleConfig()) -> OracleOutcome:
    validate(rec)
    K = rational(K)
    poly = as_polynomial(rec)
    certify = fixed_point_residual(poly, K) == 0
    exps = [e for e, _ in poly.terms]
    coeffs = [c for _, c in poly.terms]
    status, traj, steps, bits = kernels.iterate(
        exps, coeffs, poly.initials, K, certify, cfg.max_steps, cfg.max_bits
    )
    traj = tuple(traj)
    if status == kernels.CONVERGED:
        m = len(traj) - 1
        while m > 0 and traj[m - 1] == K:
            m -= 1
        return Converged(m, traj)
    if status == kernels.BLOWUP:
        return Blowup(steps, bits, traj)
    return NotWithinBound(steps, traj)


def decide_combined(rec: Recurrence, K: RationalLike, cfg: OracleConfig = OracleConfig()) -> Verdict:
    """Closed forms first, simulation last.

    Linear recurrences are settled by their exact criteria. Polynomial ones go
    through the target-0 gate, the fixed-point gate, then the oracle.
    """
    K = rational(K)
    validate(rec)
    if isinstance(rec, LinearRecurrence):
        verdict, breakdown = decide_linear(rec, K)
        return Verdict(
            verdict.outcome,
            verdict.method,
            M=verdict.M,
            reason=verdict.reason,
            details={"clauses": breakdown.clauses, "overall": breakdown.overall},
        )
    if K == 0:
        gate = decide_poly_zero(rec)
        if gate.outcome == DOES_NOT_CONVERGE:
            return gate
    residual = fixed_point_residual(rec, K)
    if residual != 0:
        return Verdict.does_not_converge(
            f"K is not a fixed point (residual {residual})",
            "fixed-point",
            details={"residual": residual},
        )
    outcome = simulate(rec, K, cfg)
    if isinstance(outcome, Converged):
        return Verdict.converges(outcome.M, "oracle", details={"residual": residual})
    if isinstance(outcome, Blowup):
        return Verdict.unknown(outcome.step, True, "oracle", details={"bits": outcome.bits})
    return Verdict.unknown(outcome.steps, False, "oracle")
