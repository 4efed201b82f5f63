"""Closed-form convergence deciders.

Linear recurrences get the four exact criteria (homogeneous/non-homogeneous,
target zero/non-zero). Polynomial recurrences get the cheap necessary
gates, plus the extracted condition ``V`` for the three-lag quadratic family

    r_i = a1 (r_{i-1} - r_{i-3}) + a2 r_{i-2}^2 + a3 r_{i-3} r_{i-1} + d.

``V`` is evaluated verbatim, without correction; it is known to disagree
with direct iteration on some inputs (see ``recconv.xval``).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Optional, Sequence

from recconv.model import (
    LinearRecurrence,
    PolynomialRecurrence,
    Recurrence,
    Verdict,
    as_polynomial,
    step_polynomial,
    validate,
)
from recconv.numeric import RationalLike, rational


class Clause(NamedTuple):
    name: str
    value: Fraction
    satisfied: bool


@dataclass(frozen=True)
class ConditionBreakdown:
    clauses: tuple[Clause, ...]
    overall: bool

    def clause(self, name: str) -> Clause:
        for c in self.clauses:
            if c.name == name:
                return c
        raise KeyError(name)


def _eq(name: str, value: Fraction) -> Clause:
    return Clause(name, value, value == 0)


def decide_linear(rec: LinearRecurrence, K: RationalLike) -> tuple[Verdict, ConditionBreakdown]:
    """Exact verdict for a linear recurrence and target ``K``.

    Success always comes with M = 0: a run of L terms equal to K can be
    unwound backwards uniquely because a_L != 0.
    """
    validate(rec)
    K = rational(K)
    d = rec.constant
    total = sum(rec.coeffs, Fraction(0))

    if d == 0 and K == 0:
        method = "theorem-1"
        clauses = [_eq(f"c{i} = 0", c) for i, c in enumerate(rec.initials)]
    elif d == 0:
        method = "theorem-2"
        clauses = [_eq(f"c{i} = K", c - K) for i, c in enumerate(rec.initials)]
        clauses.append(_eq("sum(a) = 1", total - 1))
    elif K == 0:
        method = "theorem-3"
        clauses = [_eq("d = 0", d)]
    else:
        method = "theorem-4"
        clauses = [_eq(f"c{i} = K", c - K) for i, c in enumerate(rec.initials)]
        clauses.append(_eq("sum(a) = 1 - d/K", total - (1 - d / K)))

    overall = all(c.satisfied for c in clauses)
    breakdown = ConditionBreakdown(tuple(clauses), overall)
    if overall:
        return Verdict.converges(0, method), breakdown
    if method == "theorem-3":
        reason = "a nonzero constant term rules out convergence to 0"
    else:
        reason = "failed: " + ", ".join(c.name for c in clauses if not c.satisfied)
    return Verdict.does_not_converge(reason, method), breakdown


def fixed_point_residual(rec: Recurrence, K: RationalLike) -> Fraction:
    """step(K, ..., K) - K; zero exactly when the constant-K sequence is a fixed point."""
    poly = as_polynomial(rec)
    K = rational(K)
    return step_polynomial(poly, [K] * poly.order) - K


def decide_poly_zero(rec: PolynomialRecurrence) -> Verdict:
    """Target-0 gate: a nonzero constant term follows any run of zeros."""
    d = as_polynomial(rec).constant
    if d != 0:
        return Verdict.does_not_converge(
            f"constant term {d} follows any run of zeros", "theorem-3"
        )
    return Verdict.unknown(0, False, "theorem-3", reason="no closed form when the constant term is 0")


def quadratic_family(
    a1: RationalLike,
    a2: RationalLike,
    a3: RationalLike,
    d: RationalLike,
    initials: Sequence[RationalLike],
) -> PolynomialRecurrence:
    """The order-3 rule a1(r1 - r3) + a2 r2^2 + a3 r3 r1 + d (r_k = r_{i-k}).

    Every term is kept even when its coefficient is zero, so the declared
    order stays 3 for all parameter values.
    """
    a1 = rational(a1)
    terms = {
        (1, 0, 0): a1,
        (0, 0, 1): -a1,
        (0, 2, 0): rational(a2),
        (1, 0, 1): rational(a3),
        (0, 0, 0): rational(d),
    }
    return PolynomialRecurrence(3, terms, initials, degree_bound=2)


_FAMILY_KEYS = {(1, 0, 0), (0, 0, 1), (0, 2, 0), (1, 0, 1), (0, 0, 0)}


def match_quadratic_family(rec: Recurrence) -> Optional[tuple[Fraction, Fraction, Fraction, Fraction]]:
    """Return (a1, a2, a3, d) if ``rec`` is an instance of the family, else None."""
    if not isinstance(rec, PolynomialRecurrence) or rec.order != 3:
        return None
    terms = rec.term_map()
    if not set(terms) <= _FAMILY_KEYS:
        return None
    z = Fraction(0)
    a1 = terms.get((1, 0, 0), z)
    if terms.get((0, 0, 1), z) != -a1:
        return None
    return a1, terms.get((0, 2, 0), z), terms.get((1, 0, 1), z), terms.get((0, 0, 0), z)


def condition_v(
    a1: RationalLike,
    a2: RationalLike,
    a3: RationalLike,
    d: RationalLike,
    c0: RationalLike,
    c1: RationalLike,
    c2: RationalLike,
    K: RationalLike,
) -> ConditionBreakdown:
    """Evaluate the extracted convergence condition for the quadratic family.

    V = fixed-point AND sum-clause AND (plus-clause OR minus-clause).
    """
    a1, a2, a3, d, c0, c1, c2, K = map(rational, (a1, a2, a3, d, c0, c1, c2, K))
    K2 = K * K
    fixed = _eq("fixed-point", K - a2 * K2 - a3 * K2 - d)
    summed = _eq(
        "sum",
        c0 - 3 * d + c1 - a1 * c0 + c2 - a1 * c1 - a2 * c0 * c0
        + 2 * a1 * K - 2 * a2 * K2 - a3 * K2,
    )
    plus = _eq("alternating-plus", 2 * K2 * a3 + d)
    minus = _eq("alternating-minus", 2 * K2 * a3 - d)
    overall = fixed.satisfied and summed.satisfied and (plus.satisfied or minus.satisfied)
    return ConditionBreakdown((fixed, summed, plus, minus), overall)


def phi(
    prefix: Sequence[RationalLike],
    M: int,
    a2: RationalLike,
    a3: RationalLike,
    d: RationalLike,
) -> Fraction:
    """Alternating sums over r_0..r_{M-1} used in the x = -1 analysis.

    Needs r_{M+1} for the r_i r_{i+2} products, so ``prefix`` must hold
    M + 2 terms when M > 0.
    """
    if M < 0:
        raise ValueError("M must be non-negative")
    if M == 0:
        return Fraction(0)
    if len(prefix) < M + 2:
        raise ValueError(f"prefix needs {M + 2} terms for M={M}, got {len(prefix)}")
    r = [rational(x) for x in prefix]
    a2, a3, d = rational(a2), rational(a3), rational(d)
    lin = sq = cross = signs = Fraction(0)
    for i in range(M):
        s = 1 if i % 2 == 0 else -1
        lin += s * r[i]
        sq += s * r[i] * r[i]
        cross += s * r[i] * r[i + 2]
        signs += s
    return lin - a2 * sq + a3 * cross - d * signs
