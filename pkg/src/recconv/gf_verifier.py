"""Exact checks of the generating-function identities on truncated series.

For a trajectory obeying the rule, R(x) = A(x)P(x) - B(x) has a short head
(degrees below L), vanishes identically on degrees L..N, and has an L-term
tail past x^N. Every check here is exact; there is no tolerance anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Optional, Sequence

from recconv.analyzer import quadratic_family
from recconv.model import LinearRecurrence, trajectory, validate
from recconv.numeric import RationalLike, TruncatedSeries, rational
from recconv.oracle import Converged, OracleConfig, simulate


class CoeffCheck(NamedTuple):
    index: int
    expected: Fraction
    actual: Fraction

    @property
    def ok(self) -> bool:
        return self.expected == self.actual


@dataclass(frozen=True)
class CancellationReport:
    degree: int
    head: tuple[CoeffCheck, ...]
    middle: tuple[int, int]
    middle_zero: bool
    first_violation: Optional[int]
    tail: tuple[CoeffCheck, ...]
    # tail against the closed forms in K, only when the run has settled at K
    tail_limit: Optional[tuple[CoeffCheck, ...]]
    coefficients: tuple[Fraction, ...]

    @property
    def ok(self) -> bool:
        checks = list(self.head) + list(self.tail) + list(self.tail_limit or ())
        return self.middle_zero and all(c.ok for c in checks)


def build_A(rec: LinearRecurrence, D: int) -> TruncatedSeries:
    """1 - a_1 x - ... - a_L x^L."""
    if D < rec.order:
        raise ValueError(f"degree bound {D} is below the order {rec.order}")
    return TruncatedSeries.from_coeffs([1] + [-a for a in rec.coeffs], D)


def build_B(rec: LinearRecurrence, N: int, D: int) -> TruncatedSeries:
    """d (x^L + ... + x^N)."""
    L = rec.order
    if N < L:
        raise ValueError(f"N={N} must be at least the order {L}")
    if D < N:
        raise ValueError(f"degree bound {D} is below N={N}")
    return TruncatedSeries.from_coeffs([0] * L + [rec.constant] * (N - L + 1), D)


def _middle(R: TruncatedSeries, lo: int, hi: int) -> tuple[bool, Optional[int]]:
    for i in range(lo, hi + 1):
        if R.coefficients[i] != 0:
            return False, i
    return True, None


def linear_identity(
    rec: LinearRecurrence,
    traj: Sequence[RationalLike],
    K: Optional[RationalLike] = None,
) -> CancellationReport:
    """Report on R = A P - B for an explicit trajectory p_0..p_N.

    ``traj`` need not obey the rule; that is how the middle check is shown
    to be sensitive. Passing ``K`` asserts the run has settled at K and adds
    the closed-form tail comparison.
    """
    p = [rational(x) for x in traj]
    a = rec.coeffs
    L = rec.order
    N = len(p) - 1
    D = N + L
    R = build_A(rec, D) * TruncatedSeries.from_coeffs(p, D) - build_B(rec, N, D)
    rc = R.coefficients

    head = tuple(
        CoeffCheck(i, p[i] - sum((a[k - 1] * p[i - k] for k in range(1, i + 1)), Fraction(0)), rc[i])
        for i in range(L)
    )
    zero, first = _middle(R, L, N)
    tail = tuple(
        CoeffCheck(
            N + j,
            -sum((a[k - 1] * p[N + j - k] for k in range(j, L + 1)), Fraction(0)),
            rc[N + j],
        )
        for j in range(1, L + 1)
    )
    tail_limit = None
    if K is not None:
        K = rational(K)
        tail_limit = tuple(
            CoeffCheck(N + j, K * -sum(a[j - 1:], Fraction(0)), rc[N + j]) for j in range(1, L + 1)
        )
    return CancellationReport(N, head, (L, N), zero, first, tail, tail_limit, rc)


def _settled(rec, K, N: int, lag: int) -> bool:
    out = simulate(rec, K, OracleConfig(max_steps=max(N, 1), max_bits=1 << 40))
    return isinstance(out, Converged) and out.M <= N - lag


def check_linear_identity(rec: LinearRecurrence, K: Optional[RationalLike], N: int) -> CancellationReport:
    validate(rec)
    if N < rec.order:
        raise ValueError(f"N={N} must be at least the order {rec.order}")
    p = trajectory(rec, N + 1)
    settled = K is not None and _settled(rec, K, N, rec.order)
    return linear_identity(rec, p, K if settled else None)


def example_identity(
    a1: RationalLike,
    a2: RationalLike,
    a3: RationalLike,
    d: RationalLike,
    traj: Sequence[RationalLike],
    K: Optional[RationalLike] = None,
) -> CancellationReport:
    """R = A1 P1 + A2 P2 + A3 P3 + A4 P4 for the quadratic family, given r_0..r_N."""
    a1, a2, a3, d = map(rational, (a1, a2, a3, d))
    r = [rational(x) for x in traj]
    N = len(r) - 1
    if N < 3:
        raise ValueError(f"N={N} must be at least 3")
    D = N + 3
    S = TruncatedSeries.from_coeffs
    A1 = S([1, -a1, 0, a1], D)
    A2 = S([0, 0, -a2], D)
    A3 = S([0, 0, 0, -a3], D)
    A4 = S([-d], D)
    P1 = S(r, D)
    P2 = S([x * x for x in r], D)
    P3 = S([r[i] * r[i + 2] for i in range(N - 1)], D)  # stops at r_{N-2} r_N
    P4 = S([1] * (N + 1), D)
    R = A1 * P1 + A2 * P2 + A3 * P3 + A4 * P4
    rc = R.coefficients

    head_expected = (
        r[0] - d,
        r[1] - a1 * r[0] - d,
        r[2] - a1 * r[1] - a2 * r[0] ** 2 - d,
    )
    head = tuple(CoeffCheck(i, head_expected[i], rc[i]) for i in range(3))
    zero, first = _middle(R, 3, N)
    tail_expected = (
        -a1 * r[N] + a1 * r[N - 2] - a2 * r[N - 1] ** 2 - a3 * r[N - 2] * r[N],
        a1 * r[N - 1] - a2 * r[N] ** 2,
        a1 * r[N],
    )
    tail = tuple(CoeffCheck(N + j, tail_expected[j - 1], rc[N + j]) for j in range(1, 4))
    tail_limit = None
    if K is not None:
        K = rational(K)
        K2 = K * K
        limit = (-a2 * K2 - a3 * K2, a1 * K - a2 * K2, a1 * K)
        tail_limit = tuple(CoeffCheck(N + j, limit[j - 1], rc[N + j]) for j in range(1, 4))
    return CancellationReport(N, head, (3, N), zero, first, tail, tail_limit, rc)


def check_example_identity(
    a1: RationalLike,
    a2: RationalLike,
    a3: RationalLike,
    d: RationalLike,
    initials: Sequence[RationalLike],
    K: Optional[RationalLike],
    N: int,
) -> CancellationReport:
    if N < 3:
        raise ValueError(f"N={N} must be at least 3")
    rec = quadratic_family(a1, a2, a3, d, initials)
    validate(rec)
    r = trajectory(rec, N + 1)
    settled = K is not None and _settled(rec, K, N, 3)
    return example_identity(a1, a2, a3, d, r, K if settled else None)
