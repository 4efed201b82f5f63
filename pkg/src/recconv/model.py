"""Linear and polynomial recurrences, their validation and single steps.

Windows are always ordered most-recent first: ``window[k]`` is r_{i-1-k}.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

from recconv import kernels
from recconv.numeric import RationalLike, rational

Exponents = tuple[int, ...]


class ValidationError(ValueError):
    """A recurrence violates one of its structural invariants."""


@dataclass(frozen=True)
class LinearRecurrence:
    """p_i = a_1 p_{i-1} + ... + a_L p_{i-L} + d, with p_0..p_{L-1} given."""

    order: int
    coeffs: tuple[Fraction, ...]
    initials: tuple[Fraction, ...]
    constant: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", tuple(rational(a) for a in self.coeffs))
        object.__setattr__(self, "initials", tuple(rational(c) for c in self.initials))
        object.__setattr__(self, "constant", rational(self.constant))

    @property
    def homogeneous(self) -> bool:
        return self.constant == 0


@dataclass(frozen=True)
class PolynomialRecurrence:
    """r_i = sum over terms of coeff * prod_k r_{i-k}^{j_k}.

    ``terms`` maps exponent vectors (j_1, ..., j_L) to coefficients. Terms
    with a zero coefficient are kept: they still declare which lags the rule
    reads. The all-zero vector holds the constant term.
    """

    order: int
    terms: tuple[tuple[Exponents, Fraction], ...]
    initials: tuple[Fraction, ...]
    degree_bound: int = 0

    def __init__(
        self,
        order: int,
        terms: Union[Mapping[Exponents, RationalLike], Iterable[tuple[Exponents, RationalLike]]],
        initials: Iterable[RationalLike],
        degree_bound: int | None = None,
    ) -> None:
        items = terms.items() if isinstance(terms, Mapping) else terms
        merged: dict[Exponents, Fraction] = {}
        for exps, c in items:
            key = tuple(int(e) for e in exps)
            merged[key] = merged.get(key, Fraction(0)) + rational(c)
        norm = tuple(sorted(merged.items()))
        if degree_bound is None:
            degree_bound = max([1] + [e for exps, _ in norm for e in exps])
        object.__setattr__(self, "order", int(order))
        object.__setattr__(self, "terms", norm)
        object.__setattr__(self, "initials", tuple(rational(c) for c in initials))
        object.__setattr__(self, "degree_bound", int(degree_bound))

    def term_map(self) -> dict[Exponents, Fraction]:
        return dict(self.terms)

    @property
    def constant(self) -> Fraction:
        return self.term_map().get((0,) * self.order, Fraction(0))

    def max_lag(self) -> int:
        lag = 0
        for exps, _ in self.terms:
            for k, e in enumerate(exps):
                if e:
                    lag = max(lag, k + 1)
        return lag


Recurrence = Union[LinearRecurrence, PolynomialRecurrence]

CONVERGES = "converges"
DOES_NOT_CONVERGE = "does-not-converge"
UNKNOWN = "unknown"

METHODS = (
    "theorem-1",
    "theorem-2",
    "theorem-3",
    "theorem-4",
    "fixed-point",
    "oracle",
    "condition-v",
)


@dataclass(frozen=True)
class Verdict:
    outcome: str
    method: str
    M: int | None = None
    reason: str | None = None
    steps_used: int | None = None
    bits_cap_hit: bool = False
    details: dict = field(default_factory=dict, compare=False)

    def __post_init__(self) -> None:
        if self.outcome not in (CONVERGES, DOES_NOT_CONVERGE, UNKNOWN):
            raise ValueError(f"unknown outcome {self.outcome!r}")
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}")
        if self.outcome == CONVERGES and (self.M is None or self.M < 0):
            raise ValueError("a converging verdict needs M >= 0")

    @classmethod
    def converges(cls, M: int, method: str, **kw) -> "Verdict":
        return cls(CONVERGES, method, M=M, **kw)

    @classmethod
    def does_not_converge(cls, reason: str, method: str, **kw) -> "Verdict":
        return cls(DOES_NOT_CONVERGE, method, reason=reason, **kw)

    @classmethod
    def unknown(cls, steps_used: int, bits_cap_hit: bool, method: str, **kw) -> "Verdict":
        return cls(UNKNOWN, method, steps_used=steps_used, bits_cap_hit=bits_cap_hit, **kw)


def validate(rec: Recurrence) -> None:
    """Raise ValidationError naming the first violated invariant."""
    if rec.order < 1:
        raise ValidationError(f"order must be a positive integer, got {rec.order}")
    L = rec.order
    if len(rec.initials) != L:
        raise ValidationError(f"expected {L} initial values, got {len(rec.initials)}")
    if isinstance(rec, LinearRecurrence):
        if len(rec.coeffs) != L:
            raise ValidationError(f"expected {L} coefficients, got {len(rec.coeffs)}")
        if rec.coeffs[-1] == 0:
            raise ValidationError("a_L must be nonzero")
        return
    H = rec.degree_bound
    if H < 1:
        raise ValidationError(f"degree bound must be a positive integer, got {H}")
    for exps, _ in rec.terms:
        for k in range(L, len(exps)):
            if exps[k]:
                raise ValidationError(f"lag {k + 1} exceeds order {L}")
        if len(exps) != L:
            raise ValidationError(f"exponent vector {exps} does not have length {L}")
        for e in exps:
            if not 0 <= e <= H:
                raise ValidationError(f"exponent {e} outside [0, {H}]")
    lag = rec.max_lag()
    if lag != L:
        raise ValidationError(f"declared order {L} but the deepest lag used is {lag}")


def _check_window(rec: Recurrence, window: Sequence) -> list[Fraction]:
    if len(window) != rec.order:
        raise ValueError(f"window must hold {rec.order} terms, got {len(window)}")
    return [rational(w) for w in window]


def step_linear(rec: LinearRecurrence, window: Sequence[RationalLike]) -> Fraction:
    w = _check_window(rec, window)
    return sum((a * x for a, x in zip(rec.coeffs, w)), rec.constant)


def step_polynomial(rec: PolynomialRecurrence, window: Sequence[RationalLike]) -> Fraction:
    w = _check_window(rec, window)
    exps = [e for e, _ in rec.terms]
    coeffs = [c for _, c in rec.terms]
    return kernels.eval_terms(exps, coeffs, w)


def as_polynomial(rec: Recurrence) -> PolynomialRecurrence:
    """Embed a linear recurrence as a degree-1 polynomial recurrence."""
    if isinstance(rec, PolynomialRecurrence):
        return rec
    L = rec.order
    terms: dict[Exponents, Fraction] = {}
    for k, a in enumerate(rec.coeffs):
        unit = [0] * L
        unit[k] = 1
        terms[tuple(unit)] = a
    if rec.constant:
        terms[(0,) * L] = rec.constant
    return PolynomialRecurrence(L, terms, rec.initials, degree_bound=1)


def trajectory(rec: Recurrence, length: int) -> list[Fraction]:
    """First ``length`` terms r_0 .. r_{length-1}, computed exactly."""
    poly = as_polynomial(rec)
    if length <= poly.order:
        return list(poly.initials[:length])
    exps = [e for e, _ in poly.terms]
    coeffs = [c for _, c in poly.terms]
    _, traj, _, _ = kernels.iterate(
        exps, coeffs, poly.initials, Fraction(0), False, length - poly.order, 1 << 62
    )
    return traj
