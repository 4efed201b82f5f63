"""Exact rational scalars and truncated formal power series."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

from recconv import kernels

Rational = Fraction
RationalLike = Union[int, str, Fraction]

_RAT_RE = re.compile(r"\s*(-?\d+)(?:\s*/\s*(\d+))?\s*")


class SeriesError(ValueError):
    """Misuse of a truncated series (mismatched bounds, bad index)."""


def rational(value: RationalLike) -> Fraction:
    """Coerce ``value`` to a canonical Fraction.

    Floats are refused outright: they would smuggle rounding into a core
    that promises exact answers.

    >>> rational("-6/4")
    Fraction(-3, 2)
    """
    if isinstance(value, bool):
        raise TypeError("bool is not a rational")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        m = _RAT_RE.fullmatch(value)
        if not m:
            raise ValueError(f"not a rational literal: {value!r}")
        num = int(m.group(1))
        den = int(m.group(2)) if m.group(2) is not None else 1
        if den == 0:
            raise ValueError(f"zero denominator in {value!r}")
        return Fraction(num, den)
    raise TypeError(f"cannot convert {type(value).__name__} to a rational")


def format_rational(q: Fraction) -> str:
    return str(q)


@dataclass(frozen=True)
class TruncatedSeries:
    """Coefficients of x^0 .. x^D, everything above x^D discarded."""

    degree_bound: int
    coefficients: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if self.degree_bound < 0:
            raise SeriesError("degree bound must be non-negative")
        coeffs = tuple(rational(c) for c in self.coefficients)
        if len(coeffs) != self.degree_bound + 1:
            raise SeriesError(
                f"expected {self.degree_bound + 1} coefficients, got {len(coeffs)}"
            )
        object.__setattr__(self, "coefficients", coeffs)

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[RationalLike], degree_bound: int) -> "TruncatedSeries":
        """Build a series from a (possibly short or long) coefficient list.

        Missing coefficients are zero; those beyond ``degree_bound`` are dropped.
        """
        cs = [rational(c) for c in coeffs][: degree_bound + 1]
        cs.extend([Fraction(0)] * (degree_bound + 1 - len(cs)))
        return cls(degree_bound, tuple(cs))

    @classmethod
    def zero(cls, degree_bound: int) -> "TruncatedSeries":
        return cls.from_coeffs((), degree_bound)

    @classmethod
    def one(cls, degree_bound: int) -> "TruncatedSeries":
        return cls.from_coeffs((1,), degree_bound)

    def __getitem__(self, i: int) -> Fraction:
        return series_coeff(self, i)

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return series_add(self, other)

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return series_add(self, other.scale(-1))

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return series_mul(self, other)

    def __neg__(self) -> "TruncatedSeries":
        return self.scale(-1)

    def scale(self, k: RationalLike) -> "TruncatedSeries":
        k = rational(k)
        return TruncatedSeries(self.degree_bound, tuple(k * c for c in self.coefficients))

    def is_zero(self) -> bool:
        return not any(self.coefficients)


def _check_bounds(a: TruncatedSeries, b: TruncatedSeries) -> None:
    if a.degree_bound != b.degree_bound:
        raise SeriesError(
            f"degree bounds differ: {a.degree_bound} vs {b.degree_bound}"
        )


def series_add(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    _check_bounds(a, b)
    return TruncatedSeries(
        a.degree_bound, tuple(x + y for x, y in zip(a.coefficients, b.coefficients))
    )


def series_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Truncated Cauchy product."""
    _check_bounds(a, b)
    n = a.degree_bound + 1
    return TruncatedSeries(a.degree_bound, tuple(kernels.convolve(a.coefficients, b.coefficients, n)))


def series_coeff(s: TruncatedSeries, i: int) -> Fraction:
    if not 0 <= i <= s.degree_bound:
        raise SeriesError(f"index {i} outside [0, {s.degree_bound}]")
    return s.coefficients[i]
