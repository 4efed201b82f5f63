"""Reader and writer for the line-oriented ``.rec`` recurrence format.

Example::

    # Fibonacci
    order = 2
    init = 0, 1
    rule = 1*r[i-1] + 1*r[i-2]
    target = 5

Keys: ``order``, ``init``, ``rule`` (required), ``target`` and ``degree``
(optional). ``degree`` caps the total degree of every rule term; without it
the per-variable degree bound is inferred from the largest exponent.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from recconv.model import LinearRecurrence, PolynomialRecurrence

Factor = tuple[int, int]  # (lag, exponent)

REQUIRED_KEYS = ("order", "init", "rule")
OPTIONAL_KEYS = ("target", "degree")


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int) -> None:
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column


@dataclass(frozen=True)
class Term:
    coefficient: Fraction
    factors: tuple[Factor, ...] = ()

    def __post_init__(self) -> None:
        merged: dict[int, int] = {}
        for lag, e in self.factors:
            merged[lag] = merged.get(lag, 0) + e
        object.__setattr__(self, "factors", tuple(sorted(merged.items())))
        object.__setattr__(self, "coefficient", Fraction(self.coefficient))

    @property
    def total_degree(self) -> int:
        return sum(e for _, e in self.factors)


@dataclass(frozen=True)
class RecurrenceFile:
    order: int
    initials: tuple[Fraction, ...]
    rule: tuple[Term, ...]
    target: Optional[Fraction] = None
    degree: Optional[int] = None

    def __post_init__(self) -> None:
        combined: dict[tuple[Factor, ...], Fraction] = {}
        for t in self.rule:
            combined[t.factors] = combined.get(t.factors, Fraction(0)) + t.coefficient
        rule = tuple(Term(c, f) for f, c in sorted(combined.items()))
        object.__setattr__(self, "rule", rule)
        object.__setattr__(self, "initials", tuple(Fraction(c) for c in self.initials))

    @property
    def kind(self) -> str:
        return "linear" if all(t.total_degree <= 1 for t in self.rule) else "polynomial"

    @property
    def degree_bound(self) -> int:
        return max([1] + [e for t in self.rule for _, e in t.factors])


_WS = re.compile(r"[ \t]*")
_INT = re.compile(r"\d+")
_KEY = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


class _Cursor:
    def __init__(self, text: str, line: int, offset: int) -> None:
        self.text = text
        self.pos = 0
        self.line = line
        self.offset = offset  # column of text[0], 1-based

    def error(self, msg: str, pos: Optional[int] = None) -> ParseError:
        p = self.pos if pos is None else pos
        return ParseError(msg, self.line, self.offset + p)

    def skip_ws(self) -> None:
        self.pos = _WS.match(self.text, self.pos).end()

    def at_end(self) -> bool:
        self.skip_ws()
        return self.pos >= len(self.text)

    def peek(self, s: str) -> bool:
        self.skip_ws()
        return self.text.startswith(s, self.pos)

    def expect(self, s: str) -> None:
        if not self.peek(s):
            raise self.error(f"expected {s!r}")
        self.pos += len(s)

    def integer(self, what: str) -> int:
        self.skip_ws()
        m = _INT.match(self.text, self.pos)
        if not m:
            raise self.error(f"expected {what}")
        try:
            value = int(m.group())
        except ValueError:  # int() digit limit
            raise self.error(f"{what} is too long") from None
        self.pos = m.end()
        return value

    def rational(self) -> Fraction:
        self.skip_ws()
        neg = False
        if self.text.startswith("-", self.pos):
            neg = True
            self.pos += 1
        num = self.integer("rational literal")
        den = 1
        if self.peek("/"):
            self.pos += 1
            den_pos = self.pos
            den = self.integer("denominator")
            if den == 0:
                raise self.error("zero denominator", den_pos)
        return Fraction(-num if neg else num, den)

    def finish(self) -> None:
        if not self.at_end():
            raise self.error(f"trailing characters {self.text[self.pos:]!r}")


def _parse_factor(cur: _Cursor, order: int) -> Factor:
    cur.expect("r[")
    cur.expect("i")
    cur.expect("-")
    cur.skip_ws()
    lag_pos = cur.pos
    lag = cur.integer("lag")
    cur.expect("]")
    if lag < 1 or lag > order:
        msg = f"lag {lag} exceeds order {order}" if lag > order else "lag must be at least 1"
        raise cur.error(msg, lag_pos)
    exp = 1
    if cur.peek("^"):
        cur.pos += 1
        cur.skip_ws()
        exp_pos = cur.pos
        exp = cur.integer("exponent")
        if exp < 1:
            raise cur.error("exponent must be at least 1", exp_pos)
    return lag, exp


def _parse_rule(cur: _Cursor, order: int, degree: Optional[int]) -> tuple[Term, ...]:
    terms = []
    while True:
        cur.skip_ws()
        term_pos = cur.pos
        coeff = cur.rational()
        factors = []
        while cur.peek("*"):
            cur.pos += 1
            factors.append(_parse_factor(cur, order))
        term = Term(coeff, tuple(factors))
        if degree is not None and term.total_degree > degree:
            raise cur.error(
                f"term of total degree {term.total_degree} exceeds declared degree {degree}",
                term_pos,
            )
        terms.append(term)
        if cur.at_end():
            break
        if not cur.peek("+"):
            raise cur.error(f"trailing characters {cur.text[cur.pos:]!r}, expected '+'")
        cur.pos += 1
    return tuple(terms)


def _parse_inits(cur: _Cursor) -> tuple[Fraction, ...]:
    values = [cur.rational()]
    while cur.peek(","):
        cur.pos += 1
        values.append(cur.rational())
    cur.finish()
    return tuple(values)


def parse(text: Union[str, bytes]) -> RecurrenceFile:
    """Parse a ``.rec`` document; raise ParseError with a 1-based position."""
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"not valid UTF-8 ({exc.reason})", 1, exc.start + 1) from None
    if text.startswith("﻿"):
        text = text[1:]

    entries: dict[str, tuple[int, int, str]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        m = _WS.match(line)
        key_col = m.end()
        km = _KEY.match(line, key_col)
        if not km:
            raise ParseError("expected a key", lineno, key_col + 1)
        key = km.group()
        if key not in REQUIRED_KEYS + OPTIONAL_KEYS:
            raise ParseError(f"unknown key {key!r}", lineno, key_col + 1)
        if key in entries:
            raise ParseError(
                f"duplicate key {key!r} (first on line {entries[key][0]})", lineno, key_col + 1
            )
        cur = _Cursor(line, lineno, 1)
        cur.pos = km.end()
        cur.expect("=")
        cur.skip_ws()
        entries[key] = (lineno, cur.pos + 1, line[cur.pos:])

    last_line = max(1, len(text.splitlines()))
    for key in REQUIRED_KEYS:
        if key not in entries:
            raise ParseError(f"missing key {key!r}", last_line, 1)

    def cursor(key: str) -> _Cursor:
        lineno, col, value = entries[key]
        return _Cursor(value, lineno, col)

    cur = cursor("order")
    order = cur.integer("order")
    cur.finish()
    if order < 1:
        raise cur.error("order must be at least 1", 0)

    degree = None
    if "degree" in entries:
        cur = cursor("degree")
        degree = cur.integer("degree")
        cur.finish()
        if degree < 1:
            raise cur.error("degree must be at least 1", 0)

    initials = _parse_inits(cursor("init"))

    target = None
    if "target" in entries:
        cur = cursor("target")
        target = cur.rational()
        cur.finish()

    rule = _parse_rule(cursor("rule"), order, degree)
    return RecurrenceFile(order, initials, rule, target, degree)


def _render_term(t: Term) -> str:
    parts = [str(t.coefficient)]
    for lag, e in t.factors:
        parts.append(f"r[i-{lag}]" if e == 1 else f"r[i-{lag}]^{e}")
    return "*".join(parts)


def render(f: RecurrenceFile) -> str:
    lines = [
        f"order = {f.order}",
        "init = " + ", ".join(str(c) for c in f.initials),
        "rule = " + " + ".join(_render_term(t) for t in f.rule),
    ]
    if f.target is not None:
        lines.append(f"target = {f.target}")
    if f.degree is not None:
        lines.append(f"degree = {f.degree}")
    return "\n".join(lines) + "\n"


def to_recurrence(f: RecurrenceFile) -> Union[LinearRecurrence, PolynomialRecurrence]:
    """Build the model object; linear files become LinearRecurrence."""
    L = f.order
    if f.kind == "linear":
        coeffs = [Fraction(0)] * L
        constant = Fraction(0)
        for t in f.rule:
            if t.factors:
                coeffs[t.factors[0][0] - 1] += t.coefficient
            else:
                constant += t.coefficient
        return LinearRecurrence(L, tuple(coeffs), f.initials, constant)
    terms: dict[tuple[int, ...], Fraction] = {}
    for t in f.rule:
        exps = [0] * L
        for lag, e in t.factors:
            exps[lag - 1] = e
        terms[tuple(exps)] = terms.get(tuple(exps), Fraction(0)) + t.coefficient
    return PolynomialRecurrence(L, terms, f.initials, degree_bound=f.degree_bound)


def from_recurrence(
    rec: Union[LinearRecurrence, PolynomialRecurrence], target: Optional[Fraction] = None
) -> RecurrenceFile:
    if isinstance(rec, LinearRecurrence):
        rule = [Term(a, ((k + 1, 1),)) for k, a in enumerate(rec.coeffs)]
        if rec.constant:
            rule.append(Term(rec.constant))
    else:
        rule = [
            Term(c, tuple((k + 1, e) for k, e in enumerate(exps) if e)) for exps, c in rec.terms
        ]
    return RecurrenceFile(rec.order, rec.initials, tuple(rule), target)
