"""Exact finite subsets of the rationals and their set algebra.

Elements are ``fractions.Fraction`` values, which are always stored in lowest
terms with a positive denominator, so value equality and representation
equality coincide.
"""
from __future__ import annotations

import re
from bisect import bisect_left
from fractions import Fraction
from math import gcd
from numbers import Rational as _RationalABC
from pathlib import Path
from typing import Iterable, Iterator

from . import _kernels
from .errors import DegenerateDilationError, DivisorZeroError, InputError

Rational = Fraction

_LINE_RE = re.compile(r"^([+-]?\d+)(?:/(\d+))?$")


def to_rational(value) -> Fraction:
    if isinstance(value, bool) or isinstance(value, float):
        raise TypeError(f"refusing inexact value {value!r}; use int, Fraction or 'p/q'")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, _RationalABC)):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"cannot convert {type(value).__name__} to a rational")


def parse_rational(text: str) -> Fraction:
    m = _LINE_RE.match(text.strip())
    if not m:
        raise ValueError(f"not an integer or p/q rational: {text!r}")
    num, den = m.groups()
    if den is not None and int(den) == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(int(num), int(den) if den else 1)


def format_rational(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


class FiniteSet:
    """An immutable, sorted, duplicate-free finite set of rationals.

    Arithmetic operators act element-wise on pairs: ``A + B`` is the sumset,
    ``A - B`` the difference set, ``A * B`` the product set and ``A / B`` the
    quotient set.  ``|`` and ``&`` are union and intersection.
    """

    __slots__ = ("_elems", "_member_set", "_scaled")

    def __init__(self, values: Iterable = ()):
        members = {to_rational(v) for v in values}
        self._elems = tuple(sorted(members))
        self._member_set = frozenset(members)
        self._scaled = None

    @classmethod
    def _trusted(cls, sorted_unique: tuple) -> "FiniteSet":
        obj = cls.__new__(cls)
        obj._elems = sorted_unique
        obj._member_set = None
        obj._scaled = None
        return obj

    @property
    def _members(self) -> frozenset:
        # built on first lookup; hashing large rationals is not free
        if self._member_set is None:
            self._member_set = frozenset(self._elems)
        return self._member_set

    @property
    def elements(self) -> tuple:
        return self._elems

    def scaled(self):
        """``(L, nums)`` with ``L`` the lcm of the denominators and ``x = num / L``."""
        if self._scaled is None:
            L = 1
            for x in self._elems:
                d = x.denominator
                L = L // gcd(L, d) * d
            self._scaled = (L, tuple(x.numerator * (L // x.denominator) for x in self._elems))
        return self._scaled

    def __len__(self) -> int:
        return len(self._elems)

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self._elems)

    def __contains__(self, x) -> bool:
        try:
            return to_rational(x) in self._members
        except (TypeError, ValueError):
            return False

    def __getitem__(self, i):
        return self._elems[i]

    def __eq__(self, other) -> bool:
        if isinstance(other, FiniteSet):
            return self._elems == other._elems
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._elems)

    def __repr__(self) -> str:
        body = ", ".join(format_rational(x) for x in self._elems)
        return f"FiniteSet({{{body}}})"

    def __bool__(self) -> bool:
        return bool(self._elems)

    def __add__(self, other):
        return combine(self, other, "sum")

    def __sub__(self, other):
        return combine(self, other, "diff")

    def __mul__(self, other):
        return combine(self, other, "prod")

    def __truediv__(self, other):
        return combine(self, other, "quot")

    def __neg__(self):
        return FiniteSet._trusted(tuple(-x for x in reversed(self._elems)))

    def __or__(self, other):
        return FiniteSet._trusted(tuple(sorted(self._members | other._members)))

    def __and__(self, other):
        return FiniteSet._trusted(tuple(x for x in self._elems if x in other._members))

    def minus(self, other) -> "FiniteSet":
        """Set difference ``self \\ other`` (``-`` is reserved for the difference set)."""
        return FiniteSet._trusted(tuple(x for x in self._elems if x not in other._members))

    def issubset(self, other) -> bool:
        return self._members <= other._members

    def isdisjoint(self, other) -> bool:
        return self._members.isdisjoint(other._members)

    def without_zero(self) -> "FiniteSet":
        if not self.has_zero:
            return self
        return FiniteSet._trusted(tuple(x for x in self._elems if x != 0))

    @property
    def has_zero(self) -> bool:
        i = bisect_left(self._elems, 0)
        return i < len(self._elems) and self._elems[i] == 0


def make_set(values: Iterable = ()) -> FiniteSet:
    return FiniteSet(values)


EMPTY = FiniteSet()


def _check_op(op):
    if op not in _kernels.OPS:
        raise ValueError(f"op must be one of {_kernels.OPS}, got {op!r}")


def combine(A: FiniteSet, B: FiniteSet, op: str) -> FiniteSet:
    """The exact set ``{a op b : a in A, b in B}``."""
    _check_op(op)
    if op == "quot" and B.has_zero:
        raise DivisorZeroError("quotient set with 0 in the divisor set")
    if not A or not B:
        return EMPTY
    if len(B) == 1 and op in ("sum", "diff", "prod"):
        b = B[0]
        if op == "sum":
            return translate(A, b)
        if op == "diff":
            return translate(A, -b)
        if b == 0:
            return FiniteSet._trusted((Fraction(0),))
        return dilate(A, b)
    return FiniteSet._trusted(_kernels.distinct_values(A, B, op))


def translate(A: FiniteSet, shift) -> FiniteSet:
    s = to_rational(shift)
    return FiniteSet._trusted(tuple(x + s for x in A))


def inverse_set(A: FiniteSet) -> FiniteSet:
    """``{1/a}`` with the convention ``0^{-1} = 0``."""
    return FiniteSet(x if x == 0 else 1 / x for x in A)


def dilate(A: FiniteSet, lam) -> FiniteSet:
    lam = to_rational(lam)
    if lam == 0:
        raise DegenerateDilationError("dilation by 0")
    out = tuple(lam * x for x in A)
    return FiniteSet._trusted(out if lam > 0 else out[::-1])


def popular_slice(A: FiniteSet, lam) -> FiniteSet:
    """``A ∩ λA``; its size is the number of ways to write λ as a quotient of A."""
    return A & dilate(A, lam)


# -- set files ---------------------------------------------------------------

def parse_set_text(text: str) -> FiniteSet:
    values = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            values.append(parse_rational(line))
        except ValueError as exc:
            raise InputError(str(exc), line=lineno) from None
    return FiniteSet(values)


def format_set(A: FiniteSet) -> str:
    return "".join(format_rational(x) + "\n" for x in A)


def read_set_file(path) -> FiniteSet:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read set file {path}: {exc}") from None
    return parse_set_text(text)


def write_set_file(A: FiniteSet, path) -> None:
    Path(path).write_text(format_set(A), encoding="utf-8")
