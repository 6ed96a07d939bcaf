"""Basic uncertain information values and their interval algebra.

A BUI value ``<x;c>`` pairs a datum ``x`` with a certainty ``c``. It maps to
the closed interval ``[c*x, c*x + 1 - c]``, whose width ``1 - c`` measures
how uncertain the datum is. Addition and subtraction are defined by pushing
the operands through that mapping, doing interval arithmetic, and mapping back.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

from .errors import ParseError, ValidationError

TOL = 1e-12


def _check_unit(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value) or value < 0.0 or value > 1.0:
        raise ValidationError(f"{name} must lie in [0, 1], got {value!r}")
    return value


@dataclass(frozen=True)
class Bui:
    """A datum and its certainty degree, both in [0, 1]."""

    x: float
    c: float

    def __post_init__(self):
        object.__setattr__(self, "x", _check_unit("datum", self.x))
        object.__setattr__(self, "c", _check_unit("certainty", self.c))

    def __str__(self) -> str:
        return format_bui(self)

    def __add__(self, other: Bui) -> ExtendedBui:
        return bui_add(self, other)

    def __sub__(self, other: Bui) -> ExtendedBui:
        return bui_sub(self, other)

    def to_interval(self) -> UnitInterval:
        return to_interval(self)


@dataclass(frozen=True)
class ExtendedBui:
    """Result of BUI arithmetic: the datum may be negative or exceed 1.

    ``degenerate`` is set when the certainty came out exactly zero, in which
    case the datum holds the undivided numerator.
    """

    x: float
    c: float
    degenerate: bool = False

    def __post_init__(self):
        x = float(self.x)
        if not math.isfinite(x):
            raise ValidationError(f"datum must be finite, got {x!r}")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "c", _check_unit("certainty", self.c))

    def absolute(self) -> ExtendedBui:
        """The absolute-valued form used when results must stay nonnegative."""
        return ExtendedBui(abs(self.x), self.c, self.degenerate)

    @property
    def magnitude(self) -> float:
        return abs(self.x)

    def __str__(self) -> str:
        return f"<{_fmt(self.x)};{_fmt(self.c)}>"


@dataclass(frozen=True)
class Interval:
    lower: float
    upper: float

    def __post_init__(self):
        if not self.lower <= self.upper:
            raise ValueError(f"interval lower bound {self.lower} exceeds upper {self.upper}")

    @property
    def width(self) -> float:
        return self.upper - self.lower

    def __add__(self, other: Interval) -> Interval:
        return Interval(self.lower + other.lower, self.upper + other.upper)

    def __sub__(self, other: Interval) -> Interval:
        return Interval(self.lower - other.upper, self.upper - other.lower)

    def within_unit(self, tol: float = TOL) -> bool:
        return self.lower >= -tol and self.upper <= 1.0 + tol


@dataclass(frozen=True)
class UnitInterval(Interval):
    """A closed subinterval of [0, 1]."""

    def __post_init__(self):
        super().__post_init__()
        if self.lower < 0.0 or self.upper > 1.0:
            raise ValueError(f"[{self.lower}, {self.upper}] is not inside [0, 1]")


def to_interval(a: Bui) -> UnitInterval:
    lower = a.c * a.x
    # c*x <= c holds in floating point, but c*x + (1 - c) can round past 1
    upper = min(max(lower + (1.0 - a.c), lower), 1.0)
    return UnitInterval(lower, upper)


def from_interval(i: Interval) -> Bui:
    """Inverse of :func:`to_interval`, with ``0/0 = 1`` for the full interval."""
    lower = min(max(i.lower, 0.0), 1.0)
    upper = min(max(i.upper, lower), 1.0)
    c = 1.0 - upper + lower
    if c == 0.0:
        return Bui(1.0, 0.0)
    return Bui(min(lower / c, 1.0), c)


def _divide(numerator: float, c1: float, c2: float) -> ExtendedBui:
    certainty = abs(c1 + c2 - 1.0)
    if certainty == 0.0:
        return ExtendedBui(numerator, 0.0, degenerate=True)
    return ExtendedBui(numerator / certainty, min(certainty, 1.0))


def bui_add(a: Bui, b: Bui) -> ExtendedBui:
    return _divide(a.c * a.x + b.c * b.x, a.c, b.c)


def bui_sub(a: Bui, b: Bui) -> ExtendedBui:
    """Signed difference; call ``.absolute()`` for the nonnegative form.

    The signed datum times the certainty equals the lower bound of the
    interval difference ``to_interval(a) - to_interval(b)``.
    """
    return _divide(a.c * a.x - b.c * b.x + b.c - 1.0, a.c, b.c)


def clamp_to_bui(e: ExtendedBui) -> tuple[Bui, bool]:
    """Clip the datum into [0, 1]; the flag reports whether clipping happened."""
    x = min(max(e.x, 0.0), 1.0)
    return Bui(x, e.c), x != e.x


def strictly_greater(a: Bui, b: Bui) -> bool:
    """Cartesian order: both the datum and the certainty are larger."""
    return a.x > b.x and a.c > b.c


def _fmt(value: float) -> str:
    text = f"{value:.6f}".rstrip("0").rstrip(".")
    return "0" if text in ("-0", "") else text


def format_bui(a: Bui) -> str:
    return f"<{_fmt(a.x)};{_fmt(a.c)}>"


_NUM = r"[-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?"
_BUI_RE = re.compile(rf"^\s*(<)?\s*({_NUM})\s*;\s*({_NUM})\s*(>)?\s*$")


def parse_bui(text: str) -> Bui:
    """Parse ``<x;c>`` or plain ``x;c``. Raises ParseError or ValidationError."""
    m = _BUI_RE.match(text)
    if m is None or bool(m.group(1)) != bool(m.group(4)):
        raise ParseError(f"not a BUI literal: {text!r}")
    return Bui(float(m.group(2)), float(m.group(3)))
