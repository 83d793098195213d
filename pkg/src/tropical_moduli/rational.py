"""Exact rational helpers and the +inf symbol used by densities."""
from __future__ import annotations

from fractions import Fraction
from functools import total_ordering


@total_ordering
class _Infinity:
    """Positive infinity that stays out of floating point.

    Multiplication follows the density convention ``inf * 0 == 0``.
    """

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "inf"

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("tropical_moduli.INF")

    def __lt__(self, other):
        return False

    def __gt__(self, other):
        return other is not self

    def __mul__(self, other):
        if other is self:
            return self
        if other == 0:
            return Fraction(0)
        if other < 0:
            raise ValueError("negative multiple of +inf")
        return self

    __rmul__ = __mul__

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()


def is_inf(x) -> bool:
    return x is INF


def parse_rational(s) -> Fraction:
    """Parse ``"p/q"`` / integer strings (or ints). Floats are refused."""
    if isinstance(s, bool):
        raise ValueError(f"not a rational: {s!r}")
    if isinstance(s, (int, Fraction)):
        return Fraction(s)
    if not isinstance(s, str):
        raise ValueError(f"not a rational: {s!r}")
    text = s.strip()
    if "." in text or "e" in text.lower():
        raise ValueError(f"decimal notation is not accepted: {s!r}")
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational: {s!r}") from exc


def parse_extended(s):
    if isinstance(s, str) and s.strip().lower() in ("inf", "+inf", "infinity"):
        return INF
    return parse_rational(s)


def fmt(x) -> str:
    if x is INF:
        return "inf"
    return str(Fraction(x))


def floor_div(a, b) -> int:
    """floor(a / b) for rationals, b > 0."""
    q = Fraction(a) / Fraction(b)
    return q.numerator // q.denominator
