"""Dominant term of a Laurent series on an annulus, in valuation coordinates.

Term ``m`` contributes the affine function ``val(f_m) + m * v``; the function
is invertible on the annulus iff one term is strictly below all others on the
whole open interval of ``v``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .rational import INF


class NotInvertible(ValueError):
    pass


NEG_INF = "-inf"


@dataclass(frozen=True)
class LaurentValuationData:
    terms: tuple  # ((m, val), ...)
    lower: object  # Fraction or NEG_INF
    upper: object  # Fraction or INF

    def __post_init__(self):
        terms = tuple((int(m), Fraction(v)) for m, v in self.terms)
        object.__setattr__(self, "terms", terms)
        if not terms:
            raise ValueError("no terms")
        if len({m for m, _ in terms}) != len(terms):
            raise ValueError("exponents must be pairwise distinct")
        lo = self.lower if self.lower == NEG_INF else Fraction(self.lower)
        hi = self.upper if self.upper is INF else Fraction(self.upper)
        object.__setattr__(self, "lower", lo)
        object.__setattr__(self, "upper", hi)
        if lo != NEG_INF and hi is not INF and not lo < hi:
            raise ValueError("empty interval")
        if hi is INF and any(m < 0 for m, _ in terms):
            raise ValueError("unbounded upper end needs non-negative exponents")
        if lo == NEG_INF and any(m > 0 for m, _ in terms):
            raise ValueError("unbounded lower end needs non-positive exponents")


def _right_of(terms, a):
    # minimiser just to the right of a: least value, then least slope
    if a == NEG_INF:
        return max(terms, key=lambda t: (t[0], -t[1]))[0]
    return min(terms, key=lambda t: (t[1] + t[0] * a, t[0]))[0]


def _left_of(terms, b):
    if b is INF:
        return min(terms, key=lambda t: (t[0], t[1]))[0]
    return min(terms, key=lambda t: (t[1] + t[0] * b, -t[0]))[0]


def dominant_exponent(f: LaurentValuationData) -> int:
    """Exponent of the term dominating throughout the annulus.

    The lower envelope of finitely many lines is concave, so a single line
    realises it on the whole interval iff it does so next to both endpoints.
    """
    m_lo = _right_of(f.terms, f.lower)
    m_hi = _left_of(f.terms, f.upper)
    if m_lo != m_hi:
        raise NotInvertible("not invertible on annulus")
    return m_lo
