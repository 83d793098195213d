"""Simple densities on a Clemens polytope."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .complex import ClemensComplex, link_set
from .rational import INF


class DensityError(ValueError):
    pass


@dataclass(frozen=True)
class SimpleDensity:
    """Map ``(face, j) -> value in (0, +inf]``; faces are frozensets of ids."""

    entries: Mapping

    def __getitem__(self, key):
        face, j = key
        return self.entries[(frozenset(face), str(j))]

    def get(self, face, j, default=None):
        return self.entries.get((frozenset(face), str(j)), default)

    def finite_values(self):
        return [v for v in self.entries.values() if v is not INF]


def uniform_density(c: ClemensComplex, value=1) -> SimpleDensity:
    value = INF if value is INF else Fraction(value)
    return SimpleDensity({(f, j): value for f in c.faces for j in link_set(c, f)})


def validate_density(c: ClemensComplex, d: SimpleDensity) -> str | None:
    for f in c.sorted_faces():
        for j in sorted(link_set(c, f), key=c.index):
            if (f, j) not in d.entries:
                return f"incomplete: no entry for face {sorted(f)}, j={j}"
    for (f, j), val in d.entries.items():
        if f not in c.faces or j not in link_set(c, f):
            return f"entry for face {sorted(f)}, j={j} is outside the link"
        if val is not INF and not val > 0:
            return f"non-positive value at face {sorted(f)}, j={j}"
    for (f, j), val in d.entries.items():
        for (g, k), other in d.entries.items():
            if k == j and g < f and val < other:
                return (f"not monotone: face {sorted(f)} contains {sorted(g)} "
                        f"but value {val} < {other} at j={j}")
    return None


def induced_density(c: ClemensComplex, cone_data: Mapping) -> SimpleDensity:
    """Density from per-face curve-class generators.

    ``cone_data[face]`` is a list of ``(value, pairings)`` where ``value`` is the
    ample pairing of the generator and ``pairings`` maps each vertex id (or a
    vector in vertex order) to its intersection with ``O(D_j)``.
    The entry for ``(I, j)`` is the least value among generators pairing to 1
    with ``O(D_j)``, or ``+inf`` if there is none.
    """
    entries = {}
    for f in c.sorted_faces():
        gens = cone_data.get(f)
        if gens is None:
            gens = cone_data.get(tuple(sorted(f, key=c.index)))
        if not gens:
            raise DensityError(f"no generator supplied for face {sorted(f)}")
        norm = []
        for value, pairings in gens:
            value = Fraction(value)
            if value <= 0:
                raise DensityError(f"non-positive ample pairing on face {sorted(f)}")
            if not isinstance(pairings, Mapping):
                pairings = dict(zip(c.vertices, pairings))
            norm.append((value, {str(k): int(v) for k, v in pairings.items()}))
        for j in link_set(c, f):
            cands = [value for value, pair in norm if pair.get(j, 0) == 1]
            entries[(f, j)] = min(cands) if cands else INF
    d = SimpleDensity(entries)
    problem = validate_density(c, d)
    if problem is not None:
        raise DensityError(f"inconsistent cone data: {problem}")
    return d


def min_finite(d: SimpleDensity):
    vals = d.finite_values()
    return min(vals) if vals else None


def local_degree(c: ClemensComplex, d: SimpleDensity, face, sigma: Sequence):
    """``max_j omega_{I,j} |sigma^j|`` over ``j`` in the link of ``face``."""
    face = frozenset(face)
    J = link_set(c, face)
    for i, x in enumerate(sigma):
        if x != 0 and c.vertices[i] not in J:
            raise DensityError("sigma outside J")
    best = Fraction(0)
    for j in J:
        term = d[(face, j)] * abs(sigma[c.index(j)])
        if term > best:
            best = term
    return best
