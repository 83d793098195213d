"""Assembly of the moduli space of curves of bounded degree."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

from .canonical import canonical_form
from .complex import ClemensComplex
from .curves import (CombinatorialType, ParamTropCurve, contract_zero_edges, degree, genus,
                     is_simple, simplify, type_of)
from .degeneration import Poset, build_poset, precedes
from .density import SimpleDensity
from .enumeration import enumerate_types
from .lp import LT, Polyhedron, lp_feasibility
from .strata import (closure_polyhedron, coordinates_of, curve_from_point, is_good,
                     stratum_polyhedron)


class ModuliError(ValueError):
    pass


class BoundaryError(RuntimeError):
    pass


@dataclass
class Stratum:
    name: str
    type: CombinatorialType
    polyhedron: Polyhedron
    dim: int
    witness: ParamTropCurve
    key: bytes = field(repr=False, default=b"")


@dataclass
class ModuliSpace:
    complex: ClemensComplex
    density: SimpleDensity
    g: int
    n: int
    A: Fraction
    strata: list
    poset: Poset

    def by_key(self):
        return {s.key: s for s in self.strata}

    def by_name(self, name):
        for s in self.strata:
            if s.name == name:
                return s
        raise KeyError(name)

    def dimension_histogram(self):
        return dict(sorted(Counter(s.dim for s in self.strata).items()))


def boundary_samples(c: ClemensComplex, t: CombinatorialType):
    """One closure point per inequality made tight, as ``(index, curve)``.

    The curve has zero-length edges contracted (their cycles become genus);
    infeasible facets are skipped.
    """
    closed = closure_polyhedron(c, t)
    out = []
    for j, con in enumerate(stratum_polyhedron(c, t).constraints):
        if con.rel != LT:
            continue
        res = lp_feasibility(closed.with_equality(j), want_dim=False)
        if not res.feasible:
            continue
        k = contract_zero_edges(curve_from_point(c, t, res.witness))
        out.append((j, k))
    return out


def verify_boundary(c: ClemensComplex, t: CombinatorialType, keys=None):
    """Check that every facet sample lies in a stratum preceding ``t``.

    Returns the number of samples checked; raises ``BoundaryError`` otherwise.
    """
    count = 0
    for j, k in boundary_samples(c, t):
        alpha_prime = simplify(type_of(c, k))
        if not precedes(alpha_prime, t):
            raise BoundaryError(f"boundary consistency violated: facet {j} sample {k.positions}")
        if keys is not None and canonical_form(alpha_prime) not in keys:
            raise BoundaryError(f"boundary consistency violated: facet {j} sample "
                                "is not in the moduli space")
        count += 1
    return count


def build_moduli(c: ClemensComplex, d: SimpleDensity, g: int, n: int, A,
                 jobs: int = 1, verify: bool = True, progress=None) -> ModuliSpace:
    A = Fraction(A)
    if A < 0:
        raise ModuliError("A must be non-negative")
    types = enumerate_types(c, d, g, n, A, jobs=jobs)
    strata = []
    for i, t in enumerate(types):
        p = stratum_polyhedron(c, t)
        res = is_good(c, t)
        if not res.good:
            raise ModuliError(f"enumerated type {i} is not good: {res.reason}")
        strata.append(Stratum(f"S{i}", t, p, res.lp.dim, res.witness, canonical_form(t)))
    poset = build_poset(types, [s.name for s in strata], jobs=jobs)
    m = ModuliSpace(c, d, g, n, A, strata, poset)
    if verify:
        keys = set(m.by_key())
        for i, s in enumerate(strata):
            verify_boundary(c, s.type, keys)
            if progress is not None:
                progress(i + 1, len(strata))
    return m


def stratum_of(m: ModuliSpace, k: ParamTropCurve) -> str:
    """Name of the stratum containing the curve ``k``."""
    t = type_of(m.complex, k)
    simple = is_simple(t)
    if not simple:
        t = simplify(t)
    if genus(t) != m.g or len(t.marks) != m.n:
        raise ModuliError("not in moduli space")
    total, _ = degree(m.complex, t, m.density)
    if total > m.A:
        raise ModuliError("not in moduli space")
    s = m.by_key().get(canonical_form(t))
    if s is None:
        raise ModuliError("not in moduli space")
    if simple and not stratum_polyhedron(m.complex, t).contains(coordinates_of(m.complex, k)):
        raise ModuliError("curve coordinates violate the stratum constraints")
    return s.name
