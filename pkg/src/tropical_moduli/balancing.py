"""Balancing: is sigma a non-negative integer combination of given generators?

Verdicts are relative to the supplied finite generator list. The rational
relaxation refutes membership outright; a bounded depth-first search over
integer coefficients certifies it; anything in between is reported as
``unknown``.
"""
from __future__ import annotations

from dataclasses import dataclass

from .complex import ClemensComplex, link_set
from .curves import ParamTropCurve, sigma, type_of
from .lp import EQ, LE, Constraint, Polyhedron, lp_feasibility

BALANCED, UNBALANCED, UNKNOWN = "balanced", "unbalanced", "unknown"


class BalancingError(ValueError):
    pass


@dataclass(frozen=True)
class Verdict:
    status: str
    certificate: tuple | None = None


def default_coeff_bound(sig) -> int:
    return max((abs(x) for x in sig), default=0) * 16


def relaxation(sig, gens) -> Polyhedron:
    """``{c >= 0 : sum_k c_k gens[k] == sig}``."""
    k = len(gens)
    cons = [Constraint([g[i] for g in gens], EQ, sig[i]) for i in range(len(sig))]
    for j in range(k):
        row = [0] * k
        row[j] = -1
        cons.append(Constraint(row, LE, 0))
    return Polyhedron(k, cons, tuple(f"c{j}" for j in range(k)))


def _search(sig, gens, bound):
    dim, k = len(sig), len(gens)
    # reachable range of the remaining generators, per component
    lo = [[0] * dim for _ in range(k + 1)]
    hi = [[0] * dim for _ in range(k + 1)]
    for j in range(k - 1, -1, -1):
        for i in range(dim):
            x = gens[j][i] * bound
            lo[j][i] = lo[j + 1][i] + min(0, x)
            hi[j][i] = hi[j + 1][i] + max(0, x)
    coeffs = [0] * k

    def go(j, rest):
        if any(not lo[j][i] <= rest[i] <= hi[j][i] for i in range(dim)):
            return False
        if j == k:
            return not any(rest)
        g = gens[j]
        for c in range(bound + 1):
            coeffs[j] = c
            if go(j + 1, [r - c * x for r, x in zip(rest, g)]):
                return True
        coeffs[j] = 0
        return False

    return tuple(coeffs) if go(0, list(sig)) else None


def is_balanced_at(sig, gens, coeff_bound: int | None = None) -> Verdict:
    sig = tuple(int(x) for x in sig)
    gens = [tuple(int(x) for x in g) for g in gens]
    if any(len(g) != len(sig) for g in gens):
        raise BalancingError("generator dimension does not match sigma")
    if not any(sig):
        return Verdict(BALANCED, (0,) * len(gens))
    if not gens or not lp_feasibility(relaxation(sig, gens), want_dim=False).feasible:
        return Verdict(UNBALANCED)
    bound = default_coeff_bound(sig) if coeff_bound is None else int(coeff_bound)
    cert = _search(sig, gens, bound)
    if cert is None:
        return Verdict(UNKNOWN)
    return Verdict(BALANCED, cert)


def validate_cycle_data(c: ClemensComplex, data) -> str | None:
    """Generators must vanish outside ``J_I`` and sum to zero over it."""
    for face, gens in data.items():
        face = frozenset(face)
        if face not in c.faces:
            return f"face {sorted(face)} is not a face"
        J = link_set(c, face)
        for g in gens:
            if len(g) != c.dim:
                return f"generator {list(g)} has wrong length"
            if any(x and c.vertices[i] not in J for i, x in enumerate(g)):
                return f"generator {list(g)} is non-zero outside the link of {sorted(face)}"
            if sum(g) != 0:
                return f"generator {list(g)} has non-zero coordinate sum"
    return None


def check_curve_balancing(c: ClemensComplex, k, data, coeff_bound: int | None = None):
    """Verdict at each vertex of a curve or type; ``data`` maps faces to generators."""
    if isinstance(k, ParamTropCurve):
        k = type_of(c, k)
    data = {frozenset(f): gens for f, gens in data.items()}
    out = {}
    for v in k.sorted_vertices():
        face = k.labels[v]
        if face not in data:
            raise BalancingError(f"missing face data: {sorted(face)}")
        out[v] = is_balanced_at(sigma(k, v, c.dim), data[face], coeff_bound)
    return out
