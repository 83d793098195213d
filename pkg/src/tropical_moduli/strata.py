"""Strata of the moduli space: polyhedra, goodness, bounds, and paths.

A stratum is parametrised by the position of a root vertex (one coordinate per
complex vertex) and one length ``l_e`` per edge, where an edge ``e = {u, v}``
satisfies ``h(v) = h(u) + l_e * w_(u,e)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .complex import ClemensComplex
from .curves import CombinatorialType, ParamTropCurve, bfs_tree, sigma, validate_curve, vkey
from .density import SimpleDensity, validate_density
from .lp import EQ, LT, Constraint, LPResult, Polyhedron, lp_feasibility
from .rational import floor_div


class BoundsError(ValueError):
    pass


def root_of(t) -> object:
    return min(t.vertices, key=vkey)


def _structural_problem(c: ClemensComplex, t: CombinatorialType) -> str | None:
    for v in t.vertices:
        if t.labels[v] not in c.faces:
            return f"label of vertex {v} is not a face"
    for e in t.edges:
        span = t.labels[e.u] | t.labels[e.v]
        if span not in c.faces:
            return f"edge {e.u}-{e.v}: labels do not span a face"
        if len(e.weight) != c.dim:
            return f"edge {e.u}-{e.v}: weight has wrong length"
        if any(x and c.vertices[i] not in span for i, x in enumerate(e.weight)):
            return f"edge {e.u}-{e.v}: weight not supported on the spanned face"
        if sum(e.weight) != 0:
            return f"edge {e.u}-{e.v}: weight has non-zero coordinate sum"
    return None


def _positions(c: ClemensComplex, t: CombinatorialType):
    """Affine expressions (coefficient rows) for each vertex coordinate.

    Returns ``(pos, tree_edges)`` where ``pos[v][i]`` is a coefficient list over
    the stratum variables.
    """
    d, ne = c.dim, len(t.edges)
    nv = d + ne
    root = root_of(t)
    parent, order = bfs_tree(t, root)
    pos = {root: [[Fraction(int(j == i)) for j in range(nv)] for i in range(d)]}
    tree = set()
    for v in order[1:]:
        k, u = parent[v]
        tree.add(k)
        w = t.edges[k].weight_at(u)
        rows = []
        for i in range(d):
            row = list(pos[u][i])
            row[d + k] += w[i]
            rows.append(row)
        pos[v] = rows
    return pos, tree


def variable_names(c: ClemensComplex, t) -> tuple:
    return tuple([f"x[{v}]" for v in c.vertices] + [f"l[{k}]" for k in range(len(t.edges))])


def stratum_polyhedron(c: ClemensComplex, t: CombinatorialType) -> Polyhedron:
    names = variable_names(c, t)
    nv = len(names)
    problem = _structural_problem(c, t)
    if problem is not None:
        return Polyhedron.empty(nv, names, problem)
    d = c.dim
    pos, tree = _positions(c, t)
    cons = []
    root = root_of(t)
    cons.append(Constraint([1] * d + [0] * (nv - d), EQ, 1))
    for v in t.sorted_vertices():
        for i, vid in enumerate(c.vertices):
            row = pos[v][i]
            if vid in t.labels[v]:
                cons.append(Constraint([-a for a in row], LT, 0))
            elif v == root or any(row):
                cons.append(Constraint(row, EQ, 0))
    for k in range(len(t.edges)):
        row = [0] * nv
        row[d + k] = -1
        cons.append(Constraint(row, LT, 0))
    for k, e in enumerate(t.edges):
        if k in tree:
            continue
        w = e.weight
        for i in range(d):
            row = [a - b for a, b in zip(pos[e.u][i], pos[e.v][i])]
            row[d + k] += w[i]
            if any(row):
                cons.append(Constraint(row, EQ, 0))
    return Polyhedron(nv, cons, names)


def closure_polyhedron(c: ClemensComplex, t: CombinatorialType) -> Polyhedron:
    p = stratum_polyhedron(c, t)
    if p.reason is not None:
        return p
    return p.relaxed()


def curve_from_point(c: ClemensComplex, t, x) -> ParamTropCurve:
    """Positions of every vertex of ``t`` at the stratum coordinates ``x``."""
    pos, _ = _positions(c, t)
    positions = {v: tuple(sum((a * b for a, b in zip(row, x) if a), Fraction(0)) for row in pos[v])
                 for v in t.vertices}
    return ParamTropCurve(t.vertices, t.edges, t.genus, t.marks, positions=positions)


def coordinates_of(c: ClemensComplex, k: ParamTropCurve) -> tuple:
    """Stratum coordinates of a curve (root position then edge lengths)."""
    from .curves import edge_length
    root = root_of(k)
    return tuple(k.positions[root]) + tuple(edge_length(k, e) for e in k.edges)


@dataclass(frozen=True)
class Goodness:
    good: bool
    reason: str
    witness: ParamTropCurve | None = None
    lp: LPResult | None = None

    def __bool__(self):
        return self.good


def is_good(c: ClemensComplex, t: CombinatorialType, want_dim: bool = True) -> Goodness:
    p = stratum_polyhedron(c, t)
    if p.reason is not None:
        return Goodness(False, p.reason)
    res = lp_feasibility(p, want_dim=want_dim)
    if not res.feasible:
        return Goodness(False, "stratum is empty", lp=res)
    k = curve_from_point(c, t, res.witness)
    problem = validate_curve(c, k)
    if problem is not None:
        raise AssertionError(f"witness curve is invalid: {problem}")
    return Goodness(True, "ok", k, res)


# -- bounds -------------------------------------------------------------------

@dataclass(frozen=True)
class BoundsReport:
    type_a_bound: int
    sigma_norm_bound: int
    n0: int
    vertex_bound: int
    edge_bound: int
    weight_component_bound: int
    omega_min: Fraction

    def as_dict(self):
        return {"type_a_bound": self.type_a_bound, "sigma_norm_bound": self.sigma_norm_bound,
                "n0": self.n0, "vertex_bound": self.vertex_bound, "edge_bound": self.edge_bound,
                "weight_component_bound": self.weight_component_bound}


def bounds(c: ClemensComplex, d: SimpleDensity, g: int, n: int, A) -> BoundsReport:
    """Explicit finiteness constants for types of genus g, n marks, degree <= A.

    Each type-A vertex has local degree at least the least finite density
    entry, so there are at most ``floor(A / omega_min)`` of them, and every
    component of every sigma and every flag weight is bounded by the same
    number. Vertices of degree below 3 are of type A or carry genus or a mark.
    """
    A = Fraction(A)
    if A < 0:
        raise BoundsError("A must be non-negative")
    if g < 0 or n < 0:
        raise BoundsError("g and n must be non-negative")
    problem = validate_density(c, d)
    if problem is not None:
        raise BoundsError(problem)
    finite = d.finite_values()
    if not finite:
        raise BoundsError("no finite density entry")
    omin = min(finite)
    na = floor_div(A, omin)
    n0 = na + g + n
    vb = max(1, 3 * n0 + 2 * g - 2)
    return BoundsReport(na, na, n0, vb, vb + g - 1, na, omin)


# -- paths ----------------------------------------------------------------------

class PathError(ValueError):
    pass


def extract_paths(t, flag, i: int):
    """``m`` paths of flags in direction ``i`` starting from ``flag = (v0, edge index)``.

    Greedy capacity decrement: each step moves to the far endpoint and leaves
    along the smallest-index edge whose flag weight is positive in direction
    ``i`` and whose capacity is not exhausted. Returns a list of
    ``(flags, end_vertex)``.
    """
    v0, e0 = flag
    edge = t.edges[e0]
    m = edge.weight_at(v0)[i]
    if m <= 0:
        raise PathError("precondition m <= 0")
    cap = [abs(e.weight[i]) for e in t.edges]
    total = sum(cap)
    paths = []
    for _ in range(m):
        if cap[e0] <= 0:
            raise PathError("capacity invariant broken")
        cap[e0] -= 1
        flags = [(v0, e0)]
        v, k = v0, e0
        for _step in range(total + 1):
            nxt = t.edges[k].other(v)
            choice = None
            for j in t.incident(nxt):
                if t.edges[j].weight_at(nxt)[i] > 0 and cap[j] > 0 and j != k:
                    choice = j
                    break
            if choice is None:
                if not any(sigma(t, nxt)):
                    raise PathError("capacity invariant broken")
                paths.append((flags, nxt))
                break
            cap[choice] -= 1
            flags.append((nxt, choice))
            v, k = nxt, choice
        else:
            raise PathError("capacity invariant broken")
    return paths
