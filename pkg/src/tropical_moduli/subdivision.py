"""Lattice subdivisions of a Clemens polytope and curves on them.

A subdivision of scale ``nu`` has its vertices in ``(1/nu) Z^I``. Its points are
written in *fine* barycentric coordinates (one per fine vertex); the lattice map
``L`` sends fine vertex ``v`` to ``nu * pos(v)`` and carries fine weights to base
weights.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations, product

from .canonical import canonical_form
from .complex import ClemensComplex, support
from .curves import (CombinatorialType, Edge, ParamTropCurve, edge_length, genus, simplify,
                     type_of)
from .degeneration import precedes
from .lp import EQ, LT, Constraint, Polyhedron, determinant, inverse, lp_feasibility, rank


class SubdivisionError(ValueError):
    pass


@dataclass(frozen=True)
class Subdivision:
    base: ClemensComplex
    nu: int
    fine: ClemensComplex
    pos: dict  # fine vertex id -> base point
    _cells: list = field(default=None, repr=False, compare=False)

    @property
    def lattice_map(self):
        """Integer matrix ``L`` (rows: base vertices, columns: fine vertices)."""
        return [[int(self.nu * self.pos[v][i]) for v in self.fine.vertices]
                for i in range(self.base.dim)]

    def cells(self):
        """Fine simplices that are full-dimensional in a base face, with data.

        Each entry is ``(simplex, base_face, coords, inverse)`` where ``coords``
        lists the base-face coordinates used and ``inverse`` maps them to
        barycentric coordinates on the simplex.
        """
        if self._cells is None:
            out = []
            for f in self.fine.sorted_faces():
                verts = sorted(f, key=self.fine.index)
                span = frozenset().union(*(support(self.base, self.pos[v]) for v in verts))
                if len(verts) != len(span):
                    continue
                coords = self.base.face_indices(span)
                mat = [[self.pos[v][i] for v in verts] for i in coords]
                inv = inverse(mat)
                if inv is None:
                    continue
                out.append((verts, span, coords, inv))
            object.__setattr__(self, "_cells", out)
        return self._cells

    def fine_point(self, x):
        """Fine barycentric coordinates of a base point."""
        x = tuple(Fraction(a) for a in x)
        supp = support(self.base, x)
        for verts, span, coords, inv in self.cells():
            if len(span) != len(supp) or span != supp:
                continue
            lam = [sum((a * x[i] for a, i in zip(row, coords)), Fraction(0)) for row in inv]
            if all(a >= 0 for a in lam):
                out = [Fraction(0)] * self.fine.dim
                for v, a in zip(verts, lam):
                    out[self.fine.index(v)] = a
                return tuple(out)
        raise SubdivisionError("point not covered by the subdivision")


@dataclass(frozen=True)
class SubdivisionDatum:
    subdivision: Subdivision
    anchor_type: CombinatorialType


def vertex_id(a) -> str:
    return ",".join(str(x) for x in a)


def edgewise_subdivide(c: ClemensComplex, nu: int) -> Subdivision:
    """The ``nu``-fold edgewise (Freudenthal) subdivision.

    On a face with ordered vertices ``i_1 < ... < i_k`` use the cumulative
    coordinates ``z_j = nu * (x_{i_{j+1}} + ... + x_{i_k})``; the face becomes the
    order simplex ``nu >= z_1 >= ... >= z_{k-1} >= 0``, which is a union of
    ``nu^{k-1}`` Kuhn simplices. The global vertex order makes the pieces
    agree on shared faces.
    """
    if nu < 1:
        raise SubdivisionError("nu must be at least 1")
    points = {}
    simplices = set()
    for face in c.maximal_faces():
        idx = c.face_indices(face)
        d = len(idx) - 1
        for base in product(range(nu), repeat=d):
            for perm in permutations(range(d)):
                zs = [list(base)]
                for j in perm:
                    z = list(zs[-1])
                    z[j] += 1
                    zs.append(z)
                # keep the Kuhn simplex when its barycentre is in the order simplex
                bary = [sum(z[j] for z in zs) for j in range(d)]
                total = (d + 1) * nu
                if d and not (total >= bary[0] and all(bary[j] >= bary[j + 1] for j in range(d - 1))
                              and bary[-1] >= 0):
                    continue
                simplex = []
                for z in zs:
                    y = [nu] + z + [0]
                    a = [0] * c.dim
                    for j, i in enumerate(idx):
                        a[i] = y[j] - y[j + 1]
                    key = tuple(a)
                    points[key] = tuple(Fraction(x, nu) for x in a)
                    simplex.append(vertex_id(key))
                simplices.add(tuple(sorted(simplex)))
    order = sorted(points, reverse=True)
    vertices = [vertex_id(a) for a in order]
    fine = ClemensComplex.from_maximal_faces(vertices, sorted(simplices))
    pos = {vertex_id(a): points[a] for a in order}
    return Subdivision(c, nu, fine, pos)


def validate_subdivision(s: Subdivision) -> str | None:
    c, nu = s.base, s.nu
    if nu < 1:
        return "nu must be at least 1"
    for v in s.fine.vertices:
        p = s.pos.get(v)
        if p is None:
            return f"fine vertex {v} has no position"
        if len(p) != c.dim or any(x < 0 for x in p) or sum(p) != 1:
            return f"fine vertex {v} is not a point of the base simplex"
        if any((nu * x).denominator != 1 for x in p):
            return f"fine vertex {v} not in lattice"
        if support(c, p) not in c.faces:
            return f"fine vertex {v} is not in the base complex"
    full = []
    for f in s.fine.faces:
        span = frozenset().union(*(support(c, s.pos[v]) for v in f))
        if span not in c.faces:
            return f"fine face {sorted(f)} not inside a base face"
        verts = sorted(f, key=s.fine.index)
        coords = c.face_indices(span)[:-1]
        a0 = verts[0]
        rows = [[nu * (s.pos[v][i] - s.pos[a0][i]) for i in coords] for v in verts[1:]]
        if rank(rows) < len(rows):
            return f"fine simplex {sorted(f)} is degenerate"
        if len(verts) == len(span):
            if abs(determinant(rows)) != 1:
                return f"fine simplex {sorted(f)} is not unimodular"
            full.append(span)
        elif not any(f < h for h in s.fine.faces):
            return f"fine simplex {sorted(f)} is not full-dimensional"
    counts = {}
    for span in full:
        counts[span] = counts.get(span, 0) + 1
    for face in c.faces:
        if counts.get(face, 0) != nu ** (len(face) - 1):
            return (f"base face {sorted(face)} is covered by {counts.get(face, 0)} "
                    f"simplices, expected {nu ** (len(face) - 1)}")
    return None


# -- projection -----------------------------------------------------------------

def project_point(s: Subdivision, x):
    out = [Fraction(0)] * s.base.dim
    for v, a in zip(s.fine.vertices, x):
        if a:
            p = s.pos[v]
            for i in range(s.base.dim):
                out[i] += a * p[i]
    return tuple(out)


def project_weight(s: Subdivision, w):
    L = s.lattice_map
    return tuple(sum(row[j] * w[j] for j in range(len(w)) if w[j]) for row in L)


def project(s: Subdivision, x):
    """Image in the base complex of a fine point, weight or curve.

    Curves are simplified after projection.
    """
    if isinstance(x, ParamTropCurve):
        positions = {v: project_point(s, p) for v, p in x.positions.items()}
        edges = [Edge(e.u, e.v, project_weight(s, e.weight)) for e in x.edges]
        k = ParamTropCurve(x.vertices, edges, x.genus, x.marks, positions=positions)
        return simplify(k)
    if len(x) != s.fine.dim:
        raise SubdivisionError("vector length does not match the fine complex")
    # fine points sum to 1, fine weights (differences of points) to 0
    total = sum(x)
    if total == 1:
        return project_point(s, x)
    if total == 0:
        return project_weight(s, x)
    raise SubdivisionError("neither a point nor a weight")


# -- refinement ---------------------------------------------------------------

class LiftError(ArithmeticError):
    pass


def _breaks(s: Subdivision, p, q):
    """Parameters in (0, 1) where the segment [p, q] crosses fine walls."""
    span = support(s.base, p) | support(s.base, q)
    ts = set()
    for verts, face, coords, inv in s.cells():
        if not span <= face:
            continue
        lp = [sum((a * p[i] for a, i in zip(row, coords)), Fraction(0)) for row in inv]
        lq = [sum((a * q[i] for a, i in zip(row, coords)), Fraction(0)) for row in inv]
        lo, hi = Fraction(0), Fraction(1)
        for a, b in zip(lp, lq):
            slope = b - a
            if slope > 0:
                lo = max(lo, -a / slope)
            elif slope < 0:
                hi = min(hi, -a / slope)
            elif a < 0:
                lo, hi = Fraction(1), Fraction(0)
        if lo <= hi:
            ts.update(t for t in (lo, hi) if 0 < t < 1)
    return sorted(ts)


def refine_curve(s: Subdivision, k: ParamTropCurve) -> ParamTropCurve:
    """The same curve drawn on the fine complex, broken at every wall crossing."""
    verts = list(k.vertices)
    positions = dict(k.positions)
    genus_map = dict(k.genus)
    pieces = []  # (u, v, t0, t1, edge)
    for i, e in enumerate(k.edges):
        p, q = k.positions[e.u], k.positions[e.v]
        ts = _breaks(s, p, q)
        prev, t_prev = e.u, Fraction(0)
        for j, t in enumerate(ts):
            x = f"~{i}.{j}"
            verts.append(x)
            genus_map[x] = 0
            positions[x] = tuple(a + t * (b - a) for a, b in zip(p, q))
            pieces.append((prev, x, t_prev, t, e))
            prev, t_prev = x, t
        pieces.append((prev, e.v, t_prev, Fraction(1), e))
    fine_pos = {v: s.fine_point(positions[v]) for v in verts}
    edges = []
    for u, v, t0, t1, e in pieces:
        length = edge_length(k, e) * (t1 - t0)
        delta = [b - a for a, b in zip(fine_pos[u], fine_pos[v])]
        w = [x / (s.nu * length) for x in delta]
        if any(x.denominator != 1 for x in w):
            raise LiftError("non-integral lift")
        edges.append(Edge(u, v, tuple(int(x) for x in w)))
    return ParamTropCurve(verts, edges, genus_map, k.marks, positions=fine_pos)


def in_U(datum: SubdivisionDatum, k: ParamTropCurve, g: int | None = None,
         n: int | None = None) -> bool:
    """Whether ``k`` lies in the open set attached to the datum."""
    if g is not None and genus(k) != g:
        raise SubdivisionError("curve has the wrong genus")
    if n is not None and len(k.marks) != n:
        raise SubdivisionError("curve has the wrong number of marks")
    s = datum.subdivision
    fine_type = type_of(s.fine, refine_curve(s, k))
    return precedes(datum.anchor_type, fine_type)


# -- the finite set of fine types -------------------------------------------------

def _wall_functions(s: Subdivision):
    """Barycentric coordinate functionals of every fine cell, per base face."""
    out = {}
    for verts, face, coords, inv in s.cells():
        funcs = out.setdefault(face, set())
        for row in inv:
            vec = [Fraction(0)] * s.base.dim
            for a, i in zip(row, coords):
                vec[i] = a
            funcs.add(_normalise(vec))
    return out


def _normalise(vec):
    lead = next((a for a in vec if a), None)
    if lead is None:
        return tuple(vec)
    return tuple(a / abs(lead) for a in vec)


def _dot(a, b):
    return sum((x * y for x, y in zip(a, b) if x and y), Fraction(0))


def _cell_functions(s: Subdivision, t: CombinatorialType):
    """Affine functions of the stratum coordinates whose signs fix the refined type."""
    from .strata import _positions
    walls = _wall_functions(s)
    c = s.base
    pos, _ = _positions(c, t)

    def at(v, f):  # f(h(v)) as a coefficient row over the stratum variables
        return [sum((f[i] * pos[v][i][j] for i in range(c.dim) if f[i]), Fraction(0))
                for j in range(len(pos[v][0]))]

    funcs = []
    for v in t.vertices:
        for face, fs in walls.items():
            if t.labels[v] <= face:
                funcs.extend(at(v, f) for f in fs)
    nvars = c.dim + len(t.edges)
    for k, e in enumerate(t.edges):
        span = t.labels[e.u] | t.labels[e.v]
        fs = set()
        for face, group in walls.items():
            if span <= face:
                fs.update(group)
        crossing = [f for f in fs if _dot(f, e.weight) != 0]
        for i, f in enumerate(crossing):
            a = _dot(f, e.weight)
            for g in crossing[i + 1:]:
                b = _dot(g, e.weight)
                # sign of s_f - s_g with s_f = -f(h(u)) / a, scaled by a * b
                row = [-b * x + a * y for x, y in zip(at(e.u, f), at(e.u, g))]
                funcs.append(row)
    out = []
    seen = set()
    for row in funcs:
        if not any(row[c.dim:]) and not any(row[:c.dim]):
            continue
        key = _normalise(row)
        if key not in seen and tuple(-x for x in key) not in seen:
            seen.add(key)
            out.append(row)
    assert all(len(r) == nvars for r in out)
    return out


def _cells(p: Polyhedron, funcs):
    """Witness points of every non-empty sign cell of ``funcs`` inside ``p``."""
    n = p.num_vars
    out = []

    def go(poly, i):
        if i == len(funcs):
            res = lp_feasibility(poly, want_dim=False)
            if res.feasible:
                out.append(res.witness)
            return
        f = funcs[i]
        for con in (Constraint(f, LT, 0), Constraint(f, EQ, 0),
                    Constraint([-a for a in f], LT, 0)):
            q = poly.add(con)
            if lp_feasibility(q, want_dim=False).feasible:
                go(q, i + 1)

    if lp_feasibility(p, want_dim=False).feasible:
        go(p, 0)
    assert all(len(x) == n for x in out)
    return out


def refined_types(s: Subdivision, t: CombinatorialType):
    """Every fine type of ``refine_curve(k)`` for ``k`` in the stratum of ``t``."""
    from .strata import curve_from_point, stratum_polyhedron
    p = stratum_polyhedron(s.base, t)
    found = {}
    for x in _cells(p, _cell_functions(s, t)):
        fine = type_of(s.fine, refine_curve(s, curve_from_point(s.base, t, x)))
        found.setdefault(canonical_form(fine), fine)
    return [found[k] for k in sorted(found)]


def xi_set(datum: SubdivisionDatum, g: int, n: int, A, d):
    """Fine types of curves of degree at most ``A`` that the anchor precedes."""
    from .enumeration import enumerate_types
    s = datum.subdivision
    anchor = datum.anchor_type
    if genus(anchor) != g or len(anchor.marks) != n:
        return []
    found = {}
    for t in enumerate_types(s.base, d, g, n, A):
        for fine in refined_types(s, t):
            if precedes(anchor, fine):
                found.setdefault(canonical_form(fine), fine)
    return [found[k] for k in sorted(found)]
