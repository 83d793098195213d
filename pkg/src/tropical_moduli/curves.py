"""Combinatorial types and parametrized tropical curves in a Clemens polytope."""
from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Mapping

from .complex import ClemensComplex, ComplexError, carrier, support
from .density import SimpleDensity, local_degree


def vkey(v):
    """Sort key for vertex ids (ints before strings, each in natural order)."""
    return (isinstance(v, str), v)


def neg(w):
    return tuple(-x for x in w)


def vadd(a, b):
    return tuple(x + y for x, y in zip(a, b))


def norm_squared(w) -> int:
    return sum(x * x for x in w)


@dataclass(frozen=True)
class Edge:
    u: object
    v: object
    weight: tuple  # w_{(u, e)}

    def __post_init__(self):
        object.__setattr__(self, "weight", tuple(int(x) for x in self.weight))

    def weight_at(self, x):
        if x == self.u:
            return self.weight
        if x == self.v:
            return neg(self.weight)
        raise KeyError(x)

    def other(self, x):
        return self.v if x == self.u else self.u

    def reversed(self) -> "Edge":
        return Edge(self.v, self.u, neg(self.weight))


@dataclass(frozen=True, eq=True)
class _Decorated:
    vertices: tuple
    edges: tuple
    genus: Mapping = field(default_factory=dict)
    marks: tuple = ()

    __hash__ = None

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(self.edges))
        object.__setattr__(self, "marks", tuple(self.marks))
        object.__setattr__(self, "genus", {v: int(self.genus.get(v, 0)) for v in self.vertices})

    # -- graph helpers -------------------------------------------------
    def incident(self, v):
        """Indices of edges at ``v``."""
        return [i for i, e in enumerate(self.edges) if v in (e.u, e.v)]

    def deg(self, v) -> int:
        return sum(1 for e in self.edges if v in (e.u, e.v))

    def flags(self, v):
        return [(i, e.weight_at(v)) for i, e in enumerate(self.edges) if v in (e.u, e.v)]

    def n_marks(self, v) -> int:
        return sum(1 for m in self.marks if m == v)

    def is_connected(self) -> bool:
        if not self.vertices:
            return False
        adj = {v: [] for v in self.vertices}
        for e in self.edges:
            adj[e.u].append(e.v)
            adj[e.v].append(e.u)
        seen = {self.vertices[0]}
        todo = [self.vertices[0]]
        while todo:
            x = todo.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    todo.append(y)
        return len(seen) == len(self.vertices)

    def b1(self) -> int:
        return len(self.edges) - len(self.vertices) + 1

    def weight_dim(self) -> int | None:
        return len(self.edges[0].weight) if self.edges else None

    def sorted_vertices(self):
        return sorted(self.vertices, key=vkey)


@dataclass(frozen=True, eq=True)
class CombinatorialType(_Decorated):
    labels: Mapping = field(default_factory=dict)  # v -> frozenset of complex ids

    __hash__ = None

    def __post_init__(self):
        super().__post_init__()
        object.__setattr__(self, "labels", {v: frozenset(self.labels[v]) for v in self.vertices})


@dataclass(frozen=True, eq=True)
class ParamTropCurve(_Decorated):
    positions: Mapping = field(default_factory=dict)  # v -> tuple of Fraction

    __hash__ = None

    def __post_init__(self):
        super().__post_init__()
        object.__setattr__(self, "positions",
                           {v: tuple(Fraction(x) for x in self.positions[v]) for v in self.vertices})


def genus(t: _Decorated) -> int:
    return t.b1() + sum(t.genus.values())


def sigma(t: _Decorated, v, dim: int | None = None) -> tuple:
    if dim is None:
        dim = t.weight_dim()
        if dim is None and isinstance(t, ParamTropCurve):
            dim = len(t.positions[v])
    total = [0] * (dim or 0)
    for _, w in t.flags(v):
        total = [a + b for a, b in zip(total, w)]
    return tuple(total)


def vertex_class(t: _Decorated, v) -> str:
    return "A" if any(sigma(t, v)) else "B"


def _removable(t: _Decorated, v) -> bool:
    return (t.deg(v) == 2 and t.genus[v] == 0 and t.n_marks(v) == 0
            and not any(sigma(t, v)))


def is_simple(t: _Decorated) -> bool:
    return not any(_removable(t, v) for v in t.vertices)


def simplify(x):
    """Remove every type-B vertex of degree 2 without genus or marks.

    Works for types and curves; the merged edge keeps the outer flag weights.
    """
    while True:
        v = next((v for v in x.sorted_vertices() if _removable(x, v)), None)
        if v is None:
            return x
        i, j = x.incident(v)
        e1, e2 = x.edges[i], x.edges[j]
        a, b = e1.other(v), e2.other(v)
        if a == b:
            raise ValueError("simplification would create a self-loop")
        merged = Edge(a, b, e1.weight_at(a))
        edges = [e for k, e in enumerate(x.edges) if k not in (i, j)]
        edges.insert(i, merged)
        verts = tuple(u for u in x.vertices if u != v)
        genus_map = {u: x.genus[u] for u in verts}
        if isinstance(x, CombinatorialType):
            x = CombinatorialType(verts, tuple(edges), genus_map, x.marks,
                                  labels={u: x.labels[u] for u in verts})
        else:
            x = ParamTropCurve(verts, tuple(edges), genus_map, x.marks,
                               positions={u: x.positions[u] for u in verts})


def type_of(c: ClemensComplex, k: ParamTropCurve) -> CombinatorialType:
    labels = {v: carrier(c, k.positions[v]) for v in k.vertices}
    return CombinatorialType(k.vertices, k.edges, k.genus, k.marks, labels=labels)


def degree(c: ClemensComplex, x, d: SimpleDensity):
    """Tropical degree and per-vertex local degrees.

    Raises ``DensityError("sigma outside J")`` for structurally unrealisable
    types.
    """
    if isinstance(x, ParamTropCurve):
        x = type_of(c, x)
    local = {}
    for v in x.vertices:
        s = sigma(x, v, c.dim)
        local[v] = local_degree(c, d, x.labels[v], s) if any(s) else Fraction(0)
    total = Fraction(0)
    for v in x.vertices:
        total = total + local[v]
    return total, local


def edge_length(k: ParamTropCurve, e: Edge):
    """Scalar ``l`` with ``h(v) - h(u) = l * w_(u,e)``, or ``None`` if not parallel."""
    diff = [b - a for a, b in zip(k.positions[e.u], k.positions[e.v])]
    ell = None
    for dx, w in zip(diff, e.weight):
        if w == 0:
            if dx != 0:
                return None
            continue
        r = Fraction(dx) / w
        if ell is None:
            ell = r
        elif r != ell:
            return None
    return ell


def validate_curve(c: ClemensComplex, k: ParamTropCurve) -> str | None:
    if not k.vertices:
        return "no vertices"
    if len(set(k.vertices)) != len(k.vertices):
        return "duplicate vertex ids"
    for v in k.vertices:
        p = k.positions.get(v)
        if p is None:
            return f"vertex {v} has no position"
        try:
            carrier(c, p)
        except ComplexError as exc:
            return f"vertex {v}: {exc}"
        if k.genus[v] < 0:
            return f"vertex {v} has negative genus"
    for m in k.marks:
        if m not in k.positions:
            return f"mark at unknown vertex {m}"
    for e in k.edges:
        if e.u not in k.positions or e.v not in k.positions:
            return "edge uses unknown vertex"
        if e.u == e.v:
            return "self-loop"
        if len(e.weight) != c.dim:
            return "weight has wrong length"
        if not any(e.weight):
            return "zero weight vector"
    if not k.is_connected():
        return "graph not connected"
    for e in k.edges:
        pu, pv = k.positions[e.u], k.positions[e.v]
        if pu == pv:
            return "degenerate edge"
        if support(c, pu) | support(c, pv) not in c.faces:
            return "segment not in a face"
        ell = edge_length(k, e)
        if ell is None:
            return "weight not parallel to edge"
        if ell < 0:
            return "weight points toward vertex"
    return None


def contract_zero_edges(k: ParamTropCurve) -> ParamTropCurve:
    """Contract every edge whose endpoints coincide.

    Each contracted connected piece becomes one vertex carrying the first Betti
    number of the piece plus the genera of its vertices.
    """
    parent = {v: v for v in k.vertices}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    zero = [e for e in k.edges if k.positions[e.u] == k.positions[e.v]]
    for e in zero:
        a, b = find(e.u), find(e.v)
        if a != b:
            if vkey(b) < vkey(a):
                a, b = b, a
            parent[b] = a
    root = {v: find(v) for v in k.vertices}
    verts = tuple(v for v in k.vertices if root[v] == v)
    genus_map = Counter()
    for v in k.vertices:
        genus_map[root[v]] += k.genus[v]
    inner_edges = Counter(root[e.u] for e in zero)
    sizes = Counter(root.values())
    for r in verts:
        genus_map[r] += inner_edges[r] - sizes[r] + 1
    edges = tuple(Edge(root[e.u], root[e.v], e.weight) for e in k.edges
                  if k.positions[e.u] != k.positions[e.v])
    return ParamTropCurve(verts, edges, dict(genus_map), tuple(root[m] for m in k.marks),
                          positions={v: k.positions[v] for v in verts})


def bfs_tree(t: _Decorated, root):
    """Parent map ``v -> (edge index, parent)`` of a BFS tree and the order."""
    parent = {root: None}
    order = [root]
    queue = deque([root])
    while queue:
        x = queue.popleft()
        for i in t.incident(x):
            y = t.edges[i].other(x)
            if y not in parent:
                parent[y] = (i, x)
                order.append(y)
                queue.append(y)
    return parent, order


def relabel(t, mapping):
    """Rename vertices of a type or curve through ``mapping``."""
    verts = tuple(mapping[v] for v in t.vertices)
    edges = tuple(Edge(mapping[e.u], mapping[e.v], e.weight) for e in t.edges)
    genus_map = {mapping[v]: g for v, g in t.genus.items()}
    marks = tuple(mapping[m] for m in t.marks)
    if isinstance(t, CombinatorialType):
        return CombinatorialType(verts, edges, genus_map, marks,
                                 labels={mapping[v]: f for v, f in t.labels.items()})
    return ParamTropCurve(verts, edges, genus_map, marks,
                          positions={mapping[v]: p for v, p in t.positions.items()})


def with_labels(t: _Decorated, labels) -> CombinatorialType:
    return CombinatorialType(t.vertices, t.edges, t.genus, t.marks, labels=labels)


def strip_positions(k: ParamTropCurve, c: ClemensComplex) -> CombinatorialType:
    return type_of(c, k)


__all__ = [
    "Edge", "CombinatorialType", "ParamTropCurve", "genus", "sigma", "vertex_class",
    "is_simple", "simplify", "type_of", "degree", "validate_curve", "norm_squared",
    "edge_length", "contract_zero_edges", "relabel", "replace",
]
