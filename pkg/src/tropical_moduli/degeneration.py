"""Degenerations of combinatorial types and the induced order on types."""
from __future__ import annotations

import json
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations_with_replacement, product

from .canonical import canonical_form
from .curves import CombinatorialType, Edge, genus, neg, vkey


class PosetError(RuntimeError):
    pass


@dataclass(frozen=True)
class DegenerationWitness:
    vertex_map: dict  # source vertex -> target vertex
    edge_map: dict  # source edge index -> target edge index (cross-fibre edges only)


def _oriented(x, y, w):
    return (x, y, w) if vkey(x) <= vkey(y) else (y, x, neg(w))


def _fibre_ok(source: CombinatorialType, members, x_genus) -> bool:
    members = set(members)
    inner = [e for e in source.edges if e.u in members and e.v in members]
    start = next(iter(members))
    seen, todo = {start}, [start]
    while todo:
        a = todo.pop()
        for e in inner:
            if a in (e.u, e.v):
                b = e.other(a)
                if b not in seen:
                    seen.add(b)
                    todo.append(b)
    if seen != members:
        return False
    b1 = len(inner) - len(members) + 1
    return x_genus == b1 + sum(source.genus[v] for v in members)


def is_degeneration(target: CombinatorialType, source: CombinatorialType):
    """A witness that ``target`` is a degeneration of ``source``, else ``None``.

    Edges between distinct fibres must correspond bijectively, weights
    included, to the edges of ``target``; edges inside a fibre are contracted
    and their cycles become genus of the image vertex.
    """
    if len(target.marks) != len(source.marks):
        return None
    if len(target.vertices) > len(source.vertices) or len(target.edges) > len(source.edges):
        return None
    if genus(target) != genus(source):
        return None

    forced = {}
    for m_src, m_tgt in zip(source.marks, target.marks):
        if forced.setdefault(m_src, m_tgt) != m_tgt:
            return None

    need = Counter(_oriented(e.u, e.v, e.weight) for e in target.edges)
    cand = {}
    for v in source.vertices:
        if v in forced:
            opts = [forced[v]] if target.labels[forced[v]] <= source.labels[v] else []
        else:
            opts = [x for x in target.sorted_vertices() if target.labels[x] <= source.labels[v]]
        if not opts:
            return None
        cand[v] = opts

    # visit source vertices in BFS order so edge checks happen early
    order = []
    for root in sorted(source.vertices, key=lambda v: (len(cand[v]), vkey(v))):
        if root in order:
            continue
        order.append(root)
        i = len(order) - 1
        while i < len(order):
            a = order[i]
            for j in source.incident(a):
                b = source.edges[j].other(a)
                if b not in order:
                    order.append(b)
            i += 1
    pos = {v: i for i, v in enumerate(order)}
    # edges whose later endpoint is the vertex at that position
    closing = {i: [] for i in range(len(order))}
    for j, e in enumerate(source.edges):
        closing[max(pos[e.u], pos[e.v])].append(j)

    phi = {}
    hits = Counter()
    ntarget = len(target.vertices)

    def assign(i):
        if i == len(order):
            if len(hits) != ntarget or any(need.values()):
                return None
            fibres = {}
            for v, x in phi.items():
                fibres.setdefault(x, []).append(v)
            for x, members in fibres.items():
                if not _fibre_ok(source, members, target.genus[x]):
                    return None
            return dict(phi)
        v = order[i]
        for x in cand[v]:
            phi[v] = x
            hits[x] += 1
            used = []
            ok = True
            for j in closing[i]:
                e = source.edges[j]
                a, b = phi[e.u], phi[e.v]
                if a != b:
                    key = _oriented(a, b, e.weight)
                    if need[key] <= 0:
                        ok = False
                        break
                    need[key] -= 1
                    used.append(key)
            if ok and ntarget - len(hits) <= len(order) - i - 1:
                res = assign(i + 1)
                if res is not None:
                    return res
            for key in used:
                need[key] += 1
            hits[x] -= 1
            if not hits[x]:
                del hits[x]
            del phi[v]
        return None

    vmap = assign(0)
    if vmap is None:
        return None
    pool = {}
    for k, e in enumerate(target.edges):
        pool.setdefault(_oriented(e.u, e.v, e.weight), []).append(k)
    emap = {}
    for j, e in enumerate(source.edges):
        a, b = vmap[e.u], vmap[e.v]
        if a != b:
            emap[j] = pool[_oriented(a, b, e.weight)].pop(0)
    return DegenerationWitness(vmap, emap)


def subdivided(t: CombinatorialType, counts) -> CombinatorialType:
    """Insert ``counts[i]`` genus-free unmarked vertices on edge ``i``.

    Each inserted vertex lies on the open segment, so its label is the union of
    the end labels; both halves keep the original flag weight.
    """
    verts = list(t.vertices)
    labels = dict(t.labels)
    edges = []
    for i, (e, k) in enumerate(zip(t.edges, counts)):
        prev = e.u
        for s in range(k):
            x = f"_s{i}_{s}"
            verts.append(x)
            labels[x] = t.labels[e.u] | t.labels[e.v]
            edges.append(Edge(prev, x, e.weight))
            prev = x
        edges.append(Edge(prev, e.v, e.weight))
    return CombinatorialType(verts, edges, t.genus, t.marks, labels=labels)


def _weight_classes(t):
    return Counter(min(e.weight, neg(e.weight)) for e in t.edges)


def precedes(alpha_prime: CombinatorialType, alpha: CombinatorialType) -> bool:
    """Whether ``alpha_prime`` is the simplification of a degeneration of ``alpha``."""
    if len(alpha_prime.marks) != len(alpha.marks) or genus(alpha_prime) != genus(alpha):
        return False
    slack = len(alpha.vertices) - len(alpha_prime.vertices)
    if slack < 0:
        return False
    big, small = _weight_classes(alpha), _weight_classes(alpha_prime)
    if any(big[w] < n for w, n in small.items()):
        return False
    ne = len(alpha_prime.edges)
    room = min(slack, len(alpha.edges) - ne)
    if room < 0:
        return False
    if ne == 0:
        return is_degeneration(alpha_prime, alpha) is not None
    for k in range(room + 1):
        for combo in combinations_with_replacement(range(ne), k):
            counts = [0] * ne
            for i in combo:
                counts[i] += 1
            # every piece of a subdivided edge needs its own source edge of that weight
            extra = Counter()
            for c, e in zip(counts, alpha_prime.edges):
                extra[min(e.weight, neg(e.weight))] += c
            if any(big[w] < small[w] + c for w, c in extra.items()):
                continue
            if is_degeneration(subdivided(alpha_prime, counts), alpha) is not None:
                return True
    return False


@dataclass
class Poset:
    names: list
    matrix: list  # matrix[i][j] is True iff names[i] precedes names[j]

    def covers(self):
        n = len(self.names)
        out = []
        for i, j in product(range(n), range(n)):
            if i == j or not self.matrix[i][j]:
                continue
            if any(k not in (i, j) and self.matrix[i][k] and self.matrix[k][j] for k in range(n)):
                continue
            out.append((self.names[i], self.names[j]))
        return out

    def minimal(self):
        n = len(self.names)
        return [self.names[j] for j in range(n)
                if not any(i != j and self.matrix[i][j] for i in range(n))]

    def to_json(self):
        adj = {name: [] for name in self.names}
        for a, b in self.covers():
            adj[a].append(b)
        return {"nodes": list(self.names), "covers": adj}

    def to_text(self) -> str:
        return "".join(f"{a} -> {b}\n" for a, b in self.covers())


def _row(args):
    types, i = args
    return [precedes(types[i], t) for t in types]


def build_poset(types, names=None, jobs: int = 1) -> Poset:
    """The matrix of ``precedes`` with the partial-order axioms verified."""
    types = list(types)
    n = len(types)
    names = list(names) if names is not None else [f"T{i}" for i in range(n)]
    forms = [canonical_form(t) for t in types]
    if len(set(forms)) != n:
        raise ValueError("types must be pairwise non-isomorphic")
    if jobs > 1 and n > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            matrix = list(ex.map(_row, [(types, i) for i in range(n)]))
    else:
        matrix = [_row((types, i)) for i in range(n)]
    for i in range(n):
        if not matrix[i][i]:
            raise PosetError(f"poset axiom violated: reflexivity fails at {names[i]}")
    for i in range(n):
        for j in range(n):
            if i != j and matrix[i][j] and matrix[j][i]:
                raise PosetError(f"poset axiom violated: antisymmetry ({names[i]}, {names[j]})")
            if not matrix[i][j]:
                continue
            for k in range(n):
                if matrix[j][k] and not matrix[i][k]:
                    raise PosetError("poset axiom violated: transitivity "
                                     f"({names[i]}, {names[j]}, {names[k]})")
    return Poset(names, matrix)


def poset_json(p: Poset) -> str:
    return json.dumps(p.to_json(), sort_keys=True, indent=2)
