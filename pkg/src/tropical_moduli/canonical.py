"""Canonical forms of combinatorial types up to label-preserving isomorphism.

Colour refinement on vertices (face label, genus, mark indices, degree, then
neighbour colours with oriented flag weights) followed by individualisation
backtracking; the lexicographically least leaf encoding is the canonical form.
Isomorphisms preserve labels, genera, flag weights and every mark index.
"""
from __future__ import annotations

from .curves import CombinatorialType


def _vertex_data(t: CombinatorialType):
    marks = {v: [] for v in t.vertices}
    for i, m in enumerate(t.marks):
        marks[m].append(i)
    return {v: (tuple(sorted(t.labels[v])), t.genus[v], tuple(marks[v]))
            for v in t.vertices}


def _rank(sig: dict) -> dict:
    order = sorted(set(sig.values()))
    pos = {s: i for i, s in enumerate(order)}
    return {v: pos[s] for v, s in sig.items()}


def _refine(colour, adj):
    """Iterate neighbourhood refinement until the number of cells is stable."""
    while True:
        sig = {v: (colour[v], tuple(sorted((colour[u], w) for u, w in adj[v])))
               for v in colour}
        new = _rank(sig)
        if len(set(new.values())) == len(set(colour.values())):
            return new
        colour = new


def canonical_form(t: CombinatorialType) -> bytes:
    data = _vertex_data(t)
    adj = {v: [] for v in t.vertices}
    for e in t.edges:
        adj[e.u].append((e.v, e.weight))
        adj[e.v].append((e.u, tuple(-x for x in e.weight)))
    colour = _refine(_rank({v: (data[v], len(adj[v])) for v in t.vertices}), adj)

    best = None

    def encode(colour):
        n = len(colour)
        verts = tuple(data[v] for v in sorted(colour, key=colour.get))
        edges = []
        for e in t.edges:
            a, b, w = colour[e.u], colour[e.v], e.weight
            if a > b:
                a, b, w = b, a, tuple(-x for x in w)
            edges.append((a, b, w))
        return (n, verts, tuple(sorted(edges)))

    def search(colour):
        nonlocal best
        cells = {}
        for v, c in colour.items():
            cells.setdefault(c, []).append(v)
        target = next((c for c in sorted(cells) if len(cells[c]) > 1), None)
        if target is None:
            enc = encode(colour)
            if best is None or enc < best:
                best = enc
            return
        seen_orbit = set()
        for v in cells[target]:
            # cheap pruning: vertices with identical neighbourhoods are interchangeable
            key = tuple(sorted((u, w) for u, w in adj[v]))
            if key in seen_orbit:
                continue
            seen_orbit.add(key)
            split = {u: 2 * c + (1 if c == target and u != v else 0)
                     for u, c in colour.items()}
            search(_refine(_rank(split), adj))

    search(colour)
    return repr(best).encode()


def isomorphic(s: CombinatorialType, t: CombinatorialType) -> bool:
    return canonical_form(s) == canonical_form(t)
