"""Enumeration of the good simple types of bounded degree.

The search runs in two stages.

1. *Bare* types: every vertex has genus 0 and no marks, and every vertex of
   degree 2 is of type A. Graphs are grown in breadth-first order; a vertex is
   *closed* once all its edges to later vertices are chosen, at which point its
   sigma and local degree are final and the running degree is checked
   against ``A``. Pruning rules, each valid for every realisable type:

   * an edge ``{u, v}`` has weight supported on ``I_u | I_v`` (a face), with
     negative entries on ``I_u - I_v`` and positive entries on ``I_v - I_u``
     (the segment leaves the faces it does not end in);
   * every weight component is at most ``floor(A / (2 omega_min))`` in absolute
     value: along direction ``i`` the flow ``w^i`` is acyclic, so it is
     bounded by the total positive part of ``sigma^i``, which is half of
     ``sum_v |sigma_v^i| <= A / omega_min``;
   * ``|V| <= max(1, 2 N_A + 2 b_1 - 2)`` because every vertex of degree at
     most 2 is of type A (handshake count).

2. *Decorations*: genus ``g - b_1`` and the ``n`` labelled marks are spread over
   the existing vertices and over new degree-2 vertices inserted on edges (each
   inserted vertex must carry genus or a mark to stay simple). Every simple
   type arises this way from the simplification of its undecorated graph.

Types are deduplicated by canonical form and the bare ones are filtered by LP
feasibility of their strata.
"""
from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from itertools import combinations_with_replacement, product

from .canonical import canonical_form
from .complex import ClemensComplex
from .curves import CombinatorialType, Edge
from .density import DensityError, SimpleDensity, local_degree
from .rational import floor_div
from .strata import bounds, is_good


def edge_weight_options(c: ClemensComplex, iu, iv, bound: int):
    """Weights ``w_(u,e)`` admissible for an edge from label ``iu`` to ``iv``."""
    span = iu | iv
    if span not in c.faces or bound <= 0:
        return []
    idx = c.face_indices(span)
    ranges = []
    for i in idx:
        v = c.vertices[i]
        if v in iu and v not in iv:
            ranges.append(range(-bound, 0))
        elif v in iv and v not in iu:
            ranges.append(range(1, bound + 1))
        else:
            ranges.append(range(-bound, bound + 1))
    out = []
    for comps in product(*ranges):
        if sum(comps) != 0 or not any(comps):
            continue
        w = [0] * c.dim
        for i, x in zip(idx, comps):
            w[i] = x
        out.append(tuple(w))
    return out


class _BareSearch:
    def __init__(self, c, d, A, g, na, flux, rng=None):
        self.c, self.d, self.A, self.g = c, d, A, g
        self.na = na
        self.vmax = max(1, 2 * na + 2 * g - 2)
        self.faces = c.sorted_faces()
        self.rank = {f: i for i, f in enumerate(self.faces)}
        self.spans = {f: [h for h in self.faces if f | h in c.faces] for f in self.faces}
        if rng is not None:
            rng.shuffle(self.faces)
            for f in self.spans:
                rng.shuffle(self.spans[f])
        self._local = {}
        self.rng = rng
        self.flux = flux
        self.omega_min = min(d.finite_values())
        self._opts = {}
        self.found = []

    def options(self, iu, iv):
        key = (iu, iv)
        if key not in self._opts:
            opts = edge_weight_options(self.c, iu, iv, self.flux)
            if self.rng is not None:
                self.rng.shuffle(opts)
            self._opts[key] = opts
        return self._opts[key]

    def run(self, root_label):
        self.labels = [root_label]
        self.sig = [[0] * self.c.dim]
        self.deg = [0]
        self.edges = []
        self.extra = 0  # edges beyond a spanning tree
        self.total = 0
        self.closed_sum = [0] * self.c.dim
        self.root_key = None
        self.close(0)
        return self.found

    # -- helpers --------------------------------------------------------------
    def _add(self, u, v, w):
        self.edges.append((u, v, w))
        self.deg[u] += 1
        self.deg[v] += 1
        su, sv = self.sig[u], self.sig[v]
        for i, x in enumerate(w):
            if x:
                su[i] += x
                sv[i] -= x

    def _pop(self):
        u, v, w = self.edges.pop()
        self.deg[u] -= 1
        self.deg[v] -= 1
        su, sv = self.sig[u], self.sig[v]
        for i, x in enumerate(w):
            if x:
                su[i] -= x
                sv[i] += x

    def _multisets(self, u, v, lo, hi):
        opts = self.options(self.labels[u], self.labels[v])
        for k in range(lo, hi + 1):
            for idx in combinations_with_replacement(range(len(opts)), k):
                yield idx, [opts[i] for i in idx]

    def local(self, label, s):
        key = (label, tuple(s))
        if key not in self._local:
            try:
                self._local[key] = local_degree(self.c, self.d, label, s) if any(s) else 0
            except DensityError:
                self._local[key] = None
        return self._local[key]

    # -- search -----------------------------------------------------------------
    def close(self, u):
        if u == len(self.labels):
            self.emit()
            return
        self.reached(u, u + 1, len(self.labels))

    def reached(self, u, v, r0):
        if v == r0:
            self.children(u, None)
            return
        for _, ms in self._multisets(u, v, 0, self.g - self.extra):
            for w in ms:
                self._add(u, v, w)
            self.extra += len(ms)
            self.reached(u, v + 1, r0)
            self.extra -= len(ms)
            for _ in ms:
                self._pop()

    def children(self, u, prev):
        self.finish(u)
        if len(self.labels) >= self.vmax:
            return
        iu = self.labels[u]
        for lab in self.spans[iu]:
            self.labels.append(lab)
            self.sig.append([0] * self.c.dim)
            self.deg.append(0)
            x = len(self.labels) - 1
            for idx, ms in self._multisets(u, x, 1, 1 + self.g - self.extra):
                key = (self.rank[lab], idx)
                if prev is not None and key < prev:
                    continue
                for w in ms:
                    self._add(u, x, w)
                self.extra += len(ms) - 1
                self.children(u, key)
                self.extra -= len(ms) - 1
                for _ in ms:
                    self._pop()
            self.labels.pop()
            self.sig.pop()
            self.deg.pop()

    def finish(self, u):
        s = self.sig[u]
        deg = self.deg[u]
        if deg == 0 and len(self.labels) > 1:
            return
        if deg == 2 and not any(s):
            return
        # the root is a vertex minimising (degree, label order)
        key = (deg, self.rank[self.labels[u]])
        if u == 0:
            self.root_key = key
        elif key < self.root_key:
            return
        local = self.local(self.labels[u], s)
        if local is None:
            return
        total = self.total + local
        if total > self.A:
            return
        # open vertices carry the opposite of the closed vertices' net sigma
        for i in range(self.c.dim):
            self.closed_sum[i] += s[i]
        if total + self.omega_min * max(map(abs, self.closed_sum)) <= self.A:
            saved = self.total
            self.total = total
            self.close(u + 1)
            self.total = saved
        for i in range(self.c.dim):
            self.closed_sum[i] -= s[i]

    def emit(self):
        nv = len(self.labels)
        b1 = len(self.edges) - nv + 1
        if nv > max(1, 2 * self.na + 2 * b1 - 2):
            return
        self.found.append((list(self.labels), list(self.edges)))


def _bare_for_root(args):
    c, d, A, g, na, flux, root, seed = args
    rng = random.Random(seed) if seed is not None else None
    search = _BareSearch(c, d, A, g, na, flux, rng)
    return search.run(root)


def _make_type(labels, edges):
    verts = list(range(len(labels)))
    return CombinatorialType(verts, [Edge(u, v, w) for u, v, w in edges], {}, (),
                             labels=dict(enumerate(labels)))


def bare_types(c: ClemensComplex, d: SimpleDensity, g: int, A, jobs: int = 1, seed=None):
    """Good simple undecorated types of first Betti number at most ``g``."""
    rep = bounds(c, d, g, 0, A)
    flux = floor_div(A, 2 * rep.omega_min)
    roots = c.sorted_faces()
    if seed is not None:
        random.Random(seed).shuffle(roots)
    tasks = [(c, d, A, g, rep.type_a_bound, flux, r, seed) for r in roots]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            chunks = list(ex.map(_bare_for_root, tasks))
    else:
        chunks = [_bare_for_root(t) for t in tasks]
    unique = {}
    for chunk in chunks:
        for labels, edges in chunk:
            t = _make_type(labels, edges)
            unique.setdefault(canonical_form(t), t)
    keys = sorted(unique)
    cands = [unique[k] for k in keys]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            good = list(ex.map(_good_flag, [(c, t) for t in cands]))
    else:
        good = [_good_flag((c, t)) for t in cands]
    return [t for t, ok in zip(cands, good) if ok]


def _good_flag(args):
    c, t = args
    return is_good(c, t, want_dim=False).good


def _compositions(total, parts):
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def decorations(bare: CombinatorialType, extra_genus: int, n: int):
    """All ways to add genus and marks to a bare type, keeping it simple."""
    ne = len(bare.edges)
    base_n = len(bare.vertices)
    for k in range(extra_genus + n + 1):
        if k and not ne:
            break
        for combo in combinations_with_replacement(range(ne), k):
            counts = [0] * ne
            for i in combo:
                counts[i] += 1
            verts = list(bare.vertices)
            labels = dict(bare.labels)
            edges = []
            nxt = base_n
            for e, cnt in zip(bare.edges, counts):
                prev = e.u
                for _ in range(cnt):
                    x = nxt
                    nxt += 1
                    verts.append(x)
                    labels[x] = bare.labels[e.u] | bare.labels[e.v]
                    edges.append(Edge(prev, x, e.weight))
                    prev = x
                edges.append(Edge(prev, e.v, e.weight))
            inserted = verts[base_n:]
            for gen in _compositions(extra_genus, len(verts)):
                genus_map = dict(zip(verts, gen))
                for marks in product(verts, repeat=n):
                    if any(genus_map[x] == 0 and x not in marks for x in inserted):
                        continue
                    yield CombinatorialType(verts, edges, genus_map, marks, labels=labels)


def _sort_key(t):
    return (len(t.vertices), len(t.edges), canonical_form(t))


def enumerate_types(c: ClemensComplex, d: SimpleDensity, g: int, n: int, A,
                    jobs: int = 1, seed=None, progress=None):
    """All good simple genus-``g`` types with ``n`` marks and degree at most ``A``.

    Returned sorted by vertex count, edge count, then canonical form; the
    result does not depend on search order or on ``jobs``.
    """
    bounds(c, d, g, n, A)  # validates inputs
    out = {}
    bares = bare_types(c, d, g, A, jobs=jobs, seed=seed)
    for i, bare in enumerate(bares):
        extra = g - bare.b1()
        if extra < 0:
            continue
        for t in decorations(bare, extra, n):
            out.setdefault(canonical_form(t), t)
        if progress is not None:
            progress(i + 1, len(bares))
    return sorted(out.values(), key=_sort_key)
