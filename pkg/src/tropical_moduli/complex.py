"""Clemens polytopes as embedded simplicial complexes.

A complex lives in the unit-simplex coordinates of ``R^{I}``: every face ``F``
is realised as ``{x >= 0, supp(x) in F, sum(x) == 1}``. Points are tuples of
``Fraction`` indexed by the ordered vertex set.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

Point = tuple  # tuple[Fraction, ...]


class ComplexError(ValueError):
    pass


@dataclass(frozen=True)
class ClemensComplex:
    vertices: tuple
    faces: frozenset
    _index: dict = field(init=False, repr=False, compare=False)

    def __init__(self, vertices: Iterable, faces: Iterable[Iterable]):
        object.__setattr__(self, "vertices", tuple(str(v) for v in vertices))
        fs = [frozenset(str(v) for v in f) for f in faces]
        object.__setattr__(self, "faces", frozenset(fs))
        object.__setattr__(self, "_raw_face_count", len(fs))
        object.__setattr__(self, "_index", {v: i for i, v in enumerate(self.vertices)})

    @classmethod
    def from_maximal_faces(cls, vertices, maximal_faces):
        """Build the downward closure of the given faces."""
        faces = set()
        for f in maximal_faces:
            f = tuple(str(v) for v in f)
            for r in range(1, len(f) + 1):
                faces.update(frozenset(c) for c in combinations(f, r))
        for v in vertices:
            faces.add(frozenset([str(v)]))
        return cls(vertices, sorted(faces, key=lambda s: (len(s), sorted(s))))

    @property
    def dim(self) -> int:
        return len(self.vertices)

    def index(self, v) -> int:
        return self._index[str(v)]

    def is_face(self, s) -> bool:
        return frozenset(s) in self.faces

    def sorted_faces(self) -> list:
        return sorted(self.faces, key=self.face_key)

    def face_key(self, f):
        return (len(f), sorted(self.index(v) for v in f))

    def face_indices(self, f) -> tuple:
        return tuple(sorted(self.index(v) for v in f))

    def face_of_indices(self, idx) -> frozenset:
        return frozenset(self.vertices[i] for i in idx)

    def maximal_faces(self) -> list:
        return [f for f in self.sorted_faces() if not any(f < g for g in self.faces)]

    def vertex_point(self, v) -> Point:
        i = self.index(v)
        return tuple(Fraction(int(k == i)) for k in range(self.dim))


def validate_complex(c: ClemensComplex) -> str | None:
    """Return ``None`` when ``c`` is a valid complex, else the first violation."""
    if len(set(c.vertices)) != len(c.vertices):
        return "duplicate vertex ids"
    if getattr(c, "_raw_face_count", len(c.faces)) != len(c.faces):
        return "duplicate faces"
    known = set(c.vertices)
    for f in c.faces:
        if not f:
            return "empty face"
        if not f <= known:
            return f"face {sorted(f)} uses unknown vertices"
    for f in c.faces:
        for r in range(1, len(f)):
            for sub in combinations(sorted(f), r):
                if frozenset(sub) not in c.faces:
                    return "not downward closed"
    for v in c.vertices:
        if frozenset([v]) not in c.faces:
            return "not downward closed"
    return None


def support(c: ClemensComplex, p: Sequence) -> frozenset:
    return frozenset(c.vertices[i] for i, x in enumerate(p) if x != 0)


def check_point(c: ClemensComplex, p: Sequence) -> None:
    if len(p) != c.dim:
        raise ComplexError("point has wrong length")
    if any(x < 0 for x in p):
        raise ComplexError("negative coordinate")
    if sum(p) != 1:
        raise ComplexError("coordinates do not sum to 1")


def carrier(c: ClemensComplex, p: Sequence) -> frozenset:
    """The face whose relative interior contains ``p``."""
    check_point(c, p)
    s = support(c, p)
    if s not in c.faces:
        raise ComplexError("not in complex")
    return s


def link_set(c: ClemensComplex, face) -> frozenset:
    """``J_I``: vertices ``j`` with ``I + {j}`` a face. Contains ``I`` itself."""
    face = frozenset(face)
    if face not in c.faces:
        raise ComplexError("not a face")
    return frozenset(j for j in c.vertices if face | {j} in c.faces)


def as_point(values) -> Point:
    return tuple(Fraction(x) for x in values)


def barycenter(c: ClemensComplex, face) -> Point:
    face = frozenset(face)
    k = len(face)
    return tuple(Fraction(1, k) if v in face else Fraction(0) for v in c.vertices)
