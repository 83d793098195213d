"""Named small complexes and densities used in examples and tests."""
from __future__ import annotations

from .complex import ClemensComplex
from .density import SimpleDensity, uniform_density

#: the segment: two vertices joined by an edge
FIX_SEG = ClemensComplex.from_maximal_faces(["0", "1"], [["0", "1"]])

#: a path of two segments, {0,2} is not a face
FIX_PATH2 = ClemensComplex.from_maximal_faces(["0", "1", "2"], [["0", "1"], ["1", "2"]])

#: the full triangle
FIX_TRI = ClemensComplex.from_maximal_faces(["0", "1", "2"], [["0", "1", "2"]])

#: a single point
FIX_POINT = ClemensComplex.from_maximal_faces(["0"], [["0"]])

FIXTURES = {"seg": FIX_SEG, "path2": FIX_PATH2, "tri": FIX_TRI, "point": FIX_POINT}


def omega1(c: ClemensComplex) -> SimpleDensity:
    """The density with every entry equal to 1."""
    return uniform_density(c, 1)
