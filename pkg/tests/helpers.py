"""Small constructors shared by the tests."""
from fractions import Fraction as F

from tropical_moduli.curves import CombinatorialType, Edge, ParamTropCurve


def ctype(labels, edges, genus=None, marks=()):
    """``labels``: {v: "01"}; ``edges``: [(u, v, weight_at_u)]."""
    verts = list(labels)
    return CombinatorialType(verts, [Edge(u, v, w) for u, v, w in edges], genus or {},
                             list(marks), labels={v: frozenset(s) for v, s in labels.items()})


def curve(positions, edges, genus=None, marks=()):
    """``positions``: {v: (p0, p1, ...)} with ints/strings/Fractions."""
    verts = list(positions)
    pos = {v: tuple(F(x) for x in p) for v, p in positions.items()}
    return ParamTropCurve(verts, [Edge(u, v, w) for u, v, w in edges], genus or {}, list(marks),
                          positions=pos)


def seg_full():
    return curve({"a": (1, 0), "b": (0, 1)}, [("a", "b", (-1, 1))])


def seg_interior():
    return curve({"a": ("3/4", "1/4"), "b": ("1/4", "3/4")}, [("a", "b", (-1, 1))])


def seg_point(p=(1, 0)):
    return curve({"a": p}, [])
