"""JSON encodings of complexes, densities, curves, types and results.

Rationals are written as ``"p/q"`` strings (integers as plain strings), never
as floats. Vertex ids of curves and types keep their JSON type (string or
integer).
"""
from __future__ import annotations

import json
import os
import tempfile
from fractions import Fraction

from .complex import ClemensComplex, carrier
from .curves import CombinatorialType, Edge, ParamTropCurve
from .density import SimpleDensity, induced_density
from .lp import Constraint, Polyhedron
from .newton import NEG_INF, LaurentValuationData
from .rational import INF, fmt, parse_extended, parse_rational
from .subdivision import Subdivision


class FormatError(ValueError):
    """Input that does not match the expected schema."""


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def write_atomic(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=".part")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def load_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON ({exc.msg})") from exc


def _need(obj, key, kind=None):
    if not isinstance(obj, dict) or key not in obj:
        raise FormatError(f"missing key {key!r}")
    val = obj[key]
    if kind is not None and not isinstance(val, kind):
        raise FormatError(f"key {key!r} has the wrong type")
    return val


def _rat(x):
    try:
        return parse_rational(x)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def _int(x):
    if isinstance(x, bool) or not isinstance(x, int):
        raise FormatError(f"expected an integer, got {x!r}")
    return x


# -- complexes and densities ---------------------------------------------------

def complex_to_json(c: ClemensComplex):
    return {"vertices": list(c.vertices),
            "faces": [sorted(f, key=c.index) for f in c.sorted_faces()]}


def complex_from_json(obj) -> ClemensComplex:
    verts = _need(obj, "vertices", list)
    faces = _need(obj, "faces", list)
    if not all(isinstance(f, list) for f in faces):
        raise FormatError("faces must be lists of vertex ids")
    return ClemensComplex([str(v) for v in verts], [[str(v) for v in f] for f in faces])


def density_to_json(c: ClemensComplex, d: SimpleDensity):
    entries = []
    for (face, j), val in sorted(d.entries.items(),
                                 key=lambda kv: (c.face_key(kv[0][0]), c.index(kv[0][1]))):
        entries.append({"face": sorted(face, key=c.index), "j": j, "value": fmt(val)})
    return {"entries": entries}


def density_from_json(obj, c: ClemensComplex | None = None) -> SimpleDensity:
    if isinstance(obj, dict) and "cone_data" in obj:
        if c is None:
            raise FormatError("cone data needs the complex")
        data = {}
        for item in _need(obj, "cone_data", list):
            face = frozenset(str(v) for v in _need(item, "face", list))
            gens = []
            for gen in _need(item, "generators", list):
                pair = _need(gen, "pairings")
                if isinstance(pair, dict):
                    pair = {str(k): _int(v) for k, v in pair.items()}
                else:
                    pair = [_int(v) for v in pair]
                gens.append((_rat(_need(gen, "value")), pair))
            data[face] = gens
        return induced_density(c, data)
    entries = {}
    for item in _need(obj, "entries", list):
        face = frozenset(str(v) for v in _need(item, "face", list))
        try:
            val = parse_extended(_need(item, "value"))
        except ValueError as exc:
            raise FormatError(str(exc)) from exc
        entries[(face, str(_need(item, "j")))] = val
    return SimpleDensity(entries)


# -- curves and types -----------------------------------------------------------

def _ids(x):
    if isinstance(x, bool) or not isinstance(x, (str, int)):
        raise FormatError(f"vertex ids must be strings or integers, got {x!r}")
    return x


def _edges_json(t):
    return [{"u": e.u, "v": e.v, "weight_at_u": list(e.weight)} for e in t.edges]


def _edges_parse(obj):
    out = []
    for e in _need(obj, "edges", list):
        w = [_int(x) for x in _need(e, "weight_at_u", list)]
        out.append(Edge(_ids(_need(e, "u")), _ids(_need(e, "v")), tuple(w)))
    return out


def curve_to_json(k: ParamTropCurve, c: ClemensComplex | None = None):
    verts = []
    for v in k.vertices:
        item = {"id": v, "pos": [fmt(x) for x in k.positions[v]], "genus": k.genus[v]}
        if c is not None:
            item["face"] = sorted(carrier(c, k.positions[v]), key=c.index)
        verts.append(item)
    return {"vertices": verts, "edges": _edges_json(k), "marks": list(k.marks)}


def curve_from_json(obj) -> ParamTropCurve:
    verts, positions, genus = [], {}, {}
    for item in _need(obj, "vertices", list):
        v = _ids(_need(item, "id"))
        verts.append(v)
        positions[v] = tuple(_rat(x) for x in _need(item, "pos", list))
        genus[v] = _int(item.get("genus", 0))
    edges = _edges_parse(obj)
    marks = [_ids(m) for m in obj.get("marks", [])]
    known = set(verts)
    if any(e.u not in known or e.v not in known for e in edges) or any(m not in known for m in marks):
        raise FormatError("edge or mark refers to an unknown vertex")
    return ParamTropCurve(verts, edges, genus, marks, positions=positions)


def type_to_json(t: CombinatorialType):
    verts = [{"id": v, "face": sorted(t.labels[v]), "genus": t.genus[v]} for v in t.vertices]
    return {"vertices": verts, "edges": _edges_json(t), "marks": list(t.marks)}


def type_from_json(obj) -> CombinatorialType:
    verts, labels, genus = [], {}, {}
    for item in _need(obj, "vertices", list):
        v = _ids(_need(item, "id"))
        verts.append(v)
        labels[v] = frozenset(str(x) for x in _need(item, "face", list))
        genus[v] = _int(item.get("genus", 0))
    edges = _edges_parse(obj)
    marks = [_ids(m) for m in obj.get("marks", [])]
    known = set(verts)
    if any(e.u not in known or e.v not in known for e in edges) or any(m not in known for m in marks):
        raise FormatError("edge or mark refers to an unknown vertex")
    return CombinatorialType(verts, edges, genus, marks, labels=labels)


# -- polyhedra ---------------------------------------------------------------------

def polyhedron_to_json(p: Polyhedron):
    return {"num_vars": p.num_vars, "names": list(p.names), "reason": p.reason,
            "constraints": [{"coeffs": [fmt(a) for a in con.coeffs], "rel": con.rel,
                             "rhs": fmt(con.rhs)} for con in p.constraints]}


def polyhedron_from_json(obj) -> Polyhedron:
    cons = [Constraint([_rat(a) for a in _need(c, "coeffs", list)], _need(c, "rel"),
                       _rat(_need(c, "rhs"))) for c in _need(obj, "constraints", list)]
    return Polyhedron(_int(_need(obj, "num_vars")), cons, tuple(obj.get("names", ())),
                      obj.get("reason"))


# -- subdivisions --------------------------------------------------------------

def subdivision_to_json(s: Subdivision):
    return {"nu": s.nu, "base": complex_to_json(s.base),
            "vertices": [{"id": v, "position": [fmt(x) for x in s.pos[v]]}
                         for v in s.fine.vertices],
            "faces": [sorted(f, key=s.fine.index) for f in s.fine.maximal_faces()]}


def subdivision_from_json(obj) -> Subdivision:
    base = complex_from_json(_need(obj, "base", dict))
    verts, pos = [], {}
    for item in _need(obj, "vertices", list):
        v = str(_need(item, "id"))
        verts.append(v)
        pos[v] = tuple(_rat(x) for x in _need(item, "position", list))
    faces = [[str(v) for v in f] for f in _need(obj, "faces", list)]
    fine = ClemensComplex.from_maximal_faces(verts, faces)
    return Subdivision(base, _int(_need(obj, "nu")), fine, pos)


# -- cycle data ----------------------------------------------------------------

def cycle_data_from_json(obj):
    items = obj.get("data") if isinstance(obj, dict) else obj
    if isinstance(obj, dict) and "face" in obj:
        items = [obj]
    if not isinstance(items, list):
        raise FormatError("cycle data must be a list of {face, generators} objects")
    out = {}
    for item in items:
        face = frozenset(str(v) for v in _need(item, "face", list))
        out[face] = [tuple(_int(x) for x in g) for g in _need(item, "generators", list)]
    return out


# -- Laurent data ----------------------------------------------------------------

def parse_interval(text: str):
    t = text.strip()
    if not (t.startswith("(") and t.endswith(")")) or t.count(",") != 1:
        raise FormatError(f"interval must look like '(a,b)': {text!r}")
    a, b = (x.strip() for x in t[1:-1].split(","))
    lo = NEG_INF if a.lower() in ("-inf", "-infinity") else _rat(a)
    hi = INF if b.lower() in ("inf", "+inf", "infinity") else _rat(b)
    return lo, hi


def laurent_from_json(terms, interval: str) -> LaurentValuationData:
    if not isinstance(terms, list):
        raise FormatError("terms must be a list")
    pairs = [(_int(_need(t, "m")), _rat(_need(t, "v"))) for t in terms]
    lo, hi = parse_interval(interval)
    try:
        return LaurentValuationData(tuple(pairs), lo, hi)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def as_fraction_str(x) -> str:
    return fmt(Fraction(x)) if x is not INF else "inf"
