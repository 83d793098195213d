"""Strata polyhedra, goodness, bounds, paths, enumeration and the moduli space."""
from fractions import Fraction as F

import pytest

import oracles
from helpers import ctype, curve, seg_full, seg_interior
from tropical_moduli.canonical import canonical_form
from tropical_moduli.complex import ClemensComplex
from tropical_moduli.curves import (degree, genus, is_simple, relabel, sigma, type_of,
                                    validate_curve, vertex_class)
from tropical_moduli.enumeration import enumerate_types
from tropical_moduli.fixtures import FIX_PATH2, FIX_SEG, FIX_TRI, omega1
from tropical_moduli.lp import lp_feasibility
from tropical_moduli.space import ModuliError, build_moduli, stratum_of, verify_boundary
from tropical_moduli.strata import (BoundsError, PathError, bounds, closure_polyhedron,
                                    coordinates_of, extract_paths, is_good, stratum_polyhedron)

W = omega1(FIX_SEG)
FULL = ctype({"a": "0", "b": "1"}, [("a", "b", (-1, 1))])
INTERIOR = ctype({"a": "01", "b": "01"}, [("a", "b", (-1, 1))])

# -- stratum polyhedra -------------------------------------------------------------


def _fm_dim(p):
    return oracles.fm_dimension(*oracles.polyhedron_system(p))


def test_full_segment_stratum_is_a_point():
    p = stratum_polyhedron(FIX_SEG, FULL)
    res = lp_feasibility(p)
    assert res.feasible and res.dim == 0 and _fm_dim(p) == 0
    assert res.witness == (1, 0, 1)  # root (1,0), length 1


def test_interior_edge_stratum_dimension_two():
    p = stratum_polyhedron(FIX_SEG, INTERIOR)
    res = lp_feasibility(p)
    assert res.feasible and res.dim == 2 and _fm_dim(p) == 2
    x, _, ell = res.witness
    assert 0 < x < 1 and ell > 0 and 0 < x - ell < 1


def test_non_face_edge_gives_empty_polyhedron():
    t = ctype({"u": "0", "v": "2"}, [("u", "v", (-1, 0, 1))])
    p = stratum_polyhedron(FIX_PATH2, t)
    assert p.reason is not None and not lp_feasibility(p).feasible
    assert not lp_feasibility(closure_polyhedron(FIX_PATH2, t)).feasible


def test_closure_polyhedra():
    closed = closure_polyhedron(FIX_SEG, FULL)
    assert lp_feasibility(closed).dim == 0
    closed2 = closure_polyhedron(FIX_SEG, INTERIOR)
    assert all(con.rel != "<" for con in closed2.constraints)
    assert closed2.contains((F(1), F(0), F(1)))  # both ends at the vertices
    assert closed2.contains((F(1, 2), F(1, 2), F(0)))  # collapsed edge
    assert not stratum_polyhedron(FIX_SEG, INTERIOR).contains((F(1), F(0), F(1)))


def test_dimension_independent_of_root():
    t = relabel(INTERIOR, {"a": "z", "b": "a"})
    assert lp_feasibility(stratum_polyhedron(FIX_SEG, t)).dim == 2
    half = ctype({"a": "0", "b": "01"}, [("a", "b", (-1, 1))])
    dims = {lp_feasibility(stratum_polyhedron(FIX_SEG, relabel(half, m))).dim
            for m in ({"a": "a", "b": "b"}, {"a": "b", "b": "a"})}
    assert dims == {1}

# -- goodness ----------------------------------------------------------------------


def test_interior_edge_is_good_with_valid_witness():
    res = is_good(FIX_SEG, INTERIOR)
    assert res.good
    assert validate_curve(FIX_SEG, res.witness) is None
    assert type_of(FIX_SEG, res.witness) == INTERIOR


def test_nonzero_sum_weight_not_good():
    t = ctype({"a": "01", "b": "01"}, [("a", "b", (1, 0))])
    assert not is_good(FIX_SEG, t).good


def test_path2_gap_not_good():
    t = ctype({"u": "0", "v": "2"}, [("u", "v", (-1, 0, 1))])
    assert not is_good(FIX_PATH2, t).good


def test_goodness_agrees_with_free_position_oracle():
    for t in [FULL, INTERIOR, ctype({"a": "0", "b": "0"}, [("a", "b", (-1, 1))]),
              ctype({"a": "01", "b": "1"}, [("a", "b", (1, -1))]),
              ctype({"a": "01", "b": "1"}, [("a", "b", (-1, 1))])]:
        system = oracles.oracle_good(FIX_SEG, t)
        assert is_good(FIX_SEG, t).good == oracles.fm_feasible(*system)

# -- bounds ------------------------------------------------------------------------


def test_bounds_examples():
    b = bounds(FIX_SEG, W, 0, 0, 2)
    assert (b.type_a_bound, b.n0, b.vertex_bound, b.edge_bound, b.weight_component_bound) == \
        (2, 2, 4, 3, 2)
    b = bounds(FIX_SEG, W, 1, 0, 3)
    assert (b.type_a_bound, b.n0, b.vertex_bound, b.edge_bound, b.weight_component_bound) == \
        (3, 4, 12, 12, 3)
    assert bounds(FIX_SEG, W, 0, 0, 0).vertex_bound == 1


def test_bounds_errors():
    with pytest.raises(BoundsError):
        bounds(FIX_SEG, W, 0, 0, -1)
    from tropical_moduli.density import uniform_density
    from tropical_moduli.rational import INF
    with pytest.raises(BoundsError, match="no finite density entry"):
        bounds(FIX_SEG, uniform_density(FIX_SEG, INF), 0, 0, 1)

# -- paths -------------------------------------------------------------------------


def test_paths_split_at_type_a_vertex():
    t = ctype({"a": "01", "v": "01", "b": "01"}, [("a", "v", (2, -2)), ("v", "b", (1, -1))])
    assert extract_paths(t, ("a", 0), 0) == [([("a", 0), ("v", 1)], "b"), ([("a", 0)], "v")]


def test_paths_single_edge():
    t = ctype({"a": "01", "b": "01"}, [("a", "b", (1, -1))])
    assert extract_paths(t, ("a", 0), 0) == [([("a", 0)], "b")]


def test_paths_pass_through_type_b():
    t = ctype({"a": "01", "v": "01", "b": "01"}, [("a", "v", (1, -1)), ("v", "b", (1, -1))])
    assert extract_paths(t, ("a", 0), 0) == [([("a", 0), ("v", 1)], "b")]


def test_paths_precondition():
    t = ctype({"a": "01", "b": "01"}, [("a", "b", (1, -1))])
    with pytest.raises(PathError, match="precondition"):
        extract_paths(t, ("a", 0), 1)


def check_paths(t, v0, e0, i):
    m = t.edges[e0].weight_at(v0)[i]
    paths = extract_paths(t, (v0, e0), i)
    assert len(paths) == m
    used = {}
    for flags, end in paths:
        assert flags[0] == (v0, e0)
        for (v, k), (v2, k2) in zip(flags, flags[1:]):
            assert t.edges[k].other(v) == v2  # consecutive flags chain
        last_v, last_e = flags[-1]
        assert t.edges[last_e].other(last_v) == end
        assert vertex_class(t, end) == "A"
        for v, k in flags:
            assert t.edges[k].weight_at(v)[i] > 0
            used[(v, k)] = used.get((v, k), 0) + 1
    for (v, k), count in used.items():
        assert count <= abs(t.edges[k].weight_at(v)[i])
    return paths

# -- enumeration -------------------------------------------------------------------


def test_seg_enumeration_matches_brute_force():
    types = enumerate_types(FIX_SEG, W, 0, 0, 2)
    b = bounds(FIX_SEG, W, 0, 0, 2)
    oracle = oracles.brute_force_types(FIX_SEG, W, 2, b.vertex_bound, b.edge_bound,
                                       b.weight_component_bound)
    assert len(types) == 7
    assert {oracles.oracle_key(t) for t in types} == set(oracle)


def test_seg_enumeration_a3_matches_brute_force():
    types = enumerate_types(FIX_SEG, W, 0, 0, 3)
    b = bounds(FIX_SEG, W, 0, 0, 3)
    oracle = oracles.brute_force_types(FIX_SEG, W, 3, 4, 3, b.weight_component_bound)
    assert {oracles.oracle_key(t) for t in types} == set(oracle)


def test_seg_enumeration_shape():
    types = enumerate_types(FIX_SEG, W, 0, 0, 2)
    points = [t for t in types if not t.edges]
    assert sorted(sorted(t.labels[t.vertices[0]]) for t in points) == [["0"], ["0", "1"], ["1"]]
    edges = [t for t in types if t.edges]
    assert len(edges) == 4
    for t in edges:
        assert len(t.edges) == 1 and t.edges[0].weight in ((-1, 1), (1, -1))


def test_single_vertex_complex():
    c = ClemensComplex.from_maximal_faces(["0"], [["0"]])
    for g in range(3):
        types = enumerate_types(c, omega1(c), g, 0, 2)
        assert len(types) == 1 and types[0].genus[types[0].vertices[0]] == g


def test_seg_degree_zero_gives_points():
    types = enumerate_types(FIX_SEG, W, 0, 0, 0)
    assert len(types) == 3 and all(not t.edges for t in types)


def test_enumeration_order_independent():
    base = [canonical_form(t) for t in enumerate_types(FIX_TRI, omega1(FIX_TRI), 0, 1, 2)]
    for seed in (1, 2):
        again = [canonical_form(t) for t in
                 enumerate_types(FIX_TRI, omega1(FIX_TRI), 0, 1, 2, seed=seed)]
        assert again == base


def test_enumeration_parallel_matches_serial():
    serial = enumerate_types(FIX_TRI, omega1(FIX_TRI), 0, 0, 3)
    par = enumerate_types(FIX_TRI, omega1(FIX_TRI), 0, 0, 3, jobs=2)
    assert [canonical_form(t) for t in serial] == [canonical_form(t) for t in par]


@pytest.mark.parametrize("c,g,n,A", [(FIX_SEG, 1, 1, 2), (FIX_PATH2, 0, 1, 2),
                                     (FIX_TRI, 0, 0, 2), (FIX_TRI, 1, 0, 2)])
def test_enumerated_types_sound(c, g, n, A):
    d = omega1(c)
    b = bounds(c, d, g, n, A)
    types = enumerate_types(c, d, g, n, A)
    assert len({canonical_form(t) for t in types}) == len(types)
    for t in types:
        assert is_simple(t) and genus(t) == g and len(t.marks) == n
        assert degree(c, t, d)[0] <= A
        assert len(t.vertices) <= b.vertex_bound and len(t.edges) <= b.edge_bound
        assert sum(vertex_class(t, v) == "A" for v in t.vertices) <= b.type_a_bound
        res = is_good(c, t)
        assert res.good
        assert validate_curve(c, res.witness) is None and type_of(c, res.witness) == t
        for k, e in enumerate(t.edges):
            assert max(abs(x) for x in e.weight) <= b.weight_component_bound
            for v in (e.u, e.v):
                for i, x in enumerate(e.weight_at(v)):
                    if x > 0:
                        check_paths(t, v, k, i)

# -- moduli space ------------------------------------------------------------------


@pytest.fixture(scope="module")
def seg_space():
    return build_moduli(FIX_SEG, W, 0, 0, 2)


def _stratum(m, labels, nedges):
    for s in m.strata:
        if len(s.type.edges) == nedges and \
                sorted(sorted(s.type.labels[v]) for v in s.type.sorted_vertices()) == labels:
            return s
    raise LookupError(labels)


def test_seg_strata_dimensions(seg_space):
    m = seg_space
    assert len(m.strata) == 7
    assert _stratum(m, [["0"]], 0).dim == 0
    assert _stratum(m, [["1"]], 0).dim == 0
    assert _stratum(m, [["0", "1"]], 0).dim == 1
    assert _stratum(m, [["0"], ["1"]], 1).dim == 0
    assert _stratum(m, [["0"], ["0", "1"]], 1).dim == 1
    assert _stratum(m, [["0", "1"], ["1"]], 1).dim == 1
    assert _stratum(m, [["0", "1"], ["0", "1"]], 1).dim == 2
    for s in m.strata:
        assert s.dim == _fm_dim(s.polyhedron)


def test_seg_poset_interior_point_below_interior_edge(seg_space):
    m = seg_space
    i = m.strata.index(_stratum(m, [["0", "1"]], 0))
    j = m.strata.index(_stratum(m, [["0", "1"], ["0", "1"]], 1))
    assert m.poset.matrix[i][j] and not m.poset.matrix[j][i]


def test_seg_boundary_consistency(seg_space):
    keys = set(seg_space.by_key())
    assert sum(verify_boundary(FIX_SEG, s.type, keys) for s in seg_space.strata) > 0


def test_negative_degree_bound_rejected():
    with pytest.raises(ModuliError):
        build_moduli(FIX_SEG, W, 0, 0, -1)


def test_stratum_of_examples(seg_space):
    m = seg_space
    name = stratum_of(m, seg_interior())
    s = m.by_name(name)
    assert s is _stratum(m, [["0", "1"], ["0", "1"]], 1)
    assert s.polyhedron.contains(coordinates_of(FIX_SEG, seg_interior()))
    assert coordinates_of(FIX_SEG, seg_interior()) == (F(3, 4), F(1, 4), F(1, 2))
    assert m.by_name(stratum_of(m, curve({"a": (1, 0)}, []))) is _stratum(m, [["0"]], 0)
    with pytest.raises(ModuliError, match="not in moduli space"):
        stratum_of(m, curve({"a": (1, 0), "b": (0, 1)}, [("a", "b", (-2, 2))]))


def test_stratum_of_every_witness(seg_space):
    for s in seg_space.strata:
        assert stratum_of(seg_space, s.witness) == s.name


def test_full_segment_sigma():
    t = type_of(FIX_SEG, seg_full())
    assert sigma(t, "a") == (-1, 1)
