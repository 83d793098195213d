"""Acceptance suite: one PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py`` (the lines appear in the terminal
summary) or directly with ``python3 tests/test_acceptance.py``.
"""
import itertools
import os
import random
import sys
import time
from fractions import Fraction

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import oracles  # noqa: E402
from helpers import ctype, curve, seg_full, seg_interior  # noqa: E402
from tropical_moduli.balancing import BALANCED, UNBALANCED, UNKNOWN, is_balanced_at  # noqa: E402
from tropical_moduli.canonical import canonical_form  # noqa: E402
from tropical_moduli.curves import (degree, genus, simplify, type_of,  # noqa: E402
                                    validate_curve, vertex_class)
from tropical_moduli.enumeration import enumerate_types  # noqa: E402
from tropical_moduli.fixtures import FIXTURES, omega1  # noqa: E402
from tropical_moduli.newton import LaurentValuationData, NotInvertible, dominant_exponent  # noqa: E402
from tropical_moduli.rational import INF  # noqa: E402
from tropical_moduli.space import build_moduli, verify_boundary  # noqa: E402
from tropical_moduli.strata import (bounds, coordinates_of, extract_paths, is_good,  # noqa: E402
                                    stratum_polyhedron)
from tropical_moduli.subdivision import (LiftError, SubdivisionDatum, edgewise_subdivide,  # noqa: E402
                                         in_U, project, refine_curve, validate_subdivision)

ENUM_FIXTURES = ("seg", "path2", "tri")
INSTANCES = [(name, g, n, A) for name in ENUM_FIXTURES
             for g, n, A in itertools.product((0, 1), (0, 1, 2), (1, 2, 3))]
TIME_LIMIT = 60.0

RESULTS = {}
_CACHE = {}


def _record(number, title, check):
    try:
        detail = check()
    except AssertionError as exc:
        RESULTS[number] = f"{number}. FAIL  {title}: {str(exc).splitlines()[0]}"
        raise
    RESULTS[number] = f"{number}. PASS  {title}" + (f" ({detail})" if detail else "")


def enumerated():
    """Every acceptance instance enumerated once: ``{instance: (types, seconds)}``."""
    if "enum" not in _CACHE:
        out = {}
        for name, g, n, A in INSTANCES:
            c = FIXTURES[name]
            t0 = time.perf_counter()
            types = enumerate_types(c, omega1(c), g, n, A)
            out[(name, g, n, A)] = (types, time.perf_counter() - t0)
        _CACHE["enum"] = out
    return _CACHE["enum"]


def witnesses():
    """``{instance: [(type, goodness)]}`` for every enumerated type."""
    if "good" not in _CACHE:
        _CACHE["good"] = {inst: [(t, is_good(FIXTURES[inst[0]], t)) for t in types]
                          for inst, (types, _) in enumerated().items()}
    return _CACHE["good"]


# -- 1. finiteness ---------------------------------------------------------------

def check_finiteness():
    slow = [(inst, round(sec, 1)) for inst, (_, sec) in enumerated().items() if sec >= TIME_LIMIT]
    assert not slow, f"instances over {TIME_LIMIT:.0f} s: {slow}"
    types = enumerated()[("seg", 0, 0, 2)][0]
    assert len(types) == 7, f"seg g=0 n=0 A=2 gave {len(types)} types, expected 7"
    c = FIXTURES["seg"]
    b = bounds(c, omega1(c), 0, 0, 2)
    oracle = oracles.brute_force_types(c, omega1(c), 2, b.vertex_bound, b.edge_bound,
                                       b.weight_component_bound)
    assert {oracles.oracle_key(t) for t in types} == set(oracle), "brute-force oracle disagrees"
    worst = max(sec for _, sec in enumerated().values())
    return f"{len(INSTANCES)} instances, slowest {worst:.1f} s"


def test_finiteness():
    _record(1, "finiteness", check_finiteness)


# -- 2. stratification ------------------------------------------------------------

SEG_A2_DIMS = [0, 0, 0, 0, 1, 1, 2]


def check_stratification():
    count = 0
    for (name, *_), items in witnesses().items():
        c = FIXTURES[name]
        for t, res in items:
            assert res.good and res.lp.feasible, f"infeasible stratum on {name}"
            w = res.witness
            assert validate_curve(c, w) is None, f"witness does not validate on {name}"
            assert canonical_form(type_of(c, w)) == canonical_form(t), "witness changes type"
            assert stratum_polyhedron(c, t).contains(coordinates_of(c, w)), "witness off stratum"
            count += 1
    dims = sorted(res.lp.dim for _, res in witnesses()[("seg", 0, 0, 2)])
    assert dims == SEG_A2_DIMS, f"seg A=2 dimensions {dims}, expected {SEG_A2_DIMS}"
    return f"{count} strata"


def test_stratification():
    _record(2, "stratification", check_stratification)


# -- 3. boundary --------------------------------------------------------------------

def check_boundary():
    samples = 0
    for (name, *_), (types, _) in enumerated().items():
        for t in types:
            samples += verify_boundary(FIXTURES[name], t)
    m = build_moduli(FIXTURES["seg"], omega1(FIXTURES["seg"]), 0, 0, 2, verify=True)
    assert len(m.strata) == 7
    return f"{samples} facet samples, 0 violations"


def test_boundary():
    _record(3, "boundary consistency", check_boundary)


# -- 4. paths -------------------------------------------------------------------------

def _check_flag_paths(t, v0, e0, i):
    m = t.edges[e0].weight_at(v0)[i]
    paths = extract_paths(t, (v0, e0), i)
    assert len(paths) == m, "wrong number of paths"
    used = {}
    for flags, end in paths:
        assert flags[0] == (v0, e0), "path does not start at the flag"
        for (v, k), (v2, _) in zip(flags, flags[1:]):
            assert t.edges[k].other(v) == v2, "path is not a chain"
        last_v, last_e = flags[-1]
        assert t.edges[last_e].other(last_v) == end, "path end mismatch"
        assert vertex_class(t, end) == "A", "path ends at a type-B vertex"
        for v, k in flags:
            assert t.edges[k].weight_at(v)[i] > 0, "path uses a non-positive flag"
            used[(v, k)] = used.get((v, k), 0) + 1
    for (v, k), times in used.items():
        assert times <= abs(t.edges[k].weight_at(v)[i]), "flag overused"


def check_paths():
    flags = 0
    for (name, g, n, A), (types, _) in enumerated().items():
        c = FIXTURES[name]
        d = omega1(c)
        finite = [x for x in d.entries.values() if x is not INF]
        per_a = int(Fraction(A) / min(finite))
        global_bound = bounds(c, d, g, n, A).weight_component_bound
        for t in types:
            type_a = sum(1 for v in t.vertices if vertex_class(t, v) == "A")
            derived = type_a * per_a
            for idx, e in enumerate(t.edges):
                for comp in e.weight:
                    assert abs(comp) <= derived, f"weight {e.weight} exceeds {derived}"
                    assert abs(comp) <= global_bound, f"weight {e.weight} exceeds {global_bound}"
                for v0 in (e.u, e.v):
                    for i, x in enumerate(e.weight_at(v0)):
                        if x > 0:
                            _check_flag_paths(t, v0, idx, i)
                            flags += 1
    return f"{flags} flags"


def test_paths():
    _record(4, "path algorithm and weight bound", check_paths)


# -- 5. simplification ------------------------------------------------------------

def check_simplification():
    rng = random.Random(20240501)
    for trial in range(1000):
        c = FIXTURES[rng.choice(ENUM_FIXTURES)]
        k = oracles.random_curve(rng, c)
        s = simplify(k)
        assert validate_curve(c, s) is None, f"trial {trial}: simplified curve invalid"
        assert simplify(s) == s, f"trial {trial}: not idempotent"
        assert genus(type_of(c, s)) == genus(type_of(c, k)), f"trial {trial}: genus changed"
        for _ in range(3):
            d = oracles.random_density(rng, c)
            assert degree(c, s, d)[0] == degree(c, k, d)[0], f"trial {trial}: degree changed"
        assert oracles.same_image(k, s), f"trial {trial}: image changed"
    return "1000 curves"


def test_simplification():
    _record(5, "simplification", check_simplification)


# -- 6. balancing -------------------------------------------------------------------

def _balancing_instance(rng):
    dim = rng.randint(1, 4)
    vec = lambda: [rng.randint(-3, 3) for _ in range(dim)]  # noqa: E731
    gens = [vec() for _ in range(rng.randint(0, 3))]
    if gens and rng.random() < 0.5:
        cs = [rng.randint(0, 3) for _ in gens]
        sig = [sum(c * g[i] for c, g in zip(cs, gens)) for i in range(dim)]
    else:
        sig = vec()
    return sig, gens


def check_balancing():
    rng = random.Random(77)
    tally = {BALANCED: 0, UNBALANCED: 0, UNKNOWN: 0}
    for trial in range(500):
        sig, gens = _balancing_instance(rng)
        v = is_balanced_at(sig, gens, coeff_bound=8)
        brute = oracles.brute_force_combination(sig, gens, 8)
        assert (v.status == BALANCED) == (brute is not None), f"trial {trial}: {sig} {gens}"
        if v.status == BALANCED:
            combo = [sum(c * g[i] for c, g in zip(v.certificate, gens)) for i in range(len(sig))]
            assert combo == list(sig) and min(v.certificate, default=0) >= 0, "bad certificate"
        if v.status == UNBALANCED:
            assert not oracles.relaxation_feasible(sig, gens), f"trial {trial}: refutation wrong"
        tally[v.status] += 1
    return ", ".join(f"{k}={v}" for k, v in tally.items())


def test_balancing():
    _record(6, "balancing", check_balancing)


# -- 7. subdivision -------------------------------------------------------------------

def check_subdivision():
    for name, nu in itertools.product(sorted(FIXTURES), (1, 2, 3)):
        msg = validate_subdivision(edgewise_subdivide(FIXTURES[name], nu))
        assert msg is None, f"{name} nu={nu}: {msg}"
    lift_errors = 0
    curves = 0
    for (name, *_), items in witnesses().items():
        if name not in ("seg", "tri"):
            continue
        c = FIXTURES[name]
        s = _CACHE.setdefault(("sub", name), edgewise_subdivide(c, 2))
        for t, res in items:
            try:
                fine = refine_curve(s, res.witness)
            except LiftError:
                lift_errors += 1
                continue
            assert validate_curve(s.fine, fine) is None, "refined curve invalid"
            back = simplify(project(s, fine))
            assert canonical_form(type_of(c, back)) == canonical_form(t), "round trip failed"
            curves += 1
    assert lift_errors == 0, f"{lift_errors} non-integral lifts"
    return f"{curves} curves, 0 lift errors"


def test_subdivision():
    _record(7, "subdivision", check_subdivision)


# -- 8. neighbourhoods ---------------------------------------------------------------

def check_neighbourhoods():
    c = FIXTURES["seg"]
    s = edgewise_subdivide(c, 2)
    full_anchor = type_of(s.fine, refine_curve(s, seg_full()))
    examples = [
        (SubdivisionDatum(s, full_anchor), seg_full(), True),
        (SubdivisionDatum(s, full_anchor), curve({"a": (1, 0)}, []), False),
        (SubdivisionDatum(s, ctype({"m": ["1,1"]}, [])), seg_interior(), True),
    ]
    for i, (datum, k, expected) in enumerate(examples):
        assert in_U(datum, k) is expected, f"example {i} gave {not expected}"
    m = build_moduli(c, omega1(c), 0, 0, 2)
    rng = random.Random(5)
    pool = [st.witness for st in m.strata]
    pool += [oracles.random_curve(rng, c) for _ in range(200)]
    for k in pool:
        anchor = type_of(s.fine, refine_curve(s, k))
        assert in_U(SubdivisionDatum(s, anchor), k), f"not reflexive at {k.positions}"
    return f"3 examples, {len(pool)} reflexivity checks"


def test_neighbourhoods():
    _record(8, "neighbourhood base", check_neighbourhoods)


# -- 9. Newton ------------------------------------------------------------------------

def check_newton():
    rng = random.Random(9)
    decided = 0
    for trial in range(200):
        ms = rng.sample(range(-3, 4), rng.randint(1, 5))
        terms = tuple((m, Fraction(rng.randint(-5, 5))) for m in ms)
        lo = Fraction(rng.randint(-5, 4))
        hi = lo + rng.randint(1, 5)
        f = LaurentValuationData(terms, lo, hi)
        try:
            got = dominant_exponent(f)
        except NotInvertible:
            got = None
        want = oracles.sampled_dominant(terms, lo, hi, samples=100)
        assert got == want, f"trial {trial}: {terms} on ({lo},{hi}) gave {got}, sampling {want}"
        decided += got is not None
    return f"200 term sets, {decided} invertible, 0 disagreements"


def test_newton():
    _record(9, "Newton dominant exponent", check_newton)


CHECKS = [(1, "finiteness", check_finiteness), (2, "stratification", check_stratification),
          (3, "boundary consistency", check_boundary),
          (4, "path algorithm and weight bound", check_paths),
          (5, "simplification", check_simplification), (6, "balancing", check_balancing),
          (7, "subdivision", check_subdivision), (8, "neighbourhood base", check_neighbourhoods),
          (9, "Newton dominant exponent", check_newton)]


def main():
    failed = 0
    for number, title, check in CHECKS:
        try:
            _record(number, title, check)
        except AssertionError:
            failed += 1
        print(RESULTS[number], flush=True)
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
