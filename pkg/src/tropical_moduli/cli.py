"""Command-line front end.

Exit status: 0 on success, 1 when the input is well formed but violates a
domain condition (the report goes to standard error), 2 on malformed input.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import io
from .balancing import BalancingError, check_curve_balancing, is_balanced_at, validate_cycle_data
from .complex import ComplexError, validate_complex
from .curves import degree, genus, is_simple, sigma, simplify, type_of, validate_curve
from .density import DensityError, validate_density
from .enumeration import enumerate_types
from .newton import NotInvertible, dominant_exponent
from .rational import fmt, parse_rational
from .space import BoundaryError, ModuliError, build_moduli
from .strata import BoundsError, PathError, bounds, closure_polyhedron, is_good, stratum_polyhedron
from .subdivision import (LiftError, SubdivisionDatum, SubdivisionError, edgewise_subdivide, in_U,
                          refine_curve, validate_subdivision, xi_set)

FORMATS = ("json", "dot", "summary")


class UsageError(Exception):
    """Malformed input: exit status 2."""


class DomainError(Exception):
    """Well-formed input violating a domain condition: exit status 1."""


# -- input helpers -------------------------------------------------------------

def _load(path, what):
    if path is None:
        raise UsageError(f"--{what} is required")
    try:
        return io.load_json(path)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc


def _complex(args, check=True):
    c = io.complex_from_json(_load(args.complex, "complex"))
    if check:
        msg = validate_complex(c)
        if msg:
            raise DomainError(f"complex: {msg}")
    return c


def _density(args, c):
    d = io.density_from_json(_load(args.density, "density"), c)
    msg = validate_density(c, d)
    if msg:
        raise DomainError(f"density: {msg}")
    return d


def _curve(args, c):
    k = io.curve_from_json(_load(args.curve, "curve"))
    msg = validate_curve(c, k)
    if msg:
        raise DomainError(f"curve: {msg}")
    return k


def _params(args):
    if args.g is None or args.n is None or args.A is None:
        raise UsageError("-g, -n and -A are required")
    if args.g < 0 or args.n < 0:
        raise UsageError("-g and -n must be non-negative")
    try:
        A = parse_rational(args.A)
    except ValueError as exc:
        raise UsageError(f"-A: {exc}") from exc
    if A < 0:
        raise UsageError("-A must be non-negative")
    return args.g, args.n, A


def _progress(args):
    if not args.progress:
        return None

    def report(done, total):
        print(f"\r{done}/{total}", end="" if done < total else "\n", file=sys.stderr)
    return report


# -- rendering -----------------------------------------------------------------

def _lines(rows):
    return "".join(row + "\n" for row in rows)


def _table(header, rows):
    cols = [header] + rows
    widths = [max(len(str(r[i])) for r in cols) for i in range(len(header))]
    return _lines("  ".join(str(x).ljust(w) for x, w in zip(r, widths)).rstrip() for r in cols)


def _unsupported(fmt_name, kind):
    raise UsageError(f"format unsupported for result kind: {fmt_name} for {kind}")


def moduli_to_json(m):
    return {
        "params": {"g": m.g, "n": m.n, "A": fmt(m.A),
                   "density": io.density_to_json(m.complex, m.density)},
        "strata": [{"name": s.name, "dim": s.dim, "type": io.type_to_json(s.type),
                    "constraints": io.polyhedron_to_json(s.polyhedron)["constraints"],
                    "variables": list(s.polyhedron.names),
                    "witness": io.curve_to_json(s.witness, m.complex)} for s in m.strata],
        "poset": m.poset.to_json(),
    }


def moduli_summary(m):
    hist = m.dimension_histogram()
    out = [f"g={m.g} n={m.n} A={fmt(m.A)} strata={len(m.strata)}",
           "dimension histogram: " + ", ".join(f"{d}:{k}" for d, k in hist.items()), ""]
    rows = [[s.name, s.dim, len(s.polyhedron.constraints), len(s.type.vertices),
             len(s.type.edges)] for s in m.strata]
    return _lines(out) + _table(["stratum", "dim", "#constraints", "#V", "#E"], rows)


# -- commands ------------------------------------------------------------------

def cmd_validate(args):
    c = _complex(args)
    report = {"complex": "ok"}
    if args.density:
        _density(args, c)
        report["density"] = "ok"
    if args.curve:
        _curve(args, c)
        report["curve"] = "ok"
    if args.cycle_data:
        msg = validate_cycle_data(c, io.cycle_data_from_json(_load(args.cycle_data, "cycle-data")))
        if msg:
            raise DomainError(f"cycle data: {msg}")
        report["cycle_data"] = "ok"
    if args.subdivision:
        s = io.subdivision_from_json(_load(args.subdivision, "subdivision"))
        msg = validate_subdivision(s)
        if msg:
            raise DomainError(f"subdivision: {msg}")
        report["subdivision"] = "ok"
    if args.format == "summary":
        return _lines(f"{k}: {v}" for k, v in sorted(report.items()))
    if args.format == "dot":
        _unsupported(args.format, "validation report")
    return io.dumps(report)


def cmd_curve_info(args):
    c = _complex(args)
    k = _curve(args, c)
    t = type_of(c, k)
    info = {"type": io.type_to_json(t), "genus": genus(t), "simple": is_simple(t),
            "simplified": io.type_to_json(simplify(t)),
            "sigma": {str(v): list(sigma(t, v, c.dim)) for v in t.sorted_vertices()}}
    if args.density:
        total, local = degree(c, t, _density(args, c))
        info["degree"] = fmt(total)
        info["local_degree"] = {str(v): fmt(x) for v, x in local.items()}
    if args.format == "summary":
        rows = [f"vertices={len(t.vertices)} edges={len(t.edges)} genus={info['genus']} "
                f"simple={info['simple']}"]
        if "degree" in info:
            rows.append(f"degree={info['degree']}")
        return _lines(rows)
    if args.format == "dot":
        _unsupported(args.format, "curve")
    return io.dumps(info)


def cmd_stratum(args):
    c = _complex(args)
    if args.type:
        t = io.type_from_json(_load(args.type, "type"))
    else:
        t = type_of(c, _curve(args, c))
    p = stratum_polyhedron(c, t)
    good = is_good(c, t)
    out = {"good": good.good, "reason": good.reason,
           "polyhedron": io.polyhedron_to_json(p),
           "closure": io.polyhedron_to_json(closure_polyhedron(c, t))}
    if good.good:
        out["dim"] = good.lp.dim
        out["witness"] = io.curve_to_json(good.witness, c)
    if args.format == "summary":
        return _lines([f"good={good.good}", f"dim={out.get('dim', '-')}",
                       f"constraints={len(p.constraints)}",
                       f"reason={good.reason or '-'}"])
    if args.format == "dot":
        _unsupported(args.format, "stratum")
    return io.dumps(out)


def cmd_enumerate(args):
    c = _complex(args)
    d = _density(args, c)
    g, n, A = _params(args)
    types = enumerate_types(c, d, g, n, A, jobs=args.jobs, progress=_progress(args))
    if args.format == "summary":
        b = bounds(c, d, g, n, A)
        rows = [f"types={len(types)}"] + [f"{k}={v}" for k, v in b.as_dict().items()]
        return _lines(rows)
    if args.format == "dot":
        _unsupported(args.format, "type list")
    return io.dumps({"params": {"g": g, "n": n, "A": fmt(A)},
                     "types": [io.type_to_json(t) for t in types]})


def cmd_moduli(args):
    c = _complex(args)
    d = _density(args, c)
    g, n, A = _params(args)
    m = build_moduli(c, d, g, n, A, jobs=args.jobs, progress=_progress(args))
    if args.format == "summary":
        return moduli_summary(m)
    if args.format == "dot":
        return m.poset.to_text()
    return io.dumps(moduli_to_json(m))


def _verdict_json(v):
    out = {"status": v.status}
    if v.certificate is not None:
        out["certificate"] = list(v.certificate)
    return out


def cmd_balance(args):
    bound = args.coeff_bound
    if bound is not None and bound < 1:
        raise UsageError("--coeff-bound must be positive")
    if args.sigma is not None:
        try:
            sig = json.loads(args.sigma)
            gens = json.loads(args.gens or "[]")
        except json.JSONDecodeError as exc:
            raise UsageError(f"--sigma/--gens: invalid JSON ({exc.msg})") from exc
        if not isinstance(sig, list) or not isinstance(gens, list) or \
                not all(isinstance(g, list) for g in gens):
            raise UsageError("--sigma must be a list and --gens a list of lists")
        result = {"verdict": _verdict_json(is_balanced_at(
            [io._int(x) for x in sig], [[io._int(x) for x in g] for g in gens], bound))}
    else:
        c = _complex(args)
        if args.type:
            k = io.type_from_json(_load(args.type, "type"))
        else:
            k = _curve(args, c)
        data = io.cycle_data_from_json(_load(args.cycle_data, "cycle-data"))
        msg = validate_cycle_data(c, data)
        if msg:
            raise DomainError(f"cycle data: {msg}")
        verdicts = check_curve_balancing(c, k, data, bound)
        result = {"vertices": {str(v): _verdict_json(x) for v, x in verdicts.items()}}
    if args.format == "summary":
        if "verdict" in result:
            return _lines([result["verdict"]["status"]])
        return _lines(f"{v}: {x['status']}" for v, x in result["vertices"].items())
    if args.format == "dot":
        _unsupported(args.format, "balancing verdict")
    return io.dumps(result)


def cmd_subdivide(args):
    c = _complex(args)
    if args.nu is None or args.nu < 1:
        raise UsageError("--nu must be a positive integer")
    s = edgewise_subdivide(c, args.nu)
    if args.format == "summary":
        return _lines([f"nu={s.nu}", f"fine vertices={len(s.fine.vertices)}",
                       f"maximal faces={len(s.fine.maximal_faces())}"])
    if args.format == "dot":
        _unsupported(args.format, "subdivision")
    return io.dumps(io.subdivision_to_json(s))


def _subdivision(args):
    s = io.subdivision_from_json(_load(args.subdivision, "subdivision"))
    msg = validate_subdivision(s)
    if msg:
        raise DomainError(f"subdivision: {msg}")
    return s


def cmd_refine(args):
    s = _subdivision(args)
    k = _curve(args, s.base)
    fine = refine_curve(s, k)
    if args.format == "summary":
        return _lines([f"vertices={len(fine.vertices)} edges={len(fine.edges)}"])
    if args.format == "dot":
        _unsupported(args.format, "curve")
    return io.dumps(io.curve_to_json(fine, s.fine))


def cmd_neighborhood(args):
    s = _subdivision(args)
    if args.anchor:
        anchor = io.type_from_json(_load(args.anchor, "anchor"))
    elif args.anchor_curve:
        anchor = type_of(s.fine, refine_curve(s, io.curve_from_json(
            _load(args.anchor_curve, "anchor-curve"))))
    else:
        raise UsageError("--anchor or --anchor-curve is required")
    datum = SubdivisionDatum(s, anchor)
    out = {}
    if args.curve:
        out["in_U"] = in_U(datum, _curve(args, s.base))
    if args.density:
        d = _density(args, s.base)
        g, n, A = _params(args)
        types = xi_set(datum, g, n, A, d)
        out["xi"] = [io.type_to_json(t) for t in types]
    if not out:
        raise UsageError("give --curve for membership, or --density with -g -n -A for the set")
    if args.format == "summary":
        rows = []
        if "in_U" in out:
            rows.append(f"in_U={out['in_U']}")
        if "xi" in out:
            rows.append(f"xi types={len(out['xi'])}")
        return _lines(rows)
    if args.format == "dot":
        _unsupported(args.format, "neighborhood")
    return io.dumps(out)


def cmd_newton(args):
    try:
        terms = json.loads(args.terms)
    except json.JSONDecodeError as exc:
        raise UsageError(f"--terms: invalid JSON ({exc.msg})") from exc
    f = io.laurent_from_json(terms, args.interval)
    m = dominant_exponent(f)
    if args.format == "json":
        return io.dumps({"dominant_exponent": m})
    if args.format == "dot":
        _unsupported(args.format, "exponent")
    return f"{m}\n"


COMMANDS = {
    "validate": cmd_validate, "curve-info": cmd_curve_info, "stratum": cmd_stratum,
    "enumerate": cmd_enumerate, "moduli": cmd_moduli, "balance": cmd_balance,
    "subdivide": cmd_subdivide, "refine": cmd_refine, "neighborhood": cmd_neighborhood,
    "newton": cmd_newton,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tropical-moduli",
        description="Moduli of tropical curves of bounded degree in a Clemens complex.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_text, *opts, fmt_default="json"):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--format", choices=FORMATS, default=fmt_default)
        p.add_argument("--output", "-o", help="write the result here (atomically)")
        for opt in opts:
            opt(p)
        return p

    def complex_(p): p.add_argument("--complex", help="complex JSON file")
    def density(p): p.add_argument("--density", help="density JSON file")
    def curve(p): p.add_argument("--curve", help="parametrized curve JSON file")
    def type_(p): p.add_argument("--type", help="combinatorial type JSON file")
    def subdivision(p): p.add_argument("--subdivision", help="subdivision JSON file")
    def cycles(p): p.add_argument("--cycle-data", help="cycle-class data JSON file")

    def params(p):
        p.add_argument("-g", type=int, help="genus")
        p.add_argument("-n", type=int, help="number of marked points")
        p.add_argument("-A", help="degree bound, an integer or 'p/q'")

    def jobs(p):
        p.add_argument("--jobs", type=int, default=1, help="worker processes")
        p.add_argument("--progress", action="store_true", help="report progress on stderr")

    add("validate", "validate input files", complex_, density, curve, cycles, subdivision,
        fmt_default="summary")
    add("curve-info", "type, genus, simplicity and degree of a curve", complex_, curve, density)
    add("stratum", "stratum polyhedron and goodness of a type", complex_, type_, curve)
    add("enumerate", "enumerate good types of bounded degree", complex_, density, params, jobs)
    add("moduli", "assemble the moduli space", complex_, density, params, jobs)
    p = add("balance", "check the balancing condition", complex_, curve, type_, cycles)
    p.add_argument("--coeff-bound", type=int, help="largest integer coefficient searched")
    p.add_argument("--sigma", help="JSON integer vector (direct mode)")
    p.add_argument("--gens", help="JSON list of integer vectors (direct mode)")
    p = add("subdivide", "edgewise subdivision of a complex", complex_)
    p.add_argument("--nu", type=int, help="subdivision order")
    add("refine", "refine a curve along a subdivision", subdivision, curve)
    p = add("neighborhood", "membership in, or listing of, a neighbourhood U(D)",
            subdivision, curve, density, params)
    p.add_argument("--anchor", help="anchor type JSON file (fine complex)")
    p.add_argument("--anchor-curve", help="base curve whose refined type is the anchor")
    p = add("newton", "dominant exponent of a Laurent series on an annulus",
            fmt_default="summary")
    p.add_argument("--terms", required=True, help='JSON list of {"m": int, "v": "p/q"}')
    p.add_argument("--interval", required=True, help="'(a,b)'; a may be -inf, b may be inf")
    return parser


DOMAIN_ERRORS = (DomainError, ComplexError, DensityError, ModuliError, BoundaryError,
                 BalancingError, BoundsError, PathError, SubdivisionError, LiftError,
                 NotInvertible, ValueError)


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        text = COMMANDS[args.command](args)
    except (UsageError, io.FormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DOMAIN_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.output:
        io.write_atomic(args.output, text)
    else:
        sys.stdout.write(text)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
