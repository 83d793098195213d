"""Exact rational feasibility for systems with strict inequalities.

Equalities are eliminated by exact Gaussian elimination; the remaining
inequalities are handled by a two-phase simplex (Bland's rule) over
``Fraction``. Strict rows ``a.x < b`` get a shared slack ``t``: the system is
feasible iff ``max t`` subject to ``a.x + t <= b`` is positive.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Sequence

EQ, LE, LT = "=", "<=", "<"
_RELATIONS = (EQ, LE, LT)


@dataclass(frozen=True)
class Constraint:
    coeffs: tuple
    rel: str
    rhs: Fraction

    def __post_init__(self):
        if self.rel not in _RELATIONS:
            raise ValueError(f"unknown relation {self.rel!r}")
        object.__setattr__(self, "coeffs", tuple(Fraction(a) for a in self.coeffs))
        object.__setattr__(self, "rhs", Fraction(self.rhs))

    def holds(self, x: Sequence) -> bool:
        lhs = sum((a * xi for a, xi in zip(self.coeffs, x) if a), Fraction(0))
        if self.rel == EQ:
            return lhs == self.rhs
        if self.rel == LE:
            return lhs <= self.rhs
        return lhs < self.rhs


@dataclass(frozen=True)
class Polyhedron:
    num_vars: int
    constraints: tuple = ()
    names: tuple = ()
    reason: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "constraints", tuple(self.constraints))
        if not self.names:
            object.__setattr__(self, "names", tuple(f"x{i}" for i in range(self.num_vars)))
        for c in self.constraints:
            if len(c.coeffs) != self.num_vars:
                raise ValueError("constraint length does not match num_vars")

    @classmethod
    def empty(cls, num_vars: int, names=(), reason="empty"):
        """The canonical empty polyhedron ``{0 < 0}``."""
        return cls(num_vars, (Constraint((0,) * num_vars, LT, 0),), names, reason)

    def contains(self, x: Sequence) -> bool:
        return all(c.holds(x) for c in self.constraints)

    def relaxed(self) -> "Polyhedron":
        return replace(self, constraints=tuple(
            Constraint(c.coeffs, LE, c.rhs) if c.rel == LT else c for c in self.constraints))

    def with_equality(self, index: int) -> "Polyhedron":
        cons = list(self.constraints)
        c = cons[index]
        cons[index] = Constraint(c.coeffs, EQ, c.rhs)
        return replace(self, constraints=tuple(cons))

    def add(self, *constraints) -> "Polyhedron":
        return replace(self, constraints=self.constraints + tuple(constraints))


@dataclass(frozen=True)
class LPResult:
    feasible: bool
    witness: tuple | None = None
    dim: int | None = None

    def __bool__(self):
        return self.feasible


def lp_feasibility(p: Polyhedron, want_dim: bool = True) -> LPResult:
    """Decide non-emptiness of ``p`` exactly.

    When feasible, returns a witness satisfying every constraint and the affine
    dimension of the closure-relaxed solution set.
    """
    n = p.num_vars
    eqs = [(c.coeffs, c.rhs) for c in p.constraints if c.rel == EQ]
    param = _solve_equalities(eqs, n)
    if param is None:
        return LPResult(False)
    x0, basis = param  # x = x0 + sum_k z_k basis[k]
    k = len(basis)

    rows = []  # (g, h, strict) meaning g.z <= h (or <)
    for c in p.constraints:
        if c.rel == EQ:
            continue
        g = [_dot(c.coeffs, b) for b in basis]
        h = c.rhs - _dot(c.coeffs, x0)
        if not any(g):
            if h < 0 or (c.rel == LT and h == 0):
                return LPResult(False)
            continue
        rows.append((g, h, c.rel == LT))

    z = _strict_point(rows, k)
    if z is None:
        return LPResult(False)
    x = tuple(x0[i] + sum((z[j] * basis[j][i] for j in range(k)), Fraction(0)) for i in range(n))
    dim = _dimension(rows, k, z) if want_dim else None
    return LPResult(True, x, dim)


def _dot(a, b):
    return sum((x * y for x, y in zip(a, b) if x and y), Fraction(0))


def rank(rows) -> int:
    m = [list(map(Fraction, r)) for r in rows]
    r = 0
    ncols = len(m[0]) if m else 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(len(m)):
            if i != r and m[i][col] != 0:
                f = m[i][col] / m[r][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        r += 1
    return r


def _solve_equalities(eqs, n):
    """Return ``(x0, basis)`` parametrising ``{x : A x = b}`` or ``None``."""
    m = [list(a) + [b] for a, b in eqs]
    pivots = []
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][col]
        m[r] = [a * inv for a in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col] != 0:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
    for row in m[r:]:
        if row[n] != 0:
            return None
    free = [j for j in range(n) if j not in pivots]
    x0 = [Fraction(0)] * n
    for i, col in enumerate(pivots):
        x0[col] = m[i][n]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for i, col in enumerate(pivots):
            v[col] = -m[i][f]
        basis.append(tuple(v))
    return tuple(x0), basis


def _strict_point(rows, k):
    """A point ``z`` satisfying all rows (strict ones strictly), or None."""
    if not rows:
        return [Fraction(0)] * k
    strict = any(s for _, _, s in rows)
    # variables: p_0..p_{k-1}, q_0..q_{k-1}, [t]
    A, b = [], []
    for g, h, s in rows:
        row = list(g) + [-a for a in g]
        if strict:
            row.append(Fraction(1) if s else Fraction(0))
        A.append(row)
        b.append(h)
    nv = 2 * k + (1 if strict else 0)
    c = [Fraction(0)] * nv
    if strict:
        A.append([Fraction(0)] * (2 * k) + [Fraction(1)])
        b.append(Fraction(1))
        c[-1] = Fraction(1)
    status, y, val = simplex_max(c, A, b)
    if status != "optimal":
        return None
    if strict and val <= 0:
        return None
    return [y[j] - y[k + j] for j in range(k)]


def _dimension(rows, k, z):
    implicit = [i for i, (g, h, s) in enumerate(rows) if not s and _dot(g, z) == h]
    while implicit:
        # maximise the total slack of the candidate rows, each capped at 1
        cand = set(implicit)
        A, b = [], []
        nt = len(implicit)
        pos = {i: t for t, i in enumerate(implicit)}
        for i, (g, h, _) in enumerate(rows):
            row = list(g) + [-a for a in g] + [Fraction(0)] * nt
            if i in cand:
                row[2 * k + pos[i]] = Fraction(1)
            A.append(row)
            b.append(h)
        for t in range(nt):
            row = [Fraction(0)] * (2 * k + nt)
            row[2 * k + t] = Fraction(1)
            A.append(row)
            b.append(Fraction(1))
        c = [Fraction(0)] * (2 * k) + [Fraction(1)] * nt
        status, y, val = simplex_max(c, A, b)
        if status != "optimal":
            raise ArithmeticError("relaxed system unexpectedly infeasible")
        if val == 0:
            break
        implicit = [i for i in implicit if y[2 * k + pos[i]] == 0]
    if not implicit:
        return k
    return k - rank([rows[i][0] for i in implicit])


def simplex_max(c, A, b):
    """Maximise ``c.y`` subject to ``A y <= b``, ``y >= 0`` exactly.

    Returns ``(status, y, value)`` with status in
    ``{"optimal", "infeasible", "unbounded"}``.
    """
    m, n = len(A), len(c)
    aux = n + m
    width = n + m + 1
    T = []
    for i in range(m):
        row = [Fraction(a) for a in A[i]] + [Fraction(0)] * m + [Fraction(-1)]
        row[n + i] = Fraction(1)
        T.append(row)
    rhs = [Fraction(x) for x in b]
    basis = [n + i for i in range(m)]

    def pivot(r, col, obj, objval):
        inv = 1 / T[r][col]
        if inv != 1:
            T[r] = [a * inv for a in T[r]]
            rhs[r] *= inv
        Tr = T[r]
        nz = [j for j, a in enumerate(Tr) if a]
        for i in range(m):
            f = T[i][col]
            if i != r and f:
                Ti = T[i]
                for j in nz:
                    Ti[j] -= f * Tr[j]
                rhs[i] -= f * rhs[r]
        f = obj[col]
        if f:
            for j in nz:
                obj[j] -= f * Tr[j]
            objval += f * rhs[r]
        basis[r] = col
        return objval

    def run(obj, objval, allowed):
        while True:
            col = next((j for j in allowed if obj[j] > 0), None)
            if col is None:
                return "optimal", objval
            best = None
            for i in range(m):
                a = T[i][col]
                if a > 0:
                    ratio = rhs[i] / a
                    if (best is None or ratio < best[0]
                            or (ratio == best[0] and basis[i] < basis[best[1]])):
                        best = (ratio, i)
            if best is None:
                return "unbounded", objval
            objval = pivot(best[1], col, obj, objval)

    if m and min(rhs) < 0:
        obj = [Fraction(0)] * width
        obj[aux] = Fraction(-1)
        objval = Fraction(0)
        r = min(range(m), key=lambda i: (rhs[i], i))
        objval = pivot(r, aux, obj, objval)
        status, objval = run(obj, objval, range(width))
        if objval < 0:
            return "infeasible", None, None
        if aux in basis:
            r = basis.index(aux)
            col = next((j for j in range(width - 1) if T[r][j] != 0 and j not in basis), None)
            if col is not None:
                pivot(r, col, [Fraction(0)] * width, Fraction(0))
    allowed = range(width - 1)
    obj = [Fraction(a) for a in c] + [Fraction(0)] * (m + 1)
    objval = Fraction(0)
    for i, bv in enumerate(basis):
        f = obj[bv]
        if f:
            obj = [o - f * t for o, t in zip(obj, T[i])]
            objval += f * rhs[i]
    status, objval = run(obj, objval, allowed)
    if status != "optimal":
        return status, None, None
    y = [Fraction(0)] * width
    for i, bv in enumerate(basis):
        y[bv] = rhs[i]
    return "optimal", y[:n], objval


def inverse(matrix):
    """Exact inverse of a square rational matrix, or ``None`` if singular."""
    n = len(matrix)
    m = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(matrix)]
    for col in range(n):
        piv = next((i for i in range(col, n) if m[i][col] != 0), None)
        if piv is None:
            return None
        m[col], m[piv] = m[piv], m[col]
        inv = 1 / m[col][col]
        m[col] = [a * inv for a in m[col]]
        for i in range(n):
            if i != col and m[i][col] != 0:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[col])]
    return [row[n:] for row in m]


def determinant(matrix) -> Fraction:
    n = len(matrix)
    m = [[Fraction(x) for x in row] for row in matrix]
    det = Fraction(1)
    for col in range(n):
        piv = next((i for i in range(col, n) if m[i][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det *= m[col][col]
        for i in range(col + 1, n):
            if m[i][col] != 0:
                f = m[i][col] / m[col][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[col])]
    return det
