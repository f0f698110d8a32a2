"""Exact dense linear algebra over Q and Q(i), plus integer lattice reduction.

Matrices are lists of row lists.  Entries are Fractions or Gaussians; the
routines only assume field arithmetic.  Everything is fraction-free in
spirit but implemented with exact divisions, which is plenty at desk scale.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Callable, Sequence

from .exact import Gaussian

Row = list
Matrix = list


def mat_copy(m: Matrix) -> Matrix:
    return [list(r) for r in m]


def identity(n: int, one=Fraction(1), zero=Fraction(0)) -> Matrix:
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n, k, m = len(a), len(b), len(b[0])
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            s = a[i][0] * b[0][j]
            for l in range(1, k):
                s = s + a[i][l] * b[l][j]
            row.append(s)
        out.append(row)
    return out


def mat_vec(a: Matrix, v: Sequence) -> list:
    return [sum((a[i][j] * v[j] for j in range(1, len(v))), a[i][0] * v[0])
            for i in range(len(a))]


def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form; returns (R, pivot column indices)."""
    r = mat_copy(m)
    if not r:
        return r, []
    rows, cols = len(r), len(r[0])
    pivots: list[int] = []
    pr = 0
    for pc in range(cols):
        pivot_row = None
        for i in range(pr, rows):
            if r[i][pc] != 0 * r[i][pc]:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        r[pr], r[pivot_row] = r[pivot_row], r[pr]
        inv = r[pr][pc]
        r[pr] = [x / inv for x in r[pr]]
        for i in range(rows):
            if i != pr and r[i][pc] != 0 * r[i][pc]:
                f = r[i][pc]
                r[i] = [a - f * b for a, b in zip(r[i], r[pr])]
        pivots.append(pc)
        pr += 1
        if pr == rows:
            break
    return r, pivots


def rank(m: Matrix) -> int:
    return len(rref(m)[1]) if m else 0


def nullspace(m: Matrix, cols: int | None = None, one=Fraction(1)) -> list[list]:
    """Basis of {v : m v = 0}, canonical (free variables set to one in order)."""
    if not m:
        n = cols or 0
        return [[one if i == j else one * 0 for j in range(n)] for i in range(n)]
    n = len(m[0])
    r, pivots = rref(m)
    free = [j for j in range(n) if j not in pivots]
    basis = []
    zero = one * 0
    for f in free:
        v = [zero] * n
        v[f] = one
        for i, p in enumerate(pivots):
            v[p] = -r[i][f]
        basis.append(v)
    return basis


def solve(m: Matrix, b: Sequence) -> list | None:
    """One solution of m x = b, or None if inconsistent."""
    if not m:
        return None
    n = len(m[0])
    aug = [list(row) + [bv] for row, bv in zip(m, b)]
    r, pivots = rref(aug)
    for i in range(len(r)):
        if all(r[i][j] == 0 * r[i][j] for j in range(n)) and r[i][n] != 0 * r[i][n]:
            return None
    zero = m[0][0] * 0
    x = [zero] * n
    for i, p in enumerate(pivots):
        if p < n:
            x[p] = r[i][n]
    return x


def invert(m: Matrix):
    """Exact inverse of a square matrix, or None if singular."""
    n = len(m)
    zero = m[0][0] * 0
    one = zero + 1 if not isinstance(m[0][0], Gaussian) else Gaussian(1)
    aug = [list(m[i]) + [one if i == j else zero for j in range(n)] for i in range(n)]
    r, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        return None
    return [row[n:] for row in r[:n]]


def det(m: Matrix):
    """Determinant by exact elimination."""
    a = mat_copy(m)
    n = len(a)
    zero = a[0][0] * 0
    sign = 1
    result = a[0][0] * 0 + 1
    for c in range(n):
        pr = None
        for i in range(c, n):
            if a[i][c] != zero:
                pr = i
                break
        if pr is None:
            return zero
        if pr != c:
            a[c], a[pr] = a[pr], a[c]
            sign = -sign
        result = result * a[c][c]
        inv = a[c][c]
        for i in range(c + 1, n):
            if a[i][c] != zero:
                f = a[i][c] / inv
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return result * sign


def hermite_rows(rows: list[list[int]]) -> list[list[int]]:
    """Row-style Hermite normal form of the lattice spanned by integer rows.

    Returns an echelon basis (leading entries positive, zero rows dropped).
    """
    m = [list(r) for r in rows if any(r)]
    if not m:
        return []
    cols = len(m[0])
    basis: list[list[int]] = []
    pr = 0
    for pc in range(cols):
        idx = [i for i in range(pr, len(m)) if m[i][pc] != 0]
        if not idx:
            continue
        # gcd-reduce all rows sharing this pivot column
        while len(idx) > 1:
            idx.sort(key=lambda i: abs(m[i][pc]))
            i0 = idx[0]
            for i in idx[1:]:
                q = m[i][pc] // m[i0][pc]
                m[i] = [a - q * b for a, b in zip(m[i], m[i0])]
            idx = [i for i in idx if m[i][pc] != 0]
        i0 = idx[0]
        m[pr], m[i0] = m[i0], m[pr]
        if m[pr][pc] < 0:
            m[pr] = [-x for x in m[pr]]
        for i in range(len(m)):
            if i != pr and m[i][pc] != 0:
                q = m[i][pc] // m[pr][pc]
                m[i] = [a - q * b for a, b in zip(m[i], m[pr])]
        pr += 1
        if pr == len(m):
            break
    basis = [r for r in m if any(r)]
    return basis


def lp_feasible(a_eq: Matrix, b_eq: Sequence[Fraction]) -> list[Fraction] | None:
    """Exact phase-1 simplex: find x >= 0 with a_eq x = b_eq, else None.

    Bland's rule, Fraction arithmetic throughout; terminates and is exact.
    """
    m = len(a_eq)
    if m == 0:
        return []
    n = len(a_eq[0])
    A = [list(map(Fraction, row)) for row in a_eq]
    b = [Fraction(x) for x in b_eq]
    for i in range(m):
        if b[i] < 0:
            A[i] = [-x for x in A[i]]
            b[i] = -b[i]
    # tableau with artificial variables n..n+m-1
    T = [A[i] + [Fraction(1 if j == i else 0) for j in range(m)] + [b[i]]
         for i in range(m)]
    basis = [n + i for i in range(m)]
    total = n + m

    def objective_row():
        # phase-1 cost: sum of artificials, expressed through the basis
        obj = [Fraction(0)] * (total + 1)
        for i, bv in enumerate(basis):
            if bv >= n:
                obj = [o - t for o, t in zip(obj, T[i])]
        for j in range(n, total):
            obj[j] += 1
        return obj

    obj = objective_row()
    while True:
        enter = None
        for j in range(total):
            if obj[j] < 0:
                enter = j
                break
        if enter is None:
            break
        leave = None
        best = None
        for i in range(m):
            if T[i][enter] > 0:
                ratio = T[i][total] / T[i][enter]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            break  # unbounded phase-1 cannot happen, defensive
        piv = T[leave][enter]
        T[leave] = [x / piv for x in T[leave]]
        for i in range(m):
            if i != leave and T[i][enter] != 0:
                f = T[i][enter]
                T[i] = [x - f * y for x, y in zip(T[i], T[leave])]
        f = obj[enter]
        if f != 0:
            obj = [x - f * y for x, y in zip(obj, T[leave])]
        basis[leave] = enter
    residual = sum(T[i][total] for i in range(m) if basis[i] >= n)
    if residual != 0:
        return None
    x = [Fraction(0)] * n
    for i, bv in enumerate(basis):
        if bv < n:
            x[bv] = T[i][total]
    return x


def rational_gcd(values) -> Fraction:
    """Positive generator of the subgroup of Q generated by the values.

    For reduced fractions: gcd(a/b, c/d) = gcd(a*(L/b), c*(L/d)) / L with
    L = lcm(b, d).  Any finitely generated subgroup of Q is cyclic, so the
    fold below computes its positive generator (0 if all inputs vanish).
    """
    g = Fraction(0)
    for v in values:
        v = Fraction(v)
        if v == 0:
            continue
        if g == 0:
            g = abs(v)
            continue
        lb, ld = g.denominator, v.denominator
        lcm = lb * ld // gcd(lb, ld)
        g = Fraction(gcd(g.numerator * (lcm // lb), v.numerator * (lcm // ld)), lcm)
    return g
