"""Simple systems, generalized Cartan matrices and exact type detection.

Type detection never touches floating point: finite type is witnessed by a
strictly positive u with A u > 0 (u = A^-1 * ones works for these matrices),
affine type by a strictly positive integer null vector with gcd 1, and
indefinite type by a strictly positive u with A u < 0 found through exact
LP feasibility.  Decomposable matrices are classified componentwise.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

from .catalog import RootSystemDesc, contains
from .linalg import det, identity, lp_feasible, nullspace, rank, rref, solve
from .roots import FormSpec, Weight, inner, pair

Q = Fraction

FINITE_TYPE = "finite"
AFFINE_TYPE = "affine"
INDEFINITE_TYPE = "indefinite"


class GCMError(ValueError):
    """A candidate matrix violates the generalized Cartan matrix axioms."""


class GCMatrix:
    """Square integer matrix with the Cartan-matrix invariants enforced."""

    __slots__ = ("entries",)

    def __init__(self, entries: Sequence[Sequence[int]]):
        a = [[int(x) for x in row] for row in entries]
        n = len(a)
        for i, row in enumerate(a):
            if len(row) != n:
                raise GCMError("matrix must be square")
            if row[i] != 2:
                raise GCMError(f"diagonal entry a[{i}][{i}] = {row[i]} != 2")
        for i in range(n):
            for j in range(n):
                if i == j:
                    continue
                if a[i][j] > 0:
                    raise GCMError(f"off-diagonal entry a[{i}][{j}] = {a[i][j]} > 0")
                if (a[i][j] == 0) != (a[j][i] == 0):
                    raise GCMError(f"zero pattern broken at ({i},{j})")
        object.__setattr__(self, "entries", tuple(tuple(row) for row in a))

    def __setattr__(self, *a):
        raise AttributeError("GCMatrix is immutable")

    @property
    def size(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        return isinstance(other, GCMatrix) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return f"GCMatrix({[list(r) for r in self.entries]})"

    def rows(self) -> list[list[Fraction]]:
        return [[Q(x) for x in row] for row in self.entries]

    def components(self) -> list[list[int]]:
        """Index sets of the connected components of the zero pattern."""
        n = self.size
        seen: set[int] = set()
        comps = []
        for start in range(n):
            if start in seen:
                continue
            comp = [start]
            seen.add(start)
            frontier = [start]
            while frontier:
                nxt = []
                for i in frontier:
                    for j in range(n):
                        if j not in seen and self.entries[i][j] != 0:
                            seen.add(j)
                            comp.append(j)
                            nxt.append(j)
                frontier = nxt
            comps.append(sorted(comp))
        return comps

    def submatrix(self, idx: list[int]) -> "GCMatrix":
        return GCMatrix([[self.entries[i][j] for j in idx] for i in idx])

    def symmetrizer(self) -> list[Fraction] | None:
        """Positive d with d_i a_ij = d_j a_ji, or None if not symmetrizable."""
        n = self.size
        d: list[Fraction | None] = [None] * n
        for comp in self.components():
            d[comp[0]] = Q(1)
            frontier = [comp[0]]
            while frontier:
                nxt = []
                for i in frontier:
                    for j in comp:
                        if d[j] is None and self.entries[i][j] != 0:
                            d[j] = d[i] * self.entries[i][j] / self.entries[j][i]
                            nxt.append(j)
                frontier = nxt
        for i in range(n):
            for j in range(n):
                if d[i] * self.entries[i][j] != d[j] * self.entries[j][i]:
                    return None
        return [x for x in d]


def simple_system_check(roots: Sequence[Weight], desc: RootSystemDesc) -> bool:
    """True iff the roots are distinct, independent and no difference is a root."""
    if len(set(roots)) != len(roots):
        return False
    form = desc.form
    for r in roots:
        if inner(r, r, form) == 0:
            return False
    labels = sorted({k for r in roots for k in r.f})
    vectors = [[r.f.get(k, Q(0)) for k in labels] + [r.t] for r in roots]
    if rank(vectors) != len(roots):
        return False
    for i, a in enumerate(roots):
        for b in roots[i + 1:]:
            if contains(desc, a - b):
                return False
    return True


def cartan_matrix(roots: Sequence[Weight], form: FormSpec) -> GCMatrix:
    """A[i][j] = <alpha_i, alpha_j> = alpha_i(coroot(alpha_j)), validated.

    Symmetrizability is checked against the exact Gram matrix
    ((alpha_i, alpha_j)), which the construction makes symmetric.
    """
    n = len(roots)
    entries = []
    for i in range(n):
        row = []
        for j in range(n):
            v = pair(roots[i], roots[j], form)
            if v.denominator != 1:
                raise GCMError(f"pairing <{i},{j}> = {v} is not an integer")
            row.append(int(v))
        entries.append(row)
    a = GCMatrix(entries)
    gram = [[inner(roots[i], roots[j], form) for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(n):
            if gram[i][j] != gram[j][i]:
                raise GCMError("Gram matrix is not symmetric")
            if 2 * gram[i][j] != a[i, j] * gram[j][j]:
                raise GCMError(f"entry ({i},{j}) inconsistent with the form")
    return a


def _integer_null_vector(a: GCMatrix) -> list[int] | None:
    """Nonzero integer kernel vector with gcd 1 when the kernel is 1-dim."""
    basis = nullspace(a.rows())
    if len(basis) != 1:
        return None
    v = basis[0]
    den = 1
    for x in v:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    ints = [x // g for x in ints]
    if ints[0] < 0:
        ints = [-x for x in ints]
    return ints


def classify_component(a: GCMatrix) -> dict:
    """Type of an indecomposable GCM, with an exact witness."""
    n = a.size
    rows = a.rows()
    d = det(rows)
    if d != 0:
        ones = [Q(1)] * n
        u = solve(rows, ones)
        if u is not None and all(x > 0 for x in u):
            return {"type": FINITE_TYPE, "witness": u}
        # strictly positive u with A u <= -1 (scale-invariant form of A u < 0)
        neg = _indefinite_witness(rows)
        return {"type": INDEFINITE_TYPE, "witness": neg}
    v = _integer_null_vector(a)
    if v is not None and all(x > 0 for x in v):
        return {"type": AFFINE_TYPE, "witness": v}
    return {"type": INDEFINITE_TYPE, "witness": _indefinite_witness(rows)}


def _indefinite_witness(rows) -> list[Fraction] | None:
    """u >= 1 with (A u)_i <= -1, via exact LP with slack variables."""
    n = len(rows)
    # variables: u (n), surplus s >= 0 with u = 1 + s, slack w >= 0 with
    # A u + w = -1.  Equalities in (s, w): A s + w = -1 - A 1.
    a_eq = []
    b_eq = []
    row_ones = [sum(row) for row in rows]
    for i in range(n):
        a_eq.append([rows[i][j] for j in range(n)] + [Q(1) if k == i else Q(0) for k in range(n)])
        b_eq.append(Q(-1) - row_ones[i])
    sol = lp_feasible(a_eq, b_eq)
    if sol is None:
        return None
    return [Q(1) + sol[j] for j in range(n)]


def classify_type(a: GCMatrix) -> dict:
    """Classification report; decomposable input is reported per component."""
    comps = a.components()
    if len(comps) == 1:
        out = classify_component(a)
        out["components"] = [{"indices": comps[0], **classify_component(a)}]
        return out
    parts = []
    for idx in comps:
        sub = classify_component(a.submatrix(idx))
        parts.append({"indices": idx, **sub})
    order = {FINITE_TYPE: 0, AFFINE_TYPE: 1, INDEFINITE_TYPE: 2}
    worst = max(parts, key=lambda p: order[p["type"]])
    return {"type": worst["type"], "witness": worst["witness"], "components": parts}


def symmetrization_profile(a: GCMatrix) -> dict:
    """Exact elimination profile of the symmetrized matrix D A.

    Returns positive-semidefiniteness and the kernel dimension, used as a
    cross-check on classify_type (affine <=> PSD with 1-dimensional kernel).
    """
    d = a.symmetrizer()
    if d is None:
        return {"symmetrizable": False}
    n = a.size
    s = [[d[i] * a[i, j] for j in range(n)] for i in range(n)]
    psd, _ = _psd_profile(s)
    kernel_dim = n - rank(s)
    return {"symmetrizable": True, "psd": psd, "kernel_dim": kernel_dim}


def _psd_profile(sym) -> tuple[bool, list[Fraction]]:
    """Pivoted elimination PSD test for an exact symmetric matrix."""
    m = [list(row) for row in sym]
    n = len(m)
    pivots: list[Fraction] = []
    active = list(range(n))
    while active:
        k = active[0]
        if m[k][k] < 0:
            return False, pivots
        if m[k][k] == 0:
            if any(m[k][j] != 0 for j in active):
                return False, pivots
            active.pop(0)
            continue
        p = m[k][k]
        pivots.append(p)
        for i in active[1:]:
            f = m[i][k] / p
            for j in active:
                m[i][j] -= f * m[k][j]
        active.pop(0)
    return True, pivots
