"""Finite-support matrix Lie algebras over Laurent polynomials.

Matrices are sparse mappings (row label, column label) -> Laurent, attached
to a label scheme: plain J, the signed doubling 2J with labels "+j"/"-j",
or 2J+1 with the extra label "0".  On top sit the classical families
gl/sl/o/sp cut out by a structure matrix, involutions (conjugation by an
invertible matrix, or x -> -S x^T S^-1), the twisted-loop membership test
with the (-1)^q sign rule, the degree derivation, the cubic trace
invariant, and block-weighted degree-shift conjugations.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .exact import G_ZERO, Gaussian, L_ZERO, Laurent

Q = Fraction


class SchemeMismatchError(ValueError):
    pass


class MatrixScheme:
    """Label scheme: kind "J" uses the labels as given; "2J" doubles them to
    "+j"/"-j"; "2J+1" adds the odd label "0"."""

    __slots__ = ("kind", "J", "_labels")

    def __init__(self, kind: str, J: Iterable):
        if kind not in ("J", "2J", "2J+1"):
            raise ValueError(f"unknown scheme kind {kind!r}")
        base = tuple(J)
        if len(set(base)) != len(base):
            raise ValueError("scheme labels must be distinct")
        if kind == "J":
            labels = tuple(str(j) for j in base)
        else:
            labels = tuple(f"+{j}" for j in base)
            if kind == "2J+1":
                labels += ("0",)
            labels += tuple(f"-{j}" for j in base)
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "J", base)
        object.__setattr__(self, "_labels", labels)

    def __setattr__(self, *a):
        raise AttributeError("MatrixScheme is immutable")

    def labels(self) -> tuple:
        return self._labels

    def partner(self, label: str) -> str:
        """The hyperbolic partner +j <-> -j (0 is self-paired)."""
        if self.kind == "J":
            raise SchemeMismatchError("plain J scheme has no signed partners")
        if label == "0":
            return "0"
        return ("-" if label.startswith("+") else "+") + label[1:]

    def eps_weight(self, label: str) -> dict:
        """Epsilon-coordinates of the diagonal functional at this label."""
        if self.kind == "J":
            return {_label_key(label): Q(1)}
        if label == "0":
            return {}
        sign = 1 if label.startswith("+") else -1
        return {_label_key(label[1:]): Q(sign)}

    def __eq__(self, other):
        return (isinstance(other, MatrixScheme) and self.kind == other.kind
                and self.J == other.J)

    def __hash__(self):
        return hash((self.kind, self.J))

    def __repr__(self):
        return f"MatrixScheme({self.kind}, J={list(self.J)})"


def _label_key(text: str):
    """Undo the stringification of integer labels where possible."""
    try:
        return int(text)
    except (TypeError, ValueError):
        return text


class LoopMatrix:
    """Finitely supported matrix with Laurent entries over a fixed scheme."""

    __slots__ = ("scheme", "entries")

    def __init__(self, scheme: MatrixScheme, entries: Mapping | None = None):
        pruned: dict[tuple, Laurent] = {}
        labels = set(scheme.labels())
        if entries:
            for (r, c), v in entries.items():
                if r not in labels or c not in labels:
                    raise SchemeMismatchError(f"label pair ({r},{c}) not in scheme")
                lv = v if isinstance(v, Laurent) else Laurent.of(v)
                if not lv.is_zero():
                    pruned[(r, c)] = lv
        object.__setattr__(self, "scheme", scheme)
        object.__setattr__(self, "entries", pruned)

    def __setattr__(self, *a):
        raise AttributeError("LoopMatrix is immutable")

    @staticmethod
    def unit(scheme: MatrixScheme, row, col, value=1, degree: int = 0) -> "LoopMatrix":
        """value * t^degree * E_{row,col}."""
        return LoopMatrix(scheme, {(str(row), str(col)): Laurent.term(degree, value)})

    @staticmethod
    def eye(scheme: MatrixScheme) -> "LoopMatrix":
        return LoopMatrix(scheme, {(l, l): Laurent.of(1) for l in scheme.labels()})

    def entry(self, r, c) -> Laurent:
        return self.entries.get((str(r), str(c)), L_ZERO)

    def is_zero(self) -> bool:
        return not self.entries

    def _require_same_scheme(self, other: "LoopMatrix"):
        if self.scheme != other.scheme:
            raise SchemeMismatchError("matrices live on different schemes")

    def __add__(self, other: "LoopMatrix") -> "LoopMatrix":
        self._require_same_scheme(other)
        out = dict(self.entries)
        for k, v in other.entries.items():
            s = out.get(k, L_ZERO) + v
            if s.is_zero():
                out.pop(k, None)
            else:
                out[k] = s
        return LoopMatrix(self.scheme, out)

    def __neg__(self) -> "LoopMatrix":
        return LoopMatrix(self.scheme, {k: -v for k, v in self.entries.items()})

    def __sub__(self, other: "LoopMatrix") -> "LoopMatrix":
        return self + (-other)

    def scale(self, c) -> "LoopMatrix":
        lc = c if isinstance(c, Laurent) else Laurent.of(c)
        return LoopMatrix(self.scheme, {k: v * lc for k, v in self.entries.items()})

    def __matmul__(self, other: "LoopMatrix") -> "LoopMatrix":
        self._require_same_scheme(other)
        by_row: dict[str, list] = {}
        for (r, c), v in other.entries.items():
            by_row.setdefault(r, []).append((c, v))
        out: dict[tuple, Laurent] = {}
        for (r, c), v in self.entries.items():
            for c2, v2 in by_row.get(c, ()):
                key = (r, c2)
                s = out.get(key, L_ZERO) + v * v2
                if s.is_zero():
                    out.pop(key, None)
                else:
                    out[key] = s
        return LoopMatrix(self.scheme, out)

    def transpose(self) -> "LoopMatrix":
        return LoopMatrix(self.scheme, {(c, r): v for (r, c), v in self.entries.items()})

    def conj(self) -> "LoopMatrix":
        """Entrywise Gaussian conjugation (degrees untouched)."""
        return LoopMatrix(self.scheme, {
            k: Laurent({d: cf.conj() for d, cf in v.coeffs.items()})
            for k, v in self.entries.items()})

    def trace(self) -> Laurent:
        t = L_ZERO
        for (r, c), v in self.entries.items():
            if r == c:
                t = t + v
        return t

    def degrees(self) -> list[int]:
        out: set[int] = set()
        for v in self.entries.values():
            out.update(v.coeffs)
        return sorted(out)

    def degree_part(self, d: int) -> "LoopMatrix":
        return LoopMatrix(self.scheme, {k: v.degree_part(d)
                                        for k, v in self.entries.items()})

    def constant_matrix(self) -> dict[tuple, Gaussian]:
        """Degree-0 coefficients; meaningful for constant matrices."""
        return {k: v.coeff(0) for k, v in self.entries.items()}

    def is_constant(self) -> bool:
        return all(v.support() in ([], [0]) for v in self.entries.values())

    def shift_degree(self, k: int) -> "LoopMatrix":
        return LoopMatrix(self.scheme, {key: v.shift(k) for key, v in self.entries.items()})

    def __eq__(self, other):
        if not isinstance(other, LoopMatrix):
            return NotImplemented
        return self.scheme == other.scheme and self.entries == other.entries

    def __hash__(self):
        return hash((self.scheme, frozenset(self.entries.items())))

    def __repr__(self):
        parts = [f"E[{r},{c}]*({v!r})" for (r, c), v in sorted(self.entries.items())]
        return "LoopMatrix(" + (" + ".join(parts) if parts else "0") + ")"

    def to_json(self) -> dict:
        return {"scheme": self.scheme.kind,
                "J": [str(j) for j in self.scheme.J],
                "entries": {f"({r},{c})": v.to_json()
                            for (r, c), v in sorted(self.entries.items())}}

    @staticmethod
    def from_json(obj) -> "LoopMatrix":
        scheme = MatrixScheme(obj["scheme"], [_label_key(j) for j in obj["J"]])
        entries = {}
        for key, val in obj["entries"].items():
            r, c = key.strip("()").split(",")
            entries[(r.strip(), c.strip())] = Laurent.from_json(val)
        return LoopMatrix(scheme, entries)


def bracket(x: LoopMatrix, y: LoopMatrix) -> LoopMatrix:
    """Matrix commutator xy - yx."""
    return (x @ y) - (y @ x)


def loop_form(x: LoopMatrix, y: LoopMatrix) -> Gaussian:
    """Degree-0 Laurent coefficient of tr(xy)."""
    x._require_same_scheme(y)
    return (x @ y).trace().coeff(0)


def derive_degree(x: LoopMatrix) -> LoopMatrix:
    """Entrywise t d/dt: t^q -> q t^q.  Kills constant matrices."""
    return LoopMatrix(x.scheme, {k: v.derive() for k, v in x.entries.items()})


def structure_matrix(family: str, scheme: MatrixScheme) -> LoopMatrix | None:
    """The defining bilinear structure matrix of o/sp on signed schemes."""
    if family in ("gl", "sl"):
        return None
    if scheme.kind == "J":
        raise SchemeMismatchError(f"{family} needs a signed scheme")
    entries: dict[tuple, Laurent] = {}
    sign_lower = -1 if family == "sp" else 1
    for j in scheme.J:
        entries[(f"+{j}", f"-{j}")] = Laurent.of(1)
        entries[(f"-{j}", f"+{j}")] = Laurent.of(sign_lower)
    if scheme.kind == "2J+1":
        if family == "sp":
            raise SchemeMismatchError("sp is defined on even schemes only")
        entries[("0", "0")] = Laurent.of(1)
    return LoopMatrix(scheme, entries)


class AlgebraTag:
    """One of gl/sl/o/sp on a fixed scheme, with its structure matrix."""

    __slots__ = ("family", "scheme", "S")

    def __init__(self, family: str, scheme: MatrixScheme):
        if family not in ("gl", "sl", "o", "sp"):
            raise ValueError(f"unknown family {family!r}")
        object.__setattr__(self, "family", family)
        object.__setattr__(self, "scheme", scheme)
        object.__setattr__(self, "S", structure_matrix(family, scheme))

    def __setattr__(self, *a):
        raise AttributeError("AlgebraTag is immutable")

    def __repr__(self):
        return f"AlgebraTag({self.family}, {self.scheme!r})"

    def __eq__(self, other):
        return (isinstance(other, AlgebraTag) and self.family == other.family
                and self.scheme == other.scheme)

    def __hash__(self):
        return hash((self.family, self.scheme))


def member(tag: AlgebraTag, x: LoopMatrix) -> bool:
    """Exact defining-relation check, coefficientwise in t."""
    if x.scheme != tag.scheme:
        raise SchemeMismatchError("matrix scheme does not match the tag")
    if tag.family == "gl":
        return True
    if tag.family == "sl":
        return x.trace().is_zero()
    s = tag.S
    return (x.transpose() @ s + s @ x).is_zero()


class InvolutionSpec:
    """Either Ad(g): x -> g x g^-1, or x -> -S x^T S^-1.

    The matrix must be constant and invertible; the induced map is checked
    to square to the identity on the elementary matrices at construction.
    """

    __slots__ = ("kind", "matrix", "inverse")

    def __init__(self, kind: str, matrix: LoopMatrix):
        if kind not in ("adjoint", "neg_transpose"):
            raise ValueError(f"unknown involution kind {kind!r}")
        if not matrix.is_constant():
            raise ValueError("involution matrices must be constant")
        inv = _invert_constant(matrix)
        if inv is None:
            raise ValueError("involution matrix is singular")
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "matrix", matrix)
        object.__setattr__(self, "inverse", inv)
        scheme = matrix.scheme
        for l1 in scheme.labels():
            for l2 in scheme.labels():
                e = LoopMatrix.unit(scheme, l1, l2)
                if apply_involution(self, apply_involution(self, e)) != e:
                    raise ValueError("map does not square to the identity")

    def __setattr__(self, *a):
        raise AttributeError("InvolutionSpec is immutable")

    def __repr__(self):
        return f"InvolutionSpec({self.kind})"


def _invert_constant(m: LoopMatrix) -> LoopMatrix | None:
    from .linalg import invert
    labels = m.scheme.labels()
    const = m.constant_matrix()
    rows = [[const.get((r, c), G_ZERO) for c in labels] for r in labels]
    inv = invert(rows)
    if inv is None:
        return None
    entries = {(labels[i], labels[j]): Laurent.of(inv[i][j])
               for i in range(len(labels)) for j in range(len(labels))}
    return LoopMatrix(m.scheme, entries)


def apply_involution(spec: InvolutionSpec, x: LoopMatrix) -> LoopMatrix:
    if x.scheme != spec.matrix.scheme:
        raise SchemeMismatchError("matrix scheme does not match the involution")
    if spec.kind == "adjoint":
        return spec.matrix @ x @ spec.inverse
    return -(spec.matrix @ x.transpose() @ spec.inverse)


def twisted_member(x: LoopMatrix, sigma: InvolutionSpec, tag: AlgebraTag) -> bool:
    """x lies in the twisted loop algebra: even-degree parts are fixed by the
    involution, odd-degree parts are negated."""
    if not member(tag, x):
        raise ValueError("matrix is not a member of the base algebra")
    for d in x.degrees():
        part = x.degree_part(d)
        image = apply_involution(sigma, part)
        want = part if d % 2 == 0 else -part
        if image != want:
            return False
    return True


def p3(x: LoopMatrix) -> Gaussian:
    """tr(x^3) of a constant matrix; separates conjugations (which fix it)
    from negative-transpose maps (which negate it)."""
    if not x.is_constant():
        raise ValueError("p3 is defined for constant matrices")
    return (x @ x @ x).trace().coeff(0)


def quad_phi(v: Mapping, x: Mapping, beta: LoopMatrix) -> LoopMatrix:
    """The skew map beta_{v,x} - beta_{x,v} with beta_{v,w}(u) = beta(v,u) w.

    Vectors are label -> coefficient mappings; beta is the constant
    structure matrix of the quadratic space.  Requires beta(v,v) != 0 and
    beta(v,x) = 0; the image lies in o(V, beta) and anticommutes with the
    reflection in the hyperplane orthogonal to v.
    """
    scheme = beta.scheme
    const = beta.constant_matrix()
    labels = scheme.labels()
    vv = {str(k): Gaussian.of(c) for k, c in v.items()}
    xx = {str(k): Gaussian.of(c) for k, c in x.items()}

    def form(a: Mapping, b: Mapping) -> Gaussian:
        s = G_ZERO
        for (r, c), val in const.items():
            av, bv = a.get(r), b.get(c)
            if av is not None and bv is not None:
                s = s + av * val * bv
        return s

    if form(vv, vv).is_zero():
        raise ValueError("reflection vector must be non-isotropic")
    if not form(vv, xx).is_zero():
        raise ValueError("argument must be orthogonal to the reflection vector")

    def row_form(a: Mapping) -> dict:
        # c -> sum_r a_r beta[r, c]
        out: dict[str, Gaussian] = {}
        for (r, c), val in const.items():
            av = a.get(r)
            if av is not None:
                out[c] = out.get(c, G_ZERO) + av * val
        return out

    vb = row_form(vv)
    xb = row_form(xx)
    entries: dict[tuple, Laurent] = {}
    for r, xr in xx.items():
        for c, w in vb.items():
            g = xr * w
            if not g.is_zero():
                entries[(r, c)] = Laurent.of(g)
    for r, vr in vv.items():
        for c, w in xb.items():
            g = vr * w
            if not g.is_zero():
                cur = entries.get((r, c), L_ZERO) - Laurent.of(g)
                if cur.is_zero():
                    entries.pop((r, c), None)
                else:
                    entries[(r, c)] = cur
    return LoopMatrix(scheme, entries)


def conjugation_shift(x: LoopMatrix, block_weights: Mapping) -> LoopMatrix:
    """Conjugation by the diagonal one-parameter family with the given
    integer block weights: entry (r, c) shifts degree by w_r - w_c.

    A Lie algebra homomorphism of the loop algebra for any weight table.
    """
    w = {str(k): int(v) for k, v in block_weights.items()}
    out = {}
    for (r, c), v in x.entries.items():
        shift = w.get(r, 0) - w.get(c, 0)
        out[(r, c)] = v.shift(shift) if shift else v
    return LoopMatrix(x.scheme, out)
