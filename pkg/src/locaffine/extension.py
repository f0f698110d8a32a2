"""Double extensions of (twisted) loop algebras: K.c + loop + K.d.

A Realization bundles a matrix family, an optional twist involution, the
predicted root system and the trace-form normalization nu (kappa = nu * tr
on the base algebra); the choices per family are fixed so that long roots
have square length 2, matching the epsilon-form of the root model:

    family      base algebra      twist                nu
    A:1         sl_J              -                    1
    B:1         o_{2J+1}          -                    1/2
    C:1         sp_{2J}           -                    1
    D:1         o_{2J}            -                    1/2
    B:2         o_{2J'}           Ad(swap +-j0)        1/2   (J' = J + {j0})
    C:2         sl_{2J}           -S- x^T S-^-1        1
    C:2 alt     sl_{2J}           -S+ x^T S+^-1        1
    BC:2        sl_{2J+1}         -S x^T S^-1          1/2

Elements of the extension are triples (z, x, t) with the bracket

    [(z,x,t), (z',x',t')] = (kappa(Dx, x'), [x,x'] + t Dx' - t' Dx, 0)

and the invariant form kappa((z,x,t),(z',x',t')) = kappa(x,x') + zt' + z't.

Root spaces over the Cartan K.c + h + K.d are extracted by exact linear
algebra: elementary matrices t^q E_ab are grouped by their diagonal weight
and the defining relations (trace/structure-matrix/twist parity) are solved
within each group.  Canonical basis vectors are normalized so their first
nonzero coordinate in elementary-matrix order is 1; all downstream sign
conventions (coroot matching, star positivity) rest on that normalization.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Sequence

from .catalog import FINITE, TWISTED, UNTWISTED, RootSystemDesc, contains, enumerate_roots
from .exact import G_ZERO, Gaussian, Laurent
from .linalg import nullspace
from .loops import (AlgebraTag, InvolutionSpec, LoopMatrix, MatrixScheme,
                    SchemeMismatchError, apply_involution, bracket,
                    derive_degree, loop_form, member, structure_matrix,
                    twisted_member)
from .roots import CartanElement, IsotropicRootError, Weight, coroot, inner

Q = Fraction


class RealizationError(ValueError):
    pass


class Realization:
    """A concrete loop-algebra model of a catalog root system."""

    __slots__ = ("desc", "tag", "sigma", "nu", "extra_label")

    def __init__(self, desc: RootSystemDesc):
        if desc.level == FINITE:
            raise RealizationError("realizations exist for affine levels only")
        fam, level = desc.family, desc.level
        extra = None
        if level == UNTWISTED:
            if fam == "A":
                tag, sigma, nu = AlgebraTag("sl", MatrixScheme("J", desc.J)), None, Q(1)
            elif fam == "B":
                tag, sigma, nu = AlgebraTag("o", MatrixScheme("2J+1", desc.J)), None, Q(1, 2)
            elif fam == "C":
                tag, sigma, nu = AlgebraTag("sp", MatrixScheme("2J", desc.J)), None, Q(1)
            elif fam == "D":
                tag, sigma, nu = AlgebraTag("o", MatrixScheme("2J", desc.J)), None, Q(1, 2)
            else:
                raise RealizationError("BC has no untwisted affine form")
        else:
            if fam == "B":
                extra = _fresh_label(desc.J)
                scheme = MatrixScheme("2J", tuple(desc.J) + (extra,))
                tag = AlgebraTag("o", scheme)
                sigma = InvolutionSpec("adjoint", _swap_matrix(scheme, extra))
                nu = Q(1, 2)
            elif fam == "C":
                scheme = MatrixScheme("2J", desc.J)
                tag = AlgebraTag("sl", scheme)
                s = structure_matrix("o" if desc.alternate else "sp", scheme)
                sigma = InvolutionSpec("neg_transpose", s)
                nu = Q(1)
            else:  # BC
                scheme = MatrixScheme("2J+1", desc.J)
                tag = AlgebraTag("sl", scheme)
                sigma = InvolutionSpec("neg_transpose", structure_matrix("o", scheme))
                nu = Q(1, 2)
        object.__setattr__(self, "desc", desc)
        object.__setattr__(self, "tag", tag)
        object.__setattr__(self, "sigma", sigma)
        object.__setattr__(self, "nu", nu)
        object.__setattr__(self, "extra_label", extra)

    def __setattr__(self, *a):
        raise AttributeError("Realization is immutable")

    def __repr__(self):
        return f"Realization({self.desc.descriptor()} on {self.tag!r})"

    @property
    def scheme(self) -> MatrixScheme:
        return self.tag.scheme

    def label_weight(self, label: str) -> dict:
        """Epsilon-coordinates of a row/column label over the Cartan of the
        fixed part; the auxiliary twisted-B labels carry weight zero."""
        w = self.scheme.eps_weight(label)
        if self.extra_label is not None and any(k == self.extra_label for k in w):
            return {}
        return w

    def in_loop_algebra(self, x: LoopMatrix) -> bool:
        if self.sigma is None:
            return member(self.tag, x)
        return member(self.tag, x) and twisted_member(x, self.sigma, self.tag)

    def kappa(self, x: LoopMatrix, y: LoopMatrix) -> Gaussian:
        return Gaussian.of(self.nu) * loop_form(x, y)

    def omega(self, x: LoopMatrix, y: LoopMatrix) -> Gaussian:
        return self.kappa(derive_degree(x), y)

    def zero_matrix(self) -> LoopMatrix:
        return LoopMatrix(self.scheme, {})

    def cartan_matrix_of(self, h_map: Mapping) -> LoopMatrix:
        """The diagonal matrix sum h_j e_j for a label -> coefficient map."""
        entries: dict[tuple, Laurent] = {}
        for j, v in h_map.items():
            if v == 0:
                continue
            if self.scheme.kind == "J":
                entries[(str(j), str(j))] = Laurent.of(Gaussian.of(v))
            else:
                entries[(f"+{j}", f"+{j}")] = Laurent.of(Gaussian.of(v))
                entries[(f"-{j}", f"-{j}")] = Laurent.of(Gaussian.of(-v))
        return LoopMatrix(self.scheme, entries)

    def diagonal_coordinates(self, x: LoopMatrix) -> dict:
        """Inverse of cartan_matrix_of; raises if x is not in the Cartan span."""
        if any(r != c for (r, c) in x.entries):
            raise RealizationError("not a diagonal matrix")
        if not x.is_constant():
            raise RealizationError("not a constant matrix")
        out: dict = {}
        const = {r: v.coeff(0) for (r, _), v in x.entries.items()}
        if self.scheme.kind == "J":
            for j in self.desc.J:
                g = const.get(str(j), G_ZERO)
                if not g.is_real():
                    raise RealizationError("non-rational Cartan coordinate")
                if g.re != 0:
                    out[j] = g.re
            return out
        seen = set()
        for label, g in const.items():
            if label == "0":
                if not g.is_zero():
                    raise RealizationError("0-label diagonal entry out of Cartan")
                continue
            j = label[1:]
            seen.add(j)
        for j in sorted(seen):
            plus = const.get(f"+{j}", G_ZERO)
            minus = const.get(f"-{j}", G_ZERO)
            if plus + minus != G_ZERO:
                raise RealizationError(f"diagonal not in span of e_{j}")
            if not plus.is_real():
                raise RealizationError("non-rational Cartan coordinate")
            key = _restore_label(j, self.desc.J, self.extra_label)
            if key is _EXTRA:
                if not plus.is_zero():
                    raise RealizationError("auxiliary label carries Cartan weight")
                continue
            if plus.re != 0:
                out[key] = plus.re
        return out


_EXTRA = object()


def _restore_label(text: str, J, extra):
    for j in J:
        if str(j) == text:
            return j
    if extra is not None and str(extra) == text:
        return _EXTRA
    raise RealizationError(f"unknown label {text!r}")


def _fresh_label(J) -> object:
    used = {str(j) for j in J}
    n = 0
    while f"x{n}" in used:
        n += 1
    return f"x{n}"


def _swap_matrix(scheme: MatrixScheme, j0) -> LoopMatrix:
    """Orthogonal reflection in e_{+j0} - e_{-j0}: swaps the two labels."""
    entries: dict[tuple, Laurent] = {}
    for l in scheme.labels():
        if l == f"+{j0}":
            entries[(l, f"-{j0}")] = Laurent.of(1)
        elif l == f"-{j0}":
            entries[(l, f"+{j0}")] = Laurent.of(1)
        else:
            entries[(l, l)] = Laurent.of(1)
    return LoopMatrix(scheme, entries)


class ExtElement:
    """Triple (z, x, t) = z.c + loop part + t.d of a fixed realization."""

    __slots__ = ("real", "z", "x", "t")

    def __init__(self, real: Realization, z=0, x: LoopMatrix | None = None, t=0):
        x = x if x is not None else real.zero_matrix()
        if x.scheme != real.scheme:
            raise SchemeMismatchError("loop part lives on the wrong scheme")
        object.__setattr__(self, "real", real)
        object.__setattr__(self, "z", Gaussian.of(z))
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "t", Gaussian.of(t))

    def __setattr__(self, *a):
        raise AttributeError("ExtElement is immutable")

    def __add__(self, other: "ExtElement") -> "ExtElement":
        self._check(other)
        return ExtElement(self.real, self.z + other.z, self.x + other.x, self.t + other.t)

    def __neg__(self):
        return ExtElement(self.real, -self.z, -self.x, -self.t)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "ExtElement":
        g = Gaussian.of(c)
        return ExtElement(self.real, self.z * g, self.x.scale(g), self.t * g)

    def is_zero(self) -> bool:
        return self.z.is_zero() and self.x.is_zero() and self.t.is_zero()

    def _check(self, other: "ExtElement"):
        if self.real is not other.real and self.real.desc != other.real.desc:
            raise RealizationError("elements of different realizations")

    def __eq__(self, other):
        if not isinstance(other, ExtElement):
            return NotImplemented
        return self.z == other.z and self.t == other.t and self.x == other.x

    def __hash__(self):
        return hash((self.z, self.t, self.x))

    def __repr__(self):
        return f"Ext(c={self.z!r}, {self.x!r}, d={self.t!r})"


def ext_bracket(a: ExtElement, b: ExtElement) -> ExtElement:
    a._check(b)
    real = a.real
    z = real.omega(a.x, b.x)
    mid = bracket(a.x, b.x)
    if not a.t.is_zero():
        mid = mid + derive_degree(b.x).scale(a.t)
    if not b.t.is_zero():
        mid = mid - derive_degree(a.x).scale(b.t)
    return ExtElement(real, z, mid, 0)


def ext_form(a: ExtElement, b: ExtElement) -> Gaussian:
    a._check(b)
    return a.real.kappa(a.x, b.x) + a.z * b.t + b.z * a.t


def central_element(real: Realization) -> ExtElement:
    return ExtElement(real, 1, None, 0)


def derivation_element(real: Realization) -> ExtElement:
    return ExtElement(real, 0, None, 1)


def evaluate_on_cartan(w: Weight, h: ExtElement) -> Fraction:
    """Value of a weight on a Cartan triple (z, diagonal, t)."""
    coords = h.real.diagonal_coordinates(h.x)
    if not h.z.is_real() or not h.t.is_real():
        raise RealizationError("Cartan element with non-real c/d coordinates")
    s = w.z * h.z.re + w.t * h.t.re
    for k, v in w.f.items():
        c = coords.get(k)
        if c is not None:
            s += v * c
    return s


def _group_constraints(real: Realization, units: list[LoopMatrix], q: int):
    """Rows of the defining relations restricted to the span of the units."""
    images: list[list[LoopMatrix]] = []
    maps = []
    tag = real.tag
    if tag.family == "sl":
        maps.append(lambda u: _trace_matrix(u))
    elif tag.family in ("o", "sp"):
        s = tag.S
        maps.append(lambda u: u.transpose() @ s + s @ u)
    if real.sigma is not None:
        sign = 1 if q % 2 == 0 else -1
        maps.append(lambda u: apply_involution(real.sigma, u) - u.scale(sign))
    rows: list[list[Fraction]] = []
    coords: dict[tuple, int] = {}
    per_unit_images = []
    for u in units:
        imgs = [mp(u) for mp in maps]
        per_unit_images.append(imgs)
        for img in imgs:
            for key, val in img.entries.items():
                for d in val.coeffs:
                    coords.setdefault((key, d), len(coords))
    if not coords:
        return []
    n = len(units)
    out = [[Q(0)] * n for _ in range(len(coords) * len(maps))]
    for ui, imgs in enumerate(per_unit_images):
        for mi, img in enumerate(imgs):
            for key, val in img.entries.items():
                for d, g in val.coeffs.items():
                    if not g.is_real():
                        raise RealizationError("non-rational constraint entry")
                    row = coords[(key, d)] + mi * len(coords)
                    out[row][ui] = g.re
    return [r for r in out if any(v != 0 for v in r)]


def _trace_matrix(u: LoopMatrix) -> LoopMatrix:
    tr = u.trace()
    if tr.is_zero():
        return LoopMatrix(u.scheme, {})
    lab = u.scheme.labels()[0]
    return LoopMatrix(u.scheme, {(lab, lab): tr})


def root_spaces(real: Realization, support=None, max_degree: int = 3
                ) -> dict[Weight, list[ExtElement]]:
    """Simultaneous ad-eigenspace decomposition of the degree window.

    Returns root -> canonical basis.  Every key is checked against the
    catalog prediction; a stray eigenvector is a realization bug and raises.
    """
    desc = real.desc
    support = set(desc.J if support is None else support)
    labels = [l for l in real.scheme.labels()
              if all(k in support for k in real.label_weight(l))]
    groups: dict[tuple, list[tuple]] = {}
    for a in labels:
        for b in labels:
            wa, wb = real.label_weight(a), real.label_weight(b)
            f = dict(wa)
            for k, v in wb.items():
                nv = f.get(k, Q(0)) - v
                if nv:
                    f[k] = nv
                else:
                    f.pop(k, None)
            key = tuple(sorted(f.items()))
            groups.setdefault(key, []).append((a, b))
    out: dict[Weight, list[ExtElement]] = {}
    for key, pairs in sorted(groups.items()):
        f = dict(key)
        for q in range(-max_degree, max_degree + 1):
            units = [LoopMatrix.unit(real.scheme, a, b, degree=q) for a, b in pairs]
            rows = _group_constraints(real, units, q)
            basis = nullspace(rows, cols=len(units), one=Q(1))
            if not basis:
                continue
            root = Weight(0, f, q)
            if root.is_zero():
                continue  # the Cartan itself, not a root
            if not contains(desc, root):
                raise RealizationError(
                    f"eigenvector with weight {root!r} outside the predicted system")
            vecs = []
            for coeffs in basis:
                m = real.zero_matrix()
                for c, u in zip(coeffs, units):
                    if c != 0:
                        m = m + u.scale(c)
                vecs.append(ExtElement(real, 0, m, 0))
            out[root] = vecs
    return out


def match_catalog(real: Realization, support=None, max_degree: int = 3) -> dict:
    """Compare extracted roots against the catalog window prediction."""
    desc = real.desc
    support = list(desc.J if support is None else support)
    spaces = root_spaces(real, support, max_degree)
    predicted = set(enumerate_roots(desc, support, max_degree))
    got = set(spaces)
    non_iso_dims = {r: len(v) for r, v in spaces.items() if r.f}
    return {
        "match": predicted == got,
        "missing": sorted(predicted - got, key=Weight.key),
        "extra": sorted(got - predicted, key=Weight.key),
        "all_one_dimensional": all(d == 1 for d in non_iso_dims.values()),
        "spaces": spaces,
    }


def coroot_from_bracket(real: Realization, alpha: Weight,
                        spaces: dict[Weight, list[ExtElement]] | None = None
                        ) -> ExtElement:
    """Coroot via [x_alpha, x_-alpha], rescaled so alpha evaluates to 2."""
    form = real.desc.form
    if inner(alpha, alpha, form) == 0:
        raise IsotropicRootError("no coroot for an isotropic root")
    if spaces is None:
        deg = abs(int(alpha.t)) + 1
        support = sorted(alpha.f)
        spaces = root_spaces(real, support, deg)
    xs, ys = spaces.get(alpha), spaces.get(-alpha)
    if not xs or not ys:
        raise RealizationError(f"root {alpha!r} not realized in the window")
    h = ext_bracket(xs[0], ys[0])
    val = evaluate_on_cartan(alpha, h)
    if val == 0:
        raise RealizationError(f"alpha([x,y]) = 0 for {alpha!r}: basis bug")
    return h.scale(Q(2) / val)


def model_coroot_element(real: Realization, alpha: Weight) -> ExtElement:
    """The root model's coroot transported into the extension."""
    cr: CartanElement = coroot(alpha, real.desc.form)
    return ExtElement(real, cr.z, real.cartan_matrix_of(cr.h), cr.t)


def check_integrable(real: Realization, alpha: Weight,
                     test_roots: Sequence[Weight], max_power: int = 12,
                     spaces=None) -> bool:
    """Local nilpotence of ad x_alpha on the listed root spaces and on d."""
    form = real.desc.form
    if inner(alpha, alpha, form) == 0:
        raise IsotropicRootError("isotropic directions are not integrable")
    deg = max([abs(int(alpha.t))] + [abs(int(r.t)) for r in test_roots]) + 1
    support = sorted(set(alpha.f) | {k for r in test_roots for k in r.f})
    if spaces is None:
        spaces = root_spaces(real, support, deg)
    if alpha not in spaces:
        raise RealizationError(f"{alpha!r} not realized in the window")
    x = spaces[alpha][0]
    vectors = [derivation_element(real)]
    for r in test_roots:
        vectors.extend(spaces.get(r, []))
    for v in vectors:
        cur = v
        for _ in range(max_power):
            cur = ext_bracket(x, cur)
            if cur.is_zero():
                break
        else:
            return False
    return True
