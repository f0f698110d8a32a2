"""Weights, roots and the ambient split Cartan space K.c + h + K.d.

A weight is a triple (z, f, t): its value on the central element c, a
finitely supported map of epsilon-coordinates on the diagonal part, and its
value on the derivation d.  Roots are weights with z = 0, integer
epsilon-coordinates and integer d-part (the delta-coefficient); root-ness is
a predicate, not a separate type.  Cartan elements are the dual triples.

The invariant form lives on z-free weights: (a, b) = scale * sum_j a_j b_j,
with delta = (0, 0, 1) isotropic.  The scale is 1/2 for the C family (so
long roots +-2e_j keep square length 2) and 1 otherwise.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping

from .exact import q_parse, q_str

Q = Fraction


class IsotropicRootError(ValueError):
    """Raised when an operation needs a non-isotropic root."""


def _prune(m: Mapping) -> dict:
    return {k: Fraction(v) for k, v in m.items() if Fraction(v) != 0}


class Weight:
    """Triple (z, f, t) in the dual of K.c + h + K.d."""

    __slots__ = ("z", "f", "t")

    def __init__(self, z=0, f: Mapping | None = None, t=0):
        object.__setattr__(self, "z", Fraction(z))
        object.__setattr__(self, "f", _prune(f or {}))
        object.__setattr__(self, "t", Fraction(t))

    def __setattr__(self, name, value):
        raise AttributeError("Weight values are immutable")

    def coeff(self, label) -> Fraction:
        return self.f.get(label, Q(0))

    def support(self) -> list:
        return sorted(self.f)

    def is_zero(self) -> bool:
        return self.z == 0 and self.t == 0 and not self.f

    def is_root_shaped(self) -> bool:
        """z = 0, integer epsilon-coordinates, integer delta-coefficient."""
        return (self.z == 0 and self.t.denominator == 1
                and all(v.denominator == 1 for v in self.f.values()))

    def __add__(self, other: "Weight") -> "Weight":
        f = dict(self.f)
        for k, v in other.f.items():
            s = f.get(k, Q(0)) + v
            if s == 0:
                f.pop(k, None)
            else:
                f[k] = s
        return Weight(self.z + other.z, f, self.t + other.t)

    def __neg__(self) -> "Weight":
        return Weight(-self.z, {k: -v for k, v in self.f.items()}, -self.t)

    def __sub__(self, other: "Weight") -> "Weight":
        return self + (-other)

    def scale_by(self, c) -> "Weight":
        c = Fraction(c)
        return Weight(self.z * c, {k: v * c for k, v in self.f.items()}, self.t * c)

    def key(self):
        """Deterministic sort key."""
        return (self.z, self.t, tuple(sorted(self.f.items())))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Weight):
            return NotImplemented
        return self.z == other.z and self.t == other.t and self.f == other.f

    def __hash__(self):
        return hash((self.z, self.t, frozenset(self.f.items())))

    def __repr__(self) -> str:
        eps = " ".join(f"{q_str(v)}*e{k}" for k, v in sorted(self.f.items()))
        return f"Weight(c={q_str(self.z)}, [{eps}], d={q_str(self.t)})"

    def to_json(self) -> dict:
        return {"c": q_str(self.z),
                "eps": {str(k): q_str(v) for k, v in sorted(self.f.items())},
                "d": q_str(self.t)}

    @staticmethod
    def from_json(obj, label_type=int) -> "Weight":
        eps = {label_type(k): q_parse(v) for k, v in obj.get("eps", {}).items()}
        return Weight(q_parse(obj.get("c", "0")), eps, q_parse(obj.get("d", "0")))


class CartanElement:
    """Triple (z, h, t) = z*c + sum h_j e_j + t*d."""

    __slots__ = ("z", "h", "t")

    def __init__(self, z=0, h: Mapping | None = None, t=0):
        object.__setattr__(self, "z", Fraction(z))
        object.__setattr__(self, "h", _prune(h or {}))
        object.__setattr__(self, "t", Fraction(t))

    def __setattr__(self, name, value):
        raise AttributeError("CartanElement values are immutable")

    def coeff(self, label) -> Fraction:
        return self.h.get(label, Q(0))

    def __add__(self, other: "CartanElement") -> "CartanElement":
        h = dict(self.h)
        for k, v in other.h.items():
            s = h.get(k, Q(0)) + v
            if s == 0:
                h.pop(k, None)
            else:
                h[k] = s
        return CartanElement(self.z + other.z, h, self.t + other.t)

    def __neg__(self) -> "CartanElement":
        return CartanElement(-self.z, {k: -v for k, v in self.h.items()}, -self.t)

    def __sub__(self, other: "CartanElement") -> "CartanElement":
        return self + (-other)

    def scale_by(self, c) -> "CartanElement":
        c = Fraction(c)
        return CartanElement(self.z * c, {k: v * c for k, v in self.h.items()}, self.t * c)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CartanElement):
            return NotImplemented
        return self.z == other.z and self.t == other.t and self.h == other.h

    def __hash__(self):
        return hash((self.z, self.t, frozenset(self.h.items())))

    def __repr__(self) -> str:
        diag = " ".join(f"{q_str(v)}*E{k}" for k, v in sorted(self.h.items()))
        return f"Cartan(c={q_str(self.z)}, [{diag}], d={q_str(self.t)})"


C_ELEMENT = CartanElement(1, {}, 0)
D_ELEMENT = CartanElement(0, {}, 1)
DELTA = Weight(0, {}, 1)


class FormSpec:
    """Normalization of the epsilon-form: (e_i, e_j) = scale * delta_ij."""

    __slots__ = ("family", "scale")

    _SCALES = {"A": Q(1), "B": Q(1), "C": Q(1, 2), "D": Q(1), "BC": Q(1)}

    def __init__(self, family: str):
        if family not in self._SCALES:
            raise ValueError(f"unknown family {family!r}")
        object.__setattr__(self, "family", family)
        object.__setattr__(self, "scale", self._SCALES[family])

    def __setattr__(self, name, value):
        raise AttributeError("FormSpec is immutable")

    def __repr__(self):
        return f"FormSpec({self.family}, scale={q_str(self.scale)})"

    def __eq__(self, other):
        return isinstance(other, FormSpec) and self.family == other.family

    def __hash__(self):
        return hash(self.family)


def evaluate(w: Weight, x: CartanElement) -> Fraction:
    """w(x) = x.z*w(c) + sum_j w_j x_j + x.t*w(d)."""
    s = x.z * w.z + x.t * w.t
    for k, v in w.f.items():
        hv = x.h.get(k)
        if hv is not None:
            s += v * hv
    return s


def inner(a: Weight, b: Weight, form: FormSpec) -> Fraction:
    """Invariant form on z-free weights; the delta-part does not contribute."""
    if a.z != 0 or b.z != 0:
        raise ValueError("form is defined on weights with zero central part")
    s = Q(0)
    for k, v in a.f.items():
        bv = b.f.get(k)
        if bv is not None:
            s += v * bv
    return form.scale * s


def sharp(w: Weight, form: FormSpec) -> CartanElement:
    """Form transport of a z-free weight into the Cartan; delta^sharp = c."""
    if w.z != 0:
        raise ValueError("sharp is defined on weights with zero central part")
    return CartanElement(w.t, {k: form.scale * v for k, v in w.f.items()}, 0)


def coroot(r: Weight, form: FormSpec) -> CartanElement:
    """The unique Cartan element with r(coroot(r)) = 2, i.e. 2*r^sharp/(r,r)."""
    rr = inner(r, r, form)
    if rr == 0:
        raise IsotropicRootError(f"no coroot: {r!r} is isotropic")
    return sharp(r, form).scale_by(Q(2) / rr)


def pair(beta: Weight, alpha: Weight, form: FormSpec) -> Fraction:
    """<beta, alpha> = beta(coroot(alpha)) = 2(alpha,beta)/(alpha,alpha)."""
    return evaluate(beta, coroot(alpha, form))


def reflect(beta: Weight, alpha: Weight, form: FormSpec) -> Weight:
    """r_alpha(beta) = beta - <beta, alpha> alpha."""
    return beta - alpha.scale_by(pair(beta, alpha, form))


def root_from_parts(eps: Mapping, m=0) -> Weight:
    """Root (alpha, m) = finite part + m*delta."""
    return Weight(0, eps, m)
