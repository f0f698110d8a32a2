"""Exact scalars: rationals, Gaussian rationals and sparse Laurent polynomials.

Plain ``fractions.Fraction`` is the rational type throughout the package
(always reduced, arbitrary precision).  On top of it sit Gaussian rationals
(``re + im*i``) and Laurent polynomials in one variable ``t`` with Gaussian
coefficients, stored as a finite degree -> coefficient mapping with no zero
entries.  All values are immutable; every operation returns a fresh value.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Union

Q = Fraction

RationalLike = Union[int, Fraction]
GaussianLike = Union[int, Fraction, "Gaussian"]


def q_str(x: Fraction) -> str:
    """Serialize a rational as "p" or "p/q"."""
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def q_parse(s: str) -> Fraction:
    return Fraction(s)


class Gaussian:
    """A Gaussian rational re + im*i with exact Fraction parts."""

    __slots__ = ("re", "im")

    def __init__(self, re: RationalLike = 0, im: RationalLike = 0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("Gaussian values are immutable")

    @staticmethod
    def of(x: GaussianLike) -> "Gaussian":
        if isinstance(x, Gaussian):
            return x
        return Gaussian(x)

    def __add__(self, other: GaussianLike) -> "Gaussian":
        o = Gaussian.of(other)
        return Gaussian(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self) -> "Gaussian":
        return Gaussian(-self.re, -self.im)

    def __sub__(self, other: GaussianLike) -> "Gaussian":
        o = Gaussian.of(other)
        return Gaussian(self.re - o.re, self.im - o.im)

    def __rsub__(self, other: GaussianLike) -> "Gaussian":
        return Gaussian.of(other) - self

    def __mul__(self, other: GaussianLike) -> "Gaussian":
        o = Gaussian.of(other)
        return Gaussian(self.re * o.re - self.im * o.im,
                        self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other: GaussianLike) -> "Gaussian":
        o = Gaussian.of(other)
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero Gaussian")
        num = self * o.conj()
        return Gaussian(num.re / n, num.im / n)

    def __rtruediv__(self, other: GaussianLike) -> "Gaussian":
        return Gaussian.of(other) / self

    def conj(self) -> "Gaussian":
        return Gaussian(self.re, -self.im)

    def norm(self) -> Fraction:
        """re^2 + im^2; zero iff the value is zero."""
        return self.re * self.re + self.im * self.im

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def is_real(self) -> bool:
        return self.im == 0

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Gaussian(other)
        if not isinstance(other, Gaussian):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __repr__(self) -> str:
        if self.im == 0:
            return q_str(self.re)
        if self.re == 0:
            return f"{q_str(self.im)}i"
        sign = "+" if self.im > 0 else "-"
        return f"{q_str(self.re)}{sign}{q_str(abs(self.im))}i"

    def to_json(self) -> dict:
        return {"re": q_str(self.re), "im": q_str(self.im)}

    @staticmethod
    def from_json(obj) -> "Gaussian":
        if isinstance(obj, str):
            return Gaussian(q_parse(obj))
        return Gaussian(q_parse(obj["re"]), q_parse(obj.get("im", "0")))


G_ZERO = Gaussian(0)
G_ONE = Gaussian(1)
G_I = Gaussian(0, 1)


def gaussian_conj(a: GaussianLike) -> Gaussian:
    """Complex conjugation (re, im) -> (re, -im)."""
    return Gaussian.of(a).conj()


class Laurent:
    """Sparse Laurent polynomial sum_d coeff[d] * t^d over Gaussian rationals.

    The coefficient mapping never stores zeros; the zero polynomial is the
    empty mapping.  Structural equality therefore coincides with mathematical
    equality.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[int, GaussianLike] | None = None):
        pruned: dict[int, Gaussian] = {}
        if coeffs:
            for d, c in coeffs.items():
                g = Gaussian.of(c)
                if not g.is_zero():
                    pruned[int(d)] = g
        object.__setattr__(self, "coeffs", pruned)

    def __setattr__(self, name, value):
        raise AttributeError("Laurent values are immutable")

    @staticmethod
    def of(x: Union[int, Fraction, Gaussian, "Laurent"]) -> "Laurent":
        if isinstance(x, Laurent):
            return x
        return Laurent({0: Gaussian.of(x)})

    @staticmethod
    def term(degree: int, coeff: GaussianLike = 1) -> "Laurent":
        return Laurent({degree: coeff})

    def coeff(self, degree: int) -> Gaussian:
        """Coefficient of t^degree (zero when absent)."""
        return self.coeffs.get(degree, G_ZERO)

    def support(self) -> list[int]:
        return sorted(self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other) -> "Laurent":
        o = Laurent.of(other)
        out = dict(self.coeffs)
        for d, c in o.coeffs.items():
            s = out.get(d, G_ZERO) + c
            if s.is_zero():
                out.pop(d, None)
            else:
                out[d] = s
        return Laurent(out)

    __radd__ = __add__

    def __neg__(self) -> "Laurent":
        return Laurent({d: -c for d, c in self.coeffs.items()})

    def __sub__(self, other) -> "Laurent":
        return self + (-Laurent.of(other))

    def __rsub__(self, other) -> "Laurent":
        return Laurent.of(other) - self

    def __mul__(self, other) -> "Laurent":
        o = Laurent.of(other)
        out: dict[int, Gaussian] = {}
        for d1, c1 in self.coeffs.items():
            for d2, c2 in o.coeffs.items():
                d = d1 + d2
                s = out.get(d, G_ZERO) + c1 * c2
                if s.is_zero():
                    out.pop(d, None)
                else:
                    out[d] = s
        return Laurent(out)

    __rmul__ = __mul__

    def scale(self, c: GaussianLike) -> "Laurent":
        g = Gaussian.of(c)
        return Laurent({d: v * g for d, v in self.coeffs.items()})

    def shift(self, k: int) -> "Laurent":
        """Multiply by t^k."""
        return Laurent({d + k: c for d, c in self.coeffs.items()})

    def derive(self) -> "Laurent":
        """Apply t*d/dt: t^q -> q t^q.  Kills the degree-0 part."""
        return Laurent({d: c * d for d, c in self.coeffs.items() if d != 0})

    def conj_flip(self) -> "Laurent":
        """Coefficientwise conjugation combined with t^q -> t^-q."""
        return Laurent({-d: c.conj() for d, c in self.coeffs.items()})

    def degree_part(self, d: int) -> "Laurent":
        c = self.coeffs.get(d)
        return Laurent({d: c}) if c is not None else Laurent()

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, Gaussian)):
            other = Laurent.of(other)
        if not isinstance(other, Laurent):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for d in self.support():
            c = self.coeffs[d]
            if d == 0:
                parts.append(f"({c!r})")
            elif d == 1:
                parts.append(f"({c!r})t")
            else:
                parts.append(f"({c!r})t^{d}")
        return " + ".join(parts)

    def to_json(self) -> dict:
        return {str(d): self.coeffs[d].to_json() for d in self.support()}

    @staticmethod
    def from_json(obj: Mapping) -> "Laurent":
        return Laurent({int(d): Gaussian.from_json(c) for d, c in obj.items()})


L_ZERO = Laurent()
L_ONE = Laurent({0: 1})
L_T = Laurent({1: 1})


def laurent_mul(a: Laurent, b: Laurent) -> Laurent:
    """Convolution product of two Laurent polynomials."""
    return a * b


def laurent_coeff(a: Laurent, degree: int) -> Gaussian:
    return a.coeff(degree)


def assert_reduced(x: Fraction) -> None:
    """Sanity hook: Fraction keeps gcd(num, den) = 1 and den > 0."""
    from math import gcd
    assert x.denominator > 0
    assert gcd(x.numerator, x.denominator) == 1
