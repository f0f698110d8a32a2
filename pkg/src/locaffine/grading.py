"""Gradings attached to integral weights and the generalized parabolic.

An integral weight lam grades every root alpha by lam(alpha^sharp); on the
catalog systems the grades land in a cyclic subgroup of Q, so dividing by
the positive generator gives an honest Z-grading.  The parabolic split is
the sign partition of the grades.
"""

from __future__ import annotations

from fractions import Fraction

from .catalog import RootSystemDesc, enumerate_roots
from .linalg import rational_gcd
from .roots import Weight, coroot, evaluate, inner, sharp

Q = Fraction


class IntegralityError(ValueError):
    pass


def grade_of(lam: Weight, root: Weight, desc: RootSystemDesc) -> Fraction:
    """lam(root^sharp); for roots (alpha, m) this is m*lam(c) + (lam0, alpha)."""
    return evaluate(lam, sharp(root, desc.form))


def check_integral(lam: Weight, desc: RootSystemDesc, support, window) -> None:
    """Raise unless lam takes integer values on the coroots in the window."""
    for r in enumerate_roots(desc, support, window):
        if not r.f:
            continue
        v = evaluate(lam, coroot(r, desc.form))
        if v.denominator != 1:
            raise IntegralityError(
                f"lam(coroot({r!r})) = {v} is not an integer")


class GradingReport:
    """Grades of the window roots plus the cyclic normalization."""

    __slots__ = ("grades", "generator", "normalized", "degenerate")

    def __init__(self, grades: dict, generator: Fraction, degenerate: bool):
        object.__setattr__(self, "grades", grades)
        object.__setattr__(self, "generator", generator)
        object.__setattr__(self, "degenerate", degenerate)
        norm: dict[int, list] = {}
        if not degenerate:
            for root, g in grades.items():
                norm.setdefault(int(g / generator), []).append(root)
            for v in norm.values():
                v.sort(key=Weight.key)
        object.__setattr__(self, "normalized", norm)

    def __setattr__(self, *a):
        raise AttributeError("GradingReport is immutable")


def grading(lam: Weight, desc: RootSystemDesc, support, window) -> GradingReport:
    """Grade the window roots by lam and report the cyclic generator.

    The generator is the positive generator of the subgroup of Q generated
    by the observed grades; lam = 0 (or any weight grading everything to 0)
    is accepted but flagged degenerate.
    """
    check_integral(lam, desc, support, window)
    grades: dict[Weight, Fraction] = {}
    for r in enumerate_roots(desc, support, window):
        grades[r] = grade_of(lam, r, desc)
    gen = rational_gcd(grades.values())
    return GradingReport(grades, gen, gen == 0)


def is_transversal(lam: Weight, desc: RootSystemDesc, support=None, window=2) -> bool:
    """True iff lam does not vanish on the central line, i.e. lam(c) != 0."""
    check_integral(lam, desc, support if support is not None else desc.J, window)
    return lam.z != 0


def parabolic_roots(lam: Weight, desc: RootSystemDesc, support, window) -> dict:
    """Sign partition of the window roots by grade.

    The negative part trivially satisfies the no-zero-sum condition because
    all its grades are strictly negative; this is asserted on the way out.
    """
    report = grading(lam, desc, support, window)
    sigma0, plus, minus = [], [], []
    for root, g in report.grades.items():
        (sigma0 if g == 0 else plus if g > 0 else minus).append(root)
    sigma0.sort(key=Weight.key)
    plus.sort(key=Weight.key)
    minus.sort(key=Weight.key)
    assert all(report.grades[r] < 0 for r in minus)
    return {"zero": sigma0, "plus": plus, "minus": minus,
            "degenerate": report.degenerate}


def character_check(lam: Weight, desc: RootSystemDesc, support, window,
                    sigma0=None) -> tuple[bool, Weight | None]:
    """lam must kill alpha^sharp for every alpha in the grade-zero set.

    With sigma0 = None the set is computed from lam itself (then the check
    holds by construction); passing an explicit candidate set tests whether
    lam is a Lie algebra character of the corresponding parabolic, and the
    witness names the first root with nonzero grade.
    """
    if sigma0 is None:
        sigma0 = parabolic_roots(lam, desc, support, window)["zero"]
    for root in sigma0:
        if grade_of(lam, root, desc) != 0:
            return False, root
    return True, None


def character_check_realized(lam: Weight, real, sigma0) -> tuple[bool, Weight | None]:
    """Bracket-level version: lam([x_alpha, x_-alpha]) = 0 for alpha in sigma0."""
    from .extension import coroot_from_bracket, evaluate_on_cartan, ext_bracket, root_spaces
    deg = max((abs(int(r.t)) for r in sigma0), default=0) + 1
    support = sorted({k for r in sigma0 for k in r.f}) or list(real.desc.J)
    spaces = root_spaces(real, support, deg)
    for alpha in sigma0:
        if not alpha.f:
            continue
        xs, ys = spaces.get(alpha), spaces.get(-alpha)
        if not xs or not ys:
            continue
        h = ext_bracket(xs[0], ys[0])
        if evaluate_on_cartan(lam, h) != 0:
            return False, alpha
    return True, None
