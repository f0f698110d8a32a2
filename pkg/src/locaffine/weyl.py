"""Weyl-group orbits, dominance conjugation and saturated weight sets.

The reflection group generated by a listed family of non-isotropic roots is
infinite in the affine case, so orbit generation and weight-set saturation
carry explicit budgets and flag truncation instead of silently stopping.
Convex-hull membership is decided by exact rational linear programming and
is the independent oracle for the saturation closure.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .gcm import AFFINE_TYPE, FINITE_TYPE, cartan_matrix, classify_type
from .linalg import lp_feasible, solve
from .roots import FormSpec, Weight, coroot, evaluate, inner, pair, reflect

Q = Fraction


class OrbitBudget:
    """Caps for orbit generation: BFS depth and total element count."""

    __slots__ = ("max_word_length", "max_elements")

    def __init__(self, max_word_length: int = 20, max_elements: int = 10000):
        if max_word_length <= 0 or max_elements <= 0:
            raise ValueError("budget bounds must be positive")
        object.__setattr__(self, "max_word_length", max_word_length)
        object.__setattr__(self, "max_elements", max_elements)

    def __setattr__(self, *a):
        raise AttributeError("OrbitBudget is immutable")


class WeightSet:
    """A saturation result: the weights found plus a truncation flag."""

    __slots__ = ("elements", "truncated")

    def __init__(self, elements, truncated: bool):
        object.__setattr__(self, "elements", frozenset(elements))
        object.__setattr__(self, "truncated", bool(truncated))

    def __setattr__(self, *a):
        raise AttributeError("WeightSet is immutable")

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(sorted(self.elements, key=Weight.key))

    def __contains__(self, w):
        return w in self.elements


def orbit(lam: Weight, generators: Sequence[Weight], budget: OrbitBudget,
          form: FormSpec) -> WeightSet:
    """BFS closure of {lam} under the listed reflections, budgeted."""
    for g in generators:
        if inner(g, g, form) == 0:
            raise ValueError("orbit generators must be non-isotropic")
    seen = {lam}
    frontier = [lam]
    truncated = False
    for _ in range(budget.max_word_length):
        if not frontier:
            break
        nxt = []
        for w in frontier:
            for g in generators:
                img = reflect(w, g, form)
                if img not in seen:
                    if len(seen) >= budget.max_elements:
                        truncated = True
                        break
                    seen.add(img)
                    nxt.append(img)
            if truncated:
                break
        if truncated:
            break
        frontier = nxt
    else:
        truncated = truncated or bool(frontier)
    return WeightSet(seen, truncated)


class DominanceError(ValueError):
    """No dominant conjugate is guaranteed for the given weight."""


def _affine_level(lam: Weight, simple_roots: Sequence[Weight], form: FormSpec):
    """Value of lam on the canonical central element, when affine."""
    a = cartan_matrix(list(simple_roots), form)
    cls = classify_type(a)
    if cls["type"] == FINITE_TYPE:
        return None, cls
    if cls["type"] != AFFINE_TYPE:
        raise DominanceError("simple system is neither finite nor affine type")
    dual_labels = cls["witness"]  # right null vector: A n = 0
    k = sum((Fraction(n) * evaluate(lam, coroot(r, form))
             for n, r in zip(dual_labels, simple_roots)), Q(0))
    return k, cls


def to_dominant(lam: Weight, simple_roots: Sequence[Weight], form: FormSpec,
                max_steps: int = 10000) -> tuple[list[int], Weight]:
    """Conjugate lam into the dominant chamber of the listed simple system.

    Returns (word, dominant) where word lists the reflection indices applied
    first-to-last; replaying the reversed word on the dominant weight
    recovers lam.  Affine systems require positive level: the orbit of a
    level-zero weight has unbounded coroot values and contains no dominant
    point, so the search would not terminate.
    """
    level, _cls = _affine_level(lam, simple_roots, form)
    if level is not None:
        if level == 0:
            raise DominanceError("level zero: no dominant conjugate guaranteed")
        if level < 0:
            raise DominanceError("negative level: dominant conjugate exists only "
                                 "for the negated weight")
    word: list[int] = []
    cur = lam
    coroots = [coroot(r, form) for r in simple_roots]
    for _ in range(max_steps):
        neg = None
        for i, cr in enumerate(coroots):
            if evaluate(cur, cr) < 0:
                neg = i
                break
        if neg is None:
            return word, cur
        cur = reflect(cur, simple_roots[neg], form)
        word.append(neg)
    raise DominanceError(f"maxSteps={max_steps} exceeded; partial word {word}")


def replay(word: Sequence[int], start: Weight, simple_roots: Sequence[Weight],
           form: FormSpec) -> Weight:
    """Apply the recorded reflections in reverse to undo to_dominant."""
    cur = start
    for i in reversed(word):
        cur = reflect(cur, simple_roots[i], form)
    return cur


class IntegralityError(ValueError):
    pass


def _decompose(diff: Weight, simple_roots: Sequence[Weight]) -> list[Fraction] | None:
    """Coefficients of diff in the simple-root basis (exact), or None."""
    labels = sorted({k for r in simple_roots for k in r.f} | set(diff.f))
    rows = [[r.f.get(k, Q(0)) for r in simple_roots] for k in labels]
    rows.append([r.t for r in simple_roots])
    rhs = [diff.f.get(k, Q(0)) for k in labels] + [diff.t]
    return solve(rows, rhs)


def weight_set(lam: Weight, simple_roots: Sequence[Weight], form: FormSpec,
               depth_bound: int) -> WeightSet:
    """Saturated weight set by root-string closure from lam.

    Whenever mu is present and k = mu(coroot(alpha)) != 0, the whole string
    mu - alpha, ..., mu - k*alpha (signed) is added.  Depth of mu is
    sum_i |c_i| for lam - mu = sum c_i alpha_i; candidates beyond
    depth_bound are dropped and flagged.  For dominant lam this is the
    plain downward saturation.
    """
    coroots = []
    for r in simple_roots:
        cr = coroot(r, form)
        v = evaluate(lam, cr)
        if v.denominator != 1:
            raise IntegralityError(f"lam(coroot({r!r})) = {v} is not an integer")
        coroots.append(cr)
    elements = {lam}
    depth = {lam: 0}
    frontier = [lam]
    truncated = False
    while frontier:
        nxt = []
        for mu in frontier:
            for alpha, cr in zip(simple_roots, coroots):
                k = evaluate(mu, cr)
                if k == 0:
                    continue
                step = 1 if k > 0 else -1
                for i in range(1, abs(int(k)) + 1):
                    cand = mu - alpha.scale_by(step * i)
                    if cand in elements:
                        continue
                    coeffs = _decompose(lam - cand, simple_roots)
                    d = sum(abs(c) for c in coeffs)
                    if d > depth_bound:
                        truncated = True
                        continue
                    elements.add(cand)
                    depth[cand] = d
                    nxt.append(cand)
        frontier = nxt
    return WeightSet(elements, truncated)


def hull_membership(mu: Weight, orbit_sample) -> tuple[bool, dict]:
    """Exact test mu in conv(orbit_sample) by rational LP feasibility.

    Membership comes with the convex coefficients; non-membership is
    conservative when the sample truncates an infinite orbit and is
    reported as such.
    """
    points = sorted(orbit_sample, key=Weight.key)
    if not points:
        raise ValueError("empty orbit sample")
    labels = sorted({k for p in points for k in p.f} | set(mu.f))
    def vec(w: Weight) -> list[Fraction]:
        return [w.z] + [w.f.get(k, Q(0)) for k in labels] + [w.t]
    cols = [vec(p) for p in points]
    target = vec(mu)
    rows = [[cols[j][i] for j in range(len(points))] for i in range(len(target))]
    rows.append([Q(1)] * len(points))
    rhs = target + [Q(1)]
    sol = lp_feasible(rows, rhs)
    if sol is None:
        return False, {"status": "not in sampled hull"}
    combo = {i: sol[i] for i in range(len(points)) if sol[i] != 0}
    return True, {"status": "member",
                  "coefficients": {str(i): str(c) for i, c in combo.items()}}
