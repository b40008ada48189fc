"""Horofunction data on metric balls.

The function phi_g(h) = l(h) - l(g^-1 h) extends continuously to the
horofunction compactification; this module evaluates it on balls, estimates
Busemann-point limits along almost geodesic rays, and enumerates the exact
rational facet support functionals of the generator polytope
conv(p(S)) in the torsion-free abelianization.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Optional, Sequence

from .groups import (
    BallTable,
    Element,
    GroupSpec,
    LengthFunction,
    _rational_rank,
    _solve_linear,
)


class DegeneratePolytopeError(ValueError):
    """The projected generators lie in a proper hyperplane."""

    def __init__(self, normal: tuple[Fraction, ...]):
        self.normal = normal
        super().__init__(
            "generators project into the hyperplane {x : "
            + " + ".join(f"({c})*x{i+1}" for i, c in enumerate(normal) if c != 0)
            + " = 0}"
        )


@dataclass(frozen=True)
class PhiFunction:
    """phi_g restricted to a ball: h -> l(h) - l(g^-1 h)."""

    g: Element
    ball: BallTable
    values: dict

    def __call__(self, h: Element):
        return self.values[h]

    def max_abs(self) -> float:
        return max(abs(float(v)) for v in self.values.values())


def phi(g: Element, ball: BallTable, spec: Optional[LengthFunction] = None) -> PhiFunction:
    spec = spec or ball.spec
    group = ball.group
    g_inv = group.inverse(g)
    values = {h: spec.length(h) - spec.length(group.multiply(g_inv, h)) for h in ball}
    return PhiFunction(g, ball, values)


def cocycle_defect(g: Element, h: Element, ball: BallTable,
                   spec: Optional[LengthFunction] = None) -> float:
    """max over the ball of |phi_{gh} - (g.phi_h + phi_g)|; 0 for any length."""
    spec = spec or ball.spec
    group = ball.group
    gh_inv = group.inverse(group.multiply(g, h))
    g_inv = group.inverse(g)
    h_inv = group.inverse(h)
    worst = 0.0
    for x in ball:
        lx = spec.length(x)
        gx = group.multiply(g_inv, x)
        phi_gh = lx - spec.length(group.multiply(gh_inv, x))
        phi_g = lx - spec.length(gx)
        phi_h_at = spec.length(gx) - spec.length(group.multiply(h_inv, gx))
        worst = max(worst, abs(float(phi_gh - phi_h_at - phi_g)))
    return worst


# ---------------------------------------------------------------------------
# Exact facet enumeration of conv(p(S)).


@dataclass(frozen=True)
class SupportFunctional:
    """Linear functional equal to 1 exactly on one facet of the generator polytope."""

    coefficients: tuple[Fraction, ...]
    facet: tuple[tuple, ...]

    def __call__(self, x: Sequence) -> Fraction:
        return sum((Fraction(c) * Fraction(v) for c, v in zip(self.coefficients, x)),
                   Fraction(0))

    def scaled(self, factor) -> "SupportFunctional":
        f = Fraction(factor)
        return SupportFunctional(tuple(c * f for c in self.coefficients), self.facet)

    def __str__(self) -> str:
        return " + ".join(f"({c})*x{i+1}" for i, c in enumerate(self.coefficients))


def facets(group: GroupSpec, generators: Optional[Iterable[Element]] = None
           ) -> tuple[SupportFunctional, ...]:
    """Exact facet support functionals of conv(p(S)) for the generating set S."""
    m = group.abelianization_rank
    if m == 0:
        return ()
    if m > 4:
        raise ValueError("facet enumeration is limited to abelianization rank <= 4")
    gens = tuple(generators) if generators is not None else group.generators
    points = []
    for s in gens:
        p = tuple(Fraction(c) for c in group.abelianization(s))
        if p not in points:
            points.append(p)
    return facet_functionals(points, m)


def facet_functionals(points: Sequence[tuple[Fraction, ...]], m: int
                      ) -> tuple[SupportFunctional, ...]:
    """Facets of conv(points) for a point set whose hull has 0 in its interior."""
    pts = [tuple(Fraction(c) for c in p) for p in points]
    pts = list(dict.fromkeys(pts))
    rank = _rational_rank([list(p) for p in pts])
    if rank < m:
        raise DegeneratePolytopeError(_span_normal(pts, m))
    if m == 1:
        return _facets_1d(pts)
    if m == 2:
        return _facets_2d(pts)
    return _facets_brute(pts, m)


def _span_normal(pts, m) -> tuple[Fraction, ...]:
    """A non-zero rational vector orthogonal to every point (the points span a
    proper subspace when this is called)."""
    mat = [list(p) for p in pts]
    pivots = []
    row = 0
    for col in range(m):
        piv = next((r for r in range(row, len(mat)) if mat[r][col] != 0), None)
        if piv is None:
            continue
        mat[row], mat[piv] = mat[piv], mat[row]
        pv = mat[row][col]
        mat[row] = [v / pv for v in mat[row]]
        for r in range(len(mat)):
            if r != row and mat[r][col] != 0:
                f = mat[r][col]
                mat[r] = [a - f * b for a, b in zip(mat[r], mat[row])]
        pivots.append(col)
        row += 1
    free = [c for c in range(m) if c not in pivots]
    if not free:
        return tuple([Fraction(1)] + [Fraction(0)] * (m - 1))
    j = free[0]
    nu = [Fraction(0)] * m
    nu[j] = Fraction(1)
    for r, col in enumerate(pivots):
        nu[col] = -mat[r][j]
    return tuple(nu)


def _facets_1d(pts) -> tuple[SupportFunctional, ...]:
    vals = [p[0] for p in pts]
    hi, lo = max(vals), min(vals)
    if not (hi > 0 > lo):
        raise DegeneratePolytopeError((Fraction(1),))
    out = [
        SupportFunctional((Fraction(1) / hi,), ((hi,),)),
        SupportFunctional((Fraction(1) / lo,), ((lo,),)),
    ]
    return tuple(sorted(out, key=lambda f: f.coefficients))


def _hull_2d(pts):
    pts = sorted(set(pts))

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def _facets_2d(pts) -> tuple[SupportFunctional, ...]:
    hull = _hull_2d(pts)
    out = {}
    n = len(hull)
    ones = [Fraction(1), Fraction(1)]
    for i in range(n):
        a, b = hull[i], hull[(i + 1) % n]
        sigma = _solve_linear([list(a), list(b)], ones)
        if sigma is None:
            raise DegeneratePolytopeError(_span_normal(pts, 2))
        contact = tuple(sorted(p for p in pts if _dot(sigma, p) == 1))
        out[sigma] = contact
    return tuple(
        SupportFunctional(s, c) for s, c in sorted(out.items(), key=lambda kv: kv[0])
    )


def _facets_brute(pts, m) -> tuple[SupportFunctional, ...]:
    out = {}
    ones = [Fraction(1)] * m
    for subset in combinations(pts, m):
        sigma = _solve_linear([list(p) for p in subset], ones)
        if sigma is None:
            continue
        if all(_dot(sigma, p) <= 1 for p in pts):
            contact = tuple(sorted(p for p in pts if _dot(sigma, p) == 1))
            out[sigma] = contact
    return tuple(
        SupportFunctional(s, c) for s, c in sorted(out.items(), key=lambda kv: kv[0])
    )


def _dot(sigma, p) -> Fraction:
    return sum((a * b for a, b in zip(sigma, p)), Fraction(0))


# ---------------------------------------------------------------------------
# Rays and Busemann estimates.


@dataclass(frozen=True)
class RaySpec:
    """A discrete ray: schedule of (time, group element) pairs starting at (0, e)."""

    group: GroupSpec
    kind: str  # "lattice_direction" | "word_repetition"
    schedule: tuple[tuple[float, Element], ...]
    direction: Optional[tuple[Fraction, ...]] = None
    word: Optional[tuple[Element, ...]] = None

    @classmethod
    def lattice_direction(cls, group: GroupSpec, direction: Sequence, steps: int) -> "RaySpec":
        """Exact rational direction: denominators cleared so every point is a lattice point."""
        if group.kind != "free_abelian":
            raise ValueError("lattice rays need a free abelian group")
        v = tuple(Fraction(c) for c in direction)
        if all(c == 0 for c in v):
            raise ValueError("direction must be non-zero")
        q = 1
        for c in v:
            q = q * c.denominator // math.gcd(q, c.denominator)
        u = tuple(int(c * q) for c in v)
        schedule = [(0.0, group.identity())]
        for i in range(1, steps + 1):
            schedule.append((float(i * q), tuple(i * c for c in u)))
        return cls(group, "lattice_direction", tuple(schedule), direction=v)

    @classmethod
    def lattice_direction_float(cls, group: GroupSpec, direction: Sequence[float],
                                steps: int, search_cap: int = 200_000) -> "RaySpec":
        """Irrational direction: bounded search for lattice points x_i with
        |x_i - t_i v| < 1/i in the euclidean norm; fails loudly past the cap."""
        if group.kind != "free_abelian":
            raise ValueError("lattice rays need a free abelian group")
        v = tuple(float(c) for c in direction)
        schedule = [(0.0, group.identity())]
        t = 0.0
        tried = 0
        for i in range(1, steps + 1):
            found = None
            while found is None:
                t += 0.25
                tried += 1
                if tried > search_cap:
                    raise ValueError(
                        f"no lattice point within 1/{i} of the ray after {search_cap} trial times"
                    )
                x = tuple(round(t * c) for c in v)
                err = math.sqrt(sum((xi - t * ci) ** 2 for xi, ci in zip(x, v)))
                if err < 1.0 / i:
                    found = (t, x)
            schedule.append(found)
        return cls(group, "lattice_direction", tuple(schedule))

    @classmethod
    def word_repetition(cls, group: GroupSpec, word: Sequence[Element], repeats: int) -> "RaySpec":
        letters = [tuple(w) for w in word]
        if not letters:
            raise ValueError("word must be non-empty")
        schedule = [(0.0, group.identity())]
        current = group.identity()
        for k in range(repeats * len(letters)):
            current = group.multiply(current, letters[k % len(letters)])
            schedule.append((float(k + 1), current))
        return cls(group, "word_repetition", tuple(schedule), word=tuple(letters))


@dataclass(frozen=True)
class BusemannEstimate:
    g: Element
    value: float
    tail_variation: float
    times: tuple[float, ...]
    evaluations: tuple[float, ...]


def busemann_along_ray(ray: RaySpec, g: Element, spec: LengthFunction) -> BusemannEstimate:
    """phi_g along the ray; the limit value is read off at the last schedule point.

    tail_variation is the oscillation of phi_g over the last quarter of the
    schedule; callers decide what variation they accept.
    """
    group = ray.group
    g_inv = group.inverse(g)
    times = []
    vals = []
    for t, x in ray.schedule[1:]:
        times.append(t)
        vals.append(float(spec.length(x) - spec.length(group.multiply(g_inv, x))))
    if not vals:
        raise ValueError("ray schedule is empty")
    window = max(2, len(vals) // 4)
    tail = vals[-window:]
    return BusemannEstimate(g, vals[-1], max(tail) - min(tail), tuple(times), tuple(vals))


@dataclass(frozen=True)
class GeodesicReport:
    max_defect: float
    pairs_checked: int


def check_ray_geodesic(ray: RaySpec, spec: LengthFunction,
                       horizon: Optional[int] = None) -> GeodesicReport:
    """Almost-geodesic defect max |d(y(t),y(s)) + d(y(s),y(0)) - t| over s <= t."""
    group = ray.group
    sched = ray.schedule if horizon is None else ray.schedule[: horizon + 1]
    worst = 0.0
    count = 0
    for i in range(1, len(sched)):
        s, xs = sched[i]
        ls = float(spec.length(xs))
        xs_inv = group.inverse(xs)
        for j in range(i, len(sched)):
            t, xt = sched[j]
            d = float(spec.length(group.multiply(xs_inv, xt)))
            worst = max(worst, abs(d + ls - t))
            count += 1
    return GeodesicReport(worst, count)
