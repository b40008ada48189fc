"""Finitely generated groups, canonical coordinates, length functions, metric balls.

Elements are plain tuples in a canonical form fixed by the group kind:

* free abelian Z^m        -> (x1, ..., xm)
* Z^m x Z/n               -> (x1, ..., xm, r) with 0 <= r < n
* discrete Heisenberg H3  -> (x, y, z) with law (x,y,z)(x',y',z') = (x+x', y+y', z+z'+x*y')
* finite cyclic Z/n       -> (k,) with 0 <= k < n

All group arithmetic is exact integer arithmetic; word lengths are exact
breadth-first distances in the Cayley graph.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, Mapping, Optional, Sequence

DEFAULT_BALL_CAP = 5_000_000

FREE_ABELIAN = "free_abelian"
FREE_ABELIAN_TIMES_CYCLIC = "free_abelian_times_cyclic"
HEISENBERG3 = "heisenberg3"
FINITE_CYCLIC = "finite_cyclic"

Element = tuple


class BallCapError(RuntimeError):
    """A ball enumeration would exceed the configured element cap."""


class GroupMismatchError(ValueError):
    """An element is not in canonical form for the group it was used with."""


# Standard Heisenberg generators and the central commutator a^-1 b^-1 a b.
H3_A = (1, 0, 0)
H3_B = (0, 1, 0)
H3_C = (0, 0, 1)


@dataclass(frozen=True)
class GroupSpec:
    """A concrete finitely generated group with a fixed symmetric generating set."""

    kind: str
    rank: int = 0
    torsion: int = 0
    generators: tuple[Element, ...] = ()

    # -- constructors ------------------------------------------------------

    @classmethod
    def free_abelian(cls, rank: int, generators: Optional[Iterable[Element]] = None) -> "GroupSpec":
        if rank < 1:
            raise ValueError("free abelian rank must be >= 1")
        if generators is None:
            generators = _standard_lattice_generators(rank)
        return cls(FREE_ABELIAN, rank=rank, generators=_closed_generators(generators))

    @classmethod
    def free_abelian_times_cyclic(
        cls, rank: int, torsion: int, generators: Optional[Iterable[Element]] = None
    ) -> "GroupSpec":
        if rank < 1 or torsion < 2:
            raise ValueError("need rank >= 1 and torsion order >= 2")
        if generators is None:
            gens = [g + (0,) for g in _standard_lattice_generators(rank)]
            gens += [(0,) * rank + (1,), (0,) * rank + (torsion - 1,)]
            generators = gens
        return cls(
            FREE_ABELIAN_TIMES_CYCLIC,
            rank=rank,
            torsion=torsion,
            generators=_closed_generators(generators),
        )

    @classmethod
    def heisenberg3(cls, generators: Optional[Iterable[Element]] = None) -> "GroupSpec":
        if generators is None:
            generators = [H3_A, (-1, 0, 0), H3_B, (0, -1, 0)]
        return cls(HEISENBERG3, rank=2, generators=_closed_generators(generators))

    @classmethod
    def finite_cyclic(cls, order: int, generators: Optional[Iterable[Element]] = None) -> "GroupSpec":
        if order < 2:
            raise ValueError("cyclic order must be >= 2")
        if generators is None:
            generators = [(1,), (order - 1,)]
        return cls(FINITE_CYCLIC, torsion=order, generators=_closed_generators(generators))

    def __post_init__(self):
        for g in self.generators:
            self.validate(g)
            if g == self.identity():
                raise ValueError("identity must not be a generator")
        gen_set = set(self.generators)
        for g in self.generators:
            if self.inverse(g) not in gen_set:
                raise ValueError(f"generating set is not symmetric: missing inverse of {g}")

    # -- basic structure ---------------------------------------------------

    @property
    def abelianization_rank(self) -> int:
        if self.kind in (FREE_ABELIAN, FREE_ABELIAN_TIMES_CYCLIC):
            return self.rank
        if self.kind == HEISENBERG3:
            return 2
        return 0

    @property
    def is_abelian(self) -> bool:
        return self.kind != HEISENBERG3

    @property
    def is_finite(self) -> bool:
        return self.kind == FINITE_CYCLIC

    def identity(self) -> Element:
        if self.kind == FREE_ABELIAN:
            return (0,) * self.rank
        if self.kind == FREE_ABELIAN_TIMES_CYCLIC:
            return (0,) * self.rank + (0,)
        if self.kind == HEISENBERG3:
            return (0, 0, 0)
        return (0,)

    def validate(self, g: Element) -> None:
        if not isinstance(g, tuple) or not all(isinstance(c, int) for c in g):
            raise GroupMismatchError(f"element {g!r} is not an integer tuple")
        if self.kind == FREE_ABELIAN and len(g) != self.rank:
            raise GroupMismatchError(f"expected {self.rank} coordinates, got {g!r}")
        elif self.kind == FREE_ABELIAN_TIMES_CYCLIC:
            if len(g) != self.rank + 1 or not 0 <= g[-1] < self.torsion:
                raise GroupMismatchError(f"bad Z^m x Z/n element {g!r}")
        elif self.kind == HEISENBERG3 and len(g) != 3:
            raise GroupMismatchError(f"bad Heisenberg element {g!r}")
        elif self.kind == FINITE_CYCLIC:
            if len(g) != 1 or not 0 <= g[0] < self.torsion:
                raise GroupMismatchError(f"bad Z/{self.torsion} element {g!r}")

    # -- arithmetic --------------------------------------------------------

    def multiply(self, a: Element, b: Element) -> Element:
        self.validate(a)
        self.validate(b)
        if self.kind == FREE_ABELIAN:
            return tuple(x + y for x, y in zip(a, b))
        if self.kind == FREE_ABELIAN_TIMES_CYCLIC:
            return tuple(x + y for x, y in zip(a[:-1], b[:-1])) + ((a[-1] + b[-1]) % self.torsion,)
        if self.kind == HEISENBERG3:
            return (a[0] + b[0], a[1] + b[1], a[2] + b[2] + a[0] * b[1])
        return ((a[0] + b[0]) % self.torsion,)

    def inverse(self, a: Element) -> Element:
        self.validate(a)
        if self.kind == FREE_ABELIAN:
            return tuple(-x for x in a)
        if self.kind == FREE_ABELIAN_TIMES_CYCLIC:
            return tuple(-x for x in a[:-1]) + ((-a[-1]) % self.torsion,)
        if self.kind == HEISENBERG3:
            return (-a[0], -a[1], a[0] * a[1] - a[2])
        return ((-a[0]) % self.torsion,)

    def power(self, g: Element, n: int) -> Element:
        if n < 0:
            return self.power(self.inverse(g), -n)
        result = self.identity()
        base = g
        while n:
            if n & 1:
                result = self.multiply(result, base)
            base = self.multiply(base, base)
            n >>= 1
        return result

    def abelianization(self, g: Element) -> tuple[int, ...]:
        """Projection to the torsion-free part of the abelianization, Z^m."""
        self.validate(g)
        if self.kind == FREE_ABELIAN:
            return g
        if self.kind == FREE_ABELIAN_TIMES_CYCLIC:
            return g[:-1]
        if self.kind == HEISENBERG3:
            return (g[0], g[1])
        return ()

    def _fast_multiply(self):
        # Dispatch-free closure for hot BFS loops.
        if self.kind == FREE_ABELIAN:
            m = self.rank
            if m == 1:
                return lambda a, b: (a[0] + b[0],)
            if m == 2:
                return lambda a, b: (a[0] + b[0], a[1] + b[1])
            if m == 3:
                return lambda a, b: (a[0] + b[0], a[1] + b[1], a[2] + b[2])
            return lambda a, b: tuple(x + y for x, y in zip(a, b))
        if self.kind == HEISENBERG3:
            return lambda a, b: (a[0] + b[0], a[1] + b[1], a[2] + b[2] + a[0] * b[1])
        if self.kind == FINITE_CYCLIC:
            n = self.torsion
            return lambda a, b: ((a[0] + b[0]) % n,)
        n = self.torsion
        return lambda a, b: tuple(x + y for x, y in zip(a[:-1], b[:-1])) + ((a[-1] + b[-1]) % n,)


def _standard_lattice_generators(rank: int) -> list[Element]:
    gens = []
    for i in range(rank):
        e = [0] * rank
        e[i] = 1
        gens.append(tuple(e))
        e[i] = -1
        gens.append(tuple(e))
    return gens


def _closed_generators(generators: Iterable[Element]) -> tuple[Element, ...]:
    seen = []
    for g in generators:
        t = tuple(g)
        if t not in seen:
            seen.append(t)
    return tuple(seen)


def hexagonal_generators() -> tuple[Element, ...]:
    """Z^2 generating set {±e1, ±e2, ±(e1+e2)}."""
    return ((1, 0), (-1, 0), (0, 1), (0, -1), (1, 1), (-1, -1))


# ---------------------------------------------------------------------------
# Norm specifications for length functions that restrict a norm on R^m.


@dataclass(frozen=True)
class NormSpec:
    """A norm on R^m: l1, l2, linf, or a polytope norm max_F sigma_F(x)."""

    kind: str  # "l1" | "l2" | "linf" | "polytope"
    functionals: tuple[tuple[Fraction, ...], ...] = ()

    @classmethod
    def l1(cls) -> "NormSpec":
        return cls("l1")

    @classmethod
    def l2(cls) -> "NormSpec":
        return cls("l2")

    @classmethod
    def linf(cls) -> "NormSpec":
        return cls("linf")

    @classmethod
    def polytope(cls, functionals: Iterable[Sequence]) -> "NormSpec":
        rows = tuple(tuple(Fraction(c) for c in row) for row in functionals)
        if not rows:
            raise ValueError("polytope norm needs at least one functional")
        return cls("polytope", functionals=rows)

    def evaluate(self, x: Sequence[int]):
        if self.kind == "l1":
            return sum(abs(c) for c in x)
        if self.kind == "l2":
            return math.sqrt(sum(c * c for c in x))
        if self.kind == "linf":
            return max(abs(c) for c in x) if x else 0
        return max(sum(f * c for f, c in zip(row, x)) for row in self.functionals)

    def box_halfwidth(self, dim: int) -> list[Fraction]:
        """Per-coordinate halfwidth of the unit ball's bounding box."""
        if self.kind in ("l1", "l2", "linf"):
            return [Fraction(1)] * dim
        verts = _polytope_vertices(self.functionals, dim)
        return [max(abs(v[i]) for v in verts) for i in range(dim)]


def _solve_linear(rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]):
    """Exact rational solve of a square system; None if singular."""
    m = len(rows)
    aug = [list(r) + [rhs[i]] for i, r in enumerate(rows)]
    for col in range(m):
        piv = next((r for r in range(col, m) if aug[r][col] != 0), None)
        if piv is None:
            return None
        aug[col], aug[piv] = aug[piv], aug[col]
        pv = aug[col][col]
        aug[col] = [v / pv for v in aug[col]]
        for r in range(m):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return tuple(aug[r][m] for r in range(m))


def _polytope_vertices(functionals: Sequence[Sequence[Fraction]], dim: int):
    """Vertices of {x : sigma(x) <= 1 for all sigma}; errors if unbounded."""
    from itertools import combinations

    rows = [tuple(Fraction(c) for c in f) for f in functionals]
    if _rational_rank([list(r) for r in rows]) < dim:
        raise ValueError("polytope norm functionals do not span; unit ball is unbounded")
    verts = []
    ones = [Fraction(1)] * dim
    for subset in combinations(rows, dim):
        x = _solve_linear(subset, ones)
        if x is None:
            continue
        if all(sum(f * c for f, c in zip(row, x)) <= 1 for row in rows):
            if x not in verts:
                verts.append(x)
    if not verts:
        raise ValueError("polytope norm unit ball has no vertices")
    return verts


def _rational_rank(rows: list[list[Fraction]]) -> int:
    mat = [list(map(Fraction, r)) for r in rows]
    rank = 0
    ncols = len(mat[0]) if mat else 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(mat)) if mat[r][col] != 0), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        pv = mat[rank][col]
        mat[rank] = [v / pv for v in mat[rank]]
        for r in range(len(mat)):
            if r != rank and mat[r][col] != 0:
                f = mat[r][col]
                mat[r] = [a - f * b for a, b in zip(mat[r], mat[rank])]
        rank += 1
        if rank == min(len(mat), ncols):
            break
    return rank


# ---------------------------------------------------------------------------
# Length functions and metric balls.


@dataclass(frozen=True, eq=False)
class BallTable:
    """All elements with length <= radius, in (length, lexicographic) order."""

    group: GroupSpec
    radius: float
    elements: tuple[Element, ...]
    values: Mapping[Element, object]
    index: Mapping[Element, int]
    complete_group: bool
    spec: "LengthFunction"

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, g: Element) -> bool:
        return g in self.index


@dataclass(frozen=True)
class AxiomReport:
    identity_violation: float
    symmetry_violation: float
    subadditivity_violation: float
    pairs_checked: int
    pairs_skipped: int

    @property
    def max_violation(self) -> float:
        return max(self.identity_violation, self.symmetry_violation, self.subadditivity_violation)


class LengthFunction:
    """A (pseudo-)length on a group: word length, norm restriction, or table.

    Word lengths run an incremental breadth-first search from the identity and
    memoize every distance computed so far; balls are materialized views of
    that cache.  Values are exact integers for word lengths.
    """

    WORD = "word"
    NORM = "norm"
    TABLE = "table"

    def __init__(self, group, kind, *, generators=None, norm=None, table=None,
                 pseudo=False, cap=DEFAULT_BALL_CAP):
        self.group = group
        self.kind = kind
        self.pseudo = bool(pseudo)
        self.cap = int(cap)
        self._ball_cache: dict[float, BallTable] = {}
        if kind == self.WORD:
            self.generators = tuple(generators) if generators is not None else group.generators
            if not self.generators:
                raise ValueError("word length needs a generating set")
            gen_set = set(self.generators)
            for s in self.generators:
                if group.inverse(s) not in gen_set:
                    raise ValueError("word-length generating set must be symmetric")
            e = group.identity()
            self._dist: dict[Element, int] = {e: 0}
            self._queue: deque[Element] = deque([e])
            self._exhausted = False
            self._mult = group._fast_multiply()
        elif kind == self.NORM:
            if group.kind != FREE_ABELIAN:
                raise ValueError("norm restrictions are supported on free abelian groups only")
            if norm is None:
                raise ValueError("norm restriction needs a NormSpec")
            self.norm = norm
        elif kind == self.TABLE:
            if table is None:
                raise ValueError("explicit length needs a table")
            self.table = dict(table)
            e = group.identity()
            if e not in self.table:
                self.table[e] = 0
        else:
            raise ValueError(f"unknown length kind {kind!r}")

    # -- constructors ------------------------------------------------------

    @classmethod
    def word(cls, group: GroupSpec, generators=None, cap=DEFAULT_BALL_CAP) -> "LengthFunction":
        return cls(group, cls.WORD, generators=generators, cap=cap)

    @classmethod
    def norm_restriction(cls, group: GroupSpec, norm: NormSpec, cap=DEFAULT_BALL_CAP) -> "LengthFunction":
        return cls(group, cls.NORM, norm=norm, cap=cap)

    @classmethod
    def explicit_table(cls, group: GroupSpec, table: Mapping[Element, object],
                       pseudo=False) -> "LengthFunction":
        return cls(group, cls.TABLE, table=table, pseudo=pseudo)

    @property
    def proper(self) -> bool:
        # Sub-level sets of everything offered here are finite by construction.
        return not self.pseudo

    # -- evaluation --------------------------------------------------------

    def length(self, g: Element):
        self.group.validate(g)
        if self.kind == self.WORD:
            dist = self._dist
            if g in dist:
                return dist[g]
            while self._queue and g not in dist:
                self._expand_one()
            if g not in dist:
                raise GroupMismatchError(f"element {g!r} is not generated by the generating set")
            return dist[g]
        if self.kind == self.NORM:
            return self.norm.evaluate(g)
        try:
            return self.table[g]
        except KeyError:
            raise ValueError(f"element {g!r} is outside the tabulated domain") from None

    def _expand_one(self):
        u = self._queue.popleft()
        du = self._dist[u]
        dist = self._dist
        mult = self._mult
        for s in self.generators:
            v = mult(u, s)
            if v not in dist:
                if len(dist) >= self.cap:
                    raise BallCapError(
                        f"ball cap {self.cap} exceeded while expanding radius {du + 1}"
                    )
                dist[v] = du + 1
                self._queue.append(v)
        if not self._queue:
            self._exhausted = True

    def _ensure_radius(self, r: int):
        while self._queue and self._dist[self._queue[0]] < r:
            self._expand_one()
        if not self._queue:
            self._exhausted = True

    # -- balls ---------------------------------------------------------------

    def ball(self, radius: float) -> BallTable:
        if radius < 0:
            raise ValueError("radius must be non-negative")
        if radius in self._ball_cache:
            return self._ball_cache[radius]
        if self.kind == self.WORD:
            if math.isinf(radius):
                if not self.group.is_finite:
                    raise ValueError("infinite radius needs a finite group")
                while self._queue:
                    self._expand_one()
                items = list(self._dist.items())
            else:
                self._ensure_radius(int(math.floor(radius)))
                items = [(g, d) for g, d in self._dist.items() if d <= radius]
            complete = self._exhausted and (
                math.isinf(radius) or all(d <= radius for d in self._dist.values())
            )
        elif self.kind == self.NORM:
            items = self._norm_ball_items(radius)
            complete = False
        else:
            items = [(g, v) for g, v in self.table.items() if v <= radius]
            complete = self.group.is_finite and len(items) == self.group.torsion
        table = _build_ball(self.group, radius, items, complete, self)
        if len(table) > self.cap:
            raise BallCapError(f"ball at radius {radius} has {len(table)} > cap {self.cap} elements")
        self._ball_cache[radius] = table
        return table

    def _norm_ball_items(self, radius):
        m = self.group.rank
        halfwidth = self.norm.box_halfwidth(m)
        bounds = [int(math.floor(hw * Fraction(radius))) for hw in halfwidth]
        count = 1
        for b in bounds:
            count *= 2 * b + 1
        if count > 4 * self.cap:
            raise BallCapError(f"norm ball bounding box of {count} points exceeds cap {self.cap}")
        items = []
        for point in product(*[range(-b, b + 1) for b in bounds]):
            v = self.norm.evaluate(point)
            if v <= radius:
                items.append((point, v))
        return items

    # -- axioms --------------------------------------------------------------

    def check_axioms(self, radius: float) -> AxiomReport:
        """Verify l(e)=0, symmetry, and subadditivity over pairs in the r/2 ball."""
        half = self.ball(radius / 2)
        identity_violation = abs(float(self.length(self.group.identity())))
        symmetry = 0.0
        skipped = 0
        for g in half:
            try:
                symmetry = max(symmetry, abs(float(self.length(g)) - float(self.length(self.group.inverse(g)))))
            except (ValueError, BallCapError):
                skipped += 1
        subadd = 0.0
        checked = 0
        for g in half:
            lg = float(half.values[g])
            for h in half:
                try:
                    lgh = float(self.length(self.group.multiply(g, h)))
                except (ValueError, BallCapError):
                    skipped += 1
                    continue
                checked += 1
                subadd = max(subadd, lgh - lg - float(half.values[h]))
        return AxiomReport(identity_violation, symmetry, max(0.0, subadd), checked, skipped)


def _build_ball(group, radius, items, complete, spec) -> BallTable:
    e = group.identity()
    values = {g: v for g, v in items}
    rest = sorted((g for g in values if g != e), key=lambda g: (values[g], g))
    elements = (e, *rest)
    index = {g: i for i, g in enumerate(elements)}
    return BallTable(group, radius, elements, values, index, complete, spec)


def central_heisenberg_table(horizon: int) -> dict[Element, int]:
    """Explicit table on Z of the Heisenberg central word lengths 2*ceil(2*sqrt(|k|))."""
    table = {}
    for k in range(-horizon, horizon + 1):
        a = abs(k)
        root = math.isqrt(4 * a)
        if root * root < 4 * a:
            root += 1
        table[(k,)] = 2 * root
    return table
