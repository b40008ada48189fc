"""Truncated operators on H_A (x) l2(ball).

Everything here is a dense complex matrix over a finite metric ball.  The
basis is indexed by pairs (alpha, h) with alpha a coefficient-space index and
h a ball element, alpha-major: flat index = alpha * N + ball_index(h).

Compressions of a fixed finitely supported element have operator norms that
increase monotonically in the ball radius, so every norm reported from a
truncation is a certified lower bound of the untruncated norm.  Operators
built from an element supported in the radius-r ball agree with their
untruncated versions on all columns indexed by the radius-(R-r) ball; that
window is tracked explicitly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Hashable, Mapping, Optional, Sequence

import numpy as np

from .groups import BallTable, Element, GroupSpec, LengthFunction

DIM_CAP = 20_000
HERMITIAN_TOL = 1e-12


class OpNormConvergenceError(RuntimeError):
    def __init__(self, residual: float, iterations: int):
        self.residual = residual
        self.iterations = iterations
        super().__init__(
            f"power iteration did not converge after {iterations} iterations "
            f"(residual {residual:.3e})"
        )


@dataclass(frozen=True)
class TruncatedHilbert:
    """Coefficient space C^d tensored with l2 of a metric ball."""

    ball: BallTable
    coeff_dim: int = 1

    def __post_init__(self):
        if self.coeff_dim < 1:
            raise ValueError("coefficient dimension must be >= 1")
        if self.dim > DIM_CAP:
            raise ValueError(f"total dimension {self.dim} exceeds the dense cap {DIM_CAP}")

    @property
    def n_ball(self) -> int:
        return len(self.ball)

    @property
    def dim(self) -> int:
        return self.coeff_dim * len(self.ball)

    @property
    def spec(self) -> LengthFunction:
        return self.ball.spec

    @property
    def group(self) -> GroupSpec:
        return self.ball.group

    @property
    def exact(self) -> bool:
        return self.ball.complete_group


def truncate(spec: LengthFunction, radius: float, coeff_dim: int = 1) -> TruncatedHilbert:
    return TruncatedHilbert(spec.ball(radius), coeff_dim)


@dataclass(frozen=True)
class TruncatedOperator:
    matrix: np.ndarray
    hilbert: TruncatedHilbert
    provenance: str
    window_radius: Optional[float] = None
    blocks: int = 1

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def hermitian_residual(self) -> float:
        return float(np.max(np.abs(self.matrix - self.matrix.conj().T), initial=0.0))


# ---------------------------------------------------------------------------
# Actions.


class ActionSpec:
    """Group action on the coefficient algebra, implemented by unitaries.

    Each generator maps to a unitary W_s on C^d; along words the W's extend
    multiplicatively.  Different words for the same element may differ by a
    unimodular scalar, which cancels in the induced conjugation action
    a -> W a W*.
    """

    def __init__(self, group: GroupSpec, unitaries: Mapping[Element, np.ndarray],
                 atol: float = HERMITIAN_TOL):
        self.group = group
        self.unitaries = {}
        dim = None
        for g, w in unitaries.items():
            group.validate(g)
            w = np.asarray(w, dtype=complex)
            if dim is None:
                dim = w.shape[0]
            if w.shape != (dim, dim):
                raise ValueError("all action unitaries must share one square shape")
            residual = np.max(np.abs(w.conj().T @ w - np.eye(dim)))
            if residual > 100 * atol:
                raise ValueError(f"matrix for {g} is not unitary (residual {residual:.3e})")
            self.unitaries[g] = w
        if dim is None:
            raise ValueError("need at least one generator unitary")
        self.dim = dim
        self._cache: dict[Element, np.ndarray] = {group.identity(): np.eye(dim, dtype=complex)}
        self._trivial = all(
            np.max(np.abs(w - np.eye(dim))) < atol for w in self.unitaries.values()
        )

    @classmethod
    def trivial(cls, group: GroupSpec, dim: int) -> "ActionSpec":
        eye = np.eye(dim, dtype=complex)
        return cls(group, {s: eye for s in group.generators})

    @property
    def is_trivial(self) -> bool:
        return self._trivial

    def unitary(self, g: Element, spec: Optional[LengthFunction] = None) -> np.ndarray:
        """W(g) along a geodesic word for g (deterministic choice of word)."""
        cached = self._cache.get(g)
        if cached is not None:
            return cached
        group = self.group
        if spec is not None and spec.kind == LengthFunction.WORD:
            lg = spec.length(g)
            for s in sorted(self.unitaries):
                prev = group.multiply(group.inverse(s), g)
                if spec.length(prev) == lg - 1:
                    w = self.unitaries[s] @ self.unitary(prev, spec)
                    self._cache[g] = w
                    return w
            raise ValueError(f"no geodesic predecessor found for {g!r}")
        return self._coordinate_unitary(g)

    def _coordinate_unitary(self, g: Element) -> np.ndarray:
        group = self.group
        if not group.is_abelian and group.kind != "finite_cyclic":
            raise ValueError("non-abelian actions need a word-length function to extend along")
        w = np.eye(self.dim, dtype=complex)
        remaining = g
        e = group.identity()
        guard = 0
        while remaining != e:
            guard += 1
            if guard > 10_000:
                raise ValueError(f"could not express {g!r} through the action generators")
            step = None
            for s in sorted(self.unitaries):
                candidate = group.multiply(group.inverse(s), remaining)
                if _coordinate_weight(group, candidate) < _coordinate_weight(group, remaining):
                    step = s
                    remaining = candidate
                    break
            if step is None:
                raise ValueError(f"could not express {g!r} through the action generators")
            w = w @ self.unitaries[step]
        self._cache[g] = w
        return w

    def act(self, g: Element, a: np.ndarray, spec: Optional[LengthFunction] = None) -> np.ndarray:
        """alpha_g(a) = W(g) a W(g)*."""
        if self._trivial:
            return np.asarray(a, dtype=complex)
        w = self.unitary(g, spec)
        return w @ np.asarray(a, dtype=complex) @ w.conj().T

    def act_inv(self, h: Element, a: np.ndarray, spec: Optional[LengthFunction] = None) -> np.ndarray:
        """alpha_{h^-1}(a), computed as W(h)* a W(h); the word scalar cancels."""
        if self._trivial:
            return np.asarray(a, dtype=complex)
        w = self.unitary(h, spec)
        return w.conj().T @ np.asarray(a, dtype=complex) @ w

    def relator_consistency(self, spec: Optional[LengthFunction] = None):
        """Scalar defects W(left) ~ c W(right) along the group kind's relators."""
        group = self.group
        reports = []
        pairs = []
        gens = sorted(self.unitaries)
        if group.is_abelian:
            for i, s in enumerate(gens):
                for t in gens[i + 1:]:
                    pairs.append(((s, t), (t, s)))
        if group.kind == "finite_cyclic":
            n = group.torsion
            pairs.append(((gens[0],) * n, ()))
        for s in gens:
            pairs.append(((s, group.inverse(s)), ()))
        for left, right in pairs:
            wl = np.eye(self.dim, dtype=complex)
            for s in left:
                wl = wl @ self.unitaries[s]
            wr = np.eye(self.dim, dtype=complex)
            for s in right:
                wr = wr @ self.unitaries[s]
            scalar = np.trace(wr.conj().T @ wl) / self.dim
            if abs(scalar) > 0:
                scalar = scalar / abs(scalar)
            residual = float(np.max(np.abs(wl - scalar * wr)))
            reports.append((left, right, complex(scalar), residual))
        return reports


def _coordinate_weight(group: GroupSpec, g: Element) -> int:
    if group.kind == "finite_cyclic":
        return min(g[0], group.torsion - g[0])
    if group.kind == "free_abelian_times_cyclic":
        r = min(g[-1], group.torsion - g[-1])
        return sum(abs(c) for c in g[:-1]) + r
    return sum(abs(c) for c in g)


# ---------------------------------------------------------------------------
# Crossed elements.


@dataclass(frozen=True)
class CrossedElement:
    """Finitely supported sum of coefficient matrices times translations."""

    group: GroupSpec
    coeffs: tuple[tuple[Element, np.ndarray], ...]

    @classmethod
    def from_dict(cls, group: GroupSpec, data: Mapping[Element, object]) -> "CrossedElement":
        items = []
        for g, a in data.items():
            group.validate(g)
            mat = np.atleast_2d(np.asarray(a, dtype=complex))
            if np.max(np.abs(mat), initial=0.0) == 0.0:
                continue
            items.append((g, mat))
        items.sort(key=lambda kv: kv[0])
        dims = {mat.shape for _, mat in items}
        if len(dims) > 1:
            raise ValueError("all coefficients must share one shape")
        return cls(group, tuple(items))

    @property
    def support(self) -> tuple[Element, ...]:
        return tuple(g for g, _ in self.coeffs)

    @property
    def coeff_dim(self) -> int:
        return self.coeffs[0][1].shape[0] if self.coeffs else 1

    def coefficient(self, g: Element) -> np.ndarray:
        for h, a in self.coeffs:
            if h == g:
                return a
        return np.zeros((self.coeff_dim, self.coeff_dim), dtype=complex)

    def support_radius(self, spec: LengthFunction) -> float:
        return max((float(spec.length(g)) for g, _ in self.coeffs), default=0.0)

    def scaled(self, factor: complex) -> "CrossedElement":
        return CrossedElement(self.group, tuple((g, factor * a) for g, a in self.coeffs))

    def map_coefficients(self, fn: Callable[[Element, np.ndarray], np.ndarray]) -> "CrossedElement":
        return CrossedElement.from_dict(self.group, {g: fn(g, a) for g, a in self.coeffs})

    def translate_right(self, g: Element) -> "CrossedElement":
        """x * lambda_g: support shifts, coefficients unchanged."""
        group = self.group
        return CrossedElement.from_dict(
            group, {group.multiply(h, g): a for h, a in self.coeffs}
        )

    def restrict(self, predicate: Callable[[Element], bool]) -> "CrossedElement":
        return CrossedElement.from_dict(
            self.group, {g: a for g, a in self.coeffs if predicate(g)}
        )


# ---------------------------------------------------------------------------
# Subgroups for conditional expectations.


@dataclass(frozen=True)
class SubgroupSpec:
    """Decidable subgroup with a coset key (two elements share a right coset
    Hg exactly when their keys agree)."""

    name: str
    group: GroupSpec
    contains: Callable[[Element], bool]
    coset_key: Callable[[Element], Hashable]

    def __post_init__(self):
        if not self.contains(self.group.identity()):
            raise ValueError(f"{self.name} rejects the identity; not a subgroup")

    @classmethod
    def whole_group(cls, group: GroupSpec) -> "SubgroupSpec":
        return cls("G", group, lambda g: True, lambda g: 0)

    @classmethod
    def kernel_of(cls, group: GroupSpec, functional: Sequence[int],
                  modulus: Optional[int] = None) -> "SubgroupSpec":
        """Kernel of an integer homomorphism through the abelianization,
        optionally reduced mod n (e.g. nZ inside Z)."""
        vec = tuple(int(c) for c in functional)

        def value(g: Element):
            v = sum(a * b for a, b in zip(vec, group.abelianization(g)))
            return v % modulus if modulus else v

        mod_txt = f" mod {modulus}" if modulus else ""
        return cls(f"ker({vec}{mod_txt})", group,
                   lambda g: value(g) == 0, value)

    @classmethod
    def multiples(cls, group: GroupSpec, n: int) -> "SubgroupSpec":
        """nZ inside Z."""
        if group.kind != "free_abelian" or group.rank != 1:
            raise ValueError("multiples(n) is defined on Z")
        return cls(f"{n}Z", group, lambda g: g[0] % n == 0, lambda g: g[0] % n)

    @classmethod
    def heisenberg_center(cls, group: GroupSpec) -> "SubgroupSpec":
        """The center <c> of H3, which is also its commutator subgroup."""
        if group.kind != "heisenberg3":
            raise ValueError("center subgroup is defined on the Heisenberg group")
        return cls("<c>", group,
                   lambda g: g[0] == 0 and g[1] == 0,
                   lambda g: (g[0], g[1]))


def conditional_expectation(x: CrossedElement, subgroup: SubgroupSpec) -> CrossedElement:
    """E_H(x): keep exactly the coefficients supported on the subgroup."""
    return x.restrict(subgroup.contains)


# ---------------------------------------------------------------------------
# Operator constructors.


def lambda_op(H: TruncatedHilbert, g: Element) -> TruncatedOperator:
    """Compression of the translation lambda_g to the ball (partial isometry)."""
    group = H.group
    if not H.exact and float(H.spec.length(g)) > 2 * H.ball.radius:
        raise ValueError(
            f"lambda({g}) is the zero operator at radius {H.ball.radius}: l(g) > 2R"
        )
    n, d = H.n_ball, H.coeff_dim
    mat = np.zeros((H.dim, H.dim), dtype=complex)
    index = H.ball.index
    for j, h in enumerate(H.ball.elements):
        target = index.get(group.multiply(g, h))
        if target is None:
            continue
        for alpha in range(d):
            mat[alpha * n + target, alpha * n + j] = 1.0
    window = math.inf if H.exact else H.ball.radius - float(H.spec.length(g))
    return TruncatedOperator(mat, H, f"lambda({g})", window_radius=window)


def pi_tilde(H: TruncatedHilbert, action: ActionSpec, a: np.ndarray) -> TruncatedOperator:
    """Covariant coefficient representation: block pi(h^-1 . a) at each h."""
    a = np.atleast_2d(np.asarray(a, dtype=complex))
    n, d = H.n_ball, H.coeff_dim
    if a.shape != (d, d):
        raise ValueError(f"coefficient must be {d}x{d}")
    mat = np.zeros((H.dim, H.dim), dtype=complex)
    for j, h in enumerate(H.ball.elements):
        block = action.act_inv(h, a, H.spec)
        for alpha in range(d):
            for beta in range(d):
                mat[alpha * n + j, beta * n + j] = block[alpha, beta]
    return TruncatedOperator(mat, H, "pi_tilde(a)", window_radius=H.ball.radius)


def m_ell(H: TruncatedHilbert) -> TruncatedOperator:
    """Diagonal multiplication by the length."""
    diag = np.array([float(H.ball.values[h]) for h in H.ball.elements], dtype=complex)
    mat = np.kron(np.eye(H.coeff_dim, dtype=complex), np.diag(diag))
    return TruncatedOperator(mat, H, "m_ell", window_radius=H.ball.radius)


def m_phi(H: TruncatedHilbert, functional: Sequence[int]) -> TruncatedOperator:
    """Diagonal multiplication by an integer homomorphism of the abelianization."""
    vec = tuple(int(c) for c in functional)
    group = H.group
    diag = np.array(
        [float(sum(a * b for a, b in zip(vec, group.abelianization(h))))
         for h in H.ball.elements],
        dtype=complex,
    )
    mat = np.kron(np.eye(H.coeff_dim, dtype=complex), np.diag(diag))
    return TruncatedOperator(mat, H, f"m_phi({vec})", window_radius=H.ball.radius)


def m_phi_g(H: TruncatedHilbert, g: Element) -> TruncatedOperator:
    """Diagonal multiplication by phi_g(h) = l(h) - l(g^-1 h)."""
    group, spec = H.group, H.spec
    g_inv = group.inverse(g)
    diag = np.array(
        [float(spec.length(h)) - float(spec.length(group.multiply(g_inv, h)))
         for h in H.ball.elements],
        dtype=complex,
    )
    mat = np.kron(np.eye(H.coeff_dim, dtype=complex), np.diag(diag))
    return TruncatedOperator(mat, H, f"m_phi_g({g})", window_radius=H.ball.radius)


def realize(x: CrossedElement, H: TruncatedHilbert, action: ActionSpec) -> TruncatedOperator:
    """Matrix of sum_g pi_tilde(a_g) lambda_g on the truncated space."""
    n, d = H.n_ball, H.coeff_dim
    if x.coeffs and x.coeff_dim != d:
        raise ValueError(f"element coefficients are {x.coeff_dim}x{x.coeff_dim}, space wants {d}")
    r = x.support_radius(H.spec)
    if not H.exact and r > H.ball.radius:
        raise ValueError(f"support radius {r} exceeds ball radius {H.ball.radius}")
    group = H.group
    index = H.ball.index
    mat = np.zeros((H.dim, H.dim), dtype=complex)
    for g, a in x.coeffs:
        for j, h in enumerate(H.ball.elements):
            gh = group.multiply(g, h)
            target = index.get(gh)
            if target is None:
                continue
            block = action.act_inv(gh, a, H.spec)
            for alpha in range(d):
                for beta in range(d):
                    mat[alpha * n + target, beta * n + j] += block[alpha, beta]
    window = math.inf if H.exact else H.ball.radius - r
    return TruncatedOperator(mat, H, "realize(x)", window_radius=window)


def realize_phi_twisted(x: CrossedElement, H: TruncatedHilbert, action: ActionSpec
                        ) -> TruncatedOperator:
    """Matrix of sum_g (1 (x) phi_g) pi_tilde(a_g) lambda_g."""
    n, d = H.n_ball, H.coeff_dim
    group, spec = H.group, H.spec
    index = H.ball.index
    mat = np.zeros((H.dim, H.dim), dtype=complex)
    for g, a in x.coeffs:
        g_inv = group.inverse(g)
        for j, h in enumerate(H.ball.elements):
            gh = group.multiply(g, h)
            target = index.get(gh)
            if target is None:
                continue
            weight = float(spec.length(gh)) - float(spec.length(group.multiply(g_inv, gh)))
            block = weight * action.act_inv(gh, a, H.spec)
            for alpha in range(d):
                for beta in range(d):
                    mat[alpha * n + target, beta * n + j] += block[alpha, beta]
    window = math.inf if H.exact else H.ball.radius - x.support_radius(H.spec)
    return TruncatedOperator(mat, H, "realize((1(x)phi_g) a_g lambda_g)", window_radius=window)


def coset_compress(T: np.ndarray, H: TruncatedHilbert, subgroup: SubgroupSpec) -> np.ndarray:
    """Matrix-level E_H: zero every entry joining different right cosets of H."""
    keys = [subgroup.coset_key(h) for h in H.ball.elements]
    n = H.n_ball
    mask = np.array([[keys[i] == keys[j] for j in range(n)] for i in range(n)], dtype=float)
    full = np.tile(mask, (H.coeff_dim, H.coeff_dim))
    return np.asarray(T) * full


# ---------------------------------------------------------------------------
# Dirac operators.


def even_dirac(H: TruncatedHilbert, d_a: np.ndarray) -> TruncatedOperator:
    """Off-diagonal block form on H (+) H: corner blocks D_A (x) 1 -/+ i (x) M_l."""
    d_a = np.atleast_2d(np.asarray(d_a, dtype=complex))
    if np.max(np.abs(d_a - d_a.conj().T), initial=0.0) > HERMITIAN_TOL:
        raise ValueError("even construction needs a hermitian coefficient operator")
    if d_a.shape != (H.coeff_dim, H.coeff_dim):
        raise ValueError("coefficient Dirac block has the wrong shape")
    a = np.kron(d_a, np.eye(H.n_ball, dtype=complex))
    b = m_ell(H).matrix
    dim = H.dim
    mat = np.zeros((2 * dim, 2 * dim), dtype=complex)
    mat[:dim, dim:] = a - 1j * b
    mat[dim:, :dim] = a + 1j * b
    return TruncatedOperator(mat, H, "even_dirac", window_radius=H.ball.radius, blocks=2)


def odd_dirac(H: TruncatedHilbert, d_a_block: np.ndarray) -> TruncatedOperator:
    """Graded form: diag blocks +/- 1 (x) M_l, off-diagonal D_A (x) 1 and its adjoint."""
    d_a_block = np.atleast_2d(np.asarray(d_a_block, dtype=complex))
    if d_a_block.shape != (H.coeff_dim, H.coeff_dim):
        raise ValueError("coefficient Dirac block has the wrong shape")
    k = np.kron(d_a_block, np.eye(H.n_ball, dtype=complex))
    b = m_ell(H).matrix
    dim = H.dim
    mat = np.zeros((2 * dim, 2 * dim), dtype=complex)
    mat[:dim, :dim] = b
    mat[dim:, dim:] = -b
    mat[:dim, dim:] = k
    mat[dim:, :dim] = k.conj().T
    return TruncatedOperator(mat, H, "odd_dirac", window_radius=H.ball.radius, blocks=2)


def doubled(T: np.ndarray) -> np.ndarray:
    """x (+) x on the doubled space."""
    dim = T.shape[0]
    out = np.zeros((2 * dim, 2 * dim), dtype=complex)
    out[:dim, :dim] = T
    out[dim:, dim:] = T
    return out


# ---------------------------------------------------------------------------
# Norms.


def op_norm(T, tol: float = 1e-10, max_iter: Optional[int] = None) -> float:
    """Largest singular value by block power iteration on T*T.

    Deterministic start block (all-ones plus leading coordinate vectors), one
    seeded random restart on stagnation, error with the residual if that also
    fails to converge.  The small block keeps clustered leading singular
    values from stalling the iteration.  Values computed from compressions of
    a fixed element are monotone non-decreasing in the ball radius.
    """
    a = T.matrix if isinstance(T, TruncatedOperator) else np.asarray(T, dtype=complex)
    n = a.shape[0]
    if n == 0:
        return 0.0
    if n == 1:
        return float(abs(a[0, 0]))
    magnitudes = np.abs(a)
    peak = float(np.max(magnitudes))
    if peak == 0.0:
        return 0.0
    nonzero = magnitudes != 0.0
    if np.all(nonzero.sum(axis=0) <= 1) and np.all(nonzero.sum(axis=1) <= 1):
        # weighted partial permutation: singular values are exactly the entries
        return peak
    ah = a.conj().T
    block = min(4, n)
    if max_iter is None:
        max_iter = max(50_000, 100 * n)

    def top_ritz(v: np.ndarray):
        w = ah @ (a @ v)
        h = v.conj().T @ w
        h = (h + h.conj().T) / 2
        vals, vecs = np.linalg.eigh(h)
        return w, float(vals[-1]), v @ vecs[:, -1]

    def iterate(v0: np.ndarray):
        # The top Ritz value of T*T increases essentially monotonically and
        # its increments decay geometrically, so the remaining error is
        # bounded by extrapolating their ratio.  When the leading block of
        # eigenvalues is nearly degenerate the increments stagnate near ratio
        # 1 while the value already sits within that tiny spread of the
        # limit; a window-stagnation test accepts those runs.
        v, _ = np.linalg.qr(v0)
        lam = 0.0
        prev_delta = None
        window = 128
        lam_checkpoint = -1.0
        for it in range(max_iter):
            w, lam_new, top_vec = top_ritz(v)
            if np.linalg.norm(w) == 0.0:
                return 0.0, 0.0, it
            delta = abs(lam_new - lam)
            floor = tol * max(abs(lam_new), 1e-300)
            converged = False
            if it > 0 and delta <= floor:
                if delta == 0.0:
                    converged = True
                elif prev_delta is not None and prev_delta > 0.0:
                    rho = delta / prev_delta
                    if rho < 0.99999:
                        converged = delta * rho / (1.0 - rho) <= 10 * floor
            if it % window == 0 and not converged:
                if lam_checkpoint >= 0.0 and abs(lam_new - lam_checkpoint) <= 0.1 * floor:
                    converged = True
                lam_checkpoint = lam_new
            if converged:
                resid = float(np.linalg.norm(ah @ (a @ top_vec) - lam_new * top_vec))
                return lam_new, resid, it
            v, _ = np.linalg.qr(w)
            prev_delta = delta
            lam = lam_new
        _, lam_new, top_vec = top_ritz(v)
        resid = float(np.linalg.norm(ah @ (a @ top_vec) - lam_new * top_vec))
        return None, resid, max_iter

    start = np.zeros((n, block), dtype=complex)
    start[:, 0] = 1.0 / math.sqrt(n)
    for j in range(1, block):
        start[j - 1, j] = 1.0
    lam, resid, _ = iterate(start)
    if lam is None:
        rng = np.random.default_rng(0xC0FFEE)
        lam, resid, _ = iterate(rng.normal(size=(n, block))
                                + 1j * rng.normal(size=(n, block)))
        if lam is None:
            raise OpNormConvergenceError(resid, max_iter)
    return math.sqrt(max(lam, 0.0))


def element_norm(x: CrossedElement, spec: LengthFunction, action: ActionSpec,
                 radius: float, tol: float = 1e-10) -> float:
    """Norm of the compression of a crossed element at the given radius."""
    H = truncate(spec, radius, x.coeff_dim if x.coeffs else 1)
    return op_norm(realize(x, H, action), tol=tol)


def cauchy_gap_norm(x: CrossedElement, spec: LengthFunction, action: ActionSpec,
                    radius: float, gap_radius: Optional[float] = None,
                    tol: float = 1e-10) -> tuple[float, float]:
    """(norm at the larger radius, increment over the smaller one).

    The increment is the two-radius Cauchy diagnostic for how far the
    compression still is from exhausting the norm.
    """
    if gap_radius is None:
        gap_radius = 2 * radius
    small = element_norm(x, spec, action, radius, tol)
    large = element_norm(x, spec, action, gap_radius, tol)
    return large, large - small


# ---------------------------------------------------------------------------
# Lipschitz seminorms.


def window_column_mask(H: TruncatedHilbert, window_radius: float, blocks: int = 1) -> np.ndarray:
    """Boolean mask of columns indexed by ball elements inside the window."""
    keep = np.array([float(H.ball.values[h]) <= window_radius for h in H.ball.elements])
    per_block = np.tile(keep, H.coeff_dim)
    return np.tile(per_block, blocks)


def lipschitz_seminorm(x, dirac: TruncatedOperator, action: Optional[ActionSpec] = None,
                       tol: float = 1e-10) -> tuple[float, float]:
    """Certified lower bound for ||[D, x]|| plus the exactness window radius.

    The commutator columns outside the radius-(R - r) window are zeroed before
    the norm is taken, so the value never exceeds the untruncated seminorm.
    Accepts a CrossedElement (realized on the Dirac operator's space) or an
    already-realized TruncatedOperator.
    """
    H = dirac.hilbert
    if isinstance(x, CrossedElement):
        if action is None:
            raise ValueError("realizing a crossed element needs an action")
        support_radius = x.support_radius(H.spec)
        base = realize(x, H, action).matrix
    else:
        base = x.matrix if isinstance(x, TruncatedOperator) else np.asarray(x, dtype=complex)
        support_radius = 0.0
        if isinstance(x, TruncatedOperator) and x.window_radius is not None \
                and not math.isinf(x.window_radius):
            support_radius = H.ball.radius - x.window_radius
    operand = doubled(base) if dirac.blocks == 2 and base.shape[0] == H.dim else base
    if operand.shape != dirac.matrix.shape:
        raise ValueError("operand and Dirac operator live on different spaces")
    comm = dirac.matrix @ operand - operand @ dirac.matrix
    if H.exact:
        return op_norm(comm, tol=tol), math.inf
    window = H.ball.radius - support_radius
    if window < 0:
        raise ValueError("exactness window is empty: support radius exceeds ball radius")
    mask = window_column_mask(H, window, blocks=dirac.blocks)
    comm = comm * mask[np.newaxis, :]
    return op_norm(comm, tol=tol), window


# ---------------------------------------------------------------------------
# Clock and shift matrices for rational rotation algebras.


def clock_matrix(q: int, p: int = 1) -> np.ndarray:
    """diag(1, w, w^2, ...) with w = exp(2 pi i p / q)."""
    omega = np.exp(2j * np.pi * p / q)
    return np.diag(omega ** np.arange(q))


def shift_matrix(q: int) -> np.ndarray:
    """Cyclic shift: e_j -> e_{j+1 mod q}."""
    mat = np.zeros((q, q), dtype=complex)
    for j in range(q):
        mat[(j + 1) % q, j] = 1.0
    return mat
