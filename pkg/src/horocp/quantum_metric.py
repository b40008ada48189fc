"""Monge-Kantorovich distance estimation on exact finite-dimensional triples.

d(psi, psi') = sup { |psi(a) - psi'(a)| : ||[D, a]|| <= 1 } over hermitian a.
Only exact spaces are admitted (finite cyclic group algebras, finite-depth
filtration levels); truncations of infinite groups are excluded because the
feasible set would depend on the truncation.  Reported values are certified
lower bounds with a convergence flag, obtained by normalized ascent with
restarts; a grid-plus-polish maximizer over the same feasible ball serves as
an independent oracle at tiny parameter dimension.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product
from typing import Optional, Sequence

import numpy as np

from .aftriple import af_filtration
from .operators import op_norm


class DegenerateTripleError(ValueError):
    """[D, .] vanishes on more than the constants; the supremum is infinite."""


@dataclass(frozen=True)
class FiniteTriple:
    """Hermitian test-space basis (modulo constants) plus a Dirac matrix."""

    dim: int
    dirac: np.ndarray
    basis: tuple[np.ndarray, ...]
    labels: tuple[str, ...]

    def element(self, theta: Sequence[float]) -> np.ndarray:
        out = np.zeros((self.dim, self.dim), dtype=complex)
        for t, b in zip(theta, self.basis):
            out += float(t) * b
        return out

    def seminorm(self, a: np.ndarray) -> float:
        return op_norm(self.dirac @ a - a @ self.dirac)


def cyclic_triple(order: int, lengths: Sequence[float]) -> FiniteTriple:
    """Group algebra of Z/n with the diagonal length Dirac operator M_l."""
    lengths = [float(v) for v in lengths]
    if len(lengths) != order:
        raise ValueError(f"need {order} length values")
    if lengths[0] != 0.0:
        raise ValueError("the identity must have length 0")
    dirac = np.diag(np.array(lengths, dtype=complex))
    perms = []
    for k in range(order):
        p = np.zeros((order, order), dtype=complex)
        for j in range(order):
            p[(j + k) % order, j] = 1.0
        perms.append(p)
    basis = []
    labels = []
    for k in range(1, order // 2 + 1):
        if k == (order - k) % order:
            basis.append(perms[k])
            labels.append(f"lambda_{k}")
        else:
            basis.append(perms[k] + perms[order - k])
            labels.append(f"lambda_{k} + lambda_{-k}")
            basis.append(1j * (perms[k] - perms[order - k]))
            labels.append(f"i(lambda_{k} - lambda_{-k})")
    return FiniteTriple(order, dirac, tuple(basis), tuple(labels))


def af_level_triple(orders: Sequence[int], eigenvalues: Sequence[float]) -> FiniteTriple:
    """Top level of a finite odometer filtration with D = sum_i lambda_i Q_i."""
    filt = af_filtration(orders)
    dirac = filt.dirac(eigenvalues)
    dim = filt.dim
    basis = []
    labels = []
    for x in range(dim - 1):
        mat = np.zeros((dim, dim), dtype=complex)
        mat[x, x] = 1.0
        mat -= np.eye(dim) / dim
        basis.append(mat)
        labels.append(f"indicator({x}) - 1/n")
    return FiniteTriple(dim, dirac, tuple(basis), tuple(labels))


@dataclass(frozen=True)
class StateSpec:
    """A state evaluated against matrices: character, vector state, or density."""

    kind: str
    vector: Optional[np.ndarray] = None
    density: Optional[np.ndarray] = None
    label: str = ""

    @classmethod
    def character(cls, order: int, index: int) -> "StateSpec":
        """The multiplicative character lambda_k -> exp(2 pi i j k / n)."""
        j = index % order
        v = np.exp(-2j * np.pi * j * np.arange(order) / order) / math.sqrt(order)
        return cls("character", vector=v, label=f"chi_{j}")

    @classmethod
    def vector_state(cls, vec: Sequence[complex], label: str = "vector") -> "StateSpec":
        v = np.asarray(vec, dtype=complex)
        if abs(np.linalg.norm(v) - 1.0) > 1e-12:
            raise ValueError("vector states need a unit vector")
        return cls("vector", vector=v, label=label)

    @classmethod
    def density_matrix(cls, rho: np.ndarray, label: str = "density") -> "StateSpec":
        rho = np.asarray(rho, dtype=complex)
        if abs(np.trace(rho).real - 1.0) > 1e-12 or np.max(np.abs(rho - rho.conj().T)) > 1e-12:
            raise ValueError("density matrices must be hermitian with unit trace")
        return cls("density", density=rho, label=label)

    def evaluate(self, mat: np.ndarray) -> complex:
        if self.density is not None:
            return complex(np.trace(self.density @ mat))
        v = self.vector
        return complex(np.vdot(v, mat @ v))


@dataclass(frozen=True)
class MKResult:
    lower_bound: float
    converged: bool
    witness: np.ndarray
    witness_seminorm: float
    restarts: int
    iterations: int


def _objective_vector(triple: FiniteTriple, psi: StateSpec, psi_prime: StateSpec) -> np.ndarray:
    return np.array(
        [float((psi.evaluate(b) - psi_prime.evaluate(b)).real) for b in triple.basis]
    )


def _reject_degenerate(triple: FiniteTriple) -> None:
    columns = []
    for b in triple.basis:
        c = triple.dirac @ b - b @ triple.dirac
        columns.append(np.concatenate([c.real.ravel(), c.imag.ravel()]))
    mat = np.stack(columns, axis=1)
    rank = np.linalg.matrix_rank(mat, tol=1e-10)
    if rank < len(triple.basis):
        raise DegenerateTripleError(
            "the commutator map vanishes on a non-constant direction; "
            "the distance supremum is infinite"
        )


def _ratio(triple: FiniteTriple, c: np.ndarray, theta: np.ndarray) -> float:
    value = abs(float(c @ theta))
    if value == 0.0:
        return 0.0
    s = triple.seminorm(triple.element(theta))
    if s < 1e-13:
        raise DegenerateTripleError("objective is unbounded on a seminorm-null direction")
    return value / s


def _polish(triple: FiniteTriple, c: np.ndarray, theta: np.ndarray,
            floor: float = 1e-8) -> tuple[float, np.ndarray]:
    """Pattern search on the homogeneous ratio |c.theta| / L(theta)."""
    theta = theta / np.linalg.norm(theta)
    best = _ratio(triple, c, theta)
    radius = 0.5
    while radius > floor:
        improved = False
        for j in range(len(theta)):
            for sign in (-1.0, 1.0):
                trial = theta.copy()
                trial[j] += sign * radius
                norm = np.linalg.norm(trial)
                if norm == 0.0:
                    continue
                value = _ratio(triple, c, trial / norm)
                if value > best + 1e-15:
                    best, theta = value, trial / norm
                    improved = True
        if not improved:
            radius /= 2.0
    return best, theta


def mk_distance(triple: FiniteTriple, psi: StateSpec, psi_prime: StateSpec,
                restarts: int = 32, iterations: int = 2000, step: float = 0.1,
                tol: float = 1e-9, seed: int = 0) -> MKResult:
    """Certified lower bound for the state-space distance, by normalized ascent.

    Ascent on the linear objective (psi - psi')(a) over the seminorm ball:
    after every step the iterate is rescaled by 1/max(1, ||[D, a]||), which is
    valid because the feasible set is a seminorm ball and constants do not
    move the objective.  The top restart results are then polished by a
    deterministic pattern search on the homogeneous ratio; convergence is
    declared when the two best polished runs agree.
    """
    _reject_degenerate(triple)
    c = _objective_vector(triple, psi, psi_prime)
    p = len(triple.basis)
    if np.linalg.norm(c) == 0.0:
        return MKResult(0.0, True, np.zeros((triple.dim, triple.dim), dtype=complex),
                        0.0, restarts, 0)
    rng = np.random.default_rng([seed, 0x4D4B])
    finals = []
    total_iter = 0
    for restart in range(restarts):
        sign = 1.0 if restart % 2 == 0 else -1.0
        target = sign * c
        if restart < 2:
            theta = target / np.linalg.norm(target)
        else:
            theta = rng.normal(size=p)
            theta /= np.linalg.norm(theta)
        s = triple.seminorm(triple.element(theta))
        if s > 1.0:
            theta = theta / s
        current = float(target @ theta)
        local_step = step
        for _ in range(iterations):
            total_iter += 1
            trial = theta + local_step * target
            s = triple.seminorm(triple.element(trial))
            if s > 1.0:
                trial = trial / s
            value = float(target @ trial)
            if value > current + 1e-15:
                theta, current = trial, value
            else:
                local_step /= 2.0
                if local_step < 1e-13:
                    break
        finals.append((current, theta.copy()))
    finals.sort(key=lambda pair: -pair[0])
    polished = [_polish(triple, c, theta) for _, theta in finals[:4]]
    polished.sort(key=lambda pair: -pair[0])
    best_val, best_theta = polished[0]
    witness = triple.element(best_theta)
    s = triple.seminorm(witness)
    if s > 0.0:
        witness = witness / s
        s = triple.seminorm(witness)
    converged = (len(polished) >= 2
                 and abs(polished[0][0] - polished[1][0])
                 <= max(100 * tol, 1e-7 * max(best_val, 1.0)))
    return MKResult(best_val, converged, witness, s, restarts, total_iter)


def mk_brute_force(triple: FiniteTriple, psi: StateSpec, psi_prime: StateSpec,
                   grid: int = 3) -> float:
    """Oracle maximizer: every point of a direction grid is scaled onto the
    seminorm sphere, then the best direction is polished by pattern search."""
    p = len(triple.basis)
    if p > 6:
        raise ValueError("brute force is limited to parameter dimension <= 6")
    _reject_degenerate(triple)
    c = _objective_vector(triple, psi, psi_prime)
    if np.linalg.norm(c) == 0.0:
        return 0.0

    def ratio(theta: np.ndarray) -> float:
        value = abs(float(c @ theta))
        if value == 0.0:
            return 0.0
        s = triple.seminorm(triple.element(theta))
        if s < 1e-13:
            raise DegenerateTripleError("objective is unbounded on a seminorm-null direction")
        return value / s

    best_theta = None
    best = -1.0
    for point in product(range(-grid, grid + 1), repeat=p):
        if all(v == 0 for v in point):
            continue
        theta = np.array(point, dtype=float)
        theta /= np.linalg.norm(theta)
        value = ratio(theta)
        if value > best:
            best, best_theta = value, theta
    radius = 0.5
    while radius > 1e-8:
        improved = False
        for j in range(p):
            for sign in (-1.0, 1.0):
                trial = best_theta.copy()
                trial[j] += sign * radius
                if np.linalg.norm(trial) == 0.0:
                    continue
                value = ratio(trial / np.linalg.norm(trial))
                if value > best + 1e-15:
                    best, best_theta = value, trial / np.linalg.norm(trial)
                    improved = True
        if not improved:
            radius /= 2.0
    return best
