"""Named numeric verifications of operator identities and inequalities.

Each check returns a CheckReport with the measured residual (equalities) or
slack (inequalities), the tolerance it was judged against, and the statement
it verifies.  Equality tolerances default to 1e-12, inequality slack
tolerances to 1e-9.  Randomized checks record their seed, so every report is
reproducible.

Inequalities compare a radius-R compression on the small side against a
radius-(R + dR) compression on the large side (default dR = R); both are
certified lower bounds of the untruncated norms, and a failure triggers one
automatic radius escalation before it is reported.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .aftriple import af_filtration
from .groups import Element, GroupSpec, LengthFunction
from .horoboundary import cocycle_defect
from .operators import (
    ActionSpec,
    CrossedElement,
    SubgroupSpec,
    clock_matrix,
    coset_compress,
    lambda_op,
    m_ell,
    m_phi,
    op_norm,
    pi_tilde,
    realize,
    realize_phi_twisted,
    shift_matrix,
    truncate,
    window_column_mask,
)

EQUALITY_TOL = 1e-12
SLACK_TOL = 1e-9


@dataclass(frozen=True)
class CheckReport:
    name: str
    statement: str
    params: dict
    tolerance: float
    passed: bool
    residual: Optional[float] = None
    slack: Optional[float] = None
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        out = {
            "name": self.name,
            "statement": self.statement,
            "params": dict(self.params),
            "tolerance": self.tolerance,
            "passed": self.passed,
        }
        if self.residual is not None:
            out["residual"] = self.residual
        if self.slack is not None:
            out["slack"] = self.slack
        if self.details:
            out["details"] = dict(self.details)
        return out


def _max_abs(mat: np.ndarray) -> float:
    return float(np.max(np.abs(mat), initial=0.0))


def random_crossed(rng: np.random.Generator, spec: LengthFunction, support_radius: float,
                   coeff_dim: int = 1, terms: int = 4) -> CrossedElement:
    """Random finitely supported element with support in the given ball."""
    ball = spec.ball(support_radius)
    count = min(terms, len(ball))
    picks = rng.choice(len(ball), size=count, replace=False)
    data = {}
    for idx in sorted(int(i) for i in picks):
        g = ball.elements[idx]
        a = rng.normal(size=(coeff_dim, coeff_dim)) + 1j * rng.normal(size=(coeff_dim, coeff_dim))
        data[g] = a
    return CrossedElement.from_dict(spec.group, data)


def random_diagonal_action(rng: np.random.Generator, group: GroupSpec, dim: int) -> ActionSpec:
    """Random commuting (diagonal-phase) action; exact on abelian relators."""
    unitaries = {}
    done = set()
    for s in group.generators:
        if s in done:
            continue
        w = np.diag(np.exp(2j * np.pi * rng.random(dim)))
        unitaries[s] = w
        inv = group.inverse(s)
        unitaries[inv] = w.conj().T
        done.update({s, inv})
    return ActionSpec(group, unitaries)


def random_hermitian(rng: np.random.Generator, dim: int) -> np.ndarray:
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return (a + a.conj().T) / 2


# ---------------------------------------------------------------------------
# Commutator identity.


def check_commutator_identity(x: CrossedElement, spec: LengthFunction, action: ActionSpec,
                              radius: float, tol: float = EQUALITY_TOL) -> CheckReport:
    """[1 (x) M_l, x] equals sum_g (1 (x) phi_g) a_g lambda_g on the window."""
    d = x.coeff_dim if x.coeffs else 1
    H = truncate(spec, radius, d)
    r = x.support_radius(spec)
    if not H.exact and H.ball.radius - r < 1:
        raise ValueError("window needs radius - support_radius >= 1")
    x_mat = realize(x, H, action).matrix
    mell = m_ell(H).matrix
    lhs = mell @ x_mat - x_mat @ mell
    rhs = realize_phi_twisted(x, H, action).matrix
    window = math.inf if H.exact else H.ball.radius - r
    mask = window_column_mask(H, window)
    residual = _max_abs((lhs - rhs)[:, mask.astype(bool)])
    return CheckReport(
        name="commutator-identity",
        statement="[1 (x) M_l, sum a_g lambda_g] = sum (1 (x) phi_g) a_g lambda_g",
        params={"radius": radius, "support_radius": r, "coeff_dim": d,
                "support": [list(map(int, g)) for g in x.support]},
        tolerance=tol,
        passed=residual <= tol,
        residual=residual,
        details={"window_radius": window if not math.isinf(window) else "exact"},
    )


# ---------------------------------------------------------------------------
# Cocycle identity.


def check_cocycle(spec: LengthFunction, pairs: Sequence[tuple[Element, Element]],
                  radius: float, tol: float = 0.0) -> CheckReport:
    """phi_{gh} = g.phi_h + phi_g, exactly, over all listed pairs."""
    ball = spec.ball(radius)
    worst = 0.0
    for g, h in pairs:
        worst = max(worst, cocycle_defect(g, h, ball, spec))
    return CheckReport(
        name="cocycle",
        statement="phi_{gh} = g.phi_h + phi_g",
        params={"radius": radius, "pairs": len(pairs)},
        tolerance=tol,
        passed=worst <= tol,
        residual=worst,
    )


# ---------------------------------------------------------------------------
# Conditional expectation.


def check_conditional_expectation(x: CrossedElement, g: Element, subgroup: SubgroupSpec,
                                  d_a: np.ndarray, spec: LengthFunction, action: ActionSpec,
                                  radius: Optional[float] = None,
                                  tol: float = EQUALITY_TOL,
                                  slack_tol: float = SLACK_TOL) -> CheckReport:
    """E_H intertwines the coefficient and length commutators along coset shifts.

    Verifies E_H([T, x] lambda_{g^-1}) lambda_g = [T, E_H(x lambda_{g^-1}) lambda_g]
    for T = D_A (x) 1 and T = 1 (x) M_l, plus the contraction
    ||E_H(x)|| <= ||x|| (judged at the equality tolerance) and the coset
    compression ||E_H([1 (x) M_l, x] lambda_{g^-1}) lambda_g|| <=
    ||[1 (x) M_l, x]|| (an inequality of two separately computed norms, judged
    at the slack tolerance), all on the truncated space.
    """
    group = spec.group
    d = x.coeff_dim if x.coeffs else 1
    r = x.support_radius(spec)
    lg = float(spec.length(g))
    if radius is None:
        radius = r + 2 * lg + 2
    H = truncate(spec, radius, d)
    window = math.inf if H.exact else H.ball.radius - r - 2 * lg
    if not H.exact and window < 0:
        raise ValueError("radius too small for the requested coset shift")

    x_mat = realize(x, H, action).matrix
    d_a = np.atleast_2d(np.asarray(d_a, dtype=complex))
    t_coeff = np.kron(d_a, np.eye(H.n_ball, dtype=complex))
    t_len = m_ell(H).matrix
    lam_g = lambda_op(H, g).matrix
    lam_g_inv = lambda_op(H, group.inverse(g)).matrix

    shifted = conditional_shifted(x, g, subgroup, group)
    shifted_mat = realize(shifted, H, action).matrix

    mask = window_column_mask(H, window).astype(bool)
    residuals = {}
    length_lhs = None
    for label, t in (("coefficient", t_coeff), ("length", t_len)):
        lhs = coset_compress((t @ x_mat - x_mat @ t) @ lam_g_inv, H, subgroup) @ lam_g
        rhs = t @ shifted_mat - shifted_mat @ t
        residuals[label] = _max_abs((lhs - rhs)[:, mask])
        if label == "length":
            length_lhs = lhs

    from .operators import conditional_expectation

    ex = conditional_expectation(x, subgroup)
    contraction = op_norm(x_mat) - op_norm(realize(ex, H, action).matrix)
    # coset compression of the length commutator is itself a contraction
    coset_slack = op_norm(t_len @ x_mat - x_mat @ t_len) - op_norm(length_lhs)
    residual = max(residuals.values())
    return CheckReport(
        name="conditional-expectation",
        statement="E_H([T, x] lambda_{g^-1}) lambda_g = [T, E_H(x lambda_{g^-1}) lambda_g];  "
                  "||E_H(x)|| <= ||x||;  ||E_H([1 (x) M_l, x] lambda_{g^-1}) lambda_g|| "
                  "<= ||[1 (x) M_l, x]||",
        params={"radius": radius, "subgroup": subgroup.name,
                "g": list(map(int, g)), "coeff_dim": d},
        tolerance=tol,
        passed=(residual <= tol and contraction >= -tol
                and coset_slack >= -slack_tol),
        residual=residual,
        slack=contraction,
        details={"identity_residuals": residuals,
                 "coset_compression_slack": coset_slack,
                 "window_radius": window if not math.isinf(window) else "exact"},
    )


def conditional_shifted(x: CrossedElement, g: Element, subgroup: SubgroupSpec,
                        group: GroupSpec) -> CrossedElement:
    """E_H(x lambda_{g^-1}) lambda_g: the restriction of x to support in Hg."""
    g_inv = group.inverse(g)
    return x.restrict(lambda s: subgroup.contains(group.multiply(s, g_inv)))


# ---------------------------------------------------------------------------
# High-frequency tail bound.


def tail_series_factor(n_cut: int, shift: float, tol: float = 1e-12) -> float:
    """sqrt(sum_{|k| > N} 1/(k + L)^2) by partial sums with a tail correction.

    The summation runs far enough that the Euler-Maclaurin remainder is far
    below tol.
    """
    if n_cut < abs(shift):
        raise ValueError("need N >= |L|")
    head = 0.0
    k_top = n_cut + 4000
    for k in range(n_cut + 1, k_top + 1):
        head += 1.0 / (k + shift) ** 2 + 1.0 / (k - shift) ** 2

    def em_tail(c: float) -> float:
        a = k_top + 1 + c
        return 1.0 / a + 1.0 / (2 * a * a) + 1.0 / (6 * a ** 3) - 1.0 / (30 * a ** 5)

    total = head + em_tail(shift) + em_tail(-shift)
    return math.sqrt(total)


def check_tail_bound(x: CrossedElement, functional: Sequence[int], shift: float, n_cut: int,
                     spec: LengthFunction, action: ActionSpec, radius: float,
                     delta_radius: Optional[float] = None, tol: float = SLACK_TOL,
                     _escalated: bool = False) -> CheckReport:
    """||sum_{|phi(g)|>N} a_g lambda_g|| <= factor(N, L) ||[1 (x) M_phi, x] + L x||.

    The left side is compressed at `radius`, the right side at
    `radius + delta_radius`; one automatic radius escalation runs on failure.
    """
    group = spec.group
    if delta_radius is None:
        delta_radius = radius
    vec = tuple(int(c) for c in functional)
    if all(c == 0 for c in vec):
        raise ValueError("the homomorphism must be non-trivial")

    def phi_value(g: Element) -> int:
        return sum(a * b for a, b in zip(vec, group.abelianization(g)))

    d = x.coeff_dim if x.coeffs else 1
    tail = x.restrict(lambda g: abs(phi_value(g)) > n_cut)
    if tail.coeffs:
        h_small = truncate(spec, radius, d)
        lhs = op_norm(realize(tail, h_small, action).matrix)
    else:
        lhs = 0.0
    h_big = truncate(spec, radius + delta_radius, d)
    x_mat = realize(x, h_big, action).matrix
    mphi = m_phi(h_big, vec).matrix
    rhs = op_norm(mphi @ x_mat - x_mat @ mphi + float(shift) * x_mat)
    factor = tail_series_factor(n_cut, float(shift))
    slack = factor * rhs - lhs
    if slack < -tol and not _escalated:
        return check_tail_bound(x, functional, shift, n_cut, spec, action,
                                2 * radius, 2 * radius, tol, _escalated=True)
    return CheckReport(
        name="tail-bound",
        statement="||sum_{|phi(g)|>N} a_g lambda_g|| "
                  "<= (sum_{|k|>N} (k+L)^-2)^(1/2) ||[1 (x) M_phi, x] + L x||",
        params={"N": n_cut, "L": float(shift), "functional": list(vec),
                "radius": radius, "delta_radius": delta_radius},
        tolerance=tol,
        passed=slack >= -tol,
        slack=slack,
        details={"lhs": lhs, "rhs": rhs, "factor": factor, "escalated": _escalated},
    )


# ---------------------------------------------------------------------------
# Diagonal unitary conjugation.


def check_unitary_conjugation(a: np.ndarray, f_values: Sequence[float], g: Element,
                              spec: LengthFunction, action: ActionSpec, radius: float,
                              tol: float = EQUALITY_TOL) -> CheckReport:
    """Conjugation by U(xi (x) delta_g) = lambda~_g xi (x) delta_g tensor-splits
    the coefficient, boundary-function, and translation parts.

    Checks U pi~(a) U* = pi(a) (x) 1, U nu~(f) U* = 1 (x) nu(f), and
    U lambda~_g U* = lambda_g (x) lambda_g on the interior window of the
    doubled truncation.
    """
    group = spec.group
    d = action.dim
    H = truncate(spec, radius, d)
    n = H.n_ball
    dn = H.dim
    dim = dn * n  # doubled space (H_A (x) l2(ball)) (x) l2(ball)
    f_values = np.asarray(f_values, dtype=complex)
    if f_values.shape != (n,):
        raise ValueError("f must list one value per ball element")

    lam_blocks = [lambda_op(H, h).matrix for h in H.ball.elements]
    u = np.zeros((dim, dim), dtype=complex)
    for k in range(n):
        u[k::n, k::n] = lam_blocks[k]

    # iota images on H (x) l2(ball)
    pi_a = np.zeros((dim, dim), dtype=complex)
    for k, h in enumerate(H.ball.elements):
        twisted = pi_tilde(H, action, action.act(group.inverse(h), a, spec)).matrix
        pi_a[k::n, k::n] = twisted
    nu_f = np.kron(np.eye(dn, dtype=complex), np.diag(f_values))
    lam_gg = np.zeros((dim, dim), dtype=complex)
    index = H.ball.index
    lam_g_small = lam_blocks[index[g]] if g in index else lambda_op(H, g).matrix
    eye_dn = np.eye(dn, dtype=complex)
    for k, h in enumerate(H.ball.elements):
        target = index.get(group.multiply(g, h))
        if target is None:
            continue
        lam_gg[target::n, k::n] = eye_dn

    rhs_pi = np.kron(pi_tilde(H, action, a).matrix, np.eye(n, dtype=complex))
    rhs_nu = np.kron(np.eye(dn, dtype=complex), np.diag(f_values))
    shift_n = np.zeros((n, n), dtype=complex)
    for k, h in enumerate(H.ball.elements):
        target = index.get(group.multiply(g, h))
        if target is not None:
            shift_n[target, k] = 1.0
    rhs_lam = np.kron(lam_g_small, shift_n)

    lg = float(spec.length(g))
    ball_vals = np.array([float(H.ball.values[h]) for h in H.ball.elements])
    pair_ok = ball_vals[:, None] + ball_vals[None, :] <= H.ball.radius  # (h, k)
    pair_ok_g = ball_vals[:, None] + ball_vals[None, :] <= H.ball.radius - lg
    col_mask = np.tile(pair_ok, (d, 1)).reshape(dim)
    col_mask_g = np.tile(pair_ok_g, (d, 1)).reshape(dim)

    uh = u.conj().T
    residuals = {
        "coefficient": _max_abs(((u @ pi_a @ uh) - rhs_pi)[:, col_mask]),
        "boundary-function": _max_abs(((u @ nu_f @ uh) - rhs_nu)[:, col_mask]),
        "translation": _max_abs(((u @ lam_gg @ uh) - rhs_lam)[:, col_mask_g]),
    }
    residual = max(residuals.values())
    return CheckReport(
        name="unitary-conjugation",
        statement="U pi~(a) U* = pi(a) (x) 1;  U nu~(f) U* = 1 (x) nu(f);  "
                  "U lambda~_g U* = lambda_g (x) lambda_g",
        params={"radius": radius, "coeff_dim": d, "g": list(map(int, g))},
        tolerance=tol,
        passed=residual <= tol,
        residual=residual,
        details={"identity_residuals": residuals},
    )


# ---------------------------------------------------------------------------
# Rational rotation algebra equicontinuity.


def check_nctorus_equicontinuity(p: int, q: int, spec: LengthFunction,
                                 x: Optional[CrossedElement] = None,
                                 n_range: Sequence[int] = range(-50, 51),
                                 radius: float = 20.0,
                                 tol: float = SLACK_TOL,
                                 relation_tol: float = EQUALITY_TOL) -> CheckReport:
    """Clock-shift relation and the uniform commutator bound under the phase action.

    u, v are the q x q clock and shift with u v = exp(2 pi i p/q) v u; the
    integer action sends u to exp(-2 pi i theta) u (inner, by conjugation with
    u v) and twists lambda_1 by a phase.  For every n the compression of
    [1 (x) M_l, alpha^n(x)] stays below sum_g ||a_g|| ||[1 (x) M_l, lambda_g]||.
    """
    group = spec.group
    if group.kind != "free_abelian" or group.rank != 1:
        raise ValueError("the iterated-crossed-product check runs over Z")
    theta = p / q
    u = clock_matrix(q, p)
    v = shift_matrix(q)
    relation_residual = _max_abs(u @ v - np.exp(2j * np.pi * theta) * v @ u)

    w = u @ v  # inner implementer: w u w* = e^{-2 pi i theta} u
    action_residual = _max_abs(w @ u @ w.conj().T - np.exp(-2j * np.pi * theta) * u)
    action = ActionSpec(group, {(1,): w, (-1,): w.conj().T})

    if x is None:
        x = CrossedElement.from_dict(group, {(1,): u, (-1,): u.conj().T})
    H = truncate(spec, radius, q)
    mell = m_ell(H).matrix

    bound = 0.0
    for g, a in x.coeffs:
        lam = lambda_op(H, g).matrix
        bound += op_norm(a) * op_norm(mell @ lam - lam @ mell)

    worst_slack = math.inf
    norms = []
    for n in n_range:
        wn = np.linalg.matrix_power(w, n) if n >= 0 else np.linalg.matrix_power(w.conj().T, -n)
        twisted = x.map_coefficients(
            lambda g, a: np.exp(-2j * np.pi * n * g[0] * theta) * (wn @ a @ wn.conj().T)
        )
        mat = realize(twisted, H, action).matrix
        value = op_norm(mell @ mat - mat @ mell)
        norms.append(value)
        worst_slack = min(worst_slack, bound - value)

    passed = (relation_residual <= relation_tol and action_residual <= relation_tol
              and worst_slack >= -tol)
    return CheckReport(
        name="nctorus-equicontinuity",
        statement="u v = exp(2 pi i theta) v u;  alpha^n(u) = exp(-2 pi i n theta) u;  "
                  "||[1 (x) M_l, alpha^n(x)]|| <= sum_g ||a_g|| ||[1 (x) M_l, lambda_g]||",
        params={"p": p, "q": q, "radius": radius,
                "n_range": [int(min(n_range)), int(max(n_range))]},
        tolerance=tol,
        passed=passed,
        residual=max(relation_residual, action_residual),
        slack=worst_slack,
        details={"relation_residual": relation_residual,
                 "action_residual": action_residual,
                 "bound": bound,
                 "max_commutator_norm": max(norms)},
    )


# ---------------------------------------------------------------------------
# AF filtration.


def check_af_triple(orders: Sequence[int], eigenvalues: Sequence[float],
                    seed: int = 0, tol: float = EQUALITY_TOL) -> CheckReport:
    """Projection ranks, mutual orthogonality, and level commutation for the
    finite-depth odometer filtration."""
    filt = af_filtration(orders)
    rng = np.random.default_rng([seed, 0xAF])
    qs = filt.projections
    k = filt.depth

    rank_errors = []
    expected_ranks = []
    for i, qproj in enumerate(qs):
        expected = filt.level_sizes[i] - (filt.level_sizes[i - 1] if i else 0)
        expected_ranks.append(expected)
        rank_errors.append(abs(float(np.real(np.trace(qproj))) - expected))
    residual_rank = max(rank_errors)

    residual_orth = 0.0
    for i in range(k + 1):
        for j in range(k + 1):
            prod = qs[i] @ qs[j]
            ref = qs[i] if i == j else 0.0
            residual_orth = max(residual_orth, _max_abs(prod - ref))

    residual_comm = 0.0
    for i in range(k):
        values = rng.normal(size=filt.level_sizes[i]) + 1j * rng.normal(size=filt.level_sizes[i])
        rep = filt.represent(i, values)
        for j in range(i + 1, k + 1):
            residual_comm = max(residual_comm, _max_abs(qs[j] @ rep - rep @ qs[j]))

    constants = np.ones(filt.dim, dtype=complex) / math.sqrt(filt.dim)
    residual_q0 = _max_abs(qs[0] - np.outer(constants, constants.conj()))

    dirac = filt.dirac(eigenvalues)
    residual = max(residual_rank, residual_orth, residual_comm, residual_q0)
    return CheckReport(
        name="af-triple",
        statement="Q_i mutually orthogonal projections with rank |G/G_i| - |G/G_{i-1}|; "
                  "[Q_j, pi(a)] = 0 for a in A_i, j > i;  D = sum_i lambda_i Q_i",
        params={"orders": [int(n) for n in orders],
                "eigenvalues": [float(v) for v in eigenvalues], "seed": seed},
        tolerance=tol,
        passed=residual <= tol,
        residual=residual,
        details={"ranks": expected_ranks,
                 "orthogonality_residual": residual_orth,
                 "commutation_residual": residual_comm,
                 "rank_residual": residual_rank,
                 "dirac_hermitian_residual": _max_abs(dirac - dirac.conj().T)},
    )


# ---------------------------------------------------------------------------
# Coefficient bounds.


def check_coefficient_bounds(x: CrossedElement, g: Element, d_a: np.ndarray,
                             spec: LengthFunction, action: ActionSpec,
                             radius: Optional[float] = None,
                             tol: float = SLACK_TOL,
                             _escalated: bool = False) -> CheckReport:
    """Per-coefficient bounds ||[D_A, a_h]|| <= ||[D_A (x) 1, x]|| and
    ||a_h|| <= l(hg)^-1 ||[1 (x) M_l, x]|| (the latter skipping hg = e)."""
    group = spec.group
    d = x.coeff_dim if x.coeffs else 1
    r = x.support_radius(spec)
    if radius is None:
        radius = 2 * r + 2
    H = truncate(spec, radius, d)
    d_a = np.atleast_2d(np.asarray(d_a, dtype=complex))
    t_coeff = np.kron(d_a, np.eye(H.n_ball, dtype=complex))
    x_mat = realize(x, H, action).matrix
    mell = m_ell(H).matrix
    norm_coeff = op_norm(t_coeff @ x_mat - x_mat @ t_coeff)
    norm_len = op_norm(mell @ x_mat - x_mat @ mell)

    e = group.identity()
    worst = math.inf
    per_term = []
    for s, a in x.coeffs:
        # s = h g, so the coefficient a sits over the coset point with l(hg) = l(s)
        slack_d = norm_coeff - op_norm(d_a @ a - a @ d_a)
        entry = {"support_point": list(map(int, s)), "dirac_slack": slack_d}
        worst = min(worst, slack_d)
        if s != e:
            slack_a = norm_len / float(spec.length(s)) - op_norm(a)
            entry["norm_slack"] = slack_a
            worst = min(worst, slack_a)
        per_term.append(entry)
    if worst < -tol and not _escalated:
        return check_coefficient_bounds(x, g, d_a, spec, action, 2 * radius,
                                        tol, _escalated=True)
    return CheckReport(
        name="coefficient-bounds",
        statement="||[D_A, a_h]|| <= ||[D_A (x) 1, x]||;  "
                  "||a_h|| <= l(hg)^-1 ||[1 (x) M_l, x]|| for hg != e",
        params={"radius": radius, "g": list(map(int, g)), "coeff_dim": d},
        tolerance=tol,
        passed=worst >= -tol,
        slack=worst,
        details={"terms": per_term, "escalated": _escalated},
    )


# ---------------------------------------------------------------------------
# Length axioms wrapper (report form of LengthFunction.check_axioms).


def check_length_axioms(spec: LengthFunction, radius: float,
                        tol: float = 0.0) -> CheckReport:
    report = spec.check_axioms(radius)
    return CheckReport(
        name="length-axioms",
        statement="l(e) = 0;  l(g^-1) = l(g);  l(gh) <= l(g) + l(h)",
        params={"radius": radius, "pairs": report.pairs_checked,
                "skipped": report.pairs_skipped},
        tolerance=tol,
        passed=report.max_violation <= tol,
        residual=report.max_violation,
        details={"identity": report.identity_violation,
                 "symmetry": report.symmetry_violation,
                 "subadditivity": report.subadditivity_violation},
    )


# ---------------------------------------------------------------------------
# Default suite.


def default_suite(seed: int = 0) -> list[CheckReport]:
    """Every check at its documented default parameters; the core regression run."""
    reports = []
    z1 = GroupSpec.free_abelian(1)
    z2 = GroupSpec.free_abelian(2)
    h3 = GroupSpec.heisenberg3()
    len_z1 = LengthFunction.word(z1)
    len_z2 = LengthFunction.word(z2)
    len_h3 = LengthFunction.word(h3)

    reports.append(check_length_axioms(len_z1, 10))
    reports.append(check_length_axioms(len_z2, 8))
    reports.append(check_length_axioms(len_h3, 6))

    rng = np.random.default_rng([seed, 1])
    for spec, radius, pair_radius in ((len_z2, 10.0, 4.0), (len_h3, 8.0, 3.0)):
        ball = spec.ball(pair_radius)
        pairs = []
        for _ in range(100):
            i, j = rng.integers(0, len(ball), size=2)
            pairs.append((ball.elements[int(i)], ball.elements[int(j)]))
        reports.append(check_cocycle(spec, pairs, radius))

    rng = np.random.default_rng([seed, 2])
    for idx in range(20):
        spec = (len_z1, len_z2)[idx % 2]
        d = 1 + idx % 3
        x = random_crossed(rng, spec, 2.0, coeff_dim=d, terms=3)
        action = random_diagonal_action(rng, spec.group, d)
        reports.append(check_commutator_identity(x, spec, action, radius=6.0))

    rng = np.random.default_rng([seed, 3])
    for idx in range(20):
        if idx % 2 == 0:
            spec, sub = len_z1, SubgroupSpec.multiples(z1, 2)
        else:
            spec, sub = len_z2, SubgroupSpec.kernel_of(z2, (1, 0))
        x = random_crossed(rng, spec, 3.0, coeff_dim=2, terms=4)
        ball = spec.ball(2.0)
        g = ball.elements[int(rng.integers(0, len(ball)))]
        d_a = random_hermitian(rng, 2)
        action = random_diagonal_action(rng, spec.group, 2)
        reports.append(check_conditional_expectation(x, g, sub, d_a, spec, action))

    rng = np.random.default_rng([seed, 4])
    functionals = ((1, 0), (0, 1), (1, 1))
    for idx in range(12):
        x = random_crossed(rng, len_z2, 4.0, coeff_dim=1, terms=5)
        n_cut = 1 + idx % 3
        vec = functionals[idx % 3]
        if idx % 2 == 0:
            shift = 0.0
        else:
            shift = min(n_cut, max(-n_cut, float(idx % 5 - 2) / 2))
        reports.append(check_tail_bound(x, vec, shift, n_cut, len_z2,
                                        ActionSpec.trivial(z2, 1), radius=8.0))

    rng = np.random.default_rng([seed, 5])
    for _ in range(10):
        d = 2
        a = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
        action = random_diagonal_action(rng, z1, d)
        ball = len_z1.ball(4.0)
        f_vals = [float(len_z1.length(h)) - float(len_z1.length((h[0] - 1,)))
                  for h in ball.elements]
        g = ball.elements[int(rng.integers(1, len(ball)))]
        reports.append(check_unitary_conjugation(a, f_vals, g, len_z1, action, radius=4.0))

    for q in (3, 5, 8):
        reports.append(check_nctorus_equicontinuity(1, q, len_z1, radius=20.0))

    reports.append(check_af_triple([2, 2, 2, 2, 2], [0, 1, 2, 3, 4, 5], seed=seed))

    rng = np.random.default_rng([seed, 6])
    for _ in range(10):
        x = random_crossed(rng, len_z1, 3.0, coeff_dim=2, terms=3)
        ball = len_z1.ball(2.0)
        g = ball.elements[int(rng.integers(0, len(ball)))]
        d_a = random_hermitian(rng, 2)
        action = random_diagonal_action(rng, z1, 2)
        reports.append(check_coefficient_bounds(x, g, d_a, len_z1, action))

    return reports
