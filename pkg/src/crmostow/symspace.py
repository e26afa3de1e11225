"""Floating-point geometry on the cone of determinant-one positive
Hermitian matrices.

The cone carries the invariant metric ``g_p(A, B) = tr(p⁻¹A p⁻¹B)``; its
geodesics through the identity are ``t ↦ exp(tH)`` for traceless Hermitian
``H``.  This module provides distances, Jacobi fields along such geodesics,
polar and group decompositions adapted to a distinguished subalgebra, the
associated exhaustion function, and a root search exhibiting a Jacobi field
that vanishes at ``t = 1`` but not at ``t = 0``.

All optimizers are deterministic given their seed: multi-start restarts use
per-restart child seeds and the reduction keeps the smallest residual, with
the earliest restart winning ties.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np
import scipy.integrate
import scipy.linalg
import scipy.optimize

from .ambient import AmbientAlgebra
from .crinv import FiberData, fiber_data
from .errors import NonConvergenceError, RestartDisagreementError
from .exact import Subspace, subspace_intersect, subspace_sum
from .parabolic import horocyclic_verdict
from .structure import Subalgebra

__all__ = [
    "HERMITIAN_TOL",
    "UNITARY_TOL",
    "DET_TOL",
    "CROSS_CHECK_TOL",
    "SpdPoint",
    "JacobiFieldSpec",
    "MostowStructure",
    "MostowDecomposition",
    "CounterexampleReport",
    "HessianProbe",
    "dist",
    "polar_decompose",
    "jacobi_eval",
    "jacobi_norm_sq",
    "jacobi_energy",
    "commuting_split",
    "geodesic_variation_spec",
    "mostow_structure",
    "mostow_decompose",
    "exhaustion_phi",
    "minor_log_inequality",
    "counterexample_search",
    "phi_levi_probe",
    "random_compact_element",
    "random_group_element",
]


HERMITIAN_TOL = 1e-10
UNITARY_TOL = 1e-10
DET_TOL = 1e-8
CROSS_CHECK_TOL = 1e-8
_MAX_CONDITION = 1e12
_QUAD_TARGET = 1e-10


# --------------------------------------------------------------------------
# array plumbing
# --------------------------------------------------------------------------


def _as_matrix(m) -> np.ndarray:
    """Coerce an array-like or exact matrix to a complex ndarray."""
    if hasattr(m, "to_numpy"):
        m = m.to_numpy()
    arr = np.asarray(m, dtype=complex)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError("square matrix required")
    return arr


def _scale(a: np.ndarray) -> float:
    return max(1.0, float(np.linalg.norm(a)))


def _is_hermitian(a: np.ndarray, tol: float = HERMITIAN_TOL) -> bool:
    return float(np.linalg.norm(a - a.conj().T)) <= tol * _scale(a)


def _spd_eigenvalues(p: np.ndarray) -> np.ndarray:
    """Eigenvalues of ``p``; raises unless ``p`` is usably positive definite."""
    if not _is_hermitian(p):
        raise ValueError("not positive definite")
    w = np.linalg.eigvalsh(p)
    if w[0] <= 0.0 or w[0] <= w[-1] / _MAX_CONDITION:
        raise ValueError("not positive definite")
    return w


def _combo(coeffs: Sequence[float], mats: Sequence[np.ndarray], n: int) -> np.ndarray:
    out = np.zeros((n, n), dtype=complex)
    for c, m in zip(coeffs, mats):
        if c:
            out += c * m
    return out


def _complex_combo(
    coeffs: Sequence[float], mats: Sequence[np.ndarray], n: int
) -> np.ndarray:
    """Real-coordinate chart of a complex span: pairs (re, im) per basis mat."""
    out = np.zeros((n, n), dtype=complex)
    for k, m in enumerate(mats):
        c = complex(coeffs[2 * k], coeffs[2 * k + 1])
        if c:
            out += c * m
    return out


# --------------------------------------------------------------------------
# points and distance
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class SpdPoint:
    """A positive definite Hermitian matrix of determinant one."""

    p: np.ndarray

    def __post_init__(self):
        arr = _as_matrix(self.p)
        w = _spd_eigenvalues(arr)
        if abs(float(np.sum(np.log(w)))) > DET_TOL:
            raise ValueError("determinant not one")
        object.__setattr__(self, "p", arr)

    @property
    def size(self) -> int:
        return self.p.shape[0]

    @staticmethod
    def identity(n: int) -> "SpdPoint":
        return SpdPoint(np.eye(n, dtype=complex))


def _point_matrix(p) -> np.ndarray:
    if isinstance(p, SpdPoint):
        return p.p
    arr = _as_matrix(p)
    _spd_eigenvalues(arr)
    return arr


def dist(p, q) -> float:
    """Geodesic distance ``(Σᵢ log²λᵢ(p⁻¹q))^{1/2}`` between positive points."""
    pm = _point_matrix(p)
    qm = _point_matrix(q)
    w = scipy.linalg.eigh(qm, pm, eigvals_only=True)
    return float(math.sqrt(np.sum(np.log(w) ** 2)))


def _dist_sq_spd(pm: np.ndarray, qm: np.ndarray) -> float:
    """Squared distance without validation (optimizer inner loop)."""
    w = scipy.linalg.eigh(qm, pm, eigvals_only=True)
    w = np.maximum(w, 1e-300)
    return float(np.sum(np.log(w) ** 2))


def polar_decompose(z, det_one: bool = True) -> tuple[np.ndarray, np.ndarray]:
    """Factor ``z = u·exp(X)`` with ``u`` unitary and ``X`` Hermitian."""
    zm = _as_matrix(z)
    u_svd, s, vh = np.linalg.svd(zm)
    if s[-1] <= 1e-13 * s[0]:
        raise ValueError("singular input")
    u = u_svd @ vh
    x = vh.conj().T @ np.diag(np.log(s)) @ vh
    x = 0.5 * (x + x.conj().T)
    if det_one:
        n = zm.shape[0]
        x = x - (np.trace(x) / n) * np.eye(n)
    if __debug__:
        residual = np.linalg.norm(zm - u @ scipy.linalg.expm(x))
        assert residual <= 1e-8 * _scale(zm), "polar reconstruction failed"
        assert np.linalg.norm(u.conj().T @ u - np.eye(zm.shape[0])) <= UNITARY_TOL
    return u, x


# --------------------------------------------------------------------------
# Jacobi fields along t ↦ exp(tH)
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class JacobiFieldSpec:
    """Data of the Jacobi field ``J(t) = θ_Z(t) + t·θ_T(t)`` along exp(tH),
    where ``θ_W(t) = W*·exp(tH) + exp(tH)·W``.

    ``H`` is traceless Hermitian (the geodesic direction), ``Z`` is any
    traceless matrix, and ``T`` is Hermitian and commutes with ``H``.
    """

    H: np.ndarray
    Z: np.ndarray
    T: np.ndarray

    def __post_init__(self):
        h = _as_matrix(self.H)
        z = _as_matrix(self.Z)
        t = _as_matrix(self.T)
        if not _is_hermitian(h):
            raise ValueError("H not hermitian")
        if abs(np.trace(h)) > HERMITIAN_TOL * _scale(h):
            raise ValueError("H not traceless")
        if abs(np.trace(z)) > HERMITIAN_TOL * _scale(z):
            raise ValueError("Z not traceless")
        if not _is_hermitian(t):
            raise ValueError("T not hermitian")
        if np.linalg.norm(h @ t - t @ h) > HERMITIAN_TOL * _scale(h) * _scale(t):
            raise ValueError("T does not commute with H")
        evals, evecs = np.linalg.eigh(h)
        object.__setattr__(self, "H", h)
        object.__setattr__(self, "Z", z)
        object.__setattr__(self, "T", t)
        object.__setattr__(self, "_evals", evals)
        object.__setattr__(self, "_evecs", evecs)
        blocks: list[list[int]] = []
        tol = 1e-9 * _scale(h)
        for i, lam in enumerate(evals):
            if blocks and lam - evals[blocks[-1][0]] <= tol:
                blocks[-1].append(i)
            else:
                blocks.append([i])
        object.__setattr__(self, "_blocks", tuple(tuple(b) for b in blocks))

    @property
    def size(self) -> int:
        return self.H.shape[0]

    def geodesic_point(self, t: float) -> np.ndarray:
        """exp(tH) through the cached eigendecomposition."""
        u = self._evecs
        return (u * np.exp(t * self._evals)) @ u.conj().T

    def _geodesic_inverse(self, t: float) -> np.ndarray:
        return self.geodesic_point(-t)


def _theta(w: np.ndarray, gamma: np.ndarray) -> np.ndarray:
    return w.conj().T @ gamma + gamma @ w


def _metric(gamma_inv: np.ndarray, a: np.ndarray, b: np.ndarray) -> float:
    return float(np.real(np.trace(gamma_inv @ a @ gamma_inv @ b)))


def jacobi_eval(spec: JacobiFieldSpec, t: float) -> tuple[np.ndarray, np.ndarray]:
    """Value and covariant derivative ``(J(t), J̇(t))`` of the field."""
    gamma = spec.geodesic_point(t)
    j = _theta(spec.Z, gamma) + 2.0 * t * (spec.T @ gamma)
    w = spec.H @ spec.Z - spec.Z @ spec.H + 2.0 * spec.T
    jdot = 0.5 * _theta(w, gamma)
    if __debug__:
        z, h, tt = spec.Z, spec.H, spec.T
        j0 = z + z.conj().T
        d = z - z.conj().T
        jd0 = 0.5 * (h @ d - d @ h) + 2.0 * tt
        gamma0 = spec.geodesic_point(0.0)
        assert np.allclose(_theta(z, gamma0), j0, atol=1e-9 * _scale(j0))
        w0 = h @ z - z @ h + 2.0 * tt
        assert np.allclose(0.5 * _theta(w0, gamma0), jd0, atol=1e-9 * _scale(jd0))
    return j, jdot


def jacobi_norm_sq_forms(spec: JacobiFieldSpec, t: float) -> tuple[float, float]:
    """Both evaluations of ``g_{exp(tH)}(J(t), J(t))``: the direct metric
    pairing and the independent eigenbasis block formula, in that order."""
    gamma_inv = spec._geodesic_inverse(t)
    j, _ = jacobi_eval(spec, t)
    direct = _metric(gamma_inv, j, j)

    u = spec._evecs
    zp = u.conj().T @ spec.Z @ u
    tp = u.conj().T @ spec.T @ u
    evals = spec._evals
    blocks = spec._blocks
    closed = 0.0
    for bi in blocks:
        ii = np.ix_(bi, bi)
        diag_term = 2.0 * t * tp[ii] + zp[ii] + zp[ii].conj().T
        closed += float(np.sum(np.abs(diag_term) ** 2))
        for bj in blocks:
            if bi is bj:
                continue
            gap = evals[bi[0]] - evals[bj[0]]
            zij = zp[np.ix_(bi, bj)] * math.exp(t * gap / 2.0)
            zji = zp[np.ix_(bj, bi)] * math.exp(-t * gap / 2.0)
            closed += float(np.sum(np.abs(zij + zji.conj().T) ** 2))
    return direct, closed


def jacobi_norm_sq(spec: JacobiFieldSpec, t: float) -> float:
    """Squared metric norm ``g_{exp(tH)}(J(t), J(t))``, cross-checked against
    the eigenbasis block formula."""
    direct, closed = jacobi_norm_sq_forms(spec, t)
    scale = max(1.0, abs(direct))
    if abs(direct - closed) > CROSS_CHECK_TOL * scale:
        raise ArithmeticError("cross-check divergence")
    return direct


def jacobi_energy(spec: JacobiFieldSpec) -> float:
    """The quadratic form ``∫₀¹ (1−t)(‖J̇‖² + (J, J̈)) dt``.

    Nonnegative, and zero exactly on the parallel fields (those with
    ``[H, Z] + 2T`` in the kernel of ``W ↦ θ_W``).
    """
    h, z, tt = spec.H, spec.Z, spec.T
    w1 = h @ z - z @ h + 2.0 * tt
    ad2 = h @ (h @ z - z @ h) - (h @ z - z @ h) @ h

    def integrand(t: float) -> float:
        gamma = spec.geodesic_point(t)
        gamma_inv = spec._geodesic_inverse(t)
        j = _theta(z, gamma) + 2.0 * t * (tt @ gamma)
        jdot = 0.5 * _theta(w1, gamma)
        jdd = 0.25 * _theta(ad2, gamma)
        return (1.0 - t) * (_metric(gamma_inv, jdot, jdot) + _metric(gamma_inv, j, jdd))

    value, err = scipy.integrate.quad(
        integrand, 0.0, 1.0, epsabs=_QUAD_TARGET, epsrel=_QUAD_TARGET, limit=200
    )
    if err > 1e-7 * max(1.0, abs(value)):
        raise NonConvergenceError("quadrature non-convergence")
    return float(value)


def commuting_split(h: np.ndarray, x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Split Hermitian ``x = [h, y] + t`` with ``y`` anti-Hermitian and ``t``
    Hermitian commuting with ``h`` (possible since ad_h is semisimple)."""
    h = _as_matrix(h)
    x = _as_matrix(x)
    evals, u = np.linalg.eigh(h)
    xp = u.conj().T @ x @ u
    n = h.shape[0]
    y = np.zeros((n, n), dtype=complex)
    t = np.zeros((n, n), dtype=complex)
    tol = 1e-9 * _scale(h)
    for i in range(n):
        for j in range(n):
            gap = evals[i] - evals[j]
            if abs(gap) <= tol:
                t[i, j] = xp[i, j]
            else:
                y[i, j] = xp[i, j] / gap
    return u @ y @ u.conj().T, u @ t @ u.conj().T


def geodesic_variation_spec(h: np.ndarray, x: np.ndarray) -> JacobiFieldSpec:
    """The field with ``J(0) = 0`` and ``J̇(0) = x`` along exp(tH)."""
    y, t = commuting_split(h, x)
    return JacobiFieldSpec(h, y, 0.5 * t)


# --------------------------------------------------------------------------
# structure bundle for the group decomposition
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class MostowStructure:
    """Float bases of all the subspaces the decomposition optimizers need.

    ``fiber_basis`` spans the Hermitian fiber factor (real basis), and
    ``complement_basis`` the nilpotent fiber factor (complex basis).
    ``nil_basis``/``herm_basis`` give the chart of the group factor
    ``v = expm(Y_n)·expm(Y_p)``; ``envelope_nil_basis``/``envelope_herm_basis``
    give the enlarged chart used by the foot-point stage.
    """

    size: int
    blocks: tuple[int, ...]
    horocyclic: bool
    strict_horocyclic: bool
    fiber_basis: tuple[np.ndarray, ...]
    complement_basis: tuple[np.ndarray, ...]
    nil_basis: tuple[np.ndarray, ...]
    herm_basis: tuple[np.ndarray, ...]
    envelope_nil_basis: tuple[np.ndarray, ...]
    envelope_herm_basis: tuple[np.ndarray, ...]
    compact_basis: tuple[np.ndarray, ...]
    group_basis: tuple[np.ndarray, ...]

    @property
    def fiber_dim(self) -> int:
        return len(self.fiber_basis)

    @property
    def complement_dim(self) -> int:
        return len(self.complement_basis)


def _numpy_basis(space: Subspace) -> tuple[np.ndarray, ...]:
    return tuple(m.to_numpy() for m in space.basis())


def mostow_structure(v: Subalgebra, q=None) -> MostowStructure:
    """Assemble the numeric structure bundle for a subalgebra (and optional
    envelope choice)."""
    fd: FiberData = fiber_data(v) if q is None else fiber_data(v, q)
    verdict = horocyclic_verdict(v)
    amb: AmbientAlgebra = v.ambient

    herm_part = subspace_intersect(v.space.realify(), amb.p0)
    envelope_nil = subspace_sum(v.nr, fd.envelope.nilradical)
    envelope_space = subspace_sum(v.space, fd.envelope.nilradical)
    envelope_herm = subspace_intersect(envelope_space.realify(), amb.p0)

    return MostowStructure(
        size=amb.n,
        blocks=amb.blocks,
        horocyclic=verdict.horocyclic,
        strict_horocyclic=verdict.strictly_horocyclic,
        fiber_basis=_numpy_basis(fd.hermitian_part),
        complement_basis=_numpy_basis(fd.nilpotent_complement),
        nil_basis=_numpy_basis(v.nr),
        herm_basis=_numpy_basis(herm_part),
        envelope_nil_basis=_numpy_basis(envelope_nil),
        envelope_herm_basis=_numpy_basis(envelope_herm),
        compact_basis=_numpy_basis(amb.k0),
        group_basis=_numpy_basis(amb.space),
    )


def _check_group_membership(zeta: np.ndarray, structure: MostowStructure) -> None:
    n = structure.size
    if zeta.shape != (n, n):
        raise ValueError("not in the group")
    det = np.linalg.det(zeta)
    if abs(det - 1.0) > 1e-6 * max(1.0, abs(det)):
        raise ValueError("not in the group")
    start = 0
    ranges = []
    for b in structure.blocks:
        ranges.append(range(start, start + b))
        start += b
    mask = np.zeros((n, n), dtype=bool)
    for r in ranges:
        mask[np.ix_(list(r), list(r))] = True
    if np.linalg.norm(zeta[~mask]) > 1e-8 * _scale(zeta):
        raise ValueError("not in the group")


def random_compact_element(
    structure: MostowStructure, rng: np.random.Generator, scale: float = 1.0
) -> np.ndarray:
    """A random element of the compact group factor."""
    coeffs = scale * rng.standard_normal(len(structure.compact_basis))
    return scipy.linalg.expm(_combo(coeffs, structure.compact_basis, structure.size))


def random_group_element(
    structure: MostowStructure, rng: np.random.Generator, scale: float = 0.5
) -> np.ndarray:
    """A random element of the full complex group."""
    k = len(structure.group_basis)
    coeffs = scale * (rng.standard_normal(2 * k))
    return scipy.linalg.expm(
        _complex_combo(coeffs, structure.group_basis, structure.size)
    )


# --------------------------------------------------------------------------
# two-stage group decomposition
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class MostowDecomposition:
    """Result of ``zeta = u · exp(X) · exp(Z) · v`` with ``u`` unitary,
    ``X`` in the Hermitian fiber factor, ``Z`` in the nilpotent fiber factor,
    and ``v`` in the group factor chart."""

    u: np.ndarray
    X: np.ndarray
    Z: np.ndarray
    v_params: np.ndarray
    residual: float
    restarts_agree: bool
    v_matrix: np.ndarray = field(repr=False, default=None)

    @property
    def fiber_norm(self) -> float:
        return float(np.linalg.norm(self.X))


def _group_factor(
    yp: np.ndarray, yn: np.ndarray, structure: MostowStructure
) -> tuple[np.ndarray, np.ndarray]:
    """(v, v⁻¹) for the chart v = expm(Y_n)·expm(Y_p)."""
    n = structure.size
    p_mat = _combo(yp, structure.herm_basis, n)
    n_mat = _complex_combo(yn, structure.nil_basis, n)
    v = scipy.linalg.expm(n_mat) @ scipy.linalg.expm(p_mat)
    vinv = scipy.linalg.expm(-p_mat) @ scipy.linalg.expm(-n_mat)
    return v, vinv


def _check_restart_agreement(
    norms: Sequence[float], agree_tol: float, strict: bool
) -> bool:
    """True when all converged restarts found the same fiber norm; raises
    when they disagree although the decomposition is provably unique."""
    agree = (max(norms) - min(norms)) <= agree_tol if norms else False
    if norms and not agree and strict:
        raise RestartDisagreementError("restart disagreement")
    return agree


def mostow_decompose(
    zeta,
    structure: MostowStructure,
    tol: float = 1e-9,
    max_restarts: int = 8,
    seed: int = 0,
    agree_tol: float = 1e-6,
    require_unique: bool | None = None,
) -> MostowDecomposition:
    """Decompose a group element as ``u · exp(X) · exp(Z) · v``.

    Stage one drives the squared distance between ``ζ*ζ`` and
    ``η*·exp(2X)·η`` to zero over the enlarged chart ``η``; stage two solves
    ``exp(Z*)·exp(2X)·exp(Z) = (v*)⁻¹·ζ*ζ·v⁻¹`` for ``Z`` and the group
    factor.  Deterministic multi-start; restarts are compared through the
    fiber norm ``‖X‖``.

    ``require_unique`` controls whether disagreeing restarts raise (the
    decomposition is provably unique in the strictly-horocyclic case, so
    that is the default) or are merely reported via ``restarts_agree``.
    """
    if require_unique is None:
        require_unique = structure.strict_horocyclic
    zm = _as_matrix(zeta)
    _check_group_membership(zm, structure)
    n = structure.size
    a_mat = zm.conj().T @ zm

    nf = structure.fiber_dim
    np_env = len(structure.envelope_herm_basis)
    nn_env = 2 * len(structure.envelope_nil_basis)
    nl = 2 * structure.complement_dim
    nn_v = 2 * len(structure.nil_basis)
    np_v = len(structure.herm_basis)

    def stage_a_objective(x: np.ndarray) -> float:
        x_mat = _combo(x[:nf], structure.fiber_basis, n)
        p_mat = _combo(x[nf : nf + np_env], structure.envelope_herm_basis, n)
        n_mat = _complex_combo(x[nf + np_env :], structure.envelope_nil_basis, n)
        eta = scipy.linalg.expm(n_mat) @ scipy.linalg.expm(p_mat)
        target = eta.conj().T @ scipy.linalg.expm(2.0 * x_mat) @ eta
        return _dist_sq_spd(a_mat, target)

    def stage_b_residual(y: np.ndarray) -> np.ndarray:
        x_mat = _combo(y[:nf], structure.fiber_basis, n)
        z_mat = _complex_combo(y[nf : nf + nl], structure.complement_basis, n)
        yn = y[nf + nl : nf + nl + nn_v]
        yp = y[nf + nl + nn_v :]
        _, vinv = _group_factor(yp, yn, structure)
        ez = scipy.linalg.expm(z_mat)
        lhs = ez.conj().T @ scipy.linalg.expm(2.0 * x_mat) @ ez
        rhs = vinv.conj().T @ a_mat @ vinv
        diff = lhs - rhs
        return np.concatenate([diff.real.ravel(), diff.imag.ravel()])

    best = None
    converged_norms: list[float] = []
    for restart in range(max_restarts):
        rng = np.random.default_rng([seed, restart])
        if restart == 0:
            xa0 = np.zeros(nf + np_env + nn_env)
        else:
            xa0 = 0.3 * rng.standard_normal(nf + np_env + nn_env)
        res_a = scipy.optimize.minimize(
            stage_a_objective,
            xa0,
            method="L-BFGS-B",
            options={"maxiter": 1000, "ftol": 1e-16, "gtol": 1e-12},
        )
        x_coords = res_a.x[:nf]

        # Second stage refines the foot point together with the remaining
        # factors: the matrix equation pins the whole parameter vector, and
        # a least-squares solve polishes it to machine precision.
        yb0 = np.zeros(nf + nl + nn_v + np_v)
        yb0[:nf] = x_coords
        if restart > 0:
            yb0[nf:] = 0.3 * rng.standard_normal(nl + nn_v + np_v)
        res_b = scipy.optimize.least_squares(
            stage_b_residual,
            yb0,
            method="lm" if (nf + nl + nn_v + np_v) <= 2 * n * n else "trf",
            xtol=1e-15,
            ftol=1e-15,
            gtol=1e-15,
            max_nfev=4000,
        )
        y = res_b.x
        x_mat = _combo(y[:nf], structure.fiber_basis, n)
        z_mat = _complex_combo(y[nf : nf + nl], structure.complement_basis, n)
        yn = y[nf + nl : nf + nl + nn_v]
        yp = y[nf + nl + nn_v :]
        v, vinv = _group_factor(yp, yn, structure)
        u_raw = zm @ vinv @ scipy.linalg.expm(-z_mat) @ scipy.linalg.expm(-x_mat)
        try:
            u, _ = polar_decompose(u_raw)
        except ValueError:
            continue
        recon = u @ scipy.linalg.expm(x_mat) @ scipy.linalg.expm(z_mat) @ v
        residual = float(np.linalg.norm(zm - recon))
        v_params = np.concatenate([yp, yn])
        candidate = (residual, restart, u, x_mat, z_mat, v_params, v)
        if residual <= tol * _scale(zm):
            converged_norms.append(float(np.linalg.norm(x_mat)))
        if best is None or residual < best[0]:
            best = candidate

    if best is None or best[0] > tol * _scale(zm):
        raise NonConvergenceError("non-convergent")

    agree = _check_restart_agreement(converged_norms, agree_tol, require_unique)
    residual, _, u, x_mat, z_mat, v_params, v = best
    return MostowDecomposition(
        u=u,
        X=x_mat,
        Z=z_mat,
        v_params=v_params,
        residual=residual,
        restarts_agree=agree,
        v_matrix=v,
    )


# --------------------------------------------------------------------------
# exhaustion function
# --------------------------------------------------------------------------


def _phi_minimize(
    a_mat: np.ndarray,
    structure: MostowStructure,
    restarts: int,
    seed: int,
    y0: np.ndarray | None = None,
) -> tuple[float, np.ndarray]:
    """min over the group-factor chart of dist²(ζ*ζ, v*v); returns (value, argmin)."""
    n = structure.size
    nn_v = 2 * len(structure.nil_basis)
    np_v = len(structure.herm_basis)
    dim = nn_v + np_v

    def objective(y: np.ndarray) -> float:
        v, _ = _group_factor(y[nn_v:], y[:nn_v], structure)
        return _dist_sq_spd(a_mat, v.conj().T @ v)

    if dim == 0:
        return objective(np.zeros(0)), np.zeros(0)

    best_val = math.inf
    best_y = np.zeros(dim)
    any_success = False
    starts: list[np.ndarray] = []
    if y0 is not None:
        starts.append(np.array(y0, dtype=float))
    else:
        starts.append(np.zeros(dim))
        for r in range(1, max(1, restarts)):
            rng = np.random.default_rng([seed, r])
            starts.append(0.5 * rng.standard_normal(dim))
    for start in starts:
        res = scipy.optimize.minimize(
            objective,
            start,
            method="L-BFGS-B",
            options={"maxiter": 1000, "ftol": 1e-16, "gtol": 1e-12},
        )
        any_success = any_success or bool(res.success) or res.fun < best_val
        if res.fun < best_val:
            best_val = float(res.fun)
            best_y = res.x
    if not math.isfinite(best_val) or not any_success:
        raise NonConvergenceError("non-convergent")
    return best_val, best_y


def exhaustion_phi(
    zeta,
    structure: MostowStructure,
    restarts: int = 4,
    seed: int = 0,
    cross_check: bool = False,
) -> float:
    """Quarter of the squared distance from ``ζ*ζ`` to the orbit
    ``{v*v : v in the group factor}`` — the exhaustion value of the coset."""
    zm = _as_matrix(zeta)
    _check_group_membership(zm, structure)
    a_mat = zm.conj().T @ zm
    value, _ = _phi_minimize(a_mat, structure, restarts, seed)
    phi = 0.25 * value
    if cross_check and structure.horocyclic and structure.complement_dim == 0:
        md = mostow_decompose(zm, structure, seed=seed)
        expected = md.fiber_norm**2
        if abs(phi - expected) > max(1e-7, 1e-6 * expected):
            raise ArithmeticError("exhaustion cross-check failed")
    return phi


# --------------------------------------------------------------------------
# minor-determinant inequality
# --------------------------------------------------------------------------


def minor_log_inequality(h) -> tuple[float, float, bool]:
    """Compare ``Σ log²λ_ℓ(h)`` with ``Σ log²(D_ℓ/D_{ℓ−1})`` of the leading
    principal minors.  The first dominates, strictly unless ``h`` is diagonal."""
    hm = _point_matrix(h)
    w = np.linalg.eigvalsh(hm)
    lhs = float(np.sum(np.log(w) ** 2))
    chol = np.linalg.cholesky(hm)
    diag = np.real(np.diag(chol))
    rhs = float(np.sum((2.0 * np.log(diag)) ** 2))
    off = hm - np.diag(np.diag(hm))
    strict = bool(
        np.linalg.norm(off) > 1e-9 * _scale(hm) and (lhs - rhs) > 1e-12
    )
    return lhs, rhs, strict


# --------------------------------------------------------------------------
# vanishing-field search
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class CounterexampleReport:
    """A field ``θ_{Z+Y}`` that vanishes at ``t = 1`` but not at ``t = 0``,
    with ``Z`` nilpotent and ``[H, Y]`` trace-orthogonal to ``Z``."""

    lambda1: float
    lambda2: float
    a: float
    b: float
    c: float
    Y: np.ndarray
    Z: np.ndarray
    residuals: dict


def _counterexample_lhs(lam1: float, lam2: float, a: float, b: float, c: float) -> float:
    ab = a * b
    e1, e2 = math.exp(lam1), math.exp(lam2)
    e3 = math.exp(-lam1 - lam2)
    term1 = ((lam2 - lam1) / (e2 - e1)) * (
        a * a * e1 + ab * (e1 + e2) + b * b * e2
    )
    term2 = ((lam1 + 2.0 * lam2) / (e2 - e3)) * (
        c * c * e2 - ab * (e2 + e3) + (ab * ab) / (c * c) * e3
    )
    return term1 + term2


def counterexample_search(
    seed: int = 0, residual_tol: float = 1e-10
) -> CounterexampleReport:
    """Find real parameters ``(λ₁, λ₂, a, b, c)`` with ``ab > 0`` making the
    one-variable reduction vanish, and assemble the witnessing matrices."""
    rng = np.random.default_rng(seed)
    lam1 = 0.5 + 0.5 * float(rng.random())
    a = 3.0 + float(rng.random())
    b = 1.0
    c = 1.0

    f = lambda lam2: _counterexample_lhs(lam1, lam2, a, b, c)
    lo = -lam1 / 2.0 + 0.05
    hi = None
    prev = f(lo)
    step = 0.25
    x = lo
    while x < 60.0:
        x_next = x + step
        cur = f(x_next)
        if prev > 0.0 >= cur or prev >= 0.0 > cur:
            hi = x_next
            break
        x, prev = x_next, cur
    if hi is None or prev <= 0.0:
        raise NonConvergenceError("no root found")
    lam2 = float(scipy.optimize.brentq(f, x, hi, xtol=1e-15, rtol=8.9e-16))

    lam3 = -lam1 - lam2
    d = -(a * b) / c
    e1, e2, e3 = math.exp(lam1), math.exp(lam2), math.exp(lam3)
    alpha = (a * e1 + b * e2) / (e2 - e1)
    beta = (c * e2 + d * e3) / (e3 - e2)

    h = np.diag([lam1, lam2, lam3]).astype(complex)
    z = np.array([[0, a, 0], [b, 0, c], [0, d, 0]], dtype=complex)
    y = np.array(
        [[0, alpha, 0], [-alpha, 0, beta], [0, -beta, 0]], dtype=complex
    )

    gamma1 = scipy.linalg.expm(h)
    theta1 = _theta(z + y, gamma1)
    theta0 = (z + y) + (z + y).conj().T
    hy = h @ y - y @ h

    # The float entries are exact rationals, so cube the matrix in exact
    # arithmetic: the structural cancellations (a·b·c⁻¹ terms) are then
    # genuinely zero rather than FMA rounding residue.
    from fractions import Fraction

    zf = [[Fraction(float(np.real(z[i, j]))) for j in range(3)] for i in range(3)]
    z2 = [
        [sum(zf[i][k] * zf[k][j] for k in range(3)) for j in range(3)]
        for i in range(3)
    ]
    z3 = [
        [sum(z2[i][k] * zf[k][j] for k in range(3)) for j in range(3)]
        for i in range(3)
    ]
    nilpotency = math.sqrt(float(sum(val * val for row in z3 for val in row)))

    residuals = {
        "system": abs(f(lam2)),
        "theta_at_one": float(np.linalg.norm(theta1)),
        "theta_at_zero": float(np.linalg.norm(theta0)),
        "orthogonality": abs(complex(np.trace(hy @ z))),
        "nilpotency": nilpotency,
    }
    if residuals["system"] > residual_tol:
        raise NonConvergenceError("no root found")
    return CounterexampleReport(
        lambda1=lam1, lambda2=lam2, a=a, b=b, c=c, Y=y, Z=z, residuals=residuals
    )


# --------------------------------------------------------------------------
# finite-difference complex Hessian probe
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class HessianProbe:
    """Signs of second differences of the exhaustion along supplied
    holomorphic directions."""

    positive: int
    negative: int
    zero: int
    values: tuple[float, ...]
    step: float
    gap: float


def phi_levi_probe(
    zeta,
    structure: MostowStructure,
    directions: Iterable[np.ndarray],
    step: float = 1e-3,
    gap_tol: float = 1e-4,
    seed: int = 0,
    restarts: int = 4,
) -> HessianProbe:
    """Second-difference estimate of the complex Hessian of the exhaustion
    at ``[ζ]`` along each holomorphic direction ``s ↦ ζ·exp(sW)``."""
    if step * step * gap_tol < 1e-12:
        raise ArithmeticError("step too small / noise-dominated")
    zm = _as_matrix(zeta)
    _check_group_membership(zm, structure)
    a_mat = zm.conj().T @ zm
    base_val, base_y = _phi_minimize(a_mat, structure, restarts, seed)
    if 0.25 * base_val <= 1e-10:
        raise ValueError("exhaustion not positive at base point")

    def warm_phi(point: np.ndarray) -> float:
        val, _ = _phi_minimize(
            point.conj().T @ point, structure, 1, seed, y0=base_y
        )
        return 0.25 * val

    phi0 = 0.25 * base_val
    values: list[float] = []
    for w in directions:
        wm = _as_matrix(w)
        if np.linalg.norm(wm) == 0.0:
            values.append(0.0)
            continue
        total = 0.0
        for shift in (step, -step, 1j * step, -1j * step):
            total += warm_phi(zm @ scipy.linalg.expm(shift * wm))
        values.append((total - 4.0 * phi0) / (4.0 * step * step))

    pos = sum(1 for v in values if v > gap_tol)
    neg = sum(1 for v in values if v < -gap_tol)
    zero = len(values) - pos - neg
    return HessianProbe(
        positive=pos,
        negative=neg,
        zero=zero,
        values=tuple(values),
        step=step,
        gap=gap_tol,
    )
