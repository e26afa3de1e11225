"""CR invariants of the homogeneous pair (compact form, subalgebra).

Computes the CR type (dimension, codimension, dual complex-orbit dimension),
the Hermitian and nilpotent fiber factors of the equivariant fibration over
the compact orbit, scalar Levi-form signatures with an exact Witt-index
lower bound, isotropy data of nearby orbits, and the arithmetic window of
cohomology degrees where finiteness transfers.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
import random

from .ambient import AmbientAlgebra
from .errors import ClosureError
from .exact import (
    QI,
    QI_I,
    QI_ZERO,
    ExactMatrix,
    Subspace,
    bracket,
    solve_kernel,
    subspace_intersect,
    subspace_sum,
)
from .parabolic import (
    ParabolicSubalgebra,
    is_admissible_envelope,
    largest_intermediate,
    minimal_envelope,
)
from .structure import Subalgebra, _combine, make_subalgebra

__all__ = [
    "CRType",
    "FiberData",
    "LeviReport",
    "CohomologyRanges",
    "OrbitData",
    "cr_type",
    "default_envelope",
    "fiber_data",
    "levi_report",
    "orbit_data",
    "cohomology_ranges",
]


# ---------------------------------------------------------------------------
# value objects
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CRType:
    """CR dimension, CR codimension, and the dual complex-orbit dimension.

    ``cr_dim`` is the complex dimension of the nilpotent radical of the
    subalgebra, ``cr_codim`` the real codimension of the analytic tangent
    inside the tangent of the compact orbit, and ``complex_orbit_dim`` the
    complex dimension of the dual open orbit; the three satisfy
    ``cr_dim + cr_codim = complex_orbit_dim`` (the embedding is generic).
    """

    cr_dim: int
    cr_codim: int
    complex_orbit_dim: int


@dataclass(frozen=True)
class FiberData:
    """The two fiber factors attached to an envelope choice.

    ``hermitian_part`` is the real space of traceless Hermitian matrices
    trace-orthogonal to the subalgebra plus the envelope's nilradical;
    ``nilpotent_complement`` is the invariant complement of the nilpotent
    radical inside its sum with the envelope's nilradical; ``envelope`` is
    the parabolic the construction used.
    """

    hermitian_part: Subspace
    nilpotent_complement: Subspace
    envelope: ParabolicSubalgebra


@dataclass(frozen=True)
class LeviReport:
    """Sampled scalar Levi-form signatures and the resulting Witt bound.

    ``covector_basis`` spans the characteristic directions (anti-Hermitian
    matrices trace-orthogonal to the subalgebra plus its conjugate); a
    sample with integer coordinates ``c`` denotes the real covector
    ``X ↦ Re tr((Σ c_r S_r) X)``.  ``vector_form`` holds the projections of
    the basic bracket values onto the fixed complement of the subalgebra
    plus its conjugate.  ``witt_lower_bound`` is the minimum over samples of
    ``min(positives, negatives)``.
    """

    vector_form: tuple[tuple[ExactMatrix, ...], ...]
    sampled_signatures: tuple[tuple[tuple[int, ...], int, int], ...]
    witt_lower_bound: int
    covector_basis: tuple[ExactMatrix, ...]


@dataclass(frozen=True)
class CohomologyRanges:
    """Degree windows where cohomology finiteness transfers.

    Pure arithmetic from a concavity level, the CR dimension, and a sheaf
    depth parameter: finiteness holds below ``concavity − sheaf_depth`` and
    above ``cr_dim − concavity``.
    """

    concavity: int
    cr_dim: int
    sheaf_depth: int
    finite_low: range
    finite_high: range


@dataclass(frozen=True)
class OrbitData:
    """Isotropy and conjugation data at a Hermitian displacement.

    ``stabilizer`` is the real space of compact elements of the subalgebra
    commuting with the displacement, ``orbit_dim`` the real dimension of the
    corresponding compact-group orbit, and ``conjugated`` the subalgebra
    moved by the exponential of the displacement — exact when the
    exponential is rational (``exact_conjugation``), otherwise a tuple of
    floating-point basis matrices.
    """

    stabilizer: Subspace
    orbit_dim: int
    conjugated: object
    exact_conjugation: bool


# ---------------------------------------------------------------------------
# small helpers
# ---------------------------------------------------------------------------


def _solve_combination(mats, target: ExactMatrix) -> list[QI] | None:
    """Coefficients expressing ``target`` in ``mats``, or None if outside.

    The expression is found through the kernel of the augmented system, so
    it is exact; when the given matrices are independent it is unique.
    """
    cols = [m.flatten() for m in mats] + [target.flatten()]
    width = len(cols)
    rows = []
    for coord in range(len(cols[0])):
        if any(c[coord] for c in cols):
            rows.append(tuple(c[coord] for c in cols))
    for vec in solve_kernel(rows, width):
        t = vec[-1]
        if t:
            return [-(c / t) for c in vec[:-1]]
    return None


def _trace_complement(ambient: AmbientAlgebra, space: Subspace) -> Subspace:
    """Trace-form orthogonal complement of a complex subspace inside k."""
    kb = ambient.space.basis()
    rows = []
    for u in space.basis():
        row = tuple((x @ u).trace() for x in kb)
        if any(row):
            rows.append(row)
    coeffs = solve_kernel(rows, len(kb))
    return Subspace.span([_combine(kb, c) for c in coeffs], ambient.n)


def _hermitian_signature(h: list[list[QI]]) -> tuple[int, int]:
    """Exact signature of a Hermitian matrix over the Gaussian rationals.

    Symmetric elimination: real diagonal pivots contribute their sign;
    zero-diagonal blocks are consumed through hyperbolic two-by-two pivots,
    each contributing one positive and one negative square.
    """
    m = len(h)
    rows = [list(r) for r in h]
    active = list(range(m))
    pos = neg = 0
    while active:
        piv = next((i for i in active if rows[i][i]), None)
        if piv is not None:
            d = rows[piv][piv]
            if d.re > 0:
                pos += 1
            else:
                neg += 1
            active.remove(piv)
            for i in active:
                ci = rows[i][piv]
                if ci:
                    for j in active:
                        rows[i][j] = rows[i][j] - ci * rows[piv][j] / d
            continue
        hyp = next(
            ((i, j) for i, j in combinations(active, 2) if rows[i][j]), None
        )
        if hyp is None:
            break
        i0, j0 = hyp
        a = rows[i0][j0]
        abar = rows[j0][i0]
        pos += 1
        neg += 1
        active.remove(i0)
        active.remove(j0)
        for i in active:
            bi, bj = rows[i][i0], rows[i][j0]
            if bi or bj:
                for j in active:
                    rows[i][j] = (
                        rows[i][j]
                        - bj * rows[i0][j] / a
                        - bi * rows[j0][j] / abar
                    )
    return pos, neg


def _exact_exp(x: ExactMatrix) -> ExactMatrix:
    """Exponential of a nilpotent matrix, exact over the rationals."""
    n = x.rows
    out = ExactMatrix.identity(n)
    term = ExactMatrix.identity(n)
    factorial = 1
    for k in range(1, n):
        term = term @ x
        if term.is_zero:
            break
        factorial *= k
        out = out + term.scale(QI(Fraction(1, factorial)))
    return out


def _real_kernel_space(
    ambient: AmbientAlgebra, basis_mats, images
) -> Subspace:
    """Real-coefficient combinations of ``basis_mats`` killing the images.

    ``images[r]`` is the flattened constraint value attached to the r-th
    basis matrix; both real and imaginary parts of every coordinate must
    cancel, so the kernel is computed over the reals.
    """
    if not basis_mats:
        return Subspace.zero(ambient.n, real=True)
    width = len(images[0])
    rows = []
    for coord in range(width):
        col = [img[coord] for img in images]
        if any(c.re for c in col):
            rows.append(tuple(QI(c.re) for c in col))
        if any(c.im for c in col):
            rows.append(tuple(QI(c.im) for c in col))
    coeffs = solve_kernel(rows, len(basis_mats))
    return Subspace.span(
        [_combine(basis_mats, c) for c in coeffs], ambient.n, real=True
    )


# ---------------------------------------------------------------------------
# CR type
# ---------------------------------------------------------------------------


def cr_type(v: Subalgebra) -> CRType:
    """CR dimension and codimension of the pair, with the dual dimension."""
    if not v.n_reductive_verdict.ok:
        raise ValueError("not n-reductive")
    amb = v.ambient
    nu = v.nr.dim
    dim_orbit = amb.k0.dim - v.compact_intersection.dim
    d = dim_orbit - 2 * nu
    dual = amb.dim - v.dim
    if nu + d != dual:
        raise ArithmeticError("genericity identity failed")
    return CRType(nu, d, dual)


# ---------------------------------------------------------------------------
# fiber data
# ---------------------------------------------------------------------------


def default_envelope(v: Subalgebra) -> ParabolicSubalgebra:
    """The pipeline's parabolic: minimal envelope of the largest intermediate."""
    return minimal_envelope(largest_intermediate(v))


def fiber_data(v: Subalgebra, q: ParabolicSubalgebra | None = None) -> FiberData:
    """Hermitian and nilpotent fiber factors for an admissible envelope.

    The envelope must admissibly contain the largest intermediate
    subalgebra; when omitted, its minimal envelope is used.
    """
    if not v.n_reductive_verdict.ok:
        raise ValueError("not n-reductive")
    w = largest_intermediate(v)
    if q is None:
        q = minimal_envelope(w)
    if not is_admissible_envelope(w, q):
        raise ValueError("q not in P0(w)")
    amb = v.ambient

    # Hermitian factor: trace-orthogonal to v + n(q) inside the Hermitian part
    vqn = subspace_sum(v.space, q.nilradical)
    p0_basis = amb.p0.basis()
    rows = []
    for u in vqn.basis():
        vals = [(b @ u).trace() for b in p0_basis]
        if any(c.re for c in vals):
            rows.append(tuple(QI(c.re) for c in vals))
        if any(c.im for c in vals):
            rows.append(tuple(QI(c.im) for c in vals))
    coeffs = solve_kernel(rows, len(p0_basis))
    f0 = Subspace.span(
        [_combine(p0_basis, c) for c in coeffs], amb.n, real=True
    )

    # nilpotent factor: invariant complement of nr(v) in nr(v) + n(q),
    # orthogonal under the conjugation-invariant product Re tr(X Y*)
    total = subspace_sum(v.nr, q.nilradical)
    big = total.basis()
    lrows = []
    for y in v.nr.basis():
        ystar = y.star()
        row = tuple((m @ ystar).trace() for m in big)
        if any(row):
            lrows.append(row)
    lcoeffs = solve_kernel(lrows, len(big))
    comp = Subspace.span([_combine(big, c) for c in lcoeffs], amb.n)
    if (
        subspace_sum(comp, v.nr) != total
        or subspace_intersect(comp, v.nr).dim != 0
    ):
        raise ArithmeticError("fiber complement construction failed")
    for x in v.compact_intersection.basis():
        for m in comp.basis():
            if not comp.contains_mat(bracket(x, m)):
                raise ArithmeticError("fiber complement is not invariant")
    return FiberData(f0, comp, q)


# ---------------------------------------------------------------------------
# Levi forms
# ---------------------------------------------------------------------------


def _covector_samples(dim: int, grid_density: int, seed: int) -> list[tuple[int, ...]]:
    """Deterministic integer sample coordinates: axes, pairs, seeded points."""
    samples: list[tuple[int, ...]] = []
    for r in range(dim):
        samples.append(tuple(1 if t == r else 0 for t in range(dim)))
    for r, s in combinations(range(dim), 2):
        for sign in (1, -1):
            samples.append(
                tuple(
                    1 if t == r else (sign if t == s else 0) for t in range(dim)
                )
            )
    rng = random.Random(seed)
    for _ in range(2 * dim * max(1, grid_density)):
        vec = tuple(rng.randint(-2, 2) for _ in range(dim))
        if any(vec):
            samples.append(vec)
    seen = set()
    unique = []
    for s in samples:
        if s not in seen:
            seen.add(s)
            unique.append(s)
    return unique


def levi_report(
    v: Subalgebra,
    grid_density: int = 1,
    refinement_steps: int = 2,
    seed: int = 0,
) -> LeviReport:
    """Sampled scalar Levi-form signatures and a Witt-index lower bound.

    Characteristic covectors are parametrized by anti-Hermitian matrices
    trace-orthogonal to the subalgebra plus its conjugate; every sampled
    signature uses exact rational elimination.  Raises when the subalgebra
    plus its conjugate already fills the ambient algebra.
    """
    if not v.n_reductive_verdict.ok:
        raise ValueError("not n-reductive")
    amb = v.ambient
    pair = subspace_sum(v.space, amb.conj_space(v.space))
    if pair == amb.space:
        raise ValueError("empty characteristic space")
    comp = _trace_complement(amb, pair)
    c0 = subspace_intersect(comp.realify(), amb.k0)
    if c0.dim != cr_type(v).cr_codim:
        raise ArithmeticError("characteristic space dimension mismatch")

    zb = v.nr.basis()
    nu = len(zb)
    values = [[bracket(za, amb.sigma(zc)) for zc in zb] for za in zb]

    # vector-valued form: component of each bracket value in the complement
    combined = pair.basis() + comp.basis()
    split = pair.dim
    vector_form = []
    for a in range(nu):
        row = []
        for b in range(nu):
            coeffs = _solve_combination(combined, values[a][b])
            if coeffs is None:
                raise ArithmeticError("vector form projection failed")
            row.append(_combine(comp.basis(), coeffs[split:]))
        vector_form.append(tuple(row))

    # one exact Hermitian matrix per covector-basis direction
    s_basis = c0.basis()
    h_basis = []
    for s in s_basis:
        h = [
            [QI_I * (s @ values[a][b]).trace() for b in range(nu)]
            for a in range(nu)
        ]
        for a in range(nu):
            for b in range(nu):
                if h[a][b] != h[b][a].conj():
                    raise ArithmeticError("scalar Levi form is not Hermitian")
        h_basis.append(h)

    def _signature_at(coords: tuple[int, ...]) -> tuple[int, int]:
        h = [[QI_ZERO] * nu for _ in range(nu)]
        for c, hb in zip(coords, h_basis):
            if c:
                qc = QI(c)
                for a in range(nu):
                    for b in range(nu):
                        h[a][b] = h[a][b] + qc * hb[a][b]
        return _hermitian_signature(h)

    samples = _covector_samples(c0.dim, grid_density, seed)
    recorded = []
    best = None
    for coords in samples:
        p, n = _signature_at(coords)
        recorded.append((coords, p, n))
        if best is None or min(p, n) < min(best[1], best[2]):
            best = (coords, p, n)
    for _ in range(refinement_steps):
        improved = False
        base = best[0]
        for r in range(c0.dim):
            for delta in (1, -1):
                cand = tuple(
                    c + (delta if t == r else 0) for t, c in enumerate(base)
                )
                if not any(cand):
                    continue
                p, n = _signature_at(cand)
                recorded.append((cand, p, n))
                if min(p, n) < min(best[1], best[2]):
                    best = (cand, p, n)
                    improved = True
        if not improved:
            break
    witt = min(min(p, n) for _, p, n in recorded)
    return LeviReport(
        tuple(vector_form), tuple(recorded), witt, tuple(s_basis)
    )


# ---------------------------------------------------------------------------
# orbit data
# ---------------------------------------------------------------------------


def orbit_data(v: Subalgebra, x: ExactMatrix) -> OrbitData:
    """Isotropy, orbit dimension, and conjugated subalgebra at a displacement."""
    fd = fiber_data(v)
    if not fd.hermitian_part.contains_mat(x):
        raise ValueError("X not in f0")
    amb = v.ambient
    compact = v.compact_intersection
    mats = compact.basis()
    images = [bracket(y, x).flatten() for y in mats]
    stab = _real_kernel_space(amb, mats, images)
    orbit_dim = amb.k0.dim - stab.dim

    if x.is_zero:
        return OrbitData(stab, orbit_dim, v, True)
    if x.is_nilpotent():
        g = _exact_exp(x)
        ginv = g.inverse()
        moved = [g @ b @ ginv for b in v.basis()]
        try:
            conj = make_subalgebra(amb, moved)
        except ClosureError as exc:
            raise ArithmeticError("conjugation broke bracket closure") from exc
        return OrbitData(stab, orbit_dim, conj, True)

    import numpy as np
    from scipy.linalg import expm

    g = expm(x.to_numpy())
    ginv = np.linalg.inv(g)
    moved = tuple(g @ b.to_numpy() @ ginv for b in v.basis())
    return OrbitData(stab, orbit_dim, moved, False)


# ---------------------------------------------------------------------------
# cohomology windows
# ---------------------------------------------------------------------------


def cohomology_ranges(
    concavity: int, cr_dim: int, sheaf_depth: int = 0
) -> CohomologyRanges:
    """Arithmetic finiteness windows; no cohomology is computed."""
    if concavity > cr_dim:
        raise ValueError("concavity exceeds CR dimension")
    low = range(0, max(0, concavity - sheaf_depth))
    high = range(cr_dim - concavity + 1, cr_dim + 1)
    return CohomologyRanges(concavity, cr_dim, sheaf_depth, low, high)
