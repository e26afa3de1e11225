"""Structure theory of matrix Lie subalgebras of the ambient algebra.

Everything here is exact: radicals come from trace-form orthogonality,
nilpotent radicals from simultaneous triangularization over the Gaussian
rationals (failing loudly when an eigenvalue leaves Q(i)), and reductive
decompositions are verified dimension identities, never numerics.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import sympy

from .ambient import AmbientAlgebra
from .errors import ClosureError, IrrationalWeightsError
from .exact import (
    QI,
    QI_ONE,
    QI_ZERO,
    ExactMatrix,
    Subspace,
    VectorSpan,
    bracket,
    bracket_space,
    charpoly,
    linear_combination,
    semisimple_part,
    solve_kernel,
    squarefree_part,
    subspace_intersect,
    _poly_eval_matrix,
)

__all__ = [
    "Subalgebra",
    "NReductiveVerdict",
    "make_subalgebra",
    "subalgebra_from_space",
    "radical",
    "nr",
    "conj",
    "levi_intersection",
    "is_n_reductive",
    "normalizer",
    "jordan_flags",
    "rational_roots",
]


@dataclass(frozen=True)
class NReductiveVerdict:
    """Outcome of the reductive-complement test, with witnesses."""

    ok: bool
    nilpotent_part: Subspace
    reductive_part: Subspace


class Subalgebra:
    """A bracket-closed complex subspace of the ambient algebra.

    Instances are interned per (ambient, space): construct them through
    :func:`make_subalgebra`, :func:`subalgebra_from_space`, or the ambient
    helpers so caches are shared.
    """

    def __init__(self, ambient: AmbientAlgebra, space: Subspace, _token=None):
        if _token is not _INTERN_TOKEN:
            raise TypeError(
                "use make_subalgebra/subalgebra_from_space to create Subalgebra"
            )
        self.ambient = ambient
        self.space = space
        self._cache: dict[str, object] = {}

    # -- basic queries ---------------------------------------------------------
    @property
    def dim(self) -> int:
        return self.space.dim

    def basis(self) -> list[ExactMatrix]:
        return self.space.basis()

    def contains(self, x: ExactMatrix) -> bool:
        return self.space.contains_mat(x)

    def contains_space(self, s: Subspace) -> bool:
        return self.space.contains_space(s)

    def __repr__(self) -> str:
        return f"Subalgebra(dim={self.dim}, ambient={self.ambient.describe()})"

    # -- cached structure -------------------------------------------------------
    @property
    def derived_series(self) -> tuple[Subspace, ...]:
        """[v, [v,v], [[v,v],[v,v]], ...] down to its fixed point."""
        if "derived_series" not in self._cache:
            chain = [self.space]
            while chain[-1].dim:
                nxt = bracket_space(chain[-1], chain[-1])
                if nxt == chain[-1]:
                    break
                chain.append(nxt)
            self._cache["derived_series"] = tuple(chain)
        return self._cache["derived_series"]  # type: ignore[return-value]

    @property
    def derived(self) -> Subspace:
        series = self.derived_series
        return series[1] if len(series) > 1 else series[0]

    @property
    def radical(self) -> Subspace:
        """The maximal solvable ideal, via trace-form orthogonality.

        rad(v) = {X in v : tr(X Y) = 0 for all Y in [v, v]}, which is the
        radical for matrix Lie algebras in characteristic zero.  The result
        is verified: it is an ideal, it is solvable, and the quotient has
        nondegenerate Killing form.
        """
        if "radical" not in self._cache:
            rad = self._compute_radical()
            self._verify_radical(rad)
            self._cache["radical"] = rad
        return self._cache["radical"]  # type: ignore[return-value]

    @property
    def nr(self) -> Subspace:
        """The nilpotent elements of the radical (an ideal of v)."""
        if "nr" not in self._cache:
            self._cache["nr"] = self._compute_nr()
        return self._cache["nr"]  # type: ignore[return-value]

    @property
    def conj(self) -> "Subalgebra":
        """The σ-image (entrywise −X* on a basis)."""
        if "conj" not in self._cache:
            image = self.ambient.conj_space(self.space)
            self._cache["conj"] = subalgebra_from_space(self.ambient, image)
        return self._cache["conj"]  # type: ignore[return-value]

    @property
    def levi_part(self) -> "Subalgebra":
        """L(v) = v ∩ σ(v): reductive, σ-stable, bracket-closed."""
        if "levi_part" not in self._cache:
            inter = subspace_intersect(self.space, self.conj.space)
            self._cache["levi_part"] = subalgebra_from_space(self.ambient, inter)
        return self._cache["levi_part"]  # type: ignore[return-value]

    @property
    def is_sigma_stable(self) -> bool:
        return self.conj.space == self.space

    @property
    def compact_intersection(self) -> Subspace:
        """v ∩ k0 as a real subspace (coordinates doubled)."""
        if "compact_intersection" not in self._cache:
            self._cache["compact_intersection"] = subspace_intersect(
                self.space.realify(), self.ambient.k0
            )
        return self._cache["compact_intersection"]  # type: ignore[return-value]

    @property
    def n_reductive_verdict(self) -> NReductiveVerdict:
        if "n_reductive_verdict" not in self._cache:
            nil = self.nr
            red = self.levi_part.space
            ok = (
                nil.dim + red.dim == self.dim
                and subspace_intersect(nil, red).dim == 0
                and nil.sum(red) == self.space
            )
            self._cache["n_reductive_verdict"] = NReductiveVerdict(ok, nil, red)
        return self._cache["n_reductive_verdict"]  # type: ignore[return-value]

    @property
    def is_splittable(self) -> bool:
        """True when both Jordan summands of every element stay inside."""
        if "is_splittable" not in self._cache:
            self._cache["is_splittable"] = all(
                self.contains(semisimple_part(x)) for x in self.basis()
            )
        return self._cache["is_splittable"]  # type: ignore[return-value]

    # -- internals ----------------------------------------------------------------
    def _compute_radical(self) -> Subspace:
        mats = self.basis()
        if not mats:
            return self.ambient.zero_space()
        derived = self.derived
        rows = []
        for y in derived.basis():
            rows.append(tuple(self.ambient.beta(x, y) for x in mats))
        coeffs = solve_kernel(rows, len(mats))
        rad_mats = [_combine(mats, c) for c in coeffs]
        return Subspace.span(rad_mats, self.ambient.n)

    def _verify_radical(self, rad: Subspace) -> None:
        if rad.dim and not rad.contains_space(
            bracket_space(self.space, rad)
        ):
            raise ArithmeticError("radical verification failed: not an ideal")
        # solvability of the candidate
        cur = rad
        for _ in range(rad.dim + 1):
            if cur.dim == 0:
                break
            nxt = bracket_space(cur, cur)
            if nxt == cur:
                raise ArithmeticError("radical verification failed: not solvable")
            cur = nxt
        # semisimplicity of the quotient: Killing form has full rank
        m, ad_tables = _quotient_structure(self.space, rad)
        if m == 0:
            return
        killing_rows = []
        for i in range(m):
            row = []
            for j in range(m):
                acc = QI_ZERO
                for (a, b), cij in ad_tables[i].items():
                    other = ad_tables[j].get((b, a))
                    if other is not None:
                        acc = acc + cij * other
                row.append(acc)
            killing_rows.append(tuple(row))
        if VectorSpan(killing_rows, m).dim != m:
            raise ArithmeticError(
                "radical verification failed: quotient Killing form degenerate"
            )

    def _compute_nr(self) -> Subspace:
        rad = self.radical
        if rad.dim == 0:
            return self.ambient.zero_space()
        weights = _triangular_weights(rad.basis(), self.ambient.n)
        coeffs = solve_kernel(weights, rad.dim)
        mats = [_combine(rad.basis(), c) for c in coeffs]
        out = Subspace.span(mats, self.ambient.n)
        # post-verification: nilpotent basis, ideal, contains rad ∩ derived
        for x in out.basis():
            if not x.is_nilpotent():
                raise ArithmeticError("triangularization produced a non-nilpotent")
        if out.dim and not out.contains_space(bracket_space(self.space, out)):
            raise ArithmeticError("nilpotent radical is not an ideal")
        radn = subspace_intersect(rad, self.derived)
        if not out.contains_space(radn):
            raise ArithmeticError("nilpotent radical misses rad ∩ derived")
        return out


_INTERN_TOKEN = object()


def _quotient_structure(space: Subspace, rad: Subspace):
    """Sparse adjoint tables of the quotient algebra space/rad.

    The quotient basis consists of the canonical rows of ``space`` whose
    pivots are not pivots of ``rad``.  Returns (m, tables) where tables[i]
    maps (k, j) to the coefficient of basis element k in [m_i, m_j] mod rad.
    """
    rad_pivots = set(rad.pivots)
    comp_rows = [
        row for row, p in zip(space.rows, space.pivots) if p not in rad_pivots
    ]
    comp_pivots = [p for p in space.pivots if p not in rad_pivots]
    m = len(comp_rows)
    if m == 0:
        return 0, []
    mats = [space._mat_of(row) for row in comp_rows]
    tables = []
    for i in range(m):
        table: dict[tuple[int, int], QI] = {}
        for j in range(m):
            if i == j:
                continue
            reduced = rad.reduce_vec(bracket(mats[i], mats[j]).flatten())
            for k, p in enumerate(comp_pivots):
                c = reduced[p]
                if c:
                    table[(k, j)] = c
        tables.append(table)
    return m, tables


def _combine(mats: list[ExactMatrix], coeffs) -> ExactMatrix:
    return linear_combination(mats, list(coeffs))


def subalgebra_from_space(
    ambient: AmbientAlgebra, space: Subspace, *, verified: bool = False
) -> Subalgebra:
    """Interned constructor; verifies bracket closure unless ``verified``."""
    cached = ambient._subalgebras.get(space)
    if cached is not None:
        return cached  # type: ignore[return-value]
    if not ambient.contains_space(space):
        raise ValueError("not inside ambient")
    if not verified:
        mats = space.basis()
        for i in range(len(mats)):
            for j in range(i + 1, len(mats)):
                w = bracket(mats[i], mats[j])
                if not space.contains_mat(w):
                    raise ClosureError(
                        "not closed under bracket", left=mats[i], right=mats[j]
                    )
    sub = Subalgebra(ambient, space, _token=_INTERN_TOKEN)
    ambient._subalgebras[space] = sub
    return sub


def make_subalgebra(
    ambient: AmbientAlgebra,
    generators,
    mode: str = "require_closed",
) -> Subalgebra:
    """Build a subalgebra from generating matrices.

    ``require_closed`` raises :class:`ClosureError` when the span is not
    bracket-closed; ``close_up`` iterates span ← span + [span, span] to a
    fixed point first.
    """
    gens = list(generators)
    for g in gens:
        if not ambient.contains(g):
            raise ValueError("not inside ambient")
    space = Subspace.span(gens, ambient.n)
    if mode == "require_closed":
        return subalgebra_from_space(ambient, space)
    if mode == "close_up":
        while True:
            nxt = space.sum(bracket_space(space, space))
            if nxt == space:
                break
            space = nxt
        return subalgebra_from_space(ambient, space, verified=True)
    raise ValueError(f"unknown mode: {mode!r}")


# ---------------------------------------------------------------------------
# Operations (module-level API mirroring the cached properties)
# ---------------------------------------------------------------------------


def radical(v: Subalgebra) -> Subspace:
    return v.radical


def nr(v: Subalgebra) -> Subspace:
    return v.nr


def conj(v: Subalgebra) -> Subalgebra:
    return v.conj


def levi_intersection(v: Subalgebra) -> Subalgebra:
    return v.levi_part


def is_n_reductive(v: Subalgebra) -> NReductiveVerdict:
    return v.n_reductive_verdict


def normalizer(ambient: AmbientAlgebra, s: Subspace) -> Subalgebra:
    """N_k(s) = {Z in k : [Z, s] ⊆ s}; always bracket-closed."""
    if s.real:
        raise ValueError("ambient mismatch")
    if not ambient.contains_space(s):
        raise ValueError("not inside ambient")
    kmats = ambient.space.basis()
    ncols = len(kmats)
    rows = []
    for y in s.basis():
        # reduce_vec is linear in its argument, so residues of the basis
        # brackets assemble into a linear system for the coefficients
        reduced_cols = [s.reduce_vec(bracket(x, y).flatten()) for x in kmats]
        width = len(reduced_cols[0]) if reduced_cols else 0
        for coord in range(width):
            if any(rc[coord] for rc in reduced_cols):
                rows.append(tuple(rc[coord] for rc in reduced_cols))
    coeffs = solve_kernel(rows, ncols)
    mats = [_combine(kmats, c) for c in coeffs]
    space = Subspace.span(mats, ambient.n)
    return subalgebra_from_space(ambient, space, verified=True)


def jordan_flags(x: ExactMatrix, ambient: AmbientAlgebra | None = None) -> str:
    """Classify an element as semisimple, nilpotent, or mixed (exactly)."""
    if ambient is not None and not ambient.contains(x):
        raise ValueError("not inside ambient")
    if not x.is_square:
        raise ValueError("incompatible shapes")
    if x.is_zero:
        return "semisimple"
    if x.is_nilpotent():
        return "nilpotent"
    fs = squarefree_part(charpoly(x))
    if _poly_eval_matrix(fs, x).is_zero:
        return "semisimple"
    return "mixed"


# ---------------------------------------------------------------------------
# Triangularization machinery (weights of a solvable algebra)
# ---------------------------------------------------------------------------


def rational_roots(poly) -> list[QI]:
    """Gaussian-rational roots of an exact polynomial (leading coeff first).

    Returns the distinct roots contributed by the linear factors of the
    factorization over Q(i); nonlinear irreducible factors are ignored.
    """
    t = sympy.Symbol("t")
    expr = sympy.Integer(0)
    deg = len(poly) - 1
    for idx, c in enumerate(poly):
        coeff = sympy.Rational(c.re.numerator, c.re.denominator) + sympy.I * (
            sympy.Rational(c.im.numerator, c.im.denominator)
        )
        if coeff != 0:
            expr += coeff * t ** (deg - idx)
    if expr == 0:
        raise ValueError("zero polynomial has no finite root list")
    p = sympy.Poly(expr, t, domain="QQ_I")
    roots = []
    for fac, _mult in p.factor_list()[1]:
        if fac.degree() == 1:
            coeffs = fac.all_coeffs()
            root = -coeffs[1] / coeffs[0]
            re, im = root.as_real_imag()
            roots.append(
                QI(
                    Fraction(int(re.p), int(re.q)),
                    Fraction(int(im.p), int(im.q)),
                )
            )
    roots.sort(key=lambda r: (r.re, r.im))
    out = []
    for r in roots:
        if not out or out[-1] != r:
            out.append(r)
    return out


def _structure_table(mats: list[ExactMatrix], space: Subspace):
    """T[a][b] = coordinates of [m_a, m_b] in the canonical basis of space."""
    k = len(mats)
    table = [[None] * k for _ in range(k)]
    for a in range(k):
        for b in range(a + 1, k):
            coords = space.coordinates_of(bracket(mats[a], mats[b]))
            table[a][b] = coords
            table[b][a] = [-c for c in coords]
        table[a][a] = [QI_ZERO] * k
    return table


def _abstract_bracket(x, y, table, k):
    out = [QI_ZERO] * k
    for a in range(k):
        ca = x[a]
        if not ca:
            continue
        for b in range(k):
            cb = y[b]
            if not cb:
                continue
            tab = table[a][b]
            scale = ca * cb
            for c in range(k):
                if tab[c]:
                    out[c] = out[c] + scale * tab[c]
    return tuple(out)


def _restricted_matrix(big: ExactMatrix, basis_span: VectorSpan) -> ExactMatrix:
    """Matrix of a linear map restricted to an invariant VectorSpan."""
    d = basis_span.dim
    cols = []
    for row in basis_span.rows:
        image = [QI_ZERO] * big.rows
        for j, c in enumerate(row):
            if c:
                for i in range(big.rows):
                    e = big.entries[i][j]
                    if e:
                        image[i] = image[i] + c * e
        cols.append(basis_span.coordinates_of(image))
    return ExactMatrix([[cols[j][i] for j in range(d)] for i in range(d)])


def _joint_weight_space(alg_rows, act, w_span, table, k):
    """Full joint eigenspace of a solvable algebra inside an invariant span.

    ``alg_rows``: coefficient vectors (over the ambient solvable algebra's
    basis) spanning the current subalgebra; ``act``: coefficient vector →
    action matrix on the current quotient coordinates; ``w_span``: a span
    invariant under the whole algebra.  Returns (subspan, pairs) where pairs
    lists (coefficient vector, eigenvalue) for a basis of the subalgebra.
    """
    if not alg_rows:
        return w_span, []
    dim_a = len(alg_rows)
    der_vecs = []
    for i in range(dim_a):
        for j in range(i + 1, dim_a):
            der_vecs.append(
                _abstract_bracket(alg_rows[i], alg_rows[j], table, k)
            )
    der = VectorSpan(der_vecs, k)
    if der.dim >= dim_a:
        raise ArithmeticError("weight search requires a solvable algebra")
    target = dim_a - 1
    h_span = der
    for r in alg_rows:
        if h_span.dim == target:
            break
        if not h_span.contains(r):
            h_span = h_span.extended([r])
    z_row = next(r for r in alg_rows if not h_span.contains(r))
    w_h, pairs = _joint_weight_space(list(h_span.rows), act, w_span, table, k)
    z_big = act(z_row)
    z_small = _restricted_matrix(z_big, w_h)
    roots = rational_roots(charpoly(z_small))
    if not roots:
        raise IrrationalWeightsError("irrational weights")
    mu = roots[0]
    d = z_small.rows
    shifted = [
        tuple(
            z_small.entries[i][j] - (mu if i == j else QI_ZERO)
            for j in range(d)
        )
        for i in range(d)
    ]
    kernel = solve_kernel(shifted, d)
    lifted = []
    for kv in kernel:
        vec = [QI_ZERO] * w_h.width
        for c, brow in zip(kv, w_h.rows):
            if c:
                vec = [a + c * b for a, b in zip(vec, brow)]
        lifted.append(tuple(vec))
    w_star = VectorSpan(lifted, w_h.width)
    return w_star, pairs + [(z_row, mu)]


def _triangular_weights(rad_mats: list[ExactMatrix], n: int):
    """Weights of a simultaneous triangularization of a solvable algebra.

    Returns one functional per flag chunk, as a coefficient row over the
    given basis; an element is nilpotent iff every functional vanishes on it.
    """
    k = len(rad_mats)
    rad_space = Subspace.span(rad_mats, n)
    mats = rad_space.basis()
    table = _structure_table(mats, rad_space)
    identity_rows = [
        tuple(QI_ONE if a == b else QI_ZERO for b in range(k)) for a in range(k)
    ]
    accumulated = VectorSpan([], n)
    weights = []
    while accumulated.dim < n:
        pivot_set = set(accumulated.pivots)
        comp = [c for c in range(n) if c not in pivot_set]
        m = len(comp)

        action_mats = []
        for r in mats:
            cols = []
            for c in comp:
                full = [r.entries[i][c] for i in range(n)]
                reduced = _reduce_exact(accumulated, full)
                cols.append([reduced[p] for p in comp])
            action_mats.append(
                ExactMatrix([[cols[j][i] for j in range(m)] for i in range(m)])
            )

        def act(coeff_vec):
            if not action_mats:
                return ExactMatrix.zeros(m)
            return linear_combination(action_mats, list(coeff_vec))

        full_span = VectorSpan(
            [tuple(QI_ONE if i == j else QI_ZERO for j in range(m)) for i in range(m)],
            m,
        )
        w_star, pairs = _joint_weight_space(
            identity_rows, act, full_span, table, k
        )
        if w_star.dim == 0:
            raise ArithmeticError("weight search lost the eigenspace")
        # weight functional on the canonical basis: lambda = mu^T M^{-1}
        mat_rows = [list(p[0]) for p in pairs]
        m_inv = ExactMatrix(mat_rows).transpose().inverse()
        mu_vec = [p[1] for p in pairs]
        lam = []
        for a in range(k):
            acc = QI_ZERO
            for i in range(k):
                acc = acc + mu_vec[i] * m_inv.entries[i][a]
            lam.append(acc)
        weights.append(tuple(lam))
        lifted = []
        for row in w_star.rows:
            full = [QI_ZERO] * n
            for pos, val in zip(comp, row):
                full[pos] = val
            lifted.append(tuple(full))
        before = accumulated.dim
        accumulated = accumulated.extended(lifted)
        if accumulated.dim != before + w_star.dim:
            raise ArithmeticError("flag chunks failed to stay independent")
    # express functionals over the ORIGINAL basis order if it differs
    if mats != rad_mats:
        converted = []
        for lam in weights:
            vals = []
            for orig in rad_mats:
                coords = rad_space.coordinates_of(orig)
                acc = QI_ZERO
                for c, l in zip(coords, lam):
                    if c and l:
                        acc = acc + c * l
                vals.append(acc)
            converted.append(tuple(vals))
        weights = converted
    return weights


def _reduce_exact(span: VectorSpan, vec) -> list[QI]:
    work = list(vec)
    for row, col in zip(span.rows, span.pivots):
        c = work[col]
        if c:
            work = [a - c * b for a, b in zip(work, row)]
    return work
