"""Exact linear algebra over the Gaussian rationals.

This module is the deterministic substrate for all structure-theoretic
computations: scalars in Q(i), immutable matrices, canonical-echelon
subspaces of a matrix space (complex-linear or real-linear via coordinate
doubling), commutators, and exact polynomial utilities (characteristic
polynomials, squarefree parts, semisimple parts).

Canonical form
--------------
A :class:`Subspace` always stores the unique reduced row echelon form of its
spanning set with respect to the row-major flattening of ``n x n`` matrices
(for real-linear subspaces, each complex coordinate contributes a real and an
imaginary slot, in that order).  Two subspaces are equal iff their canonical
bases agree entry-wise, which makes equality a syntactic check.

Elimination is performed on Gaussian-integer rows (denominators cleared,
contents reduced) for speed; pivots are normalized to 1 only when the final
canonical rows are assembled.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

__all__ = [
    "QI",
    "ExactMatrix",
    "Subspace",
    "VectorSpan",
    "echelonize",
    "subspace_sum",
    "subspace_intersect",
    "contains",
    "bracket",
    "bracket_space",
    "linear_combination",
    "solve_kernel",
    "charpoly",
    "squarefree_part",
    "semisimple_part",
]

_ZERO = Fraction(0)
_ONE = Fraction(1)


class QI:
    """A Gaussian-rational scalar ``re + im*i`` with exact arithmetic."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", re if isinstance(re, Fraction) else Fraction(re))
        object.__setattr__(self, "im", im if isinstance(im, Fraction) else Fraction(im))

    def __setattr__(self, name, value):  # immutability
        raise AttributeError("QI is immutable")

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other: "QI") -> "QI":
        return QI(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "QI") -> "QI":
        return QI(self.re - other.re, self.im - other.im)

    def __neg__(self) -> "QI":
        return QI(-self.re, -self.im)

    def __mul__(self, other: "QI") -> "QI":
        a, b, c, d = self.re, self.im, other.re, other.im
        return QI(a * c - b * d, a * d + b * c)

    def __truediv__(self, other: "QI") -> "QI":
        c, d = other.re, other.im
        n = c * c + d * d
        if n == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        a, b = self.re, self.im
        return QI((a * c + b * d) / n, (b * c - a * d) / n)

    def conj(self) -> "QI":
        return QI(self.re, -self.im)

    # -- predicates / conversions ------------------------------------------
    @property
    def is_zero(self) -> bool:
        return not self.re and not self.im

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, QI) and self.re == other.re and self.im == other.im
        )

    def __hash__(self) -> int:
        return hash((self.re, self.im))

    def to_complex(self) -> complex:
        return complex(self.re, self.im)

    def __repr__(self) -> str:
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


QI_ZERO = QI(0)
QI_ONE = QI(1)
QI_I = QI(0, 1)


def _qi(value) -> QI:
    """Coerce ints, Fractions, and QI values to QI."""
    if isinstance(value, QI):
        return value
    return QI(value)


class ExactMatrix:
    """An immutable matrix with Gaussian-rational entries."""

    __slots__ = ("rows", "cols", "entries", "_intcache")

    def __init__(self, entries: Sequence[Sequence]):
        grid = tuple(tuple(_qi(e) for e in row) for row in entries)
        if grid and any(len(row) != len(grid[0]) for row in grid):
            raise ValueError("incompatible shapes")
        object.__setattr__(self, "entries", grid)
        object.__setattr__(self, "rows", len(grid))
        object.__setattr__(self, "cols", len(grid[0]) if grid else 0)
        object.__setattr__(self, "_intcache", None)

    def __setattr__(self, name, value):
        raise AttributeError("ExactMatrix is immutable")

    @staticmethod
    def _from_grid(grid: tuple) -> "ExactMatrix":
        """Internal constructor for grids already made of QI tuples."""
        m = ExactMatrix.__new__(ExactMatrix)
        object.__setattr__(m, "entries", grid)
        object.__setattr__(m, "rows", len(grid))
        object.__setattr__(m, "cols", len(grid[0]) if grid else 0)
        object.__setattr__(m, "_intcache", None)
        return m

    def _int_form(self) -> tuple[int, tuple]:
        """Denominator-cleared view ``(den, grid)`` with Gaussian-integer
        entry pairs; cached, since matrices are immutable."""
        cached = self._intcache
        if cached is None:
            den = 1
            for row in self.entries:
                for q in row:
                    dr = q.re.denominator
                    di = q.im.denominator
                    if dr != 1 or di != 1:
                        den = lcm(den, dr, di)
            if den == 1:
                grid = tuple(
                    tuple((q.re.numerator, q.im.numerator) for q in row)
                    for row in self.entries
                )
            else:
                grid = tuple(
                    tuple(
                        (
                            int(q.re.numerator * (den // q.re.denominator)),
                            int(q.im.numerator * (den // q.im.denominator)),
                        )
                        for q in row
                    )
                    for row in self.entries
                )
            cached = (den, grid)
            object.__setattr__(self, "_intcache", cached)
        return cached

    # -- constructors -------------------------------------------------------
    @staticmethod
    def zeros(rows: int, cols: int | None = None) -> "ExactMatrix":
        cols = rows if cols is None else cols
        return ExactMatrix([[QI_ZERO] * cols for _ in range(rows)])

    @staticmethod
    def identity(n: int) -> "ExactMatrix":
        return ExactMatrix(
            [[QI_ONE if i == j else QI_ZERO for j in range(n)] for i in range(n)]
        )

    @staticmethod
    def unit(n: int, i: int, j: int, value=1) -> "ExactMatrix":
        """The matrix with a single entry ``value`` at position ``(i, j)``."""
        grid = [[QI_ZERO] * n for _ in range(n)]
        grid[i][j] = _qi(value)
        return ExactMatrix(grid)

    @staticmethod
    def diagonal(values: Sequence) -> "ExactMatrix":
        n = len(values)
        grid = [[QI_ZERO] * n for _ in range(n)]
        for i, v in enumerate(values):
            grid[i][i] = _qi(v)
        return ExactMatrix(grid)

    # -- algebra -------------------------------------------------------------
    def _check_same_shape(self, other: "ExactMatrix") -> None:
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError("incompatible shapes")

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check_same_shape(other)
        return ExactMatrix(
            [
                [a + b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.entries, other.entries)
            ]
        )

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check_same_shape(other)
        return ExactMatrix(
            [
                [a - b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.entries, other.entries)
            ]
        )

    def __neg__(self) -> "ExactMatrix":
        return ExactMatrix([[-a for a in row] for row in self.entries])

    def scale(self, c) -> "ExactMatrix":
        c = _qi(c)
        return ExactMatrix([[c * a for a in row] for row in self.entries])

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise ValueError("incompatible shapes")
        da, ga = self._int_form()
        db, gb = other._int_form()
        den = da * db
        cols = tuple(zip(*gb))
        grid = []
        for row in ga:
            out_row = []
            for col in cols:
                sre = 0
                sim = 0
                for (a, b), (c, d) in zip(row, col):
                    if (a or b) and (c or d):
                        sre += a * c - b * d
                        sim += a * d + b * c
                out_row.append(
                    QI_ZERO
                    if not (sre or sim)
                    else QI(Fraction(sre, den), Fraction(sim, den))
                )
            grid.append(tuple(out_row))
        return ExactMatrix._from_grid(tuple(grid))

    def star(self) -> "ExactMatrix":
        """Conjugate transpose."""
        return ExactMatrix(
            [
                [self.entries[j][i].conj() for j in range(self.rows)]
                for i in range(self.cols)
            ]
        )

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(
            [[self.entries[j][i] for j in range(self.rows)] for i in range(self.cols)]
        )

    def conj_entries(self) -> "ExactMatrix":
        return ExactMatrix([[a.conj() for a in row] for row in self.entries])

    def trace(self) -> QI:
        if self.rows != self.cols:
            raise ValueError("incompatible shapes")
        acc = QI_ZERO
        for i in range(self.rows):
            acc = acc + self.entries[i][i]
        return acc

    def power(self, k: int) -> "ExactMatrix":
        if self.rows != self.cols:
            raise ValueError("incompatible shapes")
        result = ExactMatrix.identity(self.rows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base if k > 1 else base
            k >>= 1
        return result

    def inverse(self) -> "ExactMatrix":
        """Exact inverse via Gauss-Jordan elimination."""
        if self.rows != self.cols:
            raise ValueError("incompatible shapes")
        n = self.rows
        work = [list(row) + [QI_ONE if i == j else QI_ZERO for j in range(n)]
                for i, row in enumerate(self.entries)]
        for col in range(n):
            pivot_row = next(
                (r for r in range(col, n) if work[r][col]), None
            )
            if pivot_row is None:
                raise ValueError("matrix is singular")
            work[col], work[pivot_row] = work[pivot_row], work[col]
            inv = QI_ONE / work[col][col]
            work[col] = [inv * x for x in work[col]]
            for r in range(n):
                if r != col and work[r][col]:
                    factor = work[r][col]
                    work[r] = [a - factor * b for a, b in zip(work[r], work[col])]
        return ExactMatrix([row[n:] for row in work])

    # -- predicates / conversions --------------------------------------------
    @property
    def is_zero(self) -> bool:
        return all(not a for row in self.entries for a in row)

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_nilpotent(self) -> bool:
        if not self.is_square:
            raise ValueError("incompatible shapes")
        return self.power(self.rows).is_zero

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ExactMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self) -> int:
        return hash(self.entries)

    def flatten(self) -> tuple[QI, ...]:
        """Row-major coordinate vector of length ``rows * cols``."""
        return tuple(a for row in self.entries for a in row)

    def flatten_real(self) -> tuple[QI, ...]:
        """Real-doubled coordinates: (Re, Im) per entry, row-major."""
        out = []
        for row in self.entries:
            for a in row:
                out.append(QI(a.re))
                out.append(QI(a.im))
        return tuple(out)

    def to_numpy(self):
        import numpy as np

        return np.array(
            [[a.to_complex() for a in row] for row in self.entries], dtype=complex
        )

    def __repr__(self) -> str:
        body = "; ".join(
            " ".join(repr(a) for a in row) for row in self.entries
        )
        return f"ExactMatrix[{body}]"


def linear_combination(mats: Sequence[ExactMatrix], coeffs: Sequence) -> ExactMatrix:
    """Fused exact sum ``Σ coeffs[k] * mats[k]`` (single integer pass)."""
    if not mats:
        raise ValueError("incompatible shapes")
    rows, cols = mats[0].rows, mats[0].cols
    terms = []
    den = 1
    for c, m in zip(coeffs, mats):
        c = _qi(c)
        if not c:
            continue
        dc = lcm(c.re.denominator, c.im.denominator)
        cre = int(c.re.numerator * (dc // c.re.denominator))
        cim = int(c.im.numerator * (dc // c.im.denominator))
        dm, grid = m._int_form()
        terms.append((cre, cim, dc * dm, grid))
        den = lcm(den, dc * dm)
    if not terms:
        return ExactMatrix.zeros(rows, cols)
    acc_re = [[0] * cols for _ in range(rows)]
    acc_im = [[0] * cols for _ in range(rows)]
    for cre, cim, dterm, grid in terms:
        f = den // dterm
        fre = f * cre
        fim = f * cim
        for i in range(rows):
            gi = grid[i]
            ar = acc_re[i]
            ai = acc_im[i]
            for j in range(cols):
                a, b = gi[j]
                if a or b:
                    ar[j] += fre * a - fim * b
                    ai[j] += fre * b + fim * a
    grid_out = tuple(
        tuple(
            QI_ZERO
            if not (acc_re[i][j] or acc_im[i][j])
            else QI(Fraction(acc_re[i][j], den), Fraction(acc_im[i][j], den))
            for j in range(cols)
        )
        for i in range(rows)
    )
    return ExactMatrix._from_grid(grid_out)


def bracket(x: ExactMatrix, y: ExactMatrix) -> ExactMatrix:
    """The commutator ``x @ y - y @ x`` (exact)."""
    if not (x.is_square and y.is_square and x.rows == y.rows):
        raise ValueError("incompatible shapes")
    dx, gx = x._int_form()
    dy, gy = y._int_form()
    n = x.rows
    den = dx * dy
    gx_cols = tuple(zip(*gx))
    gy_cols = tuple(zip(*gy))
    grid = []
    for i in range(n):
        rx = gx[i]
        ry = gy[i]
        out_row = []
        for j in range(n):
            cy = gy_cols[j]
            cx = gx_cols[j]
            sre = 0
            sim = 0
            for k in range(n):
                a, b = rx[k]
                c, d = cy[k]
                if (a or b) and (c or d):
                    sre += a * c - b * d
                    sim += a * d + b * c
                a, b = ry[k]
                c, d = cx[k]
                if (a or b) and (c or d):
                    sre -= a * c - b * d
                    sim -= a * d + b * c
            out_row.append(
                QI_ZERO
                if not (sre or sim)
                else QI(Fraction(sre, den), Fraction(sim, den))
            )
        grid.append(tuple(out_row))
    return ExactMatrix._from_grid(tuple(grid))


# ---------------------------------------------------------------------------
# Gaussian-integer elimination core
# ---------------------------------------------------------------------------

IntRow = list  # list[tuple[int, int]]


def _row_content_normalize(row: IntRow) -> IntRow:
    g = 0
    for a, b in row:
        if a:
            g = gcd(g, a if a > 0 else -a)
        if b:
            g = gcd(g, b if b > 0 else -b)
        if g == 1:
            return row
    if g > 1:
        return [(a // g, b // g) for a, b in row]
    return row


def _qi_row_to_int(vec: Sequence[QI]) -> IntRow:
    den = 1
    for q in vec:
        dr = q.re.denominator
        di = q.im.denominator
        if dr != 1 or di != 1:
            den = lcm(den, dr, di)
    if den == 1:
        row = [(q.re.numerator, q.im.numerator) for q in vec]
    else:
        row = [
            (int(q.re.numerator * (den // q.re.denominator)),
             int(q.im.numerator * (den // q.im.denominator)))
            for q in vec
        ]
    return _row_content_normalize(row)


def _first_nonzero(row: IntRow) -> int:
    for idx, (a, b) in enumerate(row):
        if a or b:
            return idx
    return -1


def _eliminate(row: IntRow, pivot_row: IntRow, col: int, nnz: Sequence[int]) -> IntRow:
    """Return ``p*row - r*pivot_row`` where p, r are the column-``col`` values."""
    ra, rb = row[col]
    pa, pb = pivot_row[col]
    new = [(pa * a - pb * b, pa * b + pb * a) for a, b in row]
    for k in nnz:
        qa, qb = pivot_row[k]
        na, nb = new[k]
        new[k] = (na - (ra * qa - rb * qb), nb - (ra * qb + rb * qa))
    return _row_content_normalize(new)


class _Echelon:
    """Incremental Gaussian-integer row echelon structure."""

    __slots__ = ("rows", "pivots", "nnz")

    def __init__(self):
        self.rows: list[IntRow] = []
        self.pivots: list[int] = []
        self.nnz: list[list[int]] = []

    def reduce(self, row: IntRow) -> IntRow:
        """Reduce ``row`` against the current echelon (no insertion)."""
        for i, col in enumerate(self.pivots):
            a, b = row[col]
            if a or b:
                row = _eliminate(row, self.rows[i], col, self.nnz[i])
        return row

    def insert(self, row: IntRow) -> bool:
        """Reduce and insert; returns True when the row increased the rank."""
        row = self.reduce(row)
        col = _first_nonzero(row)
        if col < 0:
            return False
        nnz = [k for k, (a, b) in enumerate(row) if a or b]
        pos = 0
        while pos < len(self.pivots) and self.pivots[pos] < col:
            pos += 1
        self.rows.insert(pos, row)
        self.pivots.insert(pos, col)
        self.nnz.insert(pos, nnz)
        return True

    def back_substitute(self) -> None:
        """Clear entries above every pivot (integer arithmetic).

        Rows are processed bottom-up, so each pivot row is final before it
        is used; nonzero-index caches are recomputed fresh because targets
        gain and lose entries during the sweep.
        """
        for i in range(len(self.rows) - 1, -1, -1):
            col = self.pivots[i]
            nnz_i = [k for k, (a, b) in enumerate(self.rows[i]) if a or b]
            for j in range(i):
                a, b = self.rows[j][col]
                if a or b:
                    self.rows[j] = _eliminate(
                        self.rows[j], self.rows[i], col, nnz_i
                    )
        for j in range(len(self.rows)):
            self.nnz[j] = [k for k, (a, b) in enumerate(self.rows[j]) if a or b]

    def canonical_rows(self) -> list[tuple[QI, ...]]:
        """Divide by pivots; returns reduced rows with pivot entries 1."""
        out = []
        for row, col in zip(self.rows, self.pivots):
            pa, pb = row[col]
            if pb == 0:
                if pa == 1:
                    out.append(
                        tuple(
                            QI_ZERO
                            if not (a or b)
                            else QI(Fraction(a), Fraction(b))
                            for a, b in row
                        )
                    )
                else:
                    out.append(
                        tuple(
                            QI_ZERO
                            if not (a or b)
                            else QI(Fraction(a, pa), Fraction(b, pa))
                            for a, b in row
                        )
                    )
            else:
                norm = pa * pa + pb * pb
                out.append(
                    tuple(
                        QI_ZERO
                        if not (a or b)
                        else QI(
                            Fraction(a * pa + b * pb, norm),
                            Fraction(b * pa - a * pb, norm),
                        )
                        for a, b in row
                    )
                )
        return out


def _rref(vectors: Iterable[Sequence[QI]]) -> tuple[list[tuple[QI, ...]], list[int]]:
    """Canonical reduced row echelon form of a list of coordinate vectors."""
    ech = _Echelon()
    for vec in vectors:
        ech.insert(_qi_row_to_int(list(vec)))
    ech.back_substitute()
    return ech.canonical_rows(), list(ech.pivots)


def solve_kernel(rows: Sequence[Sequence[QI]], ncols: int) -> list[tuple[QI, ...]]:
    """Basis of the right kernel of the matrix with the given rows.

    Parameters
    ----------
    rows:
        Constraint rows (each of length ``ncols``); the kernel is
        ``{x : row . x = 0 for every row}``.
    ncols:
        Number of unknowns.

    Returns
    -------
    list of coordinate vectors spanning the kernel (canonically echelonized).
    """
    reduced, pivots = _rref(rows)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for f in free:
        vec = [QI_ZERO] * ncols
        vec[f] = QI_ONE
        for row, p in zip(reduced, pivots):
            vec[p] = -row[f]
        basis.append(tuple(vec))
    canonical, _ = _rref(basis)
    return canonical


# ---------------------------------------------------------------------------
# Subspaces of a matrix space
# ---------------------------------------------------------------------------


class Subspace:
    """A linear subspace of the space of ``side x side`` matrices.

    ``real=False``: a complex-linear subspace; coordinates are the row-major
    matrix entries.  ``real=True``: a real-linear subspace; coordinates are
    (Re, Im) pairs of the row-major entries and scalars are rational.

    The stored basis is the unique canonical reduced echelon basis, so
    equality of subspaces is entry-wise equality of bases.
    """

    __slots__ = ("side", "real", "rows", "pivots", "_int_rows")

    def __init__(self, side: int, real: bool, rows, pivots):
        object.__setattr__(self, "side", side)
        object.__setattr__(self, "real", real)
        object.__setattr__(self, "rows", tuple(tuple(r) for r in rows))
        object.__setattr__(self, "pivots", tuple(pivots))
        irows = []
        for row, col in zip(self.rows, self.pivots):
            int_row = _qi_row_to_int(row)
            nnz = [k for k, (a, b) in enumerate(int_row) if a or b]
            irows.append((int_row, col, nnz))
        object.__setattr__(self, "_int_rows", tuple(irows))

    def __setattr__(self, name, value):
        raise AttributeError("Subspace is immutable")

    # -- constructors --------------------------------------------------------
    @staticmethod
    def span(mats: Iterable[ExactMatrix], side: int, real: bool = False) -> "Subspace":
        vecs = []
        for m in mats:
            if m.rows != side or m.cols != side:
                raise ValueError("incompatible shapes")
            vecs.append(m.flatten_real() if real else m.flatten())
        rows, pivots = _rref(vecs)
        return Subspace(side, real, rows, pivots)

    @staticmethod
    def zero(side: int, real: bool = False) -> "Subspace":
        return Subspace(side, real, [], [])

    @staticmethod
    def from_vectors(
        vecs: Iterable[Sequence[QI]], side: int, real: bool = False
    ) -> "Subspace":
        rows, pivots = _rref(vecs)
        return Subspace(side, real, rows, pivots)

    # -- core queries ---------------------------------------------------------
    @property
    def dim(self) -> int:
        return len(self.rows)

    @property
    def ambient_dim(self) -> int:
        n2 = self.side * self.side
        return 2 * n2 if self.real else n2

    def _vec_of(self, mat: ExactMatrix) -> tuple[QI, ...]:
        if mat.rows != self.side or mat.cols != self.side:
            raise ValueError("incompatible shapes")
        return mat.flatten_real() if self.real else mat.flatten()

    def _mat_of(self, vec: Sequence[QI]) -> ExactMatrix:
        n = self.side
        if self.real:
            grid = [
                [
                    QI(vec[2 * (i * n + j)].re, vec[2 * (i * n + j) + 1].re)
                    for j in range(n)
                ]
                for i in range(n)
            ]
        else:
            grid = [[vec[i * n + j] for j in range(n)] for i in range(n)]
        return ExactMatrix(grid)

    def basis(self) -> list[ExactMatrix]:
        """Canonical basis, as matrices."""
        return [self._mat_of(row) for row in self.rows]

    def reduce_int(self, vec: Sequence[QI]) -> IntRow:
        """Reduce a coordinate vector against the basis (integer core)."""
        row = _qi_row_to_int(list(vec))
        for int_row, col, nnz in self._int_rows:
            a, b = row[col]
            if a or b:
                row = _eliminate(row, int_row, col, nnz)
        return row

    def contains_vec(self, vec: Sequence[QI]) -> bool:
        return _first_nonzero(self.reduce_int(vec)) < 0

    def reduce_vec(self, vec: Sequence[QI]) -> list[QI]:
        """Exact residue of a coordinate vector modulo this subspace.

        Subtracts the unique member matching the vector at the pivot
        coordinates; unlike :meth:`reduce_int` the scale is preserved.
        """
        work = list(vec)
        for row, col in zip(self.rows, self.pivots):
            c = work[col]
            if c:
                work = [a - c * b for a, b in zip(work, row)]
        return work

    def contains_mat(self, mat: ExactMatrix) -> bool:
        return self.contains_vec(self._vec_of(mat))

    def contains_space(self, other: "Subspace") -> bool:
        self._check_compatible(other)
        return all(self.contains_vec(row) for row in other.rows)

    def coordinates_of(self, mat: ExactMatrix) -> list[QI]:
        """Coefficients of ``mat`` in the canonical basis (must be a member)."""
        vec = list(self._vec_of(mat))
        coeffs = []
        for row, col in zip(self.rows, self.pivots):
            c = vec[col]
            coeffs.append(c)
            if c:
                vec = [a - c * b for a, b in zip(vec, row)]
        if any(a for a in vec):
            raise ValueError("matrix is not a member of the subspace")
        return coeffs

    def _check_compatible(self, other: "Subspace") -> None:
        if self.side != other.side or self.real != other.real:
            raise ValueError("ambient mismatch")

    # -- lattice operations ----------------------------------------------------
    def sum(self, other: "Subspace") -> "Subspace":
        self._check_compatible(other)
        rows, pivots = _rref(list(self.rows) + list(other.rows))
        return Subspace(self.side, self.real, rows, pivots)

    def intersect(self, other: "Subspace") -> "Subspace":
        """Intersection via the Zassenhaus double-block elimination."""
        self._check_compatible(other)
        width = self.ambient_dim
        stacked = []
        for row in self.rows:
            stacked.append(tuple(row) + tuple(row))
        zero = (QI_ZERO,) * width
        for row in other.rows:
            stacked.append(tuple(row) + zero)
        ech = _Echelon()
        for vec in stacked:
            ech.insert(_qi_row_to_int(list(vec)))
        inter_vecs = []
        for row, col in zip(ech.rows, ech.pivots):
            if col >= width:
                inter_vecs.append(
                    tuple(QI(Fraction(a), Fraction(b)) for a, b in row[width:])
                )
        rows, pivots = _rref(inter_vecs)
        return Subspace(self.side, self.real, rows, pivots)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subspace)
            and self.side == other.side
            and self.real == other.real
            and self.pivots == other.pivots
            and self.rows == other.rows
        )

    def __hash__(self) -> int:
        return hash((self.side, self.real, self.pivots, self.rows))

    # -- real/complex interplay --------------------------------------------------
    def realify(self) -> "Subspace":
        """The underlying real-linear subspace of a complex-linear one."""
        if self.real:
            return self
        mats = self.basis()
        doubled = [m for m in mats] + [m.scale(QI_I) for m in mats]
        return Subspace.span(doubled, self.side, real=True)

    def complexify_if_stable(self) -> "Subspace | None":
        """The complex-linear space with the same elements, if i-stable."""
        if not self.real:
            return self
        mats = self.basis()
        for m in mats:
            if not self.contains_mat(m.scale(QI_I)):
                return None
        return Subspace.span(mats, self.side, real=False)

    def __repr__(self) -> str:
        kind = "R" if self.real else "C"
        return f"Subspace(side={self.side}, dim={self.dim}, field={kind})"


# ---------------------------------------------------------------------------
# Module-level convenience operations
# ---------------------------------------------------------------------------


def echelonize(mats: Sequence[ExactMatrix], side: int | None = None,
               real: bool = False) -> Subspace:
    """Canonical subspace spanned by the given matrices.

    ``side`` may be omitted when at least one matrix is supplied.
    """
    mats = list(mats)
    if side is None:
        if not mats:
            raise ValueError("incompatible shapes")
        side = mats[0].rows
    return Subspace.span(mats, side, real=real)


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    return a.sum(b)


def subspace_intersect(a: Subspace, b: Subspace) -> Subspace:
    return a.intersect(b)


def contains(a: Subspace, x: ExactMatrix) -> bool:
    return a.contains_mat(x)


def bracket_space(a: Subspace, b: Subspace) -> Subspace:
    """Span of pairwise commutators of the two bases."""
    if a.real or b.real:
        raise ValueError("ambient mismatch")
    a._check_compatible(b)
    if a is b or a == b:
        mats = a.basis()
        brackets = [
            bracket(mats[i], mats[j])
            for i in range(len(mats))
            for j in range(i + 1, len(mats))
        ]
    else:
        brackets = [bracket(x, y) for x in a.basis() for y in b.basis()]
    return Subspace.span(brackets, a.side, real=False)


class VectorSpan:
    """A canonical-echelon span of plain coordinate vectors over Q(i).

    Lightweight companion to :class:`Subspace` for coefficient spaces that
    are not matrix-shaped (weight functionals, abstract coordinates).
    """

    __slots__ = ("width", "rows", "pivots", "_int_rows")

    def __init__(self, vecs: Iterable[Sequence[QI]], width: int):
        rows, pivots = _rref(vecs)
        object.__setattr__(self, "width", width)
        object.__setattr__(self, "rows", tuple(rows))
        object.__setattr__(self, "pivots", tuple(pivots))
        irows = []
        for row, col in zip(rows, pivots):
            int_row = _qi_row_to_int(row)
            nnz = [k for k, (a, b) in enumerate(int_row) if a or b]
            irows.append((int_row, col, nnz))
        object.__setattr__(self, "_int_rows", tuple(irows))

    def __setattr__(self, name, value):
        raise AttributeError("VectorSpan is immutable")

    @property
    def dim(self) -> int:
        return len(self.rows)

    def reduce(self, vec: Sequence[QI]) -> IntRow:
        row = _qi_row_to_int(list(vec))
        for int_row, col, nnz in self._int_rows:
            a, b = row[col]
            if a or b:
                row = _eliminate(row, int_row, col, nnz)
        return row

    def contains(self, vec: Sequence[QI]) -> bool:
        return _first_nonzero(self.reduce(vec)) < 0

    def coordinates_of(self, vec: Sequence[QI]) -> list[QI]:
        """Coefficients in the canonical basis (vec must be a member)."""
        work = list(vec)
        coeffs = []
        for row, col in zip(self.rows, self.pivots):
            c = work[col]
            coeffs.append(c)
            if c:
                work = [a - c * b for a, b in zip(work, row)]
        if any(a for a in work):
            raise ValueError("vector is not a member of the span")
        return coeffs

    def extended(self, vecs: Iterable[Sequence[QI]]) -> "VectorSpan":
        return VectorSpan(list(self.rows) + [tuple(v) for v in vecs], self.width)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, VectorSpan)
            and self.width == other.width
            and self.rows == other.rows
        )

    def __hash__(self) -> int:
        return hash((self.width, self.rows))


# ---------------------------------------------------------------------------
# Exact polynomial utilities (coefficient lists, highest degree first)
# ---------------------------------------------------------------------------

Poly = list  # list[QI], leading coefficient first


def _poly_trim(p: Poly) -> Poly:
    i = 0
    while i < len(p) - 1 and not p[i]:
        i += 1
    return p[i:]


def _poly_mul(p: Poly, q: Poly) -> Poly:
    out = [QI_ZERO] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if not a:
            continue
        for j, b in enumerate(q):
            if b:
                out[i + j] = out[i + j] + a * b
    return _poly_trim(out)

def _poly_add(p: Poly, q: Poly) -> Poly:
    n = max(len(p), len(q))
    pp = [QI_ZERO] * (n - len(p)) + list(p)
    qq = [QI_ZERO] * (n - len(q)) + list(q)
    return _poly_trim([a + b for a, b in zip(pp, qq)])


def _poly_scale(p: Poly, c: QI) -> Poly:
    return _poly_trim([c * a for a in p])


def _poly_divmod(p: Poly, q: Poly) -> tuple[Poly, Poly]:
    q = _poly_trim(q)
    if not q or (len(q) == 1 and not q[0]):
        raise ZeroDivisionError("polynomial division by zero")
    work = list(_poly_trim(p))
    dq = len(q) - 1
    if len(work) - 1 < dq or (len(work) == 1 and not work[0]):
        return [QI_ZERO], _poly_trim(work)
    lead = q[0]
    nq = len(work) - dq
    quot = [QI_ZERO] * nq
    for i in range(nq):
        c = work[i] / lead
        if c:
            quot[i] = c
            for k in range(1, len(q)):
                work[i + k] = work[i + k] - c * q[k]
            work[i] = QI_ZERO
    rem = work[nq:] or [QI_ZERO]
    return _poly_trim(quot), _poly_trim(rem)


def _poly_mod(p: Poly, q: Poly) -> Poly:
    return _poly_divmod(p, q)[1]


def _poly_gcd(p: Poly, q: Poly) -> Poly:
    p, q = _poly_trim(p), _poly_trim(q)
    while q != [QI_ZERO] and q:
        p, q = q, _poly_mod(p, q)
    if p and p[0] and p != [QI_ZERO]:
        p = _poly_scale(p, QI_ONE / p[0])
    return p


def _poly_derivative(p: Poly) -> Poly:
    n = len(p) - 1
    if n <= 0:
        return [QI_ZERO]
    return _poly_trim([p[i] * QI(n - i) for i in range(n)])


def _poly_eval_matrix(p: Poly, x: ExactMatrix) -> ExactMatrix:
    acc = ExactMatrix.zeros(x.rows)
    for c in p:
        acc = acc @ x
        if c:
            acc = acc + ExactMatrix.identity(x.rows).scale(c)
    return acc


def _poly_ext_gcd(a: Poly, b: Poly) -> tuple[Poly, Poly, Poly]:
    """Return (g, s, t) with s*a + t*b = g (g monic)."""
    r0, r1 = _poly_trim(a), _poly_trim(b)
    s0, s1 = [QI_ONE], [QI_ZERO]
    t0, t1 = [QI_ZERO], [QI_ONE]
    while r1 != [QI_ZERO] and r1:
        q, r = _poly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _poly_add(s0, _poly_scale(_poly_mul(q, s1), QI(-1)))
        t0, t1 = t1, _poly_add(t0, _poly_scale(_poly_mul(q, t1), QI(-1)))
    if r0 and r0[0] and r0 != [QI_ZERO]:
        inv = QI_ONE / r0[0]
        r0 = _poly_scale(r0, inv)
        s0 = _poly_scale(s0, inv)
        t0 = _poly_scale(t0, inv)
    return r0, s0, t0


def charpoly(x: ExactMatrix) -> Poly:
    """Exact characteristic polynomial det(tI - x), leading coefficient 1.

    Uses the Faddeev-LeVerrier recursion (division-free up to integer
    divisions, all exact over the Gaussian rationals).
    """
    if not x.is_square:
        raise ValueError("incompatible shapes")
    n = x.rows
    coeffs = [QI_ONE]
    m = ExactMatrix.zeros(n)
    ident = ExactMatrix.identity(n)
    for k in range(1, n + 1):
        m = x @ m + ident.scale(coeffs[-1])
        xm = x @ m
        c = -(xm.trace() / QI(k))
        coeffs.append(c)
    return coeffs


def squarefree_part(p: Poly) -> Poly:
    """The squarefree part ``p / gcd(p, p')`` (monic)."""
    g = _poly_gcd(p, _poly_derivative(p))
    q, r = _poly_divmod(p, g)
    if r != [QI_ZERO] and any(a for a in r):
        raise ArithmeticError("squarefree division left a remainder")
    if q and q[0]:
        q = _poly_scale(q, QI_ONE / q[0])
    return q


def semisimple_part(x: ExactMatrix) -> ExactMatrix:
    """The semisimple summand of the additive Jordan decomposition of ``x``.

    Computed exactly by Newton iteration on the squarefree part of the
    characteristic polynomial in the quotient ring Q(i)[t]/(charpoly).
    """
    f = charpoly(x)
    fs = squarefree_part(f)
    if len(fs) == len(f):
        return x
    fsd = _poly_derivative(fs)
    p = _poly_mod([QI_ONE, QI_ZERO], f)
    steps = 1
    deg = len(f) - 1
    while (1 << steps) < deg + 1:
        steps += 1
    converged = False
    for _ in range(steps + 2):
        val = _poly_mod(_compose_mod(fs, p, f), f)
        if not any(a for a in val):
            converged = True
            break
        dval = _poly_mod(_compose_mod(fsd, p, f), f)
        g, s, _ = _poly_ext_gcd(dval, f)
        if len(g) != 1:
            raise ArithmeticError("derivative not invertible modulo charpoly")
        p = _poly_mod(_poly_add(p, _poly_scale(_poly_mul(val, s), QI(-1))), f)
    if not converged:
        val = _poly_mod(_compose_mod(fs, p, f), f)
        if any(a for a in val):
            raise ArithmeticError("Newton iteration failed to converge exactly")
    return _poly_eval_matrix(p, x)


def _compose_mod(p: Poly, q: Poly, mod: Poly) -> Poly:
    """p(q(t)) reduced modulo ``mod`` (Horner)."""
    acc: Poly = [QI_ZERO]
    for c in p:
        acc = _poly_mod(_poly_mul(acc, q), mod)
        acc = _poly_add(acc, [c])
    return acc
