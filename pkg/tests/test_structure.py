"""Tests for ambient algebras and subalgebra structure theory."""

import itertools
import random

import pytest

from crmostow.ambient import block_special_linear, special_linear
from crmostow.errors import ClosureError
from crmostow.exact import (
    QI,
    ExactMatrix,
    Subspace,
    bracket,
    bracket_space,
    echelonize,
    subspace_intersect,
)
from crmostow.structure import (
    is_n_reductive,
    jordan_flags,
    levi_intersection,
    make_subalgebra,
    normalizer,
    nr,
    radical,
    rational_roots,
    subalgebra_from_space,
)


def _E(n, i, j):
    return ExactMatrix.unit(n, i, j)


def _diag(*vals):
    return ExactMatrix.diagonal(list(vals))


# ---------------------------------------------------------------------------
# ambient algebras
# ---------------------------------------------------------------------------


def test_special_linear_dimensions():
    a = special_linear(3)
    assert a.space.dim == 8
    assert a.k0.dim == 8
    assert a.p0.dim == 8
    assert a.dim == 8


def test_block_ambient_dimensions():
    a = block_special_linear([2, 2])
    assert a.space.dim == 7
    assert a.k0.dim == 7
    assert a.p0.dim == 7
    assert a.contains(_E(4, 0, 1))
    assert not a.contains(_E(4, 0, 2))
    assert a.contains(_diag(1, -1, 0, 0))
    assert not a.contains(_diag(1, 0, 0, 0))


def test_ambient_interning():
    assert special_linear(4) is special_linear(4)
    assert block_special_linear((2, 3)) is block_special_linear([2, 3])


def test_k0_p0_split_k():
    a = block_special_linear([2, 1])
    total = a.k0.sum(a.p0)
    assert total == a.space.realify()
    assert subspace_intersect(a.k0, a.p0).dim == 0


def test_sigma_involution_and_beta():
    a = special_linear(2)
    for m in a.basis():
        assert a.sigma(a.sigma(m)) == m
        assert a.contains(a.sigma(m))
    x, y = _E(2, 0, 1), _E(2, 1, 0)
    assert a.beta(x, y) == QI(1)
    assert a.beta(x, x) == QI(0)
    h = _diag(1, -1)
    assert a.beta(h, h) == QI(2)


def test_sigma_fixes_k0_negates_p0():
    a = special_linear(3)
    for m in a.k0.basis():
        assert a.sigma(m) == m
    for m in a.p0.basis():
        assert a.sigma(m) == -m


# ---------------------------------------------------------------------------
# subalgebra construction
# ---------------------------------------------------------------------------


def test_make_subalgebra_single_nilpotent():
    a = special_linear(2)
    v = make_subalgebra(a, [_E(2, 0, 1)])
    assert v.dim == 1


def test_make_subalgebra_close_up_generates_sl2():
    a = special_linear(2)
    v = make_subalgebra(a, [_E(2, 0, 1), _E(2, 1, 0)], mode="close_up")
    assert v.dim == 3
    assert v.space == a.space


def test_make_subalgebra_rejects_open_span():
    a = special_linear(2)
    with pytest.raises(ClosureError) as info:
        make_subalgebra(a, [_E(2, 0, 1), _E(2, 1, 0)])
    assert "not closed under bracket" in str(info.value)
    assert info.value.left is not None and info.value.right is not None


def test_make_subalgebra_rejects_outside_ambient():
    a = block_special_linear([2, 2])
    with pytest.raises(ValueError, match="not inside ambient"):
        make_subalgebra(a, [_E(4, 0, 2)])


def test_displayed_flag_13_basis_dim():
    a = block_special_linear([2, 3])
    gens = [
        _diag(1, 0, 1, -2, 0),
        _diag(0, 1, 0, -2, 1),
        _E(5, 0, 1) + _E(5, 2, 4),
        _E(5, 3, 4),
    ]
    v = make_subalgebra(a, gens)
    assert v.dim == 4


def test_subalgebra_interning():
    a = special_linear(2)
    v1 = make_subalgebra(a, [_E(2, 0, 1)])
    v2 = make_subalgebra(a, [_E(2, 0, 1).scale(7)])
    assert v1 is v2


# ---------------------------------------------------------------------------
# radical
# ---------------------------------------------------------------------------


def test_radical_semisimple_is_zero():
    a = special_linear(2)
    sl2 = subalgebra_from_space(a, a.space)
    assert radical(sl2).dim == 0


def test_radical_solvable_is_everything():
    a = special_linear(2)
    borel = make_subalgebra(a, [_diag(1, -1), _E(2, 0, 1)])
    assert radical(borel) == borel.space


def test_radical_su22_entry():
    a = block_special_linear([2, 2])
    v = make_subalgebra(a, [_diag(1, -1, 1, -1), _E(4, 0, 1) + _E(4, 2, 3)])
    assert radical(v) == v.space
    assert v.dim == 2


def test_radical_of_parabolic_in_sl3():
    a = special_linear(3)
    q = make_subalgebra(
        a,
        [
            _E(3, 0, 1), _E(3, 1, 0), _diag(1, -1, 0), _diag(0, 1, -1),
            _E(3, 0, 2), _E(3, 1, 2),
        ],
    )
    rad = radical(q)
    # nilradical (2) plus the central torus direction of the Levi (1)
    assert rad.dim == 3
    assert rad.contains_mat(_E(3, 0, 2))
    assert rad.contains_mat(_E(3, 1, 2))
    assert rad.contains_mat(_diag(1, 1, -2))


# ---------------------------------------------------------------------------
# nilpotent radical
# ---------------------------------------------------------------------------


def test_nr_borel_sl2():
    a = special_linear(2)
    borel = make_subalgebra(a, [_diag(1, -1), _E(2, 0, 1)])
    assert nr(borel) == echelonize([_E(2, 0, 1)])


def test_nr_cartan_sl3_is_zero():
    a = special_linear(3)
    cartan = make_subalgebra(a, [_diag(1, -1, 0), _diag(0, 1, -1)])
    assert radical(cartan) == cartan.space
    assert nr(cartan).dim == 0


def test_nr_su22_entry():
    a = block_special_linear([2, 2])
    v = make_subalgebra(a, [_diag(1, -1, 1, -1), _E(4, 0, 1) + _E(4, 2, 3)])
    assert nr(v) == echelonize([_E(4, 0, 1) + _E(4, 2, 3)])


def test_nr_strict_uppers():
    a = special_linear(3)
    v = make_subalgebra(a, [_E(3, 0, 1), _E(3, 0, 2), _E(3, 1, 2)])
    assert nr(v) == v.space


def test_nr_complex_weights():
    # rad is spanned by a semisimple element with Gaussian eigenvalues
    a = special_linear(2)
    v = make_subalgebra(a, [_diag(QI(0, 1), QI(0, -1))])
    assert nr(v).dim == 0


def test_nr_brute_force_cross_check():
    rng = random.Random(11)
    n = 3
    a = special_linear(n)
    for _trial in range(6):
        gens = []
        for _ in range(2):
            entries = [[0] * n for _ in range(n)]
            for i in range(n):
                for j in range(i, n):
                    entries[i][j] = rng.randint(-2, 2)
            tr = sum(entries[i][i] for i in range(n))
            entries[n - 1][n - 1] -= tr
            gens.append(ExactMatrix(entries))
        v = make_subalgebra(a, gens, mode="close_up")
        rad = radical(v)
        grid_nilpotents = []
        for coeffs in itertools.product([-1, 0, 1], repeat=rad.dim):
            x = ExactMatrix.zeros(n)
            for c, m in zip(coeffs, rad.basis()):
                if c:
                    x = x + m.scale(c)
            if x.is_nilpotent():
                grid_nilpotents.append(x)
        spanned = Subspace.span(grid_nilpotents, n)
        assert spanned == nr(v)


# ---------------------------------------------------------------------------
# conjugation, Levi intersection, reductive test
# ---------------------------------------------------------------------------


def test_conj_sigma_stable_fixed():
    a = special_linear(2)
    sl2 = subalgebra_from_space(a, a.space)
    assert sl2.conj is sl2
    assert levi_intersection(sl2) is sl2


def test_conj_nilpotent_line():
    a = special_linear(2)
    v = make_subalgebra(a, [_E(2, 0, 1)])
    assert v.conj.space == echelonize([_E(2, 1, 0)])
    assert levi_intersection(v).dim == 0


def test_levi_is_sigma_stable_and_closed():
    a = block_special_linear([2, 2])
    v = make_subalgebra(a, [_diag(1, -1, 1, -1), _E(4, 0, 1) + _E(4, 2, 3)])
    levi = levi_intersection(v)
    assert levi.is_sigma_stable
    assert levi.dim == 1
    assert levi.contains(_diag(1, -1, 1, -1))


def test_is_n_reductive_whole_algebra():
    a = special_linear(3)
    k = subalgebra_from_space(a, a.space)
    verdict = is_n_reductive(k)
    assert verdict.ok
    assert verdict.nilpotent_part.dim == 0
    assert verdict.reductive_part == a.space


def test_is_n_reductive_su22_entry():
    a = block_special_linear([2, 2])
    v = make_subalgebra(a, [_diag(1, -1, 1, -1), _E(4, 0, 1) + _E(4, 2, 3)])
    verdict = is_n_reductive(v)
    assert verdict.ok
    assert verdict.nilpotent_part.dim == 1
    assert verdict.reductive_part.dim == 1


def test_is_n_reductive_orthogonal_form_fails():
    # v = {X : X^T S + S X = 0} for symmetric S with S * conj(S) not scalar:
    # then conj(v) differs from v and the Levi part is too small.
    a = special_linear(3)
    s_diag = [QI(1), QI(1), QI(0, 2)]
    gens = []
    for i in range(3):
        for j in range(i + 1, 3):
            gens.append(_E(3, i, j) - _E(3, j, i).scale(s_diag[i] / s_diag[j]))
    v = make_subalgebra(a, gens)
    assert v.dim == 3
    assert radical(v).dim == 0
    verdict = is_n_reductive(v)
    assert not verdict.ok
    assert v.conj.space != v.space


def test_is_n_reductive_nilpotent_line():
    a = special_linear(2)
    v = make_subalgebra(a, [_E(2, 0, 1)])
    verdict = is_n_reductive(v)
    assert verdict.ok  # v = nr(v) + 0


# ---------------------------------------------------------------------------
# normalizer
# ---------------------------------------------------------------------------


def test_normalizer_of_nilpotent_line_is_borel():
    a = special_linear(2)
    s = echelonize([_E(2, 0, 1)])
    n_of = normalizer(a, s)
    assert n_of.dim == 2
    assert n_of.contains(_E(2, 0, 1))
    assert n_of.contains(_diag(1, -1))


def test_normalizer_of_strict_uppers_is_borel():
    a = special_linear(3)
    s = echelonize([_E(3, 0, 1), _E(3, 0, 2), _E(3, 1, 2)])
    n_of = normalizer(a, s)
    assert n_of.dim == 5
    for m in [_E(3, 0, 1), _E(3, 0, 2), _E(3, 1, 2), _diag(1, -1, 0), _diag(0, 1, -1)]:
        assert n_of.contains(m)
    assert not n_of.contains(_E(3, 1, 0))


def test_normalizer_of_flag_13_nilradical():
    # the coupled nilpotent pair from the flag-(1,3) stabilizer: its
    # normalizer keeps the coupling constraint on the diagonal and picks up
    # one extra root, landing strictly between the algebra and a Borel
    a = block_special_linear([2, 3])
    s = echelonize([_E(5, 0, 1) + _E(5, 2, 4), _E(5, 3, 4)])
    q = normalizer(a, s)
    assert q.dim == 7
    assert q.contains(_E(5, 0, 1))       # z-slot in the first block
    assert q.contains(_E(5, 2, 4))       # z-slot in the second block
    assert q.contains(_E(5, 3, 4))
    assert q.contains(_E(5, 3, 2))       # the extra root direction
    assert not q.contains(_E(5, 2, 3))   # breaks the coupling
    assert not q.contains(_E(5, 1, 0))
    assert not q.contains(_E(5, 4, 2))
    # diagonal part carries one linear constraint tying the two z-slots
    assert q.contains(_diag(1, 0, 2, -4, 1))
    assert q.contains(_diag(0, 0, 1, -2, 1))
    assert not q.contains(_diag(1, -1, 0, 0, 0))


def test_normalizer_contains_normalizing_subalgebras():
    a = special_linear(3)
    s = echelonize([_E(3, 0, 2)])
    n_of = normalizer(a, s)
    # candidates that visibly normalize s
    for cand in [_E(3, 0, 1), _diag(1, 0, -1), _E(3, 0, 2)]:
        w = bracket_space(echelonize([cand]), s)
        assert s.contains_space(w)
        assert n_of.contains(cand)


def test_normalizer_of_zero_is_everything():
    a = special_linear(2)
    n_of = normalizer(a, a.zero_space())
    assert n_of.space == a.space


# ---------------------------------------------------------------------------
# element classification
# ---------------------------------------------------------------------------


def test_jordan_flags_oracles():
    assert jordan_flags(_E(2, 0, 1)) == "nilpotent"
    assert jordan_flags(_diag(1, -1)) == "semisimple"
    # distinct eigenvalues force semisimplicity even in triangular form
    assert jordan_flags(_diag(1, -1) + _E(2, 0, 1)) == "semisimple"
    # a repeated eigenvalue with an off-diagonal coupling is genuinely mixed
    assert jordan_flags(_diag(1, 1, -2) + _E(3, 0, 1)) == "mixed"
    assert jordan_flags(ExactMatrix.zeros(2)) == "semisimple"
    assert jordan_flags(_diag(QI(0, 1), QI(0, -1))) == "semisimple"


def test_jordan_flags_checks_ambient():
    a = block_special_linear([1, 1])
    with pytest.raises(ValueError, match="not inside ambient"):
        jordan_flags(_E(2, 0, 1), a)


def test_rational_roots():
    # (t - 1)(t - i)
    p = [QI(1), QI(-1) + QI(0, -1), QI(0, 1)]
    roots = rational_roots(p)
    assert roots == [QI(0, 1), QI(1)] or roots == sorted(
        [QI(1), QI(0, 1)], key=lambda r: (r.re, r.im)
    )
    # t^2 - 2 has no rational roots
    assert rational_roots([QI(1), QI(0), QI(-2)]) == []
    # t^2 + 1 factors over Q(i)
    assert rational_roots([QI(1), QI(0), QI(1)]) == [QI(0, -1), QI(0, 1)]


# ---------------------------------------------------------------------------
# chain invariants
# ---------------------------------------------------------------------------


def test_radn_inside_nr_examples():
    a = block_special_linear([2, 2])
    v = make_subalgebra(a, [_diag(1, -1, 1, -1), _E(4, 0, 1) + _E(4, 2, 3)])
    radn = subspace_intersect(radical(v), v.derived)
    assert nr(v).contains_space(radn)

    b = special_linear(3)
    borel = make_subalgebra(
        b, [_diag(1, -1, 0), _diag(0, 1, -1), _E(3, 0, 1), _E(3, 0, 2), _E(3, 1, 2)]
    )
    radn = subspace_intersect(radical(borel), borel.derived)
    assert nr(borel).contains_space(radn)
    assert nr(borel) == echelonize([_E(3, 0, 1), _E(3, 0, 2), _E(3, 1, 2)])


def test_splittability():
    a = special_linear(2)
    borel = make_subalgebra(a, [_diag(1, -1), _E(2, 0, 1)])
    assert borel.is_splittable
    # the span of a single mixed element is a subalgebra but not splittable
    b = special_linear(3)
    v = make_subalgebra(b, [_diag(1, 1, -2) + _E(3, 0, 1)])
    assert not v.is_splittable
    # a triangular element with distinct eigenvalues is semisimple, so its
    # span is splittable after all
    u = make_subalgebra(a, [_diag(1, -1) + _E(2, 0, 1)])
    assert u.is_splittable
