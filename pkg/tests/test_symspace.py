"""Tests for the symmetric-space numerics: distances, Jacobi fields, the
two-stage group decomposition, the exhaustion function, and the associated
inequalities and probes."""

import itertools
import math

import numpy as np
import pytest
import scipy.linalg

from crmostow import catalog
from crmostow.errors import NonConvergenceError, RestartDisagreementError
from crmostow.symspace import (
    CounterexampleReport,
    JacobiFieldSpec,
    MostowDecomposition,
    SpdPoint,
    _check_restart_agreement,
    commuting_split,
    counterexample_search,
    dist,
    exhaustion_phi,
    geodesic_variation_spec,
    jacobi_energy,
    jacobi_eval,
    jacobi_norm_sq,
    minor_log_inequality,
    mostow_decompose,
    mostow_structure,
    phi_levi_probe,
    polar_decompose,
    random_compact_element,
    random_group_element,
)


def _random_traceless(n, rng):
    z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return z - np.trace(z) / n * np.eye(n)


def _random_traceless_hermitian(n, rng):
    x = _random_traceless(n, rng)
    x = 0.5 * (x + x.conj().T)
    return x - np.trace(x) / n * np.eye(n)


def _random_spec(n, rng, distinct_eigenvalues=False):
    """A random valid Jacobi-field specification."""
    if distinct_eigenvalues:
        d = np.sort(rng.standard_normal(n))
        h = np.diag(d - d.mean()).astype(complex)
    else:
        h = _random_traceless_hermitian(n, rng)
    z = _random_traceless(n, rng)
    evals, u = np.linalg.eigh(h)
    t = (u * rng.standard_normal(n)) @ u.conj().T
    t = 0.5 * (t + t.conj().T)
    return JacobiFieldSpec(h, z, t)


def _random_spd_det_one(n, rng):
    a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    p = a @ a.conj().T + 0.1 * np.eye(n)
    p = p / np.linalg.det(p).real ** (1.0 / n)
    return 0.5 * (p + p.conj().T)


def _synthesize(structure, rng, scale=0.4, with_compact=True, with_complement=False):
    """Build zeta = u·exp(X0)·exp(Z0)·v0 from random chart coordinates,
    returning (zeta, X0)."""
    n = structure.size
    u0 = (
        random_compact_element(structure, rng, scale=scale)
        if with_compact
        else np.eye(n, dtype=complex)
    )
    x0 = np.zeros((n, n), dtype=complex)
    for c, m in zip(scale * rng.standard_normal(structure.fiber_dim), structure.fiber_basis):
        x0 = x0 + c * m
    z0 = np.zeros((n, n), dtype=complex)
    if with_complement and structure.complement_dim:
        for (a, b), m in zip(
            scale * rng.standard_normal((structure.complement_dim, 2)),
            structure.complement_basis,
        ):
            z0 = z0 + complex(a, b) * m
    nmat = np.zeros((n, n), dtype=complex)
    for (a, b), m in zip(
        scale * rng.standard_normal((len(structure.nil_basis), 2)),
        structure.nil_basis,
    ):
        nmat = nmat + complex(a, b) * m
    pmat = np.zeros((n, n), dtype=complex)
    for c, m in zip(
        scale * rng.standard_normal(len(structure.herm_basis)), structure.herm_basis
    ):
        pmat = pmat + c * m
    v0 = scipy.linalg.expm(nmat) @ scipy.linalg.expm(pmat)
    zeta = u0 @ scipy.linalg.expm(x0) @ scipy.linalg.expm(z0) @ v0
    return zeta, x0


@pytest.fixture(scope="module")
def su22_structure():
    return mostow_structure(catalog.build("su22_f12").subalgebra)


@pytest.fixture(scope="module")
def grassmann_structure():
    entry = catalog.build("grassmann_pair", {"p": 1, "q": 2, "n": 3, "k": 1})
    return mostow_structure(entry.subalgebra)


@pytest.fixture(scope="module")
def f13_structure():
    return mostow_structure(catalog.build("su23_f13").subalgebra)


class TestDistance:
    def test_identity_distance_zero(self):
        assert dist(np.eye(3), np.eye(3)) == 0.0

    def test_two_by_two_exponential_point(self):
        p = np.diag([math.e**2, math.e**-2]).astype(complex)
        assert abs(dist(np.eye(2), p) - math.sqrt(8.0)) < 1e-12

    def test_congruence_invariance(self):
        rng = np.random.default_rng(2)
        for _ in range(20):
            n = int(rng.integers(2, 5))
            p = _random_spd_det_one(n, rng)
            q = _random_spd_det_one(n, rng)
            z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
            z = z / np.linalg.det(z) ** (1.0 / n)
            moved = dist(z.conj().T @ p @ z, z.conj().T @ q @ z)
            assert abs(moved - dist(p, q)) < 1e-8 * max(1.0, dist(p, q))

    def test_rejects_non_hermitian(self):
        bad = np.array([[1.0, 1.0], [0.0, 1.0]], dtype=complex)
        with pytest.raises(ValueError, match="not positive definite"):
            dist(bad, np.eye(2))

    def test_rejects_indefinite(self):
        with pytest.raises(ValueError, match="not positive definite"):
            dist(np.diag([1.0, -1.0]).astype(complex), np.eye(2))

    def test_point_validation(self):
        SpdPoint(np.diag([2.0, 0.5]).astype(complex))
        with pytest.raises(ValueError, match="determinant not one"):
            SpdPoint(np.diag([2.0, 1.0]).astype(complex))
        with pytest.raises(ValueError, match="not positive definite"):
            SpdPoint(np.diag([1.0, -1.0]).astype(complex))

    def test_points_accepted_by_dist(self):
        p = SpdPoint(np.diag([4.0, 0.25]).astype(complex))
        assert dist(p, SpdPoint.identity(2)) > 0


class TestPolarDecompose:
    def test_unitary_input(self):
        rng = np.random.default_rng(3)
        a = _random_traceless(3, rng)
        u0 = scipy.linalg.expm(a - a.conj().T)
        u, x = polar_decompose(u0, det_one=False)
        assert np.linalg.norm(x) < 1e-10
        assert np.linalg.norm(u - u0) < 1e-9

    def test_positive_input(self):
        rng = np.random.default_rng(4)
        x0 = _random_traceless_hermitian(3, rng)
        u, x = polar_decompose(scipy.linalg.expm(x0))
        assert np.linalg.norm(u - np.eye(3)) < 1e-9
        assert np.linalg.norm(x - x0) < 1e-9

    def test_random_special_linear_reconstruction(self):
        rng = np.random.default_rng(5)
        for _ in range(10):
            z = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
            z = z / np.linalg.det(z) ** (1.0 / 3.0)
            u, x = polar_decompose(z)
            recon = u @ scipy.linalg.expm(x)
            assert np.linalg.norm(z - recon) < 1e-10 * max(1.0, np.linalg.norm(z))
            assert abs(np.trace(x)) < 1e-10

    def test_singular_input(self):
        with pytest.raises(ValueError, match="singular input"):
            polar_decompose(np.diag([1.0, 0.0]).astype(complex))


class TestJacobiEval:
    def test_zero_spec_gives_zero_field(self):
        spec = JacobiFieldSpec(
            np.diag([1.0, -1.0]).astype(complex), np.zeros((2, 2)), np.zeros((2, 2))
        )
        j, jd = jacobi_eval(spec, 0.7)
        assert np.linalg.norm(j) == 0.0
        assert np.linalg.norm(jd) == 0.0

    def test_kernel_directions_vanish(self):
        # anti-Hermitian Z commuting with H spans the kernel of W -> theta_W
        h = np.diag([1.0, 1.0, -2.0]).astype(complex)
        z = np.zeros((3, 3), dtype=complex)
        z[0, 1], z[1, 0] = 1.0 + 2.0j, -1.0 + 2.0j  # block-diag anti-Hermitian
        spec = JacobiFieldSpec(h, z, np.zeros((3, 3)))
        for t in (0.0, 0.3, 1.0, -1.4):
            j, _ = jacobi_eval(spec, t)
            assert np.linalg.norm(j) < 1e-12

    def test_derivative_matches_transported_difference(self):
        rng = np.random.default_rng(6)
        spec = _random_spec(4, rng)
        s = 1e-5
        for t in (0.0, 0.6, -0.9):
            _, jd = jacobi_eval(spec, t)

            def transported(ds):
                jp, _ = jacobi_eval(spec, t + ds)
                e = scipy.linalg.expm(-0.5 * ds * spec.H)
                return e @ jp @ e

            fd = (transported(s) - transported(-s)) / (2 * s)
            err = np.linalg.norm(fd - jd) / max(1.0, np.linalg.norm(jd))
            assert err < 1e-6

    def test_spec_validation(self):
        h = np.diag([1.0, -1.0]).astype(complex)
        with pytest.raises(ValueError, match="H not hermitian"):
            JacobiFieldSpec(np.array([[0, 1], [0, 0]], dtype=complex), np.zeros((2, 2)), np.zeros((2, 2)))
        with pytest.raises(ValueError, match="H not traceless"):
            JacobiFieldSpec(np.eye(2, dtype=complex), np.zeros((2, 2)), np.zeros((2, 2)))
        with pytest.raises(ValueError, match="Z not traceless"):
            JacobiFieldSpec(h, np.eye(2, dtype=complex), np.zeros((2, 2)))
        with pytest.raises(ValueError, match="T not hermitian"):
            JacobiFieldSpec(h, np.zeros((2, 2)), np.array([[0, 1], [0, 0]], dtype=complex))
        with pytest.raises(ValueError, match="T does not commute"):
            JacobiFieldSpec(h, np.zeros((2, 2)), np.array([[0, 1], [1, 0]], dtype=complex))


class TestJacobiNormSq:
    def test_pure_commuting_term(self):
        h = np.diag([1.0, 0.0, -1.0]).astype(complex)
        t_mat = np.diag([2.0, -1.0, -1.0]).astype(complex)
        spec = JacobiFieldSpec(h, np.zeros((3, 3)), t_mat)
        expected_tr = float(np.real(np.trace(t_mat @ t_mat)))
        for t in (0.0, 0.5, 1.0, 2.0):
            assert abs(jacobi_norm_sq(spec, t) - 4.0 * t * t * expected_tr) < 1e-10

    def test_value_at_zero(self):
        rng = np.random.default_rng(7)
        spec = _random_spec(3, rng)
        expected = float(np.linalg.norm(spec.Z + spec.Z.conj().T) ** 2)
        assert abs(jacobi_norm_sq(spec, 0.0) - expected) < 1e-9 * max(1.0, expected)

    def test_internal_cross_check_passes_on_random_data(self):
        rng = np.random.default_rng(8)
        for trial in range(20):
            spec = _random_spec(3 + trial % 2, rng, distinct_eigenvalues=bool(trial % 3))
            t = float(rng.uniform(-2.0, 2.0))
            value = jacobi_norm_sq(spec, t)
            assert value >= -1e-12

    def test_norm_growth_from_zero_initial_value(self):
        # a field with J(0)=0 and nonzero derivative grows in norm
        rng = np.random.default_rng(9)
        h = np.diag([0.8, -0.3, -0.5]).astype(complex)
        x = _random_traceless_hermitian(3, rng)
        spec = geodesic_variation_spec(h, x)
        n_half = jacobi_norm_sq(spec, 0.5)
        n_one = jacobi_norm_sq(spec, 1.0)
        assert 0.0 < n_half < n_one


class TestJacobiEnergy:
    def test_parallel_field_has_zero_energy(self):
        h = np.diag([1.0, -0.5, -0.5]).astype(complex)
        t0 = np.diag([1.0, 2.0, -3.0]).astype(complex)
        spec = JacobiFieldSpec(h, t0, np.zeros((3, 3)))
        assert abs(jacobi_energy(spec)) < 1e-9

    def test_linear_commuting_field_energy(self):
        h = np.diag([1.0, -0.5, -0.5]).astype(complex)
        t0 = np.diag([1.0, 2.0, -3.0]).astype(complex)
        spec = JacobiFieldSpec(h, np.zeros((3, 3)), t0)
        expected = 2.0 * float(np.real(np.trace(t0 @ t0)))
        assert abs(jacobi_energy(spec) - expected) < 1e-9 * expected

    def test_nonnegative(self):
        rng = np.random.default_rng(10)
        for _ in range(10):
            spec = _random_spec(3, rng)
            assert jacobi_energy(spec) >= -1e-9

    def test_taylor_remainder_identity(self):
        rng = np.random.default_rng(11)
        for trial in range(20):
            spec = _random_spec(3 + trial % 2, rng)
            n1 = jacobi_norm_sq(spec, 1.0)
            j0, jd0 = jacobi_eval(spec, 0.0)
            n0 = float(np.real(np.trace(j0 @ j0)))
            cross = float(np.real(np.trace(j0 @ jd0)))
            total = n0 + 2.0 * cross + 2.0 * jacobi_energy(spec)
            assert abs(n1 - total) < 1e-7 * max(1.0, abs(n1))

    def test_difference_field_identity(self):
        # For traceless Z, Hermitian traceless X with tr(XZ) = 0, the field
        # D = theta_Z - J_X satisfies
        #   ||D(1)||^2 = ||Z+Z*||^2 + 2 Re tr(H[Z,Z*]) + 2*energy(D).
        rng = np.random.default_rng(12)
        for trial in range(8):
            n = 3 + trial % 2
            d = np.sort(rng.standard_normal(n))
            h = np.diag(d - d.mean()).astype(complex)
            z = _random_traceless(n, rng)
            x = _random_traceless_hermitian(n, rng)
            # remove the component with nonzero complex trace pairing with Z
            basis = [_random_traceless_hermitian(n, rng) for _ in range(12)]
            fixed = None
            for a1, a2 in itertools.combinations(basis, 2):
                m = np.array(
                    [
                        [np.trace(a1 @ z).real, np.trace(a2 @ z).real],
                        [np.trace(a1 @ z).imag, np.trace(a2 @ z).imag],
                    ]
                )
                if abs(np.linalg.det(m)) > 1e-3:
                    rhs = np.array([np.trace(x @ z).real, np.trace(x @ z).imag])
                    c = np.linalg.solve(m, rhs)
                    fixed = x - c[0] * a1 - c[1] * a2
                    break
            assert fixed is not None and abs(np.trace(fixed @ z)) < 1e-9
            y, t0 = commuting_split(h, fixed)
            diff_spec = JacobiFieldSpec(h, z - y, -0.5 * t0)
            lhs = jacobi_norm_sq(diff_spec, 1.0)
            comm = z @ z.conj().T - z.conj().T @ z
            rhs_val = (
                float(np.linalg.norm(z + z.conj().T) ** 2)
                + 2.0 * float(np.real(np.trace(h @ comm)))
                + 2.0 * jacobi_energy(diff_spec)
            )
            assert abs(lhs - rhs_val) < 1e-7 * max(1.0, abs(lhs))


class TestCommutingSplit:
    def test_reconstruction(self):
        rng = np.random.default_rng(13)
        for _ in range(5):
            h = _random_traceless_hermitian(4, rng)
            x = _random_traceless_hermitian(4, rng)
            y, t = commuting_split(h, x)
            recon = h @ y - y @ h + t
            assert np.linalg.norm(recon - x) < 1e-10
            assert np.linalg.norm(y + y.conj().T) < 1e-10  # anti-Hermitian
            assert np.linalg.norm(h @ t - t @ h) < 1e-10

    def test_variation_initial_conditions(self):
        rng = np.random.default_rng(14)
        h = np.diag([0.9, -0.3, -0.6]).astype(complex)
        x = _random_traceless_hermitian(3, rng)
        spec = geodesic_variation_spec(h, x)
        j0, jd0 = jacobi_eval(spec, 0.0)
        assert np.linalg.norm(j0) < 1e-12
        assert np.linalg.norm(jd0 - x) < 1e-12

    def test_exponential_directional_derivative(self):
        # D/ds exp(H + sX) at s=0 equals the variation field at t=1
        rng = np.random.default_rng(15)
        for _ in range(5):
            h = _random_traceless_hermitian(3, rng)
            x = _random_traceless_hermitian(3, rng)
            j1, _ = jacobi_eval(geodesic_variation_spec(h, x), 1.0)
            s = 1e-6
            fd = (scipy.linalg.expm(h + s * x) - scipy.linalg.expm(h - s * x)) / (2 * s)
            assert np.linalg.norm(fd - j1) < 1e-5 * max(1.0, np.linalg.norm(j1))


class TestFieldOrthogonality:
    @pytest.mark.parametrize("blocks", [(1, 2), (2, 1), (2, 2), (1, 3)])
    def test_block_parabolic_orthogonality(self, blocks):
        # For block-upper data: diagonal-block field vs strictly-upper field
        # are metrically orthogonal at every parameter value.
        rng = np.random.default_rng(sum(blocks))
        n = sum(blocks)
        cuts = np.cumsum((0,) + blocks)
        d = rng.standard_normal(len(blocks))
        diag_vals = np.concatenate([np.full(b, v) for b, v in zip(blocks, d)])
        diag_vals = diag_vals - diag_vals.mean()
        h = np.diag(diag_vals).astype(complex)
        z0 = np.zeros((n, n), dtype=complex)
        for a, b in zip(cuts, cuts[1:]):
            z0[a:b, a:b] = rng.standard_normal((b - a, b - a)) + 1j * rng.standard_normal(
                (b - a, b - a)
            )
        z0 -= np.trace(z0) / n * np.eye(n)
        zn = np.zeros((n, n), dtype=complex)
        for (a1, b1), (a2, b2) in itertools.combinations(zip(cuts, cuts[1:]), 2):
            zn[a1:b1, a2:b2] = rng.standard_normal((b1 - a1, b2 - a2)) + 1j * (
                rng.standard_normal((b1 - a1, b2 - a2))
            )
        t_mat = np.diag(rng.standard_normal(n)).astype(complex)
        for t in np.linspace(-2.0, 2.0, 20):
            gamma = scipy.linalg.expm(t * h)
            ginv = scipy.linalg.expm(-t * h)
            j1 = (z0.conj().T @ gamma + gamma @ z0) + t * (
                t_mat.conj().T @ gamma + gamma @ t_mat
            )
            j2 = zn.conj().T @ gamma + gamma @ zn
            ip = float(np.real(np.trace(ginv @ j1 @ ginv @ j2)))
            assert abs(ip) < 1e-9


class TestMostowStructure:
    def test_su22_dimensions(self, su22_structure):
        st = su22_structure
        assert st.size == 4 and st.blocks == (2, 2)
        assert st.fiber_dim == 4 and st.complement_dim == 0
        assert len(st.nil_basis) == 1 and len(st.herm_basis) == 1
        assert st.horocyclic and not st.strict_horocyclic

    def test_f13_dimensions(self, f13_structure):
        st = f13_structure
        assert st.fiber_dim == 2 and st.complement_dim == 2
        assert not st.horocyclic and not st.strict_horocyclic

    def test_grassmann_dimensions(self, grassmann_structure):
        st = grassmann_structure
        assert st.fiber_dim == 4 and st.complement_dim == 0
        assert len(st.nil_basis) == 3
        assert st.horocyclic and st.strict_horocyclic

    def test_random_elements_live_in_the_right_groups(self, su22_structure):
        rng = np.random.default_rng(16)
        u = random_compact_element(su22_structure, rng)
        assert np.linalg.norm(u.conj().T @ u - np.eye(4)) < 1e-10
        g = random_group_element(su22_structure, rng)
        assert abs(np.linalg.det(g) - 1.0) < 1e-8
        # block-diagonal pattern of the ambient group is preserved
        assert np.linalg.norm(g[:2, 2:]) < 1e-12 and np.linalg.norm(g[2:, :2]) < 1e-12


class TestMostowDecompose:
    def test_compact_input_gives_trivial_factors(self, su22_structure):
        rng = np.random.default_rng(17)
        u0 = random_compact_element(su22_structure, rng)
        md = mostow_decompose(u0, su22_structure, max_restarts=2)
        assert md.residual < 1e-9
        assert np.linalg.norm(md.X) < 1e-6
        assert np.linalg.norm(md.Z) < 1e-6

    def test_round_trip_recovers_fiber_norm(self, su22_structure):
        for seed in (7, 21, 35):
            rng = np.random.default_rng(seed)
            zeta, x0 = _synthesize(su22_structure, rng)
            md = mostow_decompose(zeta, su22_structure, max_restarts=3)
            assert md.residual < 1e-9
            assert abs(md.fiber_norm - np.linalg.norm(x0)) < 1e-6
            recon = (
                md.u
                @ scipy.linalg.expm(md.X)
                @ scipy.linalg.expm(md.Z)
                @ md.v_matrix
            )
            assert np.linalg.norm(zeta - recon) < 1e-8

    def test_grassmann_random_elements(self, grassmann_structure):
        for seed in (3, 9):
            rng = np.random.default_rng(seed)
            zeta = random_group_element(grassmann_structure, rng, scale=0.3)
            md = mostow_decompose(zeta, grassmann_structure, max_restarts=4)
            assert md.residual < 1e-8
            assert md.restarts_agree

    def test_nontrivial_complement_round_trip(self, f13_structure):
        rng = np.random.default_rng(11)
        zeta, x0 = _synthesize(f13_structure, rng, scale=0.3, with_complement=True)
        md = mostow_decompose(zeta, f13_structure, max_restarts=3)
        assert md.residual < 1e-8
        assert abs(md.fiber_norm - np.linalg.norm(x0)) < 1e-5

    def test_rejects_wrong_shape(self, su22_structure):
        with pytest.raises(ValueError, match="not in the group"):
            mostow_decompose(np.eye(3, dtype=complex), su22_structure)

    def test_rejects_wrong_block_pattern(self, su22_structure):
        bad = np.eye(4, dtype=complex)
        bad[0, 3] = 0.5
        with pytest.raises(ValueError, match="not in the group"):
            mostow_decompose(bad, su22_structure)

    def test_rejects_wrong_determinant(self, su22_structure):
        with pytest.raises(ValueError, match="not in the group"):
            mostow_decompose(2.0 * np.eye(4, dtype=complex), su22_structure)

    def test_restart_agreement_gate(self):
        assert _check_restart_agreement([1.0, 1.0 + 1e-9], 1e-6, strict=True)
        assert not _check_restart_agreement([1.0, 1.5], 1e-6, strict=False)
        assert not _check_restart_agreement([], 1e-6, strict=True)
        with pytest.raises(RestartDisagreementError, match="restart disagreement"):
            _check_restart_agreement([1.0, 1.5], 1e-6, strict=True)


class TestExhaustion:
    def test_zero_on_base_orbit(self, su22_structure):
        rng = np.random.default_rng(18)
        for _ in range(3):
            zeta, _ = _synthesize(su22_structure, rng, scale=0.5)
            # rebuild without the Hermitian fiber factor: u0 * v0 only
            st = su22_structure
            u0 = random_compact_element(st, rng, 0.5)
            nmat = sum(
                complex(a, b) * m
                for (a, b), m in zip(
                    0.5 * rng.standard_normal((len(st.nil_basis), 2)), st.nil_basis
                )
            )
            pmat = sum(
                c * m
                for c, m in zip(
                    0.5 * rng.standard_normal(len(st.herm_basis)), st.herm_basis
                )
            )
            point = u0 @ scipy.linalg.expm(nmat) @ scipy.linalg.expm(pmat)
            assert exhaustion_phi(point, st) < 1e-8

    def test_fiber_exponentials_attain_their_norm(self, su22_structure):
        rng = np.random.default_rng(19)
        st = su22_structure
        for _ in range(3):
            coeffs = 0.4 * rng.standard_normal(st.fiber_dim)
            x = sum(c * m for c, m in zip(coeffs, st.fiber_basis))
            phi = exhaustion_phi(scipy.linalg.expm(x), st)
            assert abs(phi - np.linalg.norm(x) ** 2) < 1e-7 * max(
                1.0, np.linalg.norm(x) ** 2
            )

    def test_left_compact_invariance(self, su22_structure):
        rng = np.random.default_rng(20)
        st = su22_structure
        zeta, _ = _synthesize(st, rng)
        base = exhaustion_phi(zeta, st)
        for _ in range(10):
            u = random_compact_element(st, rng)
            moved = exhaustion_phi(u @ zeta, st)
            assert abs(moved - base) < 1e-7 * max(1.0, base)

    def test_translated_orbit_stays_below_fiber_level(self, grassmann_structure):
        rng = np.random.default_rng(21)
        st = grassmann_structure
        for _ in range(5):
            coeffs = 0.4 * rng.standard_normal(st.fiber_dim)
            x = sum(c * m for c, m in zip(coeffs, st.fiber_basis))
            u = random_compact_element(st, rng)
            phi = exhaustion_phi(scipy.linalg.expm(x) @ u, st)
            assert phi <= np.linalg.norm(x) ** 2 + 1e-8

    def test_cross_check_against_decomposition(self, su22_structure):
        rng = np.random.default_rng(22)
        zeta, x0 = _synthesize(su22_structure, rng)
        phi = exhaustion_phi(zeta, su22_structure, cross_check=True)
        assert abs(phi - np.linalg.norm(x0) ** 2) < 1e-6 * max(
            1.0, np.linalg.norm(x0) ** 2
        )

    def test_rejects_non_group_input(self, su22_structure):
        with pytest.raises(ValueError, match="not in the group"):
            exhaustion_phi(np.eye(5, dtype=complex), su22_structure)


class TestMinorLogInequality:
    def test_diagonal_equality(self):
        h = np.diag([2.0, 2.0, 0.25]).astype(complex)
        lhs, rhs, strict = minor_log_inequality(h)
        assert abs(lhs - rhs) < 1e-12
        assert not strict

    def test_hand_checked_two_by_two(self):
        lhs, rhs, strict = minor_log_inequality(np.array([[2.0, 1.0], [1.0, 1.0]], dtype=complex))
        # eigenvalues (3 ± sqrt(5))/2, minors D1 = 2, D2 = 1
        lam = (3.0 + math.sqrt(5.0)) / 2.0
        expected_lhs = 2.0 * math.log(lam) ** 2
        expected_rhs = 2.0 * math.log(2.0) ** 2
        assert abs(lhs - 1.8524) < 1e-3 and abs(lhs - expected_lhs) < 1e-12
        assert abs(rhs - 0.9609) < 1e-3 and abs(rhs - expected_rhs) < 1e-12
        assert strict

    def test_random_positive_matrices(self):
        rng = np.random.default_rng(23)
        for trial in range(30):
            n = 2 + trial % 4
            h = _random_spd_det_one(n, rng)
            lhs, rhs, strict = minor_log_inequality(h)
            assert lhs >= rhs - 1e-10
            off = h - np.diag(np.diag(h))
            if np.linalg.norm(off) > 1e-6:
                assert strict

    def test_rejects_indefinite(self):
        with pytest.raises(ValueError, match="not positive definite"):
            minor_log_inequality(np.diag([1.0, -1.0]).astype(complex))


class TestCounterexampleSearch:
    def test_report_certifies_the_field(self):
        rep = counterexample_search(seed=0)
        assert isinstance(rep, CounterexampleReport)
        assert rep.residuals["system"] < 1e-10
        assert rep.residuals["theta_at_one"] < 1e-8
        assert rep.residuals["theta_at_zero"] > 0.1
        assert rep.residuals["orthogonality"] < 1e-10
        assert rep.residuals["nilpotency"] == 0.0
        assert rep.a * rep.b > 0

    def test_witness_matrices(self):
        rep = counterexample_search(seed=1)
        # Y is anti-Hermitian (real entries, antisymmetric)
        assert np.linalg.norm(rep.Y + rep.Y.conj().T) < 1e-12
        # Z is nilpotent: float eigenvalues of a nilpotent matrix scatter as
        # norm * eps^(1/3); the exact certificate is residuals["nilpotency"]
        assert rep.residuals["nilpotency"] == 0.0
        assert np.max(np.abs(np.linalg.eigvals(rep.Z))) < 1e-4
        # the field theta_{Z+Y} vanishes at parameter one but not at zero
        h = np.diag([rep.lambda1, rep.lambda2, -rep.lambda1 - rep.lambda2]).astype(
            complex
        )
        gamma = scipy.linalg.expm(h)
        w = rep.Z + rep.Y
        assert np.linalg.norm(w.conj().T @ gamma + gamma @ w) < 1e-8
        assert np.linalg.norm(w + w.conj().T) > 0.1

    def test_deterministic_per_seed(self):
        r1 = counterexample_search(seed=5)
        r2 = counterexample_search(seed=5)
        assert r1.lambda2 == r2.lambda2 and r1.a == r2.a


class TestHessianProbe:
    def test_zero_direction_reports_zero(self, grassmann_structure):
        st = grassmann_structure
        x = 0.3 * st.fiber_basis[0]
        probe = phi_levi_probe(
            scipy.linalg.expm(x), st, [np.zeros((4, 4), dtype=complex)]
        )
        assert probe.values == (0.0,)
        assert probe.zero == 1

    def test_noise_gate(self, grassmann_structure):
        st = grassmann_structure
        x = 0.3 * st.fiber_basis[0]
        with pytest.raises(ArithmeticError, match="step too small"):
            phi_levi_probe(
                scipy.linalg.expm(x), st, [st.nil_basis[0]], step=1e-6, gap_tol=1e-4
            )

    def test_requires_positive_base_value(self, grassmann_structure):
        direction = [np.zeros((4, 4), dtype=complex)]
        with pytest.raises(ValueError, match="not positive"):
            phi_levi_probe(np.eye(4, dtype=complex), grassmann_structure, direction)

    def test_signature_along_orbit_and_transverse_directions(
        self, grassmann_structure
    ):
        st = grassmann_structure
        rng = np.random.default_rng(1)
        coeffs = 0.3 * rng.standard_normal(st.fiber_dim)
        x = sum(c * m for c, m in zip(coeffs, st.fiber_basis))
        zeta = scipy.linalg.expm(x)
        # analytic tangent of the translated orbit: conjugates of the
        # nilpotent directions survive the quotient by the stabilizer
        orbit_dirs = [-m.conj().T for m in st.nil_basis]

        def unit(i, j):
            m = np.zeros((4, 4), dtype=complex)
            m[i, j] = 1.0
            return m

        transverse_dirs = [unit(0, 1), unit(0, 2), unit(1, 0), unit(2, 0)]
        probe = phi_levi_probe(
            zeta, st, orbit_dirs + transverse_dirs, step=1e-3, gap_tol=1e-4
        )
        orbit_vals = probe.values[: len(orbit_dirs)]
        trans_vals = probe.values[len(orbit_dirs) :]
        assert sum(1 for v in orbit_vals if v < -1e-4) >= 1
        assert sum(1 for v in trans_vals if v > 1e-4) >= 1

    def test_stabilizer_directions_are_flat(self, grassmann_structure):
        # right translation by the subalgebra itself leaves the value constant
        st = grassmann_structure
        x = 0.25 * st.fiber_basis[0] + 0.1 * st.fiber_basis[1]
        probe = phi_levi_probe(
            scipy.linalg.expm(x), st, list(st.nil_basis), step=1e-3, gap_tol=1e-4
        )
        assert probe.zero == len(st.nil_basis)
