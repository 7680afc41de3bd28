import numpy as np
import pytest

from gqd import bloch, discord, errors, matcore
from gqd.states import (
    build,
    classical_quantum,
    max_entangled,
    proj,
    random_classical_quantum,
    random_product,
    random_state,
    random_unitary,
)


def werner(p):
    m = p * proj(max_entangled(2)) + (1 - p) * np.eye(4) / 4
    return matcore.validate_density(m, 2, 2)


class TestMMatrix:
    def test_zero_triplet(self):
        t = bloch.BlochTriplet(3, 3, np.zeros(8), np.zeros(8), np.zeros((8, 8)))
        assert np.max(np.abs(discord.m_matrix(t).matrix)) == 0.0

    @pytest.mark.parametrize("alpha", [2.0, 3.0, 4.5])
    def test_alpha_spectrum(self, alpha):
        # reference spectrum: 32/441 (multiplicity 6) and
        # (8/441)(19 + 3(alpha-5)alpha) (multiplicity 2)
        t = bloch.decompose(build("alpha", alpha=alpha))
        m = discord.m_matrix(t)
        ev = np.sort(np.linalg.eigvalsh(m.matrix))[::-1]
        tail = 8.0 / 441.0 * (19.0 + 3.0 * (alpha - 5.0) * alpha)
        expected = np.sort(np.concatenate([np.full(6, 32.0 / 441.0), np.full(2, tail)]))[::-1]
        assert np.allclose(ev, expected, atol=1e-12)

    def test_variants_agree_for_isotropic(self):
        t = bloch.decompose(build("isotropic", beta=0.4))
        ma = discord.m_matrix(t, discord.A_SIDE).matrix
        mb = discord.m_matrix(t, discord.B_SIDE).matrix
        assert np.allclose(np.linalg.eigvalsh(ma), np.linalg.eigvalsh(mb), atol=1e-12)

    def test_b_side_needs_square(self):
        t = bloch.decompose(random_state(2, 3, seed=1))
        with pytest.raises(errors.VariantUnavailable):
            discord.m_matrix(t, discord.B_SIDE)
        # A_side variant exists and has A-side size (d1^2-1)
        assert discord.m_matrix(t, discord.A_SIDE).matrix.shape == (3, 3)


class TestTwoQubit:
    def test_product_zero(self):
        assert discord.gqd_two_qubit(random_product(2, 2, seed=3)).value == 0.0

    def test_werner_half(self, fast_oracle):
        val = discord.gqd_two_qubit(werner(0.5)).value
        assert val == pytest.approx(1 / 8, abs=1e-12)
        orc = discord.oracle_gqd(werner(0.5), fast_oracle)
        assert orc.value == pytest.approx(val, abs=1e-9)

    def test_qkd_ex1_pairs(self):
        # closed forms for the two shield pairs: q^2/16 and (1-r)/16.
        # (The source text prints these two forms against the opposite pairs;
        # the figure axis ranges confirm this assignment.  See decisions log.)
        from gqd.states import qkd_ex1_matrices

        for q, r in [(0.1, 0.25), (0.4, 0.4)]:
            s0, s1, s2, s3 = qkd_ex1_matrices(q, r)
            pair0 = matcore.validate_density((s0 + s1) / 2, 2, 2)
            pair1 = matcore.validate_density((s2 + s3) / 2, 2, 2)
            assert discord.gqd_two_qubit(pair0).value == pytest.approx(q * q / 16, abs=1e-12)
            assert discord.gqd_two_qubit(pair1).value == pytest.approx((1 - r) / 16, abs=1e-12)

    def test_wrong_dimension(self):
        with pytest.raises(errors.WrongDimension):
            discord.gqd_two_qubit(random_state(3, 3, seed=0))


class TestThreeByThree:
    def test_diagonal_zero(self):
        assert discord.gqd_3x3(build("diag", seed=4)).value <= 1e-12

    def test_isotropic_third(self):
        val = discord.gqd_3x3(build("isotropic", beta=1 / 3)).value
        assert val == pytest.approx(32 / 2187, abs=1e-12)

    def test_cons33(self):
        val = discord.gqd_3x3(build("cons33")).value
        assert val == pytest.approx(16 * (23 - 3 * np.sqrt(5)) / 29403, abs=1e-12)

    def test_wrong_dimension(self):
        with pytest.raises(errors.WrongDimension):
            discord.gqd_3x3(werner(0.5))


class TestGeneral:
    @pytest.mark.parametrize("dims", [(2, 2), (2, 3), (3, 3), (3, 4)])
    def test_maximally_mixed_zero(self, dims):
        d = dims[0] * dims[1]
        rho = matcore.validate_density(np.eye(d) / d, *dims)
        assert discord.gqd_general(rho).value == 0.0

    def test_cons44(self):
        # the published 13/256 subtracts two eigenvalues; the formula's
        # d1 - 1 = 3 rule gives 12/256 (see decisions log)
        val = discord.gqd_general(build("cons44")).value
        assert val == pytest.approx(12 / 256, abs=1e-12)

    def test_matches_3x3(self):
        rho = build("isotropic", beta=0.5)
        assert discord.gqd_general(rho).value == pytest.approx(
            discord.gqd_3x3(rho).value, abs=1e-13)
        assert discord.gqd_general(rho).value == pytest.approx(32 / 243 * 0.25, abs=1e-12)

    def test_matches_two_qubit(self):
        for k in range(10):
            rho = random_state(2, 2, seed=[21, k])
            a = discord.gqd_general(rho).value
            b = discord.gqd_two_qubit(rho).value
            assert a == pytest.approx(b, abs=1e-13)

    def test_wrong_dimension(self):
        rho = matcore.validate_density(np.eye(2) / 2, 2, 1)
        with pytest.raises(errors.WrongDimension):
            discord.gqd_general(rho)


class TestClosestClassical:
    def test_zero_state_params(self):
        t = bloch.BlochTriplet(3, 3, np.zeros(8), np.zeros(8), np.zeros((8, 8)))
        a1 = np.zeros(8)
        a1[0] = np.sqrt(4 / 3)
        a2 = np.zeros(8)
        a2[0] = -0.5 * np.sqrt(4 / 3)
        a2[1] = np.sqrt(4 / 3) * np.sqrt(3) / 2
        params = discord.closest_classical_params(t, a1, a2)
        assert params.t == (0.0, 0.0)
        assert np.max(np.abs(params.u)) == 0.0
        assert np.max(np.abs(params.r1)) == 0.0
        assert np.max(np.abs(params.r2)) == 0.0
        assert sum(params.probabilities) == pytest.approx(1.0, abs=1e-14)

    def test_isotropic_u_vanishes(self):
        rho = build("isotropic", beta=0.3)
        t = bloch.decompose(rho)
        m = discord.m_matrix(t).matrix
        a1, a2 = discord.top_eigvec_a_pair(m)
        params = discord.closest_classical_params(t, a1, a2)
        assert np.max(np.abs(params.u)) <= 1e-12

    def test_norm_violation(self):
        t = bloch.BlochTriplet(3, 3, np.zeros(8), np.zeros(8), np.zeros((8, 8)))
        with pytest.raises(errors.NormViolation):
            discord.closest_classical_params(t, np.ones(8), np.ones(8))

    def test_stationarity_finite_difference(self):
        # directional derivatives of ||rho - chi||_2^2 vanish at the returned
        # parameters (step 1e-5, tolerance 1e-6)
        for k in range(3):
            rho = random_state(3, 3, seed=[31, k])
            t = bloch.decompose(rho)
            m = discord.m_matrix(t).matrix
            a1, a2 = discord.top_eigvec_a_pair(m)
            params = discord.closest_classical_params(t, a1, a2)

            def dist(p):
                chi_t = discord.classical_triplet(p, a1, a2)
                chi = bloch.reconstruct_matrix(chi_t)
                return float(np.sum(np.abs(rho.matrix - chi) ** 2))

            base = dist(params)
            eps = 1e-5
            worst = 0.0
            for mutate in _param_mutations(params):
                deriv = (dist(mutate(eps)) - dist(mutate(-eps))) / (2 * eps)
                worst = max(worst, abs(deriv))
                assert dist(mutate(1e-4)) >= base - 1e-12
                assert dist(mutate(-1e-4)) >= base - 1e-12
            assert worst <= 1e-6

    def test_quadratic_form_combination(self):
        # the printed per-vector identities a_k^t M a_k = (4/3) lam_k hold only
        # for the top vector, but the combination entering the final formula
        # telescopes to 2 (lam1 + lam2) for any valid (a1, a2) pair
        rho = random_state(3, 3, seed=77)
        t = bloch.decompose(rho)
        m = discord.m_matrix(t).matrix
        lam = np.sort(np.linalg.eigvalsh(m))[::-1]
        a1, a2 = discord.top_eigvec_a_pair(m)
        assert a1 @ m @ a1 == pytest.approx(4 / 3 * lam[0], abs=1e-10)
        combo = 2 * (a1 @ m @ a1 + a2 @ m @ a2) + (a1 @ m @ a2 + a2 @ m @ a1)
        assert combo == pytest.approx(2 * (lam[0] + lam[1]), abs=1e-10)

    def test_wrong_dims(self):
        t = bloch.decompose(random_state(2, 2, seed=0))
        with pytest.raises(errors.WrongDimension):
            discord.closest_classical_params(t, np.zeros(3), np.zeros(3))


def _param_mutations(params):
    import copy

    muts = []

    def t_mut(idx):
        def m(h):
            p = copy.deepcopy(params)
            tl = list(p.t)
            tl[idx] += h
            p.t = tuple(tl)
            return p

        return m

    muts.extend([t_mut(0), t_mut(1)])
    for attr in ("u", "r1", "r2"):
        for comp in range(0, 8, 3):
            def v_mut(a=attr, c=comp):
                def m(h):
                    p = copy.deepcopy(params)
                    arr = getattr(p, a).copy()
                    arr[c] += h
                    setattr(p, a, arr)
                    return p

                return m

            muts.append(v_mut())
    return muts


class TestOracle:
    def test_product_zero(self, fast_oracle):
        res = discord.oracle_gqd(random_product(3, 3, seed=1), fast_oracle)
        assert res.value <= 1e-9
        assert res.converged

    def test_isotropic_value(self, fast_oracle):
        # true minimum over measurements is (2/3) beta^2 for the isotropic
        # family (every basis attains it); the analytic formula sits below
        rho = build("isotropic", beta=0.25)
        res = discord.oracle_gqd(rho, fast_oracle)
        assert res.value == pytest.approx(2 / 3 * 0.25 ** 2, abs=1e-9)
        assert res.value >= discord.gqd_3x3(rho).value - 1e-9

    def test_random_two_qubit_matches_analytic(self, fast_oracle):
        for k in range(10):
            rho = random_state(2, 2, seed=[41, k])
            analytic = discord.gqd_two_qubit(rho).value
            res = discord.oracle_gqd(rho, fast_oracle)
            assert res.value == pytest.approx(analytic, abs=1e-9)

    def test_classical_quantum_zero(self, fast_oracle):
        for k in range(5):
            chi = random_classical_quantum(3, 3, seed=[51, k])
            assert discord.oracle_gqd(chi, fast_oracle).value <= 1e-9
            assert discord.gqd_3x3(chi).value <= 1e-9

    def test_degenerate_probability_is_product(self, fast_oracle):
        u = random_unitary(3, np.random.default_rng(6))
        rho_b = random_state(3, 1, seed=8).matrix
        chi = classical_quantum(u, [1.0, 0.0, 0.0], [rho_b, rho_b, rho_b])
        # p = (1, 0, 0) collapses to a pure product state
        assert discord.gqd_3x3(chi).value <= 1e-12
        assert discord.oracle_gqd(chi, fast_oracle).value <= 1e-12

    def test_deterministic(self):
        rho = random_state(2, 2, seed=9)
        cfg = discord.OracleConfig(restarts=4, seed=123)
        r1 = discord.oracle_gqd(rho, cfg)
        r2 = discord.oracle_gqd(rho, cfg)
        assert r1.value == r2.value
        assert np.array_equal(r1.basis, r2.basis)

    def test_unconverged_flag(self):
        rho = random_state(3, 3, seed=10)
        cfg = discord.OracleConfig(restarts=1, max_iters=3)
        res = discord.oracle_gqd(rho, cfg)
        assert not res.converged
        assert res.value >= 0.0

    def test_restart_validation(self):
        with pytest.raises(ValueError):
            discord.OracleConfig(restarts=0)


class TestInvariances:
    def test_local_unitary_invariance_analytic(self, rng):
        for dims, fn in [((2, 2), discord.gqd_two_qubit), ((3, 3), discord.gqd_3x3)]:
            for k in range(5):
                rho = random_state(*dims, seed=[61, k])
                ua = random_unitary(dims[0], rng)
                ub = random_unitary(dims[1], rng)
                u = np.kron(ua, ub)
                rotated = matcore.validate_density(u @ rho.matrix @ u.conj().T, *dims)
                assert fn(rotated).value == pytest.approx(fn(rho).value, abs=1e-9)

    def test_nonnegative_and_clamped(self):
        for k in range(20):
            rho = random_state(3, 3, seed=[71, k])
            assert discord.gqd_3x3(rho).value >= 0.0

    def test_clamp_guard(self):
        assert discord._clamp(-5e-10) == 0.0
        assert discord._clamp(0.25) == 0.25
        with pytest.raises(errors.InternalInconsistency):
            discord._clamp(-1e-6)
