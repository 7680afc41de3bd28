import numpy as np
import pytest

from gqd import bloch, errors, matcore
from gqd.states import build, product_state, random_state

SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]])
SZ = np.array([[1, 0], [0, -1]], dtype=complex)


class TestBasis:
    def test_dimension_too_small(self):
        with pytest.raises(errors.DimensionTooSmall):
            bloch.build_basis(1)

    def test_qubit_basis_is_pauli(self):
        b = bloch.build_basis(2)
        assert np.array_equal(b.symmetric[0], SX)
        assert np.array_equal(b.antisymmetric[0], SY)
        assert np.array_equal(b.diagonal[0], SZ)

    def test_qutrit_block_sizes(self):
        b = bloch.build_basis(3)
        assert (len(b.symmetric), len(b.antisymmetric), len(b.diagonal)) == (3, 3, 2)
        assert len(b.matrices) == 8

    @pytest.mark.parametrize("d", [2, 3, 4, 5])
    def test_traceless_orthogonal_normalized(self, d):
        mats = bloch.build_basis(d).matrices
        assert len(mats) == d * d - 1
        gram = np.array([[np.trace(a @ b).real for b in mats] for a in mats])
        assert np.max(np.abs(gram - 2 * np.eye(len(mats)))) <= 1e-14
        for m in mats:
            assert abs(np.trace(m)) <= 1e-14
            assert np.max(np.abs(m - m.conj().T)) == 0.0

    def test_cached(self):
        assert bloch.build_basis(3) is bloch.build_basis(3)


class TestDecompose:
    def test_maximally_mixed(self):
        rho = matcore.validate_density(np.eye(9) / 9, 3, 3)
        t = bloch.decompose(rho)
        assert np.max(np.abs(t.x)) <= 1e-14
        assert np.max(np.abs(t.y)) <= 1e-14
        assert np.max(np.abs(t.T)) <= 1e-14

    @pytest.mark.parametrize("alpha", [2.0, 2.5, 3.4, 5.0])
    def test_alpha_state_worked_values(self, alpha):
        # frozen reference: x = 0, T = diag(4/21 x3, -4/21 x3) plus a 2x2 tail
        # block [[-1/21, (2a-5)/(7 sqrt3)], [(5-2a)/(7 sqrt3), -1/21]]
        t = bloch.decompose(build("alpha", alpha=alpha))
        assert np.max(np.abs(t.x)) <= 1e-12
        diag = np.diag(t.T)
        assert np.allclose(diag[:3], 4 / 21, atol=1e-12)
        assert np.allclose(diag[3:6], -4 / 21, atol=1e-12)
        assert np.allclose(diag[6:], -1 / 21, atol=1e-12)
        assert t.T[6, 7] == pytest.approx((2 * alpha - 5) / (7 * np.sqrt(3)), abs=1e-12)
        assert t.T[7, 6] == pytest.approx((5 - 2 * alpha) / (7 * np.sqrt(3)), abs=1e-12)
        off = t.T - np.diag(diag)
        off[6, 7] = off[7, 6] = 0.0
        assert np.max(np.abs(off)) <= 1e-12

    def test_product_state_outer_structure(self, rng):
        b = rng.normal(size=8)
        c = rng.normal(size=8)
        b *= 0.08 / np.linalg.norm(b)
        c *= 0.08 / np.linalg.norm(c)
        rho = product_state(b, c)
        t = bloch.decompose(rho)
        # x = 2b, y = 2c, T = 4 b c^t under the trace convention
        assert np.allclose(t.x, 2 * b, atol=1e-12)
        assert np.allclose(t.y, 2 * c, atol=1e-12)
        assert np.allclose(t.T, 4 * np.outer(b, c), atol=1e-12)

    def test_imaginary_residue_guard(self):
        m = np.eye(9, dtype=complex) / 9
        m[0, 1] = 1e-6j  # not Hermitian; bypass validation deliberately
        dm = matcore.DensityMatrix(3, 3, m)
        with pytest.raises(errors.InternalInconsistency):
            bloch.decompose(dm)


class TestReconstruct:
    def test_zero_triplet(self):
        t = bloch.BlochTriplet(3, 3, np.zeros(8), np.zeros(8), np.zeros((8, 8)))
        dm = bloch.reconstruct(t)
        assert np.allclose(dm.matrix, np.eye(9) / 9, atol=1e-15)

    @pytest.mark.parametrize("dims", [(2, 2), (2, 3), (3, 3), (4, 4)])
    def test_round_trip(self, dims):
        for k in range(10):
            rho = random_state(*dims, seed=[11, k])
            t = bloch.decompose(rho)
            back = bloch.reconstruct(t)
            assert np.max(np.abs(back.matrix - rho.matrix)) <= 1e-12
            t2 = bloch.decompose(back)
            assert np.allclose(t2.x, t.x, atol=1e-12)
            assert np.allclose(t2.T, t.T, atol=1e-12)

    def test_isotropic_round_trip(self):
        rho = build("isotropic", beta=0.2)
        back = bloch.reconstruct(bloch.decompose(rho))
        assert np.max(np.abs(back.matrix - rho.matrix)) <= 1e-12

    def test_unphysical_triplet_rejected(self):
        x = np.zeros(8)
        x[0] = 10.0
        t = bloch.BlochTriplet(3, 3, x, np.zeros(8), np.zeros((8, 8)))
        with pytest.raises(errors.NotPSD):
            bloch.reconstruct(t)
        dm = bloch.reconstruct(t, require_state=False)
        assert np.trace(dm.matrix).real == pytest.approx(1.0, abs=1e-12)

    def test_shape_mismatch(self):
        t = bloch.BlochTriplet(3, 3, np.zeros(3), np.zeros(8), np.zeros((8, 8)))
        with pytest.raises(ValueError):
            bloch.reconstruct(t)
