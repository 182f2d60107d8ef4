import numpy as np
import pytest

from unideriv.errors import InvalidDimensionError, PrecisionError
from unideriv.linalg import (
    SeedStream,
    UnitaryMatrix,
    eigenvalues_unitary,
    haar_unitary,
    qr_haar_fix,
    sample_ginibre,
)


class TestSampleGinibre:
    def test_determinism_same_stream(self):
        s = SeedStream(123, 7)
        a = sample_ginibre(1, s)
        b = sample_ginibre(1, s)
        assert np.array_equal(a, b)

    def test_determinism_full_matrix(self):
        s = SeedStream(99, 2)
        a = sample_ginibre(8, s)
        b = sample_ginibre(8, s)
        assert np.array_equal(a, b)

    def test_distinct_streams_differ(self):
        a = sample_ginibre(2, SeedStream(5, 0))
        b = sample_ginibre(2, SeedStream(5, 1))
        assert not np.allclose(a, b)

    def test_invalid_dimension(self):
        with pytest.raises(InvalidDimensionError):
            sample_ginibre(0, SeedStream(1, 0))

    def test_moments(self):
        # ~1e5 scalar samples per component across many n=8 draws
        entries = np.concatenate([
            sample_ginibre(8, SeedStream(42, i)).ravel() for i in range(1563)
        ])
        for comp in (entries.real, entries.imag):
            assert -0.02 < comp.mean() < 0.02
            assert 0.98 < comp.var() < 1.02


class TestQrHaarFix:
    def test_identity_in_identity_out(self):
        u = qr_haar_fix(np.eye(4, dtype=complex))
        assert np.allclose(u.matrix, np.eye(4), atol=1e-14)

    @pytest.mark.parametrize("n", [2, 8, 33])
    def test_unitarity_contract(self, n):
        for i in range(5):
            u = qr_haar_fix(sample_ginibre(n, SeedStream(7, i)))
            defect = np.linalg.norm(u.matrix.conj().T @ u.matrix - np.eye(n))
            assert defect <= 1e-10 * n
            assert u.unitarity_defect <= 1e-10 * n

    def test_nonsquare_rejected(self):
        with pytest.raises(InvalidDimensionError):
            qr_haar_fix(np.ones((2, 3), dtype=complex))

    def test_eigenangle_uniformity(self):
        # each of 16 angular bins within 5 sigma of its expectation
        n, m, bins = 8, 2000, 16
        angles = np.concatenate([
            eigenvalues_unitary(haar_unitary(n, SeedStream(13, i))).angles
            for i in range(m)
        ])
        counts, _ = np.histogram(angles, bins=bins, range=(0, 2 * np.pi))
        expected = n * m / bins
        sigma = np.sqrt(expected * (1 - 1 / bins))
        assert np.all(np.abs(counts - expected) <= 5 * sigma)


class TestEigenvaluesUnitary:
    def test_diagonal_matrix(self):
        u = UnitaryMatrix(np.diag([1, 1j, -1]).astype(complex), 0.0)
        spec = eigenvalues_unitary(u)
        assert np.allclose(spec.angles, [0.0, np.pi / 2, np.pi], atol=1e-12)

    def test_plane_rotation(self):
        phi = 0.7
        r = np.array([[np.cos(phi), -np.sin(phi)],
                      [np.sin(phi), np.cos(phi)]], dtype=complex)
        spec = eigenvalues_unitary(UnitaryMatrix(r, 0.0))
        assert np.allclose(spec.angles, [phi, 2 * np.pi - phi], atol=1e-12)

    def test_det_consistency(self):
        # sum of angles must equal arg det(u) mod 2pi, det via LU
        for i in range(5):
            u = haar_unitary(8, SeedStream(31, i))
            spec = eigenvalues_unitary(u)
            sign, _ = np.linalg.slogdet(u.matrix)
            diff = np.angle(np.exp(1j * (spec.angles.sum() - np.angle(sign))))
            assert abs(diff) <= 1e-8

    def test_modulus_tolerance_enforced(self):
        bad = np.diag([1.0, 1.0 + 1e-3]).astype(complex)
        with pytest.raises(PrecisionError):
            eigenvalues_unitary(UnitaryMatrix(bad, 0.0), tol=1e-6)
