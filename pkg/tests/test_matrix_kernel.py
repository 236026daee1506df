import unittest
import sys
import os

import numpy as np

# Ensure project root is in path
sys.path.append(os.getcwd())

from utils.exceptions import NotHermitian, NotPositiveDefinite, Singular
from utils.matrix_kernel import (
    RealLinearMap, hermitian_eigen, is_unitary, numeric_rank, polar_decompose, random_complex,
    realify, relative_error, sqrt_posdef, subspace_rank_and_equal,
)


def random_invertible(rng, n, max_condition=1e3):
    while True:
        M = random_complex(rng, n)
        if np.linalg.cond(M) < max_condition:
            return M


def random_hermitian(rng, n):
    A = random_complex(rng, n)
    return 0.5 * (A + A.conj().T)


def random_posdef(rng, n):
    A = random_invertible(rng, n)
    return A.conj().T @ A


def random_unitary(rng, n):
    Q, R = np.linalg.qr(random_complex(rng, n))
    return Q * (np.diag(R) / np.abs(np.diag(R)))


def characteristic_polynomial(H):
    """Coefficients of det(x I - H), highest degree first, by trace recursion."""
    n = H.shape[0]
    coeffs = [1.0 + 0j]
    M = np.zeros_like(H, dtype=complex)
    for k in range(1, n + 1):
        M = H @ M + coeffs[-1] * np.eye(n)
        coeffs.append(-np.trace(H @ M) / k)
    return np.array(coeffs)


class TestMatrixKernel(unittest.TestCase):
    def setUp(self):
        self.rng = np.random.default_rng(7)

    def test_polar_decompose_seed_7(self):
        """M = U P with U unitary and P positive definite."""
        for n in (1, 3, 5):
            M = random_invertible(self.rng, n)
            U, P = polar_decompose(M)
            self.assertTrue(is_unitary(U, 1e-9))
            self.assertLess(relative_error(U @ P, M), 1e-10)
            self.assertGreater(np.linalg.eigvalsh(P).min(), 0.0)

    def test_polar_of_singular_matrix(self):
        """A rank-deficient matrix has no polar decomposition here."""
        with self.assertRaises(Singular):
            polar_decompose(np.array([[1.0, 2.0], [2.0, 4.0]]))

    def test_hermitian_eigen_descending(self):
        """Eigenvalues come back in descending order with a unitary eigenbasis."""
        H = random_hermitian(self.rng, 4)
        values, V = hermitian_eigen(H)
        self.assertTrue(np.all(np.diff(values) <= 0))
        self.assertTrue(is_unitary(V, 1e-9))
        self.assertLess(relative_error((V * values) @ V.conj().T, H), 1e-10)

    def test_hermitian_eigen_rejects_non_hermitian(self):
        with self.assertRaises(NotHermitian):
            hermitian_eigen(np.array([[1.0, 2.0], [0.0, 1.0]]))

    def test_sqrt_posdef_squares_back(self):
        P = random_posdef(self.rng, 4)
        S = sqrt_posdef(P)
        self.assertLess(relative_error(S @ S, P), 1e-10)

    def test_sqrt_posdef_rejects_indefinite(self):
        """diag(1, -1) has no positive-definite square root."""
        with self.assertRaises(NotPositiveDefinite):
            sqrt_posdef(np.diag([1.0, -1.0]))

    def test_polar_reassembly_seed_11(self):
        """U P reassembles M across sizes 1..8."""
        rng = np.random.default_rng(11)
        for trial in range(400):
            n = 1 + trial % 8
            M = random_invertible(rng, n)
            U, P = polar_decompose(M)
            self.assertLess(relative_error(U @ P, M), 1e-10, f"trial {trial}, n = {n}")
            self.assertTrue(is_unitary(U, 1e-8), f"trial {trial}, n = {n}")
            self.assertLess(relative_error(P, P.conj().T), 1e-12)

    def test_hermitian_eigen_matches_polynomial_roots_seed_5(self):
        """Eigenvalues agree with the roots of the characteristic polynomial for n <= 5."""
        rng = np.random.default_rng(5)
        for n in range(1, 6):
            spectrum = np.arange(n) - 2.0 + 0.25 * rng.random(n)
            V = random_unitary(rng, n)
            H = (V * spectrum) @ V.conj().T
            values, _ = hermitian_eigen(H)
            roots = np.roots(characteristic_polynomial(H))
            self.assertLess(np.max(np.abs(roots.imag)), 1e-8)
            roots = np.sort(roots.real)[::-1]
            np.testing.assert_allclose(values, roots, atol=1e-8)
            np.testing.assert_allclose(values, np.sort(spectrum)[::-1], atol=1e-10)

    def test_sqrt_posdef_commutes_with_unitary_conjugation_seed_19(self):
        """sqrt(U P U*) = U sqrt(P) U*."""
        rng = np.random.default_rng(19)
        for n in (1, 2, 4, 6):
            P = random_posdef(rng, n)
            U = random_unitary(rng, n)
            lhs = sqrt_posdef(U @ P @ U.conj().T)
            rhs = U @ sqrt_posdef(P) @ U.conj().T
            self.assertLess(relative_error(lhs, rhs), 1e-9)

    def test_numeric_rank_cutoff(self):
        """Singular values below the relative cutoff count as zero."""
        M = np.diag([1.0, 1e-3, 1e-14])
        self.assertEqual(numeric_rank(M), 2)
        self.assertEqual(numeric_rank(np.zeros((3, 3))), 0)

    def test_realify_complex_multiplication(self):
        """Multiplication by i on C^1 realifies to a rotation by 90 degrees."""
        T = realify(lambda X: 1j * X, [np.array([[1.0]])])
        self.assertEqual(T.dim_real, 2)
        self.assertLess(relative_error(T.matrix @ T.matrix, -np.eye(2)), 1e-12)

    def test_subspace_comparison_projection(self):
        """For a projection A and B = I - A, image(B) = kernel(A)."""
        A = RealLinearMap(np.diag([1.0, 1.0, 0.0, 0.0]), 2)
        B = RealLinearMap(np.diag([0.0, 0.0, 1.0, 1.0]), 2)
        report = subspace_rank_and_equal(A, B)
        self.assertEqual((report.rank_a, report.rank_b), (2, 2))
        self.assertTrue(report.image_b_in_kernel_a)
        self.assertTrue(report.kernel_a_in_image_b)
        self.assertFalse(report.images_equal)


if __name__ == '__main__':
    unittest.main()
