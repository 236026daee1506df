import numpy as np
import scipy.linalg
from dataclasses import dataclass
from typing import Callable, List, Optional, Tuple

from config import DEFAULT_TOLERANCE, RANK_TOLERANCE
from utils.exceptions import DimensionMismatch, NotHermitian, NotPositiveDefinite, Singular

"""
Dense complex linear-algebra kernel used by the normalizers.
--------------------------------------------------------------
Polar decomposition, Hermitian eigendecomposition, positive-definite square
roots, numeric rank and subspace comparison on small dense matrices.
"""


@dataclass(frozen=True)
class RealLinearMap:
    """
    An R-linear map on the realification of a d-dimensional complex space,
    stored as a 2d x 2d real matrix in a fixed orthonormal real basis.
    """
    matrix: np.ndarray
    dim_complex: int

    def __post_init__(self):
        rows, cols = self.matrix.shape
        if rows != cols or rows != 2 * self.dim_complex:
            raise DimensionMismatch(
                f"Realified map has shape {self.matrix.shape}, expected {2 * self.dim_complex} square."
            )
        if np.iscomplexobj(self.matrix):
            raise DimensionMismatch("Realified map must have real entries.")

    @property
    def dim_real(self) -> int:
        return 2 * self.dim_complex


@dataclass(frozen=True)
class SubspaceReport:
    rank_a: int
    rank_b: int
    image_b_in_kernel_a: bool
    kernel_a_in_image_b: bool
    images_equal: bool


def as_matrix(M, name: str = "matrix") -> np.ndarray:
    """Coerces input to a finite complex 2d array."""
    arr = np.atleast_2d(np.asarray(M, dtype=complex))
    if arr.ndim != 2:
        raise DimensionMismatch(f"{name} must be two-dimensional, got ndim={arr.ndim}.")
    if not np.all(np.isfinite(arr)):
        raise DimensionMismatch(f"{name} has non-finite entries.")
    return arr


def relative_error(A: np.ndarray, B: np.ndarray) -> float:
    """||A - B|| / max(||B||, 1) in the Frobenius norm."""
    scale = max(np.linalg.norm(B), 1.0)
    return float(np.linalg.norm(A - B) / scale)


def is_hermitian(H: np.ndarray, tol: float = DEFAULT_TOLERANCE) -> bool:
    return relative_error(H, H.conj().T) <= tol


def is_unitary(U: np.ndarray, tol: float = DEFAULT_TOLERANCE) -> bool:
    n = U.shape[0]
    return relative_error(U.conj().T @ U, np.eye(n)) <= tol


def singular_values(M: np.ndarray) -> np.ndarray:
    return scipy.linalg.svdvals(M)


def numeric_rank(M: np.ndarray, tol: float = RANK_TOLERANCE) -> int:
    """
    Rank by singular-value threshold: values below max_sv * tol * max(shape) count as zero.
    """
    if M.size == 0:
        return 0
    sv = singular_values(M)
    if sv.size == 0 or sv[0] == 0.0:
        return 0
    cutoff = sv[0] * tol * max(M.shape)
    return int(np.sum(sv > cutoff))


def hermitian_eigen(H, tol: float = DEFAULT_TOLERANCE) -> Tuple[np.ndarray, np.ndarray]:
    """
    Eigendecomposition of a Hermitian matrix.
    Returns: (eigenvalues in descending order, unitary matrix of eigenvectors)
    """
    H = as_matrix(H, "H")
    if H.shape[0] != H.shape[1]:
        raise DimensionMismatch(f"H must be square, got {H.shape}.")
    if not is_hermitian(H, tol):
        raise NotHermitian(f"||H - H*|| exceeds tolerance {tol}.")

    # Symmetrize so eigh sees an exactly Hermitian input
    H = 0.5 * (H + H.conj().T)
    eigenvalues, eigenvectors = scipy.linalg.eigh(H)
    order = np.argsort(eigenvalues)[::-1]
    return eigenvalues[order], eigenvectors[:, order]


def sqrt_posdef(P, tol: float = DEFAULT_TOLERANCE) -> np.ndarray:
    """
    Principal square root of a Hermitian positive-definite matrix.
    """
    P = as_matrix(P, "P")
    try:
        eigenvalues, V = hermitian_eigen(P, tol)
    except NotHermitian as e:
        raise NotPositiveDefinite(str(e))

    if eigenvalues[-1] <= tol * max(eigenvalues[0], 1.0):
        raise NotPositiveDefinite(f"Smallest eigenvalue {eigenvalues[-1]:.3e} is not positive.")

    S = (V * np.sqrt(eigenvalues)) @ V.conj().T
    return 0.5 * (S + S.conj().T)


def polar_decompose(M, tol: float = DEFAULT_TOLERANCE) -> Tuple[np.ndarray, np.ndarray]:
    """
    Polar decomposition M = U P with U unitary and P Hermitian positive-definite.
    P is the square root of M*M; U = M P^-1.
    """
    M = as_matrix(M, "M")
    if M.shape[0] != M.shape[1]:
        raise DimensionMismatch(f"M must be square, got {M.shape}.")

    sv = singular_values(M)
    if sv[-1] <= tol * max(sv[0], 1.0):
        raise Singular(f"Smallest singular value {sv[-1]:.3e} below tolerance.")

    gram = M.conj().T @ M
    eigenvalues, V = hermitian_eigen(gram, tol)
    root = np.sqrt(eigenvalues)
    P = (V * root) @ V.conj().T
    P = 0.5 * (P + P.conj().T)
    U = M @ ((V / root) @ V.conj().T)
    return U, P


def null_space(M: np.ndarray, tol: float = RANK_TOLERANCE) -> np.ndarray:
    """Orthonormal basis of the kernel, using the same cutoff as numeric_rank."""
    if M.shape[1] == 0:
        return np.zeros((0, 0))
    rank = numeric_rank(M, tol)
    _, _, vh = scipy.linalg.svd(M)
    return vh[rank:].conj().T


def column_space(M: np.ndarray, tol: float = RANK_TOLERANCE) -> np.ndarray:
    """Orthonormal basis of the image, using the same cutoff as numeric_rank."""
    rank = numeric_rank(M, tol)
    u, _, _ = scipy.linalg.svd(M)
    return u[:, :rank]


def _contained(basis: np.ndarray, target: np.ndarray, tol: float) -> bool:
    """Every column of `basis` lies in span(target) (target orthonormal)."""
    if basis.shape[1] == 0:
        return True
    if target.shape[1] == 0:
        return False
    residual = basis - target @ (target.conj().T @ basis)
    scale = max(np.linalg.norm(basis), 1.0)
    return bool(np.linalg.norm(residual) <= tol * scale * max(basis.shape))


def subspace_rank_and_equal(A: RealLinearMap, B: RealLinearMap, tol: float = RANK_TOLERANCE) -> SubspaceReport:
    """
    Compares the realified maps A and B:
    ranks, image(B) inside kernel(A), kernel(A) inside image(B), and image(A) == image(B).
    """
    if A.matrix.shape != B.matrix.shape:
        raise DimensionMismatch(f"Incompatible maps {A.matrix.shape} vs {B.matrix.shape}.")

    check_tol = max(tol * 1e2, 1e-6)
    rank_a = numeric_rank(A.matrix, tol)
    rank_b = numeric_rank(B.matrix, tol)

    kernel_a = null_space(A.matrix, tol)
    image_a = column_space(A.matrix, tol)
    image_b = column_space(B.matrix, tol)

    b_in_ker_a = _contained(image_b, kernel_a, check_tol)
    ker_a_in_b = _contained(kernel_a, image_b, check_tol)
    images_equal = (rank_a == rank_b) and _contained(image_a, image_b, check_tol)

    return SubspaceReport(
        rank_a=rank_a,
        rank_b=rank_b,
        image_b_in_kernel_a=b_in_ker_a,
        kernel_a_in_image_b=ker_a_in_b,
        images_equal=images_equal,
    )


def realify(operator: Callable[[np.ndarray], np.ndarray], basis: List[np.ndarray]) -> RealLinearMap:
    """
    Matrix of an R-linear operator on the real span of `basis` (complex matrices).

    The complex basis B_1..B_d is realified to {B_j, i B_j}, orthonormalized as real
    vectors; the operator's outputs are expressed in that orthonormal frame.
    """
    real_vectors = []
    for B in basis:
        real_vectors.append(_to_real_vector(B))
        real_vectors.append(_to_real_vector(1j * B))
    frame = scipy.linalg.orth(np.column_stack(real_vectors))
    d = len(basis)
    if frame.shape[1] != 2 * d:
        raise DimensionMismatch(f"Basis spans real dimension {frame.shape[1]}, expected {2 * d}.")

    shape = basis[0].shape
    columns = []
    for k in range(frame.shape[1]):
        X = _from_real_vector(frame[:, k], shape)
        columns.append(frame.T @ _to_real_vector(operator(X)))
    return RealLinearMap(matrix=np.column_stack(columns), dim_complex=d)


def _to_real_vector(X: np.ndarray) -> np.ndarray:
    flat = np.asarray(X, dtype=complex).reshape(-1)
    return np.concatenate([flat.real, flat.imag])


def _from_real_vector(v: np.ndarray, shape) -> np.ndarray:
    half = v.size // 2
    return (v[:half] + 1j * v[half:]).reshape(shape)


# --- Seeded Sampling ---

def random_complex(rng: np.random.Generator, n: int, scale: float = 1.0) -> np.ndarray:
    return scale * (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)))


def expm(X: np.ndarray) -> np.ndarray:
    return scipy.linalg.expm(X)


def pick_independent_columns(W: np.ndarray, count: int) -> Optional[np.ndarray]:
    """
    Selects `count` columns of W by pivoted QR; returns None if they are rank-deficient.
    """
    _, _, pivots = scipy.linalg.qr(W, pivoting=True, mode="economic")
    chosen = W[:, pivots[:count]]
    if numeric_rank(chosen) < count:
        return None
    return chosen
