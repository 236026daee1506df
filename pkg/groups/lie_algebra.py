import numpy as np
import scipy.linalg
from typing import List, Optional

from groups.group_model import Family, GroupSpec, Structure, outer_twist_matrix
from utils.matrix_kernel import RealLinearMap, realify

"""
Lie algebra toolkit: complex bases of gl / sl / so, the adjoint action and the
differential of the involution.
"""


def _unit(n: int, i: int, j: int) -> np.ndarray:
    E = np.zeros((n, n), dtype=complex)
    E[i, j] = 1.0
    return E


def lie_basis(G: GroupSpec) -> List[np.ndarray]:
    """
    Complex basis of the Lie algebra: all matrices for gl, traceless for sl (and pgl),
    antisymmetric for so.
    """
    n = G.n
    if G.family in (Family.CSTAR, Family.GL):
        return [_unit(n, i, j) for i in range(n) for j in range(n)]

    if G.family in (Family.SL, Family.PGL):
        basis = [_unit(n, i, j) for i in range(n) for j in range(n) if i != j]
        basis += [_unit(n, i, i) - _unit(n, n - 1, n - 1) for i in range(n - 1)]
        return basis

    return [_unit(n, i, j) - _unit(n, j, i) for i in range(n) for j in range(i + 1, n)]


def adjoint_action(g: np.ndarray, X: np.ndarray, g_inv: Optional[np.ndarray] = None) -> np.ndarray:
    """Ad(g) X = g X g^-1. Pass g_inv when applying the same g to a whole basis."""
    if g_inv is None:
        g_inv = scipy.linalg.inv(g)
    return g @ X @ g_inv


def d_sigma(G: GroupSpec, X: np.ndarray) -> np.ndarray:
    """Differential of the involution: conj(X) for conjugation, -X* for the compact structure."""
    if G.structure == Structure.COMPACT_TYPE:
        return -X.conj().T
    if G.outer_twist:
        D = outer_twist_matrix(G.n)
        return D @ X.conj() @ D
    return X.conj()


def operator_t(G: GroupSpec, h: np.ndarray) -> RealLinearMap:
    """T(v) = Ad(h^-1) v + d_sigma(v)."""
    h_inv = scipy.linalg.inv(h)
    return realify(lambda v: adjoint_action(h_inv, v, h) + d_sigma(G, v), lie_basis(G))


def operator_t_prime(G: GroupSpec, h: np.ndarray) -> RealLinearMap:
    """T'(w) = -Ad(h) w + d_sigma(w); its image lies in the kernel of T."""
    h_inv = scipy.linalg.inv(h)
    return realify(lambda w: -adjoint_action(h, w, h_inv) + d_sigma(G, w), lie_basis(G))


def twisted_involution(G: GroupSpec, h: np.ndarray) -> RealLinearMap:
    """
    w -> Ad(h^-1) d_sigma(w), the differential of g -> h^-1 sigma(g) h.
    Its +1 eigenspace is the Lie algebra of Stab(h).
    """
    h_inv = scipy.linalg.inv(h)
    return realify(lambda w: adjoint_action(h_inv, d_sigma(G, w), h), lie_basis(G))


def fixed_subalgebra(G: GroupSpec, h: np.ndarray, tol: float = 1e-8) -> List[np.ndarray]:
    """
    Real basis (as complex matrices) of the Lie algebra of Stab(h).
    """
    basis = lie_basis(G)
    if not basis:
        return []

    h_inv = scipy.linalg.inv(h)
    fixed = []
    for B in basis:
        for X in (B, 1j * B):
            Y = X + adjoint_action(h_inv, d_sigma(G, X), h)
            fixed.append(Y)

    # Orthonormalize the real span of the averaged vectors
    stacked = np.column_stack([np.concatenate([Y.real.reshape(-1), Y.imag.reshape(-1)]) for Y in fixed])
    frame = scipy.linalg.orth(stacked, rcond=tol)
    half = G.n * G.n
    return [(frame[:half, k] + 1j * frame[half:, k]).reshape(G.n, G.n) for k in range(frame.shape[1])]
