import numpy as np
import scipy.linalg
from typing import List, Tuple

from groups.group_model import CentralClass, outer_twist_matrix
from cohomology.base_normalizer import BaseNormalizer
from cohomology.labels import ClassLabel, CohomologyClass, diag_pattern, quaternionic_j
from utils.exceptions import NoClassExists
from utils.matrix_kernel import polar_decompose, sqrt_posdef


class OrthogonalNormalizer(BaseNormalizer):
    """
    sigma(g) = conj(g) on SO(m), optionally composed with the outer twist
    g -> D conj(g) D, D = diag(-1, 1, ..., 1).

    On O(m, C) conjugation is the Cartan involution, so a cocycle reduces to a real
    orthogonal u with u^2 = c: symmetric (c = 1, diagonalized by SO(m, R)) or a
    complex structure (c = -1, two orientation classes).
    Under the outer twist the cocycle h is replaced by k = h D, an untwisted cocycle
    of determinant -1.
    """

    def labels(self, c: CentralClass) -> List[ClassLabel]:
        m = self.group.n
        if c.is_trivial:
            parity = 1 if self.group.outer_twist else 0
            return [diag_pattern(k) for k in range(m + 1) if k % 2 == parity]
        # Real orthogonal complex structures have det = Pf^2 = 1, so none have det -1
        if self.group.outer_twist:
            return []
        return [quaternionic_j(1), quaternionic_j(-1)]

    def normalize(self, c: CentralClass, h: np.ndarray) -> Tuple[CohomologyClass, np.ndarray]:
        if not self.labels(c):
            raise NoClassExists(f"{self.group.name} has no cocycles for c = {c}.")

        k_mat = h @ outer_twist_matrix(self.group.n) if self.group.outer_twist else h
        u, a = self._reduce(k_mat)

        if c.is_trivial:
            O, k = self._diagonalize_symmetric(u)
            label = diag_pattern(k)
        else:
            O, orientation = self._complex_structure_frame(u)
            label = quaternionic_j(orientation)
        return self._class(c, label), a @ O

    def cartan_reduce(self, h: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        if not self.group.outer_twist:
            return super().cartan_reduce(h)
        D = outer_twist_matrix(self.group.n)
        u, a = self._reduce(h @ D)
        return u @ D, a

    def _reduce(self, k_mat: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        """
        a^-1 k conj(a) = u real orthogonal, with a = (k* k)^(1/4) in SO(m, C).
        """
        _, p = polar_decompose(k_mat, self.tol)
        a = sqrt_posdef(p, self.tol)
        u = scipy.linalg.solve(a, k_mat) @ a.conj()
        if np.linalg.norm(u.imag) > 1e-6 * max(np.linalg.norm(u), 1.0):
            self.logger.warning(f"{self.group.name}: reduced cocycle has imaginary part {np.linalg.norm(u.imag):.2e}")
        return u.real, a

    def _diagonalize_symmetric(self, u: np.ndarray) -> Tuple[np.ndarray, int]:
        """O in SO(m, R) with O^T u O = diag(1, ..., 1, -1, ..., -1)."""
        eigenvalues, O = scipy.linalg.eigh(0.5 * (u + u.T))
        order = np.argsort(eigenvalues)[::-1]
        eigenvalues, O = eigenvalues[order], O[:, order]
        if np.linalg.det(O) < 0:
            O[:, 0] = -O[:, 0]
        k = int(np.sum(eigenvalues < 0))
        return O.astype(complex), k

    def _complex_structure_frame(self, u: np.ndarray) -> Tuple[np.ndarray, int]:
        """
        Real orthonormal frame [x_1..x_n, u x_1..u x_n]; O^T u O = J, or R J R after the
        orientation fix y_n -> -y_n.
        """
        m = u.shape[0]
        half = m // 2
        xs, ys = [], []
        for _ in range(half):
            if xs:
                span = np.column_stack(xs + ys)
                x = scipy.linalg.null_space(span.T)[:, 0]
            else:
                x = np.zeros(m)
                x[0] = 1.0
            y = u @ x
            xs.append(x / np.linalg.norm(x))
            ys.append(y / np.linalg.norm(y))

        O = np.column_stack(xs + ys)
        orientation = 1
        if np.linalg.det(O) < 0:
            O[:, -1] = -O[:, -1]
            orientation = -1
        return O.astype(complex), orientation
