import numpy as np
from typing import List, Tuple

from groups.group_model import CentralClass, CentralLabel, Family
from cohomology.base_normalizer import BaseNormalizer
from cohomology.labels import (
    ClassLabel, CohomologyClass, imaginary_signature, minus_one, phased_signature,
    plus_one, signature,
)
from utils.matrix_kernel import hermitian_eigen


class CompactNormalizer(BaseNormalizer):
    """
    sigma(g) = (g*)^-1 on C*, GL(n) and SL(n).

    A cocycle satisfies h = c h*, so phi^-1 h is Hermitian for phi^2 = c. The Cartan
    reduction makes it unitary as well, and the eigenvalue signs give the class.
    """

    def labels(self, c: CentralClass) -> List[ClassLabel]:
        G = self.group
        n = G.n

        if G.family == Family.CSTAR:
            return [plus_one(), minus_one()] if c.is_trivial else []

        pairs = [(p, n - p) for p in range(n, -1, -1)]
        if G.family == Family.GL:
            return [signature(p, q) for p, q in pairs] if c.is_trivial else []

        # SL(n): det = phi^n (-1)^q must be 1
        if c.label == CentralLabel.TRIVIAL:
            return [signature(p, q) for p, q in pairs if q % 2 == 0]
        if c.label == CentralLabel.MINUS_ONE:
            half = n // 2
            return [imaginary_signature(p, q) for p, q in pairs if q % 2 == half % 2]
        return [phased_signature(p, q) for p, q in pairs if q % 2 == 1]

    def normalize(self, c: CentralClass, h: np.ndarray) -> Tuple[CohomologyClass, np.ndarray]:
        G = self.group
        phase = np.sqrt(c.scalar + 0j)
        hermitian = h / phase

        if G.family == Family.CSTAR:
            value = hermitian[0, 0].real
            b = np.array([[np.sqrt(abs(value))]], dtype=complex)
            label = plus_one() if value > 0 else minus_one()
            return self._class(c, label), b

        p, q, b = self._hermitian_signature(hermitian)

        if G.family == Family.GL:
            return self._class(c, signature(p, q)), b

        b = self.scale_into_sl(b)
        if c.label == CentralLabel.TRIVIAL:
            label = signature(p, q)
        elif c.label == CentralLabel.MINUS_ONE:
            label = imaginary_signature(p, q)
        else:
            label = phased_signature(p, q)
        return self._class(c, label), b

    def _hermitian_signature(self, H: np.ndarray) -> Tuple[int, int, np.ndarray]:
        """
        Returns (p, q, b) with b^-1 H (b*)^-1 = diag(1^p, (-1)^q).
        """
        H = 0.5 * (H + H.conj().T)
        u, a = self.cartan_reduce(H)
        eigenvalues, V = hermitian_eigen(0.5 * (u + u.conj().T), max(self.tol, 1e-6))
        p = int(np.sum(eigenvalues > 0))
        q = len(eigenvalues) - p
        self.logger.debug(f"{self.group.name}: unitary part eigenvalues {np.round(eigenvalues, 6)}")

        # Witness b = a V: V* a^-1 H a^-1 V = diag(eigenvalues) = diag(+-1)
        b = a @ V
        return p, q, b

