import numpy as np
from typing import List, Tuple

from config import CONDITION_LIMIT, DEFAULT_SEED
from groups.group_model import CentralClass, Family
from cohomology.base_normalizer import BaseNormalizer
from cohomology.labels import ClassLabel, CohomologyClass, plus_one, quaternionic_j
from utils.exceptions import NoClassExists, Singular
from utils.matrix_kernel import null_space, pick_independent_columns, singular_values


class ConjugationNormalizer(BaseNormalizer):
    """
    sigma(g) = conj(g) on C* and GL(n).

    The antilinear map T(a) = h conj(a) satisfies T^2 = c. For c = +1 a basis of its
    fixed vectors straightens h to the identity; for c = -1 T is a quaternionic
    structure and a symplectic-style basis straightens h to J.
    """

    MAX_RESAMPLES = 20

    def labels(self, c: CentralClass) -> List[ClassLabel]:
        if c.is_trivial:
            return [plus_one()]
        if self.group.family == Family.GL and self.group.n % 2 == 0:
            return [quaternionic_j()]
        return []

    def normalize(self, c: CentralClass, h: np.ndarray) -> Tuple[CohomologyClass, np.ndarray]:
        if not self.labels(c):
            raise NoClassExists(f"{self.group.name} has no cocycles for c = {c}.")

        if self.group.family == Family.CSTAR:
            angle = np.angle(h[0, 0])
            b = np.array([[np.exp(0.5j * angle)]])
            return self._class(c, plus_one()), b

        if c.is_trivial:
            return self._class(c, plus_one()), self._real_basis(h)
        return self._class(c, quaternionic_j()), self._quaternionic_basis(h)

    def _antilinear(self, h: np.ndarray, vectors: np.ndarray) -> np.ndarray:
        return h @ vectors.conj()

    def _real_basis(self, h: np.ndarray) -> np.ndarray:
        """
        n complex-independent fixed vectors of T, as columns of b; then b^-1 h conj(b) = I.
        """
        n = h.shape[0]
        identity = np.eye(n, dtype=complex)
        seeds = np.hstack([identity, 1j * identity])
        W = seeds + self._antilinear(h, seeds)

        B = pick_independent_columns(W, n)
        rng = np.random.default_rng(DEFAULT_SEED)
        attempts = 0
        while B is None or self._condition(B) > CONDITION_LIMIT:
            attempts += 1
            if attempts > self.MAX_RESAMPLES:
                raise Singular(f"{self.group.name}: no well-conditioned real basis found.")
            # Real combinations of fixed vectors stay fixed
            B = W @ rng.standard_normal((2 * n, n))
            if pick_independent_columns(B, n) is None:
                B = None
        if attempts:
            self.logger.info(f"{self.group.name}: real basis re-sampled {attempts} time(s).")
        return B

    def _quaternionic_basis(self, h: np.ndarray) -> np.ndarray:
        """
        Columns [x_1..x_m, T x_1..T x_m] with each x orthogonal to the previous span;
        then b^-1 h conj(b) = J.
        """
        n = h.shape[0]
        m = n // 2
        xs, txs = [], []
        for _ in range(m):
            if xs:
                span = np.column_stack(xs + txs)
                x = null_space(span.conj().T)[:, 0]
            else:
                x = np.zeros(n, dtype=complex)
                x[0] = 1.0
            xs.append(x)
            txs.append(h @ x.conj())
        return np.column_stack(xs + txs)

    @staticmethod
    def _condition(B: np.ndarray) -> float:
        sv = singular_values(B)
        return float(sv[0] / sv[-1]) if sv[-1] > 0 else np.inf
