import numpy as np
from typing import List, Tuple

from config import DEFAULT_TOLERANCE
from groups.group_model import CentralClass, Family, Structure, center_real_classes, make_group, sigma
from cohomology.base_normalizer import BaseNormalizer
from cohomology.compact_normalizer import CompactNormalizer
from cohomology.conjugation_normalizer import ConjugationNormalizer
from cohomology.labels import ClassLabel, CohomologyClass, LabelKind, plus_one, quaternionic_j, signature


class ProjectiveNormalizer(BaseNormalizer):
    """
    PGL(n) with either structure. A lift h in GL(n) satisfies sigma(h) h = lambda;
    rescaling h by a scalar makes lambda = +-1 and the GL normalizer finishes the job.
    Classes are read modulo scalars, so Signature(p, q) ~ Signature(q, p).
    """

    def __init__(self, group, tol: float = DEFAULT_TOLERANCE):
        super().__init__(group, tol)
        self.lift_group = make_group(Family.GL, group.n, group.structure)
        if group.structure == Structure.COMPACT_TYPE:
            self.lift = CompactNormalizer(self.lift_group, self.tol)
        else:
            self.lift = ConjugationNormalizer(self.lift_group, self.tol)
        self.lift_classes = center_real_classes(self.lift_group)

    def labels(self, c: CentralClass) -> List[ClassLabel]:
        n = self.group.n
        if self.group.structure == Structure.COMPACT_TYPE:
            return [signature(p, n - p) for p in range(n, -1, -1) if p >= n - p]
        if n % 2 == 0:
            return [plus_one(), quaternionic_j()]
        return [plus_one()]

    def normalize(self, c: CentralClass, h: np.ndarray) -> Tuple[CohomologyClass, np.ndarray]:
        n = self.group.n
        ratio = np.trace(sigma(self.lift_group, h) @ h) / n

        if self.group.structure == Structure.COMPACT_TYPE:
            # |lambda| = 1 and (mu / conj(mu)) lambda = 1 for mu = lambda^(-1/2)
            mu = ratio ** -0.5
            lift_class, b = self.lift.normalize(self.lift_classes[0], mu * h)
            p, q = lift_class.label.p, lift_class.label.q
            if p < q:
                b = b @ self._block_swap(p, q)
                p, q = q, p
            return self._class(c, signature(p, q)), b

        mu = abs(ratio.real) ** -0.5
        target = self.lift_classes[0] if ratio.real > 0 else self.lift_classes[1]
        lift_class, b = self.lift.normalize(target, mu * h)
        if lift_class.label.kind == LabelKind.QUATERNIONIC_J:
            return self._class(c, quaternionic_j()), b
        return self._class(c, plus_one()), b

    @staticmethod
    def _block_swap(p: int, q: int) -> np.ndarray:
        """Permutation P with P^-1 diag(-1^p, 1^q) P = diag(1^q, -1^p)."""
        n = p + q
        order = list(range(p, n)) + list(range(p))
        P = np.zeros((n, n), dtype=complex)
        for column, row in enumerate(order):
            P[row, column] = 1.0
        return P
