import numpy as np
import scipy.linalg
from abc import ABC, abstractmethod
from typing import List, Tuple

from config import DEFAULT_TOLERANCE
from groups.group_model import CentralClass, Family, GroupSpec, Structure, sigma
from cohomology.labels import ClassLabel, CohomologyClass, make_class
from utils.exceptions import UnsupportedCombination
from utils.logger import setup_logger
from utils.matrix_kernel import polar_decompose, sqrt_posdef


class BaseNormalizer(ABC):
    """
    One normalizer per group family: lists the canonical classes of H^1_c(Z/2, G)
    and brings a cocycle h to canonical form with a witness b,
    b^-1 h sigma(b) = canonical.
    """

    def __init__(self, group: GroupSpec, tol: float = DEFAULT_TOLERANCE):
        self.group = group
        self.tol = tol
        self.logger = setup_logger(self.__class__.__name__)

    @abstractmethod
    def labels(self, c: CentralClass) -> List[ClassLabel]:
        """Labels of H^1_c, in canonical order. Empty when no cocycle exists."""
        pass

    @abstractmethod
    def normalize(self, c: CentralClass, h: np.ndarray) -> Tuple[CohomologyClass, np.ndarray]:
        """
        Returns (class, witness b) for a validated cocycle h.
        """
        pass

    def classes(self, c: CentralClass) -> List[CohomologyClass]:
        return [make_class(self.group, c, label) for label in self.labels(c)]

    def _class(self, c: CentralClass, label: ClassLabel) -> CohomologyClass:
        return make_class(self.group, c, label)

    def cartan_reduce(self, h: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        """
        Pushes a normal cocycle into the maximal compact subgroup.
        Returns (k, a) with a^-1 h sigma(a) = k unitary, a the square root of the
        positive polar factor of h.
        """
        if self.group.structure != Structure.COMPACT_TYPE and self.group.family != Family.SO:
            raise UnsupportedCombination(
                f"{self.group.name}: the involution is not a Cartan involution; no reduction to K."
            )

        _, p = polar_decompose(h, self.tol)
        a = sqrt_posdef(p, self.tol)
        k = scipy.linalg.solve(a, h) @ sigma(self.group, a)
        return k, a

    def scale_into_sl(self, b: np.ndarray) -> np.ndarray:
        """Rescales a witness to determinant one; |det b| = 1 keeps the coboundary unchanged."""
        n = b.shape[0]
        det = np.linalg.det(b)
        return b * det ** (-1.0 / n)
