import numpy as np
import scipy.linalg
from dataclasses import dataclass
from typing import List, Tuple

from config import DEFAULT_TOLERANCE, ORBIT_SAMPLE_SCALE, WITNESS_REFINEMENTS, WITNESS_TOLERANCE
from groups.group_model import (
    CentralClass, Family, GroupSpec, Structure, center_real_classes, check_membership,
    classify_central, pgl_normalize, random_group_element, sigma,
)
from groups.lie_algebra import lie_basis, operator_t, operator_t_prime
from cohomology.base_normalizer import BaseNormalizer
from cohomology.compact_normalizer import CompactNormalizer
from cohomology.conjugation_normalizer import ConjugationNormalizer
from cohomology.labels import Cocycle, CohomologyClass
from cohomology.orthogonal_normalizer import OrthogonalNormalizer
from cohomology.projective_normalizer import ProjectiveNormalizer
from utils.exceptions import (
    BundleEngineError, DimensionMismatch, NoClassExists, NotACocycle, UnsupportedGroup, WitnessFailed,
)
from utils.logger import setup_logger
from utils.matrix_kernel import as_matrix, is_unitary, relative_error, subspace_rank_and_equal

logger = setup_logger("PointCohomology")


@dataclass(frozen=True)
class DiscretenessReport:
    dim_kernel_T: int
    dim_image_Tprime: int
    containment_ok: bool
    lie_dimension: int

    @property
    def bounds_ok(self) -> bool:
        """dim ker T <= dim_C g <= dim im T'."""
        return self.dim_kernel_T <= self.lie_dimension <= self.dim_image_Tprime

    @property
    def passed(self) -> bool:
        return self.containment_ok and self.bounds_ok


def get_normalizer(G: GroupSpec, tol: float = DEFAULT_TOLERANCE) -> BaseNormalizer:
    if G.family == Family.PGL:
        return ProjectiveNormalizer(G, tol)
    if G.family == Family.SO:
        return OrthogonalNormalizer(G, tol)
    if G.structure == Structure.COMPACT_TYPE:
        return CompactNormalizer(G, tol)
    return ConjugationNormalizer(G, tol)


def _is_supported_central(G: GroupSpec, c: CentralClass) -> bool:
    return any(c == other for other in center_real_classes(G))


def _product_error(product: np.ndarray, target: np.ndarray, h: np.ndarray, sigma_h: np.ndarray) -> float:
    """
    ||sigma(h) h - target|| relative to ||sigma(h)|| ||h||, the size of the rounding error
    in the product itself.
    """
    scale = max(np.linalg.norm(sigma_h) * np.linalg.norm(h), np.linalg.norm(target), 1.0)
    return float(np.linalg.norm(product - target) / scale)


def cocycle_defect(G: GroupSpec, c: CentralClass, h: np.ndarray) -> float:
    """Relative size of sigma(h) h - c; modulo scalars for PGL."""
    sigma_h = sigma(G, h)
    product = sigma_h @ h
    if G.family == Family.PGL:
        scalar = np.trace(product) / G.n
        return _product_error(product, scalar * np.eye(G.n), h, sigma_h) if abs(scalar) > 0 else np.inf
    return _product_error(product, c.representative, h, sigma_h)


def validate_cocycle(G: GroupSpec, c: CentralClass, h, tol: float = DEFAULT_TOLERANCE) -> bool:
    h = as_matrix(h, "h")
    if h.shape != (G.n, G.n):
        raise DimensionMismatch(f"{G.name} cocycles are {G.n}x{G.n}, got {h.shape}.")
    try:
        check_membership(G, h, tol)
    except BundleEngineError:
        return False
    return cocycle_defect(G, c, h) <= tol


def infer_central_class(G: GroupSpec, h, tol: float = DEFAULT_TOLERANCE) -> CentralClass:
    """
    The class c for which h is a c-cocycle; NotACocycle when sigma(h) h is not central.
    """
    h = as_matrix(h, "h")
    if h.shape != (G.n, G.n):
        raise DimensionMismatch(f"{G.name} cocycles are {G.n}x{G.n}, got {h.shape}.")
    try:
        check_membership(G, h, tol)
    except BundleEngineError as e:
        raise NotACocycle(f"h is not in {G.name}: {e.message}")

    sigma_h = sigma(G, h)
    product = sigma_h @ h
    scalar = complex(np.trace(product) / G.n)
    if _product_error(product, scalar * np.eye(G.n), h, sigma_h) > tol:
        raise NotACocycle(f"sigma(h) h is not central in {G.name}.")
    try:
        c = classify_central(G, scalar, max(tol, 1e-6))
    except BundleEngineError:
        raise NotACocycle(f"sigma(h) h = {scalar:.6g} is not a real central element of {G.name}.")
    if G.family != Family.PGL and abs(scalar - c.scalar) > max(tol, 1e-6) * 1e2:
        raise NotACocycle(f"sigma(h) h = {scalar:.6g}; rescale to the representative {c.scalar:.6g}.")
    return c


def enumerate_classes(G: GroupSpec, c: CentralClass) -> List[CohomologyClass]:
    if not _is_supported_central(G, c):
        raise UnsupportedGroup(f"{c} is not a class of H^2(Z/2, Z) for {G.name}.")
    classes = get_normalizer(G).classes(c)
    return sorted(classes, key=lambda cls: cls.label.sort_key())


def normalize(G: GroupSpec, c: CentralClass, h, tol: float = DEFAULT_TOLERANCE) -> Tuple[CohomologyClass, np.ndarray]:
    """
    Returns (class, witness b) with b^-1 h sigma(b) equal to the canonical representative.
    """
    if not _is_supported_central(G, c):
        raise UnsupportedGroup(f"{c} is not a class of H^2(Z/2, Z) for {G.name}.")
    normalizer = get_normalizer(G, tol)
    if not normalizer.labels(c):
        raise NoClassExists(f"H^1_c is empty for {G.name}, c = {c}.")

    h = as_matrix(h, "h")
    if not validate_cocycle(G, c, h, tol):
        raise NotACocycle(f"sigma(h) h != c for {G.name}, c = {c} (defect {cocycle_defect(G, c, h):.2e}).")

    cls, b = normalizer.normalize(c, h)
    return cls, _refine_witness(G, normalizer, c, h, cls, b)


def _refine_witness(G: GroupSpec, normalizer: BaseNormalizer, c: CentralClass, h: np.ndarray,
                    cls: CohomologyClass, b: np.ndarray) -> np.ndarray:
    """
    Re-normalizes b^-1 h sigma(b), which lies near the canonical form, and composes the
    witnesses until the residual is within WITNESS_TOLERANCE.
    """
    residual = witness_residual(G, h, b, cls.canonical)
    for attempt in range(WITNESS_REFINEMENTS):
        if residual <= WITNESS_TOLERANCE:
            return b
        logger.debug(f"{G.name} {cls.label.token}: witness residual {residual:.2e}, refinement pass {attempt + 1}")
        reduced = scipy.linalg.solve(b, h) @ sigma(G, b)
        try:
            refined, step = normalizer.normalize(c, reduced)
        except BundleEngineError as e:
            raise WitnessFailed(f"{G.name} {cls.label.token}: refinement pass failed ({e.code}: {e.message}).")
        if refined.label != cls.label:
            raise WitnessFailed(f"{G.name}: refinement moved {cls.label.token} to {refined.label.token}.")
        b = b @ step
        residual = witness_residual(G, h, b, cls.canonical)

    if residual > WITNESS_TOLERANCE:
        raise WitnessFailed(
            f"{G.name} {cls.label.token}: witness residual {residual:.2e} exceeds {WITNESS_TOLERANCE}."
        )
    return b


def witness_residual(G: GroupSpec, h: np.ndarray, b: np.ndarray, canonical: np.ndarray) -> float:
    """||b^-1 h sigma(b) - canonical|| / ||canonical||, modulo scalars for PGL."""
    reduced = scipy.linalg.solve(b, h) @ sigma(G, b)
    if G.family == Family.PGL:
        return relative_error(pgl_normalize(reduced), pgl_normalize(canonical))
    return relative_error(reduced, canonical)


def sample_orbit(G: GroupSpec, c: CentralClass, cls: CohomologyClass, seed: int,
                 scale: float = ORBIT_SAMPLE_SCALE) -> Cocycle:
    """b^-1 canonical sigma(b) for a seeded random b in G."""
    rng = np.random.default_rng(seed)
    b = random_group_element(G, rng, scale)
    h = scipy.linalg.solve(b, cls.canonical) @ sigma(G, b)
    return Cocycle(group=G, c=c, h=h)


def verify_discreteness(G: GroupSpec, h, tol: float = DEFAULT_TOLERANCE) -> DiscretenessReport:
    """
    Builds T and T' on the realified Lie algebra and checks image(T') = kernel(T).
    """
    h = as_matrix(h, "h")
    infer_central_class(G, h, tol)

    if not lie_basis(G):
        return DiscretenessReport(0, 0, True, 0)

    T = operator_t(G, h)
    T_prime = operator_t_prime(G, h)
    report = subspace_rank_and_equal(T, T_prime)
    dim_kernel = T.dim_real - report.rank_a
    containment = report.image_b_in_kernel_a and report.kernel_a_in_image_b
    return DiscretenessReport(
        dim_kernel_T=dim_kernel,
        dim_image_Tprime=report.rank_b,
        containment_ok=containment,
        lie_dimension=G.lie_dimension,
    )


def cartan_reduce(G: GroupSpec, h, tol: float = DEFAULT_TOLERANCE) -> Tuple[np.ndarray, np.ndarray]:
    """(k, a) with a^-1 h sigma(a) = k in the maximal compact subgroup."""
    h = as_matrix(h, "h")
    infer_central_class(G, h, tol)
    k, a = get_normalizer(G, tol).cartan_reduce(h)
    if not is_unitary(k, WITNESS_TOLERANCE):
        raise WitnessFailed(f"{G.name}: reduced cocycle is not unitary.")
    return k, a
