import numpy as np
import scipy.linalg
from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional

from config import DEFAULT_TOLERANCE, ORBIT_SAMPLE_SCALE
from utils.exceptions import DimensionMismatch, NotInGroup, Singular, UnsupportedCombination
from utils.matrix_kernel import as_matrix, random_complex, relative_error, singular_values


class Family(Enum):
    CSTAR = "cstar"
    GL = "gl"
    SL = "sl"
    SO = "so"
    PGL = "pgl"


class Structure(Enum):
    CONJUGATION = "conj"      # sigma(g) = conj(g)
    COMPACT_TYPE = "compact"  # sigma(g) = (g*)^-1


SUPPORTED_STRUCTURES = {
    Family.CSTAR: (Structure.CONJUGATION, Structure.COMPACT_TYPE),
    Family.GL: (Structure.CONJUGATION, Structure.COMPACT_TYPE),
    Family.SL: (Structure.COMPACT_TYPE,),
    Family.SO: (Structure.CONJUGATION,),
    Family.PGL: (Structure.CONJUGATION, Structure.COMPACT_TYPE),
}


class CentralLabel(Enum):
    TRIVIAL = "Trivial"
    MINUS_ONE = "MinusOne"
    PRIMITIVE_ROOT = "PrimitiveRoot"  # class of exp(2 pi i / n) when -1 is already a square


class FundamentalKind(Enum):
    Z = "Z"
    ZMODK = "ZmodK"
    TRIVIAL = "Trivial"


@dataclass(frozen=True)
class GroupSpec:
    family: Family
    n: int
    structure: Structure
    outer_twist: bool = False

    def __post_init__(self):
        if self.n < 1:
            raise UnsupportedCombination(f"Matrix size must be positive, got {self.n}.")
        if self.structure not in SUPPORTED_STRUCTURES[self.family]:
            raise UnsupportedCombination(
                f"{self.family.value} with {self.structure.value} structure is not supported."
            )
        if self.family == Family.CSTAR and self.n != 1:
            raise UnsupportedCombination("C* is a 1x1 group.")
        if self.family == Family.SO and self.n < 2:
            raise UnsupportedCombination(f"SO({self.n}) is trivial; use m >= 2.")
        if self.outer_twist and (self.family != Family.SO or self.n % 2 != 0 or self.n < 4):
            raise UnsupportedCombination("The outer twist exists only for SO(2n), n > 1.")

    @property
    def name(self) -> str:
        base = "cstar" if self.family == Family.CSTAR else f"{self.family.value}{self.n}"
        suffix = "-outer" if self.outer_twist else ""
        return f"{base}-{self.structure.value}{suffix}"

    @property
    def lie_dimension(self) -> int:
        """Complex dimension of the Lie algebra."""
        if self.family == Family.CSTAR:
            return 1
        if self.family == Family.GL:
            return self.n * self.n
        if self.family in (Family.SL, Family.PGL):
            return self.n * self.n - 1
        return self.n * (self.n - 1) // 2

    @property
    def is_adjoint(self) -> bool:
        return self.family == Family.PGL

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class CentralClass:
    """A class of H^2(Z/2, Z) with a central scalar representative."""
    label: CentralLabel
    representative: np.ndarray = field(compare=False, hash=False, repr=False)

    @property
    def scalar(self) -> complex:
        return complex(self.representative[0, 0])

    @property
    def is_trivial(self) -> bool:
        return self.label == CentralLabel.TRIVIAL

    def __str__(self):
        return self.label.value


@dataclass(frozen=True)
class FundamentalGroupDescriptor:
    kind: FundamentalKind
    k: Optional[int] = None

    def __post_init__(self):
        if self.kind == FundamentalKind.ZMODK and (self.k is None or self.k < 2):
            raise ValueError(f"Finite fundamental group needs k >= 2, got {self.k}.")

    def degrees(self, window) -> List[int]:
        """Admissible characteristic classes: the window for Z, all residues otherwise."""
        if self.kind == FundamentalKind.Z:
            low, high = window
            return list(range(low, high + 1))
        if self.kind == FundamentalKind.ZMODK:
            return list(range(self.k))
        return [0]

    def contains(self, degree: int) -> bool:
        if self.kind == FundamentalKind.Z:
            return True
        if self.kind == FundamentalKind.ZMODK:
            return 0 <= degree < self.k
        return degree == 0

    def __str__(self):
        if self.kind == FundamentalKind.ZMODK:
            return f"Z/{self.k}"
        return self.kind.value


def parse_group(name: str) -> GroupSpec:
    """
    Parses `<family><n>-<conj|compact>[-outer]`, e.g. `gl3-compact`, `so6-conj`, `cstar-conj`.
    """
    parts = name.strip().lower().split("-")
    if len(parts) not in (2, 3) or (len(parts) == 3 and parts[2] != "outer"):
        raise UnsupportedCombination(f"Cannot parse group name '{name}'.")

    head, structure_token = parts[0], parts[1]
    try:
        structure = Structure(structure_token)
    except ValueError:
        raise UnsupportedCombination(f"Unknown structure '{structure_token}' in '{name}'.")

    if head == "cstar":
        return make_group(Family.CSTAR, 1, structure)

    for family in (Family.PGL, Family.GL, Family.SL, Family.SO):
        prefix = family.value
        if head.startswith(prefix) and head[len(prefix):].isdigit():
            return make_group(family, int(head[len(prefix):]), structure, outer_twist=len(parts) == 3)
    raise UnsupportedCombination(f"Unknown group family in '{name}'.")


def make_group(family, n: int, structure, outer_twist: bool = False) -> GroupSpec:
    if isinstance(family, str):
        family = Family(family.lower())
    if isinstance(structure, str):
        structure = Structure(structure.lower())
    return GroupSpec(family=family, n=int(n), structure=structure, outer_twist=outer_twist)


def outer_twist_matrix(n: int) -> np.ndarray:
    """diag(-1, 1, ..., 1): an orthogonal matrix of determinant -1."""
    D = np.eye(n, dtype=complex)
    D[0, 0] = -1.0
    return D


# --- Membership & Involution ---

def check_membership(G: GroupSpec, M, tol: float = DEFAULT_TOLERANCE) -> np.ndarray:
    """
    Returns M as a complex array after checking it is an invertible element of G.
    """
    M = as_matrix(M, "M")
    if M.shape != (G.n, G.n):
        raise DimensionMismatch(f"{G.name} acts on {G.n}x{G.n} matrices, got {M.shape}.")

    sv = singular_values(M)
    if sv[-1] <= tol * max(sv[0], 1.0):
        raise Singular(f"Element of {G.name} must be invertible.")

    if G.family == Family.SL:
        det = np.linalg.det(M)
        if abs(det - 1.0) > tol * max(1.0, sv[0] ** G.n):
            raise NotInGroup(f"det = {det:.6g}, expected 1 for {G.name}.")
    elif G.family == Family.SO:
        if relative_error(M.T @ M, np.eye(G.n)) > tol * max(1.0, sv[0] ** 2):
            raise NotInGroup(f"M^T M != I for {G.name}.")
        det = np.linalg.det(M)
        # det is +-1 on O(m), so any threshold below 1 separates the two cosets
        if abs(det - 1.0) > 1e-4:
            raise NotInGroup(f"det = {det:.6g}, expected 1 for {G.name}.")
    return M


def sigma(G: GroupSpec, M: np.ndarray) -> np.ndarray:
    """The involution without membership checks (also used on O(m) and central scalars)."""
    if G.structure == Structure.COMPACT_TYPE:
        return scipy.linalg.inv(M.conj().T)
    if G.outer_twist:
        D = outer_twist_matrix(G.n)
        return D @ M.conj() @ D
    return M.conj()


def apply_sigma(G: GroupSpec, M, tol: float = DEFAULT_TOLERANCE) -> np.ndarray:
    M = check_membership(G, M, tol)
    return sigma(G, M)


def sigma_scalar(G: GroupSpec, z: complex) -> complex:
    if G.structure == Structure.COMPACT_TYPE:
        return 1.0 / np.conj(z)
    return np.conj(z)


# --- Center & Cohomology of the Center ---

def center_elements(G: GroupSpec) -> Optional[List[complex]]:
    """
    Scalars z with z*I in the center of G, or None when the center is C*.
    """
    if G.family in (Family.CSTAR, Family.GL):
        return None
    if G.family == Family.SL:
        return [np.exp(2j * np.pi * k / G.n) for k in range(G.n)]
    if G.family == Family.SO:
        return [1.0, -1.0] if G.n % 2 == 0 else [1.0]
    return [1.0]


def _is_real_central(G: GroupSpec, z: complex, tol: float) -> bool:
    return abs(sigma_scalar(G, z) - z) <= tol


def _norm_subgroup(G: GroupSpec, elements: List[complex]) -> List[complex]:
    """{sigma(a) a : a in Z} for a finite center."""
    image = []
    for a in elements:
        value = sigma_scalar(G, a) * a
        if not any(abs(value - v) <= 1e-9 for v in image):
            image.append(value)
    return image


def _central_matrix(G: GroupSpec, z: complex) -> np.ndarray:
    return complex(z) * np.eye(G.n, dtype=complex)


def center_real_classes(G: GroupSpec) -> List[CentralClass]:
    """
    H^2(Z/2, Z) = Z_R / {sigma(a) a : a in Z}, evaluated on the center of G.
    """
    elements = center_elements(G)
    if elements is None:
        # C* center: conjugation gives R* / R_{>0}; the compact structure gives S^1 / S^1
        if G.structure == Structure.CONJUGATION:
            return [
                CentralClass(CentralLabel.TRIVIAL, _central_matrix(G, 1.0)),
                CentralClass(CentralLabel.MINUS_ONE, _central_matrix(G, -1.0)),
            ]
        return [CentralClass(CentralLabel.TRIVIAL, _central_matrix(G, 1.0))]

    real_elements = [z for z in elements if _is_real_central(G, z, 1e-9)]
    norms = _norm_subgroup(G, elements)

    classes = [CentralClass(CentralLabel.TRIVIAL, _central_matrix(G, 1.0))]
    covered = list(norms)
    for z in sorted(real_elements, key=_scalar_order):
        if any(abs(z - v) <= 1e-9 for v in covered):
            continue
        coset = [z * v for v in norms]
        classes.append(CentralClass(_coset_label(coset), _central_matrix(G, _coset_representative(G, coset))))
        covered.extend(coset)
    return classes


def _scalar_order(z: complex):
    angle = np.angle(z) % (2 * np.pi)
    return (round(angle, 9), abs(z))


def _coset_label(coset: List[complex]) -> CentralLabel:
    if any(abs(v - 1.0) <= 1e-9 for v in coset):
        return CentralLabel.TRIVIAL
    if any(abs(v + 1.0) <= 1e-9 for v in coset):
        return CentralLabel.MINUS_ONE
    return CentralLabel.PRIMITIVE_ROOT


def _coset_representative(G: GroupSpec, coset: List[complex]) -> complex:
    for v in coset:
        if abs(v + 1.0) <= 1e-9:
            return -1.0
    # No element of order two: use the smallest positive angle
    return min(coset, key=_scalar_order)


def classify_central(G: GroupSpec, z: complex, tol: float = DEFAULT_TOLERANCE) -> CentralClass:
    """
    Maps a real central scalar to its class in H^2(Z/2, Z).
    """
    classes = center_real_classes(G)
    elements = center_elements(G)
    if elements is None:
        if G.structure == Structure.CONJUGATION:
            if abs(z.imag) > tol * max(abs(z), 1.0):
                raise NotInGroup(f"{z} is not a real central element of {G.name}.")
            return classes[0] if z.real > 0 else classes[1]
        if abs(abs(z) - 1.0) > tol:
            raise NotInGroup(f"{z} is not a real central element of {G.name}.")
        return classes[0]

    if G.family == Family.PGL:
        return classes[0]

    norms = _norm_subgroup(G, elements)
    for cls in classes:
        coset = [cls.scalar * v for v in norms]
        if any(abs(z - v) <= max(tol, 1e-9) * 1e3 for v in coset):
            return cls
    raise NotInGroup(f"{z} is not a real central element of {G.name}.")


def multiply_central(G: GroupSpec, first: CentralClass, second: CentralClass, inverse_second: bool = False) -> CentralClass:
    z = second.scalar
    if inverse_second:
        z = 1.0 / z
    return classify_central(G, first.scalar * z)


def center_h1(G: GroupSpec) -> List[complex]:
    """
    H^1(Z/2, Z) = {z : sigma(z) z = 1} / {b^-1 sigma(b)}; returns scalar representatives.
    """
    elements = center_elements(G)
    if elements is None:
        # Conjugation: S^1 modulo S^1. Compact structure: R* modulo R_{>0}.
        if G.structure == Structure.CONJUGATION:
            return [1.0]
        return [1.0, -1.0]

    cocycles = [z for z in elements if abs(sigma_scalar(G, z) * z - 1.0) <= 1e-9]
    boundaries = []
    for b in elements:
        value = sigma_scalar(G, b) / b
        if not any(abs(value - v) <= 1e-9 for v in boundaries):
            boundaries.append(value)

    representatives = []
    for z in sorted(cocycles, key=_scalar_order):
        if any(abs(z * v - r) <= 1e-9 for r in representatives for v in boundaries):
            continue
        representatives.append(z)
    return [complex(np.round(z.real, 12), np.round(z.imag, 12)) for z in representatives]


def fundamental_group(G: GroupSpec) -> FundamentalGroupDescriptor:
    if G.family in (Family.CSTAR, Family.GL):
        return FundamentalGroupDescriptor(FundamentalKind.Z)
    if G.family == Family.SL:
        return FundamentalGroupDescriptor(FundamentalKind.TRIVIAL)
    if G.family == Family.SO:
        if G.n == 2:
            return FundamentalGroupDescriptor(FundamentalKind.Z)
        return FundamentalGroupDescriptor(FundamentalKind.ZMODK, 2)
    if G.n == 1:
        return FundamentalGroupDescriptor(FundamentalKind.TRIVIAL)
    return FundamentalGroupDescriptor(FundamentalKind.ZMODK, G.n)


def adjoint_group(G: GroupSpec) -> Optional[GroupSpec]:
    """G / Z when it is one of the modelled families, else None."""
    if G.family == Family.SO:
        return None
    if G.family == Family.CSTAR:
        return make_group(Family.PGL, 1, G.structure)
    return make_group(Family.PGL, G.n, G.structure)


# --- PGL Representatives ---

def pgl_normalize(M, tol: float = DEFAULT_TOLERANCE) -> np.ndarray:
    """
    Canonical matrix representative of a PGL element:
    unit |det|, first nonzero entry (row-major) positive real.
    """
    M = as_matrix(M, "M")
    n = M.shape[0]
    det = np.linalg.det(M)
    if abs(det) <= tol:
        raise Singular("PGL representative must be invertible.")
    M = M / abs(det) ** (1.0 / n)

    flat = M.reshape(-1)
    threshold = tol * np.max(np.abs(flat)) * 1e3
    pivot = flat[np.argmax(np.abs(flat) > threshold)]
    return M * (abs(pivot) / pivot)


def pgl_equal(A, B, tol: float = DEFAULT_TOLERANCE) -> bool:
    """Equality modulo scalars."""
    A = as_matrix(A, "A")
    B = as_matrix(B, "B")
    if A.shape != B.shape:
        return False
    return relative_error(pgl_normalize(A, tol), pgl_normalize(B, tol)) <= max(tol * 1e2, 1e-6)


def random_group_element(G: GroupSpec, rng: np.random.Generator, scale: float = ORBIT_SAMPLE_SCALE) -> np.ndarray:
    """
    exp of a random complex Lie algebra element; lands in the identity component of G.
    """
    n = G.n
    X = random_complex(rng, n, scale)
    if G.family == Family.SO:
        X = 0.5 * (X - X.T)
    elif G.family == Family.SL:
        X = X - (np.trace(X) / n) * np.eye(n)
    return scipy.linalg.expm(X)
