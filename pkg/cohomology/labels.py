import re
import numpy as np
from dataclasses import dataclass, field
from enum import Enum
from typing import Tuple

from groups.group_model import CentralClass, GroupSpec, outer_twist_matrix
from utils.exceptions import UsageError


class LabelKind(Enum):
    PLUS_ONE = "PlusOne"
    MINUS_ONE = "MinusOne"
    SIGNATURE = "Signature"
    IMAGINARY_SIGNATURE = "ImaginarySignature"
    PHASED_SIGNATURE = "PhasedSignature"
    QUATERNIONIC_J = "QuaternionicJ"
    DIAG_PATTERN = "DiagPattern"


_KIND_ORDER = {kind: i for i, kind in enumerate(LabelKind)}


@dataclass(frozen=True)
class ClassLabel:
    """
    Canonical-form label of a class in H^1_c(Z/2, G).

    p, q     -- signature counts (Signature, ImaginarySignature, PhasedSignature)
    k        -- number of -1 eigenvalues (DiagPattern)
    orientation -- +1 / -1 for the two real orthogonal complex structures (QuaternionicJ on SO)
    """
    kind: LabelKind
    p: int = 0
    q: int = 0
    k: int = 0
    orientation: int = 1

    def sort_key(self) -> Tuple:
        # Descending p puts (n, 0) first, matching the printed tables
        return (_KIND_ORDER[self.kind], -self.p, self.q, self.k, -self.orientation)

    @property
    def token(self) -> str:
        """Short form accepted on the command line."""
        if self.kind == LabelKind.PLUS_ONE:
            return "+1"
        if self.kind == LabelKind.MINUS_ONE:
            return "-1"
        if self.kind == LabelKind.SIGNATURE:
            return f"sig{self.p},{self.q}"
        if self.kind == LabelKind.IMAGINARY_SIGNATURE:
            return f"isig{self.p},{self.q}"
        if self.kind == LabelKind.PHASED_SIGNATURE:
            return f"psig{self.p},{self.q}"
        if self.kind == LabelKind.QUATERNIONIC_J:
            return "J" if self.orientation == 1 else "J-"
        return f"diag{self.k}"

    def __str__(self):
        if self.kind in (LabelKind.SIGNATURE, LabelKind.IMAGINARY_SIGNATURE, LabelKind.PHASED_SIGNATURE):
            return f"{self.kind.value}({self.p},{self.q})"
        if self.kind == LabelKind.DIAG_PATTERN:
            return f"DiagPattern({self.k})"
        if self.kind == LabelKind.QUATERNIONIC_J and self.orientation == -1:
            return "QuaternionicJ(-)"
        return self.kind.value


def plus_one() -> ClassLabel:
    return ClassLabel(LabelKind.PLUS_ONE)


def minus_one() -> ClassLabel:
    return ClassLabel(LabelKind.MINUS_ONE)


def signature(p: int, q: int) -> ClassLabel:
    return ClassLabel(LabelKind.SIGNATURE, p=p, q=q)


def imaginary_signature(p: int, q: int) -> ClassLabel:
    return ClassLabel(LabelKind.IMAGINARY_SIGNATURE, p=p, q=q)


def phased_signature(p: int, q: int) -> ClassLabel:
    return ClassLabel(LabelKind.PHASED_SIGNATURE, p=p, q=q)


def quaternionic_j(orientation: int = 1) -> ClassLabel:
    return ClassLabel(LabelKind.QUATERNIONIC_J, orientation=orientation)


def diag_pattern(k: int) -> ClassLabel:
    return ClassLabel(LabelKind.DIAG_PATTERN, k=k)


_TOKEN_PATTERN = re.compile(r"^(sig|isig|psig)(\d+),(\d+)$")


def parse_label(token: str) -> ClassLabel:
    """Inverse of ClassLabel.token."""
    text = token.strip()
    if text in ("+1", "1"):
        return plus_one()
    if text == "-1":
        return minus_one()
    if text == "J":
        return quaternionic_j(1)
    if text == "J-":
        return quaternionic_j(-1)
    if text.startswith("diag") and text[4:].isdigit():
        return diag_pattern(int(text[4:]))
    match = _TOKEN_PATTERN.match(text)
    if match:
        prefix, p, q = match.group(1), int(match.group(2)), int(match.group(3))
        builder = {"sig": signature, "isig": imaginary_signature, "psig": phased_signature}[prefix]
        return builder(p, q)
    raise UsageError(f"Cannot parse class label '{token}'.")


@dataclass(frozen=True)
class CohomologyClass:
    group: GroupSpec
    c: CentralClass
    label: ClassLabel
    canonical: np.ndarray = field(compare=False, hash=False, repr=False)

    def __str__(self):
        return str(self.label)


@dataclass(frozen=True)
class Cocycle:
    group: GroupSpec
    c: CentralClass
    h: np.ndarray = field(compare=False, hash=False, repr=False)


# --- Canonical Matrices ---

def sign_diagonal(p: int, q: int) -> np.ndarray:
    """diag(1^p, (-1)^q)."""
    return np.diag(np.concatenate([np.ones(p), -np.ones(q)])).astype(complex)


def standard_j(n: int) -> np.ndarray:
    """[[0, -I], [I, 0]] in blocks of size n/2."""
    m = n // 2
    J = np.zeros((n, n), dtype=complex)
    J[:m, m:] = -np.eye(m)
    J[m:, :m] = np.eye(m)
    return J


def reflected_j(n: int) -> np.ndarray:
    """R J R with R = diag(1, ..., 1, -1): the oppositely oriented complex structure."""
    R = np.eye(n, dtype=complex)
    R[-1, -1] = -1.0
    return R @ standard_j(n) @ R


def canonical_matrix(G: GroupSpec, label: ClassLabel) -> np.ndarray:
    """Analytic canonical representative for `label` in G."""
    n = G.n
    if label.kind == LabelKind.PLUS_ONE:
        return np.eye(n, dtype=complex)
    if label.kind == LabelKind.MINUS_ONE:
        return -np.eye(n, dtype=complex)
    if label.kind == LabelKind.SIGNATURE:
        return sign_diagonal(label.p, label.q)
    if label.kind == LabelKind.IMAGINARY_SIGNATURE:
        return 1j * sign_diagonal(label.p, label.q)
    if label.kind == LabelKind.PHASED_SIGNATURE:
        return np.exp(1j * np.pi / n) * sign_diagonal(label.p, label.q)
    if label.kind == LabelKind.QUATERNIONIC_J:
        return standard_j(n) if label.orientation == 1 else reflected_j(n)

    D_k = sign_diagonal(n - label.k, label.k)
    if G.outer_twist:
        return D_k @ outer_twist_matrix(n)
    return D_k


def make_class(G: GroupSpec, c: CentralClass, label: ClassLabel) -> CohomologyClass:
    return CohomologyClass(group=G, c=c, label=label, canonical=canonical_matrix(G, label))
