import numpy as np
import scipy.linalg
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from config import DEFAULT_SEED, DEFAULT_TOLERANCE, DEFAULT_VERIFY_SAMPLES
from groups.group_model import (
    CentralClass, Family, GroupSpec, adjoint_group, center_elements, center_h1, center_real_classes,
    check_membership, classify_central, multiply_central, random_group_element, sigma, sigma_scalar,
)
from cohomology.labels import ClassLabel, CohomologyClass
from cohomology.point_cohomology import enumerate_classes, get_normalizer, normalize
from utils.exceptions import BundleEngineError, NoAdjointModel, NotATwist
from utils.logger import setup_logger
from utils.matrix_kernel import as_matrix, relative_error

logger = setup_logger("ExactSequence")


@dataclass(frozen=True)
class SequenceReport:
    """
    H^1(Z) -> H^1(G) -> H^1(G_ad) -> H^2(Z) with its three maps, keyed by token.
    """
    group: GroupSpec
    center_h1: List[str]
    h1_group: List[str]
    h1_adjoint: List[str]
    h2_center: List[str]
    center_to_group: Dict[str, str]
    group_to_adjoint: Dict[str, str]
    adjoint_to_h2: Dict[str, str]
    exact_at_group: bool
    exact_at_adjoint: bool
    lifts_ok: bool
    fiber_sizes: List[int]
    notes: List[str] = field(default_factory=list)

    @property
    def exactness_ok(self) -> bool:
        return self.exact_at_group and self.exact_at_adjoint


def scalar_token(z: complex) -> str:
    if abs(z - 1.0) < 1e-9:
        return "+1"
    if abs(z + 1.0) < 1e-9:
        return "-1"
    return f"{z:.6g}"


def _require_adjoint(G: GroupSpec) -> GroupSpec:
    adjoint = adjoint_group(G)
    if adjoint is None:
        raise NoAdjointModel(f"No adjoint model for {G.name}.")
    return adjoint


def project_adjoint(G: GroupSpec, cls: CohomologyClass) -> CohomologyClass:
    """Image of a class of H^1_c(G) in H^1(G_ad), by normalizing its canonical matrix in PGL."""
    adjoint = _require_adjoint(G)
    if G.family == Family.PGL:
        return cls
    trivial = center_real_classes(adjoint)[0]
    adjoint_class, _ = normalize(adjoint, trivial, cls.canonical)
    return adjoint_class


def lift_to_group(G: GroupSpec, matrix: np.ndarray) -> np.ndarray:
    """A preimage in G of a PGL representative (scalar correction into SL)."""
    if G.family == Family.SL:
        det = np.linalg.det(matrix)
        return matrix * det ** (-1.0 / G.n)
    return np.array(matrix, dtype=complex)


def obstruction(G: GroupSpec, adjoint_class: CohomologyClass) -> CentralClass:
    """
    The class c in H^2(Z/2, Z) with adjoint_class in the image of H^1_c(G):
    lift the canonical representative and evaluate sigma(h) h.
    """
    _require_adjoint(G)
    lifted = lift_to_group(G, adjoint_class.canonical)
    product = sigma(G, lifted) @ lifted
    scalar = complex(np.trace(product) / G.n)
    return classify_central(G, scalar, 1e-6)


def verify_exact_sequence(G: GroupSpec) -> SequenceReport:
    adjoint = _require_adjoint(G)
    classes_h2 = center_real_classes(G)
    trivial = classes_h2[0]

    h1_z = center_h1(G)
    h1_g = enumerate_classes(G, trivial)
    h1_ad = enumerate_classes(adjoint, center_real_classes(adjoint)[0])
    base_group = h1_g[0].label.token
    base_adjoint = h1_ad[0].label.token

    center_to_group = {}
    for z in h1_z:
        cls, _ = normalize(G, trivial, z * np.eye(G.n, dtype=complex))
        center_to_group[scalar_token(z)] = cls.label.token

    group_to_adjoint = {cls.label.token: project_adjoint(G, cls).label.token for cls in h1_g}
    adjoint_to_h2 = {cls.label.token: obstruction(G, cls).label.value for cls in h1_ad}

    # Exactness: image of the incoming map = preimage of the base point under the outgoing map
    image_center = set(center_to_group.values())
    kernel_adjoint_map = {token for token, target in group_to_adjoint.items() if target == base_adjoint}
    exact_at_group = image_center == kernel_adjoint_map

    image_group = set(group_to_adjoint.values())
    kernel_obstruction = {token for token, target in adjoint_to_h2.items() if target == trivial.label.value}
    exact_at_adjoint = image_group == kernel_obstruction

    # Every adjoint class lifts to H^1_c for exactly the c its obstruction names
    lifted_from = {}
    for c in classes_h2:
        for cls in enumerate_classes(G, c):
            lifted_from.setdefault(project_adjoint(G, cls).label.token, set()).add(c.label.value)
    lifts_ok = all(lifted_from.get(token) == {target} for token, target in adjoint_to_h2.items())

    fiber_sizes = [
        sum(1 for target in group_to_adjoint.values() if target == cls.label.token)
        for cls in h1_ad if cls.label.token in image_group
    ]

    notes = []
    if any(size != len(h1_z) for size in fiber_sizes):
        notes.append(f"fiber sizes {fiber_sizes} differ from |H^1(Z)| = {len(h1_z)}; the H^1(Z) action is not free")
    if base_group != center_to_group.get("+1"):
        notes.append("base point of H^1(G) is not the image of +1")

    report = SequenceReport(
        group=G,
        center_h1=[scalar_token(z) for z in h1_z],
        h1_group=[cls.label.token for cls in h1_g],
        h1_adjoint=[cls.label.token for cls in h1_ad],
        h2_center=[c.label.value for c in classes_h2],
        center_to_group=center_to_group,
        group_to_adjoint=group_to_adjoint,
        adjoint_to_h2=adjoint_to_h2,
        exact_at_group=exact_at_group,
        exact_at_adjoint=exact_at_adjoint,
        lifts_ok=lifts_ok,
        fiber_sizes=fiber_sizes,
        notes=notes,
    )
    if not report.exactness_ok:
        logger.warning(f"{G.name}: exactness fails (group={exact_at_group}, adjoint={exact_at_adjoint})")
    return report


# --- Inner Twists ---

@dataclass(frozen=True)
class TwistPair:
    source: ClassLabel
    target: ClassLabel
    source_canonical: np.ndarray = field(compare=False, repr=False)
    target_canonical: np.ndarray = field(compare=False, repr=False)


@dataclass(frozen=True)
class TwistBijection:
    """
    h -> h k^-1 from H^1_{c'} under sigma to H^1_{c' c^-1} under sigma^k = Ad(k) sigma.

    `labels_consistent` only confirms that the image labels match the untwisted class list the
    twisted normalizer reads them through; it holds by construction once every image is a
    twisted cocycle. The independent evidence is `cocycles_ok` together with orbit recovery:
    random sigma^k-coboundaries of each image must normalize back to the same label.
    """
    group: GroupSpec
    twist_class: CentralClass
    source_class: CentralClass
    target_class: CentralClass
    pairs: List[TwistPair]
    labels_consistent: bool
    cocycles_ok: bool
    recovered: int
    sampled: int

    @property
    def passed(self) -> bool:
        return self.labels_consistent and self.cocycles_ok and self.recovered == self.sampled


class TwistedStructure:
    """
    The inner-twisted involution sigma^k(g) = k sigma(g) k^-1, normalized through the
    untwisted normalizer: h' is a sigma^k-cocycle iff h' k is a sigma-cocycle.
    """

    def __init__(self, group: GroupSpec, k, tol: float = DEFAULT_TOLERANCE):
        self.group = group
        self.tol = tol
        try:
            self.k = check_membership(group, k, tol)
        except BundleEngineError as e:
            raise NotATwist(f"k is not in {group.name}: {e.message}")
        self.k_inv = scipy.linalg.inv(self.k)

        product = sigma(group, self.k) @ self.k
        scalar = complex(np.trace(product) / group.n)
        if relative_error(product, scalar * np.eye(group.n)) > max(tol, 1e-8):
            raise NotATwist(f"sigma(k) k is not central in {group.name}.")
        try:
            self.twist_class = classify_central(group, scalar, max(tol, 1e-6))
        except BundleEngineError as e:
            raise NotATwist(e.message)
        self.twist_scalar = scalar
        self.normalizer = get_normalizer(group, tol)

    def apply(self, M: np.ndarray) -> np.ndarray:
        """sigma^k(M)."""
        return self.k @ sigma(self.group, M) @ self.k_inv

    def shifted_class(self, c_prime: CentralClass) -> CentralClass:
        return multiply_central(self.group, c_prime, self.twist_class, inverse_second=True)

    def untwisted_class(self, c_target: CentralClass) -> CentralClass:
        return multiply_central(self.group, c_target, self.twist_class)

    def canonical(self, cls: CohomologyClass) -> np.ndarray:
        """Twisted canonical form C k^-1 of an untwisted class C."""
        return cls.canonical @ self.k_inv

    def is_cocycle(self, h: np.ndarray, c_target: CentralClass) -> bool:
        """sigma^k(h) h is central and lies in the class c' c^-1."""
        product = self.apply(h) @ h
        scalar = complex(np.trace(product) / self.group.n)
        if relative_error(product, scalar * np.eye(self.group.n)) > 1e-8:
            return False
        try:
            return classify_central(self.group, scalar, 1e-6) == c_target
        except BundleEngineError:
            return False

    def normalize(self, c_target: CentralClass, h: np.ndarray) -> Tuple[ClassLabel, np.ndarray]:
        """
        Returns (label, b) with b^-1 h sigma^k(b) = (untwisted canonical) k^-1.
        """
        source = self.untwisted_class(c_target)
        cls, b = self.normalizer.normalize(source, self._match_representative(h @ self.k, source))
        return cls.label, b

    def _match_representative(self, h: np.ndarray, c: CentralClass) -> np.ndarray:
        """Multiplies h by a central t with sigma(t) t scaling sigma(h) h onto the representative of c."""
        product = sigma(self.group, h) @ h
        ratio = c.scalar / complex(np.trace(product) / self.group.n)
        if abs(ratio - 1.0) < 1e-9:
            return h
        elements = center_elements(self.group)
        if elements is None:
            return h * np.sqrt(ratio)
        for t in elements:
            if abs(sigma_scalar(self.group, t) * t - ratio) < 1e-6:
                return h * t
        return h


def inner_twist(G: GroupSpec, k, c_prime: Optional[CentralClass] = None,
                samples: int = DEFAULT_VERIFY_SAMPLES, seed: int = DEFAULT_SEED,
                tol: float = DEFAULT_TOLERANCE) -> TwistBijection:
    """
    Bijection H^1_{c'}(sigma) -> H^1_{c' c^-1}(sigma^k), h -> h k^-1, checked by
    evaluating the twisted cocycle condition and by orbit recovery under sigma^k.
    """
    twisted = TwistedStructure(G, as_matrix(k, "k"), tol)
    source_class = c_prime if c_prime is not None else twisted.twist_class
    target_class = twisted.shifted_class(source_class)

    sources = enumerate_classes(G, source_class)
    # Target classes under sigma^k, enumerated through the untwisted normalizer
    target_labels = [cls.label for cls in enumerate_classes(G, twisted.untwisted_class(target_class))]

    pairs = []
    cocycles_ok = True
    recovered = 0
    sampled = 0
    rng = np.random.default_rng(seed)
    for cls in sources:
        image = cls.canonical @ twisted.k_inv
        if not twisted.is_cocycle(image, target_class):
            cocycles_ok = False
        label, _ = twisted.normalize(target_class, image)
        pairs.append(TwistPair(cls.label, label, cls.canonical, twisted.canonical(cls)))

        for _ in range(samples):
            b = random_group_element(G, rng)
            sample = scipy.linalg.solve(b, image) @ twisted.apply(b)
            sample_label, _ = twisted.normalize(target_class, sample)
            recovered += int(sample_label == label)
            sampled += 1

    images = [pair.target for pair in pairs]
    labels_consistent = len(set(images)) == len(images) and sorted(images, key=lambda l: l.sort_key()) == sorted(
        target_labels, key=lambda l: l.sort_key()
    )
    if not labels_consistent:
        logger.warning(f"{G.name}: inner twist images do not match the twisted class list")
    if recovered != sampled:
        logger.warning(f"{G.name}: twisted orbit recovery {recovered}/{sampled}")

    return TwistBijection(
        group=G,
        twist_class=twisted.twist_class,
        source_class=source_class,
        target_class=target_class,
        pairs=pairs,
        labels_consistent=labels_consistent,
        cocycles_ok=cocycles_ok,
        recovered=recovered,
        sampled=sampled,
    )
