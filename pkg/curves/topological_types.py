import functools
import itertools
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from config import DEFAULT_DEGREE_WINDOW
from groups.group_model import CentralClass, Family, GroupSpec, Structure, fundamental_group
from cohomology.labels import CohomologyClass
from cohomology.point_cohomology import enumerate_classes
from cohomology.stabilizer import RealFormDescriptor, stabilizer_form
from curves.real_curve import RealCurve
from utils.exceptions import InvalidTopology
from utils.logger import setup_logger

logger = setup_logger("TopologicalTypes")

# (alpha, beta) for one fixed circle; beta is a component index of Stab(h_alpha), None when unknown
CircleChoice = Tuple[CohomologyClass, Optional[int]]


@dataclass(frozen=True)
class TopologicalType:
    """
    (c, alpha_i, beta_i, d): the discrete invariant of a (pseudo-)real bundle.
    beta_i indexes pi0(Stab(h_{alpha_i})), 0 being the identity component; for GL(n, R) and R*
    it is the Stiefel-Whitney value of the circle.
    """
    c: CentralClass
    alphas: Tuple[CohomologyClass, ...]
    betas: Tuple[Optional[int], ...]
    degree: int

    def sort_key(self) -> Tuple:
        return (
            self.degree,
            tuple(alpha.label.sort_key() for alpha in self.alphas),
            tuple(-1 if beta is None else beta for beta in self.betas),
        )

    def beta_labels(self) -> Tuple[str, ...]:
        labels = []
        for alpha, beta in zip(self.alphas, self.betas):
            if beta is None:
                labels.append("unknown")
            else:
                labels.append(stabilizer_form(alpha.group, alpha).pi0_labels[beta])
        return tuple(labels)

    def __str__(self):
        alphas = ",".join(alpha.label.token for alpha in self.alphas) or "-"
        betas = ",".join(self.beta_labels()) or "-"
        return f"c={self.c} alpha=({alphas}) beta=({betas}) d={self.degree}"


def _stiefel_whitney_sum(betas: Sequence[Optional[int]]) -> int:
    return sum(beta for beta in betas if beta is not None)


def degree_parity_ok(G: GroupSpec, curve: RealCurve, c: CentralClass, betas: Sequence[Optional[int]], degree: int) -> bool:
    """
    The family-specific degree constraint.

    Conjugation GL / C*: d = sum beta_i (mod 2) for real bundles, d = n (g - 1) (mod 2) for c = -1.
    Compact-type GL / C*: d even. Other families carry no parity rule beyond pi_1(G).
    """
    if G.family not in (Family.GL, Family.CSTAR):
        return True
    if G.structure == Structure.COMPACT_TYPE:
        return degree % 2 == 0
    if c.is_trivial:
        return (degree - _stiefel_whitney_sum(betas)) % 2 == 0
    return (degree - G.n * (curve.genus - 1)) % 2 == 0


def _beta_range(form: RealFormDescriptor) -> List[Optional[int]]:
    if not form.known:
        return [None]
    return list(range(form.pi0_size))


def circle_choices(G: GroupSpec, c: CentralClass) -> List[CircleChoice]:
    """All (alpha, beta) pairs a single fixed circle can carry."""
    choices = []
    for cls in enumerate_classes(G, c):
        for beta in _beta_range(stabilizer_form(G, cls)):
            choices.append((cls, beta))
    return choices


@functools.lru_cache(maxsize=256)
def _valid_pairs(G: GroupSpec, c: CentralClass) -> frozenset:
    return frozenset((cls.label, beta) for cls, beta in circle_choices(G, c))


def check_constraints(G: GroupSpec, curve: RealCurve, t: TopologicalType) -> bool:
    if len(t.alphas) != curve.r or len(t.betas) != curve.r:
        return False
    if not fundamental_group(G).contains(t.degree):
        return False

    valid = _valid_pairs(G, t.c)
    for alpha, beta in zip(t.alphas, t.betas):
        if alpha.group != G or alpha.c != t.c:
            return False
        if (alpha.label, beta) not in valid:
            return False
    return degree_parity_ok(G, curve, t.c, t.betas, t.degree)


def _validate_window(degree_window) -> Tuple[int, int]:
    low, high = degree_window
    if low > high:
        raise InvalidTopology(f"Degree window {low}..{high} is empty.")
    return int(low), int(high)


def enumerate_types(G: GroupSpec, curve: RealCurve, c: CentralClass,
                    degree_window=DEFAULT_DEGREE_WINDOW) -> List[TopologicalType]:
    """
    Product of per-circle (alpha, beta) choices with the admissible degrees, filtered by the
    degree constraint and sorted canonically.
    """
    window = _validate_window(degree_window)
    degrees = fundamental_group(G).degrees(window)
    choices = circle_choices(G, c)

    types = []
    for combination in itertools.product(choices, repeat=curve.r):
        alphas = tuple(cls for cls, _ in combination)
        betas = tuple(beta for _, beta in combination)
        for degree in degrees:
            if degree_parity_ok(G, curve, c, betas, degree):
                types.append(TopologicalType(c=c, alphas=alphas, betas=betas, degree=degree))

    types.sort(key=TopologicalType.sort_key)
    logger.debug(f"{G.name} on {curve}, c={c}: {len(types)} types in window {window}")
    return types


def count_by_degree(types: Sequence[TopologicalType]) -> Dict[int, int]:
    counts: Dict[int, int] = {}
    for t in types:
        counts[t.degree] = counts.get(t.degree, 0) + 1
    return counts
