import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from config import BRUTE_FORCE_TUPLE_LIMIT, MAX_CENSUS_CIRCLES
from groups.group_model import CentralClass, CentralLabel, Family, GroupSpec, Structure, center_real_classes
from curves.real_curve import CurveKind, RealCurve
from curves.topological_types import TopologicalType, check_constraints, circle_choices, enumerate_types
from utils.exceptions import TooLarge, UnsupportedFamily
from utils.logger import setup_logger

logger = setup_logger("ComponentCensus")


@dataclass(frozen=True)
class CensusResult:
    """
    Lower bound for the number of components of the real or quaternionic locus in the moduli
    space: one component per topological type at the given degree.
    """
    group: GroupSpec
    curve: RealCurve
    degree: int
    c: Optional[CentralClass]
    count: int
    breakdown: Tuple[Tuple[str, int], ...]
    method: str
    is_lower_bound: bool = True
    exact_when_coprime: bool = False
    hypotheses_hold: bool = False
    printed_formula_count: Optional[int] = None
    notes: Tuple[str, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if self.count != sum(n for _, n in self.breakdown):
            raise ValueError(f"count {self.count} differs from breakdown {self.breakdown}")


def constraint_class_name(G: GroupSpec, c: CentralClass) -> str:
    if G.structure == Structure.COMPACT_TYPE:
        return "signature"
    return "real" if c.is_trivial else "quaternionic"


def _check_supported(G: GroupSpec, curve: RealCurve):
    if G.family != Family.GL:
        raise UnsupportedFamily(f"The census covers GL(n) only, got {G.name}.")
    if curve.kind != CurveKind.TYPE_I:
        raise UnsupportedFamily(f"The census covers type I curves only, got {curve}.")


def _classes_for(G: GroupSpec, c: Optional[CentralClass]) -> List[CentralClass]:
    return center_real_classes(G) if c is None else [c]


def _closed_form(G: GroupSpec, curve: RealCurve, degree: int, c: CentralClass) -> int:
    n, r, g = G.n, curve.r, curve.genus
    if G.structure == Structure.COMPACT_TYPE:
        return (n + 1) ** r if degree % 2 == 0 else 0
    if c.label == CentralLabel.TRIVIAL:
        # Stiefel-Whitney vectors with sum = d (mod 2)
        return 2 ** (r - 1)
    quaternionic_ok = n % 2 == 0 and (degree - n * (g - 1)) % 2 == 0
    return 1 if quaternionic_ok else 0


def _annotations(G: GroupSpec, curve: RealCurve, degree: int) -> Dict:
    notes = []
    printed = None
    if G.structure == Structure.COMPACT_TYPE and degree % 2 == 0:
        printed = curve.r ** (G.n + 1)
        if printed != (G.n + 1) ** curve.r:
            notes.append(f"printed formula r^(n+1) = {printed} differs from (n+1)^r = {(G.n + 1) ** curve.r}")
            logger.warning(f"{G.name} on {curve}: {notes[-1]}")
        else:
            printed = None
    exact = math.gcd(G.n, degree) == 1
    if exact:
        notes.append("gcd(n, d) = 1: the lower bound is a count")
    hypotheses = curve.genus > 2
    if not hypotheses:
        notes.append("g <= 2: the lower-bound hypotheses do not hold")
    return dict(exact_when_coprime=exact, hypotheses_hold=hypotheses,
                printed_formula_count=printed, notes=tuple(notes))


def count_components(G: GroupSpec, curve: RealCurve, degree: int,
                     c: Optional[CentralClass] = None) -> CensusResult:
    """Closed-form count; c = None sums over every class in H^2(Z/2, Z)."""
    _check_supported(G, curve)
    breakdown = tuple(
        (constraint_class_name(G, cls), _closed_form(G, curve, degree, cls)) for cls in _classes_for(G, c)
    )
    return CensusResult(
        group=G, curve=curve, degree=degree, c=c,
        count=sum(n for _, n in breakdown), breakdown=breakdown, method="closed-form",
        **_annotations(G, curve, degree),
    )


def _parity_grouped_count(G: GroupSpec, curve: RealCurve, degree: int, c: CentralClass, choices) -> int:
    """
    Tuples grouped by the parity of their Stiefel-Whitney sum; one representative per group
    goes through check_constraints.
    """
    by_parity = {0: [], 1: []}
    for choice in choices:
        by_parity[(choice[1] or 0) % 2].append(choice)

    # tuples[s] = number of r-tuples with beta sum = s (mod 2), and one witness tuple
    tuples = {0: 1, 1: 0}
    witness = {0: (), 1: None}
    for _ in range(curve.r):
        next_tuples = {0: 0, 1: 0}
        next_witness = {0: None, 1: None}
        for s in (0, 1):
            for parity in (0, 1):
                ways = len(by_parity[parity])
                if tuples[s] == 0 or ways == 0:
                    continue
                target = (s + parity) % 2
                next_tuples[target] += tuples[s] * ways
                if next_witness[target] is None:
                    next_witness[target] = witness[s] + (by_parity[parity][0],)
        tuples, witness = next_tuples, next_witness

    count = 0
    for s in (0, 1):
        if tuples[s] == 0:
            continue
        combination = witness[s]
        t = TopologicalType(
            c=c,
            alphas=tuple(cls for cls, _ in combination),
            betas=tuple(beta for _, beta in combination),
            degree=degree,
        )
        if check_constraints(G, curve, t):
            count += tuples[s]
    return count


def brute_force_census(G: GroupSpec, curve: RealCurve, degree: int,
                       c: Optional[CentralClass] = None) -> CensusResult:
    """
    Counts the types listed by enumerate_types at the single degree. Above
    BRUTE_FORCE_TUPLE_LIMIT tuples the count falls back to parity grouping and the
    result is labelled "brute-force-grouped".
    """
    _check_supported(G, curve)
    if curve.r > MAX_CENSUS_CIRCLES:
        raise TooLarge(f"Brute-force census is limited to r <= {MAX_CENSUS_CIRCLES}, got r = {curve.r}.")

    breakdown = []
    grouped = False
    for cls in _classes_for(G, c):
        choices = circle_choices(G, cls)
        total = len(choices) ** curve.r
        if total <= BRUTE_FORCE_TUPLE_LIMIT:
            types = enumerate_types(G, curve, cls, (degree, degree))
            n = sum(1 for t in types if check_constraints(G, curve, t))
        else:
            logger.info(f"{G.name} on {curve}: {total} tuples, grouping by Stiefel-Whitney parity")
            n = _parity_grouped_count(G, curve, degree, cls, choices)
            grouped = True
        breakdown.append((constraint_class_name(G, cls), n))

    breakdown = tuple(breakdown)
    return CensusResult(
        group=G, curve=curve, degree=degree, c=c,
        count=sum(n for _, n in breakdown), breakdown=breakdown,
        method="brute-force-grouped" if grouped else "brute-force",
        **_annotations(G, curve, degree),
    )
