from dataclasses import dataclass
from enum import Enum
from typing import Tuple

from utils.exceptions import InvalidTopology


class CurveKind(Enum):
    TYPE_0 = "0"    # no fixed circles
    TYPE_I = "I"    # fixed circles, orientable quotient
    TYPE_II = "II"  # fixed circles, non-orientable quotient


class CircleTag(Enum):
    FIXED = "gamma"        # pointwise fixed by the real structure
    SPLIT = "delta-split"  # invariant, cut into two intervals I_0 and sigma(I_0)
    SWAPPED = "delta-swap" # one of a pair interchanged by the real structure


@dataclass(frozen=True)
class BoundaryCircle:
    tag: CircleTag
    index: int

    def __str__(self):
        if self.tag == CircleTag.FIXED:
            return f"gamma{self.index}"
        return f"delta{self.index}"


@dataclass(frozen=True)
class QuotientData:
    """X_0 with X = X_0 u sigma(X_0) glued along its boundary circles."""
    genus: int
    boundaries: Tuple[BoundaryCircle, ...]

    @property
    def euler_characteristic(self) -> int:
        return 2 - 2 * self.genus - len(self.boundaries)

    @property
    def doubled_euler_characteristic(self) -> int:
        # Shared boundary circles contribute nothing: chi(S^1) = 0
        return 2 * self.euler_characteristic

    @property
    def fixed_circles(self) -> int:
        return sum(1 for b in self.boundaries if b.tag == CircleTag.FIXED)


@dataclass(frozen=True)
class RealCurve:
    genus: int
    kind: CurveKind
    r: int

    def __post_init__(self):
        g, r = self.genus, self.r
        if g < 0:
            raise InvalidTopology(f"Genus must be non-negative, got {g}.")
        if self.kind == CurveKind.TYPE_0:
            if r != 0:
                raise InvalidTopology(f"A type 0 curve has no fixed circles, got r = {r}.")
        elif self.kind == CurveKind.TYPE_I:
            if not 1 <= r <= g + 1:
                raise InvalidTopology(f"Type I needs 1 <= r <= g + 1, got g = {g}, r = {r}.")
            if (g + 1 - r) % 2 != 0:
                raise InvalidTopology(f"Type I needs r = g + 1 mod 2, got g = {g}, r = {r}.")
        else:
            if not 1 <= r <= g:
                raise InvalidTopology(f"Type II needs 1 <= r <= g, got g = {g}, r = {r}.")

    @property
    def label(self) -> str:
        return f"{self.genus},{self.kind.value},{self.r}"

    def __str__(self):
        return f"(g={self.genus}, type {self.kind.value}, r={self.r})"


def parse_kind(kind) -> CurveKind:
    if isinstance(kind, CurveKind):
        return kind
    text = str(kind).strip().upper()
    for prefix in ("TYPE_", "TYPE"):
        if text.startswith(prefix):
            text = text[len(prefix):]
    try:
        return CurveKind(text)
    except ValueError:
        raise InvalidTopology(f"Unknown curve type '{kind}'.")


def make_curve(g: int, kind, r: int) -> RealCurve:
    return RealCurve(genus=int(g), kind=parse_kind(kind), r=int(r))


def parse_curve(text: str) -> RealCurve:
    """`g,kind,r`, e.g. `3,I,4`."""
    parts = [part.strip() for part in text.split(",")]
    if len(parts) != 3:
        raise InvalidTopology(f"Curve must be given as g,kind,r; got '{text}'.")
    try:
        return make_curve(int(parts[0]), parts[1], int(parts[2]))
    except ValueError:
        raise InvalidTopology(f"Curve must be given as g,kind,r; got '{text}'.")


def quotient_data(curve: RealCurve) -> QuotientData:
    g, r = curve.genus, curve.r
    gammas = tuple(BoundaryCircle(CircleTag.FIXED, i + 1) for i in range(r))

    if curve.kind == CurveKind.TYPE_I:
        data = QuotientData(genus=(g + 1 - r) // 2, boundaries=gammas)
    elif (g - r) % 2 == 0:
        # One invariant circle split into I_0 and sigma(I_0)
        data = QuotientData(genus=(g - r) // 2, boundaries=(BoundaryCircle(CircleTag.SPLIT, 1),) + gammas)
    else:
        # Two circles interchanged by the real structure
        swapped = (BoundaryCircle(CircleTag.SWAPPED, 1), BoundaryCircle(CircleTag.SWAPPED, 2))
        data = QuotientData(genus=(g - r - 1) // 2, boundaries=swapped + gammas)

    if data.doubled_euler_characteristic != 2 - 2 * g:
        raise InvalidTopology(f"Doubling check failed for {curve}.")
    return data


def euler_characteristic_consistent(g: int, kind, r: int) -> bool:
    """
    Independent check of a (g, kind, r) triple: some X_0 of genus h >= 0 with r fixed circles
    and the kind's allowed number of delta circles doubles to a surface with chi = 2 - 2g.
    """
    kind = parse_kind(kind)
    if g < 0 or r < 0:
        return False
    if kind == CurveKind.TYPE_0:
        if r != 0:
            return False
        delta_counts = (1, 2)
    elif kind == CurveKind.TYPE_I:
        if r < 1:
            return False
        delta_counts = (0,)
    else:
        if r < 1:
            return False
        delta_counts = (1, 2)

    for deltas in delta_counts:
        for h in range(g + 1):
            if 2 * (2 - 2 * h - r - deltas) == 2 - 2 * g:
                return True
    return False
