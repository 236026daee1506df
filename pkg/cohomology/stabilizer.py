import numpy as np
import scipy.linalg
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, List, Optional, Tuple

from config import DEFAULT_SEED, DEFAULT_TOLERANCE
from groups.group_model import Family, GroupSpec, Structure, sigma
from groups.lie_algebra import fixed_subalgebra, twisted_involution
from cohomology.labels import CohomologyClass, LabelKind
from cohomology.point_cohomology import infer_central_class
from utils.logger import setup_logger
from utils.matrix_kernel import as_matrix, expm, numeric_rank, relative_error

logger = setup_logger("Stabilizer")


class RealFormName(Enum):
    U_PQ = "U(p,q)"
    SU_PQ = "SU(p,q)"
    GL_R = "GL(n,R)"
    GL_H = "GL(n,H)"
    SO_PQ = "SO(p,q)"
    SO_COMPACT = "SO(m)"
    SU_STAR = "SU*(n)"
    CIRCLE = "S^1"
    R_STAR = "R*"
    PROJECTIVE = "PGL-form"


@dataclass(frozen=True)
class RealFormDescriptor:
    """
    Stab(h) = G_{R,h}, the real form fixed by g -> h^-1 sigma(g) h, and its component data.
    pi0_size is None when no component count is recorded for the form.
    """
    name: RealFormName
    p: int = 0
    q: int = 0
    n: int = 0
    pi0_size: Optional[int] = 1
    pi0_labels: Tuple[str, ...] = ("1",)

    @property
    def known(self) -> bool:
        return self.pi0_size is not None

    @property
    def display_name(self) -> str:
        if self.name in (RealFormName.U_PQ, RealFormName.SU_PQ, RealFormName.SO_PQ):
            if min(self.p, self.q) == 0:
                return self.name.value.replace("p,q", str(self.p + self.q))
            return self.name.value.replace("p,q", f"{self.p},{self.q}")
        if self.name in (RealFormName.GL_R, RealFormName.GL_H, RealFormName.SU_STAR):
            return self.name.value.replace("(n", f"({self.n}")
        if self.name == RealFormName.SO_COMPACT:
            return f"SO({self.n})"
        return self.name.value

    @property
    def pi0_display(self) -> str:
        if self.pi0_size is None:
            return "unknown"
        return "{1}" if self.pi0_size == 1 else "Z/2"


def _connected(name: RealFormName, **kwargs) -> RealFormDescriptor:
    return RealFormDescriptor(name=name, pi0_size=1, pi0_labels=("1",), **kwargs)


def _two_components(name: RealFormName, labels: Tuple[str, str], **kwargs) -> RealFormDescriptor:
    return RealFormDescriptor(name=name, pi0_size=2, pi0_labels=labels, **kwargs)


def stabilizer_form(G: GroupSpec, cls: CohomologyClass) -> RealFormDescriptor:
    """Table-driven real form of Stab(h) for the canonical representative of cls."""
    label = cls.label
    n = G.n

    if G.family == Family.CSTAR:
        if G.structure == Structure.COMPACT_TYPE:
            return _connected(RealFormName.CIRCLE, n=1)
        return _two_components(RealFormName.R_STAR, ("+", "-"), n=1)

    if G.family == Family.PGL:
        return RealFormDescriptor(name=RealFormName.PROJECTIVE, p=label.p, q=label.q, n=n,
                                  pi0_size=None, pi0_labels=())

    if G.family == Family.GL:
        if G.structure == Structure.COMPACT_TYPE:
            return _connected(RealFormName.U_PQ, p=label.p, q=label.q, n=n)
        if label.kind == LabelKind.QUATERNIONIC_J:
            return _connected(RealFormName.GL_H, n=n // 2)
        return _two_components(RealFormName.GL_R, ("+det", "-det"), n=n)

    if G.family == Family.SL:
        return _connected(RealFormName.SU_PQ, p=label.p, q=label.q, n=n)

    # SO(m)
    if label.kind == LabelKind.QUATERNIONIC_J:
        if n == 2:
            # SO(2) = C*; both complex structures fix the circle U(1)
            return _connected(RealFormName.CIRCLE, n=1)
        return _connected(RealFormName.SU_STAR, n=n // 2)
    k = label.k
    if k in (0, n):
        return _connected(RealFormName.SO_COMPACT, n=n)
    return _two_components(RealFormName.SO_PQ, ("+", "-"), p=n - k, q=k, n=n)


def stabilizer_dimension(G: GroupSpec, h, tol: float = DEFAULT_TOLERANCE) -> int:
    """Real dimension of the +1 eigenspace of the twisted involution on the realified Lie algebra."""
    h = as_matrix(h, "h")
    infer_central_class(G, h, tol)
    if G.lie_dimension == 0:
        return 0
    tau = twisted_involution(G, h)
    return tau.dim_real - numeric_rank(tau.matrix - np.eye(tau.dim_real))


def stabilizer_dimension_check(G: GroupSpec, h, tol: float = DEFAULT_TOLERANCE) -> bool:
    """Stab(h) is a real form: its Lie algebra has real dimension dim_C g."""
    dimension = stabilizer_dimension(G, h, tol)
    ok = dimension == G.lie_dimension
    if not ok:
        logger.warning(f"{G.name}: stabilizer dimension {dimension}, expected {G.lie_dimension}")
    return ok


# --- pi0 Smoke Checks ---

@dataclass(frozen=True)
class Pi0SmokeReport:
    form: RealFormDescriptor
    exponentials_checked: int
    exponentials_in_identity_component: int
    representative_checked: bool
    representative_separates: bool
    notes: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        exponentials_ok = self.exponentials_in_identity_component == self.exponentials_checked
        return exponentials_ok and (not self.representative_checked or self.representative_separates)


def in_stabilizer(G: GroupSpec, h: np.ndarray, g: np.ndarray, tol: float = 1e-7) -> bool:
    """h^-1 sigma(g) h = g."""
    return relative_error(scipy.linalg.solve(h, sigma(G, g) @ h), g) <= tol


def _component_invariant(G: GroupSpec, form: RealFormDescriptor) -> Optional[Callable[[np.ndarray], float]]:
    """A real-valued function whose sign separates the two components, when there are two."""
    if form.pi0_size != 2:
        return None
    if form.name in (RealFormName.GL_R, RealFormName.R_STAR):
        return lambda g: float(np.linalg.det(g).real)
    p = form.p
    # Upper p x p block of an SO(p, q) element is real with |det| >= 1
    return lambda g: float(np.linalg.det(g[:p, :p]).real)


def _component_representative(G: GroupSpec, form: RealFormDescriptor) -> np.ndarray:
    n = G.n
    rep = np.eye(n, dtype=complex)
    if form.name in (RealFormName.GL_R, RealFormName.R_STAR):
        rep[0, 0] = -1.0
        return rep
    rep[0, 0] = -1.0
    rep[form.p, form.p] = -1.0
    return rep


def pi0_smoke_check(G: GroupSpec, cls: CohomologyClass, samples: int = 50,
                    seed: int = DEFAULT_SEED) -> Pi0SmokeReport:
    """
    Numeric corroboration of the table entry: exponentials of Lie(Stab(h)) stay in Stab(h)
    on the identity component, and for two-component forms an explicit element of the other
    component is found.
    """
    form = stabilizer_form(G, cls)
    notes = []
    if not form.known:
        return Pi0SmokeReport(form, 0, 0, False, False, ["no component data recorded for this form"])

    h = cls.canonical
    rng = np.random.default_rng(seed)
    algebra = fixed_subalgebra(G, h)
    invariant = _component_invariant(G, form)

    in_identity = 0
    for _ in range(samples):
        coefficients = rng.standard_normal(len(algebra))
        X = sum(coeff * Y for coeff, Y in zip(coefficients, algebra)) if algebra else np.zeros((G.n, G.n))
        X = X / max(np.linalg.norm(X), 1.0)
        # Path t -> exp(t X) from the identity
        path_ok = all(in_stabilizer(G, h, expm(t * X)) for t in (0.25, 0.5, 1.0))
        if invariant is not None:
            path_ok = path_ok and invariant(expm(X)) > 0
        in_identity += int(path_ok)

    representative_checked = invariant is not None
    separates = False
    if representative_checked:
        rep = _component_representative(G, form)
        separates = in_stabilizer(G, h, rep) and invariant(rep) < 0
        if not separates:
            notes.append(f"representative {np.diag(rep).real} does not reach a second component")

    return Pi0SmokeReport(form, samples, in_identity, representative_checked, separates, notes)
