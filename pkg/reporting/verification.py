import asyncio
import time
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Sequence, Tuple

from config import (
    CENSUS_RANKS, DEFAULT_SEED, DEFAULT_TOLERANCE, DEFAULT_VERIFY_SAMPLES, DISCRETENESS_MAX_SIZE,
    MAX_CENSUS_CIRCLES, TABLE_GL_SIZES, TABLE_PGL_SIZES, TABLE_SL_SIZES, TABLE_SO_SIZES,
    VERIFY_MAX_SIZE, WITNESS_TOLERANCE,
)
from groups.group_model import Family, GroupSpec, Structure, center_real_classes, make_group
from cohomology.labels import LabelKind
from cohomology.point_cohomology import (
    enumerate_classes, normalize, sample_orbit, verify_discreteness, witness_residual,
)
from cohomology.sequence import inner_twist, verify_exact_sequence
from cohomology.stabilizer import pi0_smoke_check, stabilizer_dimension_check
from curves.real_curve import CurveKind, euler_characteristic_consistent, make_curve, quotient_data
from census.component_census import brute_force_census, count_components
from utils.exceptions import BundleEngineError, InvalidTopology
from utils.logger import setup_logger

logger = setup_logger("Verification")

MAX_LISTED_FAILURES = 20


@dataclass(frozen=True)
class SuiteResult:
    name: str
    checks: int
    failures: Tuple[str, ...] = field(default_factory=tuple)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures


def verification_groups(max_size: int = VERIFY_MAX_SIZE) -> List[GroupSpec]:
    groups = [make_group(Family.CSTAR, 1, Structure.COMPACT_TYPE), make_group(Family.CSTAR, 1, Structure.CONJUGATION)]
    for structure in (Structure.COMPACT_TYPE, Structure.CONJUGATION):
        groups += [make_group(Family.GL, n, structure) for n in TABLE_GL_SIZES if n <= max_size]
    groups += [make_group(Family.SL, n, Structure.COMPACT_TYPE) for n in (2,) + TABLE_SL_SIZES if n <= max_size]
    groups += [make_group(Family.SO, m, Structure.CONJUGATION) for m in (2, 3) + TABLE_SO_SIZES if m <= max_size]
    groups += [make_group(Family.SO, m, Structure.CONJUGATION, outer_twist=True) for m in (4, 6) if m <= max_size]
    for structure in (Structure.COMPACT_TYPE, Structure.CONJUGATION):
        groups += [make_group(Family.PGL, n, structure) for n in TABLE_PGL_SIZES if n <= max_size]
    return groups


def _all_classes(groups: Sequence[GroupSpec]):
    for G in groups:
        for c in center_real_classes(G):
            for cls in enumerate_classes(G, c):
                yield G, c, cls


def _timed(name: str, body: Callable[[], Tuple[int, List[str]]]) -> SuiteResult:
    start = time.perf_counter()
    try:
        checks, failures = body()
    except BundleEngineError as e:
        checks, failures = 1, [f"{name} aborted: {e.message}"]
    seconds = time.perf_counter() - start
    if failures:
        logger.warning(f"Suite {name}: {len(failures)} failure(s)")
    else:
        logger.info(f"Suite {name}: {checks} checks passed in {seconds:.2f}s")
    return SuiteResult(name, checks, tuple(failures[:MAX_LISTED_FAILURES]), round(seconds, 3))


# --- Suites ---

def orbit_recovery_suite(samples: int = DEFAULT_VERIFY_SAMPLES, seed: int = DEFAULT_SEED,
                         tol: float = DEFAULT_TOLERANCE) -> SuiteResult:
    def body():
        checks, failures = 0, []
        for G, c, cls in _all_classes(verification_groups()):
            recovered = 0
            worst = 0.0
            for i in range(samples):
                cocycle = sample_orbit(G, c, cls, seed + i)
                try:
                    found, b = normalize(G, c, cocycle.h, tol)
                except BundleEngineError as e:
                    logger.debug(f"{G.name} {cls.label.token} sample {i}: {e.message}")
                    continue
                residual = witness_residual(G, cocycle.h, b, found.canonical)
                worst = max(worst, residual)
                recovered += int(found.label == cls.label and residual <= WITNESS_TOLERANCE)
            checks += samples
            if recovered != samples:
                failures.append(f"{G.name} c={c} {cls.label.token}: {recovered}/{samples} recovered, worst residual {worst:.1e}")
        return checks, failures
    return _timed("orbit-recovery", body)


def discreteness_suite(max_size: int = DISCRETENESS_MAX_SIZE, tol: float = DEFAULT_TOLERANCE) -> SuiteResult:
    def body():
        checks, failures = 0, []
        for G, c, cls in _all_classes(verification_groups(max_size)):
            report = verify_discreteness(G, cls.canonical, tol)
            checks += 1
            if not report.passed:
                failures.append(
                    f"{G.name} {cls.label.token}: ker T = {report.dim_kernel_T}, im T' = {report.dim_image_Tprime}, "
                    f"dim g = {report.lie_dimension}, containment {report.containment_ok}"
                )
        return checks, failures
    return _timed("discreteness", body)


def stabilizer_suite(max_size: int = DISCRETENESS_MAX_SIZE, seed: int = DEFAULT_SEED,
                     tol: float = DEFAULT_TOLERANCE) -> SuiteResult:
    def body():
        checks, failures = 0, []
        for G, c, cls in _all_classes(verification_groups(max_size)):
            checks += 1
            if not stabilizer_dimension_check(G, cls.canonical, tol):
                failures.append(f"{G.name} {cls.label.token}: stabilizer dimension differs from dim g")
            if G.outer_twist or G.family == Family.PGL:
                continue
            smoke = pi0_smoke_check(G, cls, samples=10, seed=seed)
            checks += 1
            if not smoke.passed:
                failures.append(f"{G.name} {cls.label.token}: pi0 smoke check failed {smoke.notes}")
        return checks, failures
    return _timed("stabilizer", body)


def exact_sequence_suite(seed: int = DEFAULT_SEED, tol: float = DEFAULT_TOLERANCE) -> SuiteResult:
    def body():
        checks, failures = 0, []
        groups = [make_group(Family.CSTAR, 1, s) for s in (Structure.COMPACT_TYPE, Structure.CONJUGATION)]
        for structure in (Structure.COMPACT_TYPE, Structure.CONJUGATION):
            groups += [make_group(Family.GL, n, structure) for n in TABLE_GL_SIZES]
        groups += [make_group(Family.SL, n, Structure.COMPACT_TYPE) for n in TABLE_SL_SIZES]
        for G in groups:
            report = verify_exact_sequence(G)
            checks += 1
            if not (report.exactness_ok and report.lifts_ok):
                failures.append(f"{G.name}: exact at G {report.exact_at_group}, at G_ad {report.exact_at_adjoint}, lifts {report.lifts_ok}")

        # Inner twist by the quaternionic structure of GL(2n)
        for n in (2, 4):
            G = make_group(Family.GL, n, Structure.CONJUGATION)
            minus_one = center_real_classes(G)[1]
            k = next(cls for cls in enumerate_classes(G, minus_one) if cls.label.kind == LabelKind.QUATERNIONIC_J)
            bijection = inner_twist(G, k.canonical, samples=5, seed=seed, tol=tol)
            checks += 1
            if not bijection.passed:
                failures.append(f"{G.name}: inner twist by J recovered {bijection.recovered}/{bijection.sampled}")
        return checks, failures
    return _timed("exact-sequence", body)


def census_suite(ranks: Sequence[int] = CENSUS_RANKS, max_circles: int = MAX_CENSUS_CIRCLES) -> SuiteResult:
    def body():
        checks, failures = 0, []
        for structure in (Structure.CONJUGATION, Structure.COMPACT_TYPE):
            for n in ranks:
                G = make_group(Family.GL, n, structure)
                for r in range(1, max_circles + 1):
                    curve = make_curve(r + 1, CurveKind.TYPE_I, r)
                    for degree in (0, 1):
                        closed = count_components(G, curve, degree)
                        brute = brute_force_census(G, curve, degree)
                        checks += 1
                        if closed.count != brute.count:
                            failures.append(f"{G.name} r={r} d={degree}: closed form {closed.count}, brute force {brute.count}")
        return checks, failures
    return _timed("census", body)


def curve_topology_suite(max_genus: int = 10) -> SuiteResult:
    def body():
        checks, failures = 0, []
        for g in range(max_genus + 1):
            for kind in CurveKind:
                for r in range(g + 3):
                    expected = euler_characteristic_consistent(g, kind, r)
                    try:
                        curve = make_curve(g, kind, r)
                        accepted = True
                    except InvalidTopology:
                        accepted = False
                    checks += 1
                    if accepted != expected:
                        failures.append(f"({g}, {kind.value}, {r}): accepted {accepted}, Euler check {expected}")
                    elif accepted and quotient_data(curve).doubled_euler_characteristic != 2 - 2 * g:
                        failures.append(f"({g}, {kind.value}, {r}): doubling check failed")
        return checks, failures
    return _timed("curve-topology", body)


def suite_registry(samples: int, seed: int, tol: float) -> Dict[str, Callable[[], SuiteResult]]:
    """Suite name -> zero-argument runner, in report order."""
    return {
        "orbit-recovery": lambda: orbit_recovery_suite(samples, seed, tol),
        "discreteness": lambda: discreteness_suite(tol=tol),
        "stabilizer": lambda: stabilizer_suite(seed=seed, tol=tol),
        "exact-sequence": lambda: exact_sequence_suite(seed, tol),
        "census": census_suite,
        "curve-topology": curve_topology_suite,
    }


async def run_suites(names: Sequence[str], samples: int = DEFAULT_VERIFY_SAMPLES,
                     seed: int = DEFAULT_SEED, tol: float = DEFAULT_TOLERANCE) -> List[SuiteResult]:
    """Runs the named suites concurrently; results come back in the order requested."""
    registry = suite_registry(samples, seed, tol)
    tasks = [asyncio.to_thread(registry[name]) for name in names]
    return list(await asyncio.gather(*tasks))
