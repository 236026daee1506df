import argparse
import asyncio
import sys
from dataclasses import dataclass
from typing import List, Optional, Tuple

from dotenv import load_dotenv

from config import (
    DEFAULT_DEGREE_WINDOW, DEFAULT_OUTPUT_FORMAT, DEFAULT_TOLERANCE, DEFAULT_VERIFY_SAMPLES,
    OUTPUT_FORMATS, resolve_seed,
)
from groups.group_model import CentralClass, GroupSpec, center_real_classes, parse_group
from cohomology.labels import parse_label
from cohomology.point_cohomology import enumerate_classes
from cohomology.sequence import inner_twist, verify_exact_sequence
from cohomology.stabilizer import stabilizer_form
from curves.real_curve import make_curve, parse_curve, quotient_data
from curves.topological_types import enumerate_types
from census.component_census import brute_force_census, count_components
from reporting.formatters import join_tokens, render
from reporting.tables import build_tables
from reporting.verification import run_suites, suite_registry
from utils.exceptions import BundleEngineError, UsageError
from utils.logger import setup_logger

load_dotenv()

logger = setup_logger("Main")

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


@dataclass(frozen=True)
class CliConfig:
    tolerance: float = DEFAULT_TOLERANCE
    seed: int = 0
    output_format: str = DEFAULT_OUTPUT_FORMAT
    degree_window: Tuple[int, int] = DEFAULT_DEGREE_WINDOW

    def __post_init__(self):
        if not self.tolerance > 0:
            raise UsageError(f"--tol must be positive, got {self.tolerance}.")
        if self.output_format not in OUTPUT_FORMATS:
            raise UsageError(f"--format must be one of {', '.join(OUTPUT_FORMATS)}.")
        low, high = self.degree_window
        if low > high:
            raise UsageError(f"Degree window {low}..{high} is empty.")


def parse_degree_window(text: str) -> Tuple[int, int]:
    """`a..b`, or a single integer for a one-degree window."""
    try:
        if ".." in text:
            low, high = text.split("..", 1)
            return int(low), int(high)
        return int(text), int(text)
    except ValueError:
        raise UsageError(f"Degrees must look like a..b, got '{text}'.")


def parse_central(G: GroupSpec, token: Optional[str]) -> Optional[CentralClass]:
    """Trivial / MinusOne / PrimitiveRoot (case-insensitive), or +1 / -1."""
    if token is None:
        return None
    aliases = {"+1": "trivial", "1": "trivial", "-1": "minusone"}
    wanted = aliases.get(token.strip(), token.strip().lower())
    for c in center_real_classes(G):
        if c.label.value.lower() == wanted:
            return c
    known = ", ".join(c.label.value for c in center_real_classes(G))
    raise UsageError(f"{token} is not a class of H^2(Z/2, Z) for {G.name}; choose from {known}.")


def _central_classes(G: GroupSpec, c: Optional[CentralClass]) -> List[CentralClass]:
    return center_real_classes(G) if c is None else [c]


def _find_class(G: GroupSpec, token: str, c: Optional[CentralClass]):
    label = parse_label(token)
    for central in _central_classes(G, c):
        for cls in enumerate_classes(G, central):
            if cls.label == label:
                return cls
    raise UsageError(f"{token} is not a class of {G.name}.")


# --- Subcommands ---

def cmd_point_classes(args, config: CliConfig) -> int:
    G = parse_group(args.group)
    c = parse_central(G, args.c)
    classes = [cls for central in _central_classes(G, c) for cls in enumerate_classes(G, central)]
    records = [{"c": cls.c.label.value, "class": cls.label.token, "label": str(cls.label)} for cls in classes]
    print(render(classes, records, config.output_format))
    return EXIT_OK


def cmd_pi0(args, config: CliConfig) -> int:
    G = parse_group(args.group)
    cls = _find_class(G, args.label, parse_central(G, args.c))
    form = stabilizer_form(G, cls)
    records = [{
        "group": G.name, "c": cls.c.label.value, "class": cls.label.token,
        "stabilizer": form.display_name, "pi0": form.pi0_display,
        "components": join_tokens(form.pi0_labels) if form.known else "unknown",
    }]
    print(render(form, records, config.output_format))
    return EXIT_OK


def cmd_sequence(args, config: CliConfig) -> int:
    G = parse_group(args.group)
    report = verify_exact_sequence(G)
    records = [
        {"term": "H1(Z)", "elements": join_tokens(report.center_h1)},
        {"term": "H1(G)", "elements": join_tokens(report.h1_group)},
        {"term": "H1(G_ad)", "elements": join_tokens(report.h1_adjoint)},
        {"term": "H2(Z)", "elements": join_tokens(report.h2_center)},
        {"term": "H1(Z) -> H1(G)", "elements": join_tokens(f"{k}->{v}" for k, v in report.center_to_group.items())},
        {"term": "H1(G) -> H1(G_ad)", "elements": join_tokens(f"{k}->{v}" for k, v in report.group_to_adjoint.items())},
        {"term": "H1(G_ad) -> H2(Z)", "elements": join_tokens(f"{k}->{v}" for k, v in report.adjoint_to_h2.items())},
        {"term": "exact", "elements": str(report.exactness_ok and report.lifts_ok)},
    ]
    records += [{"term": "note", "elements": note} for note in report.notes]
    print(render(report, records, config.output_format))
    return EXIT_OK if report.exactness_ok and report.lifts_ok else EXIT_FAILED


def _curve_from_args(tokens: List[str]):
    if len(tokens) == 1:
        return parse_curve(tokens[0])
    if len(tokens) == 3:
        try:
            return make_curve(int(tokens[0]), tokens[1], int(tokens[2]))
        except ValueError:
            pass
    raise UsageError(f"A curve is given as 'g kind r' or 'g,kind,r', got {' '.join(tokens)}.")


def cmd_curve(args, config: CliConfig) -> int:
    curve = _curve_from_args(args.curve)
    data = quotient_data(curve)
    records = [{
        "curve": curve.label,
        "X0 genus": data.genus,
        "boundary": join_tokens(str(b) for b in data.boundaries),
        "chi(X0)": data.euler_characteristic,
        "chi(X)": data.doubled_euler_characteristic,
    }]
    print(render(data, records, config.output_format))
    return EXIT_OK


def cmd_types(args, config: CliConfig) -> int:
    G = parse_group(args.group)
    curve = parse_curve(args.curve)
    c = parse_central(G, args.c)
    types = []
    for central in _central_classes(G, c):
        types += enumerate_types(G, curve, central, config.degree_window)
    records = [{
        "c": t.c.label.value,
        "alpha": join_tokens(alpha.label.token for alpha in t.alphas),
        "beta": join_tokens(t.beta_labels()),
        "degree": t.degree,
    } for t in types]
    print(render(types, records, config.output_format))
    return EXIT_OK


def cmd_census(args, config: CliConfig) -> int:
    G = parse_group(args.group)
    curve_text = args.curve_flag or args.curve
    degree = args.degree_flag if args.degree_flag is not None else args.degree
    if curve_text is None or degree is None:
        raise UsageError("census needs a curve and a degree.")
    curve = parse_curve(curve_text)
    c = parse_central(G, args.c)

    closed = count_components(G, curve, int(degree), c)
    brute = brute_force_census(G, curve, int(degree), c)
    records = [{
        "method": result.method,
        "count": result.count,
        "breakdown": join_tokens(f"{name}:{n}" for name, n in result.breakdown),
        "lower bound": result.is_lower_bound,
        "exact (coprime)": result.exact_when_coprime,
        "g > 2": result.hypotheses_hold,
        "printed formula": "" if result.printed_formula_count is None else result.printed_formula_count,
    } for result in (closed, brute)]
    print(render([closed, brute], records, config.output_format))
    if closed.count != brute.count:
        logger.error(f"Census mismatch for {G.name} on {curve}: closed form {closed.count}, brute force {brute.count}")
        return EXIT_FAILED
    return EXIT_OK


def cmd_verify(args, config: CliConfig) -> int:
    names = args.suite or list(suite_registry(args.samples, config.seed, config.tolerance))
    unknown = [name for name in names if name not in suite_registry(args.samples, config.seed, config.tolerance)]
    if unknown:
        raise UsageError(f"Unknown suite(s): {', '.join(unknown)}.")

    results = asyncio.run(run_suites(names, args.samples, config.seed, config.tolerance))
    records = [{
        "suite": result.name,
        "checks": result.checks,
        "status": "PASS" if result.passed else "FAIL",
        "seconds": result.seconds,
    } for result in results]
    print(render(results, records, config.output_format))
    for result in results:
        for failure in result.failures:
            logger.error(f"{result.name}: {failure}")
    return EXIT_OK if all(result.passed for result in results) else EXIT_FAILED


def cmd_tables(args, config: CliConfig) -> int:
    report = build_tables()
    if config.output_format == "json":
        print(render(report, [], "json"))
        return EXIT_OK

    point_records = [{
        "group": row.group,
        "H1(Z)": join_tokens(row.h1_center),
        "H1_c(G)": " ".join(f"[{c}] {join_tokens(tokens)}" for c, tokens in row.classes.items()),
        "H1(G_ad)": join_tokens(row.h1_adjoint),
        "H2(Z)": join_tokens(row.h2_center),
    } for row in report.point_rows]
    pi0_records = [{
        "group": e.group, "c": e.c, "class": e.label, "Stab(h)": e.form, "pi0": e.pi0,
    } for e in report.pi0_entries]
    flag_records = [{
        "table": d.table, "group": d.group, "entry": d.column,
        "printed": join_tokens(d.printed), "computed": join_tokens(d.computed), "note": d.note,
    } for d in report.discrepancies]

    sections = [("Real and pseudo-real structures over a point", point_records),
                ("Components of Stab(h)", pi0_records),
                ("Discrepancies with the printed tables", flag_records)]
    for title, records in sections:
        if config.output_format == "table":
            print(f"== {title} ==")
        print(render(None, records, config.output_format))
        print()
    return EXIT_OK


def cmd_twist(args, config: CliConfig) -> int:
    G = parse_group(args.group)
    k = _find_class(G, args.k, None)
    bijection = inner_twist(G, k.canonical, parse_central(G, args.c), samples=args.samples,
                            seed=config.seed, tol=config.tolerance)
    records = [{
        "source": pair.source.token,
        "target": pair.target.token,
        "c'": bijection.source_class.label.value,
        "c' c^-1": bijection.target_class.label.value,
    } for pair in bijection.pairs]
    print(render(bijection, records, config.output_format))
    return EXIT_OK if bijection.passed else EXIT_FAILED


# --- Parser ---

def _add_global_flags(parser: argparse.ArgumentParser, suppress: bool):
    def default(value):
        return argparse.SUPPRESS if suppress else value
    parser.add_argument("--format", dest="output_format", choices=OUTPUT_FORMATS, default=default(DEFAULT_OUTPUT_FORMAT),
                        help="Output format")
    parser.add_argument("--tol", type=float, default=default(DEFAULT_TOLERANCE), help="Relative tolerance")
    parser.add_argument("--seed", type=int, default=default(None), help="Seed (overrides REAL_BUNDLE_SEED)")
    parser.add_argument("--degrees", default=default(None), help="Degree window a..b")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="real-bundles",
                                     description="Real and pseudo-real principal bundles over real curves")
    _add_global_flags(parser, suppress=False)
    commands = parser.add_subparsers(dest="command", required=True)

    def command(name, handler, help_text):
        sub = commands.add_parser(name, help=help_text)
        _add_global_flags(sub, suppress=True)
        sub.set_defaults(handler=handler)
        return sub

    sub = command("point-classes", cmd_point_classes, "Classes of H^1_c(Z/2, G)")
    sub.add_argument("group", help="e.g. gl3-compact, so6-conj, cstar-conj")
    sub.add_argument("--c", help="Class of H^2(Z/2, Z): Trivial, MinusOne, PrimitiveRoot")

    sub = command("pi0", cmd_pi0, "Stabilizer real form and its components")
    sub.add_argument("group")
    sub.add_argument("label", help="Class label, e.g. sig2,1  +1  J  J-  diag2  isig1,1  psig3,1")
    sub.add_argument("--c")

    sub = command("sequence", cmd_sequence, "H^1(Z) -> H^1(G) -> H^1(G_ad) -> H^2(Z)")
    sub.add_argument("group")

    sub = command("curve", cmd_curve, "Quotient surface data of a real curve")
    sub.add_argument("curve", nargs="+", help="g kind r, or g,kind,r")

    sub = command("types", cmd_types, "Topological types of (pseudo-)real bundles")
    sub.add_argument("group")
    sub.add_argument("curve", help="g,kind,r")
    sub.add_argument("--c")

    sub = command("census", cmd_census, "Lower bound for components of the real locus")
    sub.add_argument("group")
    sub.add_argument("curve", nargs="?", help="g,kind,r")
    sub.add_argument("degree", nargs="?", type=int)
    sub.add_argument("--curve", dest="curve_flag")
    sub.add_argument("--degree", dest="degree_flag", type=int)
    sub.add_argument("--c")

    sub = command("verify", cmd_verify, "Run the verification suites")
    sub.add_argument("--samples", type=int, default=DEFAULT_VERIFY_SAMPLES, help="Orbit samples per class")
    sub.add_argument("--suite", action="append", help="Run only this suite (repeatable)")

    command("tables", cmd_tables, "Both reference tables with discrepancy flags")

    sub = command("twist", cmd_twist, "Inner-twist bijection of pseudo-real classes")
    sub.add_argument("group")
    sub.add_argument("--k", required=True, help="Class label of the twisting element")
    sub.add_argument("--c", help="Source class c' (default: the class of k)")
    sub.add_argument("--samples", type=int, default=5)
    return parser


def make_config(args) -> CliConfig:
    window = parse_degree_window(args.degrees) if args.degrees else DEFAULT_DEGREE_WINDOW
    return CliConfig(
        tolerance=args.tol,
        seed=resolve_seed(args.seed),
        output_format=args.output_format,
        degree_window=window,
    )


def run(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE

    try:
        config = make_config(args)
        return args.handler(args, config)
    except UsageError as e:
        logger.error(e.message)
        return EXIT_USAGE
    except BundleEngineError as e:
        logger.error(f"{e.code}: {e.message}")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(run())
