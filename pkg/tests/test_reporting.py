import unittest
import sys
import os
import json

# Ensure project root is in path
sys.path.append(os.getcwd())

from groups.group_model import center_real_classes, parse_group
from cohomology.point_cohomology import enumerate_classes
from cohomology.sequence import verify_exact_sequence
from curves.real_curve import make_curve, quotient_data
from curves.topological_types import enumerate_types
from census.component_census import count_components
from reporting.formatters import decode, encode, from_json, join_tokens, render, to_json
from reporting.tables import build_tables, load_reference_tables, pi0_entries, point_row
from reporting.verification import suite_registry
from utils.exceptions import UsageError


EXPECTED_DISCREPANCIES = {
    ("point", "sl4-compact", "H2(Z)"),
    ("point", "sl4-compact", "H1_c(G) c=MinusOne"),
    ("point", "sl4-compact", "H1_c(G) c=PrimitiveRoot"),
    ("point", "so4-conj", "H1_c(G) c=MinusOne"),
    ("point", "so6-conj", "H1_c(G) c=MinusOne"),
    ("pi0", "gl3-conj", "c=Trivial +1"),
    ("pi0", "gl5-conj", "c=Trivial +1"),
    ("pi0", "so4-conj", "c=MinusOne J-"),
    ("pi0", "so6-conj", "c=MinusOne J-"),
    ("pi0", "sl4-compact", "c=MinusOne isig3,1"),
    ("pi0", "sl4-compact", "c=MinusOne isig1,3"),
    ("pi0", "sl4-compact", "c=PrimitiveRoot psig3,1"),
    ("pi0", "sl4-compact", "c=PrimitiveRoot psig1,3"),
}


class TestReferenceTables(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.report = build_tables()

    def test_discrepancies_are_exactly_the_known_ones(self):
        found = {(d.table, d.group, d.column) for d in self.report.discrepancies}
        self.assertEqual(found, EXPECTED_DISCREPANCIES)

    def test_gl_odd_real_form_has_two_components(self):
        flag = next(d for d in self.report.discrepancies if d.group == "gl3-conj")
        self.assertEqual(flag.printed, ("GL(3,R)", "pi0=1"))
        self.assertEqual(flag.computed, ("GL(3,R)", "pi0=2"))
        self.assertIn("det", flag.note)

    def test_rows_cover_every_printed_group(self):
        groups = [row.group for row in self.report.point_rows]
        self.assertEqual(groups[0], "cstar-compact")
        self.assertIn("so7-conj", groups)
        self.assertEqual(len(groups), len(set(groups)))
        printed = {row.group: row.printed for row in self.report.point_rows}
        self.assertTrue(printed["gl4-conj"])
        self.assertFalse(printed["pgl4-conj"])

    def test_point_row_contents(self):
        row = point_row(parse_group("gl2-conj"))
        self.assertEqual(row.classes, {"Trivial": ("+1",), "MinusOne": ("J",)})
        self.assertEqual(row.h1_adjoint, ("+1", "J"))
        self.assertIsNone(point_row(parse_group("so5-conj")).h1_adjoint)

    def test_pi0_entries(self):
        entries = pi0_entries(parse_group("so5-conj"))
        self.assertEqual([(e.label, e.form, e.pi0_size) for e in entries],
                         [("diag0", "SO(5)", 1), ("diag2", "SO(3,2)", 2), ("diag4", "SO(1,4)", 2)])

    def test_missing_reference_file(self):
        with self.assertLogs("ReferenceTables", level="WARNING"):
            reference = load_reference_tables("/nonexistent/reference_tables.json")
        self.assertEqual(reference, {"point_table": {}, "pi0_table": {}})


class TestJsonPayloads(unittest.TestCase):
    def test_census_round_trip(self):
        result = count_components(parse_group("gl2-compact"), make_curve(3, "I", 2), 0)
        payload = json.loads(to_json(result))
        self.assertEqual(payload["type"], "CensusResult")
        self.assertEqual(payload["count"], 9)
        self.assertEqual(from_json(to_json(result)), result)

    def test_topological_type_round_trip(self):
        G = parse_group("gl2-conj")
        types = enumerate_types(G, make_curve(3, "I", 2), center_real_classes(G)[0], (0, 1))
        self.assertEqual(decode(encode(types)), types)

    def test_class_and_curve_round_trip(self):
        G = parse_group("sl4-compact")
        root = center_real_classes(G)[1]
        cls = enumerate_classes(G, root)[0]
        decoded = from_json(to_json(cls))
        self.assertEqual(decoded, cls)
        self.assertAlmostEqual(decoded.c.scalar, root.scalar)

        data = quotient_data(make_curve(5, "II", 2))
        self.assertEqual(from_json(to_json(data)), data)

    def test_sequence_report_round_trip(self):
        report = verify_exact_sequence(parse_group("gl2-conj"))
        self.assertEqual(from_json(to_json(report)), report)

    def test_unknown_payload_type(self):
        with self.assertRaises(UsageError):
            decode({"type": "Portfolio"})


class TestRendering(unittest.TestCase):
    def test_tsv_and_table(self):
        records = [{"group": "gl2-conj", "count": 5}]
        self.assertEqual(render(None, records, "tsv"), "group\tcount\ngl2-conj\t5")
        self.assertIn("gl2-conj", render(None, records, "table"))
        self.assertEqual(render(None, [], "table"), "(none)")
        with self.assertRaises(UsageError):
            render(None, records, "xml")

    def test_join_tokens(self):
        self.assertEqual(join_tokens(None), "n/a")
        self.assertEqual(join_tokens([]), "{}")
        self.assertEqual(join_tokens(["J", "J-"]), "{J, J-}")


class TestBenchmarkLimits(unittest.TestCase):
    def test_every_suite_has_a_time_limit(self):
        from scripts.benchmark_suites import TIME_LIMITS
        expected = {"tables"} | set(suite_registry(1, 0, 1e-8))
        self.assertEqual(set(TIME_LIMITS), expected)
        self.assertTrue(all(limit > 0 for limit in TIME_LIMITS.values()))


if __name__ == '__main__':
    unittest.main()
