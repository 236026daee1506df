import unittest
import sys
import os

# Ensure project root is in path
sys.path.append(os.getcwd())

from curves.real_curve import (
    CircleTag, CurveKind, euler_characteristic_consistent, make_curve, parse_curve, parse_kind, quotient_data,
)
from utils.exceptions import InvalidTopology


class TestCurveValidation(unittest.TestCase):
    def test_valid_curves(self):
        self.assertEqual(make_curve(2, CurveKind.TYPE_I, 3).label, "2,I,3")
        self.assertEqual(make_curve(3, "0", 0).kind, CurveKind.TYPE_0)
        self.assertEqual(make_curve(5, "II", 2).r, 2)

    def test_invalid_curves(self):
        for g, kind, r in [(2, "I", 2), (2, "I", 4), (3, "0", 1), (3, "II", 0), (3, "II", 4), (-1, "0", 0)]:
            with self.assertRaises(InvalidTopology, msg=f"({g}, {kind}, {r})"):
                make_curve(g, kind, r)

    def test_parse_curve(self):
        curve = parse_curve("3, I, 4")
        self.assertEqual((curve.genus, curve.kind, curve.r), (3, CurveKind.TYPE_I, 4))
        self.assertEqual(parse_curve("4,type0,0").kind, CurveKind.TYPE_0)
        for text in ("3,I", "a,I,2", "3,III,2"):
            with self.assertRaises(InvalidTopology):
                parse_curve(text)

    def test_parse_kind_aliases(self):
        self.assertEqual(parse_kind("type_ii"), CurveKind.TYPE_II)
        self.assertEqual(parse_kind(CurveKind.TYPE_I), CurveKind.TYPE_I)


class TestQuotientData(unittest.TestCase):
    def test_type_i_quotients(self):
        data = quotient_data(make_curve(2, "I", 3))
        self.assertEqual(data.genus, 0)
        self.assertEqual([str(b) for b in data.boundaries], ["gamma1", "gamma2", "gamma3"])

        data = quotient_data(make_curve(3, "I", 4))
        self.assertEqual((data.genus, data.fixed_circles), (0, 4))

    def test_even_type_0_has_one_split_circle(self):
        data = quotient_data(make_curve(4, "0", 0))
        self.assertEqual(data.genus, 2)
        self.assertEqual([b.tag for b in data.boundaries], [CircleTag.SPLIT])

    def test_odd_type_0_has_two_swapped_circles(self):
        """Genus (g - 1) / 2 with two disks removed."""
        data = quotient_data(make_curve(3, "0", 0))
        self.assertEqual(data.genus, 1)
        self.assertEqual([b.tag for b in data.boundaries], [CircleTag.SWAPPED, CircleTag.SWAPPED])

    def test_type_ii_with_odd_g_minus_r(self):
        """(5, II, 2): a single delta circle would give chi = -6, not -8, so X_0 carries two."""
        data = quotient_data(make_curve(5, "II", 2))
        self.assertEqual(data.genus, 1)
        self.assertEqual([str(b) for b in data.boundaries], ["delta1", "delta2", "gamma1", "gamma2"])
        self.assertEqual(data.doubled_euler_characteristic, -8)

    def test_type_ii_with_even_g_minus_r(self):
        data = quotient_data(make_curve(4, "II", 2))
        self.assertEqual(data.genus, 1)
        self.assertEqual([b.tag for b in data.boundaries], [CircleTag.SPLIT, CircleTag.FIXED, CircleTag.FIXED])

    def test_doubling_matches_the_euler_oracle(self):
        """Every triple up to genus 10 is accepted exactly when the Euler characteristic allows it."""
        for g in range(11):
            for kind in CurveKind:
                for r in range(g + 3):
                    expected = euler_characteristic_consistent(g, kind, r)
                    try:
                        curve = make_curve(g, kind, r)
                    except InvalidTopology:
                        self.assertFalse(expected, f"({g}, {kind.value}, {r}) rejected")
                        continue
                    self.assertTrue(expected, f"({g}, {kind.value}, {r}) accepted")
                    self.assertEqual(quotient_data(curve).doubled_euler_characteristic, 2 - 2 * g)


if __name__ == '__main__':
    unittest.main()
