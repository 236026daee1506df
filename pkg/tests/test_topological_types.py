import unittest
import sys
import os

# Ensure project root is in path
sys.path.append(os.getcwd())

from groups.group_model import center_real_classes, parse_group
from cohomology.point_cohomology import enumerate_classes
from curves.real_curve import make_curve
from curves.topological_types import (
    TopologicalType, check_constraints, circle_choices, count_by_degree, enumerate_types,
)
from utils.exceptions import InvalidTopology


def real_type(G, betas, degree):
    c = center_real_classes(G)[0]
    alpha = enumerate_classes(G, c)[0]
    return TopologicalType(c=c, alphas=(alpha,) * len(betas), betas=tuple(betas), degree=degree)


class TestEnumerateTypes(unittest.TestCase):
    def test_real_rank_two_one_circle(self):
        """One real class, two Stiefel-Whitney values, degree matching the value."""
        G = parse_group("gl2-conj")
        types = enumerate_types(G, make_curve(2, "I", 1), center_real_classes(G)[0], (0, 1))
        self.assertEqual(len(types), 2)
        self.assertEqual([(t.betas, t.degree) for t in types], [((0,), 0), ((1,), 1)])
        self.assertEqual(types[1].beta_labels(), ("-det",))

    def test_quaternionic_rank_two(self):
        G = parse_group("gl2-conj")
        types = enumerate_types(G, make_curve(3, "I", 2), center_real_classes(G)[1], (0, 0))
        self.assertEqual(len(types), 1)
        self.assertEqual([a.label.token for a in types[0].alphas], ["J", "J"])

    def test_compact_rank_three_signatures(self):
        G = parse_group("gl3-compact")
        types = enumerate_types(G, make_curve(2, "I", 3), center_real_classes(G)[0], (0, 0))
        self.assertEqual(len(types), 64)

    def test_odd_degrees_vanish_for_compact_type(self):
        G = parse_group("gl2-compact")
        counts = count_by_degree(enumerate_types(G, make_curve(1, "I", 2), center_real_classes(G)[0], (-2, 2)))
        self.assertEqual(counts, {-2: 9, 0: 9, 2: 9})

    def test_type_0_carries_degrees_only(self):
        G = parse_group("gl2-conj")
        types = enumerate_types(G, make_curve(2, "0", 0), center_real_classes(G)[0], (-1, 1))
        self.assertEqual([t.degree for t in types], [0])

    def test_finite_fundamental_group_ignores_the_window(self):
        G = parse_group("sl3-compact")
        types = enumerate_types(G, make_curve(0, "I", 1), center_real_classes(G)[0], (-4, 4))
        self.assertEqual({t.degree for t in types}, {0})
        self.assertEqual(len(types), 2)

    def test_projective_betas_are_unknown(self):
        G = parse_group("pgl2-conj")
        types = enumerate_types(G, make_curve(0, "I", 1), center_real_classes(G)[0])
        self.assertTrue(all(t.betas == (None,) for t in types))
        self.assertEqual(types[0].beta_labels(), ("unknown",))

    def test_sorted_canonically(self):
        G = parse_group("gl2-conj")
        types = enumerate_types(G, make_curve(3, "I", 2), center_real_classes(G)[0], (-2, 2))
        self.assertEqual(types, sorted(types, key=TopologicalType.sort_key))

    def test_empty_window_is_rejected(self):
        G = parse_group("gl2-conj")
        with self.assertRaises(InvalidTopology):
            enumerate_types(G, make_curve(2, "I", 1), center_real_classes(G)[0], (1, 0))


class TestTypeProperties(unittest.TestCase):
    cases = [
        ("gl2-conj", (3, "I", 2)),
        ("gl3-compact", (2, "I", 1)),
        ("cstar-conj", (1, "I", 2)),
        ("so4-conj", (1, "I", 2)),
        ("sl4-compact", (4, "II", 2)),
    ]

    def test_closure(self):
        """Every emitted type passes check_constraints."""
        for name, triple in self.cases:
            G = parse_group(name)
            curve = make_curve(*triple)
            for c in center_real_classes(G):
                for t in enumerate_types(G, curve, c, (-2, 2)):
                    self.assertTrue(check_constraints(G, curve, t), f"{name} {t}")

    def test_window_monotonicity(self):
        for name, triple in self.cases:
            G = parse_group(name)
            curve = make_curve(*triple)
            for c in center_real_classes(G):
                narrow = set(map(str, enumerate_types(G, curve, c, (-1, 1))))
                wide = set(map(str, enumerate_types(G, curve, c, (-3, 3))))
                self.assertTrue(narrow <= wide, name)

    def test_size_matches_choices(self):
        """Without a parity rule the list is the full product of circle choices and degrees."""
        G = parse_group("so4-conj")
        curve = make_curve(1, "I", 2)
        c = center_real_classes(G)[0]
        choices = circle_choices(G, c)
        self.assertEqual(len(choices), 4)
        self.assertEqual(len(enumerate_types(G, curve, c)), len(choices) ** 2 * 2)


class TestCheckConstraints(unittest.TestCase):
    def test_stiefel_whitney_parity(self):
        G = parse_group("gl2-conj")
        curve = make_curve(1, "I", 2)
        self.assertTrue(check_constraints(G, curve, real_type(G, (1, 1), 2)))
        self.assertFalse(check_constraints(G, curve, real_type(G, (1, 0), 2)))

    def test_compact_degree_must_be_even(self):
        G = parse_group("gl3-compact")
        curve = make_curve(1, "I", 2)
        self.assertFalse(check_constraints(G, curve, real_type(G, (0, 0), 3)))
        self.assertTrue(check_constraints(G, curve, real_type(G, (0, 0), 4)))

    def test_wrong_circle_count_and_bad_beta(self):
        G = parse_group("gl2-conj")
        curve = make_curve(1, "I", 2)
        self.assertFalse(check_constraints(G, curve, real_type(G, (0,), 0)))
        self.assertFalse(check_constraints(G, curve, real_type(G, (2, 0), 0)))

    def test_degree_outside_finite_fundamental_group(self):
        G = parse_group("so5-conj")
        curve = make_curve(1, "I", 2)
        self.assertTrue(check_constraints(G, curve, real_type(G, (0, 0), 1)))
        self.assertFalse(check_constraints(G, curve, real_type(G, (0, 0), 2)))


if __name__ == '__main__':
    unittest.main()
