import unittest
import sys
import os

import numpy as np

# Ensure project root is in path
sys.path.append(os.getcwd())

from groups.group_model import (
    CentralLabel, Family, FundamentalKind, Structure, adjoint_group, apply_sigma, center_h1,
    center_real_classes, check_membership, classify_central, fundamental_group, make_group,
    parse_group, pgl_equal, random_group_element,
)
from groups.lie_algebra import adjoint_action
from utils.exceptions import NotInGroup, Singular, UnsupportedCombination
from utils.matrix_kernel import relative_error


def labels(G):
    return [c.label for c in center_real_classes(G)]


class TestGroupSpec(unittest.TestCase):
    def test_parse_group_names(self):
        """Group names round-trip through parse_group."""
        for name in ("gl3-compact", "so6-conj", "cstar-conj", "sl4-compact", "pgl2-conj", "so6-conj-outer"):
            self.assertEqual(parse_group(name).name, name)
        self.assertTrue(parse_group("so6-conj-outer").outer_twist)

    def test_unsupported_combinations(self):
        """SL with conjugation, SO with the compact structure and odd outer twists are rejected."""
        for name in ("sl3-conj", "so4-compact", "so5-conj-outer", "gl3-sideways", "xy3-conj"):
            with self.assertRaises(UnsupportedCombination):
                parse_group(name)

    def test_lie_dimensions(self):
        self.assertEqual(make_group(Family.GL, 3, Structure.CONJUGATION).lie_dimension, 9)
        self.assertEqual(make_group(Family.SL, 3, Structure.COMPACT_TYPE).lie_dimension, 8)
        self.assertEqual(make_group(Family.SO, 5, Structure.CONJUGATION).lie_dimension, 10)
        self.assertEqual(make_group("cstar", 1, "compact").lie_dimension, 1)


class TestMembershipAndInvolution(unittest.TestCase):
    def test_sl_determinant_check(self):
        G = parse_group("sl2-compact")
        with self.assertRaises(NotInGroup):
            check_membership(G, np.diag([2.0, 1.0]))
        check_membership(G, np.diag([2.0, 0.5]))

    def test_so_orthogonality_check(self):
        G = parse_group("so3-conj")
        with self.assertRaises(NotInGroup):
            check_membership(G, np.diag([-1.0, 1.0, 1.0]))
        with self.assertRaises(Singular):
            check_membership(G, np.zeros((3, 3)))

    def test_sigma_is_an_involution_seed_11(self):
        """sigma(sigma(g)) = g for every family."""
        rng = np.random.default_rng(11)
        for name in ("gl3-conj", "gl3-compact", "sl4-compact", "so4-conj", "so6-conj-outer"):
            G = parse_group(name)
            g = random_group_element(G, rng)
            twice = apply_sigma(G, apply_sigma(G, g))
            self.assertLess(relative_error(twice, g), 1e-10, name)

    def test_random_elements_are_in_the_group_seed_3(self):
        rng = np.random.default_rng(3)
        for name in ("sl3-compact", "so5-conj"):
            G = parse_group(name)
            check_membership(G, random_group_element(G, rng), 1e-8)

    def test_adjoint_action_composes_seed_13(self):
        """Ad(g h) = Ad(g) Ad(h), with and without a precomputed inverse."""
        rng = np.random.default_rng(13)
        G = parse_group("gl3-conj")
        g, h = random_group_element(G, rng), random_group_element(G, rng)
        X = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
        composed = adjoint_action(g, adjoint_action(h, X))
        self.assertLess(relative_error(adjoint_action(g @ h, X), composed), 1e-10)
        self.assertLess(relative_error(adjoint_action(g, X, np.linalg.inv(g)), adjoint_action(g, X)), 1e-12)


class TestCenter(unittest.TestCase):
    def test_h2_of_the_center(self):
        """H^2(Z/2, Z) for the modelled families."""
        self.assertEqual(labels(parse_group("cstar-conj")), [CentralLabel.TRIVIAL, CentralLabel.MINUS_ONE])
        self.assertEqual(labels(parse_group("cstar-compact")), [CentralLabel.TRIVIAL])
        self.assertEqual(labels(parse_group("gl4-conj")), [CentralLabel.TRIVIAL, CentralLabel.MINUS_ONE])
        self.assertEqual(labels(parse_group("gl4-compact")), [CentralLabel.TRIVIAL])
        self.assertEqual(labels(parse_group("sl3-compact")), [CentralLabel.TRIVIAL])
        self.assertEqual(labels(parse_group("sl6-compact")), [CentralLabel.TRIVIAL, CentralLabel.MINUS_ONE])
        self.assertEqual(labels(parse_group("so6-conj")), [CentralLabel.TRIVIAL, CentralLabel.MINUS_ONE])
        self.assertEqual(labels(parse_group("so5-conj")), [CentralLabel.TRIVIAL])
        self.assertEqual(labels(parse_group("pgl4-compact")), [CentralLabel.TRIVIAL])

    def test_sl4k_has_no_order_two_class(self):
        """In SL(4), -1 = sigma(a) a for a = i, so the nontrivial class is a primitive root."""
        classes = center_real_classes(parse_group("sl4-compact"))
        self.assertEqual([c.label for c in classes], [CentralLabel.TRIVIAL, CentralLabel.PRIMITIVE_ROOT])
        self.assertAlmostEqual(classes[1].scalar, np.exp(2j * np.pi / 4))

    def test_classify_central(self):
        G = parse_group("gl2-conj")
        self.assertEqual(classify_central(G, -3.0).label, CentralLabel.MINUS_ONE)
        self.assertEqual(classify_central(G, 0.25).label, CentralLabel.TRIVIAL)
        with self.assertRaises(NotInGroup):
            classify_central(G, 1j)

    def test_h1_of_the_center(self):
        self.assertEqual(center_h1(parse_group("cstar-compact")), [1.0, -1.0])
        self.assertEqual(center_h1(parse_group("cstar-conj")), [1.0])
        self.assertEqual(len(center_h1(parse_group("sl4-compact"))), 2)
        self.assertEqual(len(center_h1(parse_group("sl3-compact"))), 1)
        self.assertEqual(len(center_h1(parse_group("so4-conj"))), 2)


class TestFundamentalAndAdjoint(unittest.TestCase):
    def test_fundamental_groups(self):
        self.assertEqual(fundamental_group(parse_group("gl3-conj")).kind, FundamentalKind.Z)
        self.assertEqual(fundamental_group(parse_group("sl3-compact")).kind, FundamentalKind.TRIVIAL)
        so5 = fundamental_group(parse_group("so5-conj"))
        self.assertEqual((so5.kind, so5.k), (FundamentalKind.ZMODK, 2))
        self.assertEqual(fundamental_group(parse_group("pgl3-conj")).degrees((-4, 4)), [0, 1, 2])
        self.assertEqual(fundamental_group(parse_group("gl1-conj")).degrees((-1, 1)), [-1, 0, 1])

    def test_adjoint_groups(self):
        self.assertEqual(adjoint_group(parse_group("gl3-compact")).name, "pgl3-compact")
        self.assertEqual(adjoint_group(parse_group("cstar-conj")).name, "pgl1-conj")
        self.assertIsNone(adjoint_group(parse_group("so4-conj")))

    def test_pgl_equality_modulo_scalars(self):
        A = np.array([[1.0, 2.0], [0.5, 3.0]])
        self.assertTrue(pgl_equal(A, (2 - 1j) * A))
        self.assertFalse(pgl_equal(A, A.T))


if __name__ == '__main__':
    unittest.main()
