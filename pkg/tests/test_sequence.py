import unittest
import sys
import os
from dataclasses import replace

import numpy as np

# Ensure project root is in path
sys.path.append(os.getcwd())

from groups.group_model import center_real_classes, parse_group
from cohomology.labels import standard_j
from cohomology.point_cohomology import enumerate_classes
from cohomology.sequence import (
    TwistedStructure, inner_twist, obstruction, project_adjoint, scalar_token, verify_exact_sequence,
)
from utils.exceptions import NoAdjointModel, NotATwist


class TestExactSequence(unittest.TestCase):
    def test_gl_odd_conjugation(self):
        report = verify_exact_sequence(parse_group("gl3-conj"))
        self.assertEqual(report.center_h1, ["+1"])
        self.assertEqual(report.h1_group, ["+1"])
        self.assertEqual(report.h1_adjoint, ["+1"])
        self.assertEqual(report.h2_center, ["Trivial", "MinusOne"])
        self.assertTrue(report.exactness_ok)
        self.assertTrue(report.lifts_ok)

    def test_gl_even_conjugation(self):
        """The quaternionic class of PGL(2n) is obstructed by -1."""
        report = verify_exact_sequence(parse_group("gl2-conj"))
        self.assertEqual(report.h1_adjoint, ["+1", "J"])
        self.assertEqual(report.adjoint_to_h2, {"+1": "Trivial", "J": "MinusOne"})
        self.assertTrue(report.exactness_ok)
        self.assertTrue(report.lifts_ok)

    def test_gl_compact_fibers(self):
        """+1 and -1 of the center both land in the base point of PGL."""
        report = verify_exact_sequence(parse_group("gl2-compact"))
        self.assertEqual(report.center_to_group, {"+1": "sig2,0", "-1": "sig0,2"})
        self.assertEqual(report.group_to_adjoint["sig0,2"], "sig2,0")
        self.assertTrue(report.exactness_ok)

    def test_sl_compact_rows(self):
        for name in ("sl3-compact", "sl4-compact", "sl6-compact"):
            report = verify_exact_sequence(parse_group(name))
            self.assertTrue(report.exactness_ok, name)
            self.assertTrue(report.lifts_ok, name)

    def test_obstruction_of_the_primitive_root(self):
        G = parse_group("sl4-compact")
        adjoint = parse_group("pgl4-compact")
        odd = next(cls for cls in enumerate_classes(adjoint, center_real_classes(adjoint)[0]) if cls.label.q % 2 == 1)
        self.assertEqual(obstruction(G, odd).label.value, "PrimitiveRoot")

    def test_projection_of_a_group_class(self):
        G = parse_group("gl3-compact")
        cls = enumerate_classes(G, center_real_classes(G)[0])[2]
        self.assertEqual(project_adjoint(G, cls).label.token, "sig2,1")

    def test_orthogonal_groups_have_no_adjoint_model(self):
        with self.assertRaises(NoAdjointModel):
            verify_exact_sequence(parse_group("so4-conj"))

    def test_scalar_tokens(self):
        self.assertEqual(scalar_token(1.0), "+1")
        self.assertEqual(scalar_token(-1.0 + 0j), "-1")


class TestInnerTwist(unittest.TestCase):
    def test_twist_by_j_seed_5(self):
        """Twisting GL(2) by J moves the quaternionic class onto the real one."""
        G = parse_group("gl2-conj")
        bijection = inner_twist(G, standard_j(2), samples=3, seed=5)
        self.assertEqual(bijection.twist_class.label.value, "MinusOne")
        self.assertEqual(bijection.target_class.label.value, "Trivial")
        self.assertEqual(len(bijection.pairs), 1)
        self.assertTrue(bijection.passed)

    def test_twisted_canonical_is_a_twisted_cocycle(self):
        G = parse_group("gl4-conj")
        twisted = TwistedStructure(G, standard_j(4))
        j_class = enumerate_classes(G, center_real_classes(G)[1])[0]
        image = twisted.canonical(j_class)
        self.assertLess(np.linalg.norm(image - np.eye(4)), 1e-12)
        self.assertTrue(twisted.is_cocycle(image, center_real_classes(G)[0]))

    def test_trivial_twist_is_the_identity_map(self):
        G = parse_group("gl3-compact")
        bijection = inner_twist(G, np.eye(3), samples=2, seed=9)
        self.assertEqual([p.source for p in bijection.pairs], [p.target for p in bijection.pairs])
        self.assertTrue(bijection.passed)

    def test_gl4_compact_diagonal_twist_seed_13(self):
        """k = diag(1, 1, -1, -1) is a real twist of U(4): five classes on each side."""
        G = parse_group("gl4-compact")
        bijection = inner_twist(G, np.diag([1.0, 1.0, -1.0, -1.0]), samples=3, seed=13)
        self.assertEqual(bijection.twist_class.label.value, "Trivial")
        self.assertEqual(bijection.target_class.label.value, "Trivial")
        self.assertEqual(len(bijection.pairs), 5)
        sources = [p.source.token for p in bijection.pairs]
        targets = [p.target.token for p in bijection.pairs]
        self.assertEqual(sorted(sources), sorted(targets))
        self.assertEqual(len(set(targets)), 5)
        self.assertTrue(bijection.cocycles_ok)
        self.assertEqual(bijection.recovered, bijection.sampled)
        self.assertEqual(bijection.sampled, 15)
        self.assertTrue(bijection.passed)

    def test_passed_requires_orbit_recovery(self):
        bijection = inner_twist(parse_group("gl2-conj"), standard_j(2), samples=2, seed=5)
        self.assertTrue(bijection.labels_consistent)
        self.assertFalse(replace(bijection, recovered=bijection.sampled - 1).passed)
        self.assertFalse(replace(bijection, cocycles_ok=False).passed)

    def test_non_twist_is_rejected(self):
        with self.assertRaises(NotATwist):
            inner_twist(parse_group("gl2-conj"), np.array([[1.0, 1.0], [0.0, 1.0]]))
        with self.assertRaises(NotATwist):
            inner_twist(parse_group("sl2-compact"), np.diag([2.0, 1.0]))


if __name__ == '__main__':
    unittest.main()
