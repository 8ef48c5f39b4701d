"""
Copyright © 2024 lfmpy contributors.
Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

  http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing,
software distributed under the License is distributed on an
"AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
KIND, either express or implied.  See the License for the
specific language governing permissions and limitations
under the License.

"""
import json
import logging
import os
import sys
import unittest

import numpy as np
from testfixtures import TempDirectory

from lfmpy.enums import FixedPointLocation
from lfmpy.examples.load_sample_data import sample_map, sample_names, sample_path
from lfmpy.lfm import (
    AssociatedMatrix,
    LinearFractionalMap,
    canonical_form,
    compose,
    dump_map,
    eval_,
    eval_many,
    fixed_points,
    from_matrix,
    inverse,
    iterate,
    load_map,
    projective_distance,
    self_map_check,
    to_matrix,
)
from lfmpy.lfmexceptions import (
    LfmDegenerateAllFixedError,
    LfmDegenerateCompositionError,
    LfmMapFormatError,
    LfmPoleAtPointError,
    LfmPreconditionError,
    LfmSingularMatrixError,
)
from lfmpy.test.maps import EXAMPLE1, HYPERBOLIC, contraction, parabolic

CAYLEY = np.array([[1, 0, 1], [0, 1, 0], [-1, 0, 1]], dtype=complex)


def near_identity_maps(count, seed):
    rng = np.random.default_rng(seed)
    for _ in range(count):
        g = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
        yield from_matrix(np.eye(3) + 0.1 * g)


class TestAssociatedMatrix(unittest.TestCase):
    def setUp(self):
        logging.basicConfig(stream=sys.stderr, level=logging.DEBUG)

    def test_canonical_divides_by_d(self):
        np.testing.assert_array_equal(EXAMPLE1 / 3, canonical_form(EXAMPLE1))

    def test_canonical_without_d(self):
        m = np.array([[0, 1j, 0], [1, 0, 0], [0, 0, 0]])
        c = canonical_form(m)
        self.assertAlmostEqual(1, np.linalg.norm(c))
        self.assertEqual(0, c[0, 1].imag)
        self.assertGreater(c[0, 1].real, 0)

    def test_scaling_is_invisible(self):
        self.assertEqual(AssociatedMatrix(EXAMPLE1), AssociatedMatrix((3 - 4j) * EXAMPLE1))
        np.testing.assert_array_equal(from_matrix(EXAMPLE1).matrix.m, from_matrix(2 * EXAMPLE1).matrix.m)
        scaled = from_matrix((3 - 4j) * EXAMPLE1)
        np.testing.assert_allclose(from_matrix(EXAMPLE1).matrix.m, scaled.matrix.m, atol=1e-14)

    def test_distinct_classes(self):
        self.assertNotEqual(AssociatedMatrix(EXAMPLE1), AssociatedMatrix(HYPERBOLIC))
        self.assertGreater(projective_distance(EXAMPLE1, np.eye(3)), 1)

    def test_to_list(self):
        self.assertEqual([[1.0, 0.0], [0.0, 0.0], [0.0, 0.0]], AssociatedMatrix(np.eye(3)).to_list()[0])


class TestLinearFractionalMap(unittest.TestCase):
    def setUp(self):
        logging.basicConfig(stream=sys.stderr, level=logging.DEBUG)
        self.example1 = from_matrix(EXAMPLE1)

    def test_evaluation(self):
        np.testing.assert_allclose([1 / 3, 2 / 3], eval_(self.example1, [0, 0]), atol=1e-15)
        np.testing.assert_allclose([1, 0], eval_(self.example1, [1, 0]), atol=1e-15)
        np.testing.assert_allclose([0.3 + 0.1j, -0.2j], eval_(LinearFractionalMap.identity(), [0.3 + 0.1j, -0.2j]))

    def test_call_matches_eval(self):
        z = np.array([0.1 - 0.2j, 0.3j])
        np.testing.assert_array_equal(eval_(self.example1, z), self.example1(z))

    def test_pole(self):
        with self.assertRaises(LfmPoleAtPointError) as cm:
            eval_(self.example1, [3, 0])
        np.testing.assert_array_equal([3, 0], cm.exception.point)

    def test_eval_many_marks_poles(self):
        images = eval_many(self.example1, [[0, 0], [3, 0]])
        self.assertTrue(np.all(np.isfinite(images[0])))
        self.assertTrue(np.all(np.isnan(images[1])))

    def test_matrix_round_trip(self):
        self.assertEqual(AssociatedMatrix(EXAMPLE1), to_matrix(self.example1))
        again = from_matrix(to_matrix(self.example1))
        np.testing.assert_allclose(self.example1.A, again.A)
        np.testing.assert_allclose(self.example1.C, again.C)

    def test_singular_matrix(self):
        with self.assertRaises(LfmSingularMatrixError):
            from_matrix(np.diag([2, 0, 1]))

    def test_inner_product_conjugates_c(self):
        phi = LinearFractionalMap(np.eye(2), [0, 0], [1j, 0], 2)
        np.testing.assert_allclose([1 / (2 - 1j), 0], eval_(phi, [1, 0]))

    def test_compose_matches_pointwise(self):
        maps = list(near_identity_maps(20, 3))
        zs = 0.5 * np.random.default_rng(4).uniform(-0.7, 0.7, (50, 2))
        for f, g in zip(maps[::2], maps[1::2]):
            composed = eval_(compose(f, g), zs)
            np.testing.assert_allclose(eval_(f, eval_(g, zs)), composed, rtol=1e-9, atol=1e-10)

    def test_identity_is_neutral(self):
        identity = LinearFractionalMap.identity()
        self.assertEqual(self.example1.matrix, compose(self.example1, identity).matrix)
        self.assertEqual(self.example1.matrix, compose(identity, self.example1).matrix)

    def test_inverse(self):
        for phi in [self.example1, from_matrix(HYPERBOLIC)] + list(near_identity_maps(5, 8)):
            self.assertEqual(LinearFractionalMap.identity().matrix, compose(phi, inverse(phi)).matrix)

    def test_cayley_inverse(self):
        expected = AssociatedMatrix([[1, 0, -1], [0, 2, 0], [1, 0, 1]])
        self.assertEqual(expected, inverse(from_matrix(CAYLEY)).matrix)

    def test_degenerate_composition(self):
        degenerate = LinearFractionalMap(np.diag([2, 0]), [0, 0], [0, 0], 1)
        with self.assertRaises(LfmDegenerateCompositionError):
            compose(degenerate, self.example1)

    def test_iterates_follow_matrix_powers(self):
        for m in (EXAMPLE1, contraction(0.5, 1 / 3), parabolic(1)):
            phi = from_matrix(m)
            for n in range(11):
                self.assertLess(projective_distance(np.linalg.matrix_power(m, n), iterate(phi, n).matrix.m), 1e-10)


class TestFixedPoints(unittest.TestCase):
    def setUp(self):
        logging.basicConfig(stream=sys.stderr, level=logging.DEBUG)

    def test_example1(self):
        points = fixed_points(from_matrix(EXAMPLE1))
        self.assertEqual(1, len(points))
        self.assertEqual(FixedPointLocation.Boundary, points[0].classification)
        self.assertEqual(3, points[0].block_size)
        np.testing.assert_allclose([1, 0], points[0].location, atol=1e-9)

    def test_identity_fixes_everything(self):
        with self.assertRaises(LfmDegenerateAllFixedError):
            fixed_points(LinearFractionalMap.identity())

    def test_diagonal_contraction(self):
        points = fixed_points(from_matrix(contraction(0.5, 1 / 3)))
        self.assertEqual(
            [FixedPointLocation.Interior, FixedPointLocation.Infinity, FixedPointLocation.Infinity],
            [p.classification for p in points],
        )
        np.testing.assert_allclose([0, 0], points[0].location, atol=1e-15)
        self.assertIsNone(points[1].location)

    def test_hyperbolic(self):
        points = fixed_points(from_matrix(HYPERBOLIC))
        self.assertEqual([4, 2, 1], [round(p.eigenvalue.real, 9) for p in points])
        np.testing.assert_allclose([1, 0], points[0].location, atol=1e-12)
        np.testing.assert_allclose([-1, 0], points[1].location, atol=1e-12)
        self.assertTrue(points[2].is_at_infinity)

    def test_residuals(self):
        for m in (EXAMPLE1, HYPERBOLIC, parabolic(1), parabolic(2)):
            phi = from_matrix(m)
            for point in fixed_points(phi):
                self.assertLess(point.residual(phi), 1e-9)

    def test_to_dict(self):
        data = fixed_points(from_matrix(contraction(0.5, 1 / 3)))[0].to_dict()
        self.assertEqual("Interior", data["classification"])
        np.testing.assert_allclose([[0, 0], [0, 0]], data["location"], atol=1e-15)


class TestSelfMapCheck(unittest.TestCase):
    def setUp(self):
        logging.basicConfig(stream=sys.stderr, level=logging.DEBUG)

    def test_self_maps_pass(self):
        for m in (EXAMPLE1, np.eye(3), HYPERBOLIC, parabolic(2), contraction(0.5, 1 / 3)):
            report = self_map_check(from_matrix(m), 10000, 42)
            self.assertTrue(report.passed)
            self.assertLess(report.worst_margin, 1)
            self.assertEqual(10000, report.n_samples)

    def test_dilation_fails(self):
        dilation = LinearFractionalMap(np.diag([2, 0]), [0, 0], [0, 0], 1)
        report = self_map_check(dilation, 1000, 1)
        self.assertFalse(report.passed)
        self.assertGreater(report.violations, 0)
        self.assertGreater(report.worst_margin, 1)

    def test_deterministic(self):
        phi = from_matrix(parabolic(1))
        self.assertEqual(self_map_check(phi, 500, 9), self_map_check(phi, 500, 9))

    def test_needs_samples(self):
        phi = from_matrix(EXAMPLE1)
        for n in (0, -5):
            with self.assertRaises(LfmPreconditionError):
                self_map_check(phi, n, 1)


class TestMapFiles(unittest.TestCase):
    def setUp(self):
        logging.basicConfig(stream=sys.stderr, level=logging.DEBUG)

    def test_dump_and_load(self):
        phi = from_matrix(EXAMPLE1)
        with TempDirectory() as d:
            path = os.path.join(d.path, "map.json")
            dump_map(phi, path)
            loaded = load_map(path)
        self.assertEqual(phi.matrix, loaded.matrix)

    def test_load_embedded_map(self):
        with TempDirectory() as d:
            payload = {"t": 0.5, "map": LinearFractionalMap.identity().to_dict()}
            d.write("embed.json", json.dumps(payload), encoding="utf-8")
            loaded = load_map(os.path.join(d.path, "embed.json"))
        self.assertEqual(LinearFractionalMap.identity(), loaded)

    def test_missing_key(self):
        data = LinearFractionalMap.identity().to_dict()
        del data["C"]
        with self.assertRaises(LfmMapFormatError):
            LinearFractionalMap.from_dict(data)

    def test_malformed_pair(self):
        data = LinearFractionalMap.identity().to_dict()
        data["D"] = [1, 0, 0]
        with self.assertRaises(LfmMapFormatError):
            LinearFractionalMap.from_dict(data)

    def test_sample_maps(self):
        self.assertEqual(
            ["contraction", "dilation", "example1", "hyperbolic", "identity", "parabolic"], sample_names()
        )
        self.assertLess(projective_distance(sample_map("example1").matrix.m, EXAMPLE1), 1e-12)
        with self.assertRaises(LfmPreconditionError):
            sample_path("no_such_map")

    def test_invalid_json(self):
        with TempDirectory() as d:
            d.write("broken.json", "{not json", encoding="utf-8")
            with self.assertRaises(LfmMapFormatError):
                load_map(os.path.join(d.path, "broken.json"))


if __name__ == "__main__":
    unittest.main()
