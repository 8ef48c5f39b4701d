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
import logging
import sys
import unittest

import numpy as np
from hypothesis import given, seed, settings
from hypothesis import strategies as st

from lfmpy.domains import (
    cayley,
    cayley_inv,
    contains,
    contains_closed,
    convexity_witness,
    omega,
    omega_inv,
    principal_sqrt,
    sample_ball,
    sample_domain,
    sigma,
    sigma_inv,
)
from lfmpy.enums import DomainKind
from lfmpy.lfmexceptions import LfmBranchCutError, LfmPoleAtPointError, LfmPreconditionError

finite = st.floats(min_value=-3, max_value=3, allow_nan=False, allow_infinity=False)


@st.composite
def siegel_points(draw):
    z2 = complex(draw(finite), draw(finite))
    excess = draw(st.floats(min_value=1e-3, max_value=10))
    return np.array([complex(abs(z2) ** 2 + excess, draw(finite)), z2])


class TestMembership(unittest.TestCase):
    def setUp(self):
        logging.basicConfig(stream=sys.stderr, level=logging.DEBUG)

    def test_examples(self):
        self.assertTrue(contains(DomainKind.SiegelHalfSpace, [1, 0]))
        self.assertFalse(contains(DomainKind.SiegelHalfSpace, [1, 1]))
        self.assertTrue(contains(DomainKind.UnitBall, [1 / 3, 2 / 3]))
        self.assertFalse(contains(DomainKind.UnitBall, [1, 0]))
        self.assertTrue(contains(DomainKind.HalfSpace, [0.1j + 1e-9, 100]))
        self.assertTrue(contains(DomainKind.WholeSpace, [-5, 5j]))

    def test_closed_membership(self):
        self.assertTrue(contains_closed(DomainKind.UnitBall, [1, 0]))
        self.assertTrue(contains_closed(DomainKind.SiegelHalfSpace, [1, 1]))
        self.assertFalse(contains_closed(DomainKind.SiegelHalfSpace, [0.9, 1]))

    def test_batches(self):
        result = contains(DomainKind.UnitBall, [[0, 0], [1, 1]])
        self.assertEqual([True, False], result.tolist())

    def test_kind_by_name(self):
        self.assertTrue(contains("siegelhalfspace", [1, 0]))


class TestConvexity(unittest.TestCase):
    def setUp(self):
        logging.basicConfig(stream=sys.stderr, level=logging.DEBUG)

    def test_examples(self):
        self.assertTrue(convexity_witness(DomainKind.HalfSpace, [1, 0], [2, 5j], 0.5))
        for t in np.linspace(0, 1, 11):
            self.assertTrue(convexity_witness(DomainKind.SiegelHalfSpace, [2, 1], [5, -2], t))

    def test_preconditions(self):
        with self.assertRaises(LfmPreconditionError):
            convexity_witness(DomainKind.UnitBall, [0, 0], [0.1, 0], 0.5)
        with self.assertRaises(LfmPreconditionError):
            convexity_witness(DomainKind.SiegelHalfSpace, [2, 1], [5, -2], 1.5)
        with self.assertRaises(LfmPreconditionError):
            convexity_witness(DomainKind.SiegelHalfSpace, [1, 1], [5, -2], 0.5)

    def test_sampled_pairs(self):
        rng = np.random.default_rng(0)
        for kind in (DomainKind.HalfSpace, DomainKind.SiegelHalfSpace):
            u = sample_domain(kind, 10000, 1)
            w = sample_domain(kind, 10000, 2)
            t = rng.random(10000)[:, None]
            self.assertTrue(np.all(contains(kind, t * u + (1 - t) * w)))
            for i in range(0, 10000, 50):
                self.assertTrue(convexity_witness(kind, u[i], w[i], float(t[i, 0])))

    @seed(1)
    @settings(max_examples=300, deadline=None)
    @given(siegel_points(), siegel_points(), st.floats(min_value=0, max_value=1))
    def test_siegel_is_convex(self, u, w, t):
        self.assertTrue(convexity_witness(DomainKind.SiegelHalfSpace, u, w, t))


class TestCayley(unittest.TestCase):
    def setUp(self):
        logging.basicConfig(stream=sys.stderr, level=logging.DEBUG)
        self.ball = sample_ball(10000, 42)

    def test_values(self):
        np.testing.assert_array_equal([1, 0], cayley([0, 0]))
        np.testing.assert_allclose([-1 / 3, 2], cayley_inv([0.5, 1.5]))

    def test_round_trips(self):
        np.testing.assert_allclose(self.ball, cayley_inv(cayley(self.ball)), rtol=0, atol=1e-12)
        siegel = sample_domain(DomainKind.SiegelHalfSpace, 10000, 7)
        np.testing.assert_allclose(siegel, cayley(cayley_inv(siegel)), rtol=1e-12, atol=1e-12)

    def test_maps_ball_onto_siegel(self):
        self.assertTrue(np.all(contains(DomainKind.SiegelHalfSpace, cayley(self.ball))))
        siegel = sample_domain(DomainKind.SiegelHalfSpace, 10000, 7)
        self.assertTrue(np.all(contains(DomainKind.UnitBall, cayley_inv(siegel))))

    def test_poles(self):
        with self.assertRaises(LfmPoleAtPointError):
            cayley([1, 0.5])
        with self.assertRaises(LfmPoleAtPointError):
            cayley_inv([-1, 0])


class TestSquareRoots(unittest.TestCase):
    def setUp(self):
        logging.basicConfig(stream=sys.stderr, level=logging.DEBUG)

    def test_principal_sqrt(self):
        self.assertEqual(2, principal_sqrt(4))
        self.assertGreaterEqual(principal_sqrt(-4 + 1e-12j).real, 0)
        np.testing.assert_allclose([np.sqrt(2) * (1 + 1j), 3], principal_sqrt(np.array([4j, 9])))
        with self.assertRaises(LfmBranchCutError) as cm:
            principal_sqrt(-4)
        self.assertEqual(-4, cm.exception.value)

    def test_omega(self):
        np.testing.assert_allclose([2, 1], omega([2, 1]))
        np.testing.assert_allclose([2, 1], omega_inv([2, 1]))
        siegel = sample_domain(DomainKind.SiegelHalfSpace, 10000, 3)
        np.testing.assert_allclose(siegel, omega_inv(omega(siegel)), rtol=1e-12, atol=1e-12)
        self.assertTrue(np.all(contains(DomainKind.SiegelHalfSpace, omega(siegel))))

    def test_omega_branch_cuts(self):
        with self.assertRaises(LfmBranchCutError):
            omega([-1, 0])
        with self.assertRaises(LfmBranchCutError):
            omega([1, -0.5])

    @seed(1)
    @settings(max_examples=300, deadline=None)
    @given(siegel_points())
    def test_omega_preserves_siegel(self, z):
        if z[1].imag == 0 and z[1].real < 0:
            z = np.array([z[0], z[1] + 1e-3j])
        self.assertTrue(contains(DomainKind.SiegelHalfSpace, omega(z)))

    def test_sigma(self):
        np.testing.assert_allclose([np.sqrt(2), 0], sigma([0, 0]))
        np.testing.assert_allclose([0, 0], sigma_inv([np.sqrt(2), 0]), atol=1e-15)
        ball = sample_ball(10000, 5)
        np.testing.assert_allclose(omega(cayley(ball)), sigma(ball), rtol=0, atol=1e-12)
        np.testing.assert_allclose(ball, sigma_inv(sigma(ball)), rtol=0, atol=1e-12)
        np.testing.assert_allclose(cayley_inv(omega_inv(ball)), sigma_inv(ball), rtol=1e-12, atol=1e-12)

    def test_sigma_poles(self):
        with self.assertRaises(LfmPoleAtPointError):
            sigma([1, 0])
        with self.assertRaises(LfmPoleAtPointError):
            sigma_inv([1j * np.sqrt(2), 0])


class TestSampling(unittest.TestCase):
    def setUp(self):
        logging.basicConfig(stream=sys.stderr, level=logging.DEBUG)

    def test_ball_samples(self):
        zs = sample_ball(1000, 42)
        self.assertEqual((1000, 2), zs.shape)
        self.assertTrue(np.all(contains(DomainKind.UnitBall, zs)))
        np.testing.assert_array_equal(zs, sample_ball(1000, 42))
        self.assertFalse(np.array_equal(zs, sample_ball(1000, 43)))
        self.assertEqual((0, 2), sample_ball(0, 1).shape)

    def test_domain_samples(self):
        for kind in DomainKind:
            zs = sample_domain(kind, 500, 1)
            self.assertEqual((500, 2), zs.shape)
            self.assertTrue(np.all(contains(kind, zs)))


if __name__ == "__main__":
    unittest.main()
