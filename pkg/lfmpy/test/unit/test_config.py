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
import threading
import unittest

import numpy as np

from lfmpy.context import BaseContext
from lfmpy.entitybase import array_to_pairs, pair_to_complex, pairs_to_array
from lfmpy.enums import DomainKind, ExitCode
from lfmpy.lfmexceptions import (
    LfmGridSpecError,
    LfmMapFormatError,
    LfmPreconditionError,
    LfmUninitialisedError,
    LfmValueError,
)
from lfmpy.tolerances import Tolerances, resolve
from lfmpy.utils import grid_size, parse_t_grid, parse_z0


class TestTolerances(unittest.TestCase):
    def setUp(self):
        logging.basicConfig(stream=sys.stderr, level=logging.DEBUG)

    def test_defaults_from_config(self):
        tol = Tolerances.from_config()
        self.assertEqual(1e-7, tol.cluster)
        self.assertEqual(1e-8, tol.rank)
        self.assertEqual(64, tol.dw_max_doublings)
        self.assertEqual(10000, tol.samples)
        self.assertEqual(42, tol.seed)
        self.assertEqual(1e-9, tol.check)

    def test_strict_section(self):
        strict = Tolerances.from_config("STRICT")
        self.assertEqual(1e-12, strict.check)
        self.assertEqual(1e-7, strict.cluster)

    def test_replace_and_validation(self):
        tol = Tolerances.from_config().replace(rank=1e-6)
        self.assertEqual(1e-6, tol.rank)
        self.assertEqual(Tolerances.from_config().cluster, tol.cluster)
        with self.assertRaises(LfmValueError):
            Tolerances(rank=-1)
        with self.assertRaises(LfmValueError):
            Tolerances(unknown=1)
        with self.assertRaises(AttributeError):
            tol.rank = 1

    def test_context(self):
        default = Tolerances.current
        custom = Tolerances.from_config().replace(check=1e-3)
        with custom:
            self.assertIs(custom, Tolerances.current)
            self.assertIs(custom, resolve(None))
            self.assertTrue(custom.is_entered)
        self.assertEqual(default, Tolerances.current)
        self.assertFalse(custom.is_entered)

    def test_context_is_thread_local(self):
        seen = []
        with Tolerances.from_config().replace(check=1e-3):
            worker = threading.Thread(target=lambda: seen.append(Tolerances.current.check))
            worker.start()
            worker.join()
        self.assertEqual([1e-9], seen)

    def test_nested_contexts(self):
        outer = Tolerances.from_config().replace(check=1e-3)
        inner = Tolerances.from_config("STRICT")
        with outer:
            with inner:
                self.assertIs(inner, Tolerances.current)
                self.assertFalse(outer.is_entered)
            self.assertIs(outer, Tolerances.current)

    def test_context_without_default(self):
        class Marker(BaseContext):
            pass

        with self.assertRaises(LfmUninitialisedError):
            Marker.current
        marker = Marker()
        with marker:
            self.assertIs(marker, Marker.current)

    def test_explicit_wins(self):
        explicit = Tolerances(check=0.5)
        self.assertIs(explicit, resolve(explicit))


class TestEntities(unittest.TestCase):
    def setUp(self):
        logging.basicConfig(stream=sys.stderr, level=logging.DEBUG)

    def test_pairs(self):
        self.assertEqual([[1.0, 2.0], [0.0, -1.0]], array_to_pairs(np.array([1 + 2j, -1j])))
        np.testing.assert_array_equal([[1 + 2j]], pairs_to_array([[[1, 2]]], (1, 1)))
        self.assertEqual(3 - 1j, pair_to_complex([3, -1]))

    def test_bad_pairs(self):
        for bad in ([1], [1, "2"], [True, 0], [float("nan"), 0], 5):
            with self.assertRaises(LfmMapFormatError):
                pair_to_complex(bad)
        with self.assertRaises(LfmMapFormatError):
            pairs_to_array([[1, 0]], (2,))

    def test_enums(self):
        self.assertEqual("Siegel half space", DomainKind.SiegelHalfSpace.label)
        self.assertEqual(DomainKind.HalfSpace, DomainKind("halfspace"))
        self.assertEqual(3, int(ExitCode.MATH_ERROR))


class TestGrids(unittest.TestCase):
    def setUp(self):
        logging.basicConfig(stream=sys.stderr, level=logging.DEBUG)

    def test_parse(self):
        grid = parse_t_grid("0:50:0.5")
        self.assertEqual(101, len(grid))
        self.assertEqual(0, grid[0])
        self.assertEqual(50, grid[-1])
        self.assertEqual([0.0, 0.1, 0.2, 0.30000000000000004], parse_t_grid("0:0.3:0.1"))
        self.assertEqual(3, grid_size(0, 1, 0.4))

    def test_invalid(self):
        for spec in ("0:0:1", "1:0:0.5", "0:1:0", "0:1:-1", "0:1", "a:1:0.1", "0:inf:1", "0:nan:1"):
            with self.assertRaises(LfmGridSpecError):
                parse_t_grid(spec)

    def test_z0(self):
        np.testing.assert_array_equal([0.1 + 0.2j, -0.3j], parse_z0("0.1,0.2,0,-0.3"))
        for spec in (None, "1,2,3", "a,0,0,0", "0,0,0,nan"):
            with self.assertRaises(LfmPreconditionError):
                parse_z0(spec)


if __name__ == "__main__":
    unittest.main()
