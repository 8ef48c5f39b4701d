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

Shared base types: the string enum base and the ``[re, im]`` JSON codec used
for every complex number that leaves the package.
"""
import math
from enum import Enum
from typing import Any, List, Sequence

import inflection
import numpy as np

from lfmpy.lfmexceptions import LfmMapFormatError


class EnumBase(str, Enum):
    """Base type for subclassing for any enumerations

    Inherits from str so members serialize with json.dumps directly; lookup by
    value is case insensitive.
    """

    @classmethod
    def _missing_(cls, name):
        for member in cls:
            if member.value.lower() == str(name).lower():
                return member

    @property
    def label(self) -> str:
        """Human readable form of the value, e.g. 'Siegel half space'"""
        return inflection.humanize(inflection.underscore(self.value))

    def __str__(self):
        return self.value


def complex_to_pair(value: complex) -> List[float]:
    value = complex(value)
    return [float(value.real), float(value.imag)]


def pair_to_complex(pair: Any) -> complex:
    """Parses a ``[re, im]`` pair

    Raises:
        LfmMapFormatError: when the value is not two finite numbers
    """
    if (
        not isinstance(pair, (list, tuple))
        or len(pair) != 2
        or not all(isinstance(p, (int, float)) and not isinstance(p, bool) for p in pair)
    ):
        raise LfmMapFormatError(f"Expected a [re, im] pair, got {pair!r}")
    if not all(math.isfinite(p) for p in pair):
        raise LfmMapFormatError(f"Non-finite complex component in {pair!r}")
    return complex(pair[0], pair[1])


def array_to_pairs(values: np.ndarray) -> list:
    """Nested lists of ``[re, im]`` pairs with the shape of ``values``"""
    values = np.asarray(values, dtype=complex)
    if values.ndim == 0:
        return complex_to_pair(values.item())
    return [array_to_pairs(v) for v in values]


def pairs_to_array(values: Any, shape: Sequence[int]) -> np.ndarray:
    """Parses nested ``[re, im]`` pairs into a complex array of ``shape``"""
    shape = tuple(shape)
    if not shape:
        return np.asarray(pair_to_complex(values), dtype=complex)
    if not isinstance(values, (list, tuple)) or len(values) != shape[0]:
        raise LfmMapFormatError(
            f"Expected a list of length {shape[0]}, got {values!r}"
        )
    return np.array([pairs_to_array(v, shape[1:]) for v in values], dtype=complex)
