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
from enum import unique

from lfmpy.entitybase import EnumBase


@unique
class FixedPointLocation(EnumBase):
    """Where a fixed point sits relative to the unit ball"""

    Interior = "Interior"
    Boundary = "Boundary"
    Exterior = "Exterior"
    Infinity = "Infinity"


@unique
class ModelKind(EnumBase):
    """Shape of the model map Phi"""

    Linear = "Linear"
    Diagonal = "Diagonal"
    HalfSpaceType = "HalfSpaceType"
    HeisenbergType = "HeisenbergType"

    @property
    def description(self) -> str:
        """Phrase used in classification summaries, e.g. 'Heisenberg-type model'"""
        return _DESCRIPTIONS[self]


_DESCRIPTIONS = {
    ModelKind.Linear: "linear model",
    ModelKind.Diagonal: "diagonal model",
    ModelKind.HalfSpaceType: "half-space-type model",
    ModelKind.HeisenbergType: "Heisenberg-type model",
}
