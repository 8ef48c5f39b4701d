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
import math
from typing import List, Optional

import numpy as np

from lfmpy.lfmexceptions import LfmGridSpecError, LfmPreconditionError

_GRID_SLACK = 1e-9


def grid_size(start: float, stop: float, step: float) -> int:
    """Number of points start, start + step, ... not past stop"""
    return int(math.floor((stop - start) / step + _GRID_SLACK)) + 1


def parse_t_grid(spec: str) -> List[float]:
    """Parses a grid given as "start:stop:step"

    Arguments:
        spec {str} -- e.g. "0:50:0.5"

    Returns:
        list of float -- start + k*step for k = 0 .. floor((stop - start)/step)
    """
    parts = spec.split(":") if isinstance(spec, str) else []
    if len(parts) != 3:
        raise LfmGridSpecError(f"Expected a grid 'start:stop:step', got {spec!r}")
    try:
        start, stop, step = (float(p) for p in parts)
    except ValueError as e:
        raise LfmGridSpecError(f"Grid {spec!r} has a non-numeric part") from e
    if not all(math.isfinite(v) for v in (start, stop, step)):
        raise LfmGridSpecError(f"Grid {spec!r} has a non-finite part")
    if step <= 0:
        raise LfmGridSpecError(f"Grid step must be positive in {spec!r}")
    if stop <= start:
        raise LfmGridSpecError(f"Grid stop must exceed start in {spec!r}")
    return [start + k * step for k in range(grid_size(start, stop, step))]


def parse_z0(spec: Optional[str]) -> np.ndarray:
    """Parses "re1,im1,re2,im2" into a point of C^2"""
    if spec is None:
        raise LfmPreconditionError("A start point --z0 re1,im1,re2,im2 is required")
    try:
        values = [float(p) for p in spec.split(",")]
    except ValueError as e:
        raise LfmPreconditionError(f"Start point {spec!r} has a non-numeric part") from e
    if len(values) != 4 or not all(math.isfinite(v) for v in values):
        raise LfmPreconditionError(f"Expected four finite numbers re1,im1,re2,im2, got {spec!r}")
    return np.array([complex(values[0], values[1]), complex(values[2], values[3])])
