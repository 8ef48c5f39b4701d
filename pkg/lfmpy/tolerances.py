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

Numerical tolerances shared by every module. Defaults come from the package
``config.ini``; a different set can be made current for a block of code::

    with Tolerances.from_config().replace(rank=1e-6):
        decomp = jordan_form(m)
"""
import inspect
import logging
from configparser import ConfigParser
from pathlib import Path
from typing import Dict, Optional

from lfmpy.context import BaseContext
from lfmpy.lfmexceptions import LfmValueError

_logger = logging.getLogger(__name__)
_logger.addHandler(logging.NullHandler())

# attribute name -> (config key, type)
_FIELDS = {
    "singular": ("TOL_SINGULAR", float),
    "cluster": ("TOL_CLUSTER", float),
    "rank": ("TOL_RANK", float),
    "recon": ("TOL_RECON", float),
    "boundary": ("TOL_BOUNDARY", float),
    "projective": ("TOL_PROJECTIVE", float),
    "pole": ("TOL_POLE", float),
    "infinity": ("TOL_INFINITY", float),
    "dw_step": ("DW_STEP", float),
    "dw_max_doublings": ("DW_MAX_DOUBLINGS", int),
    "dw_match": ("DW_MATCH", float),
    "samples": ("SAMPLES", int),
    "seed": ("SEED", int),
    "check": ("CHECK_TOL", float),
}


class Tolerances(BaseContext):
    """Immutable bundle of numerical thresholds.

    Keyword Arguments:
        singular {float} -- relative determinant threshold for invertibility
        cluster {float} -- relative backward error for merging eigenvalues
        rank {float} -- relative singular value threshold for numerical rank
        recon {float} -- allowed relative Jordan reconstruction residual
        boundary {float} -- band around the unit sphere classed as boundary
        projective {float} -- projective equality tolerance
        pole {float} -- relative denominator threshold for evaluation
        infinity {float} -- relative size of the last homogeneous coordinate
            below which a fixed point is at infinity
        dw_step {float} -- orbit step at which the Denjoy-Wolff search stops
        dw_max_doublings {int} -- cap on orbit doublings (2**cap iterates)
        dw_match {float} -- distance for matching an orbit limit to a fixed point
        samples {int} -- default sample count for sampling checks
        seed {int} -- default random seed for sampling checks
        check {float} -- pass/fail threshold for verification reports
    """

    __config = None

    def __init__(self, **values):
        unknown = set(values) - set(_FIELDS)
        if unknown:
            raise LfmValueError(f"Unknown tolerance(s): {sorted(unknown)}")
        missing = set(_FIELDS) - set(values)
        if missing:
            defaults = self._values_for_environment()
            values = {**{k: defaults[k] for k in missing}, **values}
        for name, (_, kind) in _FIELDS.items():
            value = kind(values[name])
            if value <= 0 and name != "seed":
                raise LfmValueError(f"Tolerance '{name}' must be positive, got {value}")
            object.__setattr__(self, f"_{name}", value)

    def __setattr__(self, key, value):
        raise AttributeError("Tolerances are immutable, use replace()")

    @classmethod
    def _config_for_environment(cls, environment="DEFAULT"):
        if cls.__config is None:
            cls.__config = ConfigParser()
            cls.__config.read(
                Path.joinpath(Path(inspect.getfile(cls)).parent, "config.ini")
            )

        return cls.__config[environment]

    @classmethod
    def _values_for_environment(cls, environment="DEFAULT") -> Dict[str, float]:
        env_config = cls._config_for_environment(environment)
        return {name: kind(env_config[key]) for name, (key, kind) in _FIELDS.items()}

    @classmethod
    def from_config(cls, environment: str = "DEFAULT") -> "Tolerances":
        """Build the tolerances of a config.ini section

        Keyword Arguments:
            environment {str} -- section name (default: {"DEFAULT"})

        Returns:
            Tolerances
        """
        return cls(**cls._values_for_environment(environment))

    @classmethod
    def _default_current(cls):
        return cls.from_config()

    def replace(self, **changes) -> "Tolerances":
        """New tolerances with some values changed"""
        return Tolerances(**{**self.to_dict(), **changes})

    def to_dict(self) -> Dict[str, float]:
        return {name: getattr(self, f"_{name}") for name in _FIELDS}

    def __eq__(self, other):
        return isinstance(other, Tolerances) and self.to_dict() == other.to_dict()

    def __hash__(self):
        return hash(tuple(sorted(self.to_dict().items())))

    def __repr__(self):
        body = ", ".join(f"{k}={v!r}" for k, v in self.to_dict().items())
        return f"Tolerances({body})"

    @property
    def singular(self) -> float:
        return self._singular

    @property
    def cluster(self) -> float:
        return self._cluster

    @property
    def rank(self) -> float:
        return self._rank

    @property
    def recon(self) -> float:
        return self._recon

    @property
    def boundary(self) -> float:
        return self._boundary

    @property
    def projective(self) -> float:
        return self._projective

    @property
    def pole(self) -> float:
        return self._pole

    @property
    def infinity(self) -> float:
        return self._infinity

    @property
    def dw_step(self) -> float:
        return self._dw_step

    @property
    def dw_max_doublings(self) -> int:
        return self._dw_max_doublings

    @property
    def dw_match(self) -> float:
        return self._dw_match

    @property
    def samples(self) -> int:
        return self._samples

    @property
    def seed(self) -> int:
        return self._seed

    @property
    def check(self) -> float:
        return self._check


def resolve(tolerances: Optional[Tolerances]) -> Tolerances:
    """Explicit tolerances if given, otherwise the thread's current ones"""
    return tolerances if tolerances is not None else Tolerances.current
