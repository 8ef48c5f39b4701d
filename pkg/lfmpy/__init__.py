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
from ._version import __version__
from .domains import (
    cayley,
    cayley_inv,
    contains,
    contains_closed,
    convexity_witness,
    omega,
    omega_inv,
    sample_ball,
    sample_domain,
    sigma,
    sigma_inv,
)
from .enums import DomainKind, FixedPointLocation, ModelKind
from .lfm import (
    AssociatedMatrix,
    FixedPoint,
    LinearFractionalMap,
    compose,
    dump_map,
    eval_,
    eval_many,
    fixed_points,
    from_matrix,
    inverse,
    load_map,
    self_map_check,
    to_matrix,
)
from .lfmexceptions import LfmError
from .matalg import JordanBlock, JordanDecomposition, eigenvalues3, jordan_form, mat_inverse, mat_mul
from .model import (
    AnalyticModelMap,
    ModelClass,
    analytic_phi,
    analytic_phi_t,
    classify,
    heisenberg,
)
from .semigroup import SemigroupElement, lambda_power_t, orbit, phi_t, verify_semigroup
from .tolerances import Tolerances

__all__ = [
    "AnalyticModelMap",
    "AssociatedMatrix",
    "DomainKind",
    "FixedPoint",
    "FixedPointLocation",
    "JordanBlock",
    "JordanDecomposition",
    "LfmError",
    "LinearFractionalMap",
    "ModelClass",
    "ModelKind",
    "SemigroupElement",
    "Tolerances",
    "analytic_phi",
    "analytic_phi_t",
    "cayley",
    "cayley_inv",
    "classify",
    "compose",
    "contains",
    "contains_closed",
    "convexity_witness",
    "dump_map",
    "eigenvalues3",
    "eval_",
    "eval_many",
    "fixed_points",
    "from_matrix",
    "heisenberg",
    "inverse",
    "jordan_form",
    "lambda_power_t",
    "load_map",
    "mat_inverse",
    "mat_mul",
    "omega",
    "omega_inv",
    "orbit",
    "phi_t",
    "sample_ball",
    "sample_domain",
    "self_map_check",
    "sigma",
    "sigma_inv",
    "to_matrix",
    "verify_semigroup",
]
