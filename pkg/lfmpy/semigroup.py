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

Continuous iteration: m_{phi_t} = S Lambda^t S^-1 from a Jordan decomposition
of m_phi, checks of the semigroup law and orbits of points under phi_t.
"""
import logging
from itertools import combinations
from typing import Any, Dict, FrozenSet, Iterable, List, NamedTuple, Optional, Tuple

import numpy as np
import pandas as pd

from lfmpy.domains import contains, sample_ball
from lfmpy.enums import BlockPowerVariant, DomainKind
from lfmpy.lfm import (
    AssociatedMatrix,
    LinearFractionalMap,
    ball_norms,
    eval_,
    eval_many,
    from_matrix,
    projective_distance,
)
from lfmpy.lfmexceptions import LfmIllConditionedError, LfmPreconditionError, LfmValueError
from lfmpy.matalg import (
    JordanBlock,
    JordanDecomposition,
    as_array,
    jordan_block_power_t,
    on_branch_cut,
)
from lfmpy.tolerances import Tolerances, resolve

_logger = logging.getLogger(__name__)
_logger.addHandler(logging.NullHandler())

EXTRAPOLATION = "extrapolation"
BRANCH_AMBIGUITY = "branch_ambiguity"

ORBIT_COLUMNS = ["t", "re1", "im1", "re2", "im2"]

_VARIANTS = {
    (1, 1, 1): BlockPowerVariant.Diagonal,
    (2, 1): BlockPowerVariant.Jordan2,
    (3,): BlockPowerVariant.Jordan3,
}


class BlockPowerRule(NamedTuple):
    """Fractional power rule for a block structure.

    ``normalized`` is lambda = 1/alpha of the non-trivial Jordan block, None
    when the structure is diagonal.
    """

    variant: BlockPowerVariant
    eigenvalues: Tuple[complex, ...]
    normalized: Optional[complex]


def block_power_rule(blocks: Iterable[JordanBlock]) -> BlockPowerRule:
    blocks = list(blocks)
    sizes = tuple(sorted((b.size for b in blocks), reverse=True))
    if sizes not in _VARIANTS:
        raise LfmValueError(f"Block sizes {sizes} do not describe a 3x3 Jordan matrix")
    variant = _VARIANTS[sizes]
    largest = max(blocks, key=lambda b: b.size)
    normalized = None if variant == BlockPowerVariant.Diagonal else 1 / complex(largest.eigenvalue)
    return BlockPowerRule(variant, tuple(complex(b.eigenvalue) for b in blocks), normalized)


def lambda_power_t(blocks: Iterable[JordanBlock], t: float) -> np.ndarray:
    """Lambda^t on principal branches, block by block.

    A size 1 block gives alpha^t, a size 2 block [[alpha^t, t alpha^(t-1)], [0, alpha^t]]
    and a size 3 block alpha^t [[1, t lam, lam^2 t(t-1)/2], [0, 1, t lam], [0, 0, 1]]
    with lam = 1/alpha.

    Raises:
        LfmZeroEigenvalueError: a block has eigenvalue 0
    """
    blocks = list(blocks)
    dim = sum(b.size for b in blocks)
    out = np.zeros((dim, dim), dtype=complex)
    start = 0
    for block in blocks:
        stop = start + block.size
        out[start:stop, start:stop] = jordan_block_power_t(block.eigenvalue, block.size, t)
        start = stop
    return out


def _check_separation(blocks: Tuple[JordanBlock, ...], tol: Tolerances):
    distinct = {b.eigenvalue for b in blocks}
    scale = max(abs(v) for v in distinct)
    threshold = np.sqrt(tol.cluster) * scale
    for a, b in combinations(distinct, 2):
        if abs(a - b) <= threshold:
            raise LfmIllConditionedError(
                f"Eigenvalues {a:.12g} and {b:.12g} are separate clusters but nearly equal; "
                "the diagonal and Jordan power rules disagree there"
            )


class SemigroupElement:
    """phi_t for one value of t.

    :ivar t: the semigroup parameter
    :type t: float
    :ivar map: phi_t as a linear fractional map
    :type map: LinearFractionalMap
    :ivar matrix: S Lambda^t S^-1 before normalization
    :type matrix: AssociatedMatrix
    :ivar parent: decomposition the element was built from
    :type parent: JordanDecomposition
    :ivar rule: fractional power rule of the parent block structure
    :type rule: BlockPowerRule
    :ivar flags: "extrapolation" for t < 0, "branch_ambiguity" when an
        eigenvalue sits on the negative real axis
    :type flags: frozenset
    """

    def __init__(
        self,
        t: float,
        map: LinearFractionalMap,
        matrix: AssociatedMatrix,
        parent: JordanDecomposition,
        rule: BlockPowerRule,
        flags: Iterable[str] = (),
    ):
        self._t = float(t)
        self._map = map
        self._matrix = matrix
        self._parent = parent
        self._rule = rule
        self._flags = frozenset(flags)

    @property
    def t(self) -> float:
        return self._t

    @property
    def map(self) -> LinearFractionalMap:
        return self._map

    @property
    def matrix(self) -> AssociatedMatrix:
        return self._matrix

    @property
    def parent(self) -> JordanDecomposition:
        return self._parent

    @property
    def rule(self) -> BlockPowerRule:
        return self._rule

    @property
    def flags(self) -> FrozenSet[str]:
        return self._flags

    @property
    def is_extrapolation(self) -> bool:
        return EXTRAPOLATION in self._flags

    def __call__(self, z):
        return eval_(self._map, z)

    def __repr__(self):
        flags = f", flags={sorted(self._flags)}" if self._flags else ""
        return f"SemigroupElement(t={self._t}, variant={self._rule.variant.name}{flags})"


def phi_t(decomp: JordanDecomposition, t: float, tolerances: Optional[Tolerances] = None) -> SemigroupElement:
    """The semigroup element m_{phi_t} = S Lambda^t S^-1.

    Arguments:
        decomp {JordanDecomposition} -- decomposition of m_phi
        t {float} -- semigroup parameter; t < 0 is computed but flagged

    Raises:
        LfmIllConditionedError: two eigenvalue clusters are too close to tell
            a diagonal structure from a Jordan block
        LfmZeroEigenvalueError: an eigenvalue is zero
    """
    tol = resolve(tolerances)
    t = float(t)
    _check_separation(decomp.blocks, tol)
    rule = block_power_rule(decomp.blocks)
    flags = set()
    if t < 0:
        _logger.warning(f"phi_t at t = {t} < 0 extrapolates past the semigroup")
        flags.add(EXTRAPOLATION)
    if any(on_branch_cut(b.eigenvalue) for b in decomp.blocks):
        flags.add(BRANCH_AMBIGUITY)
    m_t = as_array(decomp.S @ lambda_power_t(decomp.blocks, t) @ decomp.S_inv)
    return SemigroupElement(t, from_matrix(m_t, tol), AssociatedMatrix(m_t), decomp, rule, flags)


class SemigroupReport(NamedTuple):
    """Worst residuals of the semigroup law over a (t, s) grid.

    matrix_residual compares canonical m_{phi_t} m_{phi_s} with m_{phi_{t+s}},
    pointwise_residual compares phi_t(phi_s(z)) with phi_{t+s}(z) on ball
    samples, ball_exits counts samples mapped outside the closed ball for t
    in the grids.
    """

    matrix_residual: float
    pointwise_residual: float
    ball_exits: int
    n_samples: int
    skipped: int = 0


def _elements(decomp, values: Iterable[float], tol) -> Dict[float, SemigroupElement]:
    return {float(v): phi_t(decomp, v, tol) for v in sorted(set(float(v) for v in values))}


def verify_semigroup(
    decomp: JordanDecomposition,
    t_grid: Iterable[float],
    s_grid: Iterable[float],
    z_samples: Optional[int] = None,
    seed: Optional[int] = None,
    tolerances: Optional[Tolerances] = None,
) -> SemigroupReport:
    """Measures how well phi_{t+s} = phi_t o phi_s holds.

    Samples at which any of the three maps has a pole are skipped and counted.
    The result depends only on the grids, the sample count and the seed.
    """
    tol = resolve(tolerances)
    z_samples = tol.samples if z_samples is None else z_samples
    seed = tol.seed if seed is None else seed
    t_grid, s_grid = [float(t) for t in t_grid], [float(s) for s in s_grid]
    elements = _elements(decomp, t_grid + s_grid + [t + s for t in t_grid for s in s_grid], tol)
    zs = sample_ball(z_samples, seed)

    matrix_residual, pointwise_residual, skipped = 0.0, 0.0, 0
    for t in t_grid:
        for s in s_grid:
            product = elements[t].matrix.m @ elements[s].matrix.m
            matrix_residual = max(matrix_residual, projective_distance(product, elements[t + s].matrix.m))
            lhs = eval_many(elements[t].map, eval_many(elements[s].map, zs, tol), tol)
            rhs = eval_many(elements[t + s].map, zs, tol)
            gap = np.linalg.norm(lhs - rhs, axis=1)
            valid = np.isfinite(gap)
            skipped += int(np.sum(~valid))
            if np.any(valid):
                pointwise_residual = max(pointwise_residual, float(np.max(gap[valid])))

    exits = 0
    for value in sorted(set(t_grid + s_grid)):
        if value < 0:
            continue
        norms = ball_norms(eval_many(elements[value].map, zs, tol))
        exits += int(np.sum(norms > 1 + tol.check))

    if skipped:
        _logger.warning(f"Skipped {skipped} sample evaluations at poles")
    report = SemigroupReport(matrix_residual, pointwise_residual, exits, z_samples, skipped)
    _logger.debug(f"Semigroup check: {report}")
    return report


def semigroup_power_check(
    decomp: JordanDecomposition, n_max: int = 10, tolerances: Optional[Tolerances] = None
) -> float:
    """Largest canonical distance between m_{phi_n} and (m_phi)^n for 2 <= n <= n_max"""
    tol = resolve(tolerances)
    worst = 0.0
    for n in range(2, n_max + 1):
        power = np.linalg.matrix_power(decomp.source, n)
        worst = max(worst, projective_distance(phi_t(decomp, n, tol).matrix.m, power))
    return worst


def orbit(
    decomp: JordanDecomposition, z0, t_grid: Iterable[float], tolerances: Optional[Tolerances] = None
) -> List[Tuple[float, np.ndarray]]:
    """[(t, phi_t(z0))] for each t in the grid

    Raises:
        LfmPreconditionError: z0 is not in the open unit ball
    """
    tol = resolve(tolerances)
    z0 = as_array(z0, (2,))
    if not contains(DomainKind.UnitBall, z0):
        raise LfmPreconditionError(f"Orbit start {z0} is not in the open unit ball")
    return [(float(t), eval_(phi_t(decomp, t, tol).map, z0, tol)) for t in t_grid]


def orbit_frame(points: List[Tuple[float, np.ndarray]]) -> pd.DataFrame:
    rows = [[t, z[0].real, z[0].imag, z[1].real, z[1].imag] for t, z in points]
    return pd.DataFrame(rows, columns=ORBIT_COLUMNS, dtype=float)


def write_orbit_csv(points: List[Tuple[float, np.ndarray]], path_or_buf: Any):
    """Orbit CSV with header t,re1,im1,re2,im2 and 17 significant digits"""
    orbit_frame(points).to_csv(path_or_buf, index=False, float_format="%.17g")
