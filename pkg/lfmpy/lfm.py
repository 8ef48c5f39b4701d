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

Linear fractional maps phi(z) = (Az + B) / (<z, C> + D) on C^2 and their
associated matrices [[A, B], [C*, D]]. Composition of maps is multiplication of
associated matrices, so most operations here go through the matrix.
"""
import json
import logging
from pathlib import Path
from typing import List, NamedTuple, Optional, Union

import numpy as np

from lfmpy.domains import sample_ball
from lfmpy.entitybase import array_to_pairs, pairs_to_array
from lfmpy.enums import FixedPointLocation
from lfmpy.lfmexceptions import (
    LfmDegenerateAllFixedError,
    LfmDegenerateCompositionError,
    LfmMapFormatError,
    LfmPoleAtPointError,
    LfmPreconditionError,
    LfmSingularMatrixError,
    LfmValueError,
)
from lfmpy.matalg import (
    JordanDecomposition,
    as_array,
    frobenius,
    is_invertible,
    jordan_form,
    mat_inverse,
)
from lfmpy.tolerances import Tolerances, resolve

_logger = logging.getLogger(__name__)
_logger.addHandler(logging.NullHandler())

# |D| above this fraction of ||m|| normalizes to D = 1
_D_NORMALIZATION = 1e-10
_FIRST_NONZERO = 1e-12


def canonical_form(m) -> np.ndarray:
    """Representative of the projective class of an associated matrix.

    Scaled so that D = 1 when |D| > 1e-10 ||m||, otherwise scaled to unit
    Frobenius norm with the first nonzero entry (row-major) positive real.
    """
    m = as_array(m)
    scale = frobenius(m)
    if scale == 0:
        raise LfmValueError("The zero matrix has no projective class")
    d = m[2, 2]
    if abs(d) > _D_NORMALIZATION * scale:
        return as_array(m / d)
    out = m / scale
    flat = out.ravel()
    first = flat[np.argmax(np.abs(flat) > _FIRST_NONZERO)]
    return as_array(out * (abs(first) / first))


def projective_distance(m1, m2) -> float:
    """Frobenius distance between canonical forms"""
    return frobenius(canonical_form(m1) - canonical_form(m2))


class AssociatedMatrix:
    """Associated matrix of a linear fractional map, compared projectively.

    Two instances are equal when their canonical forms agree within the
    projective tolerance.
    """

    def __init__(self, m):
        self._m = as_array(m)

    @property
    def m(self) -> np.ndarray:
        return self._m

    @property
    def canonical(self) -> np.ndarray:
        return canonical_form(self._m)

    @property
    def determinant(self) -> complex:
        return complex(np.linalg.det(self._m))

    def is_invertible(self, tolerances: Optional[Tolerances] = None) -> bool:
        return is_invertible(self._m, tolerances)

    def distance(self, other: Union["AssociatedMatrix", np.ndarray]) -> float:
        other = other.m if isinstance(other, AssociatedMatrix) else other
        return projective_distance(self._m, other)

    def equals(self, other, tolerances: Optional[Tolerances] = None) -> bool:
        return self.distance(other) <= resolve(tolerances).projective

    def __eq__(self, other):
        if not isinstance(other, AssociatedMatrix):
            return NotImplemented
        return self.equals(other)

    __hash__ = None

    def __matmul__(self, other: "AssociatedMatrix") -> "AssociatedMatrix":
        return AssociatedMatrix(self._m @ other.m)

    def to_list(self) -> list:
        return array_to_pairs(self._m)

    def __repr__(self):
        return f"AssociatedMatrix({np.array2string(self._m, precision=6)})"


class LinearFractionalMap:
    """phi(z) = (Az + B) / (<z, C> + D) with <z, C> = z1 conj(c1) + z2 conj(c2).

    Constant maps and non-invertible maps can be constructed; operations that
    need an invertible associated matrix raise LfmSingularMatrixError.

    :ivar A: 2x2 matrix
    :ivar B: translation part
    :ivar C: vector paired with z in the denominator
    :ivar D: constant of the denominator
    """

    def __init__(self, A, B, C, D):
        self._A = as_array(A, (2, 2))
        self._B = as_array(B, (2,))
        self._C = as_array(C, (2,))
        self._D = complex(as_array(D, ()))

    @classmethod
    def identity(cls) -> "LinearFractionalMap":
        return cls(np.eye(2), np.zeros(2), np.zeros(2), 1)

    @classmethod
    def from_dict(cls, data: dict) -> "LinearFractionalMap":
        """Parses the JSON map format

        Raises:
            LfmMapFormatError: missing keys or malformed complex pairs
        """
        if not isinstance(data, dict):
            raise LfmMapFormatError(f"Expected a JSON object, got {type(data).__name__}")
        missing = [k for k in ("A", "B", "C", "D") if k not in data]
        if missing:
            raise LfmMapFormatError(f"Map is missing key(s) {missing}")
        return cls(
            pairs_to_array(data["A"], (2, 2)),
            pairs_to_array(data["B"], (2,)),
            pairs_to_array(data["C"], (2,)),
            pairs_to_array(data["D"], ()),
        )

    def to_dict(self) -> dict:
        return {
            "A": array_to_pairs(self._A),
            "B": array_to_pairs(self._B),
            "C": array_to_pairs(self._C),
            "D": array_to_pairs(self._D),
        }

    @property
    def A(self) -> np.ndarray:
        return self._A

    @property
    def B(self) -> np.ndarray:
        return self._B

    @property
    def C(self) -> np.ndarray:
        return self._C

    @property
    def D(self) -> complex:
        return self._D

    @property
    def matrix(self) -> AssociatedMatrix:
        return to_matrix(self)

    def __call__(self, z):
        return eval_(self, z)

    def __eq__(self, other):
        if not isinstance(other, LinearFractionalMap):
            return NotImplemented
        return self.matrix == other.matrix

    __hash__ = None

    def __repr__(self):
        return (
            f"LinearFractionalMap(A={self._A.tolist()}, B={self._B.tolist()}, "
            f"C={self._C.tolist()}, D={self._D})"
        )


def to_matrix(phi: LinearFractionalMap) -> AssociatedMatrix:
    m = np.zeros((3, 3), dtype=complex)
    m[:2, :2] = phi.A
    m[:2, 2] = phi.B
    m[2, :2] = phi.C.conj()
    m[2, 2] = phi.D
    return AssociatedMatrix(m)


def from_matrix(
    m: Union[AssociatedMatrix, np.ndarray], tolerances: Optional[Tolerances] = None
) -> LinearFractionalMap:
    """Map of an invertible associated matrix, read off its canonical form

    Raises:
        LfmSingularMatrixError: m is not invertible
    """
    m = m.m if isinstance(m, AssociatedMatrix) else as_array(m)
    if not is_invertible(m, tolerances):
        raise LfmSingularMatrixError(
            "Associated matrix is not invertible", determinant=complex(np.linalg.det(m))
        )
    c = canonical_form(m)
    return LinearFractionalMap(c[:2, :2], c[:2, 2], c[2, :2].conj(), c[2, 2])


def _as_points(z) -> np.ndarray:
    z = np.asarray(z, dtype=complex)
    if z.shape[-1:] != (2,) or z.ndim > 2:
        raise LfmValueError(f"Expected points of shape (2,) or (n, 2), got {z.shape}")
    return z


def _evaluate(phi: LinearFractionalMap, zs: np.ndarray, tol: Tolerances):
    den = zs @ phi.C.conj() + phi.D
    bound = tol.pole * (
        np.linalg.norm(phi.C) * np.linalg.norm(zs, axis=-1) + abs(phi.D) + 1
    )
    poles = np.abs(den) <= bound
    with np.errstate(divide="ignore", invalid="ignore"):
        images = (zs @ phi.A.T + phi.B) / den[..., None]
    return images, poles


def eval_(phi: LinearFractionalMap, z, tolerances: Optional[Tolerances] = None) -> np.ndarray:
    """phi(z) for a point (shape (2,)) or a batch of points (shape (n, 2))

    Raises:
        LfmPoleAtPointError: the denominator vanishes at (one of) the points
    """
    tol = resolve(tolerances)
    zs = _as_points(z)
    images, poles = _evaluate(phi, zs, tol)
    if np.any(poles):
        point = zs if zs.ndim == 1 else zs[np.argmax(poles)]
        raise LfmPoleAtPointError(f"Denominator vanishes at {point}", point=point)
    return images


def eval_many(phi: LinearFractionalMap, zs, tolerances: Optional[Tolerances] = None) -> np.ndarray:
    """phi over a batch of points with NaN rows at poles and at NaN inputs"""
    tol = resolve(tolerances)
    zs = np.atleast_2d(_as_points(zs))
    images, poles = _evaluate(phi, zs, tol)
    images[poles] = np.nan
    return images


def compose(
    f: LinearFractionalMap, g: LinearFractionalMap, tolerances: Optional[Tolerances] = None
) -> LinearFractionalMap:
    """f o g, through m_f m_g

    Raises:
        LfmDegenerateCompositionError: the product matrix is singular
    """
    m = f.matrix.m @ g.matrix.m
    if not is_invertible(m, tolerances):
        raise LfmDegenerateCompositionError(
            "Composition has a singular associated matrix",
            determinant=complex(np.linalg.det(m)),
        )
    return from_matrix(m, tolerances)


def inverse(phi: LinearFractionalMap, tolerances: Optional[Tolerances] = None) -> LinearFractionalMap:
    return from_matrix(mat_inverse(phi.matrix.m, tolerances), tolerances)


def iterate(phi: LinearFractionalMap, n: int, tolerances: Optional[Tolerances] = None) -> LinearFractionalMap:
    """n-fold composition phi o ... o phi (identity for n = 0)"""
    if n < 0:
        raise LfmValueError(f"Iteration count must be non-negative, got {n}")
    result = LinearFractionalMap.identity()
    for _ in range(n):
        result = compose(phi, result, tolerances)
    return result


class FixedPoint:
    """Fixed point of a map, from an eigenvector of its associated matrix.

    :ivar location: affine point, None at infinity
    :type location: np.ndarray
    :ivar homogeneous: eigenvector scaled so the last coordinate is 1
        (unit norm at infinity)
    :type homogeneous: np.ndarray
    :ivar eigenvalue: eigenvalue of the eigenvector
    :type eigenvalue: complex
    :ivar block_size: size of the Jordan block the eigenvector heads
    :type block_size: int
    :ivar classification: Interior, Boundary, Exterior or Infinity
    :type classification: FixedPointLocation
    """

    def __init__(
        self,
        homogeneous,
        eigenvalue: complex,
        block_size: int = 1,
        tolerances: Optional[Tolerances] = None,
    ):
        tol = resolve(tolerances)
        h = as_array(homogeneous, (3,))
        self._eigenvalue = complex(eigenvalue)
        self._block_size = int(block_size)
        if abs(h[2]) > tol.infinity * np.linalg.norm(h):
            self._homogeneous = as_array(h / h[2], (3,))
            self._location = as_array(self._homogeneous[:2], (2,))
            radius = float(np.linalg.norm(self._location))
            if abs(radius - 1) <= tol.boundary:
                self._classification = FixedPointLocation.Boundary
            elif radius < 1:
                self._classification = FixedPointLocation.Interior
            else:
                self._classification = FixedPointLocation.Exterior
        else:
            self._homogeneous = as_array(h / np.linalg.norm(h), (3,))
            self._location = None
            self._classification = FixedPointLocation.Infinity

    @property
    def location(self) -> Optional[np.ndarray]:
        return self._location

    @property
    def homogeneous(self) -> np.ndarray:
        return self._homogeneous

    @property
    def eigenvalue(self) -> complex:
        return self._eigenvalue

    @property
    def block_size(self) -> int:
        return self._block_size

    @property
    def classification(self) -> FixedPointLocation:
        return self._classification

    @property
    def is_at_infinity(self) -> bool:
        return self._location is None

    def residual(self, phi: LinearFractionalMap) -> float:
        """||phi(p) - p|| / (1 + ||p||), zero at infinity"""
        if self.is_at_infinity:
            return 0.0
        image = eval_(phi, self._location)
        return float(np.linalg.norm(image - self._location) / (1 + np.linalg.norm(self._location)))

    def to_dict(self) -> dict:
        return {
            "location": None if self.is_at_infinity else array_to_pairs(self._location),
            "homogeneous": array_to_pairs(self._homogeneous),
            "eigenvalue": array_to_pairs(self._eigenvalue),
            "block_size": self._block_size,
            "classification": self._classification.value,
        }

    def __repr__(self):
        where = "infinity" if self.is_at_infinity else self._location.tolist()
        return f"FixedPoint({where}, {self._classification.value}, eigenvalue={self._eigenvalue:.6g})"


def fixed_points(
    phi: LinearFractionalMap,
    decomp: Optional[JordanDecomposition] = None,
    tolerances: Optional[Tolerances] = None,
) -> List[FixedPoint]:
    """One fixed point per Jordan block, from the head of its chain

    Raises:
        LfmDegenerateAllFixedError: phi is the identity
        LfmSingularMatrixError: the associated matrix is singular
    """
    tol = resolve(tolerances)
    decomp = decomp if decomp is not None else jordan_form(phi.matrix.m, tol)
    if decomp.is_scalar:
        raise LfmDegenerateAllFixedError("Every point is fixed by the identity map")
    return [
        FixedPoint(decomp.head(i), block.eigenvalue, block.size, tol)
        for i, block in enumerate(decomp.blocks)
    ]


class SelfMapReport(NamedTuple):
    violations: int
    worst_margin: float
    n_samples: int

    @property
    def passed(self) -> bool:
        return self.violations == 0


def ball_norms(images: np.ndarray) -> np.ndarray:
    """Norms of image points, +inf where the image is undefined"""
    norms = np.linalg.norm(images, axis=-1)
    return np.where(np.isfinite(norms), norms, np.inf)


def self_map_check(
    phi: LinearFractionalMap,
    n_samples: Optional[int] = None,
    seed: Optional[int] = None,
    tolerances: Optional[Tolerances] = None,
) -> SelfMapReport:
    """Samples the ball uniformly and counts images with ||phi(z)|| >= 1.

    Keyword Arguments:
        n_samples {int} -- defaults to the configured sample count
        seed {int} -- defaults to the configured seed

    Returns:
        SelfMapReport -- violation count and the largest image norm seen

    Raises:
        LfmPreconditionError: n_samples is not positive
    """
    tol = resolve(tolerances)
    n_samples = tol.samples if n_samples is None else n_samples
    if n_samples <= 0:
        raise LfmPreconditionError(f"Self-map check needs a positive sample count, got {n_samples}")
    seed = tol.seed if seed is None else seed
    zs = sample_ball(n_samples, seed)
    norms = ball_norms(eval_many(phi, zs, tol))
    report = SelfMapReport(int(np.sum(norms >= 1)), float(np.max(norms)), n_samples)
    _logger.debug(f"Self-map check: {report}")
    return report


def load_map(path: Union[str, Path]) -> LinearFractionalMap:
    """Reads a map JSON file; a top level "map" key (as written by embed) is accepted

    Raises:
        LfmMapFormatError: unreadable JSON or malformed map
    """
    try:
        with open(path) as d:
            data = json.load(d)
    except json.JSONDecodeError as e:
        raise LfmMapFormatError(f"{path} is not valid JSON: {e}") from e
    if isinstance(data, dict) and "map" in data:
        data = data["map"]
    return LinearFractionalMap.from_dict(data)


def dump_map(phi: LinearFractionalMap, path: Union[str, Path]):
    with open(path, "w") as d:
        json.dump(phi.to_dict(), d, indent=2)
