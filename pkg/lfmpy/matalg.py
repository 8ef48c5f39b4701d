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

Small complex linear algebra for associated matrices: closed-form eigenvalues
of 3x3 matrices, Jordan chains and the Jordan canonical form, and principal
fractional powers of Jordan blocks.

Matrices are numpy complex arrays. Everything returned is a fresh read-only
array, so values can be shared between threads.
"""
import cmath
import logging
import math
import warnings
from itertools import combinations
from typing import Iterable, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np
from scipy.special import binom

from lfmpy.lfmexceptions import (
    LfmBranchAmbiguityWarning,
    LfmIllConditionedError,
    LfmSingularMatrixError,
    LfmValueError,
    LfmZeroEigenvalueError,
)
from lfmpy.tolerances import Tolerances, resolve

_logger = logging.getLogger(__name__)
_logger.addHandler(logging.NullHandler())

_NEWTON_STEPS = 3
_TINY = np.finfo(float).tiny


class JordanBlock(NamedTuple):
    eigenvalue: complex
    size: int


def as_array(values, shape: Sequence[int] = (3, 3)) -> np.ndarray:
    """Read-only complex copy of ``values`` after checking shape and finiteness

    Raises:
        LfmValueError: wrong shape or NaN/Inf entries
    """
    try:
        arr = np.array(values, dtype=complex)
    except (TypeError, ValueError) as e:
        raise LfmValueError(f"Cannot convert {values!r} to a complex array") from e
    if arr.shape != tuple(shape):
        raise LfmValueError(f"Expected shape {tuple(shape)}, got {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise LfmValueError("Non-finite entries are not allowed")
    arr.setflags(write=False)
    return arr


def frobenius(m: np.ndarray) -> float:
    return float(np.linalg.norm(m))


def mat_mul(a, b) -> np.ndarray:
    return as_array(as_array(a) @ as_array(b))


def is_invertible(m, tolerances: Optional[Tolerances] = None) -> bool:
    """True when |det m| exceeds the singular tolerance relative to ||m||^3"""
    tol = resolve(tolerances)
    m = as_array(m)
    return abs(np.linalg.det(m)) > tol.singular * frobenius(m) ** 3


def mat_inverse(m, tolerances: Optional[Tolerances] = None) -> np.ndarray:
    """Inverse of a 3x3 matrix

    Raises:
        LfmSingularMatrixError: |det m| <= tol_singular * ||m||^3
    """
    tol = resolve(tolerances)
    m = as_array(m)
    det = complex(np.linalg.det(m))
    if abs(det) <= tol.singular * frobenius(m) ** 3:
        raise LfmSingularMatrixError("Matrix is numerically singular", determinant=det)
    return as_array(np.linalg.inv(m))


def characteristic_coefficients(m) -> Tuple[complex, complex, complex]:
    """(a2, a1, a0) of the monic characteristic polynomial x^3 + a2 x^2 + a1 x + a0"""
    m = as_array(m)
    tr = complex(np.trace(m))
    a1 = (tr * tr - complex(np.trace(m @ m))) / 2
    return -tr, a1, -complex(np.linalg.det(m))


def _cubic_roots(a2: complex, a1: complex, a0: complex) -> List[complex]:
    # depressed cubic x^3 + p x + q with lambda = x - a2/3
    shift = -a2 / 3
    p = a1 - a2 * a2 / 3
    q = 2 * a2 ** 3 / 27 - a2 * a1 / 3 + a0
    root_disc = cmath.sqrt((q / 2) ** 2 + (p / 3) ** 3)
    c_plus, c_minus = -q / 2 + root_disc, -q / 2 - root_disc
    c = c_plus if abs(c_plus) >= abs(c_minus) else c_minus
    if c == 0:
        return [shift, shift, shift]
    u = c ** (1 / 3)
    omega = cmath.exp(2j * cmath.pi / 3)
    roots = []
    for k in range(3):
        u_k = u * omega ** k
        roots.append(u_k - p / (3 * u_k) + shift)
    return roots


def _polish(root: complex, coeffs: Sequence[complex]) -> complex:
    a2, a1, a0 = coeffs

    def value(x):
        return ((x + a2) * x + a1) * x + a0

    for _ in range(_NEWTON_STEPS):
        slope = (3 * root + 2 * a2) * root + a1
        if slope == 0:
            break
        candidate = root - value(root) / slope
        if abs(value(candidate)) >= abs(value(root)):
            break
        root = candidate
    return root


def _merge_error(roots: Sequence[complex], coeffs: Sequence[complex], scale: float) -> float:
    """Largest scaled change of the characteristic coefficients caused by
    replacing the computed roots with ``roots``"""
    merged = np.poly(np.asarray(roots, dtype=complex))[1:]
    weights = scale ** np.arange(1, 4)
    return float(np.max(np.abs(merged - np.asarray(coeffs)) / weights))


def _merge_spread(roots: Sequence[complex], coeffs: Sequence[complex], scale: float) -> float:
    # two roots a relative distance d apart move the coefficients by about d^2 / 4
    return float(np.sqrt(_merge_error(roots, coeffs, scale)))


def _cluster(raw: List[complex], coeffs, scale: float, tol: float) -> List[Tuple[complex, int]]:
    """Groups raw Cardano roots into eigenvalues with multiplicities.

    Candidate centres keep the trace exact: -a2/3 for a triple and
    (-a2 - r)/2 around a polished simple root r for a pair. Only roots that
    stay simple are polished.
    """
    trace = -coeffs[0]
    centre = trace / 3
    if _merge_spread([centre] * 3, coeffs, scale) <= tol:
        return [(centre, 3)]

    pairs = sorted(combinations(range(3), 2), key=lambda ij: abs(raw[ij[0]] - raw[ij[1]]))
    for i, j in pairs:
        (k,) = set(range(3)) - {i, j}
        simple = _polish(raw[k], coeffs)
        centre = (trace - simple) / 2
        if _merge_spread([centre, centre, simple], coeffs, scale) <= tol:
            return [(centre, 2), (simple, 1)]

    return [(_polish(r, coeffs), 1) for r in raw]


def _eigen_key(value: complex, scale: float) -> Tuple[float, float]:
    return -round(abs(value) / scale, 9), -round(cmath.phase(value), 9)


def eigenvalues3(m, tolerances: Optional[Tolerances] = None) -> List[Tuple[complex, int]]:
    """Eigenvalues of a 3x3 matrix with algebraic multiplicities.

    The characteristic cubic is solved in closed form. Roots are merged into a
    single eigenvalue when the square root of the resulting change in the
    characteristic coefficients (relative to ||m||^k for the k-th coefficient)
    is within the cluster tolerance, which for a pair is half their relative
    distance. Merged values keep the trace; roots left simple are polished
    with Newton steps.

    Arguments:
        m {array} -- 3x3 complex matrix

    Keyword Arguments:
        tolerances {Tolerances} -- defaults to Tolerances.current

    Returns:
        list of (eigenvalue, multiplicity), ordered by multiplicity, then
        descending modulus, then descending argument
    """
    tol = resolve(tolerances)
    m = as_array(m)
    coeffs = characteristic_coefficients(m)
    roots = _cubic_roots(*coeffs)
    scale = max(frobenius(m), _TINY)
    clusters = _cluster(roots, coeffs, scale, tol.cluster)
    _logger.debug(f"Characteristic roots {roots} clustered to {clusters}")
    modulus = max(max(abs(v) for v, _ in clusters), _TINY)
    return sorted(clusters, key=lambda c: (-c[1],) + _eigen_key(c[0], modulus))


def _null_space(a: np.ndarray, atol: float) -> np.ndarray:
    _, s, vh = np.linalg.svd(a)
    rank = int(np.sum(s > atol))
    return vh[rank:].conj().T


def _orthonormal(columns: List[np.ndarray]) -> np.ndarray:
    if not columns:
        return np.zeros((3, 0), dtype=complex)
    u, s, _ = np.linalg.svd(np.column_stack(columns), full_matrices=False)
    if s[0] == 0:
        return np.zeros((3, 0), dtype=complex)
    return u[:, s > 1e-10 * s[0]]


def jordan_chains(
    m, eigenvalue: complex, multiplicity: int, tolerances: Optional[Tolerances] = None
) -> List[List[np.ndarray]]:
    """Jordan chains [v1, ..., vk] for one eigenvalue, built top-down.

    Each chain starts from a vector of ker N^k outside ker N^(k-1) (and outside
    what longer chains already use at that level) and is mapped down by
    N = m - eigenvalue*I, so that m v1 = eigenvalue v1 and m vj = eigenvalue vj + v(j-1).

    Raises:
        LfmIllConditionedError: the nullities of N^k do not add up to the
            algebraic multiplicity, or their increments grow with k
    """
    tol = resolve(tolerances)
    m = as_array(m)
    scale = max(frobenius(m), _TINY)
    n = m - eigenvalue * np.eye(3)

    kernels = [np.zeros((3, 0), dtype=complex)]
    power = np.eye(3, dtype=complex)
    for k in range(1, multiplicity + 1):
        power = power @ n
        kernels.append(_null_space(power, tol.rank * scale ** k))
    nullities = [kernel.shape[1] for kernel in kernels]
    _logger.debug(f"Nullities of (m - {eigenvalue:.6g} I)^k: {nullities[1:]}")
    if nullities[-1] != multiplicity or any(
        b < a for a, b in zip(nullities, nullities[1:])
    ):
        raise LfmIllConditionedError(
            f"Nullities {nullities[1:]} do not match multiplicity {multiplicity} "
            f"of eigenvalue {eigenvalue}"
        )

    at_least = [nullities[k] - nullities[k - 1] for k in range(1, multiplicity + 1)] + [0]
    if any(b > a for a, b in zip(at_least, at_least[1:])):
        raise LfmIllConditionedError(
            f"Nullities {nullities[1:]} of eigenvalue {eigenvalue} do not describe Jordan blocks"
        )
    levels = {k: [] for k in range(1, multiplicity + 1)}
    chains = []
    for size in range(multiplicity, 0, -1):
        for _ in range(at_least[size - 1] - at_least[size]):
            base = _orthonormal(list(kernels[size - 1].T) + levels[size])
            best = None
            for candidate in kernels[size].T:
                residual = candidate - base @ (base.conj().T @ candidate)
                if best is None or np.linalg.norm(residual) > np.linalg.norm(best):
                    best = residual
            if best is None or np.linalg.norm(best) < 1e-8:
                raise LfmIllConditionedError(
                    f"No chain top of length {size} for eigenvalue {eigenvalue}"
                )
            chain = [best / np.linalg.norm(best)]
            for _ in range(size - 1):
                chain.append(n @ chain[-1])
            chain.reverse()
            for level, vector in enumerate(chain, start=1):
                levels[level].append(vector)
            chains.append(chain)
    return chains


def jordan_matrix(blocks: Iterable[JordanBlock]) -> np.ndarray:
    """Block diagonal Jordan matrix with ones on the superdiagonal of each block"""
    blocks = list(blocks)
    dim = sum(b.size for b in blocks)
    out = np.zeros((dim, dim), dtype=complex)
    start = 0
    for block in blocks:
        for i in range(block.size):
            out[start + i, start + i] = block.eigenvalue
            if i + 1 < block.size:
                out[start + i, start + i + 1] = 1
        start += block.size
    out.setflags(write=False)
    return out


class JordanDecomposition:
    """M = S Lambda S^-1 with Lambda in Jordan form.

    :ivar S: columns are the Jordan chains, block by block
    :type S: np.ndarray
    :ivar blocks: Jordan blocks in canonical order
    :type blocks: tuple of JordanBlock
    :ivar S_inv: inverse of S
    :type S_inv: np.ndarray
    :ivar source: the decomposed matrix M
    :type source: np.ndarray
    :ivar residual: ||S Lambda S^-1 - M||_F / ||M||_F
    :type residual: float
    """

    def __init__(self, S, blocks: Sequence[JordanBlock], S_inv, source, residual: float = None):
        self._S = as_array(S)
        self._blocks = tuple(JordanBlock(complex(b.eigenvalue), int(b.size)) for b in blocks)
        if sum(b.size for b in self._blocks) != 3:
            raise LfmValueError(f"Block sizes must sum to 3, got {self._blocks}")
        self._S_inv = as_array(S_inv)
        self._source = as_array(source)
        if residual is None:
            residual = frobenius(self.reconstruct() - self._source) / max(
                frobenius(self._source), _TINY
            )
        self._residual = float(residual)

    @property
    def S(self) -> np.ndarray:
        return self._S

    @property
    def blocks(self) -> Tuple[JordanBlock, ...]:
        return self._blocks

    @property
    def S_inv(self) -> np.ndarray:
        return self._S_inv

    @property
    def source(self) -> np.ndarray:
        return self._source

    @property
    def residual(self) -> float:
        return self._residual

    @property
    def lambda_matrix(self) -> np.ndarray:
        return jordan_matrix(self._blocks)

    @property
    def signature(self) -> Tuple[Tuple[int, complex], ...]:
        return tuple((b.size, b.eigenvalue) for b in self._blocks)

    @property
    def is_scalar(self) -> bool:
        """True when M is a multiple of the identity"""
        first = self._blocks[0].eigenvalue
        return all(b.size == 1 and b.eigenvalue == first for b in self._blocks)

    def head(self, index: int) -> np.ndarray:
        """Eigenvector that starts the chain of block ``index``"""
        start = sum(b.size for b in self._blocks[:index])
        return self._S[:, start]

    def reconstruct(self) -> np.ndarray:
        return as_array(self._S @ self.lambda_matrix @ self._S_inv)

    def __repr__(self):
        return f"JordanDecomposition(blocks={self._blocks}, residual={self._residual:.2e})"


def jordan_form(m, tolerances: Optional[Tolerances] = None) -> JordanDecomposition:
    """Jordan canonical form of an invertible 3x3 complex matrix.

    Block structure comes from numerical ranks of (m - lambda I)^k; blocks are
    ordered by descending size, then descending |lambda|, then descending
    arg lambda.

    Raises:
        LfmSingularMatrixError: m has a zero eigenvalue
        LfmIllConditionedError: the chains do not reconstruct m within tol_recon
    """
    tol = resolve(tolerances)
    m = as_array(m)
    det = complex(np.linalg.det(m))
    if abs(det) <= tol.singular * frobenius(m) ** 3:
        raise LfmSingularMatrixError("Matrix has a zero eigenvalue", determinant=det)

    collected = []
    for eigenvalue, multiplicity in eigenvalues3(m, tol):
        for chain in jordan_chains(m, eigenvalue, multiplicity, tol):
            collected.append((JordanBlock(eigenvalue, len(chain)), chain))

    modulus = max(max(abs(b.eigenvalue) for b, _ in collected), _TINY)
    collected.sort(key=lambda bc: (-bc[0].size,) + _eigen_key(bc[0].eigenvalue, modulus))
    blocks = [block for block, _ in collected]
    S = np.column_stack([v for _, chain in collected for v in chain])
    if S.shape != (3, 3):
        raise LfmIllConditionedError(f"Jordan chains span {S.shape[1]} vectors instead of 3")
    try:
        S_inv = mat_inverse(S, tol)
    except LfmSingularMatrixError as e:
        raise LfmIllConditionedError("Jordan chains are linearly dependent") from e

    decomp = JordanDecomposition(S, blocks, S_inv, m)
    identity_residual = frobenius(S @ S_inv - np.eye(3))
    if decomp.residual > tol.recon or identity_residual > tol.recon:
        raise LfmIllConditionedError(
            "Jordan decomposition does not reconstruct the matrix",
            residual=max(decomp.residual, identity_residual),
        )
    _logger.debug(f"Jordan form {decomp}")
    return decomp


def on_branch_cut(w: complex) -> bool:
    """True for w on the negative real axis, where the principal log jumps"""
    w = complex(w)
    return w.imag == 0 and w.real < 0


def principal_power(w: complex, t: float) -> complex:
    """w**t = exp(t Log w) with arg in (-pi, pi].

    Issues LfmBranchAmbiguityWarning for w on the negative real axis.

    Raises:
        LfmZeroEigenvalueError: w == 0
    """
    w = complex(w)
    if w == 0:
        raise LfmZeroEigenvalueError("Cannot take a fractional power of zero")
    if on_branch_cut(w):
        message = f"{w} lies on the principal branch cut; using arg = pi"
        _logger.warning(message)
        warnings.warn(message, LfmBranchAmbiguityWarning, stacklevel=2)
        log = complex(math.log(abs(w)), math.pi)
    else:
        log = cmath.log(w)
    return cmath.exp(t * log)


def unipotent_power_t(lam: complex, size: int, t: float) -> np.ndarray:
    """U^t for U = I + lam*N with N the nilpotent shift of the given size.

    (U^t)[i, i+k] = binom(t, k) lam^k, which at size 3 is
    [[1, t lam, lam^2 t(t-1)/2], [0, 1, t lam], [0, 0, 1]].
    """
    if size < 1:
        raise LfmValueError(f"Block size must be positive, got {size}")
    out = np.zeros((size, size), dtype=complex)
    for k in range(size):
        coeff = complex(binom(t, k)) * complex(lam) ** k
        for i in range(size - k):
            out[i, i + k] = coeff
    return out


def jordan_block_power_t(alpha: complex, size: int, t: float) -> np.ndarray:
    """J^t for the Jordan block J = alpha*I + N of the given size.

    J = alpha (I + N/alpha), so J^t = alpha^t U^t with lam = 1/alpha; at size 2
    this is [[alpha^t, t alpha^(t-1)], [0, alpha^t]].

    Raises:
        LfmZeroEigenvalueError: alpha == 0
    """
    scalar = principal_power(alpha, t)
    return scalar * unipotent_power_t(1 / complex(alpha), size, t)
