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

Linear fractional models sigma o phi = Phi o sigma for self-maps of the ball:
classification by the Denjoy-Wolff point and its Jordan block, and the
analytic pathway phi = sigma^-1 o Phi o sigma through the Siegel half space
with a Heisenberg translation Phi.
"""
import logging
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from lfmpy import domains
from lfmpy.enums import DomainKind, FixedPointLocation, ModelKind
from lfmpy.entitybase import array_to_pairs
from lfmpy.lfm import (
    FixedPoint,
    LinearFractionalMap,
    ball_norms,
    compose,
    eval_,
    eval_many,
    fixed_points,
    from_matrix,
    inverse,
    self_map_check,
)
from lfmpy.lfmexceptions import (
    LfmAmbiguousDWError,
    LfmNoConvergenceError,
    LfmPreconditionError,
)
from lfmpy.matalg import JordanDecomposition, as_array, frobenius, jordan_form, unipotent_power_t
from lfmpy.semigroup import phi_t
from lfmpy.tolerances import Tolerances, resolve

_logger = logging.getLogger(__name__)
_logger.addHandler(logging.NullHandler())

EXAMPLE1_MATRIX = ((1, 2, 1), (-2, 2, 2), (-1, 2, 3))
EXAMPLE2_TRANSLATION = (0.5, 0.25)

_UNITARY_TOL = 1e-10


def _fmt(value: complex) -> str:
    value = complex(round(value.real, 12) + 0.0, round(value.imag, 12) + 0.0)
    if value.imag == 0:
        return f"{value.real:.6g}"
    return f"{value.real:.6g}{value.imag:+.6g}i"


def _fmt_point(point: np.ndarray) -> str:
    return "(" + ",".join(_fmt(c) for c in point) + ")"


class ModelClass:
    """Classification of a self-map of the ball and its linear fractional model.

    :ivar dw_point: the Denjoy-Wolff point
    :type dw_point: FixedPoint
    :ivar location: Interior or Boundary
    :type location: FixedPointLocation
    :ivar multiplicity: size of the Jordan block carrying the Denjoy-Wolff eigenvalue
    :type multiplicity: int
    :ivar domain: characteristic domain of the model
    :type domain: DomainKind
    :ivar kind: shape of Phi
    :type kind: ModelKind
    :ivar sigma: intertwining map, the map of S^-1
    :type sigma: LinearFractionalMap
    :ivar Phi: model map, the map of Lambda
    :type Phi: LinearFractionalMap
    :ivar decomposition: Jordan decomposition of m_phi
    :type decomposition: JordanDecomposition
    :ivar standardized_lambda: 1/alpha for a Denjoy-Wolff block of size > 1
    :type standardized_lambda: complex
    :ivar is_automorphism: phi and its inverse both passed the sampled self-map check
    :type is_automorphism: bool
    """

    def __init__(
        self,
        dw_point: FixedPoint,
        multiplicity: int,
        domain: DomainKind,
        kind: ModelKind,
        sigma: LinearFractionalMap,
        Phi: LinearFractionalMap,
        decomposition: JordanDecomposition,
        fixed_points: Sequence[FixedPoint] = (),
        is_automorphism: bool = False,
    ):
        self._dw_point = dw_point
        self._multiplicity = int(multiplicity)
        self._domain = DomainKind(domain)
        self._kind = ModelKind(kind)
        self._sigma = sigma
        self._Phi = Phi
        self._decomposition = decomposition
        self._fixed_points = tuple(fixed_points)
        self._is_automorphism = bool(is_automorphism)

    @property
    def dw_point(self) -> FixedPoint:
        return self._dw_point

    @property
    def location(self) -> FixedPointLocation:
        return self._dw_point.classification

    @property
    def multiplicity(self) -> int:
        return self._multiplicity

    @property
    def domain(self) -> DomainKind:
        return self._domain

    @property
    def kind(self) -> ModelKind:
        return self._kind

    @property
    def sigma(self) -> LinearFractionalMap:
        return self._sigma

    @property
    def Phi(self) -> LinearFractionalMap:
        return self._Phi

    @property
    def decomposition(self) -> JordanDecomposition:
        return self._decomposition

    @property
    def fixed_points(self) -> Tuple[FixedPoint, ...]:
        return self._fixed_points

    @property
    def is_automorphism(self) -> bool:
        return self._is_automorphism

    @property
    def eigenvalues(self) -> List[complex]:
        return [b.eigenvalue for b in self._decomposition.blocks]

    @property
    def standardized_lambda(self) -> Optional[complex]:
        if self._multiplicity < 2:
            return None
        return 1 / self._dw_point.eigenvalue

    @property
    def summary(self) -> str:
        """One line description, e.g.
        'boundary DW (1,0), multiplicity 3, Heisenberg-type model, λ = 0.5 after standardizing'
        """
        parts = [
            f"{self.location.value.lower()} DW {_fmt_point(self._dw_point.location)}",
            f"multiplicity {self._multiplicity}",
            self._kind.description,
        ]
        if self.standardized_lambda is not None:
            parts.append(f"λ = {_fmt(self.standardized_lambda)} after standardizing")
        if self._is_automorphism:
            parts.append("automorphism of the ball")
        return ", ".join(parts)

    def to_dict(self) -> dict:
        lam = self.standardized_lambda
        return {
            "summary": self.summary,
            "dw_point": self._dw_point.to_dict(),
            "location": self.location.value,
            "multiplicity": self._multiplicity,
            "domain": self._domain.value,
            "kind": self._kind.value,
            "eigenvalues": [
                {"eigenvalue": array_to_pairs(b.eigenvalue), "block_size": b.size}
                for b in self._decomposition.blocks
            ],
            "standardized_lambda": None if lam is None else array_to_pairs(lam),
            "sigma": self._sigma.matrix.to_list(),
            "Phi": self._Phi.matrix.to_list(),
            "is_automorphism": self._is_automorphism,
            "fixed_points": [p.to_dict() for p in self._fixed_points],
        }

    def __repr__(self):
        return f"ModelClass({self.summary})"


def _dehomogenize(v: np.ndarray) -> Optional[np.ndarray]:
    if abs(v[2]) <= 1e-300:
        return None
    return v[:2] / v[2]


def _scaled_power(decomp: JordanDecomposition, n: int) -> np.ndarray:
    """Lambda^n divided by rho^n, rho the spectral radius"""
    rho = max(abs(b.eigenvalue) for b in decomp.blocks)
    out = np.zeros((3, 3), dtype=complex)
    start = 0
    for block in decomp.blocks:
        stop = start + block.size
        scalar = (block.eigenvalue / rho) ** n
        out[start:stop, start:stop] = scalar * unipotent_power_t(1 / block.eigenvalue, block.size, n)
        start = stop
    return out


def orbit_limit(decomp: JordanDecomposition, tolerances: Optional[Tolerances] = None) -> Tuple[np.ndarray, int]:
    """Limit of phi_n(0), following n = 2, 4, 8, ...

    phi_n(0) is read off S Lambda^n S^-1 e3 with Lambda^n scaled by the
    spectral radius, so large n neither overflows nor cancels. Doubling stops
    when consecutive points differ by less than the configured step; parabolic
    orbits approach their limit like 1/n and need n near 1e10.

    Returns:
        (limit, iterations) -- the limit point and the last iterate count n

    Raises:
        LfmNoConvergenceError: no convergence within the doubling cap
    """
    tol = resolve(tolerances)
    origin_image = decomp.S_inv[:, 2]
    point = _dehomogenize(decomp.source[:, 2])
    step = np.inf
    for k in range(1, tol.dw_max_doublings + 1):
        n = 2 ** k
        following = _dehomogenize(decomp.S @ (_scaled_power(decomp, n) @ origin_image))
        if point is None or following is None:
            raise LfmNoConvergenceError("Orbit of the origin reached infinity", iterations=n, last_step=step)
        step = float(np.linalg.norm(following - point))
        point = following
        _logger.debug(f"phi_{n}(0) = {point}, step {step:.3e}")
        if step < tol.dw_step:
            return point, n
    raise LfmNoConvergenceError(
        "Orbit of the origin did not settle", iterations=2 ** tol.dw_max_doublings, last_step=step
    )


def _select_dw(
    points: List[Tuple[int, FixedPoint]], decomp: JordanDecomposition, tol: Tolerances
) -> Tuple[int, FixedPoint]:
    interior = [(i, p) for i, p in points if p.classification == FixedPointLocation.Interior]
    if len(interior) == 1:
        return interior[0]
    if len(interior) > 1:
        raise LfmAmbiguousDWError(
            "Several interior fixed points", candidates=[p.location for _, p in interior]
        )

    limit, iterations = orbit_limit(decomp, tol)
    finite = [(i, p) for i, p in points if not p.is_at_infinity]
    matches = [(i, p) for i, p in finite if np.linalg.norm(p.location - limit) <= tol.dw_match]
    if not matches:
        raise LfmNoConvergenceError(
            f"Orbit limit {limit} is not a fixed point", iterations=iterations, last_step=None
        )
    if len(matches) > 1:
        raise LfmAmbiguousDWError(
            f"Several fixed points near the orbit limit {limit}",
            candidates=[p.location for _, p in matches],
        )
    return matches[0]


_MODELS = {
    1: (ModelKind.Diagonal, DomainKind.SiegelHalfSpace),
    2: (ModelKind.HalfSpaceType, DomainKind.HalfSpace),
    3: (ModelKind.HeisenbergType, DomainKind.SiegelHalfSpace),
}


def classify(
    phi: LinearFractionalMap,
    n_samples: Optional[int] = None,
    seed: Optional[int] = None,
    tolerances: Optional[Tolerances] = None,
) -> ModelClass:
    """Finds the Denjoy-Wolff point of a self-map and its model (sigma, Phi).

    An interior fixed point is the Denjoy-Wolff point. Otherwise the orbit of
    the origin is followed to its limit, which must match exactly one finite
    fixed point. The Jordan block of that point's eigenvalue decides the model:
    size 1 a diagonal model on the Siegel half space, size 2 a half space
    model, size 3 a Heisenberg-type model on the Siegel half space. An interior
    point gives a linear model on all of C^2.

    Arguments:
        phi {LinearFractionalMap} -- an invertible self-map of the ball other
            than the identity

    Keyword Arguments:
        n_samples {int} -- samples for the automorphism test
        seed {int} -- seed for the automorphism test

    Raises:
        LfmSingularMatrixError: m_phi is singular
        LfmDegenerateAllFixedError: phi is the identity
        LfmNoConvergenceError: the orbit of the origin did not settle on a fixed point
        LfmAmbiguousDWError: more than one fixed point qualifies
    """
    tol = resolve(tolerances)
    decomp = jordan_form(phi.matrix.m, tol)
    points = fixed_points(phi, decomp, tol)
    index, dw = _select_dw(list(enumerate(points)), decomp, tol)
    multiplicity = decomp.blocks[index].size
    if dw.classification == FixedPointLocation.Interior:
        kind, domain = ModelKind.Linear, DomainKind.WholeSpace
    else:
        kind, domain = _MODELS[multiplicity]
    result = ModelClass(
        dw,
        multiplicity,
        domain,
        kind,
        sigma=from_matrix(decomp.S_inv, tol),
        Phi=from_matrix(decomp.lambda_matrix, tol),
        decomposition=decomp,
        fixed_points=points,
        is_automorphism=is_automorphism(phi, n_samples, seed, tol),
    )
    _logger.info(f"Classified: {result.summary}")
    return result


def is_automorphism(
    phi: LinearFractionalMap,
    n_samples: Optional[int] = None,
    seed: Optional[int] = None,
    tolerances: Optional[Tolerances] = None,
) -> bool:
    """True when both phi and its inverse pass the sampled self-map check"""
    tol = resolve(tolerances)
    if not self_map_check(phi, n_samples, seed, tol).passed:
        return False
    return self_map_check(inverse(phi, tol), n_samples, seed, tol).passed


def intertwining_residual(
    model_class: ModelClass,
    phi: LinearFractionalMap,
    n_samples: int = 100,
    seed: Optional[int] = None,
    n_iterates: int = 1,
    tolerances: Optional[Tolerances] = None,
) -> float:
    """max |sigma(phi_n(z)) - Phi_n(sigma(z))| / max(1, |Phi_n(sigma(z))|) for n <= n_iterates.

    Samples where sigma has a pole are skipped.
    """
    tol = resolve(tolerances)
    seed = tol.seed if seed is None else seed
    zs = domains.sample_ball(n_samples, seed)
    sigma, Phi = model_class.sigma, model_class.Phi
    moved, modelled = zs, eval_many(sigma, zs, tol)
    worst, skipped = 0.0, 0
    for _ in range(n_iterates):
        moved = eval_many(phi, moved, tol)
        modelled = eval_many(Phi, modelled, tol)
        lhs = eval_many(sigma, moved, tol)
        gap = np.linalg.norm(lhs - modelled, axis=1) / np.maximum(1, np.linalg.norm(modelled, axis=1))
        valid = np.isfinite(gap)
        skipped += int(np.sum(~valid))
        if np.any(valid):
            worst = max(worst, float(np.max(gap[valid])))
    if skipped:
        _logger.warning(f"Skipped {skipped} samples at poles of sigma")
    return worst


def heisenberg(b) -> LinearFractionalMap:
    """The Heisenberg translation h_b(z) = Az + b with A = [[1, 2 conj(b2)], [0, 1]]"""
    b = as_array(b, (2,))
    return LinearFractionalMap([[1, 2 * np.conj(b[1])], [0, 1]], b, np.zeros(2), 1)


def unitary_map(U) -> LinearFractionalMap:
    """The ball automorphism z -> Uz

    Raises:
        LfmPreconditionError: U is not unitary
    """
    U = as_array(U, (2, 2))
    if frobenius(U.conj().T @ U - np.eye(2)) > _UNITARY_TOL:
        raise LfmPreconditionError("Matrix is not unitary")
    return LinearFractionalMap(U, np.zeros(2), np.zeros(2), 1)


def conjugate(
    phi: LinearFractionalMap, psi: LinearFractionalMap, tolerances: Optional[Tolerances] = None
) -> LinearFractionalMap:
    """psi o phi o psi^-1"""
    return compose(psi, compose(phi, inverse(psi, tolerances), tolerances), tolerances)


def example1_map() -> LinearFractionalMap:
    """phi(z) = (z1 + 2 z2 + 1, -2 z1 + 2 z2 + 2) / (-z1 + 2 z2 + 3), fixing (1, 0) with multiplicity 3"""
    return from_matrix(EXAMPLE1_MATRIX)


def example1_matrix_t(t: float) -> np.ndarray:
    """Closed form of m_{phi_t} for example1_map, up to scale"""
    return as_array(
        [
            [(2 - t * t) / 2, t, t * t / 2],
            [-t, 1, t],
            [-t * t / 2, t, (t * t + 2) / 2],
        ]
    )


class AnalyticModelMap:
    """phi = sigma^-1 o Phi o sigma for a model map Phi on the Siegel half space.

    The intertwining defaults to the square root map sigma of the ball into the
    Siegel half space; any pair of mutually inverse callables can be given.
    """

    def __init__(
        self,
        Phi: LinearFractionalMap,
        sigma: Callable = domains.sigma,
        sigma_inv: Callable = domains.sigma_inv,
    ):
        self._Phi = Phi
        self._sigma = sigma
        self._sigma_inv = sigma_inv
        self._decomposition = None

    @property
    def Phi(self) -> LinearFractionalMap:
        return self._Phi

    @property
    def decomposition(self) -> JordanDecomposition:
        if self._decomposition is None:
            self._decomposition = jordan_form(self._Phi.matrix.m)
        return self._decomposition

    def model_image(self, z) -> np.ndarray:
        """Phi(sigma(z))"""
        return eval_(self._Phi, self._sigma(z))

    def __call__(self, z) -> np.ndarray:
        return self._sigma_inv(self.model_image(z))

    def at(self, t: float) -> "AnalyticModelMap":
        """The same pathway with Phi replaced by Phi_t"""
        if t < 0:
            raise LfmPreconditionError(f"The analytic semigroup is defined for t >= 0, got {t}")
        element = phi_t(self.decomposition, t)
        return AnalyticModelMap(element.map, self._sigma, self._sigma_inv)

    def ball_margin(self, zs) -> np.ndarray:
        """1 - |phi(z)|^2 read off the Siegel half space.

        With y = omega^-1(Phi(sigma(z))) this is 4 (Re y1 - |y2|^2) / |y1 + 1|^2,
        negative exactly when Phi(sigma(z)) has left omega of the Siegel half space.
        """
        y = domains.omega_inv(self.model_image(zs))
        y1, y2 = y[..., 0], y[..., 1]
        return 4 * (y1.real - np.abs(y2) ** 2) / np.abs(y1 + 1) ** 2

    def exit_mask(self, zs, margin: float = 1e-9) -> np.ndarray:
        """Samples whose image lies outside the closed ball by more than margin"""
        return ball_norms(self(zs)) > 1 + margin

    def ball_exits(self, n_samples: int, seed: int, margin: float = 1e-9) -> int:
        return int(np.sum(self.exit_mask(domains.sample_ball(n_samples, seed), margin)))

    def __repr__(self):
        return f"AnalyticModelMap(Phi={self._Phi!r})"


def example2_map() -> AnalyticModelMap:
    return AnalyticModelMap(heisenberg(EXAMPLE2_TRANSLATION))


def _check_ball(z) -> np.ndarray:
    z = np.asarray(z, dtype=complex)
    if not np.all(domains.contains(DomainKind.UnitBall, z)):
        raise LfmPreconditionError("Points must lie in the open unit ball")
    return z


def analytic_phi(z) -> np.ndarray:
    """sigma^-1(Phi(sigma(z))) with Phi the Heisenberg translation by (1/2, 1/4)"""
    return example2_map()(_check_ball(z))


def analytic_phi_t(t: float, z) -> np.ndarray:
    """sigma^-1(Phi_t(sigma(z))) with Phi_t the semigroup of the translation by (1/2, 1/4)"""
    return example2_map().at(t)(_check_ball(z))


def example2_model_t(t: float) -> LinearFractionalMap:
    """Phi_t(z) = (z1 + (t/2) z2 + t(t + 7)/16, z2 + t/4)"""
    return LinearFractionalMap([[1, t / 2], [0, 1]], [t * (t + 7) / 16, t / 4], np.zeros(2), 1)


def example2_closed_form(t: float, z, branch: str = "sigma") -> np.ndarray:
    """phi_t = (A/B, C/D) written with the radicals sqrt(2 z2 (z1 + 1)),
    sqrt(2 (1 - z1^2)) and sqrt(z2 (1 - z1)).

    With branch "sigma" the radicals take the signs induced by sigma, which
    agrees with the composed pathway everywhere in the ball. With branch
    "principal" they are principal roots of the radicands, which agrees when
    Re z2 >= 0.
    """
    z = np.asarray(z, dtype=complex)
    z1, z2 = z[..., 0], z[..., 1]
    if branch == "sigma":
        u, v = np.moveaxis(domains.sigma(z), -1, 0)
        r_a, r_b, r_c = (1 - z1) * u * v, (1 - z1) * u, (1 - z1) * v
    elif branch == "principal":
        r_a = domains.principal_sqrt(2 * z2 * (z1 + 1))
        r_b = domains.principal_sqrt(2 * (1 - z1 * z1))
        r_c = domains.principal_sqrt(z2 * (1 - z1))
    else:
        raise LfmPreconditionError(f"Unknown branch {branch!r}, expected 'sigma' or 'principal'")
    s = t + 7
    common = (
        64 * t * t * z2
        + t * t * s * s * (1 - z1)
        + 256 * t * r_a
        + 32 * t * s * r_b
        + 16 * t * t * s * r_c
    )
    A = 1024 * z1 + common
    B = 1024 + common
    C = 64 * t * t * (1 - z1) + 1024 * z2 + 512 * t * r_c
    return np.stack([A / B, C / B], axis=-1)
