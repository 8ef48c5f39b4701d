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

Geometry of the characteristic domains (C^2, the half space Re z1 > 0 and the
Siegel half space Re z1 > |z2|^2) and of the unit ball, with the Cayley map
and the square root intertwiners used by the analytic model.

Every point function accepts a single point of shape (2,) or a batch of shape
(n, 2) and returns the same shape.
"""
import logging
from typing import Optional

import numpy as np

from lfmpy.enums import DomainKind
from lfmpy.lfmexceptions import LfmBranchCutError, LfmPoleAtPointError, LfmPreconditionError, LfmValueError
from lfmpy.tolerances import Tolerances, resolve

_logger = logging.getLogger(__name__)
_logger.addHandler(logging.NullHandler())


def _points(z) -> np.ndarray:
    z = np.asarray(z, dtype=complex)
    if z.shape[-1:] != (2,) or z.ndim > 2:
        raise LfmValueError(f"Expected points of shape (2,) or (n, 2), got {z.shape}")
    return z


def _margin(kind: DomainKind, z: np.ndarray) -> np.ndarray:
    """Positive exactly inside the domain"""
    z1, z2 = z[..., 0], z[..., 1]
    if kind == DomainKind.WholeSpace:
        return np.full(z1.shape, np.inf)
    if kind == DomainKind.HalfSpace:
        return z1.real
    if kind == DomainKind.SiegelHalfSpace:
        return z1.real - np.abs(z2) ** 2
    if kind == DomainKind.UnitBall:
        return 1 - np.abs(z1) ** 2 - np.abs(z2) ** 2
    raise LfmValueError(f"Unknown domain {kind}")


def contains(kind: DomainKind, z):
    """Strict membership, no tolerance"""
    result = _margin(DomainKind(kind), _points(z)) > 0
    return bool(result) if result.ndim == 0 else result


def contains_closed(kind: DomainKind, z, tol: float = 1e-9):
    """Membership in the closure, allowing the defining inequality to fail by ``tol``"""
    result = _margin(DomainKind(kind), _points(z)) >= -tol
    return bool(result) if result.ndim == 0 else result


def convexity_witness(kind: DomainKind, u, w, t: float) -> bool:
    """Whether t u + (1 - t) w lies in the domain; always true for convex domains.

    Raises:
        LfmPreconditionError: kind is not a half space, t is outside [0, 1] or
            u, w are not in the domain
    """
    kind = DomainKind(kind)
    if kind not in (DomainKind.HalfSpace, DomainKind.SiegelHalfSpace):
        raise LfmPreconditionError(f"Convexity witness is defined for half spaces, not {kind}")
    if not 0 <= t <= 1:
        raise LfmPreconditionError(f"t must lie in [0, 1], got {t}")
    u, w = _points(u), _points(w)
    if u.ndim != 1 or w.ndim != 1:
        raise LfmPreconditionError("Convexity witness takes single points")
    if not (contains(kind, u) and contains(kind, w)):
        raise LfmPreconditionError(f"Both points must lie in {kind.label}")
    return contains(kind, t * u + (1 - t) * w)


def on_negative_real_axis(w) -> np.ndarray:
    w = np.asarray(w, dtype=complex)
    return (w.imag == 0) & (w.real < 0)


def principal_sqrt(w):
    """Square root with arg in (-pi/2, pi/2], so Re sqrt(w) >= 0.

    Raises:
        LfmBranchCutError: w on the negative real axis, where the root jumps
    """
    w = np.asarray(w, dtype=complex)
    cut = on_negative_real_axis(w)
    if np.any(cut):
        value = w if w.ndim == 0 else w[cut][0]
        raise LfmBranchCutError(f"{complex(value)} lies on the branch cut of the square root", value=complex(value))
    root = np.sqrt(w)
    return complex(root) if root.ndim == 0 else root


def _guard(den: np.ndarray, size: np.ndarray, z: np.ndarray, tol: Tolerances, name: str):
    poles = np.abs(den) <= tol.pole * (np.abs(size) + 1)
    if np.any(poles):
        point = z if z.ndim == 1 else z[np.argmax(poles)]
        raise LfmPoleAtPointError(f"{name} has a pole at {point}", point=point)


def _stack(first, second) -> np.ndarray:
    return np.stack([first, second], axis=-1)


def cayley(z, tolerances: Optional[Tolerances] = None) -> np.ndarray:
    """Psi(z) = ((1 + z1) / (1 - z1), z2 / (1 - z1)), mapping the ball onto the Siegel half space

    Raises:
        LfmPoleAtPointError: z1 = 1
    """
    z = _points(z)
    z1, z2 = z[..., 0], z[..., 1]
    den = 1 - z1
    _guard(den, z1, z, resolve(tolerances), "Cayley map")
    return _stack((1 + z1) / den, z2 / den)


def cayley_inv(z, tolerances: Optional[Tolerances] = None) -> np.ndarray:
    """Psi^-1(z) = ((z1 - 1) / (z1 + 1), 2 z2 / (z1 + 1))

    Raises:
        LfmPoleAtPointError: z1 = -1
    """
    z = _points(z)
    z1, z2 = z[..., 0], z[..., 1]
    den = z1 + 1
    _guard(den, z1, z, resolve(tolerances), "Inverse Cayley map")
    return _stack((z1 - 1) / den, 2 * z2 / den)


def omega(z) -> np.ndarray:
    """omega(z) = (sqrt(2 z1), sqrt(z2)) on principal branches

    Raises:
        LfmBranchCutError: Re z1 <= 0, or z2 on the negative real axis
    """
    z = _points(z)
    z1, z2 = z[..., 0], z[..., 1]
    if np.any(z1.real <= 0):
        bad = z1 if z1.ndim == 0 else z1[z1.real <= 0][0]
        raise LfmBranchCutError(f"omega needs Re z1 > 0, got z1 = {complex(bad)}", value=complex(bad))
    return _stack(principal_sqrt(2 * z1), principal_sqrt(z2))


def omega_inv(z) -> np.ndarray:
    z = _points(z)
    return _stack(z[..., 0] ** 2 / 2, z[..., 1] ** 2)


def sigma(z, tolerances: Optional[Tolerances] = None) -> np.ndarray:
    """sigma(z) = (sqrt(2 (z1 + 1) / (1 - z1)), sqrt(z2 / (1 - z1))), which is omega o Psi

    Raises:
        LfmPoleAtPointError: z1 = 1
        LfmBranchCutError: a radicand on the negative real axis
    """
    z = _points(z)
    z1, z2 = z[..., 0], z[..., 1]
    den = 1 - z1
    _guard(den, z1, z, resolve(tolerances), "sigma")
    return _stack(principal_sqrt(2 * (z1 + 1) / den), principal_sqrt(z2 / den))


def sigma_inv(z, tolerances: Optional[Tolerances] = None) -> np.ndarray:
    """sigma^-1(z) = ((z1^2 - 2) / (z1^2 + 2), 4 z2^2 / (z1^2 + 2))

    Raises:
        LfmPoleAtPointError: z1^2 = -2
    """
    z = _points(z)
    z1, z2 = z[..., 0], z[..., 1]
    square = z1 ** 2
    den = square + 2
    _guard(den, square, z, resolve(tolerances), "sigma inverse")
    return _stack((square - 2) / den, 4 * z2 ** 2 / den)


def _complex_normal(rng: np.random.Generator, shape) -> np.ndarray:
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def sample_ball(n: int, seed: int) -> np.ndarray:
    """n points uniform in the unit ball, deterministic in ``seed``.

    Each coordinate is drawn uniformly from the unit disk and pairs outside the
    ball are rejected.
    """
    if n < 0:
        raise LfmValueError(f"Sample count must be non-negative, got {n}")
    rng = np.random.default_rng(seed)
    accepted = []
    count = 0
    while count < n:
        batch = 2 * (n - count) + 16
        radius = np.sqrt(rng.random((batch, 2)))
        angle = rng.uniform(0, 2 * np.pi, (batch, 2))
        z = radius * np.exp(1j * angle)
        z = z[np.sum(np.abs(z) ** 2, axis=1) < 1]
        accepted.append(z)
        count += len(z)
    return np.concatenate(accepted)[:n] if accepted else np.zeros((0, 2), dtype=complex)


def sample_domain(kind: DomainKind, n: int, seed: int) -> np.ndarray:
    """n points strictly inside a domain, deterministic in ``seed``"""
    kind = DomainKind(kind)
    if kind == DomainKind.UnitBall:
        return sample_ball(n, seed)
    rng = np.random.default_rng(seed)
    z2 = _complex_normal(rng, n)
    if kind == DomainKind.WholeSpace:
        return _stack(_complex_normal(rng, n), z2)
    floor = np.abs(z2) ** 2 if kind == DomainKind.SiegelHalfSpace else 0
    real = floor + rng.exponential(1.0, n) + 1e-6
    return _stack(real + 1j * 2 * rng.standard_normal(n), z2)
