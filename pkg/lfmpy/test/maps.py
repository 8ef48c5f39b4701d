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

Self-maps of the ball with known Jordan structure, shared by the tests.
"""
import numpy as np

# phi(z) = ((1 + 3 z1) / (3 + z1), z2 / (3 + z1)); eigenvalues 4, 2, 1
HYPERBOLIC = np.array([[3, 0, 1], [0, 1, 0], [1, 0, 3]], dtype=complex)


def parabolic(a: complex = 1) -> np.ndarray:
    """phi(z) = ((1 + z1) / (3 - z1), a z2 / (3 - z1)), a self-map for |a| <= 2.

    Eigenvalue 2 carries a block of size 2; a = 2 adds a third copy of 2 in a
    block of size 1.
    """
    return np.array([[1, 0, 1], [0, a, 0], [-1, 0, 3]], dtype=complex)


def contraction(a: complex, b: complex) -> np.ndarray:
    """phi(z) = (a z1, b z2)"""
    return np.diag([a, b, 1]).astype(complex)


EXAMPLE1 = np.array([[1, 2, 1], [-2, 2, 2], [-1, 2, 3]], dtype=complex)

MODELS = {
    "example1": EXAMPLE1,
    "hyperbolic": HYPERBOLIC,
    "parabolic": parabolic(1),
    "parabolic_derogatory": parabolic(2),
    "contraction": contraction(0.5, 1 / 3),
    "scalar_contraction": contraction(0.5, 0.5),
}


def random_unitary(rng: np.random.Generator, size: int = 2) -> np.ndarray:
    g = rng.standard_normal((size, size)) + 1j * rng.standard_normal((size, size))
    q, r = np.linalg.qr(g)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def rotate(m: np.ndarray, u: np.ndarray) -> np.ndarray:
    """Associated matrix of psi o phi o psi^-1 for psi(z) = Uz"""
    block = np.eye(3, dtype=complex)
    block[:2, :2] = u
    return block @ m @ block.conj().T


def random_self_maps(count: int, seed: int):
    """(name, matrix) pairs: the model maps rotated by random unitaries"""
    rng = np.random.default_rng(seed)
    names = sorted(MODELS)
    for i in range(count):
        name = names[i % len(names)]
        yield name, rotate(MODELS[name], random_unitary(rng))


def well_conditioned(rng: np.random.Generator, size: int = 3) -> np.ndarray:
    """U diag(s) V with unitary U, V and singular values in [0.5, 2]"""
    s = rng.uniform(0.5, 2, size)
    return random_unitary(rng, size) @ np.diag(s) @ random_unitary(rng, size)


def separated_eigenvalues(rng: np.random.Generator, count: int = 3, gap: float = 0.1) -> np.ndarray:
    """Eigenvalues of modulus in [0.5, 2], pairwise at least ``gap`` apart"""
    while True:
        values = rng.uniform(0.5, 2, count) * np.exp(1j * rng.uniform(-np.pi, np.pi, count))
        if all(abs(a - b) >= gap for i, a in enumerate(values) for b in values[i + 1:]):
            return values
