"""Named reference states used by the CLI and the test batteries."""

from __future__ import annotations

import numpy as np

from .linalg import DensityMatrix, PureState, SystemShape, haar_random_pure

QUBIT_PAIR = SystemShape((2, 2))


def bell() -> PureState:
    """The (|00> + |11>)/sqrt(2) qubit pair."""
    vec = np.zeros(4, dtype=np.complex128)
    vec[0] = vec[3] = 1.0 / np.sqrt(2.0)
    return PureState(vec, QUBIT_PAIR)


def singlet() -> PureState:
    """The antisymmetric qubit pair (|01> - |10>)/sqrt(2)."""
    vec = np.zeros(4, dtype=np.complex128)
    vec[1] = 1.0 / np.sqrt(2.0)
    vec[2] = -vec[1]
    return PureState(vec, QUBIT_PAIR)


def max_entangled(d: int) -> PureState:
    """Maximally entangled d x d state, equal superposition of |ii>."""
    if d < 2:
        raise ValueError("local dimension must be >= 2")
    vec = np.zeros(d * d, dtype=np.complex128)
    vec[:: d + 1] = 1.0 / np.sqrt(d)
    return PureState(vec, SystemShape((d, d)))


def ghz(n: int) -> PureState:
    """n-qubit GHZ state (|0...0> + |1...1>)/sqrt(2)."""
    if n < 2:
        raise ValueError("need at least 2 qubits")
    vec = np.zeros(2**n, dtype=np.complex128)
    vec[0] = vec[-1] = 1.0 / np.sqrt(2.0)
    return PureState(vec, SystemShape((2,) * n))


def w_state(n: int) -> PureState:
    """n-qubit W state, equal superposition of single-excitation terms."""
    if n < 2:
        raise ValueError("need at least 2 qubits")
    vec = np.zeros(2**n, dtype=np.complex128)
    for i in range(n):
        vec[1 << i] = 1.0 / np.sqrt(n)
    return PureState(vec, SystemShape((2,) * n))


def werner(p: float) -> DensityMatrix:
    """Singlet fraction p mixed with white noise on a qubit pair.

    Physical for p in [-1/3, 1]; concurrence max((3p - 1)/2, 0).
    """
    if not -1.0 / 3.0 <= p <= 1.0:
        raise ValueError(f"weight {p} leaves the physical range [-1/3, 1]")
    s = singlet().vector
    mat = p * np.outer(s, s.conj()) + (1.0 - p) / 4.0 * np.eye(4)
    return DensityMatrix(mat, QUBIT_PAIR)


def maximally_mixed(shape: SystemShape) -> DensityMatrix:
    """Identity over the total dimension."""
    d = shape.total_dim
    return DensityMatrix(np.eye(d, dtype=np.complex128) / d, shape)


def random_pure(shape: SystemShape, seed: int = 0) -> PureState:
    """Seeded Haar-random pure state."""
    return haar_random_pure(shape, np.random.default_rng(seed))
