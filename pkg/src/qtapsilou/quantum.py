"""Dense real-amplitude simulation of the two-coin register.

A state is a 4-vector over the computational basis, indexed by
``b = 2*q1 + q0`` with qubit 0 the least significant (the top wire in the
usual circuit drawings).  Every gate the game needs is a real orthogonal
matrix, so amplitudes stay real throughout; complex support is deliberately
out of scope.

Tolerances used across the package:

* ``ATOL_ALGEBRA`` (1e-12) for algebraic identities such as orthogonality,
* ``ATOL_NORM`` (1e-9) for state normalization at API boundaries.
"""

from __future__ import annotations

import math
import secrets

import numpy as np

ATOL_ALGEBRA = 1e-12
ATOL_NORM = 1e-9

__all__ = [
    "ATOL_ALGEBRA",
    "ATOL_NORM",
    "Prng",
    "apply",
    "cnot",
    "draw_basis_index",
    "hadamard",
    "identity",
    "initial_state",
    "measure_probabilities",
    "pauli_x",
    "ry",
    "sample",
    "tensor",
]


def ry(theta: float) -> np.ndarray:
    """Rotation of one coin about the Bloch-sphere y axis by ``theta / 2``.

    Returns ``[[cos(t/2), -sin(t/2)], [sin(t/2), cos(t/2)]]``.
    """
    theta = float(theta)
    if not math.isfinite(theta):
        raise ValueError(f"rotation angle must be finite, got {theta!r}")
    c = math.cos(theta / 2.0)
    s = math.sin(theta / 2.0)
    return np.array([[c, -s], [s, c]])


def hadamard() -> np.ndarray:
    """The Hadamard transform, ``(1/sqrt 2) [[1, 1], [1, -1]]``."""
    h = 1.0 / math.sqrt(2.0)
    return np.array([[h, h], [h, -h]])


def pauli_x() -> np.ndarray:
    """Bit flip ``[[0, 1], [1, 0]]``."""
    return np.array([[0.0, 1.0], [1.0, 0.0]])


def identity() -> np.ndarray:
    """2x2 identity."""
    return np.eye(2)


def cnot() -> np.ndarray:
    """Controlled NOT with qubit 0 as control and qubit 1 as target.

    As a permutation of basis indices it swaps 1 and 3 and fixes 0 and 2.
    """
    return np.array(
        [
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 0.0, 0.0, 1.0],
            [0.0, 0.0, 1.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
        ]
    )


def tensor(high: np.ndarray, low: np.ndarray) -> np.ndarray:
    """Kronecker product of two one-qubit gates.

    ``high`` acts on qubit 1 (the most significant index bit) and ``low`` on
    qubit 0, so ``tensor(identity(), g)`` is block-diagonal with ``g`` in
    each block.
    """
    return np.kron(high, low)


def initial_state() -> np.ndarray:
    """The fixed starting state: one coin heads, one tails (basis index 1)."""
    return np.array([0.0, 1.0, 0.0, 0.0])


def _as_state(state: np.ndarray) -> np.ndarray:
    state = np.asarray(state, dtype=float)
    if state.shape != (4,):
        raise ValueError(f"expected a 4-amplitude state, got shape {state.shape}")
    if not np.all(np.isfinite(state)):
        raise ValueError("state amplitudes must be finite")
    norm = float(state @ state)
    if abs(norm - 1.0) > ATOL_NORM:
        raise ValueError(f"state is not normalized: |psi|^2 = {norm!r}")
    return state


def apply(gate: np.ndarray, state: np.ndarray) -> np.ndarray:
    """Apply a 4x4 gate to a normalized state; orthogonal gates keep the norm."""
    return np.asarray(gate, dtype=float) @ _as_state(state)


def measure_probabilities(state: np.ndarray) -> np.ndarray:
    """Squared amplitudes per basis index; sums to 1 within 1e-12."""
    state = _as_state(state)
    return state * state


class Prng:
    """Deterministic seeded random stream (PCG64).

    The same 64-bit seed yields the same double sequence on every platform.
    ``draws`` counts consumed doubles so a stream can be repositioned with
    :meth:`restore` (sessions persist seed + draws instead of raw generator
    state).  A ``Prng`` is single-owner: never share one between concurrent
    callers.
    """

    def __init__(self, seed: int):
        seed = int(seed)
        if not 0 <= seed < 2**64:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed!r}")
        self.seed = seed
        self.draws = 0
        self._gen = np.random.Generator(np.random.PCG64(seed))

    def uniform(self) -> float:
        """One double in [0, 1)."""
        self.draws += 1
        return float(self._gen.random())

    def uniforms(self, count: int) -> np.ndarray:
        """``count`` doubles in [0, 1); same stream as repeated uniform()."""
        count = int(count)
        if count < 1:
            raise ValueError(f"count must be >= 1, got {count}")
        self.draws += count
        return self._gen.random(count)

    @classmethod
    def from_entropy(cls) -> "Prng":
        return cls(secrets.randbits(64))

    @classmethod
    def restore(cls, seed: int, draws: int) -> "Prng":
        """Rebuild a stream positioned after ``draws`` consumed doubles."""
        draws = int(draws)
        if draws < 0:
            raise ValueError(f"draws must be >= 0, got {draws}")
        rng = cls(seed)
        if draws:
            rng.uniforms(draws)
        return rng

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"Prng(seed={self.seed}, draws={self.draws})"


def _cumulative_edges(probabilities: np.ndarray) -> np.ndarray:
    edges = np.cumsum(probabilities)
    edges[-1] = 1.0
    return edges


def draw_basis_index(state: np.ndarray, rng: Prng) -> int:
    """Sample one measurement outcome (a basis index) from ``state``."""
    edges = _cumulative_edges(measure_probabilities(state))
    return int(np.searchsorted(edges, rng.uniform(), side="right"))


def sample(state: np.ndarray, rng: Prng, shots: int) -> np.ndarray:
    """Counts per basis index over ``shots`` independent measurements.

    Deterministic given the rng seed; counts always sum to ``shots``.
    """
    shots = int(shots)
    if shots < 1:
        raise ValueError(f"shots must be >= 1, got {shots}")
    edges = _cumulative_edges(measure_probabilities(state))
    indices = np.searchsorted(edges, rng.uniforms(shots), side="right")
    return np.bincount(indices, minlength=4)
