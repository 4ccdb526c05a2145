"""Walk engine: quantum state evolution and measurement, plus the
classical random-walk baseline used as a comparison oracle.

Amplitude layout is coin-major: index = coin * n + vertex, so the state
vector is m stacked position subvectors of length n.
"""

from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from .errors import PreconditionError
from .linalg import ComplexMatrix, Tolerance, DEFAULT_TOL, as_matrix, max_norm

__all__ = [
    "WalkerState",
    "ProbabilityVector",
    "basis_state",
    "step",
    "evolve",
    "measure_position",
    "classical_transition",
    "classical_walk",
]


@dataclass(frozen=True)
class WalkerState:
    """Normalized length-nm amplitude vector over coin (x) position.

    Construction rejects unnormalized input instead of silently fixing it.
    """

    m: int
    n: int
    amplitudes: NDArray[np.complex128]

    def __post_init__(self):
        if self.m < 1 or self.n < 1:
            raise PreconditionError("state dimensions must be positive")
        amps = np.asarray(self.amplitudes, dtype=np.complex128).reshape(-1)
        if amps.shape[0] != self.m * self.n:
            raise PreconditionError(
                f"expected {self.m * self.n} amplitudes, got {amps.shape[0]}")
        if not np.all(np.isfinite(amps)):
            raise PreconditionError("amplitudes contain NaN or Inf")
        norm_sq = float(np.sum(np.abs(amps) ** 2))
        if abs(norm_sq - 1.0) > DEFAULT_TOL.abs_eps:
            raise PreconditionError(
                f"state is not normalized (|psi|^2 = {norm_sq!r}); "
                "renormalize explicitly if that is intended")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    def subvector(self, coin: int) -> NDArray[np.complex128]:
        """Position subvector for one coin state."""
        if not 0 <= coin < self.m:
            raise PreconditionError(f"coin index {coin} out of range")
        return self.amplitudes[coin * self.n:(coin + 1) * self.n]


@dataclass(frozen=True)
class ProbabilityVector:
    """Length-n distribution over vertices."""

    probs: NDArray[np.float64]

    def __post_init__(self):
        p = np.asarray(self.probs, dtype=np.float64).reshape(-1)
        if p.shape[0] < 1:
            raise PreconditionError("probability vector must be nonempty")
        if np.any(p < 0) or not np.all(np.isfinite(p)):
            raise PreconditionError("probabilities must be finite and nonnegative")
        if abs(float(p.sum()) - 1.0) > DEFAULT_TOL.abs_eps:
            raise PreconditionError(f"probabilities sum to {p.sum()!r}, not 1")
        p.setflags(write=False)
        object.__setattr__(self, "probs", p)

    @property
    def n(self) -> int:
        return self.probs.shape[0]


def basis_state(m: int, n: int, coin: int, vertex: int) -> WalkerState:
    """Computational basis state |coin> (x) |vertex>."""
    if not 0 <= coin < m:
        raise PreconditionError(f"coin index {coin} out of range for m={m}")
    if not 0 <= vertex < n:
        raise PreconditionError(f"vertex index {vertex} out of range for n={n}")
    amps = np.zeros(m * n, dtype=np.complex128)
    amps[coin * n + vertex] = 1.0
    return WalkerState(m, n, amps)


def step(u: ComplexMatrix, s: WalkerState) -> WalkerState:
    """Apply the evolution operator once."""
    u = as_matrix(u)
    if u.shape != (s.m * s.n, s.m * s.n):
        raise PreconditionError(
            f"operator shape {u.shape} does not match state dimension {s.m * s.n}")
    return WalkerState(s.m, s.n, u @ s.amplitudes)


def evolve(u: ComplexMatrix, s0: WalkerState, t: int) -> WalkerState:
    """t successive steps; t = 0 returns the initial state."""
    if t < 0:
        raise PreconditionError("step count must be nonnegative")
    s = s0
    for _ in range(t):
        s = step(u, s)
    return s


def measure_position(s: WalkerState) -> ProbabilityVector:
    """Vertex distribution, marginalizing the coin register."""
    mags = np.abs(s.amplitudes.reshape(s.m, s.n)) ** 2
    return ProbabilityVector(mags.sum(axis=0))


def classical_transition(a: ComplexMatrix) -> ComplexMatrix:
    """Row-stochastic transition matrix M = D^-1 A of the random walk on a
    real nonnegative adjacency matrix (D holds the out-degree weights).

    The update rule applies M transposed; see ``classical_walk``.
    """
    a = as_matrix(a)
    if a.shape[0] != a.shape[1]:
        raise PreconditionError("adjacency matrix must be square")
    if max_norm(a.imag) > 0 or np.any(a.real < 0):
        raise PreconditionError("classical walks need real nonnegative weights")
    degrees = a.real.sum(axis=1)
    if np.any(degrees == 0):
        zero_rows = np.flatnonzero(degrees == 0).tolist()
        raise PreconditionError(f"vertices {zero_rows} have zero out-degree")
    return (a.real / degrees[:, None]).astype(np.complex128)


def classical_walk(a: ComplexMatrix, p0: ProbabilityVector, t: int,
                   tol: Tolerance = DEFAULT_TOL) -> ProbabilityVector:
    """Distribution after t steps of the update rule P <- M^T P."""
    if t < 0:
        raise PreconditionError("step count must be nonnegative")
    mt = classical_transition(a).real.T
    if mt.shape[0] != p0.n:
        raise PreconditionError(
            f"adjacency dimension {mt.shape[0]} does not match p0 length {p0.n}")
    p = p0.probs
    for _ in range(t):
        p = mt @ p
    return ProbabilityVector(p)
