"""Shared fixtures and numeric helpers for the test suite."""

import numpy as np
import pytest

from qwalk import KrausGrid, assemble_shift


def haar_unitary(d: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary via QR of a complex Gaussian matrix."""
    z = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    q, r = np.linalg.qr(z)
    phases = np.diagonal(r) / np.abs(np.diagonal(r))
    return q * phases


def cycle_adjacency(n: int) -> np.ndarray:
    """Adjacency matrix of the directed 2-regular cycle C_n (both
    orientations)."""
    a = np.zeros((n, n), dtype=np.complex128)
    for i in range(n):
        a[i, (i + 1) % n] = 1
        a[i, (i - 1) % n] = 1
    return a


def right_shift(n: int) -> np.ndarray:
    """Cyclic permutation with entry (i+1 mod n, i) = 1."""
    r = np.zeros((n, n), dtype=np.complex128)
    for i in range(n):
        r[(i + 1) % n, i] = 1
    return r


def cycle_shift_grid(n: int) -> KrausGrid:
    """Block-diagonal grid for the cycle: stored blocks R^T and L^T with
    R the right cyclic shift and L = R^T."""
    r = right_shift(n)
    zero = np.zeros((n, n), dtype=np.complex128)
    return KrausGrid(2, n, ((r.T, zero), (zero, r)))


def hypercube_adjacency(bits: int) -> np.ndarray:
    """Adjacency matrix of the undirected hypercube graph on 2^bits
    vertices (both arc orientations present)."""
    n = 1 << bits
    a = np.zeros((n, n), dtype=np.complex128)
    for v in range(n):
        for b in range(bits):
            a[v, v ^ (1 << b)] = 1
    return a


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20260826)


@pytest.fixture
def c4_shift():
    return assemble_shift(cycle_shift_grid(4))
