"""Independent brute-force verifier on a truncated Fock space.

Everything here is dense numpy: states become amplitude tensors, elements
become matrix exponentials of their truncated generators, observables become
explicit matrices.  Nothing is shared with the closed-form code paths, which
is the point: agreement between the two is the package's main correctness
argument.

Truncation adequacy: a mode holding coherent amplitude ``a`` needs dimension
at least ceil(|a|^2 + 6|a| + 10), which keeps the neglected Poisson tail
below ~1e-12.  The rule is enforced, never silently ignored.  Unitaries are
exponentials of exactly anti-Hermitian truncated generators, so they are
unitary to machine precision on the whole truncated space; truncation shows
up only as (controlled) physical error near the cutoff.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.linalg import expm

from .errors import TruncationError
from .states import COHERENT, HybridState

#: Hard cap on the total Hilbert dimension; this is a desk-scale verifier.
MAX_TOTAL_DIM = 10_000_000


def adequate_dim(amplitude: complex) -> int:
    """Minimum per-mode dimension for a coherent amplitude."""
    a = abs(complex(amplitude))
    return math.ceil(a * a + 6.0 * a + 10.0)


@dataclass(frozen=True)
class Truncation:
    dims: tuple[int, ...]

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        if any(d < 2 for d in dims):
            raise TruncationError("every mode needs dimension >= 2")
        if math.prod(dims) > MAX_TOTAL_DIM:
            raise TruncationError(
                f"total dimension {math.prod(dims)} exceeds cap {MAX_TOTAL_DIM}"
            )
        object.__setattr__(self, "dims", dims)

    @property
    def total(self) -> int:
        return math.prod(self.dims)

    @staticmethod
    def for_state(s: HybridState, margin: float = 0.0) -> "Truncation":
        """Adequate truncation for every coherent amplitude in ``s``."""
        dims = []
        for m in range(s.modes):
            need = 2
            for t in s.terms:
                f = t.factors[m]
                if f.is_coherent:
                    need = max(need, adequate_dim(abs(f.amplitude) + margin))
                else:
                    need = max(need, f.photons + 2)
            dims.append(need)
        return Truncation(tuple(dims))


@dataclass(frozen=True)
class FockVector:
    amplitudes: np.ndarray  # flat, length prod(dims)
    truncation: Truncation

    def reshaped(self) -> np.ndarray:
        return self.amplitudes.reshape(self.truncation.dims)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))


def coherent_vector(alpha: complex, dim: int) -> np.ndarray:
    a = complex(alpha)
    if dim < adequate_dim(a):
        raise TruncationError(
            f"dim {dim} inadequate for coherent amplitude |a| = {abs(a):.3f}"
        )
    n = np.arange(dim)
    log_fact = np.cumsum(np.concatenate(([0.0], np.log(np.arange(1, dim)))))
    if a == 0:
        vec = np.zeros(dim, dtype=complex)
        vec[0] = 1.0
        return vec
    return np.exp(-0.5 * abs(a) ** 2 - 0.5 * log_fact) * np.power(a, n)


def fock_vector(photons: int, dim: int) -> np.ndarray:
    if photons >= dim:
        raise TruncationError(f"dim {dim} cannot hold |{photons}>")
    vec = np.zeros(dim, dtype=complex)
    vec[photons] = 1.0
    return vec


def to_fock(s: HybridState, truncation: Truncation) -> FockVector:
    if len(truncation.dims) != s.modes:
        raise TruncationError(
            f"{len(truncation.dims)} dims for a {s.modes}-mode state"
        )
    total = np.zeros(truncation.total, dtype=complex)
    for t in s.terms:
        vec = np.array([t.coefficient], dtype=complex)
        for f, dim in zip(t.factors, truncation.dims):
            if f.kind == COHERENT:
                factor = coherent_vector(f.amplitude, dim)
            else:
                factor = fock_vector(f.photons, dim)
            vec = np.kron(vec, factor)
        total += vec
    return FockVector(total, truncation)


# ---------------------------------------------------------------------------
# Operator matrices
# ---------------------------------------------------------------------------


def destroy(dim: int) -> np.ndarray:
    return np.diag(np.sqrt(np.arange(1, dim, dtype=float)), k=1).astype(complex)


def displacement_matrix(beta: complex, dim: int) -> np.ndarray:
    b = complex(beta)
    a = destroy(dim)
    return expm(b * a.conj().T - b.conjugate() * a)


def phase_shift_matrix(phi: float, dim: int) -> np.ndarray:
    return np.diag(np.exp(1j * phi * np.arange(dim)))


def kerr_pi_matrix(dim: int) -> np.ndarray:
    """Diagonal e^{-i pi n^2 / 2}: the cat-making single-mode Kerr evolution."""
    n = np.arange(dim)
    return np.diag(np.exp(-0.5j * math.pi * n * n))


def parity_displaced_matrix(beta: complex, dim: int) -> np.ndarray:
    """D(beta) P D(beta)† with P = diag((-1)^n)."""
    d = displacement_matrix(beta, dim)
    parity = np.diag((-1.0) ** np.arange(dim)).astype(complex)
    return d @ parity @ d.conj().T


def threshold_displaced_matrix(beta: complex, dim: int) -> np.ndarray:
    """D(beta)† (2|0><0| - 1) D(beta); note the side opposite to parity."""
    d = displacement_matrix(beta, dim)
    diag = -np.ones(dim)
    diag[0] = 1.0
    return d.conj().T @ np.diag(diag).astype(complex) @ d


def beam_splitter_matrix(theta: float, phi: float, dim_a: int, dim_b: int) -> np.ndarray:
    """exp{(theta/2)(e^{i phi} a† b - e^{-i phi} b† a)} on the joint space."""
    a = destroy(dim_a)
    b = destroy(dim_b)
    gen = (theta / 2.0) * (
        np.exp(1j * phi) * np.kron(a.conj().T, b)
        - np.exp(-1j * phi) * np.kron(a, b.conj().T)
    )
    return expm(gen)


def cross_kerr_matrix(theta: float, dim_a: int, dim_b: int) -> np.ndarray:
    """Diagonal e^{i theta n_a n_b} on the joint space."""
    na = np.arange(dim_a)
    nb = np.arange(dim_b)
    return np.diag(np.exp(1j * theta * np.outer(na, nb).reshape(-1)))


def click_projector(dim: int) -> np.ndarray:
    """Projector onto one or more photons."""
    diag = np.ones(dim)
    diag[0] = 0.0
    return np.diag(diag).astype(complex)


# ---------------------------------------------------------------------------
# Application and expectation without materializing full Kronecker products
# ---------------------------------------------------------------------------


def apply_to_modes(v: FockVector, matrix: np.ndarray, modes: Sequence[int]) -> FockVector:
    """Apply a matrix living on the given modes (in order) to the state."""
    dims = v.truncation.dims
    modes = list(modes)
    arr = v.reshaped()
    arr = np.moveaxis(arr, modes, range(len(modes)))
    lead = math.prod(dims[m] for m in modes)
    lead_shape = [dims[m] for m in modes]
    rest_shape = list(arr.shape[len(modes):])
    out = matrix @ arr.reshape(lead, -1)
    out = out.reshape(lead_shape + rest_shape)
    out = np.moveaxis(out, range(len(modes)), modes)
    return FockVector(out.reshape(-1), v.truncation)


def expect_product(v: FockVector, ops: dict[int, np.ndarray]) -> complex:
    """<v| (prod of per-mode operators) |v>, identity on unlisted modes."""
    w = v
    for mode, mat in ops.items():
        w = apply_to_modes(w, mat, [mode])
    return complex(np.vdot(v.amplitudes, w.amplitudes))


def overlap_fock(u: FockVector, v: FockVector) -> complex:
    if u.truncation.dims != v.truncation.dims:
        raise TruncationError("mismatched truncations")
    return complex(np.vdot(u.amplitudes, v.amplitudes))


def unitarity_defect(matrix: np.ndarray) -> float:
    """max |U† U - 1| entry; ~1e-15 for exponentials of anti-Hermitian generators."""
    eye = np.eye(matrix.shape[0])
    return float(np.max(np.abs(matrix.conj().T @ matrix - eye)))
