"""Pure-state vectors, reduced density matrices and their scalar functionals.

Basis convention: the computational basis index encodes |q1 q2 ... qn> with
qubit 1 as the most significant bit, so qubit q owns bit (n - q) of the index.
Qubit indices are 1-based everywhere in the public API.
"""
from __future__ import annotations

import hashlib
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import (
    BadSubsetError,
    DimensionMismatchError,
    LengthMismatchError,
    TooLargeError,
    UnnormalizedError,
    ZeroVectorError,
)

MAX_QUBITS = 24
# Dense reduced density matrices: keep-sets above this would not fit in memory.
MAX_KEPT_QUBITS = 12

NORM_SQ_TOL = 1e-10
HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-10
EIGENVALUE_TOL = 1e-10


@dataclass(frozen=True)
class PureState:
    """Immutable n-qubit pure state.

    ``amplitudes`` has length 2**n_qubits and is stored read-only. States are
    normalized unless explicitly constructed with ``is_normalized=False``;
    first-kind invariant operations reject the unnormalized form.
    """

    n_qubits: int
    amplitudes: np.ndarray
    is_normalized: bool = True

    def __post_init__(self) -> None:
        if self.n_qubits < 1:
            raise ValueError(f"n_qubits must be >= 1, got {self.n_qubits}")
        if self.n_qubits > MAX_QUBITS:
            raise TooLargeError(
                f"n_qubits={self.n_qubits} exceeds the maximum of {MAX_QUBITS}"
            )
        amps = np.array(self.amplitudes, dtype=np.complex128)
        if amps.ndim != 1 or amps.size != 1 << self.n_qubits:
            raise LengthMismatchError(
                f"expected {1 << self.n_qubits} amplitudes for "
                f"n_qubits={self.n_qubits}, got {amps.size}"
            )
        if self.is_normalized:
            nsq = float(np.vdot(amps, amps).real)
            if abs(nsq - 1.0) > NORM_SQ_TOL:
                raise UnnormalizedError(
                    f"squared norm {nsq!r} deviates from 1 by more than {NORM_SQ_TOL}"
                )
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def dim(self) -> int:
        return 1 << self.n_qubits

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def digest(self) -> str:
        """Short content hash of the amplitude vector (for report metadata)."""
        raw = np.ascontiguousarray(self.amplitudes).tobytes()
        return hashlib.sha256(raw).hexdigest()[:16]


@dataclass(frozen=True)
class DensityMatrix:
    """Reduced density matrix over an ordered subset of the original qubits."""

    kept_qubits: tuple[int, ...]
    matrix: np.ndarray

    def __post_init__(self) -> None:
        kept = tuple(int(q) for q in self.kept_qubits)
        if len(kept) == 0:
            raise BadSubsetError("kept_qubits must be nonempty")
        if len(set(kept)) != len(kept):
            raise BadSubsetError(f"kept_qubits has duplicates: {kept}")
        if any(q < 1 for q in kept):
            raise BadSubsetError(f"kept_qubits must be positive: {kept}")
        side = 1 << len(kept)
        m = np.array(self.matrix, dtype=np.complex128)
        if m.shape != (side, side):
            raise DimensionMismatchError(
                f"expected a {side}x{side} matrix for {len(kept)} kept qubits, "
                f"got shape {m.shape}"
            )
        if np.max(np.abs(m - m.conj().T)) > HERMITIAN_TOL:
            raise ValueError("density matrix is not Hermitian within tolerance")
        tr = m.trace()
        if abs(tr - 1.0) > TRACE_TOL:
            raise ValueError(f"density matrix trace {tr!r} deviates from 1")
        # PSD check on the Hermitized matrix; rounding makes exact PSD unattainable.
        evals = np.linalg.eigvalsh((m + m.conj().T) / 2.0)
        if evals.min() < -EIGENVALUE_TOL:
            raise ValueError(
                f"density matrix has eigenvalue {evals.min()!r} below -{EIGENVALUE_TOL}"
            )
        m.setflags(write=False)
        object.__setattr__(self, "kept_qubits", kept)
        object.__setattr__(self, "matrix", m)

    @property
    def side(self) -> int:
        return self.matrix.shape[0]


def new_state(n: int, amps: Iterable[complex], *, normalize: bool = False) -> PureState:
    """Build a normalized PureState from raw amplitudes.

    If the squared norm deviates from 1 by more than 1e-10 the vector is
    rescaled only when ``normalize=True``; otherwise the call is rejected.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if n > MAX_QUBITS:
        raise TooLargeError(f"n={n} exceeds the maximum of {MAX_QUBITS}")
    vec = np.asarray(list(amps) if not isinstance(amps, np.ndarray) else amps,
                     dtype=np.complex128)
    if vec.ndim != 1 or vec.size != 1 << n:
        raise LengthMismatchError(
            f"expected {1 << n} amplitudes for n={n}, got {vec.size}"
        )
    norm = float(np.linalg.norm(vec))
    if norm < 1e-14:
        raise ZeroVectorError(f"amplitude vector has norm {norm!r}")
    if abs(norm * norm - 1.0) > NORM_SQ_TOL:
        if not normalize:
            raise UnnormalizedError(
                f"squared norm is {norm * norm!r}; pass normalize=True to rescale"
            )
        vec = vec / norm
    return PureState(n, vec)


def conjugate(state: PureState) -> PureState:
    """Entrywise complex conjugate of the state (an involution)."""
    return PureState(state.n_qubits, state.amplitudes.conj(),
                     is_normalized=state.is_normalized)


def partial_trace(state: PureState, keep: Iterable[int]) -> DensityMatrix:
    """Reduced density matrix over ``keep``, tracing out all other qubits.

    Parameters
    ----------
    state : PureState
        Normalized input state.
    keep : iterable of int
        Nonempty subset of 1..n (improper subsets allowed). The reduced matrix
        uses the kept qubits in increasing original order, the smallest kept
        index being the most significant bit of the reduced basis.
    """
    n = state.n_qubits
    kept = sorted({int(q) for q in keep})
    if not kept:
        raise BadSubsetError("keep must be a nonempty set of qubit indices")
    if kept[0] < 1 or kept[-1] > n:
        raise BadSubsetError(f"keep={kept} is not a subset of 1..{n}")
    if len(kept) > MAX_KEPT_QUBITS:
        raise TooLargeError(
            f"cannot keep {len(kept)} qubits; dense reductions are capped at "
            f"{MAX_KEPT_QUBITS}"
        )
    if not state.is_normalized:
        raise UnnormalizedError("partial_trace requires a normalized state")
    traced = [q for q in range(1, n + 1) if q not in set(kept)]
    # Axis q-1 of the reshaped tensor is qubit q (qubit 1 = most significant).
    psi = state.amplitudes.reshape((2,) * n)
    psi = psi.transpose([q - 1 for q in kept] + [q - 1 for q in traced])
    m = psi.reshape(1 << len(kept), -1)
    return DensityMatrix(tuple(kept), m @ m.conj().T)


def purity(rho: DensityMatrix) -> float:
    """tr(rho^2) as a real number."""
    t = np.einsum("ij,ji->", rho.matrix, rho.matrix)
    assert abs(t.imag) < 1e-12
    return float(t.real)


def trace_power(rho: DensityMatrix, k: int) -> float:
    """tr(rho^k) as a real number, k >= 1."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    t = np.linalg.matrix_power(rho.matrix, k).trace()
    assert abs(t.imag) < 1e-12
    return float(t.real)


def cross_term(rho_a: DensityMatrix, rho_b: DensityMatrix,
               rho_ab: DensityMatrix) -> float:
    """tr[(rho_a (x) rho_b) rho_ab] as a real number.

    ``rho_ab`` must cover rho_a's qubits followed by rho_b's qubits, in that
    order, so that the Kronecker product aligns with its basis.
    """
    if rho_a.kept_qubits + rho_b.kept_qubits != rho_ab.kept_qubits:
        raise DimensionMismatchError(
            f"rho_ab must be over qubits {rho_a.kept_qubits + rho_b.kept_qubits}, "
            f"got {rho_ab.kept_qubits}"
        )
    prod = np.kron(rho_a.matrix, rho_b.matrix)
    t = np.einsum("ij,ji->", prod, rho_ab.matrix)
    assert abs(t.imag) < 1e-12
    return float(t.real)
