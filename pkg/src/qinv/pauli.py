"""Single-qubit operator kernels, Pauli-string expectations and bilinear forms.

Gates are applied with bit-stride kernels, O(2^n) per single-qubit operator;
dense 2^n x 2^n matrices are never built here (the test suite keeps a dense
oracle for cross-checking).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    HermitianViolationError,
    IndexOutOfRangeError,
    LengthMismatchError,
    NotUnitaryError,
)
from .state import PureState

PAULI_I = np.array([[1, 0], [0, 1]], dtype=np.complex128)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)
# Spin flip T = i*sigma_y = [[0, 1], [-1, 0]]; T|0> = -|1>, T|1> = |0>.
SPIN_FLIP = 1j * PAULI_Y

for _m in (PAULI_I, PAULI_X, PAULI_Y, PAULI_Z, SPIN_FLIP):
    _m.setflags(write=False)

PAULI_BY_LETTER = {"I": PAULI_I, "X": PAULI_X, "Y": PAULI_Y, "Z": PAULI_Z}

HERMITIAN_RESIDUE_TOL = 1e-10
UNITARY_TOL = 1e-10


@dataclass(frozen=True)
class PauliString:
    """One letter from {I, X, Y, Z} per qubit."""

    letters: tuple[str, ...]

    def __post_init__(self) -> None:
        letters = tuple(self.letters)
        for c in letters:
            if c not in PAULI_BY_LETTER:
                raise ValueError(f"invalid Pauli letter {c!r}; expected I, X, Y or Z")
        object.__setattr__(self, "letters", letters)

    @classmethod
    def coerce(cls, value: "PauliString | str | Iterable[str]") -> "PauliString":
        if isinstance(value, PauliString):
            return value
        return cls(tuple(value))

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return "".join(self.letters)


def _as_2x2(op: np.ndarray) -> np.ndarray:
    m = np.asarray(op, dtype=np.complex128)
    if m.shape != (2, 2):
        raise ValueError(f"expected a 2x2 matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("operator has non-finite entries")
    return m


def _apply_2x2(amps: np.ndarray, n: int, qubit: int, op: np.ndarray) -> np.ndarray:
    """Apply a 2x2 operator to one qubit of a bare amplitude vector."""
    left = 1 << (qubit - 1)
    right = 1 << (n - qubit)
    psi = amps.reshape(left, 2, right)
    return np.einsum("ab,lbr->lar", op, psi).reshape(-1)


def _wrap(n: int, amps: np.ndarray) -> PureState:
    nsq = float(np.vdot(amps, amps).real)
    return PureState(n, amps, is_normalized=abs(nsq - 1.0) <= 1e-10)


def apply_single_qubit(state: PureState, qubit: int, op: np.ndarray) -> PureState:
    """Act with a 2x2 operator on one qubit; norm is preserved iff op is unitary."""
    if not 1 <= qubit <= state.n_qubits:
        raise IndexOutOfRangeError(
            f"qubit {qubit} out of range 1..{state.n_qubits}"
        )
    out = _apply_2x2(state.amplitudes, state.n_qubits, qubit, _as_2x2(op))
    return _wrap(state.n_qubits, out)


def apply_string(state: PureState, ops: Sequence[np.ndarray]) -> PureState:
    """Apply one 2x2 operator per qubit (order immaterial: disjoint qubits)."""
    n = state.n_qubits
    if len(ops) != n:
        raise LengthMismatchError(f"expected {n} operators, got {len(ops)}")
    amps = state.amplitudes
    for qubit, op in enumerate(ops, start=1):
        if op is PAULI_I:
            continue
        amps = _apply_2x2(amps, n, qubit, _as_2x2(op))
    return _wrap(n, amps)


def expectation(state: PureState, pauli: PauliString | str) -> float:
    """Sesquilinear expectation <psi|P|psi> of a Hermitian Pauli string.

    The imaginary residue must stay below 1e-10; a larger residue indicates a
    kernel bug and raises HermitianViolationError.
    """
    p = PauliString.coerce(pauli)
    n = state.n_qubits
    if len(p) != n:
        raise LengthMismatchError(
            f"Pauli string has length {len(p)}, state has {n} qubits"
        )
    amps = state.amplitudes
    for qubit, letter in enumerate(p.letters, start=1):
        if letter == "I":
            continue
        amps = _apply_2x2(amps, n, qubit, PAULI_BY_LETTER[letter])
    val = np.vdot(state.amplitudes, amps)
    if abs(val.imag) > HERMITIAN_RESIDUE_TOL:
        raise HermitianViolationError(
            f"expectation of {p} has imaginary residue {val.imag!r}"
        )
    return float(val.real)


def bilinear(state: PureState, ops: Sequence[np.ndarray]) -> complex:
    """Bilinear form <psi|M|psi*> = sum_ij conj(psi_i) M_ij conj(psi_j).

    M is the tensor product of the per-qubit operators. Unlike ``expectation``
    this is not sesquilinear: both slots carry the conjugated amplitudes, so
    the value is symmetric under transposing M and is complex in general.
    """
    n = state.n_qubits
    if len(ops) != n:
        raise LengthMismatchError(f"expected {n} operators, got {len(ops)}")
    amps = state.amplitudes.conj()
    for qubit, op in enumerate(ops, start=1):
        if op is PAULI_I:
            continue
        amps = _apply_2x2(amps, n, qubit, _as_2x2(op))
    return complex(np.vdot(state.amplitudes, amps))


def adjoint_rotation(u: np.ndarray) -> np.ndarray:
    """SO(3) matrix carrying the conjugation action of a single-qubit unitary.

    Row i holds the Pauli coefficients of u^-1 sigma_i u, i.e.
    u^-1 sigma_i u = sum_j O[i, j] sigma_j with i, j running over (x, y, z).
    Under this convention the map is a homomorphism:
    adjoint_rotation(u @ v) == adjoint_rotation(u) @ adjoint_rotation(v).
    """
    m = _as_2x2(u)
    if np.max(np.abs(m.conj().T @ m - PAULI_I)) > UNITARY_TOL:
        raise NotUnitaryError("matrix is not unitary within 1e-10")
    sigmas = (PAULI_X, PAULI_Y, PAULI_Z)
    out = np.empty((3, 3), dtype=np.float64)
    for i, si in enumerate(sigmas):
        conj_si = m.conj().T @ si @ m
        for j, sj in enumerate(sigmas):
            c = 0.5 * np.einsum("ij,ji->", conj_si, sj)
            assert abs(c.imag) < HERMITIAN_RESIDUE_TOL
            out[i, j] = c.real
    # Orthogonality and unit determinant follow from unitarity of the input.
    assert np.max(np.abs(out @ out.T - np.eye(3))) < 1e-9
    assert abs(np.linalg.det(out) - 1.0) < 1e-9
    return out
