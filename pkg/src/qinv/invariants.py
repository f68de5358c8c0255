"""Invariant formulas: first-kind (real, local-unitary) and second-kind
(complex, built from spin-flip bilinears and unchanged under determinant-one
local operators), plus the six-invariant three-qubit suite and the
three-tangle polynomial.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import pauli as _p
from . import state as _s
from .errors import (
    EvenQubitCountError,
    HermitianViolationError,
    IndexOutOfRangeError,
    InternalDisagreementError,
    OddQubitCountError,
    SameIndexError,
    UnnormalizedError,
    WrongQubitCountError,
)
from .pauli import PAULI_I, PAULI_X, PAULI_Z, SPIN_FLIP
from .state import PureState, partial_trace, purity, trace_power

AXES = "XYZ"
INTERNAL_TOL = 1e-10
# Quartic polynomials lose roughly one digit relative to the quadratic forms.
TANGLE_TOL = 1e-9

# Above this size the fused fingerprint would hold 3n full state vectors.
_FUSED_FINGERPRINT_MAX_QUBITS = 16


@dataclass(frozen=True)
class ReportEntry:
    value: float | complex
    kind: str  # "real" | "complex"


@dataclass(frozen=True)
class InvariantReport:
    """Ordered, uniquely named invariant values for one state."""

    n_qubits: int
    entries: dict[str, ReportEntry]
    tolerances: dict[str, float] = field(default_factory=dict)
    metadata: dict[str, object] = field(default_factory=dict)

    def value(self, name: str) -> float | complex:
        return self.entries[name].value


def _check_normalized(state: PureState) -> None:
    if not state.is_normalized:
        raise UnnormalizedError("this invariant requires a normalized state")


def _check_qubit(state: PureState, i: int) -> None:
    if not 1 <= i <= state.n_qubits:
        raise IndexOutOfRangeError(f"qubit {i} out of range 1..{state.n_qubits}")


def _letters(n: int, **at: str) -> str:
    word = ["I"] * n
    for pos, letter in at.items():
        word[int(pos[1:]) - 1] = letter
    return "".join(word)


def _one_point(state: PureState, i: int) -> np.ndarray:
    """<sigma_{i,a}> for a in (x, y, z)."""
    n = state.n_qubits
    return np.array(
        [_p.expectation(state, _letters(n, **{f"q{i}": a})) for a in AXES]
    )


def single_qubit_invariant(state: PureState, i: int) -> float:
    """1 - <X_i>^2 - <Y_i>^2 - <Z_i>^2 (equals 4 det of the one-qubit reduction)."""
    _check_normalized(state)
    _check_qubit(state, i)
    return float(1.0 - np.sum(_one_point(state, i) ** 2))


def single_qubit_invariant_dm(state: PureState, i: int) -> float:
    """Density-matrix route to the single-qubit invariant.

    Evaluates 2(1 - tr rho_i^2), 4 det rho_i and the Pauli-expectation form,
    and insists all three agree to 1e-10 before returning the first.
    """
    _check_normalized(state)
    _check_qubit(state, i)
    rho = partial_trace(state, {i})
    via_purity = 2.0 * (1.0 - purity(rho))
    via_det = 4.0 * float(np.linalg.det(rho.matrix).real)
    via_pauli = single_qubit_invariant(state, i)
    spread = max(via_purity, via_det, via_pauli) - min(via_purity, via_det, via_pauli)
    if spread > INTERNAL_TOL:
        raise InternalDisagreementError(
            f"single-qubit invariant routes disagree: purity={via_purity!r} "
            f"det={via_det!r} pauli={via_pauli!r}"
        )
    return via_purity


def pair_invariant(state: PureState, i: int, j: int) -> float:
    """1 minus the nine squared two-point correlators <sigma_{i,a} sigma_{j,b}>.

    The (a, b) sum runs in fixed lexicographic order x,y,z x x,y,z so the
    floating-point reduction is reproducible.
    """
    _check_normalized(state)
    _check_qubit(state, i)
    _check_qubit(state, j)
    if i == j:
        raise SameIndexError(f"pair invariant needs two distinct qubits, got {i}")
    n = state.n_qubits
    total = 1.0
    for a in AXES:
        for b in AXES:
            word = _letters(n, **{f"q{i}": a, f"q{j}": b})
            total -= _p.expectation(state, word) ** 2
    return total


def pair_identity_residual(state: PureState, i: int, j: int) -> float:
    """I_i + I_j + I_ij - 4(1 - tr rho_ij^2); zero for every normalized state."""
    lhs = (
        single_qubit_invariant(state, i)
        + single_qubit_invariant(state, j)
        + pair_invariant(state, i, j)
    )
    rho_ij = partial_trace(state, {i, j})
    return float(lhs - 4.0 * (1.0 - purity(rho_ij)))


def concurrence(state: PureState) -> complex:
    """Even-n concurrence: the bilinear <psi| T x ... x T |psi*>, T = i sigma_y.

    Quadratic in the amplitudes, so it is evaluated as-is even on states
    carrying a non-unit norm (determinant-one local operators change the norm
    but not this value).
    """
    n = state.n_qubits
    if n % 2 != 0:
        raise OddQubitCountError(f"concurrence needs an even qubit count, got {n}")
    return _p.bilinear(state, (SPIN_FLIP,) * n)


def odd_tangle(state: PureState) -> complex:
    """Odd-n invariant from three spin-flip bilinears.

    With T on qubits 1..n-1 and w in {sigma_x, sigma_z, identity} on the last
    qubit, returns b_x^2 + b_z^2 - b_1^2. Like ``concurrence`` it is evaluated
    on the raw amplitudes regardless of norm.
    """
    n = state.n_qubits
    if n % 2 == 0:
        raise EvenQubitCountError(f"odd_tangle needs an odd qubit count, got {n}")
    base = (SPIN_FLIP,) * (n - 1)
    b_x = _p.bilinear(state, base + (PAULI_X,))
    b_z = _p.bilinear(state, base + (PAULI_Z,))
    b_1 = _p.bilinear(state, base + (PAULI_I,))
    return b_x**2 + b_z**2 - b_1**2


def triple_correlation_sum(state: PureState, i: int, j: int) -> float:
    """Nine-term sum <s_ia><s_jb><s_ia s_jb> over a, b in (x, y, z)."""
    _check_normalized(state)
    _check_qubit(state, i)
    _check_qubit(state, j)
    if i == j:
        raise SameIndexError(f"need two distinct qubits, got {i}")
    n = state.n_qubits
    one_i = _one_point(state, i)
    one_j = _one_point(state, j)
    total = 0.0
    for a, va in zip(AXES, one_i):
        for b, vb in zip(AXES, one_j):
            word = _letters(n, **{f"q{i}": a, f"q{j}": b})
            total += va * vb * _p.expectation(state, word)
    return float(total)


def cubic_invariant(state: PureState, method: str = "density") -> float:
    """Degree-3 invariant of a three-qubit state mixing the (1, 2) marginals.

    Two routes are always evaluated and must agree to 1e-10:
      density: 3 tr[(rho_1 (x) rho_2) rho_12] - tr(rho_1^3) - tr(rho_2^3)
      pauli:   (1 + 3 * triple_correlation_sum(state, 1, 2)) / 4
    ``method`` selects which value is returned.
    """
    if state.n_qubits != 3:
        raise WrongQubitCountError(
            f"cubic invariant is defined for 3 qubits, got {state.n_qubits}"
        )
    if method not in ("density", "pauli"):
        raise ValueError(f"method must be 'density' or 'pauli', got {method!r}")
    _check_normalized(state)
    rho_a = partial_trace(state, {1})
    rho_b = partial_trace(state, {2})
    rho_ab = partial_trace(state, {1, 2})
    via_density = (
        3.0 * _s.cross_term(rho_a, rho_b, rho_ab)
        - trace_power(rho_a, 3)
        - trace_power(rho_b, 3)
    )
    via_pauli = 0.25 * (1.0 + 3.0 * triple_correlation_sum(state, 1, 2))
    if abs(via_density - via_pauli) > INTERNAL_TOL:
        raise InternalDisagreementError(
            f"cubic invariant routes disagree: density={via_density!r} "
            f"pauli={via_pauli!r}"
        )
    return via_density if method == "density" else via_pauli


_PAIR_TANGLE_SLOT = {"AB": 3, "AC": 2, "BC": 1}


def pair_tangle(state: PureState, pair: str = "AB") -> complex:
    """Pair-indexed tangle bilinear of a three-qubit state.

    For pair AB the two sigma_y factors sit on qubits 1 and 2 and the third
    qubit carries sigma_x / sigma_z / identity across the three squared
    bilinears; AC and BC move the free slot to qubit 2 resp. qubit 1. Since
    sigma_y (x) sigma_y = -(T (x) T) and every bilinear is squared, the AB
    value coincides exactly with ``odd_tangle`` on three qubits. All bilinears
    use the <psi|M|psi*> convention (the conjugate of the <psi*|M|psi> form).
    """
    if state.n_qubits != 3:
        raise WrongQubitCountError(
            f"pair tangle is defined for 3 qubits, got {state.n_qubits}"
        )
    if pair not in _PAIR_TANGLE_SLOT:
        raise ValueError(f"pair must be one of AB, AC, BC, got {pair!r}")
    _check_normalized(state)
    slot = _PAIR_TANGLE_SLOT[pair]
    total = 0.0 + 0.0j
    for slot_op, sign in ((PAULI_X, 1.0), (PAULI_Z, 1.0), (PAULI_I, -1.0)):
        ops = [_p.PAULI_Y] * 3
        ops[slot - 1] = slot_op
        total += sign * _p.bilinear(state, ops) ** 2
    return total


def three_tangle(state: PureState) -> float:
    """Residual three-way entanglement 4|d1 - 2 d2 + 4 d3| of a 3-qubit state.

    d1, d2, d3 are quartic polynomials in the eight amplitudes a[q1, q2, q3]:
    d1 sums the four squared products over complementary index pairs, d2 the
    six cross products of those pairs, and d3 the two cyclic quartic terms.
    """
    if state.n_qubits != 3:
        raise WrongQubitCountError(
            f"three-tangle is defined for 3 qubits, got {state.n_qubits}"
        )
    _check_normalized(state)
    a = state.amplitudes.reshape(2, 2, 2)
    a000, a001, a010, a011 = a[0, 0, 0], a[0, 0, 1], a[0, 1, 0], a[0, 1, 1]
    a100, a101, a110, a111 = a[1, 0, 0], a[1, 0, 1], a[1, 1, 0], a[1, 1, 1]
    d1 = (a000 * a111) ** 2 + (a001 * a110) ** 2 \
        + (a010 * a101) ** 2 + (a100 * a011) ** 2
    d2 = (
        a000 * a111 * a011 * a100
        + a000 * a111 * a101 * a010
        + a000 * a111 * a110 * a001
        + a011 * a100 * a101 * a010
        + a011 * a100 * a110 * a001
        + a101 * a010 * a110 * a001
    )
    d3 = a000 * a110 * a101 * a011 + a111 * a001 * a010 * a100
    return float(4.0 * abs(d1 - 2.0 * d2 + 4.0 * d3))


def invariant_count(n: int) -> int:
    """Number of independent invariant parameters of an n-qubit pure state."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return 2 ** (n + 1) - (3 * n + 1)


def _purity_pauli_form(state: PureState, i: int) -> float:
    """tr(rho_i^2) via (1 + sum_a <sigma_{i,a}>^2) / 2."""
    return float(0.5 * (1.0 + np.sum(_one_point(state, i) ** 2)))


def three_qubit_suite(state: PureState) -> InvariantReport:
    """The six independent local invariants I_1..I_6 of a three-qubit state.

    I_1 = <psi|psi>; I_2..I_4 = tr rho^2 of qubits 3, 2, 1 (each checked
    against its Pauli-expectation form to 1e-10); I_5 = cubic invariant;
    I_6 = three-tangle, checked against |pair_tangle(AB)| to 1e-9.
    """
    if state.n_qubits != 3:
        raise WrongQubitCountError(
            f"the suite is defined for 3 qubits, got {state.n_qubits}"
        )
    _check_normalized(state)
    i1 = float(np.vdot(state.amplitudes, state.amplitudes).real)
    entries: dict[str, ReportEntry] = {"I_1": ReportEntry(i1, "real")}
    for name, qubit in (("I_2", 3), ("I_3", 2), ("I_4", 1)):
        via_purity = purity(partial_trace(state, {qubit}))
        via_pauli = _purity_pauli_form(state, qubit)
        if abs(via_purity - via_pauli) > INTERNAL_TOL:
            raise InternalDisagreementError(
                f"{name} routes disagree: purity={via_purity!r} pauli={via_pauli!r}"
            )
        entries[name] = ReportEntry(via_purity, "real")
    entries["I_5"] = ReportEntry(cubic_invariant(state), "real")
    tangle_poly = three_tangle(state)
    tangle_bilinear = abs(pair_tangle(state, "AB"))
    if abs(tangle_poly - tangle_bilinear) > TANGLE_TOL:
        raise InternalDisagreementError(
            f"I_6 routes disagree: polynomial={tangle_poly!r} "
            f"bilinear={tangle_bilinear!r}"
        )
    entries["I_6"] = ReportEntry(tangle_poly, "real")
    return InvariantReport(
        n_qubits=3,
        entries=entries,
        tolerances={"internal_agreement": INTERNAL_TOL, "tangle_agreement": TANGLE_TOL},
        metadata={"state_digest": state.digest()},
    )


def first_kind_fingerprint(state: PureState) -> tuple[np.ndarray, np.ndarray]:
    """All one-point and two-point Pauli expectations in one pass.

    Returns ``(singles, pairs)`` where ``singles[i-1, a]`` is <sigma_{i,a}>
    and ``pairs[i-1, j-1]`` (i < j only; other blocks are NaN) is the 3x3
    block of <sigma_{i,a} sigma_{j,b}>. This is the batch route behind
    ``invariant_report``; the per-operation functions above stay as the
    simple reference path.
    """
    _check_normalized(state)
    n = state.n_qubits
    psi = state.amplitudes
    sigmas = (_p.PAULI_X, _p.PAULI_Y, _p.PAULI_Z)
    singles = np.empty((n, 3), dtype=np.float64)
    pairs = np.full((n, n, 3, 3), np.nan, dtype=np.float64)

    def check_block(block: np.ndarray, i: int, j: int) -> np.ndarray:
        if np.max(np.abs(block.imag)) > _p.HERMITIAN_RESIDUE_TOL:
            raise HermitianViolationError(
                f"two-point block ({i}, {j}) has imaginary residue "
                f"{np.max(np.abs(block.imag))!r}"
            )
        return block.real

    if n <= _FUSED_FINGERPRINT_MAX_QUBITS:
        flat = np.empty((3 * n, psi.size), dtype=np.complex128)
        for q in range(1, n + 1):
            for a, sigma in enumerate(sigmas):
                flat[3 * (q - 1) + a] = _p._apply_2x2(psi, n, q, sigma)
        ones = flat @ psi.conj()
        if np.max(np.abs(ones.imag)) > _p.HERMITIAN_RESIDUE_TOL:
            raise HermitianViolationError("one-point expectations not real")
        singles[:] = ones.real.reshape(n, 3)
        gram = flat.conj() @ flat.T
        for i in range(1, n):
            for j in range(i + 1, n + 1):
                block = gram[3 * (i - 1):3 * i, 3 * (j - 1):3 * j]
                pairs[i - 1, j - 1] = check_block(block, i, j)
        return singles, pairs

    # Large states: stream one qubit's sigma-applied vectors at a time.
    for i in range(1, n + 1):
        vi = np.stack([_p._apply_2x2(psi, n, i, s) for s in sigmas])
        ones = vi @ psi.conj()
        if np.max(np.abs(ones.imag)) > _p.HERMITIAN_RESIDUE_TOL:
            raise HermitianViolationError("one-point expectations not real")
        singles[i - 1] = ones.real
        for j in range(i + 1, n + 1):
            vj = np.stack([_p._apply_2x2(psi, n, j, s) for s in sigmas])
            pairs[i - 1, j - 1] = check_block(vi.conj() @ vj.T, i, j)
    return singles, pairs


def single_name(i: int) -> str:
    return f"I_{{{i}}}"


def pair_name(i: int, j: int, n: int) -> str:
    # Concatenated digits are unambiguous only while qubit labels fit one digit.
    if n <= 9:
        return f"I_{{{i}{j}}}"
    return f"I_{{{i},{j}}}"


def report_entry_names(n: int) -> list[str]:
    """Canonical entry order for an n-qubit invariant report."""
    names: list[str] = []
    if n == 3:
        names += [f"I_{k}" for k in range(1, 7)]
    names += [single_name(i) for i in range(1, n + 1)]
    names += [pair_name(i, j, n) for i in range(1, n) for j in range(i + 1, n + 1)]
    names.append("C" if n % 2 == 0 else "Z")
    return names


def invariant_report(state: PureState, seed: int | None = None) -> InvariantReport:
    """Every invariant this package computes for the given state.

    Entry order: the three-qubit suite first (when n = 3), then single-qubit
    invariants, pair invariants, and the even/odd bilinear invariant C or Z.
    """
    _check_normalized(state)
    n = state.n_qubits
    entries: dict[str, ReportEntry] = {}
    tolerances: dict[str, float] = {"hermitian_residue": _p.HERMITIAN_RESIDUE_TOL}
    if n == 3:
        suite = three_qubit_suite(state)
        entries.update(suite.entries)
        tolerances.update(suite.tolerances)
    singles, pairs = first_kind_fingerprint(state)
    for i in range(1, n + 1):
        value = float(1.0 - np.sum(singles[i - 1] ** 2))
        entries[single_name(i)] = ReportEntry(value, "real")
    for i in range(1, n):
        for j in range(i + 1, n + 1):
            value = float(1.0 - np.sum(pairs[i - 1, j - 1] ** 2))
            entries[pair_name(i, j, n)] = ReportEntry(value, "real")
    if n % 2 == 0:
        entries["C"] = ReportEntry(concurrence(state), "complex")
    else:
        entries["Z"] = ReportEntry(odd_tangle(state), "complex")
    metadata: dict[str, object] = {"state_digest": state.digest()}
    if seed is not None:
        metadata["seed"] = seed
    return InvariantReport(n, entries, tolerances, metadata)
