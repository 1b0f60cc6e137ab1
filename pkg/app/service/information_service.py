"""Entropic quantities of two-qubit states, in bits.

Two independent paths:

* generic: dense Hermitian eigensolver, partial traces and projective
  measurements on qubit A, valid for any two-qubit density matrix;
* closed: analytic expressions for Bell-diagonal X states under sigma_x / sigma_z.

The verification suite compares one against the other.
"""
from typing import List, NamedTuple, Sequence

import numpy as np

from app.exceptions import DomainError, NotDensityMatrix, OrderingViolation
from app.models import MeasurementSetting, UncertaintyReport, XState
from app.service.dynamics_service import PAULI, as_matrix

HERMITIAN_TOLERANCE = 1e-10
TRACE_TOLERANCE = 1e-10
EIGENVALUE_FLOOR = -1e-9
PROBABILITY_TOLERANCE = 1e-12
ORDERING_TOLERANCE = 1e-9

DEFAULT_SETTING = MeasurementSetting()


class PostMeasurement(NamedTuple):
    probabilities: np.ndarray
    conditional_states: List[np.ndarray]
    joint: np.ndarray


# ============================================
# Helpers
# ============================================

def _xlog2y(x: float, y: float) -> float:
    """x log2 y with 0 log 0 = 0; round-off negatives count as 0."""
    if x <= 0.0:
        return 0.0
    return x * np.log2(y)


def _shannon(values: Sequence[float]) -> float:
    v = np.asarray(values, dtype=float)
    v = v[v > 0.0]
    return float(-np.sum(v * np.log2(v))) + 0.0


def _spectrum(rho: np.ndarray) -> np.ndarray:
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise NotDensityMatrix(f"expected a square matrix, got shape {rho.shape}")
    if np.max(np.abs(rho - rho.conj().T)) > HERMITIAN_TOLERANCE:
        raise NotDensityMatrix("matrix is not Hermitian")
    if abs(np.trace(rho).real - 1.0) > TRACE_TOLERANCE:
        raise NotDensityMatrix(f"trace {np.trace(rho).real!r} differs from 1")
    eigenvalues = np.linalg.eigvalsh(rho)
    if eigenvalues.min() < EIGENVALUE_FLOOR:
        raise NotDensityMatrix(f"negative eigenvalue {eigenvalues.min()!r}")
    return np.clip(eigenvalues, 0.0, None)


def partial_trace(rho: np.ndarray, keep: str) -> np.ndarray:
    """Reduced state of a two-qubit matrix; keep is "A" or "B"."""
    blocks = np.asarray(rho, dtype=complex).reshape(2, 2, 2, 2)
    if keep == "A":
        return np.einsum("ijkj->ik", blocks)
    if keep == "B":
        return np.einsum("ijil->jl", blocks)
    raise DomainError(f"keep must be 'A' or 'B', got {keep!r}")


def observable_matrix(axis: Sequence[float]) -> np.ndarray:
    n = np.asarray(axis, dtype=float)
    n = n / np.linalg.norm(n)
    return sum(c * sigma for c, sigma in zip(n, PAULI))


def eigenbasis(axis: Sequence[float]) -> np.ndarray:
    """Columns are the eigenvectors of n . sigma."""
    return np.linalg.eigh(observable_matrix(axis))[1]


# ============================================
# Generic pipeline
# ============================================

def binary_entropy(p: float) -> float:
    if p < -PROBABILITY_TOLERANCE or p > 1.0 + PROBABILITY_TOLERANCE:
        raise DomainError(f"probability {p!r} outside [0, 1]")
    p = min(max(p, 0.0), 1.0)
    return _shannon([p, 1.0 - p])


def von_neumann_entropy(rho: np.ndarray) -> float:
    return _shannon(_spectrum(rho))


def complementarity(m: MeasurementSetting = DEFAULT_SETTING) -> float:
    """c = max_ij |<q_i|r_j>|^2 from the explicit eigenvectors."""
    overlaps = eigenbasis(m.q_axis).conj().T @ eigenbasis(m.r_axis)
    return float(np.max(np.abs(overlaps) ** 2))


def post_measurement_state(rho: np.ndarray, axis: Sequence[float]) -> PostMeasurement:
    """
    Projective measurement of n . sigma on qubit A

    Args:
        rho: two-qubit density matrix
        axis: Bloch axis n of the measured observable

    Returns:
        PostMeasurement: outcome probabilities p_x, Bob's normalized states rho_x^B
        and the classical-quantum state rho^{XB} = sum_x (Pi_x (x) I) rho (Pi_x (x) I)
    """
    _spectrum(rho)
    rho = np.asarray(rho, dtype=complex)
    basis = eigenbasis(axis)

    probabilities = []
    conditional_states = []
    joint = np.zeros((4, 4), dtype=complex)
    for x in range(2):
        ket = basis[:, x:x + 1]
        projector = np.kron(ket @ ket.conj().T, np.eye(2))
        projected = projector @ rho @ projector
        p_x = float(np.trace(projected).real)
        probabilities.append(p_x)
        if p_x > PROBABILITY_TOLERANCE:
            conditional_states.append(partial_trace(projected, "B") / p_x)
        else:
            # outcome never happens; the state is irrelevant at weight 0
            conditional_states.append(np.eye(2, dtype=complex) / 2.0)
        joint = joint + projected
    return PostMeasurement(np.array(probabilities), conditional_states, joint)


def holevo_quantity(rho: np.ndarray, axis: Sequence[float]) -> float:
    """I(X;B) = S(rho_B) - sum_x p_x S(rho_x^B)"""
    outcome = post_measurement_state(rho, axis)
    average = sum(
        p * von_neumann_entropy(state)
        for p, state in zip(outcome.probabilities, outcome.conditional_states)
        if p > PROBABILITY_TOLERANCE
    )
    return von_neumann_entropy(partial_trace(rho, "B")) - average


def mutual_information(rho: np.ndarray) -> float:
    return (
        von_neumann_entropy(partial_trace(rho, "A"))
        + von_neumann_entropy(partial_trace(rho, "B"))
        - von_neumann_entropy(rho)
    )


def conditional_entropy(rho: np.ndarray) -> float:
    """S(A|B) = S(rho_AB) - S(rho_B)"""
    return von_neumann_entropy(rho) - von_neumann_entropy(partial_trace(rho, "B"))


def holevo_gap(rho: np.ndarray, m: MeasurementSetting = DEFAULT_SETTING) -> float:
    """delta = I(A;B) - I(Q;B) - I(R;B)"""
    return mutual_information(rho) - holevo_quantity(rho, m.q_axis) - holevo_quantity(rho, m.r_axis)


def berta_bound(rho: np.ndarray, m: MeasurementSetting = DEFAULT_SETTING) -> float:
    return -np.log2(complementarity(m)) + conditional_entropy(rho)


def adabi_bound(rho: np.ndarray, m: MeasurementSetting = DEFAULT_SETTING) -> float:
    return berta_bound(rho, m) + max(0.0, holevo_gap(rho, m))


def lhs_uncertainty(rho: np.ndarray, m: MeasurementSetting = DEFAULT_SETTING) -> float:
    """S(Q|B) + S(R|B) from the post-measurement joint states."""
    s_b = von_neumann_entropy(partial_trace(rho, "B"))
    s_qb = von_neumann_entropy(post_measurement_state(rho, m.q_axis).joint)
    s_rb = von_neumann_entropy(post_measurement_state(rho, m.r_axis).joint)
    return (s_qb - s_b) + (s_rb - s_b)


def shannon_uncertainty(rho: np.ndarray, m: MeasurementSetting = DEFAULT_SETTING) -> float:
    """H(Q) + H(R) of Alice's outcomes without memory; bounded below by log2(1/c)."""
    return (
        _shannon(post_measurement_state(rho, m.q_axis).probabilities)
        + _shannon(post_measurement_state(rho, m.r_axis).probabilities)
    )


# ============================================
# Closed forms (X states, sigma_x / sigma_z)
# ============================================
# In population form (1 -+ Omega - r3)/4 = d2 -+ Omega/4 and
# (1 -+ Gamma + r3)/4 = d1 -+ Gamma/4, which avoids recovering r3 from d1.

def _block_eigenvalues(x: XState) -> List[float]:
    return [
        x.d2 - x.omega_c / 4.0,
        x.d2 + x.omega_c / 4.0,
        x.d1 - x.gamma_c / 4.0,
        x.d1 + x.gamma_c / 4.0,
    ]


def conditional_entropy_closed(x: XState) -> float:
    return -1.0 - sum(_xlog2y(v, v) for v in _block_eigenvalues(x))


def holevo_gap_closed(x: XState) -> float:
    # the last pair depends on Gamma + Omega, so signs are kept
    coherence = x.gamma_c + x.omega_c
    low = (2.0 - coherence) / 4.0
    high = (2.0 + coherence) / 4.0
    return (
        -2.0
        + sum(_xlog2y(v, v) for v in _block_eigenvalues(x))
        - 2.0 * _xlog2y(x.d2, x.d2)
        - 2.0 * _xlog2y(x.d1, x.d1)
        - _xlog2y(low, low / 2.0)
        - _xlog2y(high, high / 2.0)
    )


def eub_berta(x: XState) -> float:
    """log2(1/c) + S(A|B) with c = 1/2"""
    return 1.0 + conditional_entropy_closed(x)


def eub_adabi(x: XState) -> float:
    return 1.0 + conditional_entropy_closed(x) + max(0.0, holevo_gap_closed(x))


def lhs_closed(x: XState) -> float:
    """S(Q|B) + S(R|B) = 1 + S(A|B) + delta when both marginals are maximally mixed."""
    return 1.0 + conditional_entropy_closed(x) + holevo_gap_closed(x)


def _is_pauli_xz(m: MeasurementSetting) -> bool:
    return m.q_axis == DEFAULT_SETTING.q_axis and m.r_axis == DEFAULT_SETTING.r_axis


def report(t: float, x: XState, m: MeasurementSetting = DEFAULT_SETTING) -> UncertaintyReport:
    """
    All bounds at one time point, checked for lhs >= Adabi

    The closed forms only hold for sigma_x / sigma_z; any other setting is
    evaluated entirely on the generic pipeline.
    """
    rho = as_matrix(x)
    if _is_pauli_xz(m):
        s_cond = conditional_entropy_closed(x)
        gap = holevo_gap_closed(x)
        berta = 1.0 + s_cond
    else:
        s_cond = conditional_entropy(rho)
        gap = holevo_gap(rho, m)
        berta = berta_bound(rho, m)
    adabi = berta + max(0.0, gap)
    lhs = lhs_uncertainty(rho, m)
    if lhs < adabi - ORDERING_TOLERANCE:
        raise OrderingViolation(f"t={t}: uncertainty {lhs!r} below the Adabi bound {adabi!r}")
    return UncertaintyReport(
        t=t,
        s_cond=s_cond,
        holevo_gap=gap,
        eub_adabi=adabi,
        eub_berta=berta,
        lhs=lhs,
    )
