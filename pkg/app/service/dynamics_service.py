import numpy as np

from app.exceptions import InvalidState
from app.models import POSITIVITY_TOLERANCE, BellDiagonalState, DecoherencePair, XState

PAULI = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)


def _require_physical(s0: BellDiagonalState) -> None:
    # model_construct() skips validation, so check again here
    if min(s0.positivity_margins()) < -POSITIVITY_TOLERANCE:
        raise InvalidState(f"(r1, r2, r3)=({s0.r1}, {s0.r2}, {s0.r3}) is not a density matrix")


def evolve_state(s0: BellDiagonalState, f: DecoherencePair) -> XState:
    """
    Bell-diagonal state after the chain has dephased it for time f.t

    Args:
        s0: initial Bloch correlations (r1, r2, r3)
        f: decoherence factors |F14|, |F23| at that time

    Returns:
        XState: populations are untouched, Gamma = (r1 - r2) F14, Omega = (r1 + r2) F23
    """
    _require_physical(s0)
    outer = (1.0 + s0.r3) / 4.0
    inner = (1.0 - s0.r3) / 4.0
    return XState(
        d1=outer,
        d2=inner,
        d3=inner,
        d4=outer,
        gamma_c=(s0.r1 - s0.r2) * f.f14,
        omega_c=(s0.r1 + s0.r2) * f.f23,
    )


def as_matrix(x: XState) -> np.ndarray:
    """Dense 4x4 rho_AB, rows/cols |00>, |01>, |10>, |11>."""
    rho = np.diag(np.array([x.d1, x.d2, x.d3, x.d4], dtype=complex))
    rho[0, 3] = rho[3, 0] = x.gamma_c / 4.0
    rho[1, 2] = rho[2, 1] = x.omega_c / 4.0
    return rho


def initial_matrix(s0: BellDiagonalState) -> np.ndarray:
    """rho_AB(0) = (I + sum_i r_i sigma_i (x) sigma_i) / 4"""
    rho = np.eye(4, dtype=complex)
    for r, sigma in zip((s0.r1, s0.r2, s0.r3), PAULI):
        rho = rho + r * np.kron(sigma, sigma)
    return rho / 4.0


def eigenvalues_xstate(x: XState) -> np.ndarray:
    """
    Spectrum of the X form from its two 2x2 blocks

    Returns:
        np.ndarray: [d1 + |Gamma|/4, d1 - |Gamma|/4, d2 + |Omega|/4, d2 - |Omega|/4],
        round-off negatives clamped to 0
    """
    mean_outer = (x.d1 + x.d4) / 2.0
    mean_inner = (x.d2 + x.d3) / 2.0
    split_outer = np.hypot((x.d1 - x.d4) / 2.0, x.gamma_c / 4.0)
    split_inner = np.hypot((x.d2 - x.d3) / 2.0, x.omega_c / 4.0)
    values = np.array([
        mean_outer + split_outer,
        mean_outer - split_outer,
        mean_inner + split_inner,
        mean_inner - split_inner,
    ])
    if values.min() < -POSITIVITY_TOLERANCE:
        raise InvalidState(f"X-state eigenvalue {values.min()!r} is negative")
    return np.clip(values, 0.0, None)
