"""Spin-chain environment: Bogoliubov angles, quasiparticle spectrum and the
decoherence factors |F_mu,nu(t)| of the two-qubit pointer states.

All kernels are vectorized over the mode angles a_k = 2 pi k / N; the scalar
operations are thin wrappers so both paths share one implementation.
"""
from typing import Sequence, Tuple, Union

import numpy as np

from app.exceptions import DomainError
from app.models import AngleConvention, ChainParams, DecoherencePair, EffectiveFields

ArrayLike = Union[float, np.ndarray]

# running products below this are reported as full decoherence
UNDERFLOW_FLOOR = 1e-300


def mode_cutoff(n: int) -> int:
    """M = floor((N - 1) / 2).

    For even N the skipped k = N/2 mode has sin a_k = 0, hence a unit factor.
    """
    return (n - 1) // 2


def mode_angles(p: ChainParams) -> np.ndarray:
    """a_k = 2 pi k / N for k = 1..M, ascending."""
    ks = np.arange(1, mode_cutoff(p.N) + 1, dtype=float)
    return 2.0 * np.pi * ks / p.N


def _mode_angle(p: ChainParams, k: int) -> float:
    m = mode_cutoff(p.N)
    if not 1 <= k <= m:
        raise DomainError(f"mode index k={k} outside 1..{m} for N={p.N}")
    return 2.0 * np.pi * k / p.N


def _check_pointer(mu: int) -> None:
    if mu not in (1, 2, 3, 4):
        raise DomainError(f"pointer index {mu} outside 1..4")


def effective_fields(p: ChainParams) -> EffectiveFields:
    """lambda_1(4) = lambda +- g, lambda_2(3) = lambda +- g delta."""
    lam, g, delta = p.lambda_, p.g, p.delta_coupling
    return EffectiveFields(lambda_mu=(lam + g, lam + g * delta, lam - g * delta, lam - g))


def bogoliubov_angle(
    lambda_mu: float,
    gamma: float,
    a: ArrayLike,
    convention: AngleConvention = AngleConvention.PAPER_LITERAL,
) -> np.ndarray:
    """theta = arctan(gamma sin a / (lambda_mu - cos a)) on the requested branch.

    PaperLiteral keeps the principal single-argument branch and returns
    +-pi/2 (by sign of the numerator) on a vanishing denominator.
    QuadrantAware uses the two-argument form. A vanishing numerator gives 0
    under both conventions.
    """
    a = np.asarray(a, dtype=float)
    num = gamma * np.sin(a)
    den = lambda_mu - np.cos(a)
    if convention is AngleConvention.QUADRANT_AWARE:
        theta = np.arctan2(num, den)
    else:
        with np.errstate(divide="ignore", invalid="ignore"):
            theta = np.arctan(num / den)
        theta = np.where(den == 0.0, np.sign(num) * (np.pi / 2), theta)
    return np.where(num == 0.0, 0.0, theta)


def _big_theta(lambda_mu: float, p: ChainParams, a: ArrayLike) -> np.ndarray:
    perturbed = bogoliubov_angle(lambda_mu, p.gamma, a, p.angle_convention)
    unperturbed = bogoliubov_angle(p.lambda_, p.gamma, a, p.angle_convention)
    return (perturbed - unperturbed) / 2.0


def _epsilon(lambda_mu: float, p: ChainParams, a: ArrayLike) -> np.ndarray:
    a = np.asarray(a, dtype=float)
    return np.hypot(lambda_mu - np.cos(a), p.gamma * np.sin(a))


def _spectrum(lambda_mu: float, p: ChainParams, a: ArrayLike) -> np.ndarray:
    a = np.asarray(a, dtype=float)
    return 2.0 * (_epsilon(lambda_mu, p, a) + 2.0 * p.D * np.sin(a))


def theta_k(lambda_mu: float, p: ChainParams, k: int) -> float:
    return float(bogoliubov_angle(lambda_mu, p.gamma, _mode_angle(p, k), p.angle_convention))


def big_theta(lambda_mu: float, p: ChainParams, k: int) -> float:
    """Theta_k = (theta_k(lambda_mu) - theta_k(lambda)) / 2"""
    return float(_big_theta(lambda_mu, p, _mode_angle(p, k)))


def epsilon_k(lambda_mu: float, p: ChainParams, k: int) -> float:
    return float(_epsilon(lambda_mu, p, _mode_angle(p, k)))


def spectrum_k(lambda_mu: float, p: ChainParams, k: int) -> float:
    """Lambda_k = 2 (epsilon_k + 2 D sin a_k); negative for a strong enough negative D."""
    return float(_spectrum(lambda_mu, p, _mode_angle(p, k)))


def per_mode_bracket(
    theta_mu: ArrayLike,
    theta_nu: ArrayLike,
    phase_mu: ArrayLike,
    phase_nu: ArrayLike,
) -> np.ndarray:
    """Unclamped per-mode bracket |F_k|^2 with phase = Lambda_k t. Broadcasts."""
    s_mu = np.sin(2.0 * np.asarray(theta_mu))
    s_nu = np.sin(2.0 * np.asarray(theta_nu))
    x_mu = np.sin(phase_mu)
    x_nu = np.sin(phase_nu)
    return (
        1.0
        - s_mu ** 2 * x_mu ** 2
        - s_nu ** 2 * x_nu ** 2
        + 2.0 * s_mu * s_nu * x_mu * x_nu * np.cos(np.subtract(phase_mu, phase_nu))
        - 4.0 * s_mu * s_nu * np.sin(np.subtract(theta_mu, theta_nu)) ** 2 * x_mu ** 2 * x_nu ** 2
    )


def per_mode_factor(mu: int, nu: int, k: int, t: float, p: ChainParams) -> float:
    """Bracketed term of the mode product for a single k, clamped to [0, 1]."""
    _check_pointer(mu)
    _check_pointer(nu)
    if t < 0:
        raise DomainError(f"time must be nonnegative, got {t}")
    a = _mode_angle(p, k)
    fields = effective_fields(p)
    lam_mu, lam_nu = fields.of(mu), fields.of(nu)
    bracket = per_mode_bracket(
        _big_theta(lam_mu, p, a),
        _big_theta(lam_nu, p, a),
        _spectrum(lam_mu, p, a) * t,
        _spectrum(lam_nu, p, a) * t,
    )
    return float(np.clip(bracket, 0.0, 1.0))


def decoherence_factors(mu: int, nu: int, t_grid: Sequence[float], p: ChainParams) -> np.ndarray:
    """|F_mu,nu(t)| on a whole time grid.

    The mode product runs sequentially in ascending k, so every grid point
    reduces in the same order and results are bit-reproducible.
    """
    _check_pointer(mu)
    _check_pointer(nu)
    t = np.asarray(t_grid, dtype=float).reshape(-1, 1)
    if np.any(t < 0):
        raise DomainError("time grid contains negative times")

    a = mode_angles(p)
    fields = effective_fields(p)
    lam_mu, lam_nu = fields.of(mu), fields.of(nu)

    bracket = per_mode_bracket(
        _big_theta(lam_mu, p, a),
        _big_theta(lam_nu, p, a),
        _spectrum(lam_mu, p, a) * t,
        _spectrum(lam_nu, p, a) * t,
    )
    modulus = np.sqrt(np.clip(bracket, 0.0, 1.0))
    product = np.cumprod(modulus, axis=1)[:, -1]
    # the running product never increases, so ending below the floor == crossing it
    return np.where(product < UNDERFLOW_FLOOR, 0.0, product)


def decoherence_factor(mu: int, nu: int, t: float, p: ChainParams) -> float:
    return float(decoherence_factors(mu, nu, [t], p)[0])


def decoherence_trace(t_grid: Sequence[float], p: ChainParams) -> Tuple[np.ndarray, np.ndarray]:
    """(|F14|, |F23|) over a time grid."""
    return decoherence_factors(1, 4, t_grid, p), decoherence_factors(2, 3, t_grid, p)


def decoherence_pair(t: float, p: ChainParams) -> DecoherencePair:
    f14, f23 = decoherence_trace([t], p)
    return DecoherencePair(t=t, f14=float(f14[0]), f23=float(f23[0]))
