"""Coherent two-photon populations and the effective thermal bath that reproduces them."""
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np
import numpy.typing as npt
import pandas as pd

from two_photon_qhe._logging import get_logger
from two_photon_qhe.exceptions import RegimeError
from two_photon_qhe.physics.params import PumpKind, PumpSpec, SystemParams, pump_detuning, theta
from two_photon_qhe.physics.units import bose_temperature

logger = get_logger(__name__)

DEFAULT_MISMATCH_POINTS = 400

Population = Tuple[float, float]


@dataclass(frozen=True)
class EffectiveBath:
    """
    Thermal bath on the g-1 transition.

    Attributes:
        n_h: Mean occupation.
        gamma_h: Relaxation rate.
        T_h: Temperature from n_h = 1/(exp(omega_1g/T_h) - 1).
        omega_h: Transition frequency omega_1g the temperature refers to.
    """

    n_h: float
    gamma_h: float
    T_h: float
    omega_h: float

    def __post_init__(self) -> None:
        if not self.n_h >= 0.0:
            raise RegimeError(f'Effective occupation must be nonnegative, got {self.n_h}.', invariant='n_h-nonnegative')
        if not self.gamma_h > 0.0:
            raise RegimeError(f'Effective rate must be positive, got {self.gamma_h}.', invariant='gamma_h-positive')

    @classmethod
    def from_occupation(cls, n_h: float, gamma_h: float, omega_h: float) -> 'EffectiveBath':
        return cls(n_h=n_h, gamma_h=gamma_h, T_h=bose_temperature(omega_h, n_h), omega_h=omega_h)

    @property
    def relaxation(self) -> float:
        """Gamma_h (2 n_h + 1), the saturation rate of the thermal populations."""
        return self.gamma_h * (2.0 * self.n_h + 1.0)


def _saturation(t: float, params: SystemParams) -> float:
    if t < 0.0:
        raise ValueError(f'`t` must be nonnegative, got {t}.')
    return float(-np.expm1(-params.gamma_2 * (2.0 * params.n_2 + 1.0) * t))


def _checked(rho_11: float) -> Population:
    if rho_11 > 1.0:
        raise RegimeError(f'Coherent population {rho_11} exceeds one: the pump is too strong for the perturbative result.',
                          invariant='perturbative-regime', rho_11=rho_11)
    return rho_11, 1.0 - rho_11


def coherent_asymptote_classical(params: SystemParams, pump: PumpSpec, printed: bool = False) -> float:
    """
    Long-time rho_11 under the classical two-photon pump.

    16 delta^2 delta~^2 Omega_p^4 (n_2 + 1) / [(2 n_2 + 1)(delta^2 + 4 sigma_p^2)^2 (delta~^2 + 4 sigma_p^2)^2];
    `printed=True` drops the (n_2 + 1) factor.
    """
    d, dt, s2 = params.delta, params.delta_tilde, pump.sigma_p ** 2
    occupation = 1.0 if printed else params.n_2 + 1.0
    return float(
        16.0 * d ** 2 * dt ** 2 * pump.Omega_p ** 4 * occupation
        / ((2.0 * params.n_2 + 1.0) * (d ** 2 + 4.0 * s2) ** 2 * (dt ** 2 + 4.0 * s2) ** 2)
    )


def coherent_asymptote_entangled(params: SystemParams, pump: PumpSpec) -> float:
    """
    Long-time rho_11 under the entangled pump, with the pair normalization N = Omega_1' Omega_2'.

    Evaluated in internal units as printed.
    """
    detuning = pump_detuning(params, pump)
    return float(
        (pump.Omega_1p * pump.Omega_2p) ** 2 * (params.n_2 + 1.0) * params.omega_2ep * params.omega_epg
        * detuning ** 2 * theta(params, pump)
        / ((2.0 * params.n_2 + 1.0) * (pump.sigma_p ** 2 + detuning ** 2) ** 2)
    )


def coherent_asymptote(params: SystemParams, pump: PumpSpec) -> float:
    if pump.kind == PumpKind.CLASSICAL:
        return coherent_asymptote_classical(params, pump)
    return coherent_asymptote_entangled(params, pump)


def coherent_population_classical(t: float, params: SystemParams, pump: PumpSpec, printed: bool = False) -> Population:
    """
    (rho_11, rho_gg) at time `t` under the classical two-photon pump.

    Raises:
        RegimeError: When rho_11 exceeds one.
    """
    return _checked(coherent_asymptote_classical(params, pump, printed) * _saturation(t, params))


def coherent_population_entangled(t: float, params: SystemParams, pump: PumpSpec) -> Population:
    """(rho_11, rho_gg) at time `t` under the entangled pump; linear in Omega_1'^2 Omega_2'^2."""
    return _checked(coherent_asymptote_entangled(params, pump) * _saturation(t, params))


def coherent_population(t: float, params: SystemParams, pump: PumpSpec) -> Population:
    if pump.kind == PumpKind.CLASSICAL:
        return coherent_population_classical(t, params, pump)
    return coherent_population_entangled(t, params, pump)


def thermal_population(t: float, bath: EffectiveBath) -> Population:
    """rho_11 = n_h (1 - exp(-Gamma_h (2 n_h + 1) t)) / (1 + 2 n_h)."""
    if t < 0.0:
        raise ValueError(f'`t` must be nonnegative, got {t}.')
    rho_11 = bath.n_h * float(-np.expm1(-bath.relaxation * t)) / (1.0 + 2.0 * bath.n_h)
    return rho_11, 1.0 - rho_11


def _fit_from_asymptote(asymptote: float, params: SystemParams) -> EffectiveBath:
    """
    Match asymptote and initial slope of the thermal solution to the coherent one.

    With X the coherent asymptote: n_h = X / (1 - 2X), Gamma_h = Gamma_2 (2 n_2 + 1)(1 - 2X).
    """
    denominator = 1.0 - 2.0 * asymptote
    if not denominator > 0.0:
        raise RegimeError('Effective bath undefined at this pump strength.', invariant='bath-denominator',
                          asymptote=asymptote)
    n_h = asymptote / denominator
    gamma_h = params.gamma_2 * (2.0 * params.n_2 + 1.0) * denominator
    return EffectiveBath.from_occupation(n_h, gamma_h, params.omega_h)


def fit_bath_classical(params: SystemParams, pump: PumpSpec, printed_form: bool = False) -> EffectiveBath:
    """
    Effective bath for the classical two-photon pump.

    Args:
        params: System parameters.
        pump: Classical pump.
        printed_form: Use the typeset Gamma_h expression (dangling sign removed) instead of the
            consistency fit. The occupation is the same in both modes for a harmonic e' manifold.

    Raises:
        RegimeError: Nonpositive denominator of n_h (pump too strong).
    """
    bath = _fit_from_asymptote(coherent_asymptote_classical(params, pump), params)
    if not printed_form:
        return bath
    d2 = params.delta ** 2
    s2 = pump.sigma_p ** 2
    denominator = d2 + 4.0 * s2
    gamma_h = params.gamma_2 * (
        (2.0 * params.n_2 + 1.0) * denominator - 32.0 * s2 ** 2 * (params.n_2 + 1.0) * d2 ** 2
    ) / denominator ** 4
    logger.warning('Using the printed Gamma_h expression; it is not dimensionally consistent with n_h.')
    return EffectiveBath(n_h=bath.n_h, gamma_h=gamma_h, T_h=bath.T_h, omega_h=bath.omega_h)


def fit_bath_entangled(params: SystemParams, pump: PumpSpec) -> EffectiveBath:
    """
    Effective bath for the entangled pump.

    The printed parameters coincide with the consistency fit, so a single path serves both.
    """
    return _fit_from_asymptote(coherent_asymptote_entangled(params, pump), params)


def fit_bath(params: SystemParams, pump: PumpSpec, printed_form: bool = False) -> EffectiveBath:
    if pump.kind == PumpKind.CLASSICAL:
        return fit_bath_classical(params, pump, printed_form=printed_form)
    return fit_bath_entangled(params, pump)


def default_mismatch_grid(bath: EffectiveBath, points: int = DEFAULT_MISMATCH_POINTS) -> npt.NDArray[np.float64]:
    """`points` log-spaced times over [1e-3, 10] / (Gamma_h (2 n_h + 1))."""
    return np.logspace(-3.0, 1.0, points) / bath.relaxation


@dataclass
class Mismatch:
    max_abs_diff: float
    diff_series: pd.DataFrame
    bath: EffectiveBath


def population_mismatch(
        params: SystemParams,
        pump: PumpSpec,
        t_grid: Optional[Sequence[float]] = None,
        printed_form: bool = False,
) -> Mismatch:
    """
    Coherent minus thermal populations of levels 1 and g over `t_grid`.

    Returns:
        The largest absolute difference and a frame with columns
        `t, rho_11_coherent, rho_11_thermal, diff_11, rho_gg_coherent, rho_gg_thermal, diff_gg`.
    """
    bath = fit_bath(params, pump, printed_form=printed_form)
    grid = default_mismatch_grid(bath) if t_grid is None else np.asarray(t_grid, dtype=float)
    if grid.size == 0 or np.any(np.diff(grid) <= 0.0):
        raise ValueError('`t_grid` must be nonempty and strictly ascending.')

    coherent = np.array([coherent_population(float(t), params, pump) for t in grid])
    thermal = np.array([thermal_population(float(t), bath) for t in grid])
    frame = pd.DataFrame({
        't': grid,
        'rho_11_coherent': coherent[:, 0],
        'rho_11_thermal': thermal[:, 0],
        'diff_11': coherent[:, 0] - thermal[:, 0],
        'rho_gg_coherent': coherent[:, 1],
        'rho_gg_thermal': thermal[:, 1],
        'diff_gg': coherent[:, 1] - thermal[:, 1],
    })
    max_abs = float(max(frame['diff_11'].abs().max(), frame['diff_gg'].abs().max()))
    return Mismatch(max_abs_diff=max_abs, diff_series=frame, bath=bath)

