"""Twin-photon state of a type-II down-converter: pump envelope, phase matching, joint amplitude and correlation."""
import dataclasses
from dataclasses import dataclass
from typing import Any, Mapping, Union

import numpy as np
import numpy.typing as npt
import pandas as pd

from two_photon_qhe.exceptions import ConfigurationError, DomainError
from two_photon_qhe.physics.params import PumpSpec
from two_photon_qhe.physics.units import quantity, sinc

DEFAULT_GRID = 512

ArrayLike = Union[float, npt.NDArray[np.float64]]
ComplexLike = Union[complex, npt.NDArray[np.complex128]]


@dataclass(frozen=True)
class JointAmplitude:
    """
    Parameters of the twin-photon amplitude phi(omega_i, omega_s) = N A(omega_i + omega_s) Phi(omega_s, omega_i).

    Attributes:
        A0: Envelope amplitude scale.
        omega_p: Pump center frequency.
        sigma: Pump bandwidth.
        T_ent: Entanglement time, in inverse energy.
        normalization: State normalization N.
    """

    A0: float
    omega_p: float
    sigma: float
    T_ent: float = 0.0
    normalization: float = 1.0

    def __post_init__(self) -> None:
        if not self.sigma > 0.0:
            raise DomainError(f'Pump bandwidth must be positive, got {self.sigma}.', invariant='sigma-positive')
        if self.T_ent < 0.0:
            raise DomainError(f'Entanglement time must be nonnegative, got {self.T_ent}.', invariant='T_ent-nonnegative')

    def replace(self, **changes: Any) -> 'JointAmplitude':
        return dataclasses.replace(self, **changes)

    @classmethod
    def from_config(cls, block: Mapping[str, Any]) -> 'JointAmplitude':
        """Build from a `sweep.spdc`-style block: `omega_p`, `sigma`, `T_ent` quantities and a bare `amplitude`."""
        try:
            return cls(
                A0=float(block.get('amplitude', 1.0)),
                omega_p=quantity(block['omega_p'], 'omega_p'),
                sigma=quantity(block['sigma'], 'sigma'),
                T_ent=quantity(block['T_ent'], 'T_ent') if 'T_ent' in block else 0.0,
            )
        except KeyError as e:
            raise ConfigurationError(f'SPDC block is missing `{e.args[0]}`.', invariant='config-complete') from None


def pump_envelope(omega: ArrayLike, ja: JointAmplitude) -> ComplexLike:
    """Lorentzian A0 / (omega - omega_p + i sigma)."""
    return ja.A0 / (np.asarray(omega) - ja.omega_p + 1j * ja.sigma)


def phase_matching(omega_s: ArrayLike, omega_i: ArrayLike, ja: JointAmplitude) -> ArrayLike:
    """sinc[(omega_s - omega_i) T / 2]."""
    return sinc((np.asarray(omega_s) - np.asarray(omega_i)) * ja.T_ent / 2.0)


def entanglement_time(length: float, v_s: float, v_i: float) -> float:
    """T = L (1/v_s - 1/v_i), the group delay between the twin photons across the crystal."""
    return length * (1.0 / v_s - 1.0 / v_i)


def phase_mismatch(
        omega_s: ArrayLike,
        omega_i: ArrayLike,
        v_s: float,
        v_i: float,
        gvd_s: float = 0.0,
        gvd_i: float = 0.0,
) -> ArrayLike:
    """
    Wave-vector mismatch expanded about the degenerate point.

    (omega_s - omega_i)(1/v_s - 1/v_i) + (gvd_s + gvd_i)(omega_s - omega_i)^2 / 4, scaled so that
    sinc(dk L / 2) is the phase-matching factor at zero group-velocity dispersion.
    """
    detuning = np.asarray(omega_s) - np.asarray(omega_i)
    return detuning * (1.0 / v_s - 1.0 / v_i) + (gvd_s + gvd_i) * detuning ** 2 / 4.0


def joint_amplitude(omega_i: ArrayLike, omega_s: ArrayLike, ja: JointAmplitude) -> ComplexLike:
    return ja.normalization * pump_envelope(np.asarray(omega_i) + np.asarray(omega_s), ja) \
        * phase_matching(omega_s, omega_i, ja)


def joint_spectral_intensity(ja: JointAmplitude, window: float, size: int = DEFAULT_GRID) -> pd.DataFrame:
    """
    |phi|^2 on a size x size grid of width `window` centered at (omega_p/2, omega_p/2).

    Returns:
        Frame with columns `omega_i, omega_s, magnitude2`, omega_i varying slowest.
    """
    if size < 1:
        raise ConfigurationError(f'Grid size must be at least 1, got {size}.', invariant='count-positive')
    if not window > 0.0:
        raise ConfigurationError(f'Grid window must be positive, got {window}.', invariant='window-positive')
    axis = ja.omega_p / 2.0 + (np.linspace(-window / 2.0, window / 2.0, size) if size > 1 else np.zeros(1))
    omega_i, omega_s = np.meshgrid(axis, axis, indexing='ij')
    magnitude2 = np.abs(joint_amplitude(omega_i, omega_s, ja)) ** 2
    return pd.DataFrame({
        'omega_i': omega_i.ravel(),
        'omega_s': omega_s.ravel(),
        'magnitude2': magnitude2.ravel(),
    })


def two_photon_correlation(omega_1: ArrayLike, omega_2: ArrayLike, ja: JointAmplitude,
                           coupling: float = 1.0) -> ComplexLike:
    """
    Field correlation that replaces the classical Omega_1 Omega_2 product.

    coupling N A0 sqrt(omega_1 omega_2) / (omega_1 + omega_2 - omega_p + i sigma) sinc[(omega_2 - omega_1) T / 2],
    where `coupling` absorbs the dipole moments, the quantization volume and the vacuum permittivity.
    """
    w1, w2 = np.asarray(omega_1, dtype=float), np.asarray(omega_2, dtype=float)
    if np.any(w1 <= 0.0) or np.any(w2 <= 0.0):
        raise DomainError('Correlation needs positive frequencies.', invariant='frequencies-positive')
    return (coupling * ja.normalization * ja.A0 * np.sqrt(w1 * w2) / (w1 + w2 - ja.omega_p + 1j * ja.sigma)
            * sinc((w2 - w1) * ja.T_ent / 2.0))


def entangled_rabi_product(ja: JointAmplitude, omega_1: float, omega_2: float, coupling: float = 1.0) -> float:
    """|Omega_1' Omega_2'| delivered by the twin-photon field at (omega_1, omega_2)."""
    return float(np.abs(two_photon_correlation(omega_1, omega_2, ja, coupling)))


def entangled_pump(ja: JointAmplitude, omega_1: float, omega_2: float, coupling: float = 1.0,
                   lam: float = 0.0, sigma_pr: float = 1.0) -> PumpSpec:
    """Entangled `PumpSpec` whose pair product is the correlation at (omega_1, omega_2), split evenly."""
    amplitude = float(np.sqrt(entangled_rabi_product(ja, omega_1, omega_2, coupling)))
    return PumpSpec.entangled(omega_p=ja.omega_p, Omega_1p=amplitude, Omega_2p=amplitude, sigma_p=ja.sigma,
                              T_ent=ja.T_ent, lam=lam, sigma_pr=sigma_pr)
