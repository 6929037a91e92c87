"""
Unit handling for the internal energy system: eV with hbar = k_B = 1.

Rates become energies, temperatures become k_B * T and times become inverse energies.
"""
from enum import Enum
from typing import Any, Mapping, Union

import numpy as np
import numpy.typing as npt

from two_photon_qhe.exceptions import ConfigurationError

EV_PER_INVERSE_CM = 1.239841984e-4
EV_PER_INVERSE_PS = 6.582119569e-4
BOLTZMANN_EV_PER_K = 8.617333262e-5
# hbar in eV * ps, so one picosecond is 1 / HBAR_EV_PS inverse eV.
HBAR_EV_PS = EV_PER_INVERSE_PS

SINC_SERIES_THRESHOLD = 1e-4

ArrayLike = Union[float, npt.NDArray[np.float64]]


class Unit(str, Enum):
    EV = 'eV'
    INVERSE_CM = 'cm^-1'
    INVERSE_PS = 'ps^-1'
    KELVIN = 'K'
    PS = 'ps'
    FS = 'fs'


_FACTORS = {
    Unit.EV: 1.0,
    Unit.INVERSE_CM: EV_PER_INVERSE_CM,
    Unit.INVERSE_PS: EV_PER_INVERSE_PS,
    Unit.KELVIN: BOLTZMANN_EV_PER_K,
    Unit.PS: 1.0 / HBAR_EV_PS,
    Unit.FS: 1e-3 / HBAR_EV_PS,
}


def parse_unit(unit: Union[str, Unit]) -> Unit:
    try:
        return Unit(unit)
    except ValueError:
        raise ConfigurationError(
            f'Unknown unit tag `{unit}`, expected one of {", ".join(u.value for u in Unit)}.',
            invariant='known-unit',
        ) from None


def to_internal_units(value: float, unit: Union[str, Unit]) -> float:
    """
    Convert a physical quantity to internal units.

    Energies, rates and temperatures come back in eV; times (`ps`, `fs`) come back in 1/eV.

    Args:
        value: Finite number expressed in `unit`.
        unit: One of the `Unit` tags.

    Returns:
        The value in internal units.

    Raises:
        ConfigurationError: When the unit tag is unknown or the value is not finite.
    """
    unit = parse_unit(unit)
    if not np.isfinite(value):
        raise ConfigurationError(f'Non-finite physical quantity `{value}` ({unit.value}).', invariant='finite-input')
    return float(value) * _FACTORS[unit]


def from_internal_units(value: float, unit: Union[str, Unit]) -> float:
    return float(value) / _FACTORS[parse_unit(unit)]


def quantity(entry: Any, key: str = '<quantity>') -> float:
    """
    Read a `{value, unit}` mapping from the configuration.

    Bare numbers are rejected: every physical quantity has to state its unit.
    """
    if not isinstance(entry, Mapping) or 'value' not in entry or 'unit' not in entry:
        raise ConfigurationError(
            f'Physical quantity `{key}` must be a mapping with `value` and `unit`, got `{entry!r}`.',
            invariant='unit-tagged',
        )
    return to_internal_units(float(entry['value']), entry['unit'])


def sinc(x: ArrayLike) -> ArrayLike:
    """
    Unnormalized sinc, sin(x)/x, with sinc(0) = 1.

    Below `SINC_SERIES_THRESHOLD` the Taylor series 1 - x^2/6 + x^4/120 is used.
    """
    x_arr = np.asarray(x, dtype=float)
    small = np.abs(x_arr) < SINC_SERIES_THRESHOLD
    safe = np.where(small, 1.0, x_arr)
    x2 = x_arr * x_arr
    result = np.where(small, 1.0 - x2 / 6.0 + x2 * x2 / 120.0, np.sin(safe) / safe)
    if result.ndim == 0:
        return float(result)
    return result


def bose_occupation(omega: float, temperature: float) -> float:
    """Mean occupation 1/(exp(omega/T) - 1); zero at zero temperature."""
    if temperature <= 0.0:
        return 0.0
    return float(1.0 / np.expm1(omega / temperature))


def bose_temperature(omega: float, occupation: float) -> float:
    """Inverse of `bose_occupation`: T = omega / ln(1 + 1/n), zero for n = 0."""
    if occupation <= 0.0:
        return 0.0
    return float(omega / np.log1p(1.0 / occupation))
