import dataclasses
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Mapping, Optional, Tuple

import numpy as np

from two_photon_qhe.exceptions import ConfigurationError, DomainError, SingularityError
from two_photon_qhe.physics.units import bose_occupation, quantity, sinc

LEVELS: Tuple[str, ...] = ('g', '0', 'e', 'ep', '1', '2')
LEVEL_INDEX: Dict[str, int] = {name: i for i, name in enumerate(LEVELS)}


class PumpKind(str, Enum):
    CLASSICAL = 'classical'
    ENTANGLED = 'entangled'


@dataclass(frozen=True)
class SystemParams:
    """
    Level energies, bath couplings and occupations of the six-level molecule.

    All energies, rates and temperatures are stored in internal units (eV, hbar = k_B = 1).

    Attributes:
        omega_g: Ground state energy.
        omega_0: Vibrational level of the ground manifold (cold transition partner of `g`).
        omega_e: Lower intermediate level.
        omega_ep: Upper intermediate level e'.
        omega_1: Lower excited level (hot transition partner of `g`).
        omega_2: Pumped level.
        gamma_2: Relaxation rate of the 2-1 phonon channel.
        gamma_c: Relaxation rate of the cold 0-g channel.
        gamma_e: Relaxation rate of the optional e'-e channel.
        n_2: Occupation of the 2-1 phonon bath.
        n_c: Occupation of the cold bath.
        n_e: Occupation of the e'-e bath.
        T_2: Phonon bath temperature.
        T_c: Cold bath temperature.
    """

    omega_g: float
    omega_0: float
    omega_e: float
    omega_ep: float
    omega_1: float
    omega_2: float
    gamma_2: float
    gamma_c: float
    n_2: float
    n_c: float
    T_2: float
    T_c: float
    gamma_e: float = 0.0
    n_e: float = 0.0

    def __post_init__(self) -> None:
        for name in ('gamma_2', 'gamma_c', 'gamma_e'):
            value = getattr(self, name)
            if not value >= 0.0:
                raise ConfigurationError(f'Rate `{name}` must be nonnegative, got {value}.',
                                         invariant='rates-nonnegative', field=name)
        for name in ('n_2', 'n_c', 'n_e', 'T_2', 'T_c'):
            value = getattr(self, name)
            if not value >= 0.0:
                raise ConfigurationError(f'`{name}` must be nonnegative, got {value}.',
                                         invariant='occupations-nonnegative', field=name)
        energies = [getattr(self, f'omega_{name}') for name in LEVELS]
        if any(b < a for a, b in zip(energies, energies[1:])):
            raise ConfigurationError(
                'Level energies must satisfy omega_g <= omega_0 <= omega_e <= omega_ep <= omega_1 <= omega_2.',
                invariant='level-ordering',
            )

    @property
    def energies(self) -> Tuple[float, ...]:
        return tuple(getattr(self, f'omega_{name}') for name in LEVELS)

    @property
    def omega_c(self) -> float:
        return self.omega_0 - self.omega_g

    @property
    def omega_h(self) -> float:
        return self.omega_1 - self.omega_g

    @property
    def omega_21(self) -> float:
        return self.omega_2 - self.omega_1

    @property
    def omega_2g(self) -> float:
        return self.omega_2 - self.omega_g

    @property
    def omega_eg(self) -> float:
        return self.omega_e - self.omega_g

    @property
    def omega_epg(self) -> float:
        return self.omega_ep - self.omega_g

    @property
    def omega_2ep(self) -> float:
        return self.omega_2 - self.omega_ep

    @property
    def omega_2e(self) -> float:
        return self.omega_2 - self.omega_e

    @property
    def delta(self) -> float:
        """Splitting of the intermediate pair, omega_2e - omega_2e'."""
        return self.omega_2e - self.omega_2ep

    @property
    def delta_tilde(self) -> float:
        return self.delta + 2.0 * self.omega_2ep - 2.0 * self.omega_epg

    def replace(self, **changes: Any) -> 'SystemParams':
        return dataclasses.replace(self, **changes)


@dataclass(frozen=True)
class PumpSpec:
    """
    Two-photon pump and probe description.

    The classical pump uses `Omega_p`; the entangled pump uses the pair `Omega_1p`, `Omega_2p`
    and the entanglement time `T_ent` (inverse energy).
    """

    kind: PumpKind
    omega_p: float
    sigma_p: float
    lam: float = 0.0
    sigma_pr: float = 1.0
    Omega_p: float = 0.0
    Omega_1p: float = 0.0
    Omega_2p: float = 0.0
    T_ent: float = 0.0

    def __post_init__(self) -> None:
        if not self.sigma_p > 0.0:
            raise ConfigurationError(f'Pump bandwidth must be positive, got {self.sigma_p}.', invariant='sigma-positive')
        if not self.lam >= 0.0:
            raise ConfigurationError(f'Probe coupling must be nonnegative, got {self.lam}.', invariant='lambda-nonnegative')
        if not self.T_ent >= 0.0:
            raise ConfigurationError(f'Entanglement time must be nonnegative, got {self.T_ent}.',
                                     invariant='entanglement-time-nonnegative')
        if self.kind == PumpKind.CLASSICAL and (self.Omega_1p or self.Omega_2p or self.T_ent):
            raise ConfigurationError('Classical pump takes only `Omega_p`.', invariant='pump-kind')
        if self.kind == PumpKind.ENTANGLED and self.Omega_p:
            raise ConfigurationError('Entangled pump takes `Omega_1p` and `Omega_2p`.', invariant='pump-kind')

    @classmethod
    def classical(cls, omega_p: float, Omega_p: float, sigma_p: float, lam: float = 0.0,
                  sigma_pr: float = 1.0) -> 'PumpSpec':
        return cls(PumpKind.CLASSICAL, omega_p=omega_p, sigma_p=sigma_p, lam=lam, sigma_pr=sigma_pr, Omega_p=Omega_p)

    @classmethod
    def entangled(cls, omega_p: float, Omega_1p: float, Omega_2p: float, sigma_p: float, T_ent: float = 0.0,
                  lam: float = 0.0, sigma_pr: float = 1.0) -> 'PumpSpec':
        return cls(PumpKind.ENTANGLED, omega_p=omega_p, sigma_p=sigma_p, lam=lam, sigma_pr=sigma_pr,
                   Omega_1p=Omega_1p, Omega_2p=Omega_2p, T_ent=T_ent)

    @property
    def rabi(self) -> float:
        """Single Rabi amplitude: Omega_p, or the geometric mean of the entangled pair."""
        if self.kind == PumpKind.CLASSICAL:
            return self.Omega_p
        return float(np.sqrt(self.Omega_1p * self.Omega_2p))

    @property
    def pair_product(self) -> float:
        """Omega_1 * Omega_2 entering the two-photon amplitude."""
        if self.kind == PumpKind.CLASSICAL:
            return self.Omega_p ** 2
        return self.Omega_1p * self.Omega_2p

    def scaled(self, factor: float) -> 'PumpSpec':
        """Scale the field amplitude by `factor` (each entangled factor by its square root)."""
        if self.kind == PumpKind.CLASSICAL:
            return dataclasses.replace(self, Omega_p=self.Omega_p * factor)
        root = float(np.sqrt(factor))
        return dataclasses.replace(self, Omega_1p=self.Omega_1p * root, Omega_2p=self.Omega_2p * root)

    def replace(self, **changes: Any) -> 'PumpSpec':
        return dataclasses.replace(self, **changes)


@dataclass(frozen=True)
class DimensionlessSet:
    tau: float
    c_p: float
    c_21: float
    lambda_prime: float
    sigma_p_prime: float
    u: float
    v: float
    alpha: float
    theta: float = 1.0
    kind: PumpKind = PumpKind.CLASSICAL

    def __post_init__(self) -> None:
        if not self.tau > 0.0:
            raise DomainError(f'tau must be positive, got {self.tau}.', invariant='tau-positive')
        if not self.c_p >= 1.0:
            raise DomainError(f'c_p must be at least 1, got {self.c_p}.', invariant='pump-above-cold')
        if not 0.0 <= self.theta <= 1.0:
            raise DomainError(f'theta must lie in [0, 1], got {self.theta}.', invariant='theta-range')
        for name in ('u', 'v', 'alpha'):
            if not getattr(self, name) > 0.0:
                raise DomainError(f'`{name}` must be positive, got {getattr(self, name)}.', invariant=f'{name}-positive')

    @property
    def eta_carnot(self) -> float:
        return 1.0 - self.tau

    @property
    def k_classical(self) -> float:
        return (self.tau * self.sigma_p_prime) ** 8

    @property
    def k_quantum(self) -> float:
        return (self.tau * self.sigma_p_prime) ** 4

    def replace(self, **changes: Any) -> 'DimensionlessSet':
        return dataclasses.replace(self, **changes)

    def as_dict(self) -> Dict[str, Any]:
        data = dataclasses.asdict(self)
        data['kind'] = self.kind.value
        return data


@dataclass(frozen=True)
class ParameterSet:
    name: str
    provenance: str
    system: SystemParams
    classical: PumpSpec
    entangled: PumpSpec
    raw: Mapping[str, Any] = field(default_factory=dict, compare=False)

    def pump(self, kind: PumpKind) -> PumpSpec:
        return self.classical if PumpKind(kind) == PumpKind.CLASSICAL else self.entangled


def theta_factor(T_ent: float, omega_2ep: float, omega_epg: float) -> float:
    """sinc^2[T (omega_2e' - omega_e'g) / 2]."""
    return float(sinc(T_ent * (omega_2ep - omega_epg) / 2.0)) ** 2


def theta(params: SystemParams, pump: PumpSpec) -> float:
    if pump.kind == PumpKind.CLASSICAL:
        return 1.0
    return theta_factor(pump.T_ent, params.omega_2ep, params.omega_epg)


def pump_detuning(params: SystemParams, pump: PumpSpec) -> float:
    """Delta = omega_2g - omega_p."""
    return params.omega_2g - pump.omega_p


def effective_hot_temperature(params: SystemParams, pump: PumpSpec) -> float:
    """
    Effective hot-bath temperature T_h = (Omega Gamma_2^2 / 2 delta)^(1/2).

    For the entangled pump Omega is the geometric mean of the pair amplitudes.

    Raises:
        SingularityError: When delta = 0.
    """
    delta = params.delta
    if delta == 0.0:
        raise SingularityError('Effective hot temperature is singular at delta = 0.', invariant='delta-nonzero')
    omega = pump.rabi
    if omega == 0.0:
        return 0.0
    return float(np.sqrt(omega * params.gamma_2 ** 2 / (2.0 * delta)))


def effective_bandwidth(params: SystemParams, pump: PumpSpec) -> float:
    """
    sigma^e_p: (sigma_p^2 - delta^2/4)^(1/2) classical, (sigma_p^2 - Delta^2)^(1/2) entangled.

    Raises:
        DomainError: When the bandwidth does not exceed delta/2 (resp. Delta).
    """
    if pump.kind == PumpKind.CLASSICAL:
        limit = abs(params.delta) / 2.0
        name = 'delta/2'
    else:
        limit = abs(pump_detuning(params, pump))
        name = 'Delta'
    if not pump.sigma_p > limit:
        raise DomainError(f'Pump bandwidth {pump.sigma_p} must exceed {name} = {limit}.',
                          invariant='bandwidth-exceeds-detuning', sigma_p=pump.sigma_p, limit=limit)
    return float(np.sqrt(pump.sigma_p ** 2 - limit ** 2))


def _classical_sigma_prime(params: SystemParams, pump: PumpSpec) -> float:
    if params.delta == 0.0:
        raise SingularityError('sigma_p prime is singular at delta = 0.', invariant='delta-nonzero')
    return effective_bandwidth(params, pump) * params.gamma_2 / (params.delta * params.T_c)


def _quantum_sigma_prime(params: SystemParams, pump: PumpSpec) -> float:
    detuning = pump_detuning(params, pump)
    if detuning == 0.0:
        raise SingularityError('Entangled sigma_p prime is singular at Delta = 0.', invariant='Delta-nonzero')
    if detuning < 0.0:
        raise DomainError(f'Delta = omega_2g - omega_p must be positive, got {detuning}.', invariant='Delta-positive')
    return effective_bandwidth(params, pump) * params.gamma_2 / (detuning * params.T_c)


def reduce(params: SystemParams, pump: PumpSpec) -> DimensionlessSet:
    """
    Convert physical parameters to the reduced variables of the power formulas.

    Args:
        params: System parameters.
        pump: Classical or entangled pump.

    Returns:
        The reduced set; theta is 1 for a classical pump.

    Raises:
        DomainError: Bandwidth invariant violated.
        SingularityError: A reduced variable divides by zero (delta, Delta, Gamma_c, T_c, omega_c).
    """
    if params.T_c == 0.0 or params.omega_c == 0.0 or params.gamma_c == 0.0:
        raise SingularityError('Reduction needs T_c, omega_c and Gamma_c to be positive.', invariant='reduction-scales')
    t_h = effective_hot_temperature(params, pump)
    if t_h == 0.0:
        raise SingularityError('tau = T_c/T_h is undefined for a zero pump amplitude.', invariant='pump-nonzero')
    if pump.kind == PumpKind.CLASSICAL:
        sigma_prime = _classical_sigma_prime(params, pump)
    else:
        sigma_prime = _quantum_sigma_prime(params, pump)

    return DimensionlessSet(
        tau=params.T_c / t_h,
        c_p=pump.omega_p / params.omega_c,
        c_21=params.omega_21 / params.omega_c,
        lambda_prime=pump.lam / float(np.sqrt(params.gamma_2 * params.T_c)),
        sigma_p_prime=sigma_prime,
        u=params.gamma_2 * params.omega_c / (params.gamma_c * params.T_c),
        v=params.gamma_c / params.omega_c,
        alpha=params.T_2 / params.omega_c,
        theta=theta(params, pump),
        kind=pump.kind,
    )


def reduce_pair(params: SystemParams, classical: PumpSpec, entangled: PumpSpec
                ) -> Tuple[DimensionlessSet, DimensionlessSet]:
    return reduce(params, classical), reduce(params, entangled)


def pump_requirement(params: SystemParams, pump: PumpSpec) -> Tuple[float, bool]:
    """
    Strong-pump condition Omega_p > 4 delta (sigma^e_p)^2 / Delta^2 accompanying tau sigma'_p < 1.

    Returns:
        The threshold amplitude and whether `pump` exceeds it.
    """
    classical = pump if pump.kind == PumpKind.CLASSICAL else PumpSpec.classical(
        pump.omega_p, pump.rabi, pump.sigma_p, pump.lam, pump.sigma_pr)
    detuning = pump_detuning(params, pump)
    if detuning == 0.0:
        raise SingularityError('Pump requirement is singular at Delta = 0.', invariant='Delta-nonzero')
    threshold = 4.0 * params.delta * effective_bandwidth(params, classical) ** 2 / detuning ** 2
    return threshold, pump.rabi > threshold


def _occupation(block: Mapping[str, Any], key: str, omega: float, temperature: float) -> float:
    if key in block and block[key] is not None:
        value = block[key]
        if isinstance(value, Mapping):
            raise ConfigurationError(f'Occupation `{key}` is dimensionless, give a bare number.', invariant='unit-tagged')
        return float(value)
    return bose_occupation(omega, temperature)


def system_from_config(block: Mapping[str, Any]) -> SystemParams:
    """Build `SystemParams` from a configuration block of `{value, unit}` entries."""
    try:
        values = {name: quantity(block[name], name) for name in (
            'omega_g', 'omega_0', 'omega_e', 'omega_ep', 'omega_1', 'omega_2', 'gamma_2', 'gamma_c', 'T_2', 'T_c')}
    except KeyError as e:
        raise ConfigurationError(f'Missing system parameter {e}.', invariant='config-complete') from None
    values['gamma_e'] = quantity(block['gamma_e'], 'gamma_e') if 'gamma_e' in block else 0.0
    values['n_2'] = _occupation(block, 'n_2', values['omega_2'] - values['omega_1'], values['T_2'])
    values['n_c'] = _occupation(block, 'n_c', values['omega_0'] - values['omega_g'], values['T_c'])
    values['n_e'] = _occupation(block, 'n_e', values['omega_ep'] - values['omega_e'], 0.0)
    return SystemParams(**values)


def pump_from_config(kind: PumpKind, block: Mapping[str, Any]) -> PumpSpec:
    """Build a `PumpSpec` from a configuration block of `{value, unit}` entries."""
    kind = PumpKind(kind)

    def get(name: str, default: Optional[float] = None) -> float:
        if name not in block:
            if default is None:
                raise ConfigurationError(f'Missing pump parameter `{name}` for {kind.value} pump.',
                                         invariant='config-complete')
            return default
        return quantity(block[name], name)

    common = dict(omega_p=get('omega_p'), sigma_p=get('sigma_p'), lam=get('lambda', 0.0), sigma_pr=get('sigma_pr', 1.0))
    if kind == PumpKind.CLASSICAL:
        return PumpSpec.classical(Omega_p=get('rabi_p'), **common)
    return PumpSpec.entangled(Omega_1p=get('rabi_1p'), Omega_2p=get('rabi_2p'), T_ent=get('T_ent', 0.0), **common)


def load_parameter_set(name: str, source: Optional[Any] = None) -> ParameterSet:
    """
    Load a named parameter set from the `parameter_sets` section of the settings.

    Args:
        name: Key under `parameter_sets`.
        source: Settings object or plain mapping; defaults to the package settings.
    """
    if source is None:
        from two_photon_qhe.config import settings
        source = settings
    sets = source.get('parameter_sets') or {}
    if name not in sets:
        raise ConfigurationError(f'Unknown parameter set `{name}`.', invariant='known-parameter-set')
    block = _plain(sets[name])
    try:
        system_block, pump_block = block['system'], block['pump']
    except KeyError as e:
        raise ConfigurationError(f'Parameter set `{name}` lacks section {e}.', invariant='config-complete') from None
    return ParameterSet(
        name=name,
        provenance=str(block.get('provenance', name)),
        system=system_from_config(system_block),
        classical=pump_from_config(PumpKind.CLASSICAL, pump_block['classical']),
        entangled=pump_from_config(PumpKind.ENTANGLED, pump_block['entangled']),
        raw=block,
    )


def _plain(value: Any) -> Any:
    """Strip dynaconf box types down to dicts and lists."""
    if isinstance(value, Mapping):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    return value
