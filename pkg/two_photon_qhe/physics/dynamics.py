"""
Density-matrix equation of motion over the level basis (g, 0, e, e', 1, 2).

Two dissipator flavours are available:

* consistent (default): Lindblad jump operators for the thermal channels 2-1, 0-g and optionally e'-e,
  so every rate line follows from one detailed-balance pair per channel;
* verbatim: the printed rate lines, including the 1-level line fed by rho_00 and rho_gg, with the
  printed coherence damping constants; rho_00 closes the trace.

The pump enters either through the ladder couplings g-e(e')-2, through the effective g-2 coupling
left after eliminating the far-detuned intermediate levels, or as a pulse envelope on that coupling.
"""
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np
import numpy.typing as npt
import pandas as pd
import scipy.linalg
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import breadth_first_order, connected_components

from two_photon_qhe._logging import get_logger
from two_photon_qhe.exceptions import (
    IntegrationError,
    NonUniqueSteadyStateError,
    RegimeError,
    SingularityError,
    SteadyStateError,
)
from two_photon_qhe.physics.params import LEVEL_INDEX, LEVELS, PumpKind, PumpSpec, SystemParams, pump_detuning
from two_photon_qhe.physics.units import sinc

logger = get_logger(__name__)

DensityMatrix = npt.NDArray[np.complex128]

N_LEVELS = len(LEVELS)
G, L0, E, EP, L1, L2 = (LEVEL_INDEX[name] for name in LEVELS)

PULSE_WINDOW = 12.0
PULSE_STEPS_PER_WIDTH = 20.0


class Drive(str, Enum):
    """How a continuous pump enters the Hamiltonian."""

    NONE = 'none'
    LADDER = 'ladder'
    ELIMINATED = 'eliminated'


@dataclass(frozen=True)
class Detunings:
    """Rotating-frame offsets omega_eg - nu_1, omega_2e - nu_2 and omega_10 - nu_pr."""

    pump_1: float = 0.0
    pump_2: float = 0.0
    probe: float = 0.0


@dataclass(frozen=True)
class Channel:
    """Thermal channel between `lower` and `upper` with rate `rate` and occupation `occupation`."""

    lower: int
    upper: int
    rate: float
    occupation: float

    @property
    def down(self) -> float:
        return self.rate * (self.occupation + 1.0)

    @property
    def up(self) -> float:
        return self.rate * self.occupation


def thermal_channels(params: SystemParams, include_e: bool = False) -> List[Channel]:
    channels = [
        Channel(L1, L2, params.gamma_2, params.n_2),
        Channel(G, L0, params.gamma_c, params.n_c),
    ]
    if include_e:
        channels.append(Channel(E, EP, params.gamma_e, params.n_e))
    return channels


def ground_state() -> DensityMatrix:
    rho = np.zeros((N_LEVELS, N_LEVELS), dtype=complex)
    rho[G, G] = 1.0
    return rho


def hermitize(rho: DensityMatrix) -> DensityMatrix:
    return 0.5 * (rho + rho.conj().T)


def effective_coupling(params: SystemParams, pump: PumpSpec, verbatim: bool = False) -> float:
    """
    Two-photon g-2 coupling with the intermediate levels eliminated.

    Each pathway k in (e, e') contributes Omega_1 Omega_2 Delta_k / (Delta_k^2 + sigma_p^2) with
    Delta_k = omega_kg - omega_p / 2, the pump bandwidth broadening the intermediate detuning. The
    printed model keeps the e pathway only; the entangled coupling carries the phase-matching factor
    sinc[T (omega_2e' - omega_e'g) / 2]. Light shifts are dropped.
    """
    detunings = [params.omega_eg - pump.omega_p / 2.0]
    if not verbatim:
        detunings.append(params.omega_epg - pump.omega_p / 2.0)
    pathways = sum(x / (x ** 2 + pump.sigma_p ** 2) for x in detunings)
    coupling = pump.pair_product * pathways
    if pump.kind == PumpKind.ENTANGLED:
        coupling *= float(sinc(pump.T_ent * (params.omega_2ep - params.omega_epg) / 2.0))
    return float(coupling)


def pump_pulse_amplitude(params: SystemParams, pump: PumpSpec) -> complex:
    """
    Two-photon transition amplitude g -> 2 of a broadband pump pulse.

    The classical amplitude multiplies the e and e' pathways through the Lorentzian
    x / (x^2 + sigma_p^2) at x = delta/2 and x = delta_tilde/2; the entangled amplitude is the
    phase-matched product Omega_1' Omega_2' sqrt(omega_2e' omega_e'g) sinc(...) Delta / (Delta^2 + sigma_p^2).
    """
    sigma = pump.sigma_p

    def lorentz(x: float) -> complex:
        return 0.5 * (1.0 / (x - 1j * sigma) + 1.0 / (x + 1j * sigma))

    if pump.kind == PumpKind.CLASSICAL:
        return complex(pump.Omega_p ** 2 * lorentz(params.delta / 2.0) * lorentz(params.delta_tilde / 2.0))
    phase = float(sinc(pump.T_ent * (params.omega_2ep - params.omega_epg) / 2.0))
    return complex(
        pump.Omega_1p * pump.Omega_2p * np.sqrt(params.omega_2ep * params.omega_epg) * phase
        * lorentz(pump_detuning(params, pump))
    )


@dataclass(frozen=True)
class PumpPulse:
    """
    Pump pulse on the g-2 coupling with a two-sided exponential envelope.

    Omega(t) = area * sigma / 2 * exp(-sigma |t - center|) integrates to `area`; its spectrum is a
    Lorentzian of half width `sigma`. The default center puts the centroid of the weak-pulse excitation
    at t = 0.

    Attributes:
        area: Pulse area, the transition amplitude transferred by an undamped weak pulse.
        sigma: Spectral half width (inverse duration).
        center: Peak time.
    """

    area: float
    sigma: float
    center: Optional[float] = None

    def __post_init__(self) -> None:
        if not self.sigma > 0.0:
            raise ValueError(f'Pulse width must be positive, got {self.sigma}.')
        if self.center is None:
            object.__setattr__(self, 'center', -0.75 / self.sigma)

    @classmethod
    def from_pump(cls, params: SystemParams, pump: PumpSpec) -> 'PumpPulse':
        """
        Pulse whose area is the two-photon amplitude of `pump`, with the pump bandwidth.

        Raises:
            RegimeError: When the transferred probability exceeds one.
        """
        area = abs(pump_pulse_amplitude(params, pump))
        if area ** 2 > 1.0:
            raise RegimeError(f'Pump pulse transfers probability {area ** 2} > 1; the perturbative pulse is invalid.',
                              invariant='perturbative-regime')
        return cls(area=area, sigma=pump.sigma_p)

    @property
    def start(self) -> float:
        return self.center - PULSE_WINDOW / self.sigma

    @property
    def end(self) -> float:
        return self.center + PULSE_WINDOW / self.sigma

    @property
    def peak(self) -> float:
        return 0.5 * self.area * self.sigma

    def coupling(self, t: float) -> float:
        return self.peak * float(np.exp(-self.sigma * abs(t - self.center)))

    def transfer_factor(self, damping: float) -> float:
        """
        Weak-pulse transfer probability over area^2 when the g-2 coherence decays at `damping`.

        (1/2) [1 / (1 + damping / sigma) + 1 / (1 + damping / sigma)^2].
        """
        x = 1.0 / (1.0 + damping / self.sigma)
        return 0.5 * (x + x * x)


def coherence_damping(params: SystemParams) -> Tuple[float, float]:
    """Decay rates (gamma_g2, gamma_01) of the g-2 and 0-1 coherences under the consistent dissipator."""
    gamma_g2 = 0.5 * (params.gamma_c * params.n_c + params.gamma_2 * (params.n_2 + 1.0))
    gamma_01 = 0.5 * (params.gamma_c * (params.n_c + 1.0) + params.gamma_2 * params.n_2)
    return gamma_g2, gamma_01


@dataclass
class MasterEquation:
    """
    Linear generator of the density-matrix dynamics for fixed parameters.

    Attributes:
        params: System parameters.
        pump: Pump and probe couplings.
        verbatim: Use the printed rate lines instead of Lindblad channels.
        drive: How the continuous pump enters the Hamiltonian.
        include_e: Add the e'-e relaxation channel (consistent mode only).
        detunings: Rotating-frame offsets.
        pulse: Time-dependent g-2 coupling added on top of the static Hamiltonian.
    """

    params: SystemParams
    pump: PumpSpec
    verbatim: bool = False
    drive: Drive = Drive.ELIMINATED
    include_e: bool = False
    detunings: Detunings = field(default_factory=Detunings)
    pulse: Optional[PumpPulse] = None

    def __post_init__(self) -> None:
        self.drive = Drive(self.drive)
        self.hamiltonian = self._hamiltonian()
        self.jumps = [] if self.verbatim else self._jump_operators()
        self._anticommutator = sum((j.conj().T @ j for j in self.jumps), np.zeros((N_LEVELS, N_LEVELS), dtype=complex))

    def _hamiltonian(self) -> npt.NDArray[np.complex128]:
        d = self.detunings
        h = np.zeros((N_LEVELS, N_LEVELS), dtype=complex)
        h[E, E] = d.pump_1
        h[EP, EP] = self.params.omega_ep - self.params.omega_e + d.pump_1
        h[L2, L2] = d.pump_1 + d.pump_2
        h[L1, L1] = d.probe

        if self.drive == Drive.LADDER:
            if self.pump.kind == PumpKind.CLASSICAL:
                omega_1 = omega_2 = self.pump.Omega_p
            else:
                omega_1, omega_2 = self.pump.Omega_1p, self.pump.Omega_2p
            pairs = [(G, E, omega_1), (E, L2, omega_2)]
            if not self.verbatim:
                pairs += [(G, EP, omega_1), (EP, L2, omega_2)]
            for a, b, value in pairs:
                h[a, b] = h[b, a] = value
        elif self.drive == Drive.ELIMINATED:
            h[G, L2] = h[L2, G] = effective_coupling(self.params, self.pump, verbatim=self.verbatim)

        h[L1, L0] = h[L0, L1] = self.pump.lam
        return h

    def _jump_operators(self) -> List[npt.NDArray[np.complex128]]:
        jumps = []
        for channel in thermal_channels(self.params, self.include_e):
            for rate, target, source in ((channel.down, channel.lower, channel.upper),
                                         (channel.up, channel.upper, channel.lower)):
                if rate > 0.0:
                    op = np.zeros((N_LEVELS, N_LEVELS), dtype=complex)
                    op[target, source] = np.sqrt(rate)
                    jumps.append(op)
        return jumps

    def rhs(self, rho: DensityMatrix, t: float = 0.0) -> DensityMatrix:
        h = self.hamiltonian
        if self.pulse is not None:
            h = h.copy()
            value = self.pulse.coupling(t)
            h[G, L2] += value
            h[L2, G] += value
        drho = -1j * (h @ rho - rho @ h)
        if self.verbatim:
            drho += self._printed_dissipator(rho)
        else:
            for j in self.jumps:
                drho += j @ rho @ j.conj().T
            drho -= 0.5 * (self._anticommutator @ rho + rho @ self._anticommutator)
        return drho

    def _printed_dissipator(self, rho: DensityMatrix) -> DensityMatrix:
        p = self.params
        out = np.zeros_like(rho)
        out[G, G] = p.gamma_c * (p.n_c + 1.0) * rho[L0, L0] - p.gamma_c * p.n_c * rho[G, G]
        out[L2, L2] = -p.gamma_2 * (p.n_2 + 1.0) * rho[L2, L2] + p.gamma_2 * p.n_2 * rho[L1, L1]
        out[L1, L1] = -p.gamma_2 * (p.n_2 + 1.0) * rho[L0, L0] + p.gamma_c * p.n_c * rho[G, G]
        out[L0, L0] = -(out[G, G] + out[L2, L2] + out[L1, L1])

        damping = {
            (L2, E): p.gamma_2 * (p.n_2 + 1.0) / 2.0,
            (E, G): p.gamma_c * p.n_c / 2.0,
            (L2, G): p.gamma_2 * (p.n_2 + 1.0) / 2.0 + p.gamma_c * p.n_c / 2.0,
            (L1, L0): p.gamma_2 * p.n_2 / 2.0 + p.gamma_c * (p.n_c + 1.0) / 2.0,
        }
        for (a, b), gamma in damping.items():
            out[a, b] = -gamma * rho[a, b]
            out[b, a] = -gamma * rho[b, a]
        return out

    @property
    def max_rate(self) -> float:
        """Upper bound on the generator's spectral radius, used to pick the initial step."""
        coherent = float(np.abs(self.hamiltonian).sum(axis=1).max())
        if self.pulse is not None:
            coherent += self.pulse.peak
        dissipative = sum(c.down + c.up for c in thermal_channels(self.params, True))
        return 2.0 * coherent + dissipative

    def generator(self) -> npt.NDArray[np.complex128]:
        """Matrix of the map rho -> d rho/dt of the static part on row-major flattened density matrices."""
        size = N_LEVELS * N_LEVELS
        out = np.zeros((size, size), dtype=complex)
        static = MasterEquation(self.params, self.pump, verbatim=self.verbatim, drive=self.drive,
                                include_e=self.include_e, detunings=self.detunings) if self.pulse else self
        for k in range(size):
            basis = np.zeros(size, dtype=complex)
            basis[k] = 1.0
            out[:, k] = static.rhs(basis.reshape(N_LEVELS, N_LEVELS)).ravel()
        return out


def eom_rhs(
        rho: DensityMatrix,
        t: float,
        params: SystemParams,
        pump: PumpSpec,
        verbatim: bool = False,
        drive: Drive = Drive.ELIMINATED,
        include_e: bool = False,
        detunings: Optional[Detunings] = None,
        pulse: Optional[PumpPulse] = None,
) -> DensityMatrix:
    """
    Time derivative of the density matrix at time `t`.

    Only the `pulse` envelope depends on `t`; the rest of the generator is static in the rotating frame.
    """
    equation = MasterEquation(params, pump, verbatim=verbatim, drive=drive, include_e=include_e,
                              detunings=detunings or Detunings(), pulse=pulse)
    return equation.rhs(rho, t)


def vectorized_generator(
        params: SystemParams,
        pump: PumpSpec,
        levels: Optional[Sequence[str]] = None,
        **kwargs: object,
) -> npt.NDArray[np.complex128]:
    """Generator restricted to the matrix elements between `levels` (all levels by default)."""
    full = MasterEquation(params, pump, **kwargs).generator()  # type: ignore[arg-type]
    if levels is None:
        return full
    idx = [LEVEL_INDEX[name] for name in levels]
    flat = [a * N_LEVELS + b for a in idx for b in idx]
    return full[np.ix_(flat, flat)]


@dataclass(frozen=True)
class PumpedCycle:
    """
    Stationary current of the resonantly driven cycle g -> 2 -> 1 -> 0 -> g.

    With the eliminated drive and the consistent dissipator the stationary state carries only the
    populations of g, 0, 1, 2 and the g-2 and 0-1 coherences. Those coherences turn the pump and the probe
    into the rates W_p = 2 Omega_eff^2 / gamma_g2 and W = 2 lambda^2 / gamma_01, and the four population
    balances close exactly.

    Attributes:
        pump_rate: W_p.
        probe_rate: W.
        cold_up: g -> 0 rate Gamma_c n_c.
        cold_down: 0 -> g rate Gamma_c (n_c + 1).
        hot_up: 1 -> 2 rate Gamma_2 n_2.
        hot_down: 2 -> 1 rate Gamma_2 (n_2 + 1).
    """

    pump_rate: float
    probe_rate: float
    cold_up: float
    cold_down: float
    hot_up: float
    hot_down: float

    @classmethod
    def from_params(cls, params: SystemParams, pump: PumpSpec) -> 'PumpedCycle':
        """
        Raises:
            SingularityError: When the cold or the 2-1 channel is closed.
        """
        if not (params.gamma_c > 0.0 and params.gamma_2 > 0.0):
            raise SingularityError('The pumped cycle needs open cold and 2-1 channels.', invariant='cycle-rates',
                                   gamma_c=params.gamma_c, gamma_2=params.gamma_2)
        gamma_g2, gamma_01 = coherence_damping(params)
        return cls(
            pump_rate=2.0 * effective_coupling(params, pump) ** 2 / gamma_g2,
            probe_rate=2.0 * pump.lam ** 2 / gamma_01,
            cold_up=params.gamma_c * params.n_c,
            cold_down=params.gamma_c * (params.n_c + 1.0),
            hot_up=params.gamma_2 * params.n_2,
            hot_down=params.gamma_2 * (params.n_2 + 1.0),
        )

    @property
    def _balance(self) -> float:
        return 1.0 - self.cold_up * self.hot_up / (self.cold_down * self.hot_down)

    @property
    def current(self) -> float:
        """Exact stationary current J = W_p (rho_gg - rho_22)."""
        wp, w = self.pump_rate, self.probe_rate
        if wp == 0.0 or w == 0.0:
            return 0.0
        a, b, c, d = self.cold_up, self.cold_down, self.hot_up, self.hot_down
        per_ground = wp * d * self._balance / (wp * (1.0 + c / b + c / w) + d)
        ground = 1.0 / (2.0 + 2.0 * (per_ground + a) / b + per_ground / w - per_ground / wp)
        return ground * per_ground

    @property
    def leading_current(self) -> float:
        """Lowest order of J in the pump rate, W_p rho_gg^(0) (1 - r_c r_2)."""
        r_c = self.cold_up / self.cold_down
        r_2 = self.hot_up / self.hot_down
        return self.pump_rate * self._balance / (1.0 + 2.0 * r_c + r_c * r_2) if self.probe_rate > 0.0 else 0.0


def perturbative_coherence(params: SystemParams, pump: PumpSpec, leading: bool = False) -> complex:
    """
    Stationary rho_01 = -i J / (2 lambda) of the eliminated-drive engine.

    Args:
        params: System parameters.
        pump: Pump and probe, on resonance.
        leading: Keep only the lowest order in the pump intensity.

    Raises:
        SingularityError: When the cold or the 2-1 channel is closed.
    """
    if pump.lam == 0.0:
        return 0j
    cycle = PumpedCycle.from_params(params, pump)
    current = cycle.leading_current if leading else cycle.current
    return complex(-0.5j * current / pump.lam)


@dataclass
class Trajectory:
    times: npt.NDArray[np.float64]
    states: npt.NDArray[np.complex128]

    def __iter__(self) -> Iterator[Tuple[float, DensityMatrix]]:
        return iter(zip(self.times, self.states))

    def __len__(self) -> int:
        return len(self.times)

    def population(self, level: str) -> npt.NDArray[np.float64]:
        i = LEVEL_INDEX[level]
        return np.real(self.states[:, i, i])

    def element(self, row: str, col: str) -> npt.NDArray[np.complex128]:
        return self.states[:, LEVEL_INDEX[row], LEVEL_INDEX[col]]

    def to_frame(self) -> pd.DataFrame:
        data: Dict[str, npt.NDArray[np.float64]] = {'t': self.times}
        for level in ('g', '0', '1', '2', 'e', 'ep'):
            data[f'rho_{level}{level}'] = self.population(level)
        for row, col in (('0', '1'), ('2', 'g')):
            value = self.element(row, col)
            data[f're_rho_{row}{col}'] = value.real
            data[f'im_rho_{row}{col}'] = value.imag
        return pd.DataFrame(data)


def _rk4_step(equation: MasterEquation, rho: DensityMatrix, t: float, h: float) -> DensityMatrix:
    k1 = equation.rhs(rho, t)
    k2 = equation.rhs(rho + 0.5 * h * k1, t + 0.5 * h)
    k3 = equation.rhs(rho + 0.5 * h * k2, t + 0.5 * h)
    k4 = equation.rhs(rho + h * k3, t + h)
    return rho + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def integrate(
        rho0: DensityMatrix,
        t_end: float,
        params: SystemParams,
        pump: PumpSpec,
        dt: Optional[float] = None,
        times: Optional[Sequence[float]] = None,
        verbatim: bool = False,
        drive: Drive = Drive.ELIMINATED,
        include_e: bool = False,
        pulse: bool = False,
        detunings: Optional[Detunings] = None,
        rtol: float = 1e-8,
        atol: float = 1e-15,
        min_step: Optional[float] = None,
) -> Trajectory:
    """
    Integrate the equation of motion with classical RK4 and step-halving error control.

    Each step is compared against two half steps; the half-step result is kept when the elementwise
    difference is within atol + rtol |rho|, otherwise the step is halved. Output times are hit exactly,
    steps stay below a twentieth of the pulse width while the pulse is on and the state is symmetrized
    after every accepted step.

    Args:
        rho0: Initial density matrix.
        t_end: Final time (inverse energy).
        params: System parameters.
        pump: Pump and probe couplings.
        dt: Initial step; defaults to 0.05 over the generator's rate bound.
        times: Output times in [0, t_end]; 101 equidistant points by default.
        verbatim: Use the printed rate lines.
        drive: Continuous pump coupling. Ignored (off) when `pulse` is set.
        include_e: Add the e'-e channel.
        pulse: Drive with the pump pulse envelope instead; `rho0` is the state before the pulse,
            which starts at `PumpPulse.start` < 0.
        detunings: Rotating-frame offsets.
        rtol: Relative tolerance of the step-halving test.
        atol: Absolute tolerance of the step-halving test.
        min_step: Smallest admissible step; defaults to 1e-12 * t_end.

    Returns:
        The trajectory sampled at the output times.

    Raises:
        IntegrationError: When the step underflows `min_step`.
        RegimeError: When the pulse transfers more than the full population.
    """
    if not t_end > 0.0:
        raise ValueError(f'`t_end` must be positive, got {t_end}.')
    if dt is not None and not dt > 0.0:
        raise ValueError(f'`dt` must be positive, got {dt}.')

    envelope = PumpPulse.from_pump(params, pump) if pulse else None
    equation = MasterEquation(params, pump, verbatim=verbatim, drive=Drive.NONE if pulse else drive,
                              include_e=include_e, detunings=detunings or Detunings(), pulse=envelope)

    output = np.linspace(0.0, t_end, 101) if times is None else np.asarray(sorted(times), dtype=float)
    if output[0] < 0.0 or output[-1] > t_end * (1.0 + 1e-12):
        raise ValueError('Output times must lie within [0, t_end].')

    rate = equation.max_rate
    h = dt if dt is not None else (0.05 / rate if rate > 0.0 else t_end)
    min_step = min_step if min_step is not None else 1e-12 * t_end
    pulse_step = float('inf') if envelope is None else 1.0 / (PULSE_STEPS_PER_WIDTH * envelope.sigma)
    pulse_end = -float('inf') if envelope is None else envelope.end

    rho = hermitize(np.array(rho0, dtype=complex))
    t = 0.0 if envelope is None else envelope.start
    states = np.empty((len(output), N_LEVELS, N_LEVELS), dtype=complex)
    halvings = 0
    for k, target in enumerate(output):
        while target - t > 1e-15 * max(1.0, abs(target)):
            step = min(h, target - t, pulse_step if t < pulse_end else float('inf'))
            full = _rk4_step(equation, rho, t, step)
            half = _rk4_step(equation, _rk4_step(equation, rho, t, step / 2.0), t + step / 2.0, step / 2.0)
            scale = atol + rtol * np.maximum(np.abs(rho), np.abs(half))
            error = float((np.abs(half - full) / np.maximum(scale, np.finfo(float).tiny)).max())
            if error <= 1.0:
                rho = hermitize(half)
                t += step
                if error < 1.0 / 32.0 and step == h:
                    h *= 2.0
            else:
                h = step / 2.0
                halvings += 1
                if h < min_step:
                    raise IntegrationError(
                        f'Step size underflow at t = {t}: step {h} below {min_step}, error estimate {error}.',
                        invariant='step-size', t=t, step=h, error=error,
                    )
        states[k] = rho

    logger.debug('Integrated to t = %s with %s step halvings.', t_end, halvings)
    return Trajectory(times=output, states=states)


class GreenPair(str, Enum):
    """Population Green's functions G_{target,source}."""

    COLD = '0,g'
    INTERMEDIATE = 'e,ep'
    HOT = '1,2'

    @property
    def target(self) -> str:
        return self.value.split(',')[0]

    @property
    def source(self) -> str:
        return self.value.split(',')[1]


def population_green_function(pair: GreenPair, t: float, params: SystemParams) -> float:
    """
    Closed-form probability to find the system in `pair.target` at `t` when it starts in `pair.source`.

    G_11,22 = (1 + n_2)(1 - exp(-t (1 + 2 n_2) Gamma_2)) / (1 + 2 n_2) for downward transfer,
    G_00,gg = n_c (...) / (1 + 2 n_c) for the upward cold transfer and G_ee,e'e' with (1 + n_e) downward.
    """
    pair = GreenPair(pair)
    if t < 0.0:
        raise ValueError(f'`t` must be nonnegative, got {t}.')
    if pair == GreenPair.HOT:
        rate, n, prefactor = params.gamma_2, params.n_2, 1.0 + params.n_2
    elif pair == GreenPair.COLD:
        rate, n, prefactor = params.gamma_c, params.n_c, params.n_c
    else:
        rate, n, prefactor = params.gamma_e, params.n_e, 1.0 + params.n_e
    return float(prefactor * -np.expm1(-t * (1.0 + 2.0 * n) * rate) / (1.0 + 2.0 * n))


@dataclass
class TransportMatrix:
    """
    Pauli rate matrix kappa with d rho_ii/dt = -sum_j kappa_ij rho_jj.

    Columns sum to zero, the diagonal is nonnegative and off-diagonal entries are nonpositive.
    """

    kappa: npt.NDArray[np.float64]
    levels: Tuple[str, ...] = LEVELS

    def __post_init__(self) -> None:
        self.kappa = np.asarray(self.kappa, dtype=float)
        n = len(self.levels)
        if self.kappa.shape != (n, n):
            raise ValueError(f'kappa must be {n}x{n}, got {self.kappa.shape}.')

    @classmethod
    def from_params(cls, params: SystemParams, include_e: bool = True) -> 'TransportMatrix':
        kappa = np.zeros((N_LEVELS, N_LEVELS))
        for channel in thermal_channels(params, include_e):
            kappa[channel.upper, channel.upper] += channel.down
            kappa[channel.lower, channel.upper] -= channel.down
            kappa[channel.lower, channel.lower] += channel.up
            kappa[channel.upper, channel.lower] -= channel.up
        return cls(kappa)

    @property
    def column_sums(self) -> npt.NDArray[np.float64]:
        return np.asarray(self.kappa.sum(axis=0))

    def component(self, level: str) -> List[int]:
        """Indices of the levels connected to `level` by nonzero rates."""
        adjacency = csr_matrix((np.abs(self.kappa) + np.abs(self.kappa.T)) > 0.0)
        _, labels = connected_components(adjacency, directed=False)
        start = self.levels.index(level)
        return [i for i in range(len(self.levels)) if labels[i] == labels[start]]

    def green_function(self, target: str, source: str, t: float) -> float:
        """
        G_{target,source}(t) = sum_n xi^R_{target,n} exp(-lambda_n t) xi^L_{n,source} from the eigen-decomposition.
        """
        indices = self.component(source)
        if self.levels.index(target) not in indices:
            return 0.0
        sub = self.kappa[np.ix_(indices, indices)]
        eigenvalues, right = scipy.linalg.eig(sub)
        left = scipy.linalg.inv(right)
        propagator = right @ np.diag(np.exp(-eigenvalues * t)) @ left
        i, j = indices.index(self.levels.index(target)), indices.index(self.levels.index(source))
        return float(np.real(propagator[i, j]))


def reachable_elements(generator: npt.NDArray[np.complex128], start: int = G * N_LEVELS + G) -> npt.NDArray[np.int64]:
    """Flattened matrix elements that the dynamics can populate from `start`."""
    adjacency = csr_matrix((np.abs(generator) > 0.0).T.astype(np.int8))
    order = breadth_first_order(adjacency, start, directed=True, return_predecessors=False)
    return np.sort(np.asarray(order))


def null_vector(matrix: npt.NDArray[np.complex128], rcond: float = 1e-13) -> npt.NDArray[np.complex128]:
    """
    Unit vector spanning the numerical null space of `matrix`.

    Singular values at most `rcond` times the largest one count as zero.

    Raises:
        SteadyStateError: When the null space is empty.
        NonUniqueSteadyStateError: When the null space has dimension above one.
    """
    _, singular, vh = scipy.linalg.svd(matrix)
    threshold = rcond * max(float(singular[0]), 1e-300)
    dimension = int(np.sum(singular <= threshold))
    if dimension == 0:
        raise SteadyStateError(
            f'No stationary state: smallest singular value {singular[-1]:.3e} above {threshold:.3e}.',
            invariant='steady-state-exists', smallest=float(singular[-1]),
        )
    if dimension > 1:
        raise NonUniqueSteadyStateError(
            f'Steady state is not unique: null space dimension {dimension}.', invariant='unique-steady-state',
            dimension=dimension,
        )
    return vh[-1].conj()


def steady_state(
        params: SystemParams,
        pump: PumpSpec,
        verbatim: bool = False,
        drive: Drive = Drive.ELIMINATED,
        include_e: bool = False,
        detunings: Optional[Detunings] = None,
        rcond: float = 1e-13,
        residual_tol: float = 1e-10,
) -> DensityMatrix:
    """
    Stationary density matrix from the null space of the vectorized generator.

    The generator is restricted to the matrix elements reachable from the ground state, so empty
    decoupled levels do not add stationary modes.

    Raises:
        SteadyStateError: When the restricted null space is empty or the stationary residual
            max |L rho| exceeds `residual_tol`.
        NonUniqueSteadyStateError: When the restricted null space has dimension above one.
    """
    equation = MasterEquation(params, pump, verbatim=verbatim, drive=drive, include_e=include_e,
                              detunings=detunings or Detunings())
    full = equation.generator()
    elements = reachable_elements(full)
    vector = null_vector(full[np.ix_(elements, elements)], rcond)

    rho = np.zeros(N_LEVELS * N_LEVELS, dtype=complex)
    rho[elements] = vector
    rho = rho.reshape(N_LEVELS, N_LEVELS)
    rho = hermitize(rho / np.trace(rho))
    residual = float(np.abs(full @ rho.ravel()).max())
    if not residual <= residual_tol:
        raise SteadyStateError(f'Steady state residual {residual:.3e} exceeds {residual_tol:.1e}.',
                               invariant='steady-state-residual', residual=residual)
    logger.debug('Steady state on %s elements, residual %s.', len(elements), residual)
    return rho
