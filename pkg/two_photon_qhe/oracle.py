"""
Cross-module invariant checks run by `oracle-check`.

Every check returns an `OracleEntry` with the measured residual and its tolerance; required entries
decide the verdict, informational ones document known divergences between the printed forms.
"""
from dataclasses import asdict, dataclass, field
from typing import Any, Callable, Dict, List, Optional, Tuple

import numpy as np

from two_photon_qhe._logging import get_logger
from two_photon_qhe.exceptions import NumericError, OracleFailure
from two_photon_qhe.physics import engine, spectroscopy
from two_photon_qhe.physics.bath import (
    EffectiveBath,
    coherent_asymptote,
    coherent_population_classical,
    fit_bath,
    population_mismatch,
)
from two_photon_qhe.physics.dynamics import (
    G,
    L0,
    L1,
    GreenPair,
    PumpedCycle,
    PumpPulse,
    TransportMatrix,
    coherence_damping,
    ground_state,
    integrate,
    perturbative_coherence,
    population_green_function,
    steady_state,
)
from two_photon_qhe.physics.engine import EfficiencyForm
from two_photon_qhe.physics.optimize import central_slope
from two_photon_qhe.physics.params import DimensionlessSet, ParameterSet, PumpKind, PumpSpec, reduce, theta_factor
from two_photon_qhe.physics.spdc import JointAmplitude, phase_matching
from two_photon_qhe.physics.units import bose_occupation, sinc

logger = get_logger(__name__)

QHE_CROSSOVER_TARGET = 0.0048
SPECTRO_CROSSOVER_TARGET = 0.07
CROSSOVER_TOL = 0.2

# (order in the pump amplitude, coarse amplitude) of the weak-pump extrapolation
WEAK_PUMP = {PumpKind.CLASSICAL: (4, 0.25), PumpKind.ENTANGLED: (2, 1.0 / 32.0)}


@dataclass
class OracleEntry:
    name: str
    required: bool
    passed: bool
    residual: float
    tolerance: float
    detail: str = ''


@dataclass
class OracleReport:
    entries: List[OracleEntry] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(entry.passed for entry in self.entries if entry.required)

    @property
    def failures(self) -> List[str]:
        return [entry.name for entry in self.entries if entry.required and not entry.passed]

    def to_rows(self) -> List[Dict[str, Any]]:
        return [asdict(entry) for entry in self.entries]

    def raise_for_failures(self) -> None:
        if not self.passed:
            raise OracleFailure(f'Required invariants failed: {", ".join(self.failures)}.', report=self.to_rows(),
                                invariant=self.failures[0])


def _entry(name: str, residual: float, tolerance: float, required: bool = True, detail: str = '') -> OracleEntry:
    passed = bool(np.isfinite(residual) and residual <= tolerance)
    return OracleEntry(name=name, required=required, passed=passed, residual=float(residual), tolerance=tolerance,
                       detail=detail)


def bath_asymptote(fig3: ParameterSet) -> OracleEntry:
    """Thermal and coherent rho_11 share their long-time limit; the transient mismatch is reported."""
    params, pump = fig3.system, fig3.classical
    bath = fit_bath(params, pump)
    thermal_limit = bath.n_h / (1.0 + 2.0 * bath.n_h)
    residual = abs(thermal_limit - coherent_asymptote(params, pump))
    transient = population_mismatch(params, pump).max_abs_diff
    return _entry('bath-asymptote', residual, 1e-10, detail=f'max transient mismatch {transient:.3e}')


def ode_vs_closed_form(fig3: ParameterSet, points: int = 20) -> OracleEntry:
    """
    Equation of motion driven by the pump pulse envelope against the closed-form coherent rho_11.

    The closed form assumes an instantaneous pulse; it is scaled by the weak-pulse transfer factor of
    the finite envelope, with the probe and the cold channel off.
    """
    params, pump = fig3.system.replace(gamma_c=0.0), fig3.classical.replace(lam=0.0)
    relaxation = params.gamma_2 * (2.0 * params.n_2 + 1.0)
    times = np.logspace(0.0, np.log10(5.0), points) / relaxation
    trajectory = integrate(ground_state(), float(times[-1]), params, pump, times=times, pulse=True)
    factor = PumpPulse.from_pump(params, pump).transfer_factor(coherence_damping(params)[0])
    closed = factor * np.array([coherent_population_classical(float(t), params, pump)[0] for t in times])
    residual = float(np.max(np.abs(trajectory.population('1') - closed) / closed))
    return _entry('ode-vs-closed-form', residual, 2e-2,
                  detail=f'{points} log-spaced times, finite-pulse factor {factor:.6f}')


def table_closure(d: DimensionlessSet, taus: List[float]) -> OracleEntry:
    """Bound rows fed back into the tabulated efficiency recover their target efficiencies."""
    residual = 0.0
    for kind in PumpKind:
        base = d.replace(theta=1.0)
        for tau in taus:
            for row in engine.bound_table(kind, base.replace(tau=tau)):
                residual = max(residual, abs(row.eta_tabulated - row.eta_target))
    return _entry('table-closure', residual, 1e-8, detail=f'tau in {taus}, both pumps')


def random_admissible_set(rng: np.random.Generator, kind: PumpKind, tau: Optional[float] = None,
                          c_p: Optional[float] = None) -> DimensionlessSet:
    """
    Draw a reduced set on which the engine power has an interior positive maximum.

    c_p in [1.5, 6], tau in [0.05, 0.9] unless given, alpha in [c_p, c_p + 4],
    (tau sigma')^8 <= 0.3 or (tau sigma')^4 <= theta / 2.
    """
    c_p = rng.uniform(1.5, 6.0) if c_p is None else c_p
    theta = rng.uniform(0.5, 1.0) if kind == PumpKind.ENTANGLED else 1.0
    tau = rng.uniform(0.05, 0.9) if tau is None else tau
    if kind == PumpKind.CLASSICAL:
        k = rng.uniform(1e-3, 0.3)
        sigma = k ** 0.125 / tau
    else:
        k = rng.uniform(1e-3, 0.5 * theta)
        sigma = k ** 0.25 / tau
    return DimensionlessSet(
        tau=tau, c_p=c_p, c_21=0.5, lambda_prime=rng.uniform(0.5, 10.0), sigma_p_prime=sigma,
        u=rng.uniform(0.5, 5.0), v=rng.uniform(0.05, 2.0), alpha=rng.uniform(c_p, c_p + 4.0), theta=theta, kind=kind,
    )


def maxima(rng: np.random.Generator, samples: int = 100) -> List[OracleEntry]:
    """Stationarity of the numeric maxima, and agreement with the closed forms or a flag."""
    worst_slope = 0.0
    unflagged_disagreement = 0
    flagged = 0
    skipped = 0
    for _ in range(samples):
        for kind in PumpKind:
            d = random_admissible_set(rng, kind)
            try:
                result = engine.maximize_power(kind, d)
            except NumericError as e:
                logger.debug('Skipping random set %s: %s', d, e.message)
                skipped += 1
                continue
            if result.flagged:
                flagged += 1
            elif not result.relative_difference <= 1e-6:
                unflagged_disagreement += 1
            if not result.boundary:
                slope = central_slope(lambda c: engine.power_dimensionless(kind, d, c), result.argmax)
                worst_slope = max(worst_slope, abs(slope) / abs(result.value))
    return [
        _entry('maximum-stationarity', worst_slope, 1e-6, detail=f'{samples} sets per pump, {skipped} without a maximum'),
        _entry('maximum-closed-form', float(unflagged_disagreement), 0.0,
               detail=f'{flagged} of {2 * samples} flagged against the printed closed forms'),
    ]


def qhe_window(classical: DimensionlessSet, entangled: DimensionlessSet) -> OracleEntry:
    tau = engine.qhe_crossover(classical, entangled)
    residual = float('inf') if tau is None else abs(tau / QHE_CROSSOVER_TARGET - 1.0)
    return _entry('qhe-crossover', residual, CROSSOVER_TOL, detail=f'crossover tau {tau}')


def spectro_window(classical: DimensionlessSet, entangled: DimensionlessSet, sigma_pr: float) -> List[OracleEntry]:
    d = classical.replace(theta=entangled.theta)
    crossover = spectroscopy.spectro_crossover(d, sigma_pr)
    if crossover.tau is None:
        return [_entry('spectro-crossover', float('inf'), CROSSOVER_TOL, detail='no crossover')]
    scaled = crossover.tau * d.sigma_p_prime * d.theta ** 0.25
    signs_flip = crossover.sign_below < 0 < crossover.sign_above
    return [
        _entry('spectro-crossover',
               abs(crossover.tau / SPECTRO_CROSSOVER_TARGET - 1.0) if signs_flip else float('inf'), CROSSOVER_TOL,
               detail=f'crossover tau {crossover.tau}, signs below/above {crossover.sign_below}/{crossover.sign_above}'),
        _entry('spectro-crossover-identity', abs(scaled - 1.0) if signs_flip else float('inf'), 1e-6, required=False,
               detail=f"tau sigma'_p theta^(1/4) = {scaled}"),
    ]


def regime_complementarity(classical: DimensionlessSet, entangled: DimensionlessSet, sigma_pr: float) -> OracleEntry:
    """
    The entangled pump wins the maximum power below its crossover and the spectroscopic power above its own.

    Signs of (ratio - 1) just below and above each crossover: (+, -) for the engine, (-, +) for spectroscopy.
    """
    tau_qhe = engine.qhe_crossover(classical, entangled)
    spectro = spectroscopy.spectro_crossover(classical.replace(theta=entangled.theta), sigma_pr)
    if tau_qhe is None or spectro.tau is None:
        return _entry('regime-complementarity', float('inf'), 0.0,
                      detail=f'crossovers: engine {tau_qhe}, spectroscopic {spectro.tau}')
    qhe_signs = engine.qhe_crossover_signs(classical, entangled, tau_qhe)
    spectro_signs = (spectro.sign_below, spectro.sign_above)
    complementary = qhe_signs == (1, -1) and spectro_signs == (-1, 1)
    return _entry('regime-complementarity', 0.0 if complementary else float('inf'), 0.0,
                  detail=f'engine signs {qhe_signs} at tau {tau_qhe:.4g}, '
                         f'spectroscopic signs {spectro_signs} at tau {spectro.tau:.4g}')


def _log_slope(amplitudes: np.ndarray, values: List[float]) -> float:
    return float(np.polyfit(np.log(amplitudes), np.log(values), 1)[0])


def intensity_scaling(parameter_set: ParameterSet) -> List[OracleEntry]:
    """Log-log slope of the asymptotic rho_11 over two decades of weak pump amplitude."""
    amplitudes = np.logspace(-3.0, -1.0, 9)
    entries = []
    for kind, expected in ((PumpKind.CLASSICAL, 4.0), (PumpKind.ENTANGLED, 2.0)):
        pump = parameter_set.pump(kind)
        slope = _log_slope(amplitudes, [coherent_asymptote(parameter_set.system, pump.scaled(s)) for s in amplitudes])
        entries.append(_entry(f'intensity-scaling-{kind.value}', abs(slope - expected), 0.02,
                              detail=f'slope {slope:.6f}'))
    return entries


def _coherence(parameter_set: ParameterSet, pump: PumpSpec) -> complex:
    return complex(steady_state(parameter_set.system, pump)[L0, L1])


def richardson(coarse: float, fine: float, order: int) -> float:
    """Weak-pump limit from values at amplitudes eps and eps/2 whose first correction is of order eps^order."""
    factor = 2.0 ** order
    return (factor * fine - coarse) / (factor - 1.0)


def steady_state_coherence(fig7: ParameterSet) -> List[OracleEntry]:
    """
    Stationary 0-1 coherence of the driven engine against its rate-picture closed form.

    Per pump the coherence is solved at the amplitudes eps and eps/2. Its coefficient rho_01 / eps^n
    is extrapolated to the weak-pump limit, and the relative gap between the steady-state engine power
    and the first-order spectroscopic power has to close as eps^n.
    """
    params = fig7.system
    entries = []

    worst = 0.0
    for kind in PumpKind:
        pump = fig7.pump(kind)
        exact = perturbative_coherence(params, pump)
        worst = max(worst, abs(_coherence(fig7, pump) - exact) / abs(exact))
    entries.append(_entry('coherence-vs-steady-state', worst, 1e-6,
                          detail='reference pumps, exact rate-picture coherence'))

    for kind, (order, eps) in WEAK_PUMP.items():
        pump = fig7.pump(kind)
        leading = perturbative_coherence(params, pump, leading=True).imag
        coarse, fine = (_coherence(fig7, pump.scaled(a)).imag / a ** order for a in (eps, eps / 2.0))
        extrapolated = richardson(coarse, fine, order)
        entries.append(_entry(f'steady-state-richardson-{kind.value}', abs(extrapolated / leading - 1.0), 1e-2,
                              detail=f'amplitudes {eps:g}, {eps / 2.0:g}; extrapolated {extrapolated:.6e}, '
                                     f'closed form {leading:.6e}'))

        gaps = [engine.first_order_power_gap(params, pump.scaled(a)) for a in (eps, eps / 2.0)]
        slope = float(np.log2(gaps[0] / gaps[1])) if gaps[1] > 0.0 else float('nan')
        entries.append(_entry(f'perturbative-consistency-{kind.value}', abs(slope - order), 0.15,
                              detail=f'relative power gaps {gaps[0]:.3e}, {gaps[1]:.3e}; slope {slope:.4f}'))

        printed = spectroscopy.coherence(params, pump).imag
        entries.append(_entry(f'printed-coherence-vs-extrapolated-{kind.value}',
                              abs(printed / extrapolated - 1.0), 0.05, required=False,
                              detail=f'printed weak-pump coherence {printed:.6e}, extrapolated {extrapolated:.6e}'))

    pump = fig7.classical
    rho = steady_state(params, pump)
    cycle = PumpedCycle.from_params(params, pump)
    cold_flux = cycle.cold_down * rho[L0, L0].real - cycle.cold_up * rho[G, G].real
    direct = engine.power_from_coherence(rho, params, pump)
    entries.append(_entry('power-coherence-vs-cold-flux',
                          abs(direct - (params.omega_c - params.omega_h) * cold_flux) / abs(direct), 1e-6,
                          detail=f'coherence power {direct:.6e}, cold flux {cold_flux:.6e}'))

    def closed_form_power() -> OracleEntry:
        closed = engine.engine_observables(fit_bath(params, pump), params, pump).power_signed
        return _entry('power-closed-form-vs-steady-state', abs(direct - closed) / max(abs(closed), 1e-300), 0.05,
                      required=False, detail=f'closed form {closed:.6e}, steady state {direct:.6e}, '
                                             f'ratio {closed / direct:.4g}')
    entries.append(_guarded('power-closed-form-vs-steady-state', closed_form_power))
    return entries


def property_suite(fig3: ParameterSet, fig7: ParameterSet, rng: np.random.Generator,
                   carnot_samples: int = 10_000, ceiling_samples: int = 500) -> List[OracleEntry]:
    entries = []

    params, pump = fig7.system, fig7.classical
    t_end = 20.0 / pump.Omega_p
    trajectory = integrate(ground_state(), t_end, params, pump, times=np.linspace(0.0, t_end, 11))
    traces = np.abs(np.trace(trajectory.states, axis1=1, axis2=2) - 1.0)
    hermiticity = np.abs(trajectory.states - np.conj(np.transpose(trajectory.states, (0, 2, 1)))).max()
    entries.append(_entry('trace-conservation', float(traces.max()), 1e-9))
    entries.append(_entry('hermiticity', float(hermiticity), 1e-12))

    system = fig3.system.replace(gamma_e=fig3.system.gamma_2, n_e=0.5)
    transport = TransportMatrix.from_params(system)
    scale = float(np.abs(transport.kappa).max())
    entries.append(_entry('transport-column-sums', float(np.abs(transport.column_sums).max()) / scale, 1e-12))

    green = 0.0
    for pair in GreenPair:
        for t in np.logspace(-1.0, 1.0, 5) / (system.gamma_2 * (2.0 * system.n_2 + 1.0)):
            green = max(green, abs(transport.green_function(pair.target, pair.source, float(t))
                                   - population_green_function(pair, float(t), system)))
    entries.append(_entry('green-function', green, 1e-10))

    ja = JointAmplitude(A0=1.0, omega_p=1.3, sigma=0.02)
    theta_residual = 0.0
    for t_ent in rng.uniform(0.0, 1e4, 50):
        omega_2ep, omega_epg = params.omega_2ep, params.omega_epg + rng.uniform(-1e-3, 1e-3)
        linked = float(phase_matching(omega_2ep, omega_epg, ja.replace(T_ent=float(t_ent)))) ** 2
        theta_residual = max(theta_residual, abs(theta_factor(float(t_ent), omega_2ep, omega_epg) - linked))
    entries.append(_entry('theta-single-source', theta_residual, 1e-12))

    entries.extend(carnot_ceiling(rng, ceiling_samples))
    entries.append(_entry('carnot-ceiling-observables', float(carnot_violations(fig7, rng, carnot_samples)), 0.0,
                          detail=f'{carnot_samples} random baths'))

    x = rng.uniform(-50.0, 50.0, 1000)
    values = np.asarray(sinc(x))
    sinc_residual = float(max(np.abs(values - np.asarray(sinc(-x))).max(), max(0.0, np.abs(values).max() - 1.0)))
    entries.append(_entry('sinc-even-bounded', sinc_residual, 0.0))
    return entries


def random_carnot_set(rng: np.random.Generator, kind: PumpKind) -> DimensionlessSet:
    """Random set with tau in [0.01, 0.99] and c_p in [1, 1/tau]."""
    tau = rng.uniform(0.01, 0.99)
    return random_admissible_set(rng, kind, tau=tau, c_p=rng.uniform(1.0, 1.0 / tau))


def carnot_ceiling(rng: np.random.Generator, samples: int = 500) -> List[OracleEntry]:
    """
    Efficiency at maximum power against 1 - tau on random Carnot-admissible sets.

    The efficiency at the numeric maximizer decides. The printed full and weak forms are evaluated on
    the same sets; their excursions above the ceiling are flagged, not required.
    """
    violations, evaluated, skipped = 0, 0, 0
    printed: Dict[EfficiencyForm, int] = {EfficiencyForm.FULL: 0, EfficiencyForm.WEAK: 0}
    worst: Dict[EfficiencyForm, Tuple[float, str]] = {}
    for _ in range(samples):
        for kind in PumpKind:
            d = random_carnot_set(rng, kind)
            if not engine.carnot_admissible(d):
                skipped += 1
                continue
            try:
                eta = engine.efficiency_at_max_power(kind, d, EfficiencyForm.MAXIMIZER)
            except NumericError:
                skipped += 1
                continue
            evaluated += 1
            if eta > d.eta_carnot + 1e-12:
                violations += 1
            for form in printed:
                try:
                    excess = engine.efficiency_at_max_power(kind, d, form) - d.eta_carnot
                except NumericError:
                    continue
                if excess > 1e-12:
                    printed[form] += 1
                    if excess > worst.get(form, (0.0, ''))[0]:
                        worst[form] = (excess, f'{kind.value} tau {d.tau:.5g} c_p {d.c_p:.5g}')
    detail = '; '.join(f'{form.value}: {count}' + (f' (worst excess {worst[form][0]:.3e} at {worst[form][1]})'
                                                      if form in worst else '')
                       for form, count in printed.items())
    return [
        _entry('carnot-ceiling', float(violations), 0.0,
               detail=f'{evaluated} admissible sets with c_p tau < 1, {skipped} without a maximum'),
        _entry('carnot-ceiling-printed-forms', float(sum(printed.values())), 0.0, required=False,
               detail=f'printed efficiencies above 1 - tau on the same sets; {detail}'),
    ]


def carnot_violations(parameter_set: ParameterSet, rng: np.random.Generator, samples: int) -> int:
    """Engine-regime efficiencies above 1 - T_c/T_h among random hot and cold temperatures."""
    params, pump = parameter_set.system, parameter_set.classical
    violations = 0
    for _ in range(samples):
        t_c, t_h = rng.uniform(0.01, 0.5, 2)
        system = params.replace(n_c=bose_occupation(params.omega_c, t_c), T_c=t_c)
        bath = EffectiveBath(n_h=bose_occupation(params.omega_h, t_h), gamma_h=params.gamma_2, T_h=t_h,
                             omega_h=params.omega_h)
        try:
            result = engine.engine_observables(bath, system, pump)
        except NumericError:
            continue
        if result.regime == 'engine' and result.efficiency > 1.0 - t_c / t_h + 1e-12:
            violations += 1
    return violations


def _guarded(name: str, check: Callable[[], OracleEntry], required: bool = False) -> OracleEntry:
    """Run `check`, turning a numeric failure into a failed entry."""
    try:
        return check()
    except NumericError as e:
        return OracleEntry(name=name, required=required, passed=False, residual=float('nan'), tolerance=float('nan'),
                           detail=f'{type(e).__name__}: {e.message}')


def _guarded_list(name: str, check: Callable[[], List[OracleEntry]]) -> List[OracleEntry]:
    try:
        return check()
    except NumericError as e:
        return [OracleEntry(name=name, required=True, passed=False, residual=float('nan'), tolerance=float('nan'),
                            detail=f'{type(e).__name__}: {e.message}')]


def informational(fig7: ParameterSet, classical: DimensionlessSet, verbatim_report: bool = True) -> List[OracleEntry]:
    params, pump = fig7.system, fig7.classical
    entries = []

    if verbatim_report:
        def verbatim() -> OracleEntry:
            divergence = float(np.abs(steady_state(params, pump, verbatim=True) - steady_state(params, pump)).max())
            return _entry('verbatim-vs-consistent', divergence, float('inf'), required=False,
                          detail='largest steady-state element difference')
        entries.append(_guarded('verbatim-vs-consistent', verbatim))

    amplitudes = np.logspace(-3.0, -1.0, 5)
    slope = _log_slope(amplitudes, [abs(spectroscopy.coherence_classical(params, pump.scaled(s))) for s in amplitudes])
    entries.append(_entry('coherence-quartic-scaling', abs(slope - 4.0), 0.02, required=False,
                          detail=f'slope {slope:.6f}'))

    def weak_table() -> OracleEntry:
        rows = engine.bound_table(PumpKind.CLASSICAL, classical.replace(tau=0.5))
        weak = max((abs(row.eta_weak - row.eta_target) for row in rows if np.isfinite(row.eta_weak)),
                   default=float('nan'))
        return _entry('printed-weak-form-table-residual', weak, float('inf'), required=False,
                      detail='printed weak-dissipation efficiency at the bound rows, tau = 0.5')
    entries.append(_guarded('printed-weak-form-table-residual', weak_table))

    def quotient() -> OracleEntry:
        ratio = spectroscopy.spectro_ratio(classical, pump.sigma_pr)
        return _entry('spectro-power-quotient', abs(ratio.numeric - ratio.identity) / ratio.identity,
                      float('inf'), required=False,
                      detail=f'power-function quotient {ratio.numeric:.6e}, identity {ratio.identity:.6e}')
    entries.append(_guarded('spectro-power-quotient', quotient))
    return entries


def run_oracle(fig3: ParameterSet, fig7: ParameterSet, seed: int = 0, verbatim_report: bool = True,
               taus: tuple = (0.1, 0.25, 0.5, 0.75)) -> OracleReport:
    """
    Run every check on the two reference parameter sets.

    Args:
        fig3: Weak-pump set with equal hot and cold occupations.
        fig7: Reference engine set.
        seed: Seed of the random property checks.
        verbatim_report: Include the printed-dissipator steady-state divergence.
        taus: tau values of the table closure.
    """
    rng = np.random.default_rng(seed)
    classical = reduce(fig7.system, fig7.classical)
    entangled = reduce(fig7.system, fig7.entangled)

    report = OracleReport()
    report.entries.append(bath_asymptote(fig3))
    report.entries.append(_guarded('ode-vs-closed-form', lambda: ode_vs_closed_form(fig3), required=True))
    report.entries.append(_guarded('table-closure', lambda: table_closure(classical, list(taus)), required=True))
    report.entries.extend(maxima(rng))
    report.entries.append(_guarded('qhe-crossover', lambda: qhe_window(classical, entangled), required=True))
    report.entries.extend(spectro_window(classical, entangled, fig7.classical.sigma_pr))
    report.entries.append(_guarded('regime-complementarity',
                                   lambda: regime_complementarity(classical, entangled, fig7.classical.sigma_pr),
                                   required=True))
    report.entries.extend(intensity_scaling(fig3))
    report.entries.extend(_guarded_list('steady-state-coherence', lambda: steady_state_coherence(fig7)))
    report.entries.extend(property_suite(fig3, fig7, rng))
    report.entries.extend(informational(fig7, classical, verbatim_report))

    for entry in report.entries:
        log = logger.info if entry.passed or not entry.required else logger.warning
        log('%s: %s (residual %s, tolerance %s)', entry.name, 'pass' if entry.passed else 'fail', entry.residual,
            entry.tolerance)
    return report
