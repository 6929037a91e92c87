"""
Weak-probe regime: steady 0-1 coherence, spectroscopic power and its maxima.

The coherences are evaluated in internal units exactly as written, with the same
(5 Gamma_2 n_2 + Gamma_c n_c) rate factor for both pumps.
"""
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from two_photon_qhe._logging import get_logger
from two_photon_qhe.exceptions import DomainError, SingularityError
from two_photon_qhe.physics.engine import crossover_signs, crossover_tau
from two_photon_qhe.physics.optimize import (
    AGREEMENT_RTOL,
    DEFAULT_SCAN_POINTS,
    DEFAULT_TOL,
    MaximumResult,
    compare_with_closed_form,
    maximize,
)
from two_photon_qhe.physics.params import DimensionlessSet, PumpKind, PumpSpec, SystemParams, pump_detuning, theta

logger = get_logger(__name__)


@dataclass(frozen=True)
class SpectroResult:
    """
    Spectroscopic observables of one pump.

    Attributes:
        coherence_01: Steady rho_01, purely imaginary.
        power: Spectroscopic power at the maximizer.
        c21_star: Maximizer over c_21.
        ratio_qc: Quantum over classical maximum from the closed forms.
    """

    coherence_01: complex
    power: float
    c21_star: float
    ratio_qc: float


def _rate_factor(params: SystemParams, pump: PumpSpec) -> float:
    g2n2 = params.gamma_2 * params.n_2
    gcnc = params.gamma_c * params.n_c
    factor = pump.sigma_pr * (gcnc + g2n2) * (5.0 * g2n2 + gcnc)
    if factor == 0.0:
        raise SingularityError('Coherence denominator vanishes: degenerate rates or occupations.',
                               invariant='degenerate-rates', gamma_2=params.gamma_2, gamma_c=params.gamma_c,
                               n_2=params.n_2, n_c=params.n_c)
    return factor


def coherence_classical(params: SystemParams, pump: PumpSpec) -> complex:
    """
    rho_01 = -32 i Gamma_2 lambda n_2 delta^4 Omega_p^4
             / [(delta^2 + 4 sigma_p^2)^4 sigma_pr (Gamma_c n_c + Gamma_2 n_2)(5 Gamma_2 n_2 + Gamma_c n_c)].

    Raises:
        SingularityError: Zero rate factor.
    """
    d2 = params.delta ** 2
    magnitude = (32.0 * params.gamma_2 * pump.lam * params.n_2 * d2 ** 2 * pump.Omega_p ** 4
                 / ((d2 + 4.0 * pump.sigma_p ** 2) ** 4 * _rate_factor(params, pump)))
    return complex(0.0, -magnitude)


def coherence_entangled(params: SystemParams, pump: PumpSpec) -> complex:
    """
    rho_01 = -2 i Gamma_2 lambda n_2 delta^4 Omega_1'^2 Omega_2'^2 theta
             / [(Delta^2 + sigma_p^2)^4 sigma_pr (Gamma_c n_c + Gamma_2 n_2)(5 Gamma_2 n_2 + Gamma_c n_c)].

    The numerator carries delta while the Lorentzian carries Delta.
    """
    detuning2 = pump_detuning(params, pump) ** 2
    magnitude = (2.0 * params.gamma_2 * pump.lam * params.n_2 * params.delta ** 4 * pump.pair_product ** 2
                 * theta(params, pump) / ((detuning2 + pump.sigma_p ** 2) ** 4 * _rate_factor(params, pump)))
    return complex(0.0, -magnitude)


def coherence(params: SystemParams, pump: PumpSpec) -> complex:
    if pump.kind == PumpKind.CLASSICAL:
        return coherence_classical(params, pump)
    return coherence_entangled(params, pump)


def _profile(d: DimensionlessSet, c21: float) -> float:
    """c_21 (c_p - c_21 - 1) / [(c_21 + alpha u)(c_21 + 5 alpha u)], shared by both pumps."""
    au = d.alpha * d.u
    return c21 * (d.c_p - c21 - 1.0) / ((c21 + au) * (c21 + 5.0 * au))


def _power(kind: PumpKind, d: DimensionlessSet, sigma_pr: float, c21: float) -> float:
    s = d.sigma_p_prime
    if PumpKind(kind) == PumpKind.CLASSICAL:
        scale = 4.0 * d.alpha * d.u ** 2 * d.lambda_prime / (d.tau ** 8 * sigma_pr * s ** 8)
    else:
        scale = d.alpha * d.u ** 2 * d.lambda_prime * d.theta / (2.0 * d.tau ** 2 * sigma_pr * s ** 2)
    return scale * _profile(d, c21)


def spectro_power(kind: PumpKind, d: DimensionlessSet, sigma_pr: float, c21: Optional[float] = None) -> float:
    """
    Spectroscopic power at `c21` (defaults to `d.c_21`).

    Classical: 4 alpha c_21 u^2 (c_p - c_21 - 1) lambda' / [tau^8 sigma_pr (c_21 + alpha u)(c_21 + 5 alpha u) sigma'^8].
    Quantum: alpha c_21 u^2 (c_p - c_21 - 1) lambda' theta / [2 tau^2 sigma_pr (c_21 + alpha u)(c_21 + 5 alpha u) sigma'^2].

    Raises:
        DomainError: c_21 outside (0, c_p - 1).
        SingularityError: sigma_pr or sigma'_p is zero.
    """
    c21 = d.c_21 if c21 is None else c21
    if not 0.0 < c21 < d.c_p - 1.0:
        raise DomainError(f'c_21 = {c21} lies outside (0, {d.c_p - 1.0}).', invariant='c21-domain', c_21=c21)
    if sigma_pr == 0.0 or d.sigma_p_prime == 0.0:
        raise SingularityError('Spectroscopic power needs nonzero sigma_pr and sigma\'_p.', invariant='power-pole')
    return _power(kind, d, sigma_pr, c21)


def closed_form_max_classical(d: DimensionlessSet, sigma_pr: float) -> float:
    """u lambda' (3 c_p + 5 alpha u - 3 - C) / (2 tau^8 sigma_pr sigma'^8), C = sqrt(5 (c_p + alpha u - 1)(c_p + 5 alpha u - 1))."""
    au = d.alpha * d.u
    c = np.sqrt(5.0 * (d.c_p + au - 1.0) * (d.c_p + 5.0 * au - 1.0))
    return float(d.u * d.lambda_prime * (3.0 * d.c_p + 5.0 * au - 3.0 - c)
                 / (2.0 * d.tau ** 8 * sigma_pr * d.sigma_p_prime ** 8))


def closed_form_quantum(d: DimensionlessSet, sigma_pr: float, c21: float) -> float:
    """
    4 alpha c_21 u^2 (c_p - c_21 - 1) lambda' theta / [tau^4 sigma_pr (c_21 + alpha u)(c_21 + 5 alpha u) sigma'^4].

    Still a function of c_21; it is evaluated at the numeric maximizer.
    """
    return float(4.0 * d.alpha * d.u ** 2 * d.lambda_prime * d.theta * _profile(d, c21)
                 / (d.tau ** 4 * sigma_pr * d.sigma_p_prime ** 4))


def spectro_max_power(
        kind: PumpKind,
        d: DimensionlessSet,
        sigma_pr: float,
        points: int = DEFAULT_SCAN_POINTS,
        tol: float = DEFAULT_TOL,
        rtol: float = AGREEMENT_RTOL,
) -> MaximumResult:
    """
    Maximize the spectroscopic power over c_21 in (0, c_p - 1).

    The classical maximum is checked against its closed form. For the entangled pump the numeric
    maximum is authoritative and `analytic` holds the closed form at the numeric maximizer.
    """
    upper = d.c_p - 1.0
    if not upper > 0.0:
        raise DomainError(f'Empty maximization domain: c_p - 1 = {upper}.', invariant='c21-domain')

    def f(c21: float) -> float:
        return _power(kind, d, sigma_pr, c21)

    result = maximize(f, 0.0, upper, points=points, tol=tol)
    if PumpKind(kind) == PumpKind.CLASSICAL:
        return compare_with_closed_form(result, closed_form_max_classical(d, sigma_pr), rtol, 'spectroscopic classical')
    analytic = closed_form_quantum(d, sigma_pr, result.argmax)
    logger.debug('Entangled spectroscopic maximum %s; closed form at the maximizer %s.', result.value, analytic)
    return MaximumResult(value=result.value, argmax=result.argmax, analytic=analytic, flagged=result.flagged,
                         reason=result.reason, boundary=result.boundary)


@dataclass(frozen=True)
class SpectroRatio:
    """
    Quantum over classical spectroscopic maximum, three ways.

    Attributes:
        identity: tau^4 sigma'^4 theta.
        printed: Quotient of the closed-form maxima.
        numeric: Quotient of the maxima of the power functions.
    """

    identity: float
    printed: float
    numeric: float


def spectro_ratio(d: DimensionlessSet, sigma_pr: float, points: int = DEFAULT_SCAN_POINTS) -> SpectroRatio:
    """Ratios for pumps sharing `d`; theta comes from `d` and the classical branch ignores it."""
    classical = spectro_max_power(PumpKind.CLASSICAL, d, sigma_pr, points=points)
    quantum = spectro_max_power(PumpKind.ENTANGLED, d, sigma_pr, points=points)
    identity = (d.tau * d.sigma_p_prime) ** 4 * d.theta
    printed = closed_form_quantum(d, sigma_pr, classical.argmax) / closed_form_max_classical(d, sigma_pr)
    return SpectroRatio(identity=identity, printed=printed, numeric=quantum.value / classical.value)


@dataclass(frozen=True)
class SpectroCrossover:
    """
    Attributes:
        tau: Crossover, None when the ratio never reaches one on the search interval.
        sign_below: Sign of (ratio - 1) just below the crossover.
        sign_above: Sign of (ratio - 1) just above it.
    """

    tau: Optional[float]
    sign_below: int
    sign_above: int


def _printed_ratio(d: DimensionlessSet, sigma_pr: float) -> Callable[[float], float]:
    c21_star = spectro_max_power(PumpKind.CLASSICAL, d, sigma_pr).argmax

    def ratio(tau: float) -> float:
        at = d.replace(tau=tau)
        return closed_form_quantum(at, sigma_pr, c21_star) / closed_form_max_classical(at, sigma_pr)
    return ratio


def spectro_crossover(d: DimensionlessSet, sigma_pr: float, lo: float = 1e-4, hi: float = 1.0,
                      points: int = 200) -> SpectroCrossover:
    """
    tau where the closed-form quantum and classical spectroscopic maxima coincide.

    The maximizer does not depend on tau, so it is located once.
    """
    ratio = _printed_ratio(d, sigma_pr)
    tau = crossover_tau(ratio, lo, hi, points)
    if tau is None:
        return SpectroCrossover(tau=None, sign_below=0, sign_above=0)
    below, above = crossover_signs(ratio, tau)
    return SpectroCrossover(tau=tau, sign_below=below, sign_above=above)


def spectro_observables(params: SystemParams, pump: PumpSpec, d: DimensionlessSet) -> SpectroResult:
    """Coherence, spectroscopic maximum and the closed-form ratio for one pump and its reduced set."""
    maximum = spectro_max_power(pump.kind, d, pump.sigma_pr)
    ratio = spectro_ratio(d.replace(theta=theta(params, pump)), pump.sigma_pr)
    return SpectroResult(coherence_01=coherence(params, pump), power=maximum.value, c21_star=maximum.argmax,
                         ratio_qc=ratio.printed)
