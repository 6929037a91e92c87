"""
Heat-engine observables and the dimensionless maximum-power machinery.

The dimensionless powers drop the overall T_c * omega_c scale; they are functions of
(tau, c_p, c_21, lambda', sigma'_p, u, v, alpha, theta) only.
"""
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Dict, List, Optional, Tuple, Union

import numpy as np
import numpy.typing as npt
from scipy.optimize import brentq

from two_photon_qhe._logging import get_logger
from two_photon_qhe.exceptions import DomainError, RegimeError, SingularityError
from two_photon_qhe.physics.bath import EffectiveBath
from two_photon_qhe.physics.dynamics import L0, L1, perturbative_coherence, steady_state
from two_photon_qhe.physics.optimize import (
    AGREEMENT_RTOL,
    DEFAULT_SCAN_POINTS,
    DEFAULT_TOL,
    MaximumResult,
    compare_with_closed_form,
    maximize,
)
from two_photon_qhe.physics.params import DimensionlessSet, PumpKind, PumpSpec, SystemParams

logger = get_logger(__name__)

REGION_TOL = 1e-8

ArrayLike = Union[float, npt.NDArray[np.float64]]


class EfficiencyForm(str, Enum):
    FULL = 'full'
    WEAK = 'weak'
    TABULATED = 'tabulated'
    MAXIMIZER = 'maximizer'


class Region(str, Enum):
    I = 'I'
    I_II = 'I/II'
    II = 'II'
    II_III = 'II/III'
    III = 'III'
    III_IV = 'III/IV'
    IV = 'IV'
    BOUNDARY_IV = 'boundary-IV'


BOUND_ROWS = (Region.I, Region.I_II, Region.II_III, Region.III_IV, Region.IV)


@dataclass(frozen=True)
class EngineResult:
    """
    Steady-state engine observables.

    Attributes:
        power: |P|.
        heat_flux_h: |Q_h|, heat drawn from the hot bath.
        efficiency: 1 - omega_c/omega_h, clamped at zero.
        regime: `engine` when the signed power is positive, `idle` when it vanishes, `refrigerator` otherwise.
        power_signed: P with the (omega_c - omega_h) sign convention.
        c21_star: Maximizer, when the result comes from a maximization.
        region: Efficiency region, when classified.
    """

    power: float
    heat_flux_h: float
    efficiency: float
    regime: str
    power_signed: float
    c21_star: Optional[float] = None
    region: Optional[Region] = None


def engine_observables(bath: EffectiveBath, params: SystemParams, pump: PumpSpec) -> EngineResult:
    """
    Closed-form power and efficiency of the engine driven by `bath` on the hot side.

    J = (2/3) lambda^2 Gamma_h Gamma_c (n_c - n_h) / [(Gamma_h n_h + Gamma_c n_c)(lambda^2 + Gamma_h Gamma_c n_c n_h)]
    is the photon current; P = (omega_c - omega_h) J and Q_h = omega_h J.

    The efficiency is the coherence-power ratio P / Q_h = 1 - omega_c / omega_h. On resonance
    (omega_p = omega_2g) it equals the dimensionless 1 - 1 / (c_p - c_21), see `efficiency_at`.

    Raises:
        SingularityError: When the current's denominator vanishes.
    """
    lam2 = pump.lam ** 2
    g_h, g_c = bath.gamma_h, params.gamma_c
    n_h, n_c = bath.n_h, params.n_c
    denominator = (g_h * n_h + g_c * n_c) * (lam2 + g_h * g_c * n_c * n_h)
    if denominator == 0.0:
        raise SingularityError('Photon current is singular: both occupations or the coupling vanish.',
                               invariant='current-denominator', n_h=n_h, n_c=n_c, lam=pump.lam)
    current = 2.0 / 3.0 * lam2 * g_h * g_c * (n_c - n_h) / denominator
    return _from_current(current, params)


def _from_current(current: float, params: SystemParams) -> EngineResult:
    omega_c, omega_h = params.omega_c, params.omega_h
    power = (omega_c - omega_h) * current
    if power > 0.0:
        regime = 'engine'
    elif power == 0.0:
        regime = 'idle'
    else:
        regime = 'refrigerator'
    efficiency = max(0.0, 1.0 - omega_c / omega_h) if omega_h > 0.0 else 0.0
    return EngineResult(power=abs(power), heat_flux_h=abs(omega_h * current), efficiency=efficiency,
                        regime=regime, power_signed=power)


def steady_state_observables(rho: npt.NDArray[np.complex128], params: SystemParams, pump: PumpSpec) -> EngineResult:
    """Engine observables of a density matrix, with the photon current J = -2 lambda Im rho_01."""
    return _from_current(-2.0 * pump.lam * float(np.imag(rho[L0, L1])), params)


def power_from_coherence(rho: npt.NDArray[np.complex128], params: SystemParams, pump: PumpSpec) -> float:
    """P = i lambda (omega_c - omega_h)(rho_01 - rho_10) on a density matrix."""
    current = -2.0 * pump.lam * float(np.imag(rho[L0, L1]))
    return (params.omega_c - params.omega_h) * current


def first_order_power_gap(params: SystemParams, pump: PumpSpec) -> float:
    """
    |P_ss / P_1 - 1| between the steady-state engine power and the first-order spectroscopic power.

    P_ss is read off the stationary coherence, P_1 off the leading-order coherence of the rate picture.
    The gap closes as the pump amplitude to the power 4 (classical) or 2 (entangled).
    """
    rho = steady_state(params, pump)
    first = np.zeros_like(rho)
    first[L0, L1] = perturbative_coherence(params, pump, leading=True)
    first[L1, L0] = np.conj(first[L0, L1])
    first_order = power_from_coherence(first, params, pump)
    if first_order == 0.0:
        raise SingularityError('First-order power vanishes.', invariant='first-order-power', lam=pump.lam)
    return abs(steady_state_observables(rho, params, pump).power_signed / first_order - 1.0)


def heat_flux_from_coherence(rho: npt.NDArray[np.complex128], params: SystemParams, pump: PumpSpec) -> float:
    """Q_h = i lambda omega_h (rho_01 - rho_10)."""
    return params.omega_h * -2.0 * pump.lam * float(np.imag(rho[L0, L1]))


def _classical_power(d: DimensionlessSet, c21: ArrayLike) -> ArrayLike:
    k = d.k_classical
    cp_tilde = d.c_p - c21 - 1.0
    c21_tilde = d.alpha - c21
    numerator = 4.0 * c21 * k * d.u * d.v * cp_tilde * d.lambda_prime * (c21_tilde - k * (c21_tilde - c21))
    denominator = 3.0 * (c21 * k + d.u * c21_tilde) * (c21 * k * d.lambda_prime + d.v * c21_tilde)
    return numerator / denominator


def _quantum_power(d: DimensionlessSet, c21: ArrayLike) -> ArrayLike:
    k4 = d.k_quantum
    cp_tilde = d.c_p - c21 - 1.0
    c21_tilde = d.alpha + c21
    numerator = (2.0 * d.u * d.v * c21 * cp_tilde * d.lambda_prime * k4
                 * (2.0 * d.theta * c21_tilde - k4 * (2.0 * c21_tilde - c21)))
    denominator = 3.0 * (d.u * c21_tilde * d.theta + c21 * k4) * (d.v * c21_tilde * d.theta + c21 * d.lambda_prime * k4)
    return numerator / denominator


def power_dimensionless(kind: PumpKind, d: DimensionlessSet, c21: Optional[float] = None) -> float:
    """
    Dimensionless engine power at `c21` (defaults to `d.c_21`).

    Raises:
        SingularityError: At a pole of the rational function.
    """
    c21 = np.float64(d.c_21 if c21 is None else c21)
    with np.errstate(divide='ignore', invalid='ignore'):
        value = (_classical_power if PumpKind(kind) == PumpKind.CLASSICAL else _quantum_power)(d, c21)
    if not np.isfinite(value):
        raise SingularityError(f'Dimensionless power has a pole at c_21 = {c21}.', invariant='power-pole', c_21=c21)
    return float(value)


def _safe_power(kind: PumpKind, d: DimensionlessSet) -> Callable[[float], float]:
    def f(c21: float) -> float:
        c21 = np.float64(c21)
        with np.errstate(divide='ignore', invalid='ignore'):
            if PumpKind(kind) == PumpKind.CLASSICAL:
                return float(_classical_power(d, c21))
            return float(_quantum_power(d, c21))
    return f


def analytic_max_power(kind: PumpKind, d: DimensionlessSet, m: float = 1.0) -> float:
    """
    Closed-form maximum over c_21.

    Classical: 4 u v lambda' t (2A + 2 alpha u v + k c'_p (m u + v)) / (3 k (v - u lambda')^2) with
    k = (tau sigma')^8, t = 1 - k, c'_p = c_p - 1 and A = sqrt(u v (k c'_p + alpha u)(k c'_p lambda' + alpha v)).
    Quantum: 4 u v lambda' W k c'_p^2 (theta - k) / [3 theta (X + k v c'_p)(X + k u c'_p lambda')] with
    k = (tau sigma')^4, E = alpha u v theta, W = sqrt(u v (k c'_p + E/v)(k c'_p lambda' + E/u)), X = W + E.

    Returns NaN or inf where the expression itself is undefined.
    """
    cp1 = d.c_p - 1.0
    u, v, lam, alpha = d.u, d.v, d.lambda_prime, d.alpha
    with np.errstate(divide='ignore', invalid='ignore'):
        if PumpKind(kind) == PumpKind.CLASSICAL:
            k = d.k_classical
            a = np.sqrt(u * v * (k * cp1 + alpha * u) * (k * cp1 * lam + alpha * v))
            value = (4.0 * u * v * lam * (1.0 - k) * (2.0 * a + 2.0 * alpha * u * v + k * cp1 * (m * u + v))
                     / (3.0 * k * (v - u * lam) ** 2))
        else:
            k = d.k_quantum
            e = alpha * u * v * d.theta
            w = np.sqrt(u * v * (k * cp1 + e / v) * (k * cp1 * lam + e / u))
            x = w + e
            value = (4.0 * u * v * lam * w * k * cp1 ** 2 * (d.theta - k)
                     / (3.0 * d.theta * (x + k * v * cp1) * (x + k * u * cp1 * lam)))
    return float(value)


def maximization_domain(d: DimensionlessSet) -> Tuple[float, float]:
    """High-temperature branch (0, min(c_p - 1, alpha))."""
    upper = min(d.c_p - 1.0, d.alpha)
    if not upper > 0.0:
        raise DomainError(f'Empty maximization domain: c_p - 1 = {d.c_p - 1.0}, alpha = {d.alpha}.',
                          invariant='c21-domain')
    return 0.0, upper


def maximize_power(
        kind: PumpKind,
        d: DimensionlessSet,
        m: float = 1.0,
        points: int = DEFAULT_SCAN_POINTS,
        tol: float = DEFAULT_TOL,
        rtol: float = AGREEMENT_RTOL,
) -> MaximumResult:
    """
    Maximize the dimensionless power over c_21 and compare with the closed form.

    Args:
        kind: Pump kind.
        d: Reduced set; its `c_21` is ignored.
        m: Coefficient of u in the classical closed form.
        points: Bracketing scan size.
        tol: Golden-section tolerance.
        rtol: Relative agreement required before the result is flagged.

    Returns:
        Numeric maximum and maximizer, the closed form, and a flag with its reason on disagreement.

    Raises:
        DomainError: Empty domain.
        RegimeError: No positive power on the domain.
    """
    lo, hi = maximization_domain(d)
    result = maximize(_safe_power(kind, d), lo, hi, points=points, tol=tol)
    label = 'classical' if PumpKind(kind) == PumpKind.CLASSICAL else 'quantum'
    return compare_with_closed_form(result, analytic_max_power(kind, d, m), rtol, label)


def asymptotic_max_power(kind: PumpKind, d: DimensionlessSet) -> float:
    """
    Small tau sigma'_p limit of the maximum power.

    (tau sigma')^8 (c_p - 1)^2 lambda' / (3 alpha) classical; (tau sigma')^4 (c_p - 1)^2 lambda' / (3 alpha theta) quantum.
    Infinite for theta = 0.
    """
    cp1 = d.c_p - 1.0
    if PumpKind(kind) == PumpKind.CLASSICAL:
        return d.k_classical * cp1 ** 2 * d.lambda_prime / (3.0 * d.alpha)
    if d.theta == 0.0:
        return float('inf')
    return d.k_quantum * cp1 ** 2 * d.lambda_prime / (3.0 * d.alpha * d.theta)


def efficiency_at(d: DimensionlessSet, c21: float) -> float:
    """Engine efficiency 1 - 1 / (c_p - c_21) at the frequency ratio `c21`."""
    return 1.0 - 1.0 / (d.c_p - c21)


def carnot_admissible(d: DimensionlessSet) -> bool:
    """
    Sets on which the engine may run at all: 0 < tau < 1, c_p tau < 1 and a nonempty c_21 domain.

    c_p tau < 1 puts every c_21 of the domain below the Carnot ceiling, 1 - 1 / (c_p - c_21) < 1 - tau.
    """
    return 0.0 < d.tau < 1.0 and d.c_p * d.tau < 1.0 and min(d.c_p - 1.0, d.alpha) > 0.0


def efficiency_at_max_power(kind: PumpKind, d: DimensionlessSet,
                            form: Union[EfficiencyForm, str] = EfficiencyForm.WEAK) -> float:
    """
    Efficiency at maximum power.

    Args:
        kind: Pump kind.
        d: Reduced set.
        form: `full` and `weak` use the printed expressions; `tabulated` is the weak-dissipation form
            1 - K lambda' (alpha theta u - K) / (alpha^2 theta^2 u v) the bound tables close on;
            `maximizer` evaluates 1 - 1 / (c_p - c_21) at the numeric maximizer of the power.

    Raises:
        SingularityError: When the expression is undefined at `d`.
        DomainError: Empty c_21 domain (`maximizer` only).
        RegimeError: No positive power on the domain (`maximizer` only).
    """
    form = EfficiencyForm(form)
    if form == EfficiencyForm.MAXIMIZER:
        return efficiency_at(d, maximize_power(kind, d).argmax)
    classical = PumpKind(kind) == PumpKind.CLASSICAL
    cp, cp1 = d.c_p, d.c_p - 1.0
    u, v, lam, alpha = d.u, d.v, d.lambda_prime, d.alpha
    theta = np.float64(1.0 if classical else d.theta)
    k = np.float64(d.k_classical if classical else d.k_quantum)

    with np.errstate(divide='ignore', invalid='ignore'):
        if form == EfficiencyForm.TABULATED:
            eta = 1.0 - k * lam * (alpha * theta * u - k) / (alpha ** 2 * theta ** 2 * u * v)
        elif classical and form == EfficiencyForm.FULL:
            t = 1.0 - k
            top = t * np.sqrt(u * v * (cp1 * k + alpha * u) * (k * lam * cp1 + alpha * v)) + u * v * t * alpha ** 2
            bottom = t * k * (alpha * v + lam * (cp1 * k + alpha * u))
            eta = 1.0 - 1.0 / (cp + top / bottom)
        elif classical:
            eta = 1.0 - 1.0 / (cp + alpha ** 2 * u * v / (k * (k * cp1 * lam + alpha * u * lam)))
        elif form == EfficiencyForm.FULL:
            e = alpha * u * v * theta
            w = np.sqrt(u * v * (k * cp1 + e / v) * (k * cp1 * lam + e / u))
            eta = 1.0 - 1.0 / (cp - cp1 * e / (w + e))
        else:
            eta = 1.0 - 1.0 / (cp + u * v * alpha ** 2 * theta ** 2 / (k * lam * (alpha * u * theta + cp1 * k)))
    if not np.isfinite(eta):
        raise SingularityError(f'Efficiency at maximum power ({form.value}) is undefined here.',
                               invariant='efficiency-pole', **d.as_dict())
    return float(eta)


def bound_targets(tau: float) -> Dict[Region, Tuple[float, float, float]]:
    """
    Per bound row: (target efficiency, c_p, Y = 1 - target efficiency).

    The rows are 0, eta_C/2, the Curzon-Ahlborn value 1 - sqrt(tau), eta_C/(2 - eta_C) and eta_C.
    """
    eta_c = 1.0 - tau
    ca = 1.0 - np.sqrt(tau)
    return {
        Region.I: (0.0, 1.0, 1.0),
        Region.I_II: (eta_c / 2.0, 2.0 / (2.0 - eta_c), (2.0 - eta_c) / 2.0),
        Region.II_III: (ca, 1.0 / np.sqrt(1.0 - eta_c), np.sqrt(1.0 - eta_c)),
        Region.III_IV: (eta_c / (2.0 - eta_c), (2.0 - eta_c) / (2.0 * (1.0 - eta_c)), 2.0 * (1.0 - eta_c) / (2.0 - eta_c)),
        Region.IV: (eta_c, 2.0 / (1.0 - eta_c), 1.0 - eta_c),
    }


def bound_bandwidth(kind: PumpKind, bound: Union[Region, str], d: DimensionlessSet) -> float:
    """
    Pump bandwidth sigma'_p that puts the efficiency at maximum power on `bound`.

    Classical: sigma'^8 = xi (u - sqrt(u^2 - 4 u v Y / lambda')), xi = alpha / (2 tau^8).
    Quantum: sigma'^4 = Xi (same bracket), Xi = alpha theta / (2 tau^4).

    Raises:
        DomainError: Negative radicand; the message names the smallest lambda' that reaches the bound.
    """
    bound = Region(bound)
    if bound not in BOUND_ROWS:
        raise DomainError(f'`{bound.value}` is not a bound row.', invariant='bound-row')
    y = bound_targets(d.tau)[bound][2]
    if not d.lambda_prime > 0.0:
        raise DomainError('Bounds need lambda\' > 0.', invariant='bound-reachable', minimal_lambda_prime=4.0 * d.v * y / d.u)
    radicand = d.u ** 2 - 4.0 * d.u * d.v * y / d.lambda_prime
    if radicand < 0.0:
        minimal = 4.0 * d.v * y / d.u
        raise DomainError(f'Bound {bound.value} is unreachable: lambda\' must be at least {minimal}.',
                          invariant='bound-reachable', minimal_lambda_prime=minimal, lambda_prime=d.lambda_prime)
    bracket = d.u - np.sqrt(radicand)
    if PumpKind(kind) == PumpKind.CLASSICAL:
        return float((d.alpha / (2.0 * d.tau ** 8) * bracket) ** 0.125)
    return float((d.alpha * d.theta / (2.0 * d.tau ** 4) * bracket) ** 0.25)


@dataclass(frozen=True)
class BoundRow:
    bound: Region
    c_p: float
    sigma_p_prime: float
    eta_target: float
    eta_tabulated: float
    eta_weak: float


def bound_table(kind: PumpKind, d: DimensionlessSet) -> List[BoundRow]:
    """
    All five bound rows at `d.tau`.

    The printed weak-dissipation efficiency is reported next to the tabulated one; rows where it is
    undefined carry NaN.
    """
    rows = []
    for bound, (eta, cp, _) in bound_targets(d.tau).items():
        sigma = bound_bandwidth(kind, bound, d)
        row_set = d.replace(c_p=cp, sigma_p_prime=sigma)
        try:
            weak = efficiency_at_max_power(kind, row_set, EfficiencyForm.WEAK)
        except SingularityError:
            weak = float('nan')
        rows.append(BoundRow(bound=bound, c_p=cp, sigma_p_prime=sigma, eta_target=eta,
                             eta_tabulated=efficiency_at_max_power(kind, row_set, EfficiencyForm.TABULATED),
                             eta_weak=weak))
    return rows


def classify_region(eta_star: float, tau: float, tol: float = REGION_TOL) -> Region:
    """Place an efficiency among the bounds 0 < eta_C/2 < eta_CA < eta_C/(2 - eta_C) < eta_C."""
    eta_c = 1.0 - tau
    half = eta_c / 2.0
    ca = 1.0 - np.sqrt(tau)
    upper = eta_c / (2.0 - eta_c)
    if eta_star >= eta_c - tol:
        return Region.BOUNDARY_IV
    for mark, region in ((half, Region.I_II), (ca, Region.II_III), (upper, Region.III_IV)):
        if abs(eta_star - mark) <= tol:
            return region
    if eta_star < half:
        return Region.I
    if eta_star < ca:
        return Region.II
    if eta_star < upper:
        return Region.III
    return Region.IV


@dataclass(frozen=True)
class PowerRatio:
    """
    Quantum over classical maximum power.

    Attributes:
        asymptotic: Small tau sigma'_p ratio, inf for theta = 0.
        exact: Ratio of the numeric maxima, NaN when either branch has no positive power.
        printed: Ratio of the closed forms.
    """

    asymptotic: float
    exact: float
    printed: float


def _asymptotic_ratio(d: DimensionlessSet, d_q: DimensionlessSet) -> float:
    quantum = asymptotic_max_power(PumpKind.ENTANGLED, d_q)
    if np.isinf(quantum):
        return float('inf')
    return quantum / asymptotic_max_power(PumpKind.CLASSICAL, d)


def max_power_ratio_qhe(d: DimensionlessSet, d_q: Optional[DimensionlessSet] = None) -> PowerRatio:
    """
    P_Q^max / P_C^max.

    With a single set both branches share sigma'_p and the asymptotic ratio is
    1 / (tau^4 sigma'^4 theta); `d_q` supplies a separate entangled set.
    """
    d_q = d if d_q is None else d_q
    asymptotic = _asymptotic_ratio(d, d_q)
    try:
        exact = maximize_power(PumpKind.ENTANGLED, d_q).value / maximize_power(PumpKind.CLASSICAL, d).value
    except (RegimeError, DomainError):
        exact = float('nan')
    with np.errstate(divide='ignore', invalid='ignore'):
        printed = float(np.float64(analytic_max_power(PumpKind.ENTANGLED, d_q))
                        / analytic_max_power(PumpKind.CLASSICAL, d))
    return PowerRatio(asymptotic=asymptotic, exact=exact, printed=printed)


def crossover_tau(ratio: Callable[[float], float], lo: float, hi: float, points: int = 200) -> Optional[float]:
    """
    Smallest tau in [lo, hi] where `ratio(tau)` crosses one, from a log grid refined by `brentq`.

    Returns None when the ratio stays on one side of one.
    """
    grid = np.logspace(np.log10(lo), np.log10(hi), points)
    log_ratio = [float(np.log(ratio(float(t)))) for t in grid]
    for i in range(points - 1):
        left, right = log_ratio[i], log_ratio[i + 1]
        if left == 0.0:
            return float(grid[i])
        if np.isfinite(left) and np.isfinite(right) and left * right < 0.0:
            root = brentq(lambda t: np.log(ratio(t)), grid[i], grid[i + 1], xtol=1e-14, rtol=1e-12)
            logger.debug('Ratio crosses one at tau = %s.', root)
            return float(root)
    return None


def crossover_signs(ratio: Callable[[float], float], tau: float, step: float = 0.05) -> Tuple[int, int]:
    """Signs of (ratio - 1) at tau (1 - step) and tau (1 + step)."""
    return int(np.sign(ratio(tau * (1.0 - step)) - 1.0)), int(np.sign(ratio(tau * (1.0 + step)) - 1.0))


def _qhe_ratio(classical: DimensionlessSet, entangled: DimensionlessSet) -> Callable[[float], float]:
    def ratio(tau: float) -> float:
        return _asymptotic_ratio(classical.replace(tau=tau), entangled.replace(tau=tau))
    return ratio


def qhe_crossover(classical: DimensionlessSet, entangled: DimensionlessSet,
                  lo: float = 1e-4, hi: float = 1.0, points: int = 200) -> Optional[float]:
    """tau at which the small-tau maximum powers of the two pumps coincide, each set keeping its own sigma'_p."""
    return crossover_tau(_qhe_ratio(classical, entangled), lo, hi, points)


def qhe_crossover_signs(classical: DimensionlessSet, entangled: DimensionlessSet, tau: float,
                        step: float = 0.05) -> Tuple[int, int]:
    """
    Signs of (P_Q / P_C - 1) just below and just above `tau`.

    A quantum advantage confined to small tau gives (1, -1).
    """
    return crossover_signs(_qhe_ratio(classical, entangled), tau, step)
