"""One-dimensional maximization on a bounded interval: bracketing scan, golden section, slope polish."""
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from scipy.optimize import brentq

from two_photon_qhe._logging import get_logger
from two_photon_qhe.exceptions import RegimeError

logger = get_logger(__name__)

INV_PHI = (np.sqrt(5.0) - 1.0) / 2.0
INV_PHI_SQUARE = (3.0 - np.sqrt(5.0)) / 2.0

SLOPE_STEP = 1e-5
DEFAULT_SCAN_POINTS = 256
DEFAULT_TOL = 1e-12
AGREEMENT_RTOL = 1e-6

Function = Callable[[float], float]


@dataclass(frozen=True)
class MaximumResult:
    """
    Numeric maximum, optionally paired with a closed-form value.

    Attributes:
        value: Maximum found numerically.
        argmax: Maximizer.
        analytic: Closed-form maximum, when one exists.
        flagged: True when the closed form disagrees, is not finite or the maximum sits on the domain edge.
        reason: Why the result is flagged.
        boundary: Maximizer lies on the edge of the search interval.
    """

    value: float
    argmax: float
    analytic: Optional[float] = None
    flagged: bool = False
    reason: str = ''
    boundary: bool = False

    @property
    def relative_difference(self) -> float:
        if self.analytic is None or not np.isfinite(self.analytic):
            return float('nan')
        return abs(self.analytic - self.value) / max(abs(self.value), np.finfo(float).tiny)


def central_slope(f: Function, x: float, h: float = SLOPE_STEP) -> float:
    return (f(x + h) - f(x - h)) / (2.0 * h)


def golden_section_max(f: Function, a: float, b: float, tol: float = DEFAULT_TOL) -> float:
    """
    Golden-section search for the maximum of a unimodal `f` on [a, b].

    Returns:
        Midpoint of the final bracket.
    """
    h = b - a
    if h <= tol:
        return (a + b) / 2.0

    n = int(np.ceil(np.log(tol / h) / np.log(INV_PHI)))
    c = a + INV_PHI_SQUARE * h
    d = a + INV_PHI * h
    yc, yd = f(c), f(d)

    for _ in range(n):
        h *= INV_PHI
        if yc > yd:
            b, d, yd = d, c, yc
            c = a + INV_PHI_SQUARE * h
            yc = f(c)
        else:
            a, c, yc = c, d, yd
            d = a + INV_PHI * h
            yd = f(d)

    return (a + d) / 2.0 if yc > yd else (c + b) / 2.0


def maximize(
        f: Function,
        lo: float,
        hi: float,
        points: int = DEFAULT_SCAN_POINTS,
        tol: float = DEFAULT_TOL,
        positive: bool = True,
) -> MaximumResult:
    """
    Maximize `f` over the open interval (lo, hi).

    A scan over `points` interior nodes picks the best node among finite (and, with `positive`,
    strictly positive) values; the neighbouring nodes bracket a golden-section search, and when
    the central-difference slope changes sign across the bracket the maximizer is polished by a
    root search on that slope.

    Raises:
        RegimeError: No admissible scan node.
    """
    if not hi > lo:
        raise ValueError(f'Empty interval ({lo}, {hi}).')
    xs = np.linspace(lo, hi, points + 2)[1:-1]
    ys = np.array([f(float(x)) for x in xs])
    admissible = np.isfinite(ys) & ((ys > 0.0) if positive else True)
    if not admissible.any():
        raise RegimeError(f'No admissible point on ({lo}, {hi}).', invariant='positive-branch')
    ys = np.where(admissible, ys, -np.inf)
    best = int(np.argmax(ys))

    a = float(xs[best - 1]) if best > 0 and admissible[best - 1] else lo
    b = float(xs[best + 1]) if best < len(xs) - 1 and admissible[best + 1] else hi
    x_star = golden_section_max(f, a, b, tol * max(1.0, abs(b)))

    inner_a, inner_b = max(a, lo + SLOPE_STEP), min(b, hi - SLOPE_STEP)
    if inner_b > inner_a:
        slope_a, slope_b = central_slope(f, inner_a), central_slope(f, inner_b)
        if slope_a > 0.0 > slope_b:
            polished = brentq(lambda x: central_slope(f, x), inner_a, inner_b, xtol=1e-15, rtol=4 * np.finfo(float).eps)
            if f(polished) >= f(x_star):
                x_star = float(polished)

    width = hi - lo
    boundary = x_star - lo < 1e-9 * width or hi - x_star < 1e-9 * width
    value = f(x_star)
    logger.debug('Maximum %s at %s (scan node %s of %s).', value, x_star, best, points)
    return MaximumResult(value=value, argmax=x_star, boundary=boundary,
                         flagged=boundary, reason='maximum on the domain edge' if boundary else '')


def compare_with_closed_form(result: MaximumResult, analytic: float, rtol: float, label: str) -> MaximumResult:
    """Attach `analytic` to `result` and flag disagreement beyond `rtol`."""
    reasons = [result.reason] if result.reason else []
    if not np.isfinite(analytic):
        reasons.append(f'{label} closed form is not finite')
    elif abs(analytic - result.value) > rtol * abs(result.value):
        reasons.append(f'{label} closed form differs from the numeric maximum by '
                       f'{abs(analytic - result.value) / abs(result.value):.3e} (relative)')
    flagged = bool(reasons)
    if flagged:
        logger.warning('Flagged maximum (%s): numeric %s, closed form %s.', '; '.join(reasons), result.value, analytic)
    return MaximumResult(value=result.value, argmax=result.argmax, analytic=float(analytic), flagged=flagged,
                         reason='; '.join(reasons), boundary=result.boundary)
