from typing import Any, Dict, List, Tuple

import numpy as np
import prefect

from two_photon_qhe._logging import get_logger
from two_photon_qhe.exceptions import NumericError
from two_photon_qhe.flows import tables
from two_photon_qhe.flows._utils import DEFAULT_CHUNK_SIZE, chunks, finish_run, progress, resource
from two_photon_qhe.flows.config import SweepConfig
from two_photon_qhe.flows.tasks import write_data
from two_photon_qhe.physics.engine import (
    EfficiencyForm,
    asymptotic_max_power,
    classify_region,
    efficiency_at_max_power,
    maximize_power,
    qhe_crossover,
)
from two_photon_qhe.physics.params import DimensionlessSet, PumpKind, reduce

Cell = Tuple[int, float, float]

PROVENANCE = {PumpKind.CLASSICAL: ['fig4', 'fig7a'], PumpKind.ENTANGLED: ['fig7b']}


@prefect.task(name='Evaluate engine sweep cells', tags=['engine'])
def evaluate_cells(
        cells: List[Cell],
        kind: PumpKind,
        base: DimensionlessSet,
        form: EfficiencyForm,
        scan_points: int,
        tol: float,
        rtol: float,
) -> List[Tuple[int, Dict[str, Any]]]:
    """
    Efficiency at maximum power, its region and the maximum itself for each (tau, c_p) cell.

    Cells without a positive maximum keep NaN in `P_max` and `c21_star`; cells where the efficiency is
    undefined keep NaN in `eta_star`, an empty region and the violated invariant in `flag`.
    """
    logger = get_logger(__name__)

    rows = []
    for index, tau, c_p in cells:
        d = base.replace(tau=tau, c_p=c_p)
        try:
            eta, flag = efficiency_at_max_power(kind, d, form), ''
        except NumericError as e:
            logger.debug('No efficiency at tau = %s, c_p = %s: %s', tau, c_p, e)
            eta, flag = float('nan'), e.invariant or type(e).__name__
        try:
            maximum = maximize_power(kind, d, points=scan_points, tol=tol, rtol=rtol)
            p_max, c21_star = maximum.value, maximum.argmax
        except NumericError as e:
            logger.debug('No maximum at tau = %s, c_p = %s: %s', tau, c_p, e)
            p_max, c21_star = float('nan'), float('nan')
        rows.append((index, {
            'tau': tau,
            'c_p': c_p,
            'eta_star': eta,
            'region': classify_region(eta, tau).value if np.isfinite(eta) else '',
            'sigma_p_prime': d.sigma_p_prime,
            'P_max': p_max,
            'c21_star': c21_star,
            'flag': flag,
        }))
    return rows


@prefect.flow(name='Engine sweep', validate_parameters=False)
def engine_sweep_flow(config: SweepConfig) -> Dict[str, Any]:
    """
    Efficiency at maximum power over a (tau, c_p) grid, plus the small-tau power ratio of the two pumps.

    Cells are evaluated in chunks, possibly in parallel, and merged back by index, so the output does not
    depend on the number of workers.

    Args:
        config: Run configuration with `tau` and `c_p` ranges; `options.kind` and `options.efficiency_form`.

    Returns:
        Summary with the number of cells and the crossover tau of the two pumps.
    """
    logger = get_logger(__name__)

    kind = PumpKind(config.options.get('kind', PumpKind.CLASSICAL))
    form = EfficiencyForm(config.options.get('efficiency_form', EfficiencyForm.WEAK))
    parameter_set = config.parameter_set
    classical = reduce(parameter_set.system, parameter_set.classical)
    entangled = reduce(parameter_set.system, parameter_set.entangled)
    base = classical if kind == PumpKind.CLASSICAL else entangled

    taus, cps = config.ranges['tau'].values(), config.ranges['c_p'].values()
    cells = [(i * len(cps) + j, float(tau), float(c_p)) for i, tau in enumerate(taus) for j, c_p in enumerate(cps)]
    chunk_size = int(config.sweep_setting('chunk_size', DEFAULT_CHUNK_SIZE))
    logger.info('Engine sweep (%s pump, %s form) over %s cells.', kind.value, form.value, len(cells))

    futures = [
        evaluate_cells.submit(
            chunk, kind, base, form,
            int(config.sweep_setting('scan_points', 256)),
            float(config.sweep_setting('golden_tol', 1e-12)),
            float(config.sweep_setting('agreement_rtol', 1e-6)),
        )
        for chunk in chunks(cells, chunk_size)
    ]
    merged: List[Tuple[int, Dict[str, Any]]] = []
    for future in progress(futures, config.progress, 'engine sweep'):
        merged.extend(future.result())
    rows = [row for _, row in sorted(merged, key=lambda item: item[0])]

    ratio_rows = []
    for tau in taus:
        p_c = asymptotic_max_power(PumpKind.CLASSICAL, classical.replace(tau=float(tau)))
        p_q = asymptotic_max_power(PumpKind.ENTANGLED, entangled.replace(tau=float(tau)))
        ratio_rows.append({'tau': float(tau), 'P_max_C': p_c, 'P_max_Q': p_q, 'ratio': p_q / p_c})
    crossover = qhe_crossover(classical, entangled)

    artifacts = [
        write_data(rows, resource(tables.engine_sweep, config)),
        write_data(ratio_rows, resource(tables.qhe_ratio, config)),
    ]
    summary = {
        'kind': kind.value,
        'cells': len(rows),
        'cells_without_maximum': int(sum(1 for row in rows if np.isnan(row['P_max']))),
        'cells_without_efficiency': int(sum(1 for row in rows if row['flag'])),
        'qhe_crossover_tau': crossover,
    }
    finish_run(config, artifacts, PROVENANCE[kind] + ['fig8a'], summary=summary)
    logger.info('Quantum advantage of the maximum power below tau = %s.', crossover)
    return summary
