from typing import Any, Dict, List

import prefect

from two_photon_qhe._logging import get_logger
from two_photon_qhe.flows import tables
from two_photon_qhe.flows._utils import finish_run, resource
from two_photon_qhe.flows.config import SweepConfig
from two_photon_qhe.flows.tasks import write_data
from two_photon_qhe.physics.engine import bound_table
from two_photon_qhe.physics.params import DimensionlessSet, PumpKind, reduce

OVERRIDES = ('lambda_prime', 'u', 'v', 'alpha', 'theta')


def base_set(config: SweepConfig, kind: PumpKind) -> DimensionlessSet:
    """Reduced set of the parameter set, with any of lambda', u, v, alpha, theta overridden by the options."""
    parameter_set = config.parameter_set
    d = reduce(parameter_set.system, parameter_set.pump(kind))
    changes = {name: float(config.options[name]) for name in OVERRIDES if config.options.get(name) is not None}
    return d.replace(**changes)


@prefect.flow(name='Efficiency bounds', validate_parameters=False)
def bounds_flow(config: SweepConfig) -> Dict[str, Any]:
    """
    Pump bandwidths that place the efficiency at maximum power on each bound, for both pumps.

    Args:
        config: Run configuration; `options.taus` lists the tau values.

    Returns:
        Summary with the largest closure residual of the tabulated efficiency.
    """
    logger = get_logger(__name__)

    taus = [float(tau) for tau in config.options.get('taus') or config.sweep_setting('bounds.tau', [0.25])]
    rows: List[Dict[str, Any]] = []
    for kind in PumpKind:
        base = base_set(config, kind)
        for tau in taus:
            for row in bound_table(kind, base.replace(tau=tau)):
                rows.append({
                    'kind': kind.value,
                    'tau': tau,
                    'bound': row.bound.value,
                    'c_p': row.c_p,
                    'sigma_p_prime': row.sigma_p_prime,
                    'eta_target': row.eta_target,
                    'eta_tabulated': row.eta_tabulated,
                    'eta_weak': row.eta_weak,
                })
    residual = max(abs(row['eta_tabulated'] - row['eta_target']) for row in rows)
    logger.info('Bound tables for %s tau values, closure residual %s.', len(taus), residual)

    artifacts = [write_data(rows, resource(tables.bounds, config))]
    summary = {'rows': len(rows), 'closure_residual': residual}
    finish_run(config, artifacts, ['table1', 'table2'], summary=summary)
    return summary
