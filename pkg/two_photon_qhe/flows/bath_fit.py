from typing import Any, Dict

import prefect

from two_photon_qhe._logging import get_logger
from two_photon_qhe.flows import tables
from two_photon_qhe.flows._utils import finish_run, resource
from two_photon_qhe.flows.config import SweepConfig
from two_photon_qhe.flows.tasks import write_data
from two_photon_qhe.physics.bath import default_mismatch_grid, fit_bath, population_mismatch
from two_photon_qhe.physics.params import PumpKind

PROVENANCE = {PumpKind.CLASSICAL: 'fig3b', PumpKind.ENTANGLED: 'fig6b'}


@prefect.flow(name='Effective bath fit', validate_parameters=False)
def bath_fit_flow(config: SweepConfig) -> Dict[str, Any]:
    """
    Fit the effective thermal bath to the coherent populations and tabulate the mismatch.

    Args:
        config: Run configuration; `options.kind` selects the pump, `options.printed_form` the printed rate.

    Returns:
        `{n_h, gamma_h, T_h, max_mismatch}` plus the pump kind.
    """
    logger = get_logger(__name__)

    kind = PumpKind(config.options.get('kind', PumpKind.CLASSICAL))
    printed_form = bool(config.options.get('printed_form', False))
    parameter_set = config.parameter_set
    params, pump = parameter_set.system, parameter_set.pump(kind)

    bath = fit_bath(params, pump, printed_form=printed_form)
    grid = default_mismatch_grid(bath, int(config.sweep_setting('mismatch_points', 400)))
    mismatch = population_mismatch(params, pump, grid, printed_form=printed_form)
    logger.info('Bath for the %s pump: n_h = %s, gamma_h = %s eV.', kind.value, bath.n_h, bath.gamma_h)

    summary = {
        'kind': kind.value,
        'n_h': bath.n_h,
        'gamma_h': bath.gamma_h,
        'T_h': bath.T_h,
        'max_mismatch': mismatch.max_abs_diff,
    }
    artifacts = [
        write_data([summary], resource(tables.bath_summary, config)),
        write_data(mismatch.diff_series.to_dict(orient='records'), resource(tables.bath_mismatch, config)),
    ]
    finish_run(config, artifacts, [PROVENANCE[kind]], summary=summary)
    return summary
