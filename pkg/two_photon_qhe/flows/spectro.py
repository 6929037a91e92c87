from typing import Any, Dict

import prefect

from two_photon_qhe._logging import get_logger
from two_photon_qhe.flows import tables
from two_photon_qhe.flows._utils import finish_run, resource
from two_photon_qhe.flows.config import SweepConfig
from two_photon_qhe.flows.tasks import write_data
from two_photon_qhe.physics.params import PumpKind, reduce
from two_photon_qhe.physics.spectroscopy import (
    closed_form_max_classical,
    closed_form_quantum,
    spectro_crossover,
    spectro_max_power,
)


@prefect.flow(name='Spectroscopic power', validate_parameters=False)
def spectro_flow(config: SweepConfig) -> Dict[str, Any]:
    """
    Closed-form spectroscopic maxima of both pumps over a tau range and the crossover between them.

    The pumps share the classical bandwidth parameter and the maximizer over c_21, which does not
    depend on tau; theta comes from the entangled pump.

    Args:
        config: Run configuration with a `tau` range.

    Returns:
        Summary with the crossover tau and the sign of (ratio - 1) on both sides of it.
    """
    logger = get_logger(__name__)

    parameter_set = config.parameter_set
    classical = reduce(parameter_set.system, parameter_set.classical)
    theta = reduce(parameter_set.system, parameter_set.entangled).theta
    d = classical.replace(theta=theta)
    sigma_pr = parameter_set.classical.sigma_pr

    c21_star = spectro_max_power(PumpKind.CLASSICAL, d, sigma_pr).argmax
    rows = []
    for tau in config.ranges['tau'].values():
        at = d.replace(tau=float(tau))
        p_c = closed_form_max_classical(at, sigma_pr)
        p_q = closed_form_quantum(at, sigma_pr, c21_star)
        rows.append({'tau': float(tau), 'P_max_C': p_c, 'P_max_Q': p_q, 'ratio': p_q / p_c,
                     'crossover_flag': bool(p_q > p_c)})

    crossover = spectro_crossover(d, sigma_pr)
    logger.info('Spectroscopic maxima coincide at tau = %s.', crossover.tau)

    artifacts = [write_data(rows, resource(tables.spectro, config))]
    summary = {
        'crossover_tau': crossover.tau,
        'sign_below': crossover.sign_below,
        'sign_above': crossover.sign_above,
        'c21_star': c21_star,
    }
    finish_run(config, artifacts, ['fig8b'], summary=summary)
    return summary
