from typing import Any, Dict, List

import numpy as np
import prefect

from two_photon_qhe._logging import get_logger
from two_photon_qhe.flows import tables
from two_photon_qhe.flows._utils import finish_run, resource
from two_photon_qhe.flows.config import SweepConfig
from two_photon_qhe.flows.tasks import write_data
from two_photon_qhe.physics.bath import coherent_population, default_mismatch_grid, fit_bath, thermal_population
from two_photon_qhe.physics.dynamics import ground_state, integrate
from two_photon_qhe.physics.params import PumpKind

PROVENANCE = {PumpKind.CLASSICAL: 'fig3a', PumpKind.ENTANGLED: 'fig6a'}


@prefect.task(name='Integrate pulsed populations', tags=['dynamics'])
def pulsed_populations(config: SweepConfig, kind: PumpKind, times: List[float]) -> List[float]:
    """rho_11 from the equation of motion driven by the pump pulse envelope, probe and cold channel off."""
    parameter_set = config.parameter_set
    pump = parameter_set.pump(kind).replace(lam=0.0)
    trajectory = integrate(
        ground_state(), times[-1], parameter_set.system.replace(gamma_c=0.0), pump, times=times, pulse=True,
        rtol=float(config.sweep_setting('integrator.rtol', 1e-8)),
        atol=float(config.sweep_setting('integrator.atol', 1e-15)),
    )
    return [float(x) for x in trajectory.population('1')]


@prefect.flow(name='Populations', validate_parameters=False)
def populations_flow(config: SweepConfig) -> Dict[str, Any]:
    """
    Coherent and thermal populations of level 1 and the ground state over a log time grid.

    Args:
        config: Run configuration; `options.kind` selects the pump.

    Returns:
        Summary with the fitted bath and the largest population mismatch.
    """
    logger = get_logger(__name__)

    kind = PumpKind(config.options.get('kind', PumpKind.CLASSICAL))
    parameter_set = config.parameter_set
    params, pump = parameter_set.system, parameter_set.pump(kind)
    bath = fit_bath(params, pump)
    points = int(config.sweep_setting('population_points', 200))
    times = [float(t) for t in default_mismatch_grid(bath, points)]
    logger.info('Populations for the %s pump of `%s` on %s times.', kind.value, parameter_set.name, points)

    ode = pulsed_populations.submit(config, kind, times)
    coherent = [coherent_population(t, params, pump) for t in times]
    thermal = [thermal_population(t, bath) for t in times]
    mismatch = float(max(max(abs(c[0] - h[0]), abs(c[1] - h[1])) for c, h in zip(coherent, thermal)))

    ode_values = ode.result()
    coherent_rows = [{'t': t, 'rho_11': c[0], 'rho_gg': c[1], 'rho_11_ode': o}
                     for t, c, o in zip(times, coherent, ode_values)]
    thermal_rows = [{'t': t, 'rho_11': h[0], 'rho_gg': h[1]} for t, h in zip(times, thermal)]

    artifacts = [
        write_data(coherent_rows, resource(tables.coherent_populations, config)),
        write_data(thermal_rows, resource(tables.thermal_populations, config)),
    ]
    summary = {
        'kind': kind.value,
        'n_h': bath.n_h,
        'gamma_h': bath.gamma_h,
        'T_h': bath.T_h,
        'max_mismatch': mismatch,
        'max_ode_deviation': float(np.max(np.abs(np.subtract(ode_values, [c[0] for c in coherent])))),
    }
    finish_run(config, artifacts, [PROVENANCE[kind]], summary=summary)
    logger.info('Largest coherent-thermal mismatch %s.', mismatch)
    return summary
