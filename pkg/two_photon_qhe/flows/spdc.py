from typing import Any, Dict

import prefect

from two_photon_qhe._logging import get_logger
from two_photon_qhe.config import settings
from two_photon_qhe.flows import tables
from two_photon_qhe.flows._utils import finish_run, resource
from two_photon_qhe.flows.config import SweepConfig
from two_photon_qhe.flows.tasks import write_data
from two_photon_qhe.physics.spdc import DEFAULT_GRID, JointAmplitude, joint_spectral_intensity
from two_photon_qhe.physics.units import quantity


@prefect.flow(name='Joint spectral intensity', validate_parameters=False)
def spdc_flow(config: SweepConfig) -> Dict[str, Any]:
    """
    Joint spectral intensity of the twin-photon state on a square grid around the degenerate point.

    Args:
        config: Run configuration; `options.grid` and `options.window` (eV) override `sweep.spdc`.
    """
    logger = get_logger(__name__)

    block = settings.get('sweep.spdc', {})
    ja = JointAmplitude.from_config(block)
    size = int(config.options.get('grid') or block.get('grid', DEFAULT_GRID))
    window = config.options.get('window')
    window = float(window) if window is not None else quantity(block['window'], 'window')
    logger.info('Joint spectral intensity on a %sx%s grid, window %s eV.', size, size, window)

    frame = joint_spectral_intensity(ja, window, size)
    artifacts = [write_data(frame.to_dict(orient='records'), resource(tables.joint_spectrum, config))]
    summary = {'grid': size, 'window': window, 'peak': float(frame['magnitude2'].max())}
    finish_run(config, artifacts, ['fig5-jsa'], summary=summary)
    return summary
