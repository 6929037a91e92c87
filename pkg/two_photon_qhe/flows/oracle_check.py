from typing import Any, Dict

import prefect

from two_photon_qhe._logging import get_logger
from two_photon_qhe.flows import tables
from two_photon_qhe.flows._utils import finish_run, resource
from two_photon_qhe.flows.config import SweepConfig
from two_photon_qhe.flows.tasks import write_data
from two_photon_qhe.oracle import OracleReport, run_oracle
from two_photon_qhe.physics.params import load_parameter_set


@prefect.task(name='Run invariant checks', tags=['oracle'])
def check_invariants(config: SweepConfig) -> OracleReport:
    return run_oracle(
        fig3=load_parameter_set(config.options.get('weak_set', 'fig3')),
        fig7=config.parameter_set,
        seed=int(config.options.get('seed', 0)),
        verbatim_report=bool(config.options.get('verbatim_report', True)),
        taus=tuple(config.sweep_setting('bounds.tau', (0.1, 0.25, 0.5, 0.75))),
    )


@prefect.flow(name='Oracle check', validate_parameters=False)
def oracle_check_flow(config: SweepConfig) -> Dict[str, Any]:
    """
    Evaluate the acceptance invariants and write the report.

    The report and manifest are written before the verdict, so a failing run still leaves its evidence.

    Raises:
        OracleFailure: When a required entry fails.
    """
    logger = get_logger(__name__)

    report = check_invariants(config)
    artifacts = [write_data(report.to_rows(), resource(tables.oracle_report, config))]
    summary = {
        'passed': report.passed,
        'failures': report.failures,
        'entries': len(report.entries),
    }
    finish_run(config, artifacts, ['fig3', 'fig7', 'table1', 'table2'], summary=summary)

    logger.info('%s of %s required checks passed.',
                sum(entry.passed for entry in report.entries if entry.required),
                sum(entry.required for entry in report.entries))
    report.raise_for_failures()
    return summary
