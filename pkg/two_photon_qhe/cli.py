import json
from pathlib import Path
from typing import Any, Callable, Dict, List, NoReturn, Optional

import prefect
import typer

from two_photon_qhe.config import settings
from two_photon_qhe.exceptions import ConfigurationError, QheError
from two_photon_qhe.flows._utils import with_jobs
from two_photon_qhe.flows.bath_fit import bath_fit_flow
from two_photon_qhe.flows.bounds import bounds_flow
from two_photon_qhe.flows.config import OutputFormat, Range, Scenario, Spacing, SweepConfig, parse_grid
from two_photon_qhe.flows.engine_sweep import engine_sweep_flow
from two_photon_qhe.flows.oracle_check import oracle_check_flow
from two_photon_qhe.flows.populations import populations_flow
from two_photon_qhe.flows.spdc import spdc_flow
from two_photon_qhe.flows.spectro import spectro_flow
from two_photon_qhe.physics.engine import EfficiencyForm
from two_photon_qhe.physics.params import PumpKind

app = typer.Typer(name='two-photon-qhe', add_completion=False, no_args_is_help=True,
                  help='Two-photon pumped quantum heat engine: populations, engine sweeps, bounds and checks.')

WEAK_PUMP_SET = 'fig3'
ENGINE_SET = 'fig7'


def _fail(error: QheError) -> NoReturn:
    typer.echo(json.dumps(error.to_dict(), sort_keys=True), err=True)
    raise typer.Exit(code=error.exit_code)


@app.callback()
def main(
        ctx: typer.Context,
        config: Optional[Path] = typer.Option(None, '--config', help='YAML file merged on top of settings.yaml.'),
        out: Optional[Path] = typer.Option(None, '--out', help='Output directory.'),
        jobs: int = typer.Option(1, '--jobs', help='Number of Dask workers; never changes the output.'),
        file_format: Optional[OutputFormat] = typer.Option(None, '--format', help='Artifact format.'),
        progress: bool = typer.Option(False, '--progress', help='Show progress bars.'),
        param_set: Optional[str] = typer.Option(None, '--param-set', help='Entry of `parameter_sets`.'),
) -> None:
    if config is not None:
        if not config.is_file():
            _fail(ConfigurationError(f'Config file `{config}` does not exist.', invariant='config-exists'))
        settings.load_file(path=str(config))
    ctx.obj = {
        'out': str(out) if out is not None else settings.get('output.base_dir', './results'),
        'jobs': jobs,
        'format': file_format.value if file_format is not None else settings.get('output.format', 'csv'),
        'progress': progress,
        'param_set': param_set,
    }


def _run(
        ctx: typer.Context,
        scenario: Scenario,
        flow: prefect.Flow,
        default_set: str = ENGINE_SET,
        ranges: Optional[Callable[[], Dict[str, Range]]] = None,
        options: Optional[Dict[str, Any]] = None,
) -> None:
    """Build the run configuration, execute the scenario flow and echo its summary as JSON."""
    state = ctx.obj
    try:
        config = SweepConfig(
            scenario=scenario,
            param_set=state['param_set'] or default_set,
            out=state['out'],
            file_format=state['format'],
            jobs=state['jobs'],
            progress=state['progress'],
            ranges=ranges() if ranges is not None else {},
            options=options or {},
        )
        config.parameter_set  # unknown or invalid sets fail before any flow starts
        summary = with_jobs(flow, config.jobs)(config)
    except QheError as e:
        _fail(e)
    typer.echo(json.dumps(summary, sort_keys=True, default=str))


def _setting_range(key: str) -> Range:
    block = settings.get(f'sweep.{key}')
    if block is None:
        raise ConfigurationError(f'Missing range `sweep.{key}`.', invariant='config-complete')
    return Range.from_config(block, key)


@app.command()
def populations(
        ctx: typer.Context,
        kind: PumpKind = typer.Option(PumpKind.CLASSICAL, '--kind', help='Pump kind.'),
) -> None:
    """Coherent and thermal populations of level 1 and the ground state."""
    _run(ctx, Scenario.POPULATIONS, populations_flow, WEAK_PUMP_SET, options={'kind': kind})


@app.command('bath-fit')
def bath_fit(
        ctx: typer.Context,
        kind: PumpKind = typer.Option(PumpKind.CLASSICAL, '--kind', help='Pump kind.'),
        printed_form: bool = typer.Option(False, '--printed-form', help='Use the printed classical Gamma_h.'),
) -> None:
    """Effective hot bath reproducing the coherent populations."""
    _run(ctx, Scenario.BATH_FIT, bath_fit_flow, WEAK_PUMP_SET, options={'kind': kind, 'printed_form': printed_form})


@app.command('engine-sweep')
def engine_sweep(
        ctx: typer.Context,
        kind: PumpKind = typer.Option(PumpKind.CLASSICAL, '--kind', help='Pump kind.'),
        tau_range: Optional[str] = typer.Option(None, '--tau-range', help='`min,max` of tau.'),
        cp_range: Optional[str] = typer.Option(None, '--cp-range', help='`min,max` of c_p.'),
        grid: Optional[str] = typer.Option(None, '--grid', help='Cells as `NxM` (tau x c_p).'),
        efficiency_form: Optional[EfficiencyForm] = typer.Option(None, '--efficiency-form',
                                                                  help='Efficiency at maximum power.'),
        tau_spacing: Optional[Spacing] = typer.Option(None, '--tau-spacing', help='Spacing of tau.'),
) -> None:
    """Efficiency at maximum power and its region over a (tau, c_p) grid."""
    def ranges() -> Dict[str, Range]:
        tau, c_p = _setting_range('engine.tau'), _setting_range('engine.c_p')
        counts: List[int] = parse_grid(grid) if grid is not None else [tau.count, c_p.count]
        spacing = tau_spacing or tau.spacing
        if tau_range is not None:
            tau = Range.from_bounds(tau_range, counts[0], spacing)
        else:
            tau = Range(min=tau.min, max=tau.max, count=counts[0], spacing=spacing)
        if cp_range is not None:
            c_p = Range.from_bounds(cp_range, counts[1], c_p.spacing)
        else:
            c_p = Range(min=c_p.min, max=c_p.max, count=counts[1], spacing=c_p.spacing)
        return {'tau': tau, 'c_p': c_p}

    form = efficiency_form or EfficiencyForm(settings.get('sweep.engine.efficiency_form', 'weak'))
    _run(ctx, Scenario.ENGINE_SWEEP, engine_sweep_flow, ranges=ranges,
         options={'kind': kind, 'efficiency_form': form})


@app.command()
def bounds(
        ctx: typer.Context,
        tau: Optional[List[float]] = typer.Option(None, '--tau', help='tau of the table; repeatable.'),
        lambda_prime: Optional[float] = typer.Option(None, '--lambda-prime', help="Override lambda'."),
        u: Optional[float] = typer.Option(None, '--u', help='Override u.'),
        v: Optional[float] = typer.Option(None, '--v', help='Override v.'),
        alpha: Optional[float] = typer.Option(None, '--alpha', help='Override alpha.'),
        theta: Optional[float] = typer.Option(None, '--theta', help='Override theta of the entangled pump.'),
) -> None:
    """Pump bandwidths that put the efficiency at maximum power on each region bound."""
    _run(ctx, Scenario.BOUNDS, bounds_flow, options={
        'taus': list(tau) if tau else None,
        'lambda_prime': lambda_prime,
        'u': u,
        'v': v,
        'alpha': alpha,
        'theta': theta,
    })


@app.command()
def spectro(
        ctx: typer.Context,
        tau_range: Optional[str] = typer.Option(None, '--tau-range', help='`min,max` of tau.'),
        count: Optional[int] = typer.Option(None, '--count', help='Number of tau values.'),
) -> None:
    """Spectroscopic maxima of both pumps over tau and their crossover."""
    def ranges() -> Dict[str, Range]:
        tau = _setting_range('crossover.tau')
        n = count if count is not None else tau.count
        if tau_range is not None:
            return {'tau': Range.from_bounds(tau_range, n, tau.spacing)}
        return {'tau': Range(min=tau.min, max=tau.max, count=n, spacing=tau.spacing)}

    _run(ctx, Scenario.SPECTRO, spectro_flow, ranges=ranges)


@app.command()
def spdc(
        ctx: typer.Context,
        grid: Optional[int] = typer.Option(None, '--grid', help='Points per frequency axis.'),
        window: Optional[float] = typer.Option(None, '--window', help='Grid width in eV.'),
) -> None:
    """Joint spectral intensity of the twin-photon state."""
    _run(ctx, Scenario.SPDC, spdc_flow, options={'grid': grid, 'window': window})


@app.command('oracle-check')
def oracle_check(
        ctx: typer.Context,
        seed: int = typer.Option(0, '--seed', help='Seed of the random property checks.'),
        verbatim_report: bool = typer.Option(True, '--verbatim-report/--no-verbatim-report',
                                             help='Report the printed-dissipator steady-state divergence.'),
) -> None:
    """Run the acceptance invariants; exits with 4 when a required one fails."""
    _run(ctx, Scenario.ORACLE_CHECK, oracle_check_flow, options={'seed': seed, 'verbatim_report': verbatim_report})


if __name__ == '__main__':
    app()
