"""Run configuration shared by the scenario flows."""
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Mapping, Optional

import numpy as np
import numpy.typing as npt

from two_photon_qhe.config import settings
from two_photon_qhe.exceptions import ConfigurationError
from two_photon_qhe.physics.params import ParameterSet, load_parameter_set


class Scenario(str, Enum):
    POPULATIONS = 'populations'
    BATH_FIT = 'bath-fit'
    ENGINE_SWEEP = 'engine-sweep'
    BOUNDS = 'bounds'
    SPECTRO = 'spectro'
    SPDC = 'spdc'
    ORACLE_CHECK = 'oracle-check'


class Spacing(str, Enum):
    LINEAR = 'linear'
    LOG = 'log'


class OutputFormat(str, Enum):
    CSV = 'csv'
    JSON = 'json'


@dataclass(frozen=True)
class Range:
    """
    Ranged sweep parameter.

    A single-point range (`count == 1`) evaluates at `min` only.
    """

    min: float
    max: float
    count: int
    spacing: Spacing = Spacing.LINEAR

    def __post_init__(self) -> None:
        if self.count < 1:
            raise ConfigurationError(f'Range count must be at least 1, got {self.count}.', invariant='count-positive')
        if self.count > 1 and not self.min < self.max:
            raise ConfigurationError(f'Range needs min < max, got [{self.min}, {self.max}].', invariant='range-ordered')
        if Spacing(self.spacing) == Spacing.LOG and not self.min > 0.0:
            raise ConfigurationError(f'Log-spaced range needs min > 0, got {self.min}.', invariant='log-range-positive')

    def values(self) -> npt.NDArray[np.float64]:
        if self.count == 1:
            return np.array([self.min])
        if Spacing(self.spacing) == Spacing.LOG:
            return np.logspace(np.log10(self.min), np.log10(self.max), self.count)
        return np.linspace(self.min, self.max, self.count)

    def as_dict(self) -> Dict[str, Any]:
        return {'min': self.min, 'max': self.max, 'count': self.count, 'spacing': Spacing(self.spacing).value}

    @classmethod
    def from_config(cls, block: Mapping[str, Any], key: str = '<range>') -> 'Range':
        try:
            return cls(
                min=float(block['min']),
                max=float(block.get('max', block['min'])),
                count=int(block.get('count', 1)),
                spacing=Spacing(block.get('spacing', 'linear')),
            )
        except (KeyError, TypeError, ValueError) as e:
            if isinstance(e, ConfigurationError):
                raise
            raise ConfigurationError(f'Invalid range `{key}`: {block!r}.', invariant='range-valid') from None

    @classmethod
    def from_bounds(cls, text: str, count: int, spacing: Spacing) -> 'Range':
        """Parse a `min,max` pair given on the command line."""
        try:
            low, high = (float(part) for part in text.split(','))
        except ValueError:
            raise ConfigurationError(f'Expected `min,max`, got `{text}`.', invariant='range-valid') from None
        return cls(min=low, max=high, count=count, spacing=spacing)


def parse_grid(text: str) -> List[int]:
    """Parse an `NxM` grid size such as `24x24`."""
    try:
        parts = [int(part) for part in text.lower().split('x')]
    except ValueError:
        raise ConfigurationError(f'Expected a grid like `24x24`, got `{text}`.', invariant='grid-valid') from None
    if len(parts) != 2 or min(parts) < 1:
        raise ConfigurationError(f'Expected two positive counts in `{text}`.', invariant='count-positive')
    return parts


@dataclass
class SweepConfig:
    """
    Everything one scenario run depends on.

    Attributes:
        scenario: CLI subcommand.
        param_set: Name of the entry under `parameter_sets`.
        out: Output directory.
        file_format: `csv` or `json`.
        jobs: Number of workers; never changes the output.
        progress: Show progress bars.
        ranges: Ranged sweep parameters by name.
        options: Scenario switches and scalar inputs.
    """

    scenario: Scenario
    param_set: str
    out: str
    file_format: OutputFormat = OutputFormat.CSV
    jobs: int = 1
    progress: bool = False
    ranges: Dict[str, Range] = field(default_factory=dict)
    options: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        self.scenario = Scenario(self.scenario)
        try:
            self.file_format = OutputFormat(self.file_format)
        except ValueError:
            raise ConfigurationError(f'Unknown output format `{self.file_format}`.', invariant='known-format') from None
        if self.jobs < 1:
            raise ConfigurationError(f'`jobs` must be at least 1, got {self.jobs}.', invariant='jobs-positive')

    @property
    def parameter_set(self) -> ParameterSet:
        return load_parameter_set(self.param_set)

    def sweep_setting(self, key: str, default: Optional[Any] = None) -> Any:
        return settings.get(f'sweep.{key}', default)

    def to_dict(self) -> Dict[str, Any]:
        """
        Configuration recorded in the manifest and hashed.

        Output location and worker count are left out: they do not change the results.
        """
        return {
            'scenario': self.scenario.value,
            'param_set': self.param_set,
            'format': self.file_format.value,
            'parameters': self.parameter_set.raw,
            'ranges': {name: r.as_dict() for name, r in sorted(self.ranges.items())},
            'options': {key: value.value if isinstance(value, Enum) else value
                        for key, value in sorted(self.options.items())},
            'sweep': _plain_settings(settings.get('sweep', {})),
        }


def _plain_settings(value: Any) -> Any:
    if isinstance(value, Mapping):
        return {str(k).lower(): _plain_settings(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain_settings(v) for v in value]
    return value
