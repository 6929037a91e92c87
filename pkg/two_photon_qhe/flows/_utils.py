from typing import Any, Iterable, Iterator, List, Optional, Sequence, Tuple, TypeVar

import prefect
from prefect_dask import DaskTaskRunner
from tqdm import tqdm

from two_photon_qhe.data.storage import resource_class_factory
from two_photon_qhe.data.storage.base import Resource, SchemaField
from two_photon_qhe.data.storage.manifest import build_manifest, write_manifest
from two_photon_qhe.flows.config import SweepConfig

T = TypeVar('T')

DEFAULT_CHUNK_SIZE = 64


def resource(table: Tuple[Tuple[str, ...], List[SchemaField]], config: SweepConfig) -> Resource:
    """Bind a declared table to the output directory and format of the run."""
    path, schema = table
    storage_class = resource_class_factory()
    return storage_class(path=path, schema=schema, base_dir=config.out, file_format=config.file_format.value)


def chunks(items: Sequence[T], size: int) -> Iterator[List[T]]:
    """Consecutive slices of at most `size` items."""
    for start in range(0, len(items), size):
        yield list(items[start:start + size])


def progress(items: Iterable[T], enabled: bool, desc: str, total: Optional[int] = None) -> Iterable[T]:
    return tqdm(items, desc=desc, total=total, disable=not enabled)


def with_jobs(flow: prefect.Flow, jobs: int) -> prefect.Flow:
    """Run `flow` on a Dask cluster of `jobs` workers, or sequentially for a single job."""
    if jobs <= 1:
        return flow
    return flow.with_options(task_runner=DaskTaskRunner(cluster_kwargs={'n_workers': jobs, 'threads_per_worker': 1}))


def finish_run(config: SweepConfig, artifacts: List[str], provenance: List[str], **extra: Any) -> str:
    """Write the manifest of the run and return its path."""
    return write_manifest(config.out, build_manifest(config.scenario.value, config.to_dict(), artifacts, provenance,
                                                     **extra))
