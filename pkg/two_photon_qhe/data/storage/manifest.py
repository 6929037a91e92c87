"""Run manifest: configuration hash, tool version and the artifacts of one scenario run."""
import hashlib
import json
import os
from typing import Any, Dict, List, Mapping

from two_photon_qhe import __version__
from two_photon_qhe._logging import get_logger
from two_photon_qhe.data.storage.file.json import to_builtin

logger = get_logger(__name__)

MANIFEST_NAME = 'manifest.json'


def canonical_json(config: Mapping[str, Any]) -> str:
    return json.dumps(config, sort_keys=True, separators=(',', ':'), default=to_builtin)


def config_hash(config: Mapping[str, Any]) -> str:
    """SHA-256 of the canonical sorted JSON of `config`."""
    return hashlib.sha256(canonical_json(config).encode('utf-8')).hexdigest()


def build_manifest(
        scenario: str,
        config: Mapping[str, Any],
        artifacts: List[str],
        provenance: List[str],
        **extra: Any,
) -> Dict[str, Any]:
    """
    Assemble the manifest of a run. No timestamps are recorded, so reruns are byte-identical.

    Args:
        scenario: CLI subcommand that produced the run.
        config: Merged configuration, physical parameter blocks included.
        artifacts: Output files relative to the output directory.
        provenance: Figure and table tags the artifacts reproduce.
        **extra: Scenario summaries (mismatch, oracle verdict...).
    """
    return {
        'scenario': scenario,
        'tool_version': __version__,
        'config_hash': config_hash(config),
        'config': json.loads(canonical_json(config)),
        'artifacts': sorted(artifacts),
        'provenance': sorted(set(provenance)),
        **extra,
    }


def write_manifest(base_dir: str, manifest: Mapping[str, Any]) -> str:
    base_dir = os.path.expanduser(base_dir)
    os.makedirs(base_dir, exist_ok=True)
    path = os.path.join(base_dir, MANIFEST_NAME)
    with open(path, 'wt') as f:
        f.write(json.dumps(manifest, sort_keys=True, indent=2, default=to_builtin) + '\n')
    logger.info('Manifest written to %s', path)
    return path
