import json
from typing import Any, Dict, Iterable

import numpy as np

from two_photon_qhe.data.storage.file.base import BaseFile


def to_builtin(value: Any) -> Any:
    """JSON fallback for numpy scalars and enums."""
    if isinstance(value, np.generic):
        return value.item()
    if hasattr(value, 'value'):
        return value.value
    raise TypeError(f'Object of type {type(value).__name__} is not JSON serializable')


class JsonFile(BaseFile):
    """Class implementing interface for interaction with JSON-lines file."""

    _extension: str = 'jsonl'

    def write(self, records: Iterable[Dict[str, Any]], append: bool = False, **kwargs: Any) -> None:
        """
        Write json lines to a file.

        Args:
            records: Iterable of records.
            append: Whether to append to or overwrite existing file.
        """
        self._ensure_path_exists()

        with open(self.full_path, ('a' if append else 'w') + 't') as f:
            for record in records:
                f.write(json.dumps(record, sort_keys=True, default=to_builtin) + '\n')

    def read(self) -> Iterable[Dict[str, Any]]:
        """
        Read from file with json lines.

        Returns:
            Iterator over records in the file.
        """

        with open(self.full_path, 'rt') as f:
            return iter([json.loads(line) for line in f])
