import os
from typing import Any, Dict, List, Optional, Sequence, Tuple

from two_photon_qhe._logging import get_logger
from two_photon_qhe.config import settings
from two_photon_qhe.data.storage.base import Resource, SchemaField
from two_photon_qhe.data.storage.file import file_class_factory

logger = get_logger(__name__)


class LocalResource(Resource):
    """
    Reflects a result table stored locally on the hard drive.

    Attributes:
        DEFAULT_BASE_DIR: Output directory used when none is given. Defaults to `./results`.
    """

    DEFAULT_BASE_DIR: str = settings.get('output.base_dir', './results')

    def __init__(
            self,
            path: Tuple[str, ...] | str,
            schema: Optional[List[SchemaField]] = None,
            base_dir: Optional[str] = None,
            file_format: Optional[str] = None,
            **kwargs: Any,
    ):
        """
        Instantiate resource object.

        Args:
            path: Location of the table under `base_dir`. When tuple of strings the last item is the file name
                and the rest are directories; when string, '.' separates the levels of the hierarchy.
            schema: Columns of the table, in output order.
            base_dir: Root directory of the output.
            file_format: `csv` or `json`; `output.format` from the settings by default.
        """
        self.path = path if isinstance(path, tuple) else tuple(path.split('.'))
        self.base_dir = base_dir or self.DEFAULT_BASE_DIR
        self.schema = schema

        self._file = file_class_factory(file_format)(self._dir_path, self.path[-1], schema=self.schema)

    @property
    def _dir_path(self) -> str:
        """Construct path to the directory with a file."""
        return os.path.expanduser(os.path.join(self.base_dir, *self.path[:-1]))

    @property
    def full_path(self) -> str:
        return self._file.full_path

    @property
    def relative_path(self) -> str:
        return os.path.relpath(self.full_path, os.path.expanduser(self.base_dir)).replace(os.sep, '/')

    def write(self, data: Sequence[Dict[str, Any]], append: bool = False, **kwargs: Any) -> str:
        """
        Write table rows to the file.

        Args:
            data: Rows to write, keyed by column name.
            append: Whether to append or overwrite data.
            **kwargs: Added for compatibility, ignored.

        Returns:
            Path of the file, relative to the output directory.
        """
        logger.info('Saving %s (%s rows)', '.'.join(self.path), len(data))
        self._file.write(data, append=append)
        return self.relative_path

    def read(self, **kwargs: Any) -> List[Dict[str, Any]]:
        """Read table rows from file.

        Args:
            **kwargs: Added for compatibility, ignored.
        """
        logger.info('Reading %s', '.'.join(self.path))
        return list(self._file.read())
