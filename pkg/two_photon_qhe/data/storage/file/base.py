import os
from abc import ABC, abstractmethod
from typing import Any, Dict, Iterable, List, Optional

from two_photon_qhe._logging import get_logger
from two_photon_qhe.data.storage.base import SchemaField

logger = get_logger(__name__)


class BaseFile(ABC):
    """Base class for local filesystem read/write operations."""

    file_path: str
    file_name: str
    schema: Optional[List[SchemaField]]
    _extension: str

    def __init__(self, file_path: str, file_name: str, schema: Optional[List[SchemaField]] = None, **kwargs: Any):
        self.file_path = file_path
        self.file_name = file_name
        self.schema = schema

    @abstractmethod
    def write(self, records: Iterable[Dict[str, Any]], append: bool = False, **kwargs: Any) -> None:
        pass

    @abstractmethod
    def read(self) -> Iterable[Dict[str, Any]]:
        pass

    def _ensure_path_exists(self) -> None:
        if not os.path.exists(self.file_path):
            logger.info('Output folder does not exist, creating...')
            os.makedirs(self.file_path)

    @property
    def full_path(self) -> str:
        return os.path.expanduser(os.path.join(
            self.file_path,
            f'{self.file_name}.{self._extension}',
        ))
