from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union


@dataclass
class SchemaField:
    name: str
    field_type: Union[str, type]
    default: Optional[Any] = None
    description: Optional[str] = None


class Resource(ABC):
    """
    Base abstract class for a Resource object that reflects a result table somewhere in the storage.
    """

    schema: Optional[List[SchemaField]]

    @abstractmethod
    def __init__(
            self,
            path: Tuple[str, ...] | str,
            schema: Optional[List[SchemaField]] = None,
            **kwargs: Any,
    ):
        pass

    @abstractmethod
    def write(self, data: Sequence[Dict[str, Any]], append: bool = False, **kwargs: Any) -> str:
        pass

    @abstractmethod
    def read(self, **kwargs: Any) -> List[Dict[str, Any]]:
        pass

    @property
    def columns(self) -> List[str]:
        return [field.name for field in self.schema or []]
