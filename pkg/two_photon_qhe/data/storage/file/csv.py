import os
from typing import Any, Dict, Iterable

import pandas as pd

from two_photon_qhe.data.storage.file.base import BaseFile

FLOAT_FORMAT = '%.17g'


class CsvFile(BaseFile):
    """
    Class implementing interface for interaction with a CSV file.

    Columns follow the schema order and floats carry 17 significant digits, so equal rows give equal bytes.
    """

    _extension: str = 'csv'

    def write(self, records: Iterable[Dict[str, Any]], append: bool = False, **kwargs: Any) -> None:
        """
        Write rows to a CSV file.

        Args:
            records: Iterable of rows.
            append: Whether to append to or overwrite existing file. The header is written only to a new file.
        """
        self._ensure_path_exists()

        columns = [field.name for field in self.schema] if self.schema else None
        frame = pd.DataFrame(list(records), columns=columns)
        exists = append and os.path.exists(self.full_path)
        frame.to_csv(
            self.full_path,
            mode='a' if exists else 'w',
            header=not exists,
            index=False,
            float_format=FLOAT_FORMAT,
            lineterminator='\n',
        )

    def read(self) -> Iterable[Dict[str, Any]]:
        """
        Read rows from the CSV file.

        Returns:
            Iterator over rows in the file.
        """
        return iter(pd.read_csv(self.full_path).to_dict(orient='records'))
