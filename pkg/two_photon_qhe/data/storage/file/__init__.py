from typing import Optional, Type

from two_photon_qhe.config import settings
from two_photon_qhe.data.storage.file.base import BaseFile
from two_photon_qhe.data.storage.file.csv import CsvFile
from two_photon_qhe.data.storage.file.json import JsonFile


def file_class_factory(file_format: Optional[str] = None) -> Type[BaseFile]:
    file_format = file_format or settings.get('output.format')

    if file_format == 'csv' or file_format is None:
        return CsvFile
    elif file_format == 'json':
        return JsonFile
    else:
        raise NotImplementedError(f'Unknown file format `{file_format}`.')
