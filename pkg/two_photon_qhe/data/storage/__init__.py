from typing import Type

from two_photon_qhe._logging import get_logger
from two_photon_qhe.config import settings
from two_photon_qhe.data.storage.base import Resource, SchemaField
from two_photon_qhe.data.storage.local import LocalResource

logger = get_logger()


def resource_class_factory() -> Type[Resource]:
    storage_type = settings.get('output.storage', 'local')
    logger.debug('Attempting to use storage type `%s`...', storage_type)

    if storage_type == 'local':
        return LocalResource
    else:
        raise NotImplementedError(f'Unknown storage_type `{storage_type}`.')
