from typing import Any, Dict, Sequence

import prefect

from two_photon_qhe.data.storage import Resource


@prefect.task(name='Write data to storage', tags=['storage', 'write'], retries=3)
def write_data(
        data: Sequence[Dict[str, Any]],
        table: Resource,
        append: bool = False,
) -> str:
    return table.write(data, append=append)
