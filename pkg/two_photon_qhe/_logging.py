from typing import Optional, Union
import logging

import prefect
import prefect.exceptions

AnyLogger = Union[logging.Logger, logging.LoggerAdapter]


def get_logger(name: Optional[str] = None) -> AnyLogger:
    """Return Prefect or Python logger depending on the context.

     Inside a flow or task run returns the Prefect run logger, so the numerics of a scenario land in the
     run log. Otherwise, standard Python logger, with an optional name."""
    try:
        return prefect.get_run_logger()
    except prefect.exceptions.MissingContextError:
        return logging.getLogger(name)
