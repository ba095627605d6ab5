import logging
import logging.config
import os
from importlib import resources
from pathlib import Path
from typing import Optional

import yaml
from dotenv import load_dotenv
from prometheus_client import start_http_server

from ._constants import LOGGER_NAME, LOGGING_CONFIG_ENV, METRICS_PORT_ENV

logger = logging.getLogger(LOGGER_NAME)


def configure_logging() -> None:
    """Apply the logging YAML named by ``LOGGING_CONFIG`` (``.env`` honoured), else the packaged one."""
    load_dotenv()
    path = os.getenv(LOGGING_CONFIG_ENV)
    if path:
        text = Path(path).read_text(encoding="utf-8")
    else:
        text = resources.files("tbuchi_app").joinpath("logging_config.yaml").read_text(encoding="utf-8")
    config = yaml.safe_load(text)
    if not isinstance(config, dict):
        raise ValueError(f"logging configuration {path or 'logging_config.yaml'} is not a mapping")
    logging.config.dictConfig(config)


def start_metrics_server() -> Optional[int]:
    """Start the prometheus exporter when ``TBUCHI_METRICS_PORT`` is set; returns the port."""
    raw = os.getenv(METRICS_PORT_ENV)
    if not raw:
        return None
    try:
        port = int(raw)
    except ValueError as e:
        raise ValueError(f"{METRICS_PORT_ENV} must be a port number (got {raw!r})") from e
    start_http_server(port)
    logger.info("metrics exporter listening on port %d", port)
    return port
