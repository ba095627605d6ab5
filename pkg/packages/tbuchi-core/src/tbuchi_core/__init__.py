import importlib.metadata

from ._constants import LOGGER_NAME, TAU

try:
    __version__ = importlib.metadata.version("tbuchi_core")
except importlib.metadata.PackageNotFoundError:
    __version__ = "0.0.0"

__all__ = ["LOGGER_NAME", "TAU", "__version__"]
