"""srglab: strongly regular graphs on nonisotropic points and their intriguing sets."""

__version__ = "0.1.0"

from srglab.config import Config
from srglab.exceptions import SrgLabError

__all__ = ["Config", "SrgLabError", "__version__"]
