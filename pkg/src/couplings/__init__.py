from .errors import CouplingError

__version__ = "0.1.0"
