"""Random greedy independent sets in hypergraphs: simulation, trajectories and statistics."""

__version__ = "0.1.0"

from .errors import ConfigurationError, HygreedyError, HypothesisError, InputError, ResourceError
from .hypergraph import Hypergraph, LabeledFamily
from .process import ProcessState, init, run, step

__all__ = [
    "__version__",
    "ConfigurationError",
    "HygreedyError",
    "HypothesisError",
    "InputError",
    "ResourceError",
    "Hypergraph",
    "LabeledFamily",
    "ProcessState",
    "init",
    "run",
    "step",
]
