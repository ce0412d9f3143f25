"""Density matrices, the linear kernels that transform them, and their symmetries.

Modules:

* :mod:`dmsym.linalg`: index conventions and dense helpers
* :mod:`dmsym.states`: density matrices, ensembles, purifications
* :mod:`dmsym.channels`: kernels, spectra, Kraus forms, positivity
* :mod:`dmsym.generators`: infinitesimal symmetry data and the group-law constraint
* :mod:`dmsym.lindblad`: the Lindblad equation and its integration
* :mod:`dmsym.steering`: ensembles realized by measuring a purifying partner
"""

from . import channels, generators, linalg, lindblad, states, steering
from .channels import Kernel
from .exceptions import (
    ContractViolation,
    EnsembleMismatch,
    LinearityViolation,
    NegativeDelta,
    NegativeEigenvalue,
    NonUnitaryFamily,
    NotFactorized,
    SingularKernel,
    StepTooLarge,
)
from .generators import StructureConstants, SymmetryGenerator
from .lindblad import LindbladGenerator
from .states import Ensemble

__version__ = "0.1.0"
