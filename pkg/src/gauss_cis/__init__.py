"""Numerics for complete interpolating sequences in Gaussian shift-invariant spaces.

Submodules:

* ``lattice``      node-sequence models, densities, and the classifier
* ``gauss_space``  collocation matrices, interpolation, frame bounds
* ``fock``         log-domain power-series side: norms, kernels, products
* ``experiments``  reproducible scenario runner and CLI
"""

from . import experiments, fock, gauss_space, lattice, logdomain
from .errors import (
    BadParameterError,
    ComplexInputError,
    ConfigInvalidError,
    EmptyWindowError,
    GaussCisError,
    GridTooCoarseError,
    NoEnumerationError,
    NonIncreasingError,
    OnZeroError,
    SingularSystemError,
    TooFewTermsError,
    UnknownScenarioError,
    UnsortedInputError,
    WindowTooLargeError,
    WindowTooSmallError,
)
from .gauss_space import CoefficientVector
from .lattice import (
    AffineGrid,
    AvdoninVerdict,
    ExplicitWindow,
    GaussianParam,
    NodeSequence,
    PeriodicPerturbation,
    avdonin_verdict,
    beurling_densities,
    build_sequence,
    canonical_enumeration,
    check_separation,
)

__version__ = "0.1.0"
