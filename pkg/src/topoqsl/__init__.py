"""Quantum-speed-limit times for a topological qubit dephasing in
Ohmic-like fermionic and bosonic environments.

The package is organized bottom-up: ``specfun`` (Gamma and the
hypergeometric series), ``bath`` (environment coefficients, decay
integral and decay factor), ``qubit`` (Bloch-vector states and the two
dephasing channels), ``qsl`` (the ML/MT/unified bound times, adaptive
quadrature and axis scans) and ``cli`` (the ``topoqsl`` command).
"""

from .bath import (
    BathKind,
    BathParams,
    ConformalDimension,
    FermiGammaConvention,
    bath_coefficient,
    bath_coefficient_bosonic,
    bath_coefficient_fermionic,
    decay_factor,
    decay_factor_derivative,
    decay_integral,
    decay_integral_derivative,
    decay_state,
)
from .errors import (
    ConvergenceError,
    DomainError,
    FrozenDynamicsError,
    GammaPoleError,
    ParameterError,
    QuadratureError,
    UnsupportedDimensionError,
)
from .qsl import (
    DEFAULT_QUADRATURE,
    QslResult,
    QuadratureControl,
    ScanAxis,
    ScanRow,
    ScanTable,
    Window,
    adaptive_simpson,
    averaged_norms,
    qsl_closed_form_max_coherent,
    qsl_ml,
    qsl_mt,
    qsl_unified,
    scan,
)
from .qubit import (
    MAXIMALLY_COHERENT,
    BlochVector,
    QubitState,
    SingularPair,
    bloch_to_state,
    evolve,
    evolve_bosonic,
    evolve_fermionic,
    generator_singular_values,
    purity,
    relative_purity,
    state_singular_values,
)
from .specfun import (
    DEFAULT_SERIES_CONTROL,
    SeriesControl,
    factorial,
    gamma,
    hyp1f1,
    hyp2f2,
    ln_gamma,
    sin_pi,
)

__version__ = "0.1.0"
