"""Dynamical systems over complete weighted lattices.

Scalars live in a *clodum*: a complete lattice with a multiplication that
distributes over joins (``mult``) and a dual one that distributes over
meets (``dual_mult``).  Vectors and matrices carry their clodum along, and
every operation is written once for all of them.

>>> import wlattice as wl
>>> mp = wl.make_clodum("max-plus")
>>> A = wl.matrix([[4, -1], [2, -float("inf")]], mp)
>>> wl.maxmul(A, wl.vector([-1, 4], mp)).tolist()
[3.0, 1.0]
"""

from .clodum import (
    CLODUM_NAMES,
    DEFAULT_TOLERANCE,
    Clodum,
    MaxMin,
    MaxPlus,
    MaxTimes,
    ProductTNorm,
    conjugate,
    make_clodum,
    scalar_adj_erosion,
)
from .errors import (
    CarrierError,
    ClodumMismatchError,
    ConfigurationError,
    DimensionError,
    ParseError,
    UnsupportedOperationError,
    WLatticeError,
)
from .linalg import (
    WMatrix,
    WVector,
    adjoint_matrix,
    bottom,
    conjugate_vector,
    elementwise_join,
    elementwise_meet,
    identity,
    matrix,
    matrix_power,
    matrix_powers,
    max_adj_product,
    maxmul,
    min_adj_product,
    minmul,
    scalar_times,
    top,
    vec_adjoint_dilation,
    vec_adjoint_erosion,
    vec_dilation,
    vec_erosion,
    vector,
)
from .solve import SolveReport, solve_max, solve_min
from .spectral import (
    SpectralReport,
    critical_cycles,
    cycle_mean,
    cycle_mean_eigenvalue,
    dual_cycle_mean,
    eigen_check,
    dual_eigen_check,
    eigenvector_candidates,
    elementary_cycles,
    is_irreducible,
    karp_max_cycle_mean,
    metric_matrix,
    precedence_graph,
    principal_eigenvalue,
    spectral_report,
)
from .systems import (
    Signal,
    StabilityReport,
    SystemSpec,
    Trajectory,
    check_causal_stable,
    closed_form_response,
    detect_period,
    impulse_response,
    inf_convolve,
    seminorm,
    simulate,
    sup_convolve,
    transition_matrix,
)
from .control import ControlReport, controllability_matrix, observability_matrix, observe, reach

__version__ = "0.1.0"
