"""Measurable upper and lower bounds of squared concurrence from state pairs.

Core objects: shaped density matrices (:mod:`twocopy.linalg`), two-copy
swap/projector observables (:mod:`twocopy.projectors`), bound evaluation
and exact two-qubit values (:mod:`twocopy.bounds`), controlled-purity
random ensembles (:mod:`twocopy.ensembles`), and numerical verification
suites (:mod:`twocopy.verify`).  ``BACKEND`` names the active kernel
implementation ("cython" or "python").
"""

from ._kernels import BACKEND
from .bounds import (
    BoundsReport,
    bipartite_bounds,
    bounds_report,
    entropy_checks,
    linear_entropy,
    multipartite_bounds,
    pure_concurrence_bipartite,
    pure_concurrence_multipartite,
    tighter_upper_two_qubit,
    tilde_two_qubit,
    universal_inverter,
    wootters_concurrence,
)
from .ensembles import (
    EnsembleSpec,
    SampleRow,
    random_mixed,
    random_mixed_with_purity,
    simulate_batch,
    solve_mixing_weight,
)
from .linalg import (
    DensityMatrix,
    NotPositiveSemidefinite,
    PureState,
    SystemShape,
    eig_hermitian,
    haar_random_pure,
    kron,
    partial_trace,
    sqrt_psd,
)
from .projectors import (
    TwoCopyObservable,
    antisym_projector,
    bipartite_observables,
    layout_permutation,
    multipartite_observables,
    swap_operator,
    sym_projector,
)
from .states import (
    bell,
    ghz,
    max_entangled,
    maximally_mixed,
    random_pure,
    singlet,
    w_state,
    werner,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BoundsReport",
    "DensityMatrix",
    "EnsembleSpec",
    "NotPositiveSemidefinite",
    "PureState",
    "SampleRow",
    "SystemShape",
    "TwoCopyObservable",
    "antisym_projector",
    "bell",
    "bipartite_bounds",
    "bipartite_observables",
    "bounds_report",
    "eig_hermitian",
    "entropy_checks",
    "ghz",
    "haar_random_pure",
    "kron",
    "layout_permutation",
    "linear_entropy",
    "max_entangled",
    "maximally_mixed",
    "multipartite_bounds",
    "multipartite_observables",
    "partial_trace",
    "pure_concurrence_bipartite",
    "pure_concurrence_multipartite",
    "random_mixed",
    "random_mixed_with_purity",
    "random_pure",
    "simulate_batch",
    "singlet",
    "solve_mixing_weight",
    "sqrt_psd",
    "swap_operator",
    "sym_projector",
    "tighter_upper_two_qubit",
    "tilde_two_qubit",
    "universal_inverter",
    "w_state",
    "werner",
]
