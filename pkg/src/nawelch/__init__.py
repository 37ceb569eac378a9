"""Exact ultrametric Welch bounds on finitely indexed vector systems."""
from .scalars import (
    INF,
    BackendMismatch,
    FuWitness,
    LaurentField,
    PadicField,
    PrecisionError,
    RationalField,
    check_fu_tuple,
    fu_search,
)
from .linalg import (
    BilinearForm,
    UFunctional,
    UMatrix,
    UVector,
    functional_from_form,
    pairing,
    probe_diagonalizable,
    sym_dim,
    sym_power_matrix,
    trace,
)
from .frames import (
    MeasuredIndex,
    SystemPair,
    frame_operator,
    integrals,
    random_system,
    system_from_json,
    system_to_json,
    tightness_check,
)
from .welch import (
    WelchReport,
    conjecture_predicate,
    verify_first_order,
    verify_higher_order,
    verify_hilbert,
)
from .search import SearchSpace, nearest_miss_report, search

__version__ = "0.1.0"
