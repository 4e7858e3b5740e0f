"""Exact local arithmetic of elliptic curves over Q: Tate's algorithm,
component groups, local Selmer-structure orders, and the global order
identities they satisfy."""

from .curves import (
    FiniteFieldCurve,
    FiniteFieldPoint,
    SingularCurveError,
    Transformation,
    WeierstrassCurve,
    count_p_torsion_mod,
    enumerate_points_mod,
    parse_ainvs,
    transform,
)
from .euler import (
    EulerLedger,
    build_S,
    chi_selmer,
    euler_factor,
    global_torsion_order,
    verify_main_theorem,
)
from .lmfdb import OracleRecord, crosscheck, fetch_curve
from .localorders import (
    InconsistentLocalData,
    LocalSelmerOrders,
    Place,
    assemble_local_orders,
    division_polynomial,
    local_kummer_order,
    local_torsion_order,
)
from .padic import (
    IntegerPolynomial,
    PadicContext,
    PadicRoot,
    PrecisionExhausted,
    count_roots_padic,
    find_roots_padic,
    is_square_local,
    valuation,
)
from .tate import (
    FiniteAbelianGroup,
    KodairaType,
    LocalData,
    is_split_multiplicative,
    phi_p_part_order,
    tate_local,
)

__version__ = "0.1.0"

__all__ = [
    "WeierstrassCurve", "Transformation", "transform", "parse_ainvs",
    "SingularCurveError", "FiniteFieldCurve", "FiniteFieldPoint",
    "enumerate_points_mod", "count_p_torsion_mod",
    "KodairaType", "FiniteAbelianGroup", "LocalData", "tate_local",
    "is_split_multiplicative", "phi_p_part_order",
    "Place", "LocalSelmerOrders", "InconsistentLocalData",
    "division_polynomial", "local_torsion_order", "local_kummer_order",
    "assemble_local_orders",
    "EulerLedger", "build_S", "global_torsion_order", "chi_selmer",
    "euler_factor", "verify_main_theorem",
    "OracleRecord", "fetch_curve", "crosscheck",
    "IntegerPolynomial", "PadicContext", "PadicRoot", "PrecisionExhausted",
    "valuation", "is_square_local", "count_roots_padic", "find_roots_padic",
    "__version__",
]
