"""
Supergrade - Naturally Graded Superalgebras
Exact structure-constant tools for filiform Lie and maximal s-nilindex
Leibniz superalgebras: identity checks, natural gradation, deformations,
a catalog of laws and scripted classification scenarios.
"""

from .errors import (
    SupergradeError,
    StructureError,
    PreconditionError,
    UnknownEntryError,
    ArgumentRangeError,
)

from .exact import (
    Poly,
    MatrixQ,
    parse_scalar,
    format_scalar,
)

from .superalg import (
    LIE,
    LEIBNIZ,
    SuperAlgebra,
    LinearMap,
    check_identity,
    check_super_jacobi,
    check_super_leibniz,
    verify_homomorphism,
)

from .deform import (
    Cochain2,
    deform,
    weight,
    psi_cochain,
    phi_cochain,
)

from .gradation import (
    s_nilindex,
    is_filiform,
    is_max_nilindex_leibniz,
    associated_graded,
    is_naturally_graded,
)

from .files import (
    load_algebra,
    dump_algebra,
    load_cochain,
    dump_cochain,
)

from .classify import (
    list_scenarios,
    run_scenario,
)
