"""Groups of rational points on abelian surfaces over finite fields.

Given a quartic Weil polynomial (one isogeny class of abelian surfaces), this
package decides and enumerates which finite abelian groups of order f(1)
occur as groups of rational points, and verifies the classification against
an independent brute-force enumeration of Frobenius-stable lattices.
"""

from .abgroup import (
    FiniteAbelianGroup,
    HodgeVector,
    assemble_from_primary,
    format_group,
    parse_group,
    partitions_with_slots,
    primary_part,
)
from .classify import (
    Case3Data,
    ClassificationResult,
    Verdict,
    decide_case1,
    decide_case2,
    decide_case3,
    decide_case4,
    decide_group,
    enumerate_groups,
)
from .errors import (
    DepthExhaustedError,
    InternalInvariantError,
    InvalidInputError,
    ParseError,
    TooManyGeneratorsError,
    UnsupportedPrimeError,
)
from .lattice import (
    OracleReport,
    StableLattice,
    conjugate_into_lattice,
    enumerate_stable_lattices,
    frobenius_model,
    mf_build,
    mf_dual_hp,
    mf_normalize,
    oracle_realized_set,
    witness_case2,
    witness_case3,
    witness_search_case1,
)
from .matrices import (
    IntMatrix,
    PolyMatrix,
    SnfResult,
    adjugate,
    block_diag,
    charpoly,
    cokernel_exponents,
    companion_matrix,
    det,
    hnf_from_columns,
    identity_matrix,
    snf,
)
from .numeric import (
    INFINITY,
    factorize,
    integer_sqrt_exact,
    is_prime,
    prime_power_decompose,
    valuation,
)
from .polygon import (
    HodgePolygon,
    NewtonPolygon,
    hodge_polygon,
    lies_on_or_above,
    newton_polygon,
    np_product_property_check,
    slope_multiset,
)
from .polynomial import (
    Case1,
    Case2,
    Case3,
    Case4,
    IntPolynomial,
    WeilPolynomial,
    detect_shape,
    is_squarefree,
    poly_eval,
    substitute_one_minus_t,
    validate_weil,
)

__version__ = "0.1.0"
