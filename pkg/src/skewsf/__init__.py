"""skewsf: finite semifields from skew polynomial rings.

Construction of the semifields S_f = K[t;sigma] mod right division by an
irreducible f, their invariants (nuclei, eigenring, minimal central left
multiple), the correspondence with semifields built from irreducible
semilinear transformations, and isotopy-class counting via group orbits on
irreducible polynomials.
"""

__version__ = "0.1.0"

from .classify import (  # noqa: F401
    bounds_report,
    class_representatives,
    count_N,
    enumerate_I,
    g_act,
    GroupElem,
    irreducible_divisor,
    odoni_count,
    orbit_decomposition,
    OrbitReport,
    spreadset_equivalence,
    theta,
)
from .fqpoly import CentralPoly  # noqa: F401
from .gf import (  # noqa: F401
    build_tower,
    FieldDesc,
    FieldElem,
    frobenius,
    norm,
    norm_preimage,
)
from .semifield import (  # noqa: F401
    check_axioms,
    FieldAlgebra,
    isomorphism_from_ring_automorphism,
    isotopism_from_similarity,
    left_division_variant,
    LinearTriple,
    multiply,
    nucleus,
    Semifield,
    verify_triple,
)
from .semilinear import (  # noqa: F401
    companion_of,
    conjugacy_test,
    conjugate_to_companion,
    cyclic_mul,
    CyclicAlgebra,
    is_irreducible_semilinear,
    min_poly_T_pow_n,
    SemilinearMap,
)
from .skewpoly import (  # noqa: F401
    anti_involution,
    apply_ring_automorphism,
    central_lift,
    derivation_ring_iso,
    Eigenring,
    eigenring,
    gcrd,
    is_central,
    is_irreducible,
    matrix_rep,
    mzlm,
    similar_witness,
    SkewPoly,
    SkewRing,
)
