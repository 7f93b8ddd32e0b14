"""Exact construction of units and their inverses in finite rings by lifting
from quotients along nilpotent ideal chains."""

from .errors import (
    InternalError,
    NotAUnitError,
    PreconditionError,
    ResourceError,
    ShapeError,
    UnitLiftError,
    UnsupportedError,
    ValidationError,
)
from .groups import FiniteGroup, cyclic, direct_product, permutation_index, symmetric
from .rings import (
    GaloisRing,
    GaussianMod,
    GroupRing,
    MatrixRing,
    Ring,
    RingElement,
    ZMod,
    element_arithmetic,
    ring_from_json,
)
from .crt import CrtBasis, crt_combine, crt_split
from .chain import (
    CncChain,
    IdealDescriptor,
    default_chain,
    lifting_exponent,
    make_power_chain,
    residue_map,
    validate_cnc,
)
from .lift import (
    UnitCertificate,
    binomial_inverse,
    invert,
    is_unit_via_quotient,
    lift_inverse,
    lift_inverse_commutative,
    power_reduction_witness,
    quotient_inverse,
    unit_class,
)
from .counting import count_units
from .matrix import (
    count_matrix_units,
    invert_adjugate,
    invert_gauss_jordan,
    invert_matrix_crt,
    invert_matrix_prime_power,
    invert_mod_prime,
    mat_det,
)
from .group_ring import (
    chain_ring_units,
    count_group_ring_units,
    group_ring_mul,
    invert_zmg,
    invert_zmg_crt,
    invert_zmg_radical,
    lift_inverse_group_ring,
)
from .bench import BenchReport, bench_inversion

__version__ = "0.1.0"
