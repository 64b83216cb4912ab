"""Exact modular-group and lattice invariants of Fourier-Mukai
transformations on Picard-rank-one K3 surfaces of degree 2d: the
Atkin-Lehner coset algebra, the rank-3 Mukai lattice and its isometries,
the lift/descend correspondence between them, the derived-partner census,
and the induced actions on the upper half plane."""

from .arith import (
    ExactDivisor,
    Factorization,
    exact_divisor_values,
    exact_divisors,
    factorize,
    is_exact_divisor,
    mod_inverse,
    star,
)
from .corr import (
    CorrespondenceReport,
    classify_coset,
    descend,
    represent,
    verify_correspondence,
)
from .errors import (
    ActionNotDiagonal,
    EndpointMismatch,
    IntegralityViolation,
    InternalClosureViolation,
    InvalidDeterminant,
    InvalidLevel,
    K3FMError,
    LevelMismatch,
    NotAnIsometry,
    NotInImage,
    NotIntegral,
    NotInUpperHalfPlane,
    NumericalPole,
    ZeroRank,
)
from .fmcalc import (
    InducedTransform,
    MukaiVector,
    PartnerCensus,
    PartnerLabel,
    compose,
    induced_transform,
    invert,
    isotropic_vector,
    partner_census,
    partner_label,
    same_partner,
    source_twist,
    translation_transform,
)
from .halfplane import (
    HalfPlanePoint,
    TubeVector,
    central_charge,
    charge_product_defect,
    embed,
    equivariance_defect,
    induced_action,
    mobius,
    real_matrix,
)
from .lattice import (
    DiscriminantUnit,
    IsometryN,
    LatticeVector,
    discriminant_unit,
    gram_matrix,
    in_star_kernel,
    is_isometry,
    is_orientation_preserving,
    isometry_product,
    mukai_pairing,
)
from .modgroup import (
    ALElement,
    CosetLabel,
    al_from_tuple,
    al_identity,
    al_inverse,
    al_mul,
    base_element,
    fricke_coset_count,
    is_fricke,
    random_al,
    random_gamma0,
    translation,
)

__version__ = "0.1.0"
