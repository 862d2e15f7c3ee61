"""golodkit: exact-arithmetic certificates for Golod ideals via Koszul cycles."""

__version__ = "0.1.0"

from .dcalc import Permutation, d_ideal, d_op, d_sigma_op
from .errors import GolodkitError
from .golod import (
    GolodCertificate,
    check_d_sigma_golod,
    check_strongly_d_golod,
    is_stable,
    stable_golod_cert,
    stretched_ideal,
    stretched_permutation,
    sum_family_ideal,
)
from .groebner import GroebnerBasis, IdealGens, buchberger, ideal_subset, normal_form
from .koszul import (
    KoszulElement,
    build_chain,
    build_cycle,
    koszul_boundary,
    koszul_homology,
    verify_basis,
    verify_zero_map,
)
from .monomial import (
    MonomialIdeal,
    associated_primes,
    integral_closure,
    maximal_ideal,
    mi_colon,
    mi_intersect,
    mi_power,
    mi_product,
    mi_saturate,
    min_gens,
    symbolic_power,
)
from .poincare import (
    PoincareResult,
    RingProfile,
    TruncatedSeries,
    golod_equality,
    hilbert_series,
    poincare_k,
    ring_profile,
    sally_series,
    serre_bound,
    series_ops,
)
from .resolution import (
    FreeComplex,
    betti_numbers,
    format_complex,
    minimalize,
    parse_complex,
    taylor_complex,
    validate_complex,
)
from .ring import (
    GF,
    GREVLEX,
    LEX,
    Monomial,
    PolyRing,
    Polynomial,
    QQ,
    TermOrder,
    exact_div_var,
    poly_arith,
    zero_prefix_sub,
)
