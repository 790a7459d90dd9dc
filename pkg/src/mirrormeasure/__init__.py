"""Exact q-expansions, instanton numbers, and Mahler measures for pencils
of elliptic curves defined by three-term recurrence triples (A, B, lam).

The pipeline: a recurrence triple determines a second-order operator whose
holomorphic solution g1 and log partner give the mirror map q(psi); its
reversion feeds the weight-3 series, the coefficient tables b_n and a_n,
the product expansion Q(q), and finally the Mahler measure cross-checks
m(F_t) = -(1/nu) log|Q| at psi = t^(-nu).

Everything upstream of the mahler module is exact rational arithmetic.
"""

from ._rational import QQ, RATIONAL_BACKEND, is_integral, is_rational, rational
from .laurent import (
    LaurentParseError,
    LaurentPoly,
    cn_sequence,
    parse_poly,
    power_coefficient,
    torus_sup_bound,
)
from .mahler import (
    DEFAULT_PRECISION_BITS,
    PRECISION_ENV,
    DomainNotCertifiedError,
    MahlerCrossCheck,
    QuadratureReport,
    QuadratureValue,
    UnreliableEvaluationError,
    mahler_quadrature,
    mahler_report,
    mahler_series,
    mahler_vs_bigQ,
    precision_bits,
    series_tail_bound,
)
from .modular import (
    CHI_MINUS3,
    CHI_MINUS4,
    LEGENDRE5,
    QUARTIC5_WEIGHT1,
    QUARTIC5_WEIGHT3,
    CharSeq,
    EtaQuotient,
    IdentityCheck,
    IdentityStructureError,
    SuiteReport,
    character_eisenstein,
    eisenstein,
    eta_quotient_as_series,
    eta_quotient_series,
    identity_suite,
    verify_identity,
)
from .picard_fuchs import (
    REGISTRY,
    ConsistencyReport,
    DualNumber,
    FrobeniusPair,
    RecurrenceSpec,
    RegistryEntry,
    check_consistency,
    frobenius,
    mirror_map,
    ode_residual,
    resolve_example,
    search_triples,
    u_sequence,
)
from .qexpansion import (
    ExpansionTable,
    RouteMismatchError,
    UnsupportedExampleError,
    a_table,
    b_table,
    bigQ_of_q,
    expansion_table,
    g1_of_q,
    instanton_from_lambert,
    instanton_from_product,
    instanton_growth,
    lambert_extract,
    lmw_expansion,
    product_one_minus_powers,
    psi_of_q,
    q_of_bigQ,
    weight3_series,
)
from .series_core import (
    TruncatedSeries,
    series_derive,
    series_exp,
    series_invert,
    series_log,
    series_mul,
    series_pow_rational,
    series_revert,
    series_xdx,
)

__version__ = "0.1.0"

__all__ = [
    "QQ",
    "RATIONAL_BACKEND",
    "is_integral",
    "is_rational",
    "rational",
    "TruncatedSeries",
    "series_mul",
    "series_invert",
    "series_exp",
    "series_log",
    "series_revert",
    "series_pow_rational",
    "series_derive",
    "series_xdx",
    "LaurentPoly",
    "LaurentParseError",
    "parse_poly",
    "power_coefficient",
    "cn_sequence",
    "torus_sup_bound",
    "RecurrenceSpec",
    "RegistryEntry",
    "REGISTRY",
    "resolve_example",
    "DualNumber",
    "FrobeniusPair",
    "ConsistencyReport",
    "u_sequence",
    "frobenius",
    "ode_residual",
    "mirror_map",
    "check_consistency",
    "search_triples",
    "ExpansionTable",
    "RouteMismatchError",
    "UnsupportedExampleError",
    "psi_of_q",
    "g1_of_q",
    "weight3_series",
    "lambert_extract",
    "product_one_minus_powers",
    "b_table",
    "a_table",
    "bigQ_of_q",
    "q_of_bigQ",
    "instanton_growth",
    "instanton_from_lambert",
    "instanton_from_product",
    "expansion_table",
    "lmw_expansion",
    "CharSeq",
    "CHI_MINUS3",
    "CHI_MINUS4",
    "LEGENDRE5",
    "QUARTIC5_WEIGHT1",
    "QUARTIC5_WEIGHT3",
    "EtaQuotient",
    "IdentityCheck",
    "IdentityStructureError",
    "SuiteReport",
    "eisenstein",
    "eta_quotient_series",
    "eta_quotient_as_series",
    "character_eisenstein",
    "identity_suite",
    "verify_identity",
    "DomainNotCertifiedError",
    "UnreliableEvaluationError",
    "QuadratureValue",
    "QuadratureReport",
    "MahlerCrossCheck",
    "DEFAULT_PRECISION_BITS",
    "PRECISION_ENV",
    "precision_bits",
    "mahler_series",
    "mahler_quadrature",
    "mahler_report",
    "mahler_vs_bigQ",
    "series_tail_bound",
    "__version__",
]
