"""Exact computation in cluster algebras of geometric type.

Seeds carry an extended exchange matrix and tracked cluster variables;
every derived quantity (mutated variables, irreducible factor counts of
the exchange binomials, divisor class groups, memberships and
valuations in the upper cluster algebra) is computed with exact integer
and rational arithmetic.
"""

from .errors import ClusterAlgError
from .fields import CoefficientSpec, PRESET_FIELDS
from .laurent import (
    LaurentPoly,
    coefficients_in_variable,
    exact_divide,
    is_unit,
    multiplicity,
    normalize,
)
from .exchange import (
    ExchangeMatrix,
    IceQuiver,
    is_acyclic,
    matrix_rank,
    matrix_to_quiver,
    mutate_matrix,
    quiver_to_matrix,
    random_exchange_matrix,
    skew_symmetrizer,
)
from .seeds import (
    Seed,
    canonical_form,
    exchange_polynomial,
    explore,
    initial_seed,
    mutate_seed,
    mutate_seed_path,
    seed_key,
    verify_laurent_phenomenon,
)
from .factors import (
    MonomialBinomial,
    brute_force_factor_count_oracle,
    count_irreducible_factors,
    cyclotomic_polynomial,
    explicit_factors_over_q,
    share_common_factor,
    to_monomial_binomial,
)
from .classgroup import (
    ClassGroupPresentation,
    class_group,
    is_ufd,
    prime_divisor_data,
    smith_normal_form,
)
from .membership import (
    MembershipCertificate,
    adjacent_expansion,
    expand_in_direction,
    is_laurent_in_seed,
    is_member_star,
    local_factorization,
    valuation_at_prime,
    valuation_pairing_fast,
    valuation_pairing_iterative,
)
from .parser import parse_element

__version__ = "0.1.0"

__all__ = [
    "ClusterAlgError",
    "CoefficientSpec",
    "PRESET_FIELDS",
    "LaurentPoly",
    "normalize",
    "exact_divide",
    "multiplicity",
    "coefficients_in_variable",
    "is_unit",
    "ExchangeMatrix",
    "IceQuiver",
    "skew_symmetrizer",
    "mutate_matrix",
    "matrix_rank",
    "quiver_to_matrix",
    "matrix_to_quiver",
    "is_acyclic",
    "random_exchange_matrix",
    "Seed",
    "initial_seed",
    "exchange_polynomial",
    "mutate_seed",
    "mutate_seed_path",
    "canonical_form",
    "seed_key",
    "explore",
    "verify_laurent_phenomenon",
    "MonomialBinomial",
    "to_monomial_binomial",
    "cyclotomic_polynomial",
    "count_irreducible_factors",
    "explicit_factors_over_q",
    "share_common_factor",
    "brute_force_factor_count_oracle",
    "ClassGroupPresentation",
    "smith_normal_form",
    "prime_divisor_data",
    "class_group",
    "is_ufd",
    "MembershipCertificate",
    "expand_in_direction",
    "adjacent_expansion",
    "is_member_star",
    "is_laurent_in_seed",
    "valuation_at_prime",
    "valuation_pairing_fast",
    "valuation_pairing_iterative",
    "local_factorization",
    "parse_element",
]
