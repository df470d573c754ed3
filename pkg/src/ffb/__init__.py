"""Finite-field bilinear equation counting and character-sum toolkit."""

from .bounds import (
    BoundReport,
    cauchy_error_check,
    compute_V,
    compute_W,
    karatsuba_report,
    solvability_threshold_check,
    vinogradov_check,
)
from .characters import (
    CharSumTable,
    char_eval,
    repfn_char_sums,
    set_char_sums,
    shifted_product_char_sums,
)
from .counters import (
    count_additive,
    count_additive_charform,
    count_bilinear,
    count_bilinear_charform,
    count_general,
    exceptional_set,
    verify_sarkozy_identity,
)
from .errors import (
    BadExponent,
    BadParam,
    DivideByZero,
    FfbError,
    IntegerOverflow,
    LambdaZero,
    NoNontrivialCharacter,
    NotPrime,
    NotPrimeField,
    Overflow,
    Reducible,
    RoundingDrift,
)
from .field import (
    FieldSpec,
    field_add,
    field_inv,
    field_mul,
    field_neg,
    field_sub,
    find_generator,
    make_field,
)
from .repfn import (
    FqSubset,
    RepFn,
    additive_convolve,
    complement_subset,
    empty_subset,
    full_subset,
    negate_subset,
    rep_product,
    rep_sum,
    subset_from_codes,
)
from .setsgen import SetSpec, derive_seed, parse_setspec, realize
from .sumprod import (
    count_determinant2,
    garaev_inequality_report,
    garaev_solution_count,
    productset,
    sumset,
)

__version__ = "0.1.0"
