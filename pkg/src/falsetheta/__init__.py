"""Exact and numerical verification of false theta function identities at roots of unity."""
from __future__ import annotations

from .bailey import (
    BaileyPair,
    finite_transform_identity,
    lemma31_identity,
    pair_ex1,
    pair_ex2,
    pair_ex3,
    pair_prop41,
    verify_pair_definition,
)
from .characters import (
    FAMILIES,
    L_value,
    PeriodicSignCharacter,
    TwistedPeriodicFunction,
    bernoulli_polynomial,
    character_qseries,
    finite_evaluation,
    get_family,
    limit_value_hikami,
    limit_value_quadratic_form,
    prefactor,
    radial_limit,
)
from .cyclotomic import (
    CyclotomicNumber,
    RootOfUnityExponent,
    complex_approximation,
    cyclotomic_polynomial,
    embed,
    root_power,
    zeta_power,
)
from .errors import DomainError
from .nested import (
    NestedSumSpec,
    evaluate_at_root,
    evaluate_truncated,
    expand_series,
    family_spec,
    quantum_identity,
    series_identity_check,
)
from .qseries import (
    FractionalQSeries,
    QPolynomial,
    TruncatedQSeries,
    eval_at,
    gaussian_binomial,
    pochhammer,
)
from .radial import RadialPath, extrapolate_limit, partial_sum_at
from .report import VerificationRecord, report_schema

__version__ = "0.1.0"
