"""Exact verification of congruences for harmonic sums modulo prime powers."""
from .bernoulli import bernoulli_exact, bernoulli_mod
from .errors import (
    BadRange,
    CongruenceError,
    ContextMismatch,
    InsufficientValuation,
    NonInvertible,
    NonInvertibleDenominator,
    OracleBoundExceeded,
    OutOfApplicabilityRange,
    UndefinedValuation,
    UnknownCheckId,
    VonStaudtPole,
)
from .harmonic import (
    HarmonicTable,
    binomial_expansion_check,
    doubling_check,
    harmonic_exact,
    harmonic_table,
    reflection_check,
    wolstenholme_suite,
)
from .identities import (
    corollary_1_2_check,
    hernandez_check,
    identity_21_check,
    lemma_2_3_check,
    lemma_2_4_check,
    lemma_2_6_check,
    lemma_2_8_check,
    lemma_2_9_check,
    remarks_check,
    theorem_1_1_check,
)
from .localfield import (
    ExactRational,
    LocalResidue,
    PrimeContext,
    lift_divide,
    lr_add,
    lr_inv,
    lr_mul,
    lr_neg,
    prime_context,
    reduce,
    valuation,
)
from .multiharmonic import MhsSpec, mhs, mhs_bruteforce, newton_identity_check, quadruple_check, triple_relations_check
from .registry import CHECK_IDS, REGISTRY, CheckDescriptor, execute_registry, run_registry
from .results import CheckResult, Part

__version__ = "0.1.0"
