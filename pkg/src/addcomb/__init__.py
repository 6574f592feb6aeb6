"""Additive and abelian structure of infinite words.

Complexity profiles count distinct block values under a measure, finders
locate k adjacent equal-length blocks with equal values, and a backtracker
hunts for long words avoiding them.
"""

from .complexity import (
    BoundReport,
    ComplexityProfile,
    Verdict,
    check_abelian_bounds,
    check_additive_bounds,
    observed_bounds,
    profile,
)
from .measures import (
    CumulativeTable,
    MorphismMu,
    accumulate,
    factor_value,
    mu_additive,
    mu_from_description,
    mu_parikh,
)
from .powers import (
    PowerWitness,
    RetryCapExhausted,
    SearchLimits,
    find_power_mod_mu,
    find_power_scan,
    find_power_vdw,
    find_simultaneous,
    validate_simultaneous,
    validate_witness,
)
from .search import (
    AvoidanceProblem,
    SearchOutcome,
    backtrack,
    word_contains_additive_power,
)
from .words import (
    Alphabet,
    BlockCodedWord,
    ChampernowneWord,
    ExplicitWord,
    FiniteWord,
    LiftedWord,
    MorphicWord,
    PeriodicWord,
    WordSource,
    block_code,
    coded_dekking_word,
    dekking_word,
    lift,
    named_word,
    word_from_description,
)

__version__ = "0.1.0"
