"""Morphic words, their subshifts and lexicographically extremal words."""

from .config import DEFAULT_CAPS, Caps
from .errors import (
    AmbiguityError,
    DomainError,
    FactorizationError,
    FiniteWordError,
    InconsistencyError,
    MorphicError,
    NotFixedPointError,
    NotInMxError,
    NotProlongableError,
    ParseError,
    PeriodDetectionError,
    ResourceError,
    VerificationError,
)
from .factors import (
    ExtremalQuery,
    FactorSet,
    MorphicSource,
    SampleSource,
    build_factors,
    greedy_extremal,
    is_recurrent_sample,
    mirror_identities_check,
)
from .lazy import LazyWord, code, fixed_point, is_prolongable
from .letters import (
    CaseA,
    CaseB,
    FiniteFixedPoints,
    LetterClasses,
    Undetermined,
    classify,
    classify_fixed_point_form,
    finite_fixed_points,
)
from .mx import MxReport, Verdict, binary_mx_witnesses, check_mx
from .returns import ReturnSystem, derive, derived_word_census, induced_order, return_words
from .synth import (
    CycleDecomposition,
    MorphicRep,
    TransportStep,
    expand,
    find_cycle,
    synthesize,
    synthesize_coded,
    transport,
)
from .words import (
    Alphabet,
    Morphism,
    Ordering,
    TotalOrder,
    apply,
    compare,
    parse_order,
    power_apply,
)
