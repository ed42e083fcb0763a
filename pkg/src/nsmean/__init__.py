"""Neuman-Sandor mean, its classical companions, and sharp blend bounds."""

from .bounds import (
    BoundFamily,
    Enclosure,
    SharpConstants,
    blend,
    compute_constants,
    constants,
    enclose,
    lp_bounds_check,
    simple_bounds_check,
)
from .errors import (
    DegeneratePair,
    InternalInconsistency,
    InvalidPair,
    NSMeanError,
    OutOfDomain,
    ParamOutOfRange,
    SignViolation,
)
from .lemmas import (
    F_p,
    G_p,
    LemmaId,
    LemmaReport,
    RatioId,
    RatioProfile,
    f_p,
    g_p,
    ratio_R1,
    ratio_R2,
    sharpness_scan,
    solve_p0,
    verify_lemma,
)
from .means import (
    CheckReport,
    GeneralizedLog,
    MeanKind,
    NormalizedArg,
    PositivePair,
    chain_check,
    ky_fan_check,
    mean,
    neuman_sandor_squares_check,
    normalize,
    stable_arcsinh,
)

__version__ = "0.1.0"
