"""Exact theta nets for the C2 (Sp(4)) spider."""

from .errors import (
    DenominatorVanishes,
    DivergentLimit,
    InadmissibleTriple,
    IndeterminateSign,
    MalformedWeb,
    NonClosedWeb,
    PrecisionExhausted,
    QDivisionByZero,
    SpiderError,
    StuckState,
    TermBudgetExceeded,
    TranscriptionMismatch,
)
from .netforms import (
    LevelContext,
    NetShape,
    TriLabel,
    admissible_generic,
    admissible_level,
    check_nonvanishing,
    clasp_trace,
    clasp_trace_recursive,
    diagram_sign,
    negligible,
    net_closed,
    net_ladder,
    theta,
    theta_tagged,
    tri_to_net,
)
from .qscalar import LaurentPoly, QScalar, RootContext, RootValue, eval_at_root, limit_q1, qint

__version__ = "0.1.0"
