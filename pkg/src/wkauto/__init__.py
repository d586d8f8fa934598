"""Two-way and one-way Watson-Crick automata: simulation, classification and
the all-final construction, with bounded language checks."""

from .core import (
    Alphabet,
    ComplementarityRelation,
    DoubleStrand,
    Tape,
    WKError,
    complements_of,
    enumerate_lower_strands,
    prefix_comparable,
    validate_double_strand,
)
from .lang import (
    equivalent_up_to,
    gallery_anbn,
    gallery_ww,
    language_sample,
    random_machine,
    ww_oracle,
)
from .model import (
    Direction,
    OneWayMachine,
    OneWayTransition,
    StrandRead,
    TwoWayMachine,
    TwoWayTransition,
    classify_subclass,
    classify_transition,
    eliminate_lambda_lambda,
    is_deterministic,
    is_deterministic_two_way,
    rule,
    validate,
)
from .sim import accepts, accepts_one_way, accepts_two_way, trace_deterministic
from .transform import explain_construction, to_all_final
from .wkfile import parse, serialize

__version__ = "0.1.0"
