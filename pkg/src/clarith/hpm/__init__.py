"""Interactive Turing machines: simulator, complexity meters, configuration
codec, and executable configuration predicates."""

from .machine import (
    BLANK, Configuration, ENV_LABEL, HpmSpec, MACHINE_LABEL, MachineSpecError,
    TimedMove, Trace, Transition, initial_configuration, run_hpm, step,
)
from .codec import CodecError, Symbol, SymbolCodec, concat_codes
from .predicates import PREDICATES, FuelExhausted
from .specfile import format_spec, load_spec, parse_spec
