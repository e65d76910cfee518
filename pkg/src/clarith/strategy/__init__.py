"""Strategies: compile checked proofs into playable agents, compose them,
meter their complexity, and check certificates."""

from .specs import (
    CompiledProofSpec, DoublingSpec, InductionSpec, OracleSpec, SilentSpec,
    StrategySpec, UnarySuccessorSpec,
)
from .runtime import (
    Agent, ProofWalkAgent, Session, StrategyError, axiom_strategy, spawn,
)
from .moderate import ReasonableAgent, moderate, reasonable_wrap
from .induction import InductionAgent
from .harness import (
    Meters, MoveMeter, PlayRecord, RandomEnvironment, ScriptedEnvironment, play,
)
from .extract import (
    Extraction, ExtractionError, extract, extraction_blockers,
    induction_certificate, lc_certificate,
)
