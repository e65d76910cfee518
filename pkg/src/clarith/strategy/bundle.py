"""Strategy bundles: a JSON envelope holding the declared game, the strategy
spec tree (with any embedded sequent proofs as text), the polynomial
certificate, and a hash of the source proof, loadable by the play harness
and the session service."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass

from .. import proofio
from ..polyfun import ExplicitPolyFn, dump_explicit, load_explicit
from ..syntax import Formula, parse_formula, print_formula
from .specs import (
    CompiledProofSpec, DoublingSpec, InductionSpec, SilentSpec, StrategySpec,
    UnarySuccessorSpec,
)


def spec_to_json(spec: StrategySpec) -> dict:
    if isinstance(spec, SilentSpec):
        return {"kind": "silent", "game": print_formula(spec.game)}
    if isinstance(spec, UnarySuccessorSpec):
        return {"kind": "unary-successor", "game": print_formula(spec.game)}
    if isinstance(spec, DoublingSpec):
        return {"kind": "doubling", "game": print_formula(spec.game)}
    if isinstance(spec, CompiledProofSpec):
        return {"kind": "proof-walk", "game": print_formula(spec.game),
                "proof": proofio.format_cl12(spec.proof),
                "providers": [spec_to_json(p) for p in spec.providers]}
    if isinstance(spec, InductionSpec):
        return {"kind": "induction", "game": print_formula(spec.game),
                "formula": print_formula(spec.formula), "var": spec.var,
                "base": spec_to_json(spec.base), "left": spec_to_json(spec.left),
                "right": spec_to_json(spec.right)}
    raise TypeError(f"cannot serialize {spec!r}")


def spec_from_json(data: dict) -> StrategySpec:
    kind = data["kind"]
    game = parse_formula(data["game"])
    if kind == "silent":
        return SilentSpec(game)
    if kind == "unary-successor":
        return UnarySuccessorSpec(game)
    if kind == "doubling":
        return DoublingSpec(game)
    if kind == "proof-walk":
        proof = proofio.parse_cl12(data["proof"])
        providers = tuple(spec_from_json(p) for p in data["providers"])
        return CompiledProofSpec(proof, providers, game)
    if kind == "induction":
        return InductionSpec(parse_formula(data["formula"]), data["var"],
                             spec_from_json(data["base"]), spec_from_json(data["left"]),
                             spec_from_json(data["right"]), game)
    raise ValueError(f"unknown strategy kind {kind!r}")


@dataclass
class Bundle:
    game: Formula
    spec: StrategySpec
    certificate: ExplicitPolyFn
    proof_sha256: str = ""


def save_bundle(path, bundle: Bundle):
    payload = {
        "format": "clarith-bundle",
        "version": 1,
        "game": print_formula(bundle.game),
        "strategy": spec_to_json(bundle.spec),
        "certificate": dump_explicit(bundle.certificate),
        "proof_sha256": bundle.proof_sha256,
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=1)
        fh.write("\n")


def load_bundle(path) -> Bundle:
    with open(path, encoding="utf-8") as fh:
        payload = json.load(fh)
    if payload.get("format") != "clarith-bundle":
        raise ValueError("not a strategy bundle")
    return Bundle(parse_formula(payload["game"]),
                  spec_from_json(payload["strategy"]),
                  load_explicit(payload["certificate"]),
                  payload.get("proof_sha256", ""))


def proof_hash(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()
