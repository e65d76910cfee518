"""Command-line surface.

    clarith check FILE [--no-trusted]
    clarith search "SEQUENT" [budget flags]
    clarith extract FILE -o BUNDLE
    clarith play BUNDLE (--script FILE | --moves a,b | --random N | --interactive)
    clarith certify BUNDLE --show [--at 0,1,2]
    clarith serve --port P [--bundles DIR --logdir DIR --transport tcp|ws]
    clarith codec SPEC (roundtrip N | successor CODE | pred NAME ARGS | trace)

Every behavior is a thin shell over the library; outputs are deterministic
for golden-file testing.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import cl12, cla4, proofio
from .game import ENVIRONMENT, LabMove, initial_state, legal_moves, parse_run
from .numerals import Numeral
from .polyfun import dump_explicit, eval_explicit
from .search import SearchBudget, search
from .strategy import (
    PlayRecord, RandomEnvironment, ScriptedEnvironment, extract, play, spawn,
)
from .strategy.bundle import Bundle, load_bundle, proof_hash, save_bundle
from .syntax import parse_formula, parse_sequent, print_formula, print_sequent


def _print(line: str = ""):
    sys.stdout.write(line + "\n")


# ------------------------------------------------------------------ check

def cmd_check(args) -> int:
    text = open(args.file, encoding="utf-8").read()
    if args.file.endswith(".cl12"):
        proof = proofio.parse_cl12(text)
        report = cl12.check_proof(proof)
        _print(f"sequent proof: {len(proof.lines)} lines")
        for d in report.diagnostics:
            if not d.ok:
                _print(f"  line {d.label}: " + "; ".join(d.messages))
        for label, tag in report.trusted_stability:
            _print(f"  TRUSTED stability at line {label}: {tag}")
        if args.no_trusted and report.trusted_stability:
            _print("rejected: trusted evidence disallowed by policy")
            return 1
        _print("ok" if report.ok else "REJECTED")
        return 0 if report.ok else 1
    proof = proofio.parse_cla4(text)
    report = cla4.check_proof(proof)
    for d in report.diagnostics:
        if not d.ok:
            _print(f"  line {d.label}: " + "; ".join(d.messages))
    for label in report.trusted_labels:
        _print(f"  TRUSTED arithmetic at line {label}")
    _print(report.summary())
    if args.no_trusted and (report.pa_trusted or report.trusted_stability):
        _print("rejected: trusted evidence disallowed by policy")
        return 1
    return 0 if report.ok else 1


# ----------------------------------------------------------------- search

def cmd_search(args) -> int:
    sequent = parse_sequent(args.sequent if "|-" in args.sequent
                            else "|- " + args.sequent)
    budget = SearchBudget(depth=args.depth, replicate_cap=args.replicate_cap,
                          numeral_cap=args.numeral_cap, node_budget=args.nodes)
    proof = search(sequent, budget)
    if proof is None:
        _print("no proof found within budget")
        return 1
    _print(proofio.format_cl12(proof).rstrip("\n"))
    return 0


# ---------------------------------------------------------------- extract

def cmd_extract(args) -> int:
    text = open(args.file, encoding="utf-8").read()
    proof = proofio.parse_cla4(text)
    report = cla4.check_proof(proof)
    _print(report.summary())
    if not report.ok:
        for d in report.diagnostics:
            if not d.ok:
                _print(f"  line {d.label}: " + "; ".join(d.messages))
        return 1
    from .strategy.extract import ExtractionError, extraction_blockers
    blockers = extraction_blockers(proof, report)
    if blockers:
        _print("not extraction-ready: " + "; ".join(blockers))
        return 1
    ext = extract(proof, audit=report)
    bundle = Bundle(ext.game, ext.spec, ext.certificate, proof_hash(text))
    save_bundle(args.out, bundle)
    _print(f"game: {print_formula(ext.game)}")
    _print(f"certificate: {len(ext.certificate.entries)} entries, "
           f"{ext.certificate.size} nodes")
    _print(f"wrote {args.out}")
    return 0


# ------------------------------------------------------------------- play

def _report_play(rec: PlayRecord, show_transcript: bool) -> None:
    if show_transcript:
        for lm in rec.run:
            _print(str(lm))
    v = rec.verdict
    _print(f"verdict: {v.winner} ({v.reason})" + (" [stalled]" if rec.stalled else ""))
    for note in rec.notes:
        _print(f"note: {note}")


def cmd_play(args) -> int:
    bundle = load_bundle(args.bundle)
    interp_kwargs = {}
    if args.script or args.moves:
        if args.script:
            moves = [lm.move for lm in parse_run(open(args.script).read())
                     if lm.player == ENVIRONMENT]
        else:
            moves = [m for m in args.moves.split(",") if m]
        rec = play(bundle.spec, ScriptedEnvironment(moves), strict=args.strict)
        _report_play(rec, show_transcript=True)
        ok = rec.verdict.winner == "T"
        if args.transcript:
            with open(args.transcript, "w", encoding="utf-8") as fh:
                for lm in rec.run:
                    fh.write(f"{lm}\n")
        return 0 if ok else 1
    if args.random:
        rng = random.Random(args.seed)
        wins = 0
        cert = bundle.certificate
        for i in range(args.random):
            env = RandomEnvironment(seed=rng.randrange(1 << 30), max_bits=args.max_bits)
            rec = play(bundle.spec, env, strict=True)
            bound = eval_explicit(cert, rec.meters.background)
            oversize = [m for m in rec.meters.machine_moves if m.size > bound]
            if oversize:
                _print(f"play {i}: CERTIFICATE VIOLATION {oversize[0].move}")
                return 1
            if rec.verdict.winner == "T":
                wins += 1
            elif args.verbose:
                _print(f"play {i}: lost run {[str(m) for m in rec.run]}")
        _print(f"{wins}/{args.random} wins (certificate respected)")
        return 0 if wins == args.random else 1
    return _interactive_play(bundle, args)


def _interactive_play(bundle, args) -> int:
    from .game import IllegalMoveError, adjudicate, apply_move
    agent = spawn(bundle.spec)
    state = initial_state(agent.game)
    run: list[LabMove] = []

    def machine(outs):
        nonlocal state
        for m in outs:
            lm = LabMove("T", m)
            state = apply_move(state, lm)
            run.append(lm)
            _print(f"machine: {m}")

    machine(agent.start())
    _print(f"game: {print_formula(agent.game)}")
    while True:
        sites = legal_moves(state, ENVIRONMENT)
        _print(f"position: {print_formula(state.formula)}")
        if not sites:
            break
        _print("your moves: " + "; ".join(
            f"{s.prefix}<0|1>" if s.kind == "pick" else f"{s.prefix}<numeral>"
            for s in sites))
        try:
            text = input("env> ").strip()
        except EOFError:
            break
        if text in ("quit", "exit", ""):
            break
        lm = LabMove(ENVIRONMENT, text)
        try:
            state = apply_move(state, lm)
        except IllegalMoveError as e:
            if args.strict:
                run.append(lm)
                _print(f"illegal move recorded ({e.why})")
                break
            _print(f"illegal move rejected ({e.why}); try again")
            continue
        run.append(lm)
        machine(agent.observe(text))
    v = adjudicate(initial_state(agent.game), tuple(run))
    _print(f"verdict: {v.winner} ({v.reason})")
    if args.transcript:
        with open(args.transcript, "w", encoding="utf-8") as fh:
            for lm in run:
                fh.write(f"{lm}\n")
    return 0 if v.winner == "T" else 1


# ---------------------------------------------------------------- certify

def cmd_certify(args) -> int:
    bundle = load_bundle(args.bundle)
    _print(f"game: {print_formula(bundle.game)}")
    if bundle.proof_sha256:
        _print(f"proof sha256: {bundle.proof_sha256}")
    if args.show:
        _print(dump_explicit(bundle.certificate).rstrip("\n"))
    points = [int(v) for v in args.at.split(",")] if args.at else [0, 1, 4, 16, 64]
    for p in points:
        value = eval_explicit(bundle.certificate, p)
        shown = str(value) if value.bit_length() <= 128 else f"~2^{value.bit_length()}"
        _print(f"bound({p}) = {shown}")
    return 0


# ------------------------------------------------------------------ serve

def cmd_serve(args) -> int:
    from .service import SessionHub, make_ws_app, serve_tcp
    hub = SessionHub(bundles_dir=args.bundles, log_dir=args.logdir,
                     strict=args.strict)
    if args.transport == "ws":
        import uvicorn
        uvicorn.run(make_ws_app(hub), host=args.host, port=args.port,
                    log_level="warning")
        return 0
    _print(f"listening on {args.host}:{args.port}")
    serve_tcp(args.host, args.port, hub)
    return 0


# ------------------------------------------------------------------ codec

def cmd_codec(args) -> int:
    from .hpm import SymbolCodec, initial_configuration, load_spec, run_hpm, step
    from .hpm.predicates import PREDICATES, FuelExhausted
    spec = load_spec(args.spec)
    codec = SymbolCodec(spec)
    if args.op == "roundtrip":
        rng = random.Random(args.seed)
        count = int(args.args[0]) if args.args else 100
        cfgs = []
        while len(cfgs) < count:
            script = {}
            if spec.move_alphabet and rng.random() < 0.7:
                script[rng.randrange(4)] = ["".join(
                    rng.choice(spec.move_alphabet) for _ in range(rng.randint(1, 5)))]
            cfgs.extend(run_hpm(spec, script, fuel=rng.randint(1, 20)).configs)
        cfgs = cfgs[:count]
        for c in cfgs:
            code = codec.encode(c)
            assert codec.decode(code) == c
            assert codec.successor(code) == codec.encode(step(spec, c))
        _print(f"{count} configurations: codec round-trip and successor agree "
               f"(block width {codec.width})")
        return 0
    if args.op == "successor":
        code = int(args.args[0])
        _print(str(codec.successor(code)))
        return 0
    if args.op == "pred":
        name = args.args[0]
        vals = [int(a) for a in args.args[1:]]
        fn = PREDICATES[name]
        try:
            extra = {"fuel": args.fuel} if name in ("A", "A1", "B") else {}
            _print(str(fn(codec, *vals, **extra)))
            return 0
        except FuelExhausted as e:
            _print(f"unknown: {e}")
            return 2
    if args.op == "trace":
        env = {}
        if args.env:
            for part in args.env.split(","):
                cyc, move = part.split(":")
                env.setdefault(int(cyc), []).append(move)
        tr = run_hpm(spec, env, fuel=args.fuel)
        for m in tr.moves:
            _print(f"cycle {m.timestamp}: {m.player}:{m.move} "
                   f"(background {m.background}, timecost {m.timecost})")
        _print(f"cells visited: {tr.cells_visited}")
        return 0
    _print(f"unknown codec op {args.op!r}")
    return 2


# ------------------------------------------------------------------- main

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="clarith")
    sub = p.add_subparsers(dest="cmd", required=True)

    c = sub.add_parser("check", help="check a proof file")
    c.add_argument("file")
    c.add_argument("--no-trusted", action="store_true",
                   help="reject proofs that lean on trusted evidence")
    c.set_defaults(fn=cmd_check)

    s = sub.add_parser("search", help="bounded proof search for a sequent")
    s.add_argument("sequent")
    s.add_argument("--depth", type=int, default=40)
    s.add_argument("--replicate-cap", type=int, default=2)
    s.add_argument("--numeral-cap", type=int, default=2)
    s.add_argument("--nodes", type=int, default=200_000)
    s.set_defaults(fn=cmd_search)

    e = sub.add_parser("extract", help="compile a checked proof to a strategy bundle")
    e.add_argument("file")
    e.add_argument("-o", "--out", required=True)
    e.set_defaults(fn=cmd_extract)

    g = sub.add_parser("play", help="play a strategy bundle")
    g.add_argument("bundle")
    g.add_argument("--script", help="transcript file; its env moves are replayed")
    g.add_argument("--moves", help="comma-separated env moves")
    g.add_argument("--random", type=int, default=0, metavar="N")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--max-bits", type=int, default=512)
    g.add_argument("--interactive", action="store_true")
    g.add_argument("--strict", action="store_true",
                   help="an illegal interactive move ends the play")
    g.add_argument("--transcript", help="write the run to this file")
    g.add_argument("--verbose", action="store_true")
    g.set_defaults(fn=cmd_play)

    f = sub.add_parser("certify", help="inspect a bundle's complexity certificate")
    f.add_argument("bundle")
    f.add_argument("--show", action="store_true")
    f.add_argument("--at", help="comma-separated evaluation points")
    f.set_defaults(fn=cmd_certify)

    v = sub.add_parser("serve", help="serve interactive sessions")
    v.add_argument("--host", default="127.0.0.1")
    v.add_argument("--port", type=int, default=7718)
    v.add_argument("--bundles", help="directory for bundle lookups")
    v.add_argument("--logdir", help="directory for session transcripts")
    v.add_argument("--strict", action="store_true")
    v.add_argument("--transport", choices=("tcp", "ws"), default="tcp")
    v.set_defaults(fn=cmd_serve)

    k = sub.add_parser("codec", help="machine simulator and configuration codec")
    k.add_argument("spec")
    k.add_argument("op", choices=("roundtrip", "successor", "pred", "trace"))
    k.add_argument("args", nargs="*")
    k.add_argument("--seed", type=int, default=0)
    k.add_argument("--fuel", type=int, default=200)
    k.add_argument("--env", help="cycle:move,cycle:move environment script")
    k.set_defaults(fn=cmd_codec)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
