"""Session service: protocol flow, actionable-node invariant, log replay."""

import json
import socket
import threading

import pytest

from clarith import cla4
from clarith.game import ENVIRONMENT, GameState, legal_moves
from clarith.proofio import load_cla4
from clarith.service import PlaySession, Server, SessionHub, formula_tree
from clarith.strategy import ScriptedEnvironment, extract, play
from clarith.strategy.bundle import Bundle, save_bundle
from clarith.syntax import parse_formula


@pytest.fixture(scope="module")
def zero_bundle(tmp_path_factory, corpus_dir):
    ext = extract(load_cla4(corpus_dir / "zeroness.cla4"))
    path = tmp_path_factory.mktemp("bundles") / "zeroness.bundle"
    save_bundle(path, Bundle(ext.game, ext.spec, ext.certificate))
    return path


def collect_actionable(tree):
    out = []
    if tree.get("mover") == ENVIRONMENT:
        out.append((tree["kind"], tree.get("prefix", "")))
    for child in tree.get("children", []):
        out += collect_actionable(child)
    return out


def test_actionable_nodes_mirror_legal_env_moves(zero_bundle):
    from clarith.strategy.bundle import load_bundle
    session = PlaySession(load_bundle(zero_bundle).spec)
    msg = session.state_message()
    sites = legal_moves(session.state, ENVIRONMENT)
    assert [(s.kind, s.prefix) for s in sites] == \
        collect_actionable(msg["formula"])
    assert [m["kind"] for m in msg["moves"]] == [s.kind for s in sites]


def test_session_flow_and_verdict(zero_bundle):
    from clarith.strategy.bundle import load_bundle
    session = PlaySession(load_bundle(zero_bundle).spec,
                          certificate=load_bundle(zero_bundle).certificate)
    msgs = session.env_move("110")
    kinds = [m["kind"] for m in msgs]
    assert kinds == ["machine-move", "state", "verdict"]
    assert msgs[0]["move"] == "1"
    assert msgs[-1]["winner"] == "T"
    assert msgs[1]["meters"]["background"] == 3
    assert "certificate_at_background" in msgs[1]["meters"]


def test_illegal_moves_rejected_then_retryable(zero_bundle):
    from clarith.strategy.bundle import load_bundle
    session = PlaySession(load_bundle(zero_bundle).spec)
    msgs = session.env_move("2notanumeral")
    assert msgs[0]["kind"] == "error" and "try again" in msgs[0]["text"]
    assert not session.finished
    assert session.env_move("11")[-1]["kind"] == "verdict"


def test_strict_mode_applies_run_semantics(zero_bundle):
    from clarith.strategy.bundle import load_bundle
    session = PlaySession(load_bundle(zero_bundle).spec, strict=True)
    msgs = session.env_move("zzz")
    assert msgs[-1]["kind"] == "verdict"
    assert msgs[-1]["winner"] == "T"  # the offender loses


def test_tcp_server_round_trip(zero_bundle, tmp_path):
    hub = SessionHub(bundles_dir=str(zero_bundle.parent),
                     log_dir=str(tmp_path / "logs"))
    server = Server("127.0.0.1", 0, hub)
    port = server.server_address[1]
    threading.Thread(target=server.serve_forever, daemon=True).start()
    try:
        with socket.create_connection(("127.0.0.1", port), timeout=5) as sock:
            fh = sock.makefile("rw")

            def send(msg):
                fh.write(json.dumps(msg) + "\n")
                fh.flush()

            def recv():
                return json.loads(fh.readline())

            send({"v": 1, "kind": "new-session", "bundle": "zeroness.bundle"})
            assert recv()["kind"] == "state"
            send({"v": 1, "kind": "env-move", "move": "1001"})
            got = [recv(), recv(), recv()]
            assert [m["kind"] for m in got] == ["machine-move", "state", "verdict"]
            assert got[0]["move"] == "1"
            send({"v": 1, "kind": "bye"})
    finally:
        server.shutdown()
    # the session log replays to the identical run and verdict
    logs = list((tmp_path / "logs").glob("session-*.log"))
    assert len(logs) == 1
    moves = [line.split(":", 1) for line in logs[0].read_text().splitlines()]
    env_moves = [m for p, m in moves if p == "B"]
    from clarith.strategy.bundle import load_bundle
    rec = play(load_bundle(zero_bundle).spec, ScriptedEnvironment(env_moves))
    assert [str(m) for m in rec.run] == [f"{p}:{m}" for p, m in moves]
    assert rec.verdict.winner == "T"


def test_formula_tree_marks_blind_nodes_inert():
    tree = formula_tree(parse_formula("all y:(p(y) n q(y))"))
    assert tree["op"] == "forall" and tree.get("blind") is True
    inner = tree["children"][0]
    assert inner["op"] == "choice-and" and inner["mover"] == ENVIRONMENT
