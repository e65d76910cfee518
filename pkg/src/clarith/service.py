"""Interactive session engine and socket service.

A session holds one play of one game: the machine side is a strategy agent,
the environment side is a remote client.  The protocol is line-delimited
JSON messages, each carrying a version field:

  client -> server:
    {"v":1, "kind":"new-session", "sentence": "<formula>"}
    {"v":1, "kind":"new-session", "bundle": "<name or path>"}
    {"v":1, "kind":"env-move", "move": "1.101"}
    {"v":1, "kind":"bye"}

  server -> client:
    {"v":1, "kind":"state", "formula": <tree>, "moves": [<site>...],
             "meters": {...}, "finished": bool}
    {"v":1, "kind":"machine-move", "move": "..."}
    {"v":1, "kind":"verdict", "winner": "T"|"B", "reason": "..."}
    {"v":1, "kind":"error", "text": "..."}

State messages always describe the post-move game; message order follows
play order.  The formula tree marks exactly the environment's legal choice
nodes actionable, so a client needs no game logic of its own.  Outbound
messages are buffered per connection and written by a dedicated thread, so
a slow client never blocks a play loop.  Each session appends its run to a
transcript log that replays through `play --script`.
"""

from __future__ import annotations

import json
import os
import queue
import socketserver
import threading
import time
from dataclasses import dataclass, field

from .game import (
    ENVIRONMENT, GameState, IllegalMoveError, LabMove, MACHINE, Verdict,
    adjudicate, apply_move, initial_state, legal_moves,
)
from .interp import Interpretation, STANDARD
from .polyfun import eval_explicit
from .syntax import (
    Atom, ChoiceAll, ChoiceAnd, ChoiceEx, ChoiceOr, Cmp, Eq, Exists, ForAll,
    Formula, Truth, And, Or, parse_formula, print_formula,
)
from .strategy import spawn
from .strategy.bundle import load_bundle

PROTOCOL_VERSION = 1

_OPNAMES = {
    And: "and", Or: "or", ChoiceAnd: "choice-and", ChoiceOr: "choice-or",
    ForAll: "forall", Exists: "exists", ChoiceAll: "choice-all",
    ChoiceEx: "choice-ex",
}


def formula_tree(f: Formula, prefix: str = "") -> dict:
    """Renderable tree; choice nodes carry their mover and move prefix."""
    if isinstance(f, (Truth, Atom, Eq, Cmp)):
        return {"op": "atom", "text": print_formula(f)}
    node: dict = {"op": _OPNAMES[type(f)], "text": print_formula(f)}
    if isinstance(f, (ChoiceAnd, ChoiceOr)):
        node.update(mover=ENVIRONMENT if isinstance(f, ChoiceAnd) else MACHINE,
                    kind="pick", prefix=prefix)
        node["children"] = [formula_tree(f.left), formula_tree(f.right)]
    elif isinstance(f, (ChoiceAll, ChoiceEx)):
        node.update(mover=ENVIRONMENT if isinstance(f, ChoiceAll) else MACHINE,
                    kind="numeral", prefix=prefix, var=f.var)
        node["children"] = [formula_tree(f.body)]
    elif isinstance(f, (And, Or)):
        node["children"] = [formula_tree(f.left, prefix + "0."),
                            formula_tree(f.right, prefix + "1.")]
    else:  # blind quantifier: moves pass through, the node itself is inert
        node.update(var=f.var, blind=True)
        node["children"] = [formula_tree(f.body, prefix)]
    return node


@dataclass
class PlaySession:
    """One live game: strategy agent versus a remote environment."""
    spec: object
    interp: Interpretation = field(default_factory=lambda: STANDARD)
    strict: bool = False
    certificate: object | None = None
    log_path: str | None = None

    def __post_init__(self):
        self.agent = spawn(self.spec, self.interp)
        self.initial = initial_state(self.agent.game, self.interp)
        self.state = self.initial
        self.run: list[LabMove] = []
        self.background = 0
        self.last_machine_size = 0
        self.finished = False
        self.verdict: Verdict | None = None
        self._absorb(self.agent.start())

    # ------------------------------------------------------------- engine

    def _log(self, lm: LabMove):
        if self.log_path:
            with open(self.log_path, "a", encoding="utf-8") as fh:
                fh.write(f"{lm}\n")

    def _absorb(self, outs: list[str]) -> list[str]:
        accepted = []
        for m in outs:
            lm = LabMove(MACHINE, m)
            self.state = apply_move(self.state, lm)
            self.run.append(lm)
            self._log(lm)
            self.last_machine_size = len(m)
            accepted.append(m)
        return accepted

    def _maybe_finish(self):
        if not legal_moves(self.state):
            self.finished = True
            self.verdict = adjudicate(self.initial, tuple(self.run))

    def meters(self) -> dict:
        out = {"background": self.background,
               "last_machine_move_size": self.last_machine_size}
        if self.certificate is not None:
            out["certificate_at_background"] = eval_explicit(
                self.certificate, self.background)
        return out

    def state_message(self) -> dict:
        sites = legal_moves(self.state, ENVIRONMENT)
        return {"v": PROTOCOL_VERSION, "kind": "state",
                "formula": formula_tree(self.state.formula),
                "moves": [{"prefix": s.prefix, "kind": s.kind,
                           "path": ".".join(s.path)} for s in sites],
                "meters": self.meters(), "finished": self.finished}

    def open_messages(self) -> list[dict]:
        msgs = [{"v": PROTOCOL_VERSION, "kind": "machine-move", "move": m.move}
                for m in self.run]
        self._maybe_finish()
        msgs.append(self.state_message())
        if self.finished and self.verdict:
            msgs.append(self._verdict_message())
        return msgs

    def _verdict_message(self) -> dict:
        return {"v": PROTOCOL_VERSION, "kind": "verdict",
                "winner": self.verdict.winner, "reason": self.verdict.reason}

    def env_move(self, move: str) -> list[dict]:
        if self.finished:
            return [_error("the session is finished")]
        lm = LabMove(ENVIRONMENT, move)
        try:
            self.state = apply_move(self.state, lm)
        except IllegalMoveError as e:
            if self.strict:
                # the recorded illegal move decides the game
                self.run.append(lm)
                self._log(lm)
                self.finished = True
                self.verdict = adjudicate(self.initial, tuple(self.run))
                return [self.state_message(), self._verdict_message()]
            return [_error(f"illegal move: {e.why} (try again)")]
        self.run.append(lm)
        self._log(lm)
        self.background = max(self.background, len(move))
        msgs = []
        for m in self._absorb(self.agent.observe(move)):
            msgs.append({"v": PROTOCOL_VERSION, "kind": "machine-move", "move": m})
        self._maybe_finish()
        msgs.append(self.state_message())
        if self.finished and self.verdict:
            msgs.append(self._verdict_message())
        return msgs


def _error(text: str) -> dict:
    return {"v": PROTOCOL_VERSION, "kind": "error", "text": text}


# ------------------------------------------------------------- dispatcher

@dataclass
class SessionHub:
    """Creates sessions from sentences or bundle files and routes messages."""
    bundles_dir: str | None = None
    log_dir: str | None = None
    strict: bool = False
    interp: Interpretation = field(default_factory=lambda: STANDARD)
    counter: int = 0

    def _log_path(self) -> str | None:
        if not self.log_dir:
            return None
        os.makedirs(self.log_dir, exist_ok=True)
        self.counter += 1
        return os.path.join(self.log_dir, f"session-{int(time.time())}-{self.counter}.log")

    def open_session(self, msg: dict) -> tuple[PlaySession | None, list[dict]]:
        try:
            if "bundle" in msg:
                path = msg["bundle"]
                if self.bundles_dir and not os.path.isabs(path) and not os.path.exists(path):
                    path = os.path.join(self.bundles_dir, path)
                bundle = load_bundle(path)
                session = PlaySession(bundle.spec, self.interp, self.strict,
                                      bundle.certificate, self._log_path())
            elif "sentence" in msg:
                from .strategy.specs import SilentSpec
                game = parse_formula(msg["sentence"])
                session = PlaySession(SilentSpec(game), self.interp, self.strict,
                                      None, self._log_path())
            else:
                return None, [_error("new-session needs a sentence or a bundle")]
        except Exception as e:
            return None, [_error(f"cannot open session: {e}")]
        return session, session.open_messages()

    def handle(self, session: PlaySession | None, msg: dict
               ) -> tuple[PlaySession | None, list[dict], bool]:
        """(new session, replies, keep-going)."""
        kind = msg.get("kind")
        if kind == "new-session":
            session, replies = self.open_session(msg)
            return session, replies, True
        if kind == "env-move":
            if session is None:
                return None, [_error("no open session")], True
            return session, session.env_move(str(msg.get("move", ""))), True
        if kind == "bye":
            return session, [], False
        return session, [_error(f"unknown message kind {kind!r}")], True


class _Handler(socketserver.StreamRequestHandler):
    def handle(self):
        hub: SessionHub = self.server.hub  # type: ignore[attr-defined]
        outbox: queue.Queue = queue.Queue()
        done = threading.Event()

        def writer():
            while not done.is_set() or not outbox.empty():
                try:
                    item = outbox.get(timeout=0.1)
                except queue.Empty:
                    continue
                try:
                    self.wfile.write((json.dumps(item) + "\n").encode())
                    self.wfile.flush()
                except OSError:
                    done.set()
                    return

        thread = threading.Thread(target=writer, daemon=True)
        thread.start()
        session = None
        try:
            for raw in self.rfile:
                try:
                    msg = json.loads(raw.decode())
                except json.JSONDecodeError:
                    outbox.put(_error("not valid JSON"))
                    continue
                session, replies, keep = hub.handle(session, msg)
                for r in replies:
                    outbox.put(r)
                if not keep:
                    break
        finally:
            done.set()
            thread.join(timeout=2)


class Server(socketserver.ThreadingTCPServer):
    allow_reuse_address = True
    daemon_threads = True

    def __init__(self, host: str, port: int, hub: SessionHub):
        super().__init__((host, port), _Handler)
        self.hub = hub


def serve_tcp(host: str, port: int, hub: SessionHub):
    with Server(host, port, hub) as server:
        server.serve_forever()


def make_ws_app(hub: SessionHub):
    """FastAPI application speaking the same protocol over a websocket at
    /session (one session per connection)."""
    from fastapi import FastAPI, WebSocket, WebSocketDisconnect

    app = FastAPI(title="clarith game sessions")

    @app.websocket("/session")
    async def session_endpoint(ws: WebSocket):
        await ws.accept()
        session = None
        try:
            while True:
                msg = await ws.receive_json()
                session, replies, keep = hub.handle(session, msg)
                for r in replies:
                    await ws.send_json(r)
                if not keep:
                    break
        except WebSocketDisconnect:
            pass

    return app
