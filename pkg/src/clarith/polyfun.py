"""Polynomial complexity certificates.

A bound is a DAG term over 0, successor, sum, product, one input variable
and unary placeholder letters; sharing keeps the representation small where
the unfolded tree would be exponential.  A certificate proper is a
*stratified sequence* of such terms indexed by distinct letters, each term
using only earlier letters; the sequence denotes the function of its last
letter.  Composition concatenates sequences instead of expanding terms, so
sizes grow additively; bound bookkeeping relies on exactly that.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

_OPS = {"zero": 0, "var": 0, "suc": 1, "add": 2, "mul": 2, "ph": 1}


@dataclass(frozen=True)
class Node:
    op: str  # zero | var | suc | add | mul | ph
    args: tuple[int, ...] = ()
    letter: str | None = None  # for ph nodes


@dataclass(frozen=True)
class GraphTerm:
    """Rooted DAG in topological order: every arg index precedes its node.
    The last node is the root."""
    nodes: tuple[Node, ...]

    def __post_init__(self):
        for i, n in enumerate(self.nodes):
            if n.op not in _OPS:
                raise ValueError(f"unknown op {n.op!r}")
            if len(n.args) != _OPS[n.op]:
                raise ValueError(f"{n.op} takes {_OPS[n.op]} args")
            if any(a >= i or a < 0 for a in n.args):
                raise ValueError(f"node {i} not in topological order")
            if (n.op == "ph") != (n.letter is not None):
                raise ValueError("exactly ph nodes carry a letter")

    @property
    def size(self) -> int:
        return len(self.nodes)

    def letters(self) -> list[str]:
        seen: list[str] = []
        for n in self.nodes:
            if n.op == "ph" and n.letter not in seen:
                seen.append(n.letter)
        return seen

    def rename(self, mapping: dict[str, str]) -> "GraphTerm":
        return GraphTerm(tuple(
            Node("ph", n.args, mapping.get(n.letter, n.letter)) if n.op == "ph" else n
            for n in self.nodes))


class UnboundPlaceholderError(KeyError):
    pass


def eval_graph(term: GraphTerm, y: int, bindings: dict[str, object] | None = None) -> int:
    """Exact value at y; each DAG node is evaluated once."""
    bindings = bindings or {}
    vals: list[int] = []
    for n in term.nodes:
        if n.op == "zero":
            vals.append(0)
        elif n.op == "var":
            vals.append(y)
        elif n.op == "suc":
            vals.append(vals[n.args[0]] + 1)
        elif n.op == "add":
            vals.append(vals[n.args[0]] + vals[n.args[1]])
        elif n.op == "mul":
            vals.append(vals[n.args[0]] * vals[n.args[1]])
        else:
            fn = bindings.get(n.letter)
            if fn is None:
                raise UnboundPlaceholderError(n.letter)
            vals.append(fn(vals[n.args[0]]))
    return vals[-1]


# -------------------------------------------------------- term builders

class TermBuilder:
    """Convenience builder with hash-consing of identical nodes."""

    def __init__(self):
        self.nodes: list[Node] = []
        self._memo: dict[Node, int] = {}

    def _add(self, node: Node) -> int:
        if node in self._memo:
            return self._memo[node]
        self.nodes.append(node)
        self._memo[node] = len(self.nodes) - 1
        return len(self.nodes) - 1

    def zero(self) -> int:
        return self._add(Node("zero"))

    def var(self) -> int:
        return self._add(Node("var"))

    def suc(self, a: int) -> int:
        return self._add(Node("suc", (a,)))

    def add(self, a: int, b: int) -> int:
        return self._add(Node("add", (a, b)))

    def mul(self, a: int, b: int) -> int:
        return self._add(Node("mul", (a, b)))

    def ph(self, letter: str, a: int) -> int:
        return self._add(Node("ph", (a,), letter))

    def const(self, k: int) -> int:
        node = self.zero()
        for _ in range(k):
            node = self.suc(node)
        return node

    def append(self, term: GraphTerm) -> int:
        """Splice another term in; returns the index of its root."""
        offset_map: list[int] = []
        for n in term.nodes:
            offset_map.append(self._add(Node(n.op, tuple(offset_map[a] for a in n.args), n.letter)))
        return offset_map[-1]

    def done(self, root: int) -> GraphTerm:
        if root != len(self.nodes) - 1:
            # root must be last: append a harmless alias via add with zero?
            # simpler: slice is invalid; re-emit reachable nodes in order
            keep = sorted(self._reachable(root))
            remap = {old: new for new, old in enumerate(keep)}
            return GraphTerm(tuple(
                Node(self.nodes[i].op, tuple(remap[a] for a in self.nodes[i].args),
                     self.nodes[i].letter) for i in keep))
        return GraphTerm(tuple(self.nodes))

    def _reachable(self, root: int) -> set[int]:
        seen = set()
        stack = [root]
        while stack:
            i = stack.pop()
            if i in seen:
                continue
            seen.add(i)
            stack.extend(self.nodes[i].args)
        return seen


def var_term() -> GraphTerm:
    return GraphTerm((Node("var"),))


def const_term(k: int) -> GraphTerm:
    b = TermBuilder()
    return b.done(b.const(k))


# ------------------------------------------------- stratified sequences

@dataclass(frozen=True)
class ExplicitPolyFn:
    """Sequence of (letter, term) pairs; each term depends only on earlier
    letters; denotes the function of the last letter."""
    entries: tuple[tuple[str, GraphTerm], ...]

    def __post_init__(self):
        if not self.entries:
            raise ValueError("an explicit polynomial function is nonempty")
        seen: set[str] = set()
        for letter, term in self.entries:
            if letter in seen:
                raise ValueError(f"duplicate letter {letter!r}")
            missing = set(term.letters()) - seen
            if missing:
                raise ValueError(f"{letter!r} depends on undefined {sorted(missing)}")
            seen.add(letter)

    @property
    def size(self) -> int:
        return sum(term.size for _, term in self.entries)

    @property
    def top_letter(self) -> str:
        return self.entries[-1][0]

    def letters(self) -> set[str]:
        return {letter for letter, _ in self.entries}


def single(term: GraphTerm, letter: str = "f1") -> ExplicitPolyFn:
    if term.letters():
        raise ValueError("a one-entry sequence must be placeholder-free")
    return ExplicitPolyFn(((letter, term),))


def eval_explicit(fnseq: ExplicitPolyFn, y: int) -> int:
    fns: dict[str, object] = {}
    cache: dict[tuple[str, int], int] = {}
    for letter, term in fnseq.entries:
        def fn(v, letter=letter, term=term, snapshot=dict(fns)):
            key = (letter, v)
            if key not in cache:
                cache[key] = eval_graph(term, v, snapshot)
            return cache[key]
        fns[letter] = fn
    return fns[fnseq.top_letter](y)


_fresh_counter = itertools.count(1)


def _freshify(fnseq: ExplicitPolyFn) -> tuple[ExplicitPolyFn, str]:
    """Rename all letters of fnseq to globally fresh ones."""
    mapping = {letter: f"u{next(_fresh_counter)}" for letter in fnseq.letters()}
    entries = tuple((mapping[letter], term.rename(mapping))
                    for letter, term in fnseq.entries)
    return ExplicitPolyFn(entries), mapping[fnseq.top_letter]


def compose(functional: GraphTerm, parts: dict[str, ExplicitPolyFn],
            top_letter: str = "f") -> ExplicitPolyFn:
    """Plug a named bound in for each placeholder letter of the functional.

    Composition is by sequence concatenation; the functional itself is never
    expanded, so the output size is the sum of the input sizes plus the
    functional's own size.
    """
    needed = functional.letters()
    missing = set(needed) - set(parts)
    if missing:
        raise UnboundPlaceholderError(sorted(missing)[0])
    entries: list[tuple[str, GraphTerm]] = []
    rename: dict[str, str] = {}
    for letter in needed:
        renamed, top = _freshify(parts[letter])
        entries.extend(renamed.entries)
        rename[letter] = top
    top = f"{top_letter}{next(_fresh_counter)}"
    entries.append((top, functional.rename(rename)))
    return ExplicitPolyFn(tuple(entries))


def sum_bounds(a: ExplicitPolyFn, b: ExplicitPolyFn) -> ExplicitPolyFn:
    """Pointwise sum; representation grows by exactly four nodes."""
    t = TermBuilder()
    y = t.var()
    root = t.add(t.ph("fa", y), t.ph("fb", y))
    return compose(t.done(root), {"fa": a, "fb": b})


def mul_bounds(a: ExplicitPolyFn, b: ExplicitPolyFn) -> ExplicitPolyFn:
    t = TermBuilder()
    y = t.var()
    root = t.mul(t.ph("fa", y), t.ph("fb", y))
    return compose(t.done(root), {"fa": a, "fb": b})


def scale_bounds(k: int, a: ExplicitPolyFn) -> ExplicitPolyFn:
    t = TermBuilder()
    root = t.mul(t.const(k), t.ph("fa", t.var()))
    return compose(t.done(root), {"fa": a})


SUM_OVERHEAD = 4  # var + two ph nodes + add


# ------------------------------------------------------------- serialization

def dump_graph(term: GraphTerm) -> str:
    lines = [f"graph {term.size}"]
    for i, n in enumerate(term.nodes):
        args = ",".join(map(str, n.args))
        extra = f" {n.letter}" if n.op == "ph" else ""
        lines.append(f"{i}: {n.op}({args}){extra}")
    return "\n".join(lines) + "\n"


def load_graph(text: str) -> GraphTerm:
    lines = [l for l in text.splitlines() if l.strip()]
    head = lines[0].split()
    if head[0] != "graph":
        raise ValueError("expected 'graph <n>' header")
    nodes = []
    for line in lines[1:1 + int(head[1])]:
        _, rest = line.split(":", 1)
        rest = rest.strip()
        op, after = rest.split("(", 1)
        argstr, after = after.split(")", 1)
        args = tuple(int(a) for a in argstr.split(",") if a != "")
        letter = after.strip() or None
        nodes.append(Node(op.strip(), args, letter))
    return GraphTerm(tuple(nodes))


def dump_explicit(fnseq: ExplicitPolyFn) -> str:
    out = [f"polyfn {len(fnseq.entries)}"]
    for letter, term in fnseq.entries:
        out.append(f"fn {letter}")
        out.append(dump_graph(term).rstrip("\n"))
    return "\n".join(out) + "\n"


def load_explicit(text: str) -> ExplicitPolyFn:
    lines = text.splitlines()
    if not lines or not lines[0].startswith("polyfn"):
        raise ValueError("expected 'polyfn <n>' header")
    count = int(lines[0].split()[1])
    entries = []
    i = 1
    for _ in range(count):
        letter = lines[i].split()[1]
        n = int(lines[i + 1].split()[1])
        chunk = "\n".join(lines[i + 1:i + 2 + n])
        entries.append((letter, load_graph(chunk)))
        i += 2 + n
    return ExplicitPolyFn(tuple(entries))


# ------------------------------------------------- reference shared terms

def squaring_chain(times: int) -> GraphTerm:
    """y squared `times` times over, as a |times|+1-node DAG (y**(2**times))."""
    b = TermBuilder()
    node = b.var()
    for _ in range(times):
        node = b.mul(node, node)
    return b.done(node)
