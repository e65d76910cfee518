"""Text formats for proof files.

Sequent-calculus proof (.cl12): one line per step,

    <label>. <sequent> ; <rule>[ params] [; premises=i,j] [; evidence=...]

with rules

    wait
    or-choose at=<path> i=<0|1>        # machine picks a choice-or branch
    and-choose at=<path> i=<0|1>       # machine picks inside an antecedent
    ex-choose at=<path> t=<term>       # machine names a term for a choice-ex
    all-choose at=<path> t=<term>
    replicate i=<antecedent index>

Paths address the conclusion: `s` is the succedent, `a0`, `a1`, ... the
antecedent slots, followed by `.l` / `.r` / `.b` selectors (left child,
right child, quantifier body).  Evidence on wait lines is `builtin`
(default), `trusted:<tag>`, or `cert:<comma-separated ground terms>`.

Arithmetic proof (.cla4): one line per step,

    <label>. <sentence> ; axiom:<k>
    <label>. <sentence> ; pa:<tag>
    <label>. <sentence> ; lc ; premises=I,II ; proof={
        ...cl12 lines...
    }
    <label>. <sentence> ; ind:<var> basis=<ref> left=<ref> right=<ref>

The proof={ block ends with a line containing only `}`.  Lines starting
with `#` are comments.
"""

from __future__ import annotations

from . import cl12, cla4
from .syntax import (
    OccPath, parse_formula, parse_sequent, parse_term,
    print_formula, print_sequent, print_term,
)

_RULE_NAMES = ("or-choose", "and-choose", "ex-choose", "all-choose",
               "replicate", "wait")


class ProofFormatError(ValueError):
    pass


def _parse_path(text: str) -> tuple[int | None, OccPath]:
    head, _, rest = text.partition(".")
    steps = tuple(rest.split(".")) if rest else ()
    for step in steps:
        if step not in ("l", "r", "b"):
            raise ProofFormatError(f"bad path selector {step!r} in {text!r}")
    if head == "s":
        return None, steps
    if head.startswith("a") and head[1:].isdigit():
        return int(head[1:]), steps
    raise ProofFormatError(f"path must start with s or a<k>, got {text!r}")


def _format_path(ant: int | None, path: OccPath) -> str:
    head = "s" if ant is None else f"a{ant}"
    return ".".join((head,) + tuple(path))


def _split_fields(text: str, lineno: int) -> tuple[str, str, str, dict[str, str]]:
    parts = [p.strip() for p in text.split(";")]
    head = parts[0]
    if "." not in head:
        raise ProofFormatError(f"line {lineno}: missing '<label>.' prefix")
    label, body = head.split(".", 1)
    rule_field = parts[1].strip() if len(parts) > 1 else ""
    rest: dict[str, str] = {}
    for extra in parts[2:]:
        if not extra:
            continue
        key, _, val = extra.partition("=")
        rest[key.strip()] = val.strip()
    return label.strip(), body.strip(), rule_field, rest


def _parse_rule(spec: str, lineno: int) -> cl12.Rule:
    name, _, params = spec.partition(" ")
    if name not in _RULE_NAMES:
        raise ProofFormatError(f"line {lineno}: unknown rule {name!r}")
    if name == "wait":
        return cl12.Wait()
    params = params.strip()
    termtext = None
    if " t=" in " " + params:
        before, _, termtext = (" " + params).partition(" t=")
        params = before.strip()
    kv: dict[str, str] = {}
    for tok in params.split():
        key, _, val = tok.partition("=")
        kv[key] = val
    if name == "replicate":
        return cl12.Replicate(int(kv["i"]))
    ant, path = _parse_path(kv["at"])
    if name == "or-choose":
        if ant is not None:
            raise ProofFormatError(f"line {lineno}: or-choose path must be in the succedent")
        return cl12.OrChoose(path, int(kv["i"]))
    if name == "and-choose":
        if ant is None:
            raise ProofFormatError(f"line {lineno}: and-choose path must name an antecedent")
        return cl12.AndChoose(ant, path, int(kv["i"]))
    if termtext is None:
        raise ProofFormatError(f"line {lineno}: missing t=<term>")
    term = parse_term(termtext.strip())
    if name == "ex-choose":
        if ant is not None:
            raise ProofFormatError(f"line {lineno}: ex-choose path must be in the succedent")
        return cl12.ExChoose(path, term)
    if ant is None:
        raise ProofFormatError(f"line {lineno}: all-choose path must name an antecedent")
    return cl12.AllChoose(ant, path, term)


def _parse_evidence(text: str) -> cl12.Evidence:
    if not text or text == "builtin":
        return cl12.Builtin()
    if text.startswith("trusted:"):
        return cl12.Trusted(text.split(":", 1)[1])
    if text.startswith("cert:"):
        groups = []
        for group in text.split(":", 1)[1].split("/"):
            if not group.strip():
                continue
            head, _, args = group.partition(":")
            terms = tuple(parse_term(t.strip()) for t in args.split(",") if t.strip())
            groups.append((int(head), terms))
        return cl12.Certificate(tuple(groups))
    raise ProofFormatError(f"unknown evidence {text!r}")


def parse_cl12_line(line: str, lineno: int) -> cl12.ProofLine:
    label, body, rule_field, fields = _split_fields(line, lineno)
    sequent = parse_sequent(body)
    rule = _parse_rule(rule_field, lineno)
    premises = tuple(p.strip() for p in fields.get("premises", "").split(",") if p.strip())
    evidence = _parse_evidence(fields.get("evidence", ""))
    return cl12.ProofLine(label, sequent, rule, premises, evidence)


def parse_cl12(text: str) -> cl12.Proof:
    lines = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        lines.append(parse_cl12_line(stripped, lineno))
    if not lines:
        raise ProofFormatError("empty proof")
    return cl12.Proof(tuple(lines))


def format_rule(rule: cl12.Rule) -> str:
    if isinstance(rule, cl12.Wait):
        return "wait"
    if isinstance(rule, cl12.Replicate):
        return f"replicate i={rule.ant}"
    if isinstance(rule, cl12.OrChoose):
        return f"or-choose at={_format_path(None, rule.path)} i={rule.i}"
    if isinstance(rule, cl12.AndChoose):
        return f"and-choose at={_format_path(rule.ant, rule.path)} i={rule.i}"
    if isinstance(rule, cl12.ExChoose):
        return f"ex-choose at={_format_path(None, rule.path)} t={print_term(rule.term)}"
    if isinstance(rule, cl12.AllChoose):
        return f"all-choose at={_format_path(rule.ant, rule.path)} t={print_term(rule.term)}"
    raise TypeError(rule)


def format_cl12_line(line: cl12.ProofLine) -> str:
    out = f"{line.label}. {print_sequent(line.sequent)} ; {format_rule(line.rule)}"
    if line.premises:
        out += f" ; premises={','.join(line.premises)}"
    if isinstance(line.evidence, cl12.Trusted):
        out += f" ; evidence=trusted:{line.evidence.tag}"
    elif isinstance(line.evidence, cl12.Certificate):
        out += " ; evidence=cert:" + "/".join(
            f"{i}:" + ",".join(print_term(t) for t in terms)
            for i, terms in line.evidence.instances)
    return out


def format_cl12(proof: cl12.Proof, indent: str = "") -> str:
    return "\n".join(indent + format_cl12_line(l) for l in proof.lines) + "\n"


# ------------------------------------------------------------- arithmetic

def _parse_cla4_line(raw: str, block_text: str | None, lineno: int) -> cla4.Cla4Line:
    label, body, rule_field, fields = _split_fields(raw, lineno)
    sentence = parse_formula(body)
    premises = tuple(p.strip() for p in fields.get("premises", "").split(",") if p.strip())
    if rule_field.startswith("axiom:"):
        just = cla4.Axiom(int(rule_field.split(":", 1)[1]))
    elif rule_field.startswith("pa"):
        just = cla4.PaTrusted(rule_field.partition(":")[2] or "unnamed")
    elif rule_field == "lc":
        if block_text is None:
            raise ProofFormatError(f"line {lineno}: lc needs an inline proof={{ block")
        just = cla4.Lc(parse_cl12(block_text))
    elif rule_field.startswith("ind:"):
        head, _, params = rule_field.partition(" ")
        var = head.split(":", 1)[1]
        kv = dict(tok.split("=", 1) for tok in params.split())
        just = cla4.Induction(var, kv["basis"], kv["left"], kv["right"])
    else:
        raise ProofFormatError(f"line {lineno}: unknown justification {rule_field!r}")
    return cla4.Cla4Line(label, sentence, just, premises)


def parse_cla4(text: str) -> cla4.Cla4Proof:
    raw_lines = text.splitlines()
    lines: list[cla4.Cla4Line] = []
    i = 0
    while i < len(raw_lines):
        raw = raw_lines[i].strip()
        i += 1
        if not raw or raw.startswith("#"):
            continue
        block_text = None
        if raw.endswith("proof={"):
            buf: list[str] = []
            while i < len(raw_lines):
                inner = raw_lines[i]
                i += 1
                if inner.strip() == "}":
                    break
                buf.append(inner)
            else:
                raise ProofFormatError(f"line {i}: unterminated proof={{ block")
            block_text = "\n".join(buf)
            raw = raw[: raw.rfind("proof={")].rstrip().rstrip(";").rstrip()
        lines.append(_parse_cla4_line(raw, block_text, i))
    if not lines:
        raise ProofFormatError("empty proof")
    return cla4.Cla4Proof(tuple(lines))


def format_cla4_line(line: cla4.Cla4Line) -> str:
    head = f"{line.label}. {print_formula(line.sentence)}"
    j = line.just
    if isinstance(j, cla4.Axiom):
        return f"{head} ; axiom:{j.k}"
    if isinstance(j, cla4.PaTrusted):
        return f"{head} ; pa:{j.tag}"
    if isinstance(j, cla4.Lc):
        prem = f" ; premises={','.join(line.premises)}" if line.premises else ""
        block = format_cl12(j.proof, indent="    ")
        return f"{head} ; lc{prem} ; proof={{\n{block}}}"
    if isinstance(j, cla4.Induction):
        return (f"{head} ; ind:{j.var} basis={j.basis} left={j.left} "
                f"right={j.right}")
    raise TypeError(j)


def format_cla4(proof: cla4.Cla4Proof) -> str:
    return "\n".join(format_cla4_line(l) for l in proof.lines) + "\n"


def load_cl12(path) -> cl12.Proof:
    with open(path, encoding="utf-8") as fh:
        return parse_cl12(fh.read())


def load_cla4(path) -> cla4.Cla4Proof:
    with open(path, encoding="utf-8") as fh:
        return parse_cla4(fh.read())
