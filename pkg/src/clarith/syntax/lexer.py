"""Tokenizer for the ASCII formula grammar (unicode operators are aliases)."""

from __future__ import annotations

from dataclasses import dataclass


class FormulaSyntaxError(ValueError):
    """Syntax error tagged with the offset in the input text."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at offset {pos})")
        self.pos = pos


# Unicode spellings normalized before tokenizing.  Multi-char sequences first.
_UNICODE_ALIASES = [
    ("∘–", "|-"), ("∘-", "|-"), ("⟹", "|-"),
    ("→", "->"), ("≠", "!="), ("≤", "<="),
    ("∧", "&"), ("∨", "|"), ("¬", "!"),
    ("⊓", " n "), ("⊔", " U "), ("∀", " all "), ("∃", " ex "),
    ("⊤", " T "), ("⊥", " F "),
    ("′", "'"), ("×", "*"), ("·", "*"),
]

_TWO_CHAR = ("|-", "->", "!=", "<=", "#0", "#1", "/\\", "\\/")
_ONE_CHAR = "(),:'+*=<&|!?{}."

KEYWORDS = frozenset({"T", "F", "U", "n", "all", "ex", "len", "pow2", "bit", "sub"})


@dataclass(frozen=True)
class Token:
    kind: str  # "ident", "numeral", "op", "kw", "end"
    text: str
    pos: int


def tokenize(text: str) -> list[Token]:
    for alias, ascii_form in _UNICODE_ALIASES:
        text = text.replace(alias, ascii_form)
    toks: list[Token] = []
    i, size = 0, len(text)
    while i < size:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if c == "#" and text[i:i + 2] not in ("#0", "#1"):
            # comment to end of line (used in proof files)
            j = text.find("\n", i)
            i = size if j < 0 else j
            continue
        two = text[i:i + 2]
        if two in _TWO_CHAR:
            toks.append(Token("op", {"/\\": "&", "\\/": "|"}.get(two, two), i))
            i += 2
            continue
        if c.isdigit():
            j = i
            while j < size and text[j].isdigit():
                j += 1
            word = text[i:j]
            if set(word) - set("01"):
                raise FormulaSyntaxError(f"not a binary numeral: {word}", i)
            if len(word) > 1 and word[0] == "0":
                raise FormulaSyntaxError(f"numeral with leading zero: {word}", i)
            toks.append(Token("numeral", word, i))
            i = j
            continue
        if c.isalpha() or c == "_":
            j = i
            while j < size and (text[j].isalnum() or text[j] == "_"):
                j += 1
            word = text[i:j]
            toks.append(Token("kw" if word in KEYWORDS else "ident", word, i))
            i = j
            continue
        if c in _ONE_CHAR:
            toks.append(Token("op", c, i))
            i += 1
            continue
        raise FormulaSyntaxError(f"unexpected character {c!r}", i)
    toks.append(Token("end", "", size))
    return toks
