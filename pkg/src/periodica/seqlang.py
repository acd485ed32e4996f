"""Mini-language for mutation sequences with slice structure.

Grammar (indices are 1-based, as in written accounts):

    sliced := block ( ("|" | ",") block )*
    block  := INT | "(" sliced ")" [ "^" INT ]

"," joins plain indices into one slice, "|" starts a new slice, and
"(...)^n" repeats a sliced group.  Groups are slice-opaque: a comma next
to a group acts like "|".

Examples: "1,2|3" -> [[1,2],[3]]; "(1|2)^5" -> [1],[2] five times;
"((1,3)|(2))^6" -> [1,3],[2] six times.
"""

from __future__ import annotations

import re

_TOKEN = re.compile(r"\s*(\d+|[(),|^])")


class SequenceSyntaxError(ValueError):
    pass


def _tokenize(text: str) -> list:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise SequenceSyntaxError(f"bad character at position {pos}: {text[pos]!r}")
        out.append(m.group(1))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self):
        tok = self.peek()
        if tok is None:
            raise SequenceSyntaxError("unexpected end of sequence")
        self.pos += 1
        return tok

    def parse_sliced(self) -> list:
        slices = []
        merge_next = False
        pending_sep = False
        while True:
            tok = self.peek()
            if tok is None or tok in (")",):
                break
            if tok in (",", "|"):
                if pending_sep or not slices:
                    raise SequenceSyntaxError("separator without a preceding index")
                self.take()
                merge_next = tok == ","
                pending_sep = True
                continue
            block, opaque = self.parse_block()
            if merge_next and slices and not opaque and len(block) == 1:
                slices[-1] = slices[-1] + block[0]
            else:
                slices.extend(block)
            merge_next = False
            pending_sep = False
        if pending_sep:
            raise SequenceSyntaxError("dangling separator")
        return slices

    def parse_block(self):
        tok = self.take()
        if tok.isdigit():
            return [tuple([int(tok) - 1])], False
        if tok == "(":
            inner = self.parse_sliced()
            if self.take() != ")":
                raise SequenceSyntaxError("missing closing parenthesis")
            reps = 1
            if self.peek() == "^":
                self.take()
                count = self.take()
                if not count.isdigit():
                    raise SequenceSyntaxError("repetition count must be an integer")
                reps = int(count)
            return [tuple(sl) for _ in range(reps) for sl in inner], True
        raise SequenceSyntaxError(f"unexpected token {tok!r}")


def parse_sliced_sequence(text: str) -> tuple:
    """Parse to a tuple of slices of 0-based indices."""
    parser = _Parser(_tokenize(text))
    slices = parser.parse_sliced()
    if parser.peek() is not None:
        raise SequenceSyntaxError(f"trailing tokens from {parser.peek()!r}")
    if not slices:
        raise SequenceSyntaxError("empty sequence")
    return tuple(tuple(sl) for sl in slices)


def parse_sequence(text: str) -> tuple:
    """Flat 0-based index sequence, slice marks ignored."""
    return tuple(k for sl in parse_sliced_sequence(text) for k in sl)
