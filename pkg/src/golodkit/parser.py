"""Ideal-file grammar and polynomial expression parsing.

    file     := ringline header* genline+
    ringline := "ring" FIELD "[" ident ("," ident)* "]"
    FIELD    := "Q" | "F" digits
    header   := "order" ("lex"|"grevlex") | "perm" int ("," int)*
    genline  := expr

Expressions are integer-coefficient polynomials over +, -, *, ^ and
parentheses; multiplication is always explicit. Errors carry line/column.
"""

from __future__ import annotations

import re

from .errors import ParseError
from .groebner import IdealGens
from .ring import GF, LEX, GREVLEX, PolyRing, QQ

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<ident>[A-Za-z_]\w*)|(?P<op>[-+*^()]))")


def _tokenize(text: str, line: int):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == m.start():
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            col = pos + (len(text[pos:]) - len(stripped)) + 1
            raise ParseError(f"unexpected character {stripped[0]!r}", line, col)
        if m.lastgroup is None and not m.group().strip():
            pos = m.end()
            continue
        kind = m.lastgroup
        value = m.group(kind)
        out.append((kind, value, m.end() - len(value) + 1))
        pos = m.end()
    return out


class _ExprParser:
    def __init__(self, tokens, ring: PolyRing, line: int):
        self.tokens = tokens
        self.ring = ring
        self.line = line
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self):
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of expression", self.line, 0)
        self.pos += 1
        return tok

    def expect_op(self, op):
        tok = self.take()
        if tok[0] != "op" or tok[1] != op:
            raise ParseError(f"expected {op!r}, found {tok[1]!r}", self.line, tok[2])

    def parse(self):
        p = self.expr()
        tok = self.peek()
        if tok is not None:
            raise ParseError(f"trailing input {tok[1]!r}", self.line, tok[2])
        return p

    def expr(self):
        tok = self.peek()
        negate = False
        if tok and tok[0] == "op" and tok[1] in "+-":
            self.take()
            negate = tok[1] == "-"
        p = self.term()
        if negate:
            p = -p
        while True:
            tok = self.peek()
            if tok and tok[0] == "op" and tok[1] in "+-":
                self.take()
                q = self.term()
                p = p + q if tok[1] == "+" else p - q
            else:
                return p

    def term(self):
        p = self.factor()
        while True:
            tok = self.peek()
            if tok and tok[0] == "op" and tok[1] == "*":
                self.take()
                p = p * self.factor()
            else:
                return p

    def factor(self):
        p = self.atom()
        tok = self.peek()
        if tok and tok[0] == "op" and tok[1] == "^":
            self.take()
            exp = self.take()
            if exp[0] != "int":
                raise ParseError("exponent must be a literal integer", self.line, exp[2])
            p = p ** int(exp[1])
        return p

    def atom(self):
        tok = self.take()
        kind, value, col = tok
        if kind == "int":
            return self.ring.const(int(value))
        if kind == "ident":
            if value not in self.ring.names:
                raise ParseError(f"unknown identifier {value!r}", self.line, col)
            return self.ring.var(self.ring.names.index(value) + 1)
        if kind == "op" and value == "(":
            p = self.expr()
            self.expect_op(")")
            return p
        raise ParseError(f"unexpected token {value!r}", self.line, col)


def parse_expression(text: str, ring: PolyRing, line: int = 1):
    tokens = _tokenize(text, line)
    if not tokens:
        raise ParseError("empty expression", line, 1)
    return _ExprParser(tokens, ring, line).parse()


_RING_LINE = re.compile(r"ring\s+(Q|F\d+)\s*\[\s*([^\]]*)\]\s*$")


def parse_ring_line(text: str, line: int = 1) -> PolyRing:
    m = _RING_LINE.match(text.strip())
    if not m:
        raise ParseError("expected 'ring FIELD[v1,...,vn]'", line, 1)
    field_tag, names_part = m.groups()
    field = QQ if field_tag == "Q" else GF(int(field_tag[1:]))
    names = [v.strip() for v in names_part.split(",")]
    if any(not re.fullmatch(r"[A-Za-z_]\w*", v) for v in names):
        raise ParseError("bad variable name in ring line", line, 1)
    if len(set(names)) != len(names):
        raise ParseError("duplicate variable name in ring line", line, 1)
    return PolyRing(field, names)


def format_ring(ring: PolyRing) -> str:
    return f"ring {ring.field.name}[{','.join(ring.names)}]"


def parse_ideal_file(text: str):
    """Parse an ideal file; returns (ring, IdealGens, meta dict).

    meta may carry 'order' (a TermOrder) and 'perm' (an image list).
    """
    from .dcalc import Permutation

    lines = text.splitlines()
    ring = None
    meta = {}
    gens = []
    gen_lines = []
    for ln, raw in enumerate(lines, start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if ring is None:
            ring = parse_ring_line(stripped, ln)
            continue
        head = stripped.split(None, 1)
        if not gens and head[0] == "order" and len(head) == 2:
            kind = head[1].strip()
            if kind not in ("lex", "grevlex"):
                raise ParseError(f"unknown order {kind!r}", ln, 1)
            meta["order"] = LEX if kind == "lex" else GREVLEX
            continue
        if not gens and head[0] == "perm" and len(head) == 2:
            try:
                images = [int(t) for t in head[1].split(",")]
            except ValueError:
                raise ParseError("perm header needs comma-separated integers", ln, 1) from None
            meta["perm"] = Permutation(images)
            continue
        gens.append(parse_expression(stripped, ring, ln))
        gen_lines.append(ln)
    if ring is None:
        raise ParseError("missing ring line", 1, 1)
    if not gens:
        raise ParseError("no generators", len(lines) or 1, 1)
    for f, ln in zip(gens, gen_lines):
        if f.constant_term() != ring.field.zero:
            raise ParseError(f"generator '{f}' has a nonzero constant term", ln, 1)
        if f.is_zero():
            raise ParseError("zero generator", ln, 1)
    return ring, IdealGens(ring, gens), meta


def format_ideal_file(ideal: IdealGens, meta=None) -> str:
    lines = [format_ring(ideal.ring)]
    meta = meta or {}
    if "order" in meta:
        lines.append(f"order {meta['order'].kind}")
    if "perm" in meta:
        lines.append(f"perm {meta['perm']}")
    lines.extend(str(f) for f in ideal.gens)
    return "\n".join(lines) + "\n"
