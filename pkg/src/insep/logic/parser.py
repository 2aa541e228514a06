"""Text syntax for formulas.

Grammar (``|`` is alternation, braces are repetition)::

    formula  := implies [ "<->" formula ]
    implies  := disj [ "->" implies ]
    disj     := conj { "|" conj }
    conj     := unary { "&" unary }
    unary    := "~" unary
              | ("forall" | "exists") VAR { VAR } "." formula
              | primary
    primary  := "true" | "false" | "(" formula ")"
              | "A" [ "[" REL "]" ] INT               # size atom A_n
              | REL [ "(" VAR { "," VAR } ")" ]
              | VAR ( "=" | "!=" ) VAR

``VAR`` is lower-case initial (``x``, ``y1``, ``_b0``); ``REL`` is upper-case
initial and may end in primes (``E'``). A quantifier body extends as far to
the right as possible. ``to_text`` emits the canonical form, which parses
back to the identical tree.
"""

from __future__ import annotations

import re

from .syntax import (
    BOT,
    TOP,
    And,
    Atom,
    Bot,
    Eq,
    Exists,
    Forall,
    Formula,
    Iff,
    Implies,
    Not,
    Or,
    SizeAtom,
    Top,
)


class ParseError(ValueError):
    def __init__(self, message: str, pos: int, text: str):
        super().__init__(f"{message} at position {pos}: {text[:pos]!r} <here> {text[pos:pos + 20]!r}")
        self.pos = pos


_TOKEN = re.compile(
    r"\s*(?:(?P<op><->|->|!=|[~&|().,=\[\]])"
    r"|(?P<int>\d+)"
    r"|(?P<rel>[A-Z][A-Za-z0-9_]*'*)"
    r"|(?P<var>[a-z_][A-Za-z0-9_]*))"
)
_KEYWORDS = {"true", "false", "forall", "exists"}


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            raise ParseError("unexpected character", pos, text)
        kind = m.lastgroup
        value = m.group(kind)
        start = m.start(kind)
        if kind == "var" and value in _KEYWORDS:
            kind = "kw"
        tokens.append((kind, value, start))
        pos = m.end()
    tokens.append(("eof", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self, offset: int = 0):
        return self.tokens[min(self.i + offset, len(self.tokens) - 1)]

    def next(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, message: str):
        raise ParseError(message, self.peek()[2], self.text)

    def expect(self, kind: str, value: str | None = None):
        tok = self.peek()
        if tok[0] != kind or (value is not None and tok[1] != value):
            self.error(f"expected {value or kind}, found {tok[1] or 'end of input'!r}")
        return self.next()

    def at(self, kind: str, value: str | None = None) -> bool:
        tok = self.peek()
        return tok[0] == kind and (value is None or tok[1] == value)

    def formula(self) -> Formula:
        left = self.implies()
        if self.at("op", "<->"):
            self.next()
            return Iff(left, self.formula())
        return left

    def implies(self) -> Formula:
        left = self.disj()
        if self.at("op", "->"):
            self.next()
            return Implies(left, self.implies())
        return left

    def disj(self) -> Formula:
        left = self.conj()
        while self.at("op", "|"):
            self.next()
            left = Or(left, self.conj())
        return left

    def conj(self) -> Formula:
        left = self.unary()
        while self.at("op", "&"):
            self.next()
            left = And(left, self.unary())
        return left

    def unary(self) -> Formula:
        if self.at("op", "~"):
            self.next()
            return Not(self.unary())
        if self.at("kw", "forall") or self.at("kw", "exists"):
            cls = Forall if self.next()[1] == "forall" else Exists
            names = [self.expect("var")[1]]
            while self.at("var"):
                names.append(self.next()[1])
            self.expect("op", ".")
            body = self.formula()
            for name in reversed(names):
                body = cls(name, body)
            return body
        return self.primary()

    def primary(self) -> Formula:
        kind, value, _ = self.peek()
        if kind == "kw" and value in ("true", "false"):
            self.next()
            return TOP if value == "true" else BOT
        if kind == "op" and value == "(":
            self.next()
            inner = self.formula()
            self.expect("op", ")")
            return inner
        if kind == "rel":
            self.next()
            if value == "A" and (self.at("int") or self.at("op", "[")):
                rel = "E"
                if self.at("op", "["):
                    self.next()
                    rel = self.expect("rel")[1]
                    self.expect("op", "]")
                return SizeAtom(int(self.expect("int")[1]), rel)
            args: list[str] = []
            if self.at("op", "("):
                self.next()
                args.append(self.expect("var")[1])
                while self.at("op", ","):
                    self.next()
                    args.append(self.expect("var")[1])
                self.expect("op", ")")
            return Atom(value, tuple(args))
        if kind == "var":
            self.next()
            if self.at("op", "="):
                self.next()
                return Eq(value, self.expect("var")[1])
            if self.at("op", "!="):
                self.next()
                return Not(Eq(value, self.expect("var")[1]))
            self.error("expected '=' or '!=' after variable")
        self.error(f"unexpected {value or 'end of input'!r}")


def parse(text: str) -> Formula:
    p = _Parser(text)
    f = p.formula()
    if not p.at("eof"):
        p.error("trailing input")
    return f


_BIN_OPS = {And: "&", Or: "|", Implies: "->", Iff: "<->"}


def to_text(f: Formula) -> str:
    return _show(f, top=True)


def _show(f: Formula, top: bool = False) -> str:
    if isinstance(f, Top):
        return "true"
    if isinstance(f, Bot):
        return "false"
    if isinstance(f, Atom):
        return f"{f.rel}({','.join(f.args)})" if f.args else f.rel
    if isinstance(f, Eq):
        return f"{f.left} = {f.right}"
    if isinstance(f, SizeAtom):
        return f"A {f.n}" if f.rel == "E" else f"A[{f.rel}] {f.n}"
    if isinstance(f, Not):
        return "~" + _show(f.body)
    if isinstance(f, (Exists, Forall)):
        kw = "exists" if isinstance(f, Exists) else "forall"
        text = f"{kw} {f.var}. {_show(f.body, top=True)}"
        return text if top else f"({text})"
    op = _BIN_OPS[type(f)]
    text = f"{_show(f.left)} {op} {_show(f.right)}"
    return text if top else f"({text})"
