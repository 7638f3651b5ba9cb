"""Tokenizer and recursive-descent parser for polynomial and operator text.

Grammar (juxtaposition is not allowed, ``*`` is required)::

    expr   ::= ['+'|'-'] term (('+'|'-') term)*
    term   ::= factor (('*'|'/') factor)*
    factor ::= atom ('^' int)?
    atom   ::= int | name | '(' expr ')'

The parser is generic: it folds the syntax tree through callbacks, so the
same code builds rational functions, commutative polynomials and Weyl
operators.  Products are built left to right, which lets a noncommutative
target normal-order ``dx1*x1`` correctly.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, List

from .coeff import QQ

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\^|\*|\+|-|/|\(|\)|,|\[|\]))")


class ParseError(ValueError):
    def __init__(self, message: str, line: int = 1, col: int = 1):
        super().__init__(f"{message} (line {line}, column {col})")
        self.message = message
        self.line = line
        self.col = col


@dataclass
class Token:
    kind: str  # "int", "name", "op", "end"
    text: str
    line: int
    col: int


def tokenize(text: str, line: int = 1) -> List[Token]:
    tokens: List[Token] = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos + 1)
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            tokens.append(Token("int", m.group(1), line, start + 1))
        elif m.group(2) is not None:
            tokens.append(Token("name", m.group(2), line, start + 1))
        else:
            tokens.append(Token("op", m.group(3), line, start + 1))
        pos = m.end()
    tokens.append(Token("end", "", line, n + 1))
    return tokens


class _Parser:
    def __init__(self, tokens, var, const, div=None, inverse=None):
        self.div = div
        self.inverse = inverse
        self.tokens = tokens
        self.i = 0
        self.var = var
        self.const = const

    def peek(self) -> Token:
        return self.tokens[self.i]

    def take(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, text):
        tok = self.take()
        if tok.text != text:
            raise ParseError(f"expected {text!r}, found {tok.text or 'end of input'!r}", tok.line, tok.col)
        return tok

    def expr(self):
        tok = self.peek()
        negate = False
        if tok.kind == "op" and tok.text in "+-":
            negate = tok.text == "-"
            self.take()
        value = self.term()
        if negate:
            value = -value
        while self.peek().kind == "op" and self.peek().text in ("+", "-"):
            op = self.take().text
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.factor()
        while self.peek().kind == "op" and self.peek().text in ("*", "/"):
            op = self.take()
            if op.text == "*":
                value = value * self.factor()
            elif self.div is not None:
                value = self.div(value, self.factor())
            else:
                den = self.take()
                if den.kind != "int":
                    raise ParseError("division only by integer constants", den.line, den.col)
                if int(den.text) == 0:
                    raise ParseError("division by zero", den.line, den.col)
                value = value * self.const(QQ(1, int(den.text)))
        return value

    def factor(self):
        base = self.atom()
        if self.peek().kind == "op" and self.peek().text == "^":
            self.take()
            tok = self.take()
            negative = tok.kind == "op" and tok.text == "-" and self.inverse is not None
            if negative:
                tok = self.take()
            if tok.kind != "int":
                raise ParseError("exponent must be a non-negative integer", tok.line, tok.col)
            e = int(tok.text)
            if negative:
                base = self.inverse(base, tok.line, tok.col)
            out = self.const(QQ(1))
            for _ in range(e):
                out = out * base
            return out
        return base

    def atom(self):
        tok = self.take()
        if tok.kind == "int":
            return self.const(QQ(int(tok.text)))
        if tok.kind == "name":
            return self.var(tok.text, tok.line, tok.col)
        if tok.kind == "op" and tok.text == "(":
            value = self.expr()
            self.expect(")")
            return value
        raise ParseError(f"unexpected {tok.text or 'end of input'!r}", tok.line, tok.col)


def parse_expression(
    text: str, var: Callable, const: Callable, line: int = 1, div: Callable | None = None, inverse: Callable | None = None
):
    """Parse ``text`` and fold it with ``var(name, line, col)`` and ``const(q)``.

    Without ``div`` the divisor of ``/`` must be an integer literal.  With
    ``inverse(base, line, col)`` exponents may be negative (``T^-1``).
    """
    tokens = tokenize(text, line)
    parser = _Parser(tokens, var, const, div, inverse)
    value = parser.expr()
    tok = parser.peek()
    if tok.kind != "end":
        raise ParseError(f"unexpected {tok.text!r}", tok.line, tok.col)
    return value


def split_vector(text: str) -> List[str]:
    """Split ``[p1, p2, ...]`` into component strings (nesting-aware)."""
    body = text.strip()
    if not (body.startswith("[") and body.endswith("]")):
        return [body]
    body = body[1:-1]
    parts, depth, cur = [], 0, []
    for ch in body:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return [p.strip() for p in parts]
