"""
Recursive-descent parser for the ASCII element grammar.

One parser serves every ring in the package: the caller supplies the named
atoms (``T``, ``g``, ``tau``, ``t``), the conversion of integer literals, and
optionally a division hook. Grammar::

    expr   := term (("+" | "-") term)*
    term   := factor (("*" | "/") factor)*
    factor := ("+" | "-") factor | power
    power  := atom ("^" INTEGER)?
    atom   := INTEGER | NAME | "(" expr ")"

Whitespace is insignificant.
"""
import re

from .exceptions import ParseError

TOKEN_RE = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_]+)|(?P<op>[-+*/^()]))")
END = "end of input"


class Token:
    __slots__ = ("kind", "text", "position")

    def __init__(self, kind, text, position):
        self.kind = kind
        self.text = text
        self.position = position

    def __repr__(self):
        return f"Token({self.kind!r}, {self.text!r}, {self.position})"


def tokenize(text):
    tokens = []
    position = 0
    while position < len(text):
        if text[position:].strip() == "":
            break
        match = TOKEN_RE.match(text, position)
        if match is None:
            offset = len(text[position:]) - len(text[position:].lstrip())
            raise ParseError(
                f"unexpected character {text[position + offset]!r}",
                text,
                position + offset,
            )
        kind = match.lastgroup
        tokens.append(Token(kind, match.group(kind), match.start(kind)))
        position = match.end()
    tokens.append(Token("end", END, len(text)))
    return tokens


class ExpressionParser:
    """Evaluate an expression over a ring while parsing it.

    Parameters
    ----------
    atoms : dict
        Maps a name (``"T"``, ``"tau"`` ...) to the ring value it denotes.
    integer : callable
        ``integer(value, position)`` converts a literal, raising ParseError
        when it is out of range.
    divide : callable, optional
        ``divide(a, b, position)``; division is a syntax error without it.
    """

    def __init__(self, atoms, integer, divide=None):
        self.atoms = atoms
        self.integer = integer
        self.divide = divide

    def parse(self, text):
        self.text = text
        self.tokens = tokenize(text)
        self.index = 0
        if self.peek().kind == "end":
            raise ParseError("empty expression", text, 0)
        value = self.expr()
        token = self.peek()
        if token.kind != "end":
            raise ParseError(f"unexpected {token.text!r}", text, token.position)
        return value

    def peek(self):
        return self.tokens[self.index]

    def advance(self):
        token = self.tokens[self.index]
        self.index += 1
        return token

    def expect(self, text):
        token = self.advance()
        if token.text != text:
            raise ParseError(
                f"expected {text!r}, found {token.text!r}", self.text, token.position
            )
        return token

    def expr(self):
        value = self.term()
        while self.peek().text in ("+", "-") and self.peek().kind == "op":
            op = self.advance().text
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.factor()
        while self.peek().text in ("*", "/") and self.peek().kind == "op":
            token = self.advance()
            rhs = self.factor()
            if token.text == "*":
                value = value * rhs
            elif self.divide is None:
                raise ParseError("division is not allowed here", self.text, token.position)
            else:
                value = self.divide(value, rhs, token.position)
        return value

    def factor(self):
        token = self.peek()
        if token.kind == "op" and token.text in ("+", "-"):
            self.advance()
            value = self.factor()
            return -value if token.text == "-" else value
        return self.power()

    def power(self):
        value = self.atom()
        if self.peek().text == "^" and self.peek().kind == "op":
            self.advance()
            token = self.advance()
            if token.kind != "int":
                raise ParseError(
                    "exponent must be a non-negative integer", self.text, token.position
                )
            value = value ** int(token.text)
        return value

    def atom(self):
        token = self.advance()
        if token.kind == "int":
            return self.integer(int(token.text), token.position)
        if token.kind == "name":
            if token.text not in self.atoms:
                raise ParseError(f"unknown symbol {token.text!r}", self.text, token.position)
            return self.atoms[token.text]
        if token.text == "(":
            value = self.expr()
            self.expect(")")
            return value
        if token.kind == "end":
            raise ParseError("unexpected end of input", self.text, token.position)
        raise ParseError(f"unexpected {token.text!r}", self.text, token.position)
