"""Parser and file readers for the ASCII polynomial grammar.

Grammar (whitespace insignificant):

    expr     := sign? term (('+'|'-') term)*
    term     := factor ('*'? factor)*
    factor   := rational | ident | '(' expr ')' | factor '^' uint
    rational := uint ('/' uint)?
    ident    := letter (letter|digit|'_')*

Implicit multiplication by juxtaposition is accepted between a factor
and an identifier or parenthesis ("2Y", "3(Y+1)", "Y1 Y2").  Signs are
handled at the term level, so "-T" and "Y - 2" both parse.  The printer
in ``poly`` emits a subset of this grammar, making parse(print(p)) the
identity on canonical forms.
"""

from __future__ import annotations

from fractions import Fraction

from .context import VariableContext, context
from .errors import ConfigError, PolynomialSyntaxError, UnknownVariableError
from .poly import Polynomial

_INT = "int"
_IDENT = "ident"
_OP = "op"
_END = "end"


def _tokenize(text):
    tokens = []
    i = 0
    n = len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if c.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append((_INT, int(text[i:j]), i))
            i = j
            continue
        if c.isalpha():
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append((_IDENT, text[i:j], i))
            i = j
            continue
        if c in "+-*^()/":
            tokens.append((_OP, c, i))
            i += 1
            continue
        raise PolynomialSyntaxError(f"unexpected character {c!r}", i)
    tokens.append((_END, None, n))
    return tokens


class _Parser:
    def __init__(self, text, ctx):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.ctx = ctx

    def peek(self):
        return self.tokens[self.pos]

    def advance(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect_op(self, symbol):
        kind, value, at = self.advance()
        if kind != _OP or value != symbol:
            raise PolynomialSyntaxError(f"expected {symbol!r}", at)

    def parse(self) -> Polynomial:
        result = self.parse_expr()
        kind, value, at = self.peek()
        if kind != _END:
            raise PolynomialSyntaxError(f"unexpected {value!r}", at)
        return result

    def parse_expr(self) -> Polynomial:
        result = self.parse_signed_term()
        while True:
            kind, value, _ = self.peek()
            if kind == _OP and value in "+-":
                self.advance()
                term = self.parse_term()
                result = result + term if value == "+" else result - term
            else:
                return result

    def parse_signed_term(self) -> Polynomial:
        kind, value, _ = self.peek()
        if kind == _OP and value in "+-":
            self.advance()
            term = self.parse_term()
            return term if value == "+" else -term
        return self.parse_term()

    def parse_term(self) -> Polynomial:
        result = self.parse_factor()
        while True:
            kind, value, _ = self.peek()
            if kind == _OP and value == "*":
                self.advance()
                result = result * self.parse_factor()
            elif kind == _IDENT or (kind == _OP and value == "("):
                result = result * self.parse_factor()
            else:
                return result

    def parse_factor(self) -> Polynomial:
        result = self.parse_primary()
        while True:
            kind, value, _ = self.peek()
            if kind == _OP and value == "^":
                self.advance()
                kind, value, at = self.advance()
                if kind != _INT:
                    raise PolynomialSyntaxError("exponent must be an unsigned integer", at)
                result = result ** value
            else:
                return result

    def parse_primary(self) -> Polynomial:
        kind, value, at = self.advance()
        if kind == _INT:
            numerator = value
            kind, nxt, _ = self.peek()
            if kind == _OP and nxt == "/":
                self.advance()
                kind, den, dat = self.advance()
                if kind != _INT or den == 0:
                    raise PolynomialSyntaxError("denominator must be a positive integer", dat)
                return Polynomial.constant(self.ctx, Fraction(numerator, den))
            return Polynomial.constant(self.ctx, numerator)
        if kind == _IDENT:
            if value not in self.ctx:
                raise UnknownVariableError(value, at)
            return Polynomial.variable(self.ctx, value)
        if kind == _OP and value == "(":
            inner = self.parse_expr()
            self.expect_op(")")
            return inner
        raise PolynomialSyntaxError(
            "expected a number, variable or parenthesized expression", at)


def parse_polynomial(text: str, ctx: VariableContext) -> Polynomial:
    """Parse ``text`` into a canonical polynomial over ``ctx``."""
    return _Parser(text, ctx).parse()


# -- ideal-definition files -------------------------------------------------


def _split_names(raw):
    names = tuple(part.strip() for part in raw.split(",") if part.strip())
    return names


def parse_ideal_source(text: str) -> tuple[VariableContext, list[Polynomial]]:
    """Read a line-oriented ideal definition.

    Format: optional ``params: T1, T2``, mandatory ``vars: Y1, Y2``, then
    ``gens:`` followed by one polynomial per line.  Blank lines and ``#``
    comments are ignored.
    """
    params = ()
    variables = ()
    gen_lines: list[tuple[int, str]] = []
    mode = "header"
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if mode == "header":
            if line.lower().startswith("params:"):
                params = _split_names(line.split(":", 1)[1])
            elif line.lower().startswith("vars:"):
                variables = _split_names(line.split(":", 1)[1])
            elif line.lower() == "gens:":
                mode = "gens"
            else:
                raise ConfigError(f"line {lineno}: expected params:/vars:/gens:, got {line!r}")
        else:
            gen_lines.append((lineno, line))
    if not variables:
        raise ConfigError("ideal definition needs a 'vars:' line")
    if mode != "gens":
        raise ConfigError("ideal definition needs a 'gens:' section")
    ctx = context(variables, params=params)
    generators = []
    for lineno, line in gen_lines:
        try:
            generators.append(parse_polynomial(line, ctx))
        except PolynomialSyntaxError as exc:
            raise ConfigError(f"line {lineno}: {exc}") from exc
    return ctx, generators


def read_ideal_file(path) -> tuple[VariableContext, list[Polynomial]]:
    with open(path, "r", encoding="ascii") as handle:
        return parse_ideal_source(handle.read())
