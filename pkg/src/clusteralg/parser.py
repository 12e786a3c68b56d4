"""Parsing of element expressions.

Grammar (usual precedence, left associative):

    expr     := term (('+' | '-') term)*
    term     := factor (('*' | '/') factor)*
    factor   := ('-' | '+')* atom ('^' exponent)?
    atom     := INTEGER | NAME | '(' expr ')'
    exponent := '-'? INTEGER | '(' '-'? INTEGER ')'

Names are x1..x{n+m} by default; a seed's frozen names are accepted as
aliases.  Evaluation tracks a numerator and denominator pair so that
subexpressions may be honest fractions; at the end the quotient must
divide exactly in the Laurent ring, otherwise the offending denominator
is reported.  This makes "(1+x2)/(x1*x3)" an element while
"(1+x2)/(1+x1)" is rejected.
"""

from __future__ import annotations

from typing import Dict, List, NamedTuple, Sequence, Tuple

from .errors import (
    ExprSyntaxError,
    InexactDivisionError,
    MalformedInputError,
    PolynomialDivisionError,
)
from .laurent import LaurentPoly, exact_divide

__all__ = ["parse_element", "name_table"]


class _Token(NamedTuple):
    kind: str  # INT NAME OP LPAREN RPAREN CARET END
    value: str
    pos: int


def _tokenize(text: str) -> List[_Token]:
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(_Token("INT", text[i:j], i))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(_Token("NAME", text[i:j], i))
            i = j
            continue
        if ch in "+-*/":
            tokens.append(_Token("OP", ch, i))
            i += 1
            continue
        if ch == "^":
            tokens.append(_Token("CARET", ch, i))
            i += 1
            continue
        if ch == "(":
            tokens.append(_Token("LPAREN", ch, i))
            i += 1
            continue
        if ch == ")":
            tokens.append(_Token("RPAREN", ch, i))
            i += 1
            continue
        raise ExprSyntaxError(f"unexpected character {ch!r}", i)
    tokens.append(_Token("END", "", len(text)))
    return tokens


def name_table(n: int, m: int, frozen_names: Sequence[str] = ()) -> Dict[str, int]:
    """Map variable names to 1-based indices: defaults plus frozen aliases."""
    table = {f"x{k + 1}": k + 1 for k in range(n + m)}
    for j, name in enumerate(frozen_names):
        idx = n + 1 + j
        if name in table and table[name] != idx:
            raise MalformedInputError(
                f"frozen name {name!r} collides with variable x{table[name]}"
            )
        table[name] = idx
    return table


class _Fractional(NamedTuple):
    """A rational expression value, kept unreduced until the very end."""

    num: LaurentPoly
    den: LaurentPoly


class _Parser:
    def __init__(self, tokens: List[_Token], ambient: int, names: Dict[str, int]):
        self.tokens = tokens
        self.k = 0
        self.ambient = ambient
        self.names = names

    def peek(self) -> _Token:
        return self.tokens[self.k]

    def advance(self) -> _Token:
        tok = self.tokens[self.k]
        self.k += 1
        return tok

    def expect(self, kind: str, what: str) -> _Token:
        tok = self.peek()
        if tok.kind != kind:
            raise ExprSyntaxError(f"expected {what}", tok.pos)
        return self.advance()

    def parse(self) -> _Fractional:
        value = self.expr()
        tok = self.peek()
        if tok.kind != "END":
            raise ExprSyntaxError(f"unexpected trailing input {tok.value!r}", tok.pos)
        return value

    def expr(self) -> _Fractional:
        value = self.term()
        while self.peek().kind == "OP" and self.peek().value in "+-":
            op = self.advance().value
            rhs = self.term()
            num = value.num * rhs.den
            other = rhs.num * value.den
            num = num + other if op == "+" else num - other
            value = _Fractional(num, value.den * rhs.den)
        return value

    def term(self) -> _Fractional:
        value = self.factor()
        while self.peek().kind == "OP" and self.peek().value in "*/":
            tok = self.advance()
            rhs = self.factor()
            if tok.value == "*":
                value = _Fractional(value.num * rhs.num, value.den * rhs.den)
            else:
                if rhs.num.is_zero():
                    raise PolynomialDivisionError(
                        f"division by zero at position {tok.pos}"
                    )
                value = _Fractional(value.num * rhs.den, value.den * rhs.num)
        return value

    def factor(self) -> _Fractional:
        sign = 1
        while self.peek().kind == "OP" and self.peek().value in "+-":
            if self.advance().value == "-":
                sign = -sign
        value = self.atom()
        if self.peek().kind == "CARET":
            self.advance()
            e = self.exponent()
            if e >= 0:
                value = _Fractional(value.num ** e, value.den ** e)
            else:
                if value.num.is_zero():
                    raise PolynomialDivisionError("zero raised to a negative power")
                value = _Fractional(value.den ** (-e), value.num ** (-e))
        if sign < 0:
            value = _Fractional(-value.num, value.den)
        return value

    def exponent(self) -> int:
        tok = self.peek()
        if tok.kind == "LPAREN":
            self.advance()
            e = self._signed_int()
            self.expect("RPAREN", "a closing parenthesis")
            return e
        return self._signed_int()

    def _signed_int(self) -> int:
        sign = 1
        tok = self.peek()
        if tok.kind == "OP" and tok.value == "-":
            self.advance()
            sign = -1
        tok = self.expect("INT", "an integer exponent")
        return sign * int(tok.value)

    def atom(self) -> _Fractional:
        tok = self.peek()
        one = LaurentPoly.one(self.ambient)
        if tok.kind == "INT":
            self.advance()
            return _Fractional(LaurentPoly.constant(self.ambient, int(tok.value)), one)
        if tok.kind == "NAME":
            self.advance()
            idx = self.names.get(tok.value)
            if idx is None:
                raise ExprSyntaxError(f"unknown variable {tok.value!r}", tok.pos)
            return _Fractional(LaurentPoly.variable(self.ambient, idx), one)
        if tok.kind == "LPAREN":
            self.advance()
            value = self.expr()
            self.expect("RPAREN", "a closing parenthesis")
            return value
        raise ExprSyntaxError(
            f"expected a number, a variable or a parenthesis, got {tok.value!r}", tok.pos
        )


def parse_element(text: str, ambient: int, names: Dict[str, int] | None = None) -> LaurentPoly:
    """Parse an element expression into a Laurent polynomial.

    The expression may use fractions freely; the final quotient must be
    an exact Laurent division or the offending denominator is reported.
    """
    if names is None:
        names = {f"x{k + 1}": k + 1 for k in range(ambient)}
    tokens = _tokenize(text)
    value = _Parser(tokens, ambient, names).parse()
    if value.den.is_zero():
        raise PolynomialDivisionError("division by zero in expression")
    result = exact_divide(value.num, value.den)
    if result is None:
        raise InexactDivisionError(
            f"the denominator {value.den.text()} does not divide {value.num.text()} "
            "in the Laurent ring"
        )
    return result
