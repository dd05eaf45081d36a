"""Text literals for numbers: ``-1/sqrt(2)``, ``1/2+3/4*sqrt(5)``, ``2-tau`` ...

Grammar (integers only, no decimal points)::

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*
    unary  := ("+" | "-") unary | power
    power  := atom ("^" unary)?
    atom   := INT | "tau" | "pi" | "sqrt" "(" expr ")" | "(" expr ")"

Everything stays exact in one quadratic field.  Mixing fields or using
``pi`` yields an :class:`~aperiodica.approx.ApproxReal` unless
``exact=True`` is requested.
"""
from __future__ import annotations

import re
from fractions import Fraction

from .exactnum import TAU, IncompatibleRadicands, QuadraticReal, qsqrt

__all__ = ["LiteralError", "parse_number"]

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]+)|(\*\*|[-+*/^()])|(\S))")


class LiteralError(ValueError):
    pass


def _tokens(text: str) -> list[str]:
    out = []
    for m in _TOKEN.finditer(text):
        num, name, op, bad = m.groups()
        if bad is not None:
            if bad == ".":
                raise LiteralError(f"floating-point literal not accepted: {text!r}")
            raise LiteralError(f"unexpected character {bad!r} in {text!r}")
        out.append(num or name or ("^" if op == "**" else op))
    return out


def _approx(x):
    from .approx import ApproxReal

    return ApproxReal.of(x)


def _combine(op, x, y):
    try:
        return op(x, y)
    except IncompatibleRadicands:
        return op(_approx(x), _approx(y))


class _Parser:
    def __init__(self, text: str) -> None:
        self.text = text
        self.toks = _tokens(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, expected=None):
        tok = self.peek()
        if tok is None or (expected is not None and tok != expected):
            raise LiteralError(f"expected {expected or 'a value'} in {self.text!r}")
        self.i += 1
        return tok

    def expr(self):
        val = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()
            rhs = self.term()
            val = _combine((lambda a, b: a + b) if op == "+" else (lambda a, b: a - b), val, rhs)
        return val

    def term(self):
        val = self.unary()
        while self.peek() in ("*", "/"):
            op = self.take()
            rhs = self.unary()
            if op == "/" and rhs == 0:
                raise LiteralError(f"division by zero in {self.text!r}")
            val = _combine((lambda a, b: a * b) if op == "*" else (lambda a, b: a / b), val, rhs)
        return val

    def unary(self):
        if self.peek() == "-":
            self.take()
            return -self.unary()
        if self.peek() == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == "^":
            self.take()
            exp = self.unary()
            if not (isinstance(exp, QuadraticReal) and exp.is_rational and exp.as_fraction().denominator == 1):
                raise LiteralError(f"exponent must be an integer in {self.text!r}")
            k = int(exp.as_fraction())
            base = base**k if isinstance(base, QuadraticReal) else _pow_approx(base, k)
        return base

    def atom(self):
        tok = self.take()
        if tok.isdigit():
            return QuadraticReal(int(tok))
        if tok == "(":
            val = self.expr()
            self.take(")")
            return val
        if tok == "tau":
            return TAU
        if tok == "pi":
            from .approx import ApproxReal

            return ApproxReal.pi()
        if tok == "sqrt":
            self.take("(")
            arg = self.expr()
            self.take(")")
            if isinstance(arg, QuadraticReal) and arg.is_rational:
                if arg < 0:
                    raise LiteralError(f"square root of a negative number in {self.text!r}")
                return qsqrt(arg.as_fraction())
            from .approx import ApproxReal

            return ApproxReal.sqrt(arg)
        raise LiteralError(f"unexpected token {tok!r} in {self.text!r}")


def _pow_approx(base, k):
    out = 1
    for _ in range(abs(k)):
        out = out * base
    return out if k >= 0 else 1 / out


def parse_number(text: str, exact: bool = False):
    """Parse a number literal.

    >>> parse_number("-2+2*sqrt(2)")
    QuadraticReal('-2+2*sqrt(2)')
    >>> parse_number("1/tau") == parse_number("tau") - 1
    True
    """
    if isinstance(text, (int, Fraction)):
        return QuadraticReal(text)
    p = _Parser(str(text))
    val = p.expr()
    if p.peek() is not None:
        raise LiteralError(f"trailing input {p.peek()!r} in {text!r}")
    if exact and not isinstance(val, QuadraticReal):
        raise LiteralError(f"{text!r} is not an exact quadratic number")
    return val
