"""Parser for the textual polynomial grammar used on the command line.

    poly   := term (('+'|'-') term)*
    term   := coeff ('*' factor)* | factor ('*' factor)*
    factor := var ('^' nat)?
    var    := ('y'|'x') nat
    coeff  := int ('/' nat)?

A leading sign on the first term is accepted.  Whitespace is ignored.
"""

import re
from fractions import Fraction

from ..errors import ParseError
from .polynomial import Polynomial

_TOKEN = re.compile(r"\s*(?:(\d+)|([xy])(\d+)|(.))")


def _tokenize(text):
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m.group(0).strip() == "":
            break
        start = m.start() + len(m.group(0)) - len(m.group(0).lstrip())
        if m.group(1) is not None:
            toks.append(("nat", int(m.group(1)), start))
        elif m.group(2) is not None:
            toks.append(("var", (m.group(2), int(m.group(3))), start))
        else:
            ch = m.group(4)
            if ch not in "+-*/^":
                raise ParseError(f"unexpected character {ch!r}", text, start)
            toks.append((ch, ch, start))
        pos = m.end()
    toks.append(("end", None, len(text)))
    return toks


class _Parser:
    def __init__(self, text, nvars, prefix):
        self.text = text
        self.nvars = nvars
        self.prefix = prefix
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self, kind):
        tok = self.toks[self.i]
        if tok[0] != kind:
            what = "end of input" if tok[0] == "end" else repr(tok[1])
            raise ParseError(f"expected {kind}, found {what}", self.text, tok[2])
        self.i += 1
        return tok

    def poly(self):
        total = Polynomial.constant(self.nvars, 0)
        sign = 1
        if self.peek()[0] in "+-":
            sign = -1 if self.take(self.peek()[0])[0] == "-" else 1
        total = total + self.term().scale(sign)
        while self.peek()[0] in ("+", "-"):
            sign = -1 if self.take(self.peek()[0])[0] == "-" else 1
            total = total + self.term().scale(sign)
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError(f"unexpected {tok[1]!r}", self.text, tok[2])
        return total

    def term(self):
        tok = self.peek()
        if tok[0] == "nat":
            value = Polynomial.constant(self.nvars, self.coeff())
        elif tok[0] == "var":
            value = self.factor()
        else:
            what = "end of input" if tok[0] == "end" else repr(tok[1])
            raise ParseError(f"expected a term, found {what}", self.text, tok[2])
        while self.peek()[0] == "*":
            self.take("*")
            value = value * self.factor()
        return value

    def coeff(self):
        num = self.take("nat")[1]
        if self.peek()[0] == "/":
            self.take("/")
            tok = self.take("nat")
            if tok[1] == 0:
                raise ParseError("zero denominator", self.text, tok[2])
            return Fraction(num, tok[1])
        return num

    def factor(self):
        _, (prefix, idx), pos = self.take("var")
        if self.prefix is not None and prefix != self.prefix:
            raise ParseError(f"expected variables named {self.prefix}1..", self.text, pos)
        if not 1 <= idx <= self.nvars:
            raise ParseError(f"variable {prefix}{idx} out of range 1..{self.nvars}", self.text, pos)
        power = 1
        if self.peek()[0] == "^":
            self.take("^")
            power = self.take("nat")[1]
        return Polynomial.variable(self.nvars, idx) ** power


def parse_polynomial(text, nvars, prefix=None):
    """Parse ``text`` into a ``Polynomial`` in ``nvars`` variables.

    ``prefix`` restricts variable names to ``'y'`` or ``'x'``; by default
    either is accepted.
    """
    return _Parser(text, nvars, prefix).poly()
