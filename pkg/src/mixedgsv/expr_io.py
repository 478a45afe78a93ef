"""Reading and writing mixed polynomials as plain ASCII text.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := base ('^' natural)?
    base   := 'z' natural | 'conj' '(' 'z' natural ')' | number | 'i'
            | '(' expr ')' | '-' factor
    number := decimal with optional fraction, optionally suffixed 'i'

Products are expanded while parsing, so :func:`parse` always returns a
canonical :class:`~mixedgsv.mixed_poly.MixedPolynomial`.  Implicit
multiplication such as ``2z1`` is a syntax error.
"""
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DimensionError, ParseError
from .mixed_poly import MixedPolynomial, VectorField

__all__ = ["parse", "parse_tree", "parse_field", "format_poly", "format_field",
           "Token"]


@dataclass(frozen=True)
class Token:
    kind: str  # 'num', 'var', 'conj', 'i', or a punctuation character, or 'end'
    text: str
    line: int
    column: int


_PUNCT = "+-*^()"


def tokenize(text):
    """Split ``text`` into tokens carrying 1-based line and column numbers."""
    tokens = []
    line, col = 1, 1
    pos = 0
    n = len(text)
    while pos < n:
        ch = text[pos]
        if ch == "\n":
            line, col, pos = line + 1, 1, pos + 1
            continue
        if ch.isspace():
            pos, col = pos + 1, col + 1
            continue
        start_col = col
        if ch in _PUNCT:
            tokens.append(Token(ch, ch, line, start_col))
            pos, col = pos + 1, col + 1
            continue
        if ch.isdigit() or ch == ".":
            end = pos
            while end < n and text[end].isdigit():
                end += 1
            if end < n and text[end] == ".":
                end += 1
                while end < n and text[end].isdigit():
                    end += 1
            literal = text[pos:end]
            if literal == "." or literal.count(".") > 1:
                raise ParseError(f"malformed number {literal!r}", line, start_col)
            if end < n and text[end] == "i" and not (end + 1 < n and text[end + 1].isalnum()):
                end += 1
            tokens.append(Token("num", text[pos:end], line, start_col))
            col += end - pos
            pos = end
            continue
        if ch.isalpha():
            end = pos
            while end < n and (text[end].isalnum() or text[end] == "_"):
                end += 1
            word = text[pos:end]
            if word == "conj":
                tokens.append(Token("conj", word, line, start_col))
            elif word == "i":
                tokens.append(Token("i", word, line, start_col))
            elif word[0] == "z" and word[1:].isdigit():
                tokens.append(Token("var", word, line, start_col))
            else:
                raise ParseError(f"unknown identifier {word!r}", line, start_col)
            col += end - pos
            pos = end
            continue
        raise ParseError(f"unexpected character {ch!r}", line, start_col)
    tokens.append(Token("end", "", line, col))
    return tokens


class _TreeParser:
    """Recursive-descent parser producing a small tuple-based syntax tree.

    Node shapes: ``('num', text, imaginary)``, ``('var', j, conjugated)``,
    ``('add', a, b)``, ``('sub', a, b)``, ``('mul', a, b)``,
    ``('pow', a, k)``, ``('neg', a)``.  Every node also records its source
    position as a trailing ``(line, column)`` pair.
    """

    def __init__(self, text):
        self.tokens = tokenize(text)
        self.pos = 0

    @property
    def tok(self):
        return self.tokens[self.pos]

    def advance(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind, what):
        if self.tok.kind != kind:
            self.fail(f"expected {what}")
        return self.advance()

    def fail(self, message, tok=None):
        tok = tok or self.tok
        found = "end of input" if tok.kind == "end" else repr(tok.text)
        raise ParseError(f"{message}, found {found}", tok.line, tok.column)

    def parse(self):
        if self.tok.kind == "end":
            self.fail("empty expression")
        node = self.expr()
        if self.tok.kind != "end":
            if self.tok.kind in ("num", "var", "conj", "i", "("):
                self.fail("missing operator (implicit multiplication is not allowed)")
            self.fail("unexpected token")
        return node

    def expr(self):
        node = self.term()
        while self.tok.kind in ("+", "-"):
            op = self.advance()
            rhs = self.term()
            node = ("add" if op.kind == "+" else "sub", node, rhs, (op.line, op.column))
        return node

    def term(self):
        node = self.factor()
        while self.tok.kind == "*":
            op = self.advance()
            rhs = self.factor()
            node = ("mul", node, rhs, (op.line, op.column))
        return node

    def factor(self):
        node = self.base()
        if self.tok.kind == "^":
            op = self.advance()
            tok = self.tok
            if tok.kind == "-":
                self.fail("exponents must be non-negative integers")
            if tok.kind != "num":
                self.fail("expected an integer exponent")
            if not tok.text.isdigit():
                self.fail("exponents must be non-negative integers", tok)
            self.advance()
            if self.tok.kind == "^":
                self.fail("chained exponents need parentheses")
            node = ("pow", node, int(tok.text), (op.line, op.column))
        return node

    def base(self):
        tok = self.tok
        where = (tok.line, tok.column)
        if tok.kind == "var":
            self.advance()
            return ("var", int(tok.text[1:]), False, where)
        if tok.kind == "conj":
            self.advance()
            self.expect("(", "'(' after conj")
            var = self.tok
            if var.kind != "var":
                self.fail("conj() takes a single variable such as z1")
            self.advance()
            self.expect(")", "')' closing conj(")
            return ("var", int(var.text[1:]), True, (var.line, var.column))
        if tok.kind == "num":
            self.advance()
            imaginary = tok.text.endswith("i")
            return ("num", tok.text.rstrip("i"), imaginary, where)
        if tok.kind == "i":
            self.advance()
            return ("num", "1", True, where)
        if tok.kind == "(":
            self.advance()
            node = self.expr()
            self.expect(")", "')'")
            return node
        if tok.kind == "-":
            self.advance()
            return ("neg", self.factor(), where)
        self.fail("expected a variable, number, 'i', '(' or '-'")


def parse_tree(text):
    """Parse ``text`` into a syntax tree without expanding it."""
    if not isinstance(text, str) or not text.strip():
        raise ParseError("empty expression", 1, 1)
    return _TreeParser(text).parse()


def _max_var(node):
    kind = node[0]
    if kind == "var":
        return node[1]
    if kind == "num":
        return 0
    if kind in ("neg", "pow"):
        return _max_var(node[1])
    return max(_max_var(node[1]), _max_var(node[2]))


def _check_vars(node, nvars):
    kind = node[0]
    if kind == "var":
        j = node[1]
        if j == 0:
            raise ParseError("variable indices start at 1 (found z0)", *node[3])
        if j > nvars:
            raise ParseError(f"variable z{j} exceeds declared nvars={nvars}", *node[3])
    elif kind in ("neg", "pow"):
        _check_vars(node[1], nvars)
    elif kind != "num":
        _check_vars(node[1], nvars)
        _check_vars(node[2], nvars)


def _number(text, imaginary, exact):
    if exact:
        import sympy as sp

        value = sp.Rational(text)
        return value * sp.I if imaginary else value
    value = float(text)
    return complex(0.0, value) if imaginary else complex(value)


def _build(node, nvars, exact):
    kind = node[0]
    if kind == "num":
        return MixedPolynomial.constant(_number(node[1], node[2], exact), nvars, exact=exact)
    if kind == "var":
        return MixedPolynomial.variable(node[1], nvars, conjugated=node[2], exact=exact)
    if kind == "neg":
        return -_build(node[1], nvars, exact)
    if kind == "pow":
        return _build(node[1], nvars, exact) ** node[2]
    a = _build(node[1], nvars, exact)
    b = _build(node[2], nvars, exact)
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    return a * b


def parse(text, nvars=None, exact=False):
    """Parse an expression into a canonical mixed polynomial.

    Parameters
    ----------
    text : str
        Expression following the module grammar.
    nvars : int, optional
        Declared number of variables.  Defaults to the largest index used
        (and at least 1).
    exact : bool
        Keep decimal literals as exact rationals.

    Raises
    ------
    ParseError
        On syntax errors, ``z0``, indices above ``nvars`` or bad exponents.
    """
    tree = parse_tree(text)
    if nvars is not None and int(nvars) < 1:
        raise DimensionError("declared nvars must be positive")
    n = int(nvars) if nvars is not None else max(_max_var(tree), 1)
    _check_vars(tree, n)
    return _build(tree, n, exact)


def parse_field(text, nvars=None, exact=False):
    """Parse ``';'``-separated component expressions into a :class:`VectorField`."""
    parts = text.split(";")
    if any(not p.strip() for p in parts):
        raise ParseError("empty vector-field component", 1, 1)
    n = len(parts)
    if nvars is not None and int(nvars) != n:
        raise DimensionError(f"a field on C^{nvars} needs {nvars} components, got {n}")
    comps = []
    offset = 0
    for part in parts:
        try:
            comps.append(parse(part, nvars=n, exact=exact))
        except ParseError as err:
            raise ParseError(err.message, err.line, err.column + offset) from None
        offset += len(part) + 1
    return VectorField(comps)


# -- formatting -----------------------------------------------------------
def _format_real(x):
    if isinstance(x, Fraction):
        if x.denominator == 1:
            return str(x.numerator)
        den, k = x.denominator, 0
        while den % 2 == 0 or den % 5 == 0:
            den //= 2 if den % 2 == 0 else 5
        if den != 1:
            # no finite decimal expansion; fall back to the nearest double
            return _format_real(float(x))
        k = 0
        while (x * 10 ** k).denominator != 1:
            k += 1
        digits = abs((x * 10 ** k).numerator)
        s = str(digits).rjust(k + 1, "0")
        s = s[:-k] + "." + s[-k:]
        return ("-" if x < 0 else "") + s
    x = float(x)
    if x == 0:
        return "0"
    return np.format_float_positional(x, unique=True, trim="-")


def _parts(c, exact):
    if exact:
        import sympy as sp

        re, im = sp.re(c), sp.im(c)
        return (Fraction(int(re.p), int(re.q)), Fraction(int(im.p), int(im.q)))
    return c.real, c.imag


def _format_coef(c, exact):
    """Return (sign, body) where body renders |c| or a parenthesized complex."""
    re, im = _parts(c, exact)
    if im == 0:
        sign = "-" if re < 0 else "+"
        return sign, _format_real(abs(re)), True
    im_sign = "-" if im < 0 else "+"
    return "+", f"({_format_real(re)}{im_sign}{_format_real(abs(im))}i)", False


def _format_monomial(mu, nu):
    factors = []
    for j, e in enumerate(mu, start=1):
        if e:
            factors.append(f"z{j}" + (f"^{e}" if e > 1 else ""))
    for j, e in enumerate(nu, start=1):
        if e:
            factors.append(f"conj(z{j})" + (f"^{e}" if e > 1 else ""))
    return "*".join(factors)


def format_poly(f):
    """Render ``f`` in canonical term order; the output parses back to ``f``."""
    if not f.terms:
        return "0"
    pieces = []
    for idx, (c, mu, nu) in enumerate(f.terms):
        sign, body, is_real = _format_coef(c, f.exact)
        mono = _format_monomial(mu, nu)
        if mono:
            text = mono if (is_real and body == "1") else f"{body}*{mono}"
        else:
            text = body
        if idx == 0:
            pieces.append(("-" if sign == "-" else "") + text)
        else:
            pieces.append(f" {sign} {text}")
    return "".join(pieces)


def format_field(field):
    """Render a vector field as ``';'``-separated component expressions."""
    return "; ".join(format_poly(c) for c in field.components)
