"""One-variable expression mini-language with exact derivatives of any order.

Grammar (whitespace insignificant)::

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := unary ('^' number)?
    unary  := '-'? atom
    atom   := number | 't' | func '(' expr ')' | '(' expr ')'
    func   := exp | ln | sin | cos | sinh | cosh | sqrt

Numbers are decimal literals with an optional exponent part.  The power
operator takes a constant exponent only, which keeps every node's Taylor
recurrence closed-form.

Derivatives come from truncated Taylor-series (jet) arithmetic: each node
maps the jet of its operand, ``c_k = f^(k)(t0)/k!``, to the jet of its
result, so the k-th derivative is ``k! * c_k``, exact up to floating-point
rounding.  No symbolic differentiation, no expression swell.

Jet coefficients may be scalars or numpy arrays; a single propagation
therefore evaluates a derivative on a whole grid of points.  Everything
here is pure and immutable, safe for concurrent use.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ExprSyntaxError, OrderOverflowError

#: Highest derivative order served; k! factors beyond this dwarf double precision.
MAX_ORDER = 32

_FUNCTIONS = ("exp", "ln", "sin", "cos", "sinh", "cosh", "sqrt")

_NUMBER = re.compile(r"(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?")
_IDENT = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")


def _tokenize(text):
    tokens = []
    i, nchars = 0, len(text)
    while i < nchars:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in "+-*/^()":
            tokens.append((ch, ch, i))
            i += 1
            continue
        m = _NUMBER.match(text, i)
        if m:
            tokens.append(("num", m.group(), i))
            i = m.end()
            continue
        m = _IDENT.match(text, i)
        if m:
            tokens.append(("ident", m.group(), i))
            i = m.end()
            continue
        raise ExprSyntaxError(f"unexpected character {ch!r}", i)
    tokens.append(("end", "", nchars))
    return tokens


class _Parser:
    def __init__(self, text):
        self.tokens = _tokenize(text)
        self.pos = 0

    def _peek(self):
        return self.tokens[self.pos]

    def _advance(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def _expect(self, symbol):
        kind, _, at = self._advance()
        if kind != symbol:
            raise ExprSyntaxError(f"expected {symbol!r}", at)

    def parse(self):
        node = self.expr()
        kind, text, at = self._peek()
        if kind != "end":
            raise ExprSyntaxError(f"unexpected {text!r}", at)
        return node

    def expr(self):
        node = self.term()
        while self._peek()[0] in ("+", "-"):
            op = self._advance()[0]
            right = self.term()
            node = (op, node, right)
        return node

    def term(self):
        node = self.factor()
        while self._peek()[0] in ("*", "/"):
            op = self._advance()[0]
            right = self.factor()
            node = (op, node, right)
        return node

    def factor(self):
        node = self.unary()
        if self._peek()[0] == "^":
            self._advance()
            kind, text, at = self._advance()
            if kind != "num":
                raise ExprSyntaxError("exponent must be a numeric literal", at)
            node = ("pow", node, float(text))
        return node

    def unary(self):
        if self._peek()[0] == "-":
            self._advance()
            return ("neg", self.atom())
        return self.atom()

    def atom(self):
        kind, text, at = self._advance()
        if kind == "num":
            return ("num", float(text))
        if kind == "ident":
            if text == "t":
                return ("t",)
            if text in _FUNCTIONS:
                self._expect("(")
                inner = self.expr()
                self._expect(")")
                return (text, inner)
            raise ExprSyntaxError(f"unknown identifier {text!r}", at)
        if kind == "(":
            inner = self.expr()
            self._expect(")")
            return inner
        raise ExprSyntaxError("expected a number, 't', a function call, or '('", at)


# --- jet arithmetic ---------------------------------------------------------
#
# A jet is a list [c_0, ..., c_m] of Taylor coefficients about some point;
# entries are floats or numpy arrays (mixing is fine, broadcasting applies).


def _jconst(value, m):
    return [value] + [0.0] * m


def _jadd(u, v):
    return [a + b for a, b in zip(u, v)]


def _jsub(u, v):
    return [a - b for a, b in zip(u, v)]


def _jneg(u):
    return [-a for a in u]


def _jmul(u, v):
    m = len(u) - 1
    out = []
    for k in range(m + 1):
        acc = u[0] * v[k]
        for j in range(1, k + 1):
            acc = acc + u[j] * v[k - j]
        out.append(acc)
    return out


def _jdiv(u, v):
    v0 = v[0]
    if np.any(np.asarray(v0) == 0.0):
        raise DomainError("division by zero")
    m = len(u) - 1
    w = [u[0] / v0]
    for k in range(1, m + 1):
        acc = u[k]
        for j in range(1, k + 1):
            acc = acc - v[j] * w[k - j]
        w.append(acc / v0)
    return w


def _jexp(u):
    m = len(u) - 1
    w = [np.exp(u[0])]
    for k in range(1, m + 1):
        acc = 0.0
        for j in range(1, k + 1):
            acc = acc + j * u[j] * w[k - j]
        w.append(acc / k)
    return w


def _jln(u):
    u0 = u[0]
    if np.any(np.asarray(u0) <= 0.0):
        raise DomainError("ln of a non-positive value")
    m = len(u) - 1
    w = [np.log(u0)]
    for k in range(1, m + 1):
        acc = k * u[k]
        for j in range(1, k):
            acc = acc - j * w[j] * u[k - j]
        w.append(acc / (k * u0))
    return w


def _jsqrt(u):
    u0 = u[0]
    m = len(u) - 1
    if np.any(np.asarray(u0) < 0.0):
        raise DomainError("sqrt of a negative value")
    if m >= 1 and np.any(np.asarray(u0) == 0.0):
        raise DomainError("derivative of sqrt at zero")
    w0 = np.sqrt(u0)
    w = [w0]
    for k in range(1, m + 1):
        acc = u[k]
        for j in range(1, k):
            acc = acc - w[j] * w[k - j]
        w.append(acc / (2.0 * w0))
    return w


def _jcircular(u, hyperbolic):
    m = len(u) - 1
    if hyperbolic:
        s, c, sign = [np.sinh(u[0])], [np.cosh(u[0])], 1.0
    else:
        s, c, sign = [np.sin(u[0])], [np.cos(u[0])], -1.0
    for k in range(1, m + 1):
        sa = 0.0
        ca = 0.0
        for j in range(1, k + 1):
            sa = sa + j * u[j] * c[k - j]
            ca = ca + j * u[j] * s[k - j]
        s.append(sa / k)
        c.append(sign * ca / k)
    return s, c


def _jpow_int(u, n):
    # binary exponentiation over jets, exact for zero bases
    result = None
    base = u
    e = n
    while e:
        if e & 1:
            result = base if result is None else _jmul(result, base)
        e >>= 1
        if e:
            base = _jmul(base, base)
    return result


def _jpow(u, alpha):
    m = len(u) - 1
    if float(alpha).is_integer():
        n = int(alpha)
        if n == 0:
            return _jconst(1.0, m)
        if n > 0:
            return _jpow_int(u, n)
        return _jdiv(_jconst(1.0, m), _jpow_int(u, -n))
    u0 = u[0]
    if np.any(np.asarray(u0) <= 0.0):
        raise DomainError("fractional power of a non-positive base")
    w = [u0 ** alpha]
    for k in range(1, m + 1):
        acc = 0.0
        for j in range(1, k + 1):
            acc = acc + alpha * j * u[j] * w[k - j]
        for j in range(1, k):
            acc = acc - j * w[j] * u[k - j]
        w.append(acc / (k * u0))
    return w


def _jet(node, t0, m):
    op = node[0]
    if op == "num":
        return _jconst(node[1], m)
    if op == "t":
        w = [t0] + [0.0] * m
        if m >= 1:
            w[1] = 1.0
        return w
    if op == "neg":
        return _jneg(_jet(node[1], t0, m))
    if op == "+":
        return _jadd(_jet(node[1], t0, m), _jet(node[2], t0, m))
    if op == "-":
        return _jsub(_jet(node[1], t0, m), _jet(node[2], t0, m))
    if op == "*":
        return _jmul(_jet(node[1], t0, m), _jet(node[2], t0, m))
    if op == "/":
        return _jdiv(_jet(node[1], t0, m), _jet(node[2], t0, m))
    if op == "pow":
        return _jpow(_jet(node[1], t0, m), node[2])
    if op == "exp":
        return _jexp(_jet(node[1], t0, m))
    if op == "ln":
        return _jln(_jet(node[1], t0, m))
    if op == "sqrt":
        return _jsqrt(_jet(node[1], t0, m))
    if op == "sin":
        return _jcircular(_jet(node[1], t0, m), False)[0]
    if op == "cos":
        return _jcircular(_jet(node[1], t0, m), False)[1]
    if op == "sinh":
        return _jcircular(_jet(node[1], t0, m), True)[0]
    if op == "cosh":
        return _jcircular(_jet(node[1], t0, m), True)[1]
    raise AssertionError(f"unhandled node {op!r}")


@dataclass(frozen=True)
class TaylorJet:
    """Taylor coefficients ``c_k = f^(k)(center)/k!`` up to a requested order."""

    center: float
    coefficients: tuple

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1

    def derivative(self, k: int) -> float:
        return self.coefficients[k] * math.factorial(k)


@dataclass(frozen=True)
class ExprFunction:
    """A parsed expression in the variable ``t``.

    Instances are hashable and compare by structure, so they can key caches.
    """

    ast: tuple
    source: str

    def __call__(self, t):
        arr, coeffs = self._coefficients(t, 0)
        return self._shaped(arr, coeffs[0], 1.0)

    def deriv(self, t, k: int = 1):
        """k-th derivative at t (scalar or array), k! * c_k of the local jet."""
        arr, coeffs = self._coefficients(t, k)
        return self._shaped(arr, coeffs[k], math.factorial(k))

    def taylor(self, t0: float, order: int) -> TaylorJet:
        arr, coeffs = self._coefficients(t0, order)
        if arr.ndim != 0:
            raise TypeError("taylor expansion needs a scalar center")
        return TaylorJet(
            center=float(arr),
            coefficients=tuple(float(np.asarray(c)) for c in coeffs),
        )

    def _coefficients(self, t, order):
        if order < 0:
            raise ValueError("derivative order must be non-negative")
        if order > MAX_ORDER:
            raise OrderOverflowError(
                f"order {order} exceeds the cap of {MAX_ORDER}"
            )
        arr = np.asarray(t, dtype=float)
        if not np.all(np.isfinite(arr)):
            raise DomainError("non-finite evaluation point")
        t0 = float(arr) if arr.ndim == 0 else arr
        return arr, _jet(self.ast, t0, order)

    @staticmethod
    def _shaped(arr, coeff, factor):
        out = np.asarray(coeff, dtype=float) * factor
        if arr.ndim == 0:
            return float(out)
        if out.shape != arr.shape:
            out = np.broadcast_to(out, arr.shape).copy()
        return out


def parse(text: str) -> ExprFunction:
    """Parse expression text; raises ExprSyntaxError with an offset on failure."""
    if not text or not text.strip():
        raise ExprSyntaxError("empty expression", 0)
    ast = _Parser(text).parse()
    return ExprFunction(ast=ast, source=text)


def taylor(fn: ExprFunction, t0: float, order: int) -> TaylorJet:
    return fn.taylor(t0, order)


def deriv(fn: ExprFunction, t, k: int = 1):
    return fn.deriv(t, k)
