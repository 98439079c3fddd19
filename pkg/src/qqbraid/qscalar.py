"""Exact arithmetic in the field Q(q) of rational functions in q.

Every coefficient in this package is a Scalar: a reduced fraction of two
integer polynomials in q.  The canonical form (coprime parts, denominator
with positive leading coefficient, overall integer content 1) is unique,
so equality is a structural comparison and identities can be checked with
zero tolerance.

Polynomials are dense tuples of ints, ascending degree, no trailing zeros;
the empty tuple is the zero polynomial.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction


class ScalarError(ArithmeticError):
    """Domain error in Q(q) arithmetic."""


class ScalarDivisionError(ScalarError):
    """Division by the zero scalar."""


class ScalarPoleError(ScalarError):
    """Evaluation at a pole."""


# ---------------------------------------------------------------------------
# integer polynomial helpers


def _trim(cs):
    n = len(cs)
    while n and cs[n - 1] == 0:
        n -= 1
    return tuple(cs[:n])


P_ZERO = ()
P_ONE = (1,)
P_Q = (0, 1)


def p_add(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return _trim(out)


def p_neg(a):
    return tuple(-c for c in a)


def p_sub(a, b):
    return p_add(a, p_neg(b))


def p_mul(a, b):
    if not a or not b:
        return P_ZERO
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
    return _trim(out)


def p_mul_int(a, c):
    if c == 0:
        return P_ZERO
    return tuple(x * c for x in a)


def p_shift(a, k):
    """Multiply by q**k (k >= 0)."""
    if not a:
        return P_ZERO
    return (0,) * k + a


def p_low(a):
    """Valuation at q = 0 (lowest nonzero degree)."""
    for i, c in enumerate(a):
        if c:
            return i
    raise ValueError("zero polynomial has no valuation")


def p_content(a):
    g = 0
    for c in a:
        g = math.gcd(g, c)
        if g == 1:
            return 1
    return g


def p_div_exact(a, b):
    """Exact quotient a // b in Z[q]; raises if not divisible."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if not a:
        return P_ZERO
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    out = [0] * (len(a) - db)
    for k in range(len(a) - 1, db - 1, -1):
        c = a[k]
        if c == 0:
            continue
        if c % lb:
            raise ArithmeticError("inexact polynomial division")
        f = c // lb
        out[k - db] = f
        for j, cb in enumerate(b):
            a[k - db + j] -= f * cb
    if any(a):
        raise ArithmeticError("inexact polynomial division")
    return _trim(out)


def _p_prem(a, b):
    """Pseudo-remainder of a by b (fraction-free)."""
    da, db = len(a) - 1, len(b) - 1
    lb = b[-1]
    r = list(a)
    for k in range(da, db - 1, -1):
        lead = r[k]
        if lead:
            for i in range(len(r)):
                r[i] *= lb
            for j, cb in enumerate(b):
                r[k - db + j] -= lead * cb
        # r[k] is now zero whether or not lead was
    return _trim(r[:db] if db else [])


def _p_primitive(a):
    c = p_content(a)
    if c > 1:
        a = tuple(x // c for x in a)
    if a and a[-1] < 0:
        a = p_neg(a)
    return a


def p_gcd(a, b):
    """Positive primitive gcd in Z[q] via a pseudo-remainder sequence."""
    if not a:
        return _p_primitive(b)
    if not b:
        return _p_primitive(a)
    ca, cb = p_content(a), p_content(b)
    a, b = _p_primitive(a), _p_primitive(b)
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = _p_prem(a, b)
        a, b = b, _p_primitive(r)
    g = p_mul_int(a, math.gcd(ca, cb))
    return g if g[-1] > 0 else p_neg(g)


def p_eval_one(a):
    return sum(a)


# ---------------------------------------------------------------------------
# scalars


class Scalar:
    """An element of Q(q) in canonical reduced form."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=P_ONE, _canonical=False):
        if not _canonical:
            num, den = _canonicalize(num, den)
        self.num = num
        self.den = den
        self._hash = None

    # -- constructors ------------------------------------------------------

    @staticmethod
    def from_int(c):
        if c == 0:
            return ZERO
        return Scalar((c,), P_ONE, _canonical=True)

    @staticmethod
    def q_power(k):
        """q**k for any integer k."""
        if k >= 0:
            return Scalar(p_shift(P_ONE, k), P_ONE, _canonical=True)
        return Scalar(P_ONE, p_shift(P_ONE, -k), _canonical=True)

    @staticmethod
    def from_fraction(fr):
        fr = Fraction(fr)
        return Scalar((fr.numerator,), (fr.denominator,))

    # -- predicates ---------------------------------------------------------

    def is_zero(self):
        return not self.num

    def __bool__(self):
        return bool(self.num)

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        if self.den == other.den:
            return Scalar(p_add(self.num, other.num), self.den)
        return Scalar(
            p_add(p_mul(self.num, other.den), p_mul(other.num, self.den)),
            p_mul(self.den, other.den),
        )

    def __sub__(self, other):
        if self.den == other.den:
            return Scalar(p_sub(self.num, other.num), self.den)
        return Scalar(
            p_sub(p_mul(self.num, other.den), p_mul(other.num, self.den)),
            p_mul(self.den, other.den),
        )

    def __neg__(self):
        return Scalar(p_neg(self.num), self.den, _canonical=True)

    def __mul__(self, other):
        if not self.num or not other.num:
            return ZERO
        return Scalar(p_mul(self.num, other.num), p_mul(self.den, other.den))

    def __truediv__(self, other):
        if not other.num:
            raise ScalarDivisionError("division by zero scalar")
        if not self.num:
            return ZERO
        return Scalar(p_mul(self.num, other.den), p_mul(self.den, other.num))

    def inv(self):
        return ONE / self

    def __pow__(self, k):
        if k < 0:
            return self.inv() ** (-k)
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- comparison / hashing ------------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, Scalar)
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self):
        h = self._hash
        if h is None:
            h = self._hash = hash((self.num, self.den))
        return h

    # -- evaluation ----------------------------------------------------------

    def eval_at_one(self):
        """Value at q = 1 as a Fraction; raises ScalarPoleError at a pole."""
        d = p_eval_one(self.den)
        if d == 0:
            raise ScalarPoleError("pole at q = 1")
        return Fraction(p_eval_one(self.num), d)

    # -- rendering ------------------------------------------------------------

    def __str__(self):
        ns = poly_str(self.num)
        if self.den == P_ONE:
            return ns
        return "(%s)/(%s)" % (ns, poly_str(self.den))

    def __repr__(self):
        return "Scalar(%s)" % self


def _canonicalize(num, den):
    num, den = _trim(num), _trim(den)
    if not den:
        raise ScalarDivisionError("zero denominator")
    if not num:
        return P_ZERO, P_ONE
    # strip the common power of q first; it is by far the most common factor
    v = min(p_low(num), p_low(den))
    if v:
        num, den = num[v:], den[v:]
    if den == P_ONE:
        return num, den
    if den == (-1,):
        return p_neg(num), P_ONE
    if len(den) == 1:
        g = math.gcd(p_content(num), abs(den[0]))
        d = den[0]
        if d < 0:
            g = -g
        if g != 1:
            num = tuple(c // g for c in num)
            d //= g
        return (num, P_ONE) if d == 1 else (num, (d,))
    g = p_gcd(num, den)
    if g != P_ONE:
        num = p_div_exact(num, g)
        den = p_div_exact(den, g)
    if den[-1] < 0:
        num, den = p_neg(num), p_neg(den)
    return num, den


ZERO = Scalar(P_ZERO, P_ONE, _canonical=True)
ONE = Scalar(P_ONE, P_ONE, _canonical=True)
MINUS_ONE = Scalar((-1,), P_ONE, _canonical=True)
Q = Scalar(P_Q, P_ONE, _canonical=True)
Q_INV = Scalar(P_ONE, P_Q, _canonical=True)


def xi_const():
    """xi = q - q^{-1} = (q^2 - 1)/q."""
    return Scalar((-1, 0, 1), P_Q, _canonical=True)


XI = xi_const()


def sign(k):
    """(-1)**k as a Scalar."""
    return MINUS_ONE if k & 1 else ONE


def arith(op, a, b):
    """Field operation by name; the string form used in reports."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError("unknown op %r" % op)


# ---------------------------------------------------------------------------
# text form: "p(q)" or "(p(q))/(r(q))", round-trip exact


def poly_str(p):
    if not p:
        return "0"
    parts = []
    for k in range(len(p) - 1, -1, -1):
        c = p[k]
        if c == 0:
            continue
        if k == 0:
            body = str(abs(c))
        else:
            qs = "q" if k == 1 else "q^%d" % k
            body = qs if abs(c) == 1 else "%d*%s" % (abs(c), qs)
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append((" - " if c < 0 else " + ") + body)
    return "".join(parts)


_TOKEN = re.compile(r"\s*(\d+|q|\^|\*|\+|\-|/|\(|\))")


def _tokenize(text):
    pos, out = 0, []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ScalarError("bad scalar syntax at %d: %r" % (pos, text[pos:]))
        out.append(m.group(1))
        pos = m.end()
    return out


def _parse_poly(toks, i):
    coeffs = {}
    sign_, first = 1, True
    while i < len(toks) and (toks[i] not in (")",) or first):
        t = toks[i]
        if t == "+":
            sign_, i = 1, i + 1
        elif t == "-":
            sign_, i = -1, i + 1
        elif first and t == ")":
            break
        c, k = 1, 0
        t = toks[i]
        if t.isdigit():
            c = int(t)
            i += 1
            if i < len(toks) and toks[i] == "*":
                i += 1
        if i < len(toks) and toks[i] == "q":
            k = 1
            i += 1
            if i < len(toks) and toks[i] == "^":
                if i + 1 >= len(toks) or not toks[i + 1].isdigit():
                    raise ScalarError("bad exponent")
                k = int(toks[i + 1])
                i += 2
        coeffs[k] = coeffs.get(k, 0) + sign_ * c
        sign_, first = 1, False
        if i < len(toks) and toks[i] in ("+", "-"):
            continue
        break
    if not coeffs:
        raise ScalarError("empty polynomial")
    deg = max(coeffs)
    return _trim([coeffs.get(k, 0) for k in range(deg + 1)]), i


def parse_scalar(text):
    """Inverse of str(): parses "p" and "(p)/(r)" forms."""
    toks = _tokenize(text)
    if not toks:
        raise ScalarError("empty scalar")
    if toks[0] == "(":
        num, i = _parse_poly(toks, 1)
        if i + 1 >= len(toks) or toks[i] != ")" or toks[i + 1] != "/":
            # a parenthesized plain polynomial
            if i < len(toks) and toks[i] == ")" and i + 1 == len(toks):
                return Scalar(num)
            raise ScalarError("expected ')/(' in scalar")
        if toks[i + 2] != "(":
            raise ScalarError("expected '(' after '/'")
        den, j = _parse_poly(toks, i + 3)
        if j >= len(toks) or toks[j] != ")" or j + 1 != len(toks):
            raise ScalarError("trailing junk in scalar")
        return Scalar(num, den)
    if toks[0] == "-" and len(toks) == 1:
        raise ScalarError("lone minus")
    num, i = _parse_poly(toks, 0)
    if i != len(toks):
        raise ScalarError("trailing junk in scalar")
    return Scalar(num)
