"""Exact coefficient fields, sparse multivariate polynomials and monomial orders.

Rational coefficients are ``gmpy2.mpq`` values (falling back to
:class:`fractions.Fraction`); prime field coefficients are plain ``int`` in
``range(p)``.  A polynomial is an immutable mapping from exponent tuples to
nonzero coefficients, kept in descending monomial order.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType

from .errors import (
    LengthMismatch,
    MalformedTerm,
    RingMismatch,
    UnknownVariable,
    ZeroCharacteristicOverflow,
)

try:
    from gmpy2 import mpq as _rational
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    _rational = Fraction

ORDERS = ("grevlex", "lex")


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class Field:
    """The rationals (``characteristic == 0``) or a prime field GF(p)."""

    characteristic: int = 0

    def __post_init__(self):
        p = self.characteristic
        if p != 0 and not (_is_prime(p) and p < 2**31):
            raise ValueError(f"prime field needs a prime 2 <= p < 2^31, got {p}")

    @property
    def is_rational(self) -> bool:
        return self.characteristic == 0

    def __str__(self):
        return "Q" if self.characteristic == 0 else f"F{self.characteristic}"

    def convert(self, value):
        """Map an int, Fraction or mpq into the field."""
        p = self.characteristic
        if p == 0:
            return _rational(value)
        if isinstance(value, int):
            return value % p
        num, den = int(value.numerator), int(value.denominator)
        if den % p == 0:
            raise ZeroCharacteristicOverflow(f"{value} has no image in F{p}")
        return num * pow(den, -1, p) % p

    def inv(self, c):
        if self.characteristic == 0:
            return 1 / c
        return pow(c, -1, self.characteristic)

    def reduce(self, c):
        p = self.characteristic
        return c % p if p else c


QQ = Field(0)


def GF(p: int) -> Field:
    return Field(p)


def monomial_key(exp: tuple, order: str = "grevlex"):
    """Sort key realising the monomial order: larger key means larger monomial."""
    if order == "grevlex":
        return (sum(exp), tuple(-e for e in reversed(exp)))
    if order == "lex":
        return tuple(exp)
    raise ValueError(f"unknown monomial order {order!r}")


def monomial_cmp(a, b, order: str = "grevlex") -> int:
    """Three-way comparison of exponent vectors: -1, 0 or 1."""
    if len(a) != len(b):
        raise LengthMismatch(f"exponent vectors of lengths {len(a)} and {len(b)}")
    ka, kb = monomial_key(tuple(a), order), monomial_key(tuple(b), order)
    return (ka > kb) - (ka < kb)


@dataclass(frozen=True)
class PolyRing:
    variables: tuple
    field: Field = QQ
    order: str = "grevlex"

    def __post_init__(self):
        names = tuple(self.variables)
        object.__setattr__(self, "variables", names)
        if any(not isinstance(v, str) or not v for v in names):
            raise ValueError("variable names must be nonempty strings")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        if self.order not in ORDERS:
            raise ValueError(f"unknown monomial order {self.order!r}")

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def __str__(self):
        return f"{self.field}[{','.join(self.variables)}]"

    def key(self, exp):
        return monomial_key(exp, self.order)

    @property
    def zero(self) -> Poly:
        return Poly(self, {})

    @property
    def one(self) -> Poly:
        return self.constant(1)

    def constant(self, c) -> Poly:
        return Poly(self, {(0,) * self.nvars: c})

    def monomial(self, exp, coeff=1) -> Poly:
        return Poly(self, {tuple(exp): coeff})

    @property
    def gens(self) -> tuple:
        n = self.nvars
        return tuple(
            self.monomial(tuple(int(i == j) for j in range(n))) for i in range(n)
        )

    def gen(self, name: str) -> Poly:
        try:
            return self.gens[self.variables.index(name)]
        except ValueError:
            raise UnknownVariable(name) from None

    def __call__(self, text) -> Poly:
        if isinstance(text, Poly):
            if text.ring != self:
                raise RingMismatch(f"{text.ring} vs {self}")
            return text
        if isinstance(text, str):
            return parse_poly(text, self)
        return self.constant(text)


class Poly:
    """Immutable sparse polynomial; ``terms`` maps exponent tuples to coefficients."""

    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring: PolyRing, terms, *, _clean=False):
        self.ring = ring
        if not _clean:
            field, n = ring.field, ring.nvars
            acc = {}
            for exp, c in terms.items():
                exp = tuple(int(e) for e in exp)
                if len(exp) != n or any(e < 0 for e in exp):
                    raise MalformedTerm(f"bad exponent vector {exp} for {ring}")
                c = field.convert(c)
                acc[exp] = acc.get(exp, 0) + c
            terms = {e: field.reduce(c) for e, c in acc.items()}
            terms = {e: c for e, c in terms.items() if c}
        key = ring.key
        self._terms = dict(sorted(terms.items(), key=lambda t: key(t[0]), reverse=True))
        self._hash = None

    @classmethod
    def _raw(cls, ring, terms):
        return cls(ring, terms, _clean=True)

    @property
    def terms(self):
        return MappingProxyType(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    @property
    def lead_exponent(self):
        return next(iter(self._terms))

    @property
    def lead_coeff(self):
        return next(iter(self._terms.values()))

    def total_degree(self) -> int:
        return max((sum(e) for e in self._terms), default=-1)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def constant_value(self):
        return self._terms.get((0,) * self.ring.nvars, self.ring.field.convert(0))

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self._terms}) <= 1

    def monic(self) -> Poly:
        if not self._terms:
            return self
        inv = self.ring.field.inv(self.lead_coeff)
        return self._scaled(inv)

    def _scaled(self, c) -> Poly:
        red = self.ring.field.reduce
        return Poly._raw(self.ring, {e: red(v * c) for e, v in self._terms.items()})

    def evaluate(self, point):
        """Evaluate at a point given as a sequence of field elements."""
        field = self.ring.field
        total = field.convert(0)
        for exp, c in self._terms.items():
            v = c
            for x, e in zip(point, exp):
                if e:
                    v = v * x**e
            total = total + v
        return field.reduce(total)

    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise RingMismatch(f"{self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, Fraction)) or type(other) is _rational:
            return self.ring.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        red = self.ring.field.reduce
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = red(out.get(e, 0) + c)
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Poly._raw(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        red = self.ring.field.reduce
        return Poly._raw(self.ring, {e: red(-c) for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        red = self.ring.field.reduce
        out = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        out = {e: red(c) for e, c in out.items()}
        return Poly._raw(self.ring, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative int")
        result, base = self.ring.one, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring == other.ring and self._terms == other._terms
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._terms.items())))
        return self._hash

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Poly({format_poly(self)!r}, {self.ring})"


def poly_arith(a: Poly, b: Poly, op: str) -> Poly:
    """Exact ``a op b`` for ``op`` in ``{"add", "sub", "mul"}``."""
    if a.ring != b.ring:
        raise RingMismatch(f"{a.ring} vs {b.ring}")
    op = op.lower()
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def _format_coeff(c, field: Field) -> str:
    if field.characteristic:
        return str(int(c))
    num, den = int(c.numerator), int(c.denominator)
    return str(num) if den == 1 else f"{num}/{den}"


def format_poly(p: Poly) -> str:
    """Render in the grammar accepted by :func:`parse_poly`."""
    if not p._terms:
        return "0"
    names = p.ring.variables
    field = p.ring.field
    pieces = []
    for exp, c in p._terms.items():
        factors = [
            name if e == 1 else f"{name}^{e}" for name, e in zip(names, exp) if e
        ]
        if field.is_rational and c < 0:
            sign, mag = "-", -c
        else:
            sign, mag = "+", c
        text = _format_coeff(mag, field)
        if factors:
            body = "*".join(factors) if text == "1" else text + "*" + "*".join(factors)
        else:
            body = text
        pieces.append((sign, body))
    first_sign, first = pieces[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")


def _tokenize(text: str):
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # only trailing whitespace left
            break
        num, ident, sym = m.groups()
        if num is not None:
            tokens.append(("num", int(num)))
        elif ident is not None:
            tokens.append(("var", ident))
        else:
            if sym not in "+-*/^":
                raise MalformedTerm(f"unexpected character {sym!r} in {text!r}")
            tokens.append(("op", sym))
        pos = m.end()
    return tokens


def parse_poly(text: str, ring: PolyRing) -> Poly:
    """Parse ``c*x1^e1*... +/- ...`` into a normalized polynomial."""
    tokens = _tokenize(text)
    if not tokens:
        raise MalformedTerm("empty polynomial")
    index = {name: i for i, name in enumerate(ring.variables)}
    n = ring.nvars
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else (None, None)

    def take():
        nonlocal pos
        tok = peek()
        pos += 1
        return tok

    def item():
        # returns (coefficient Fraction, exponent list)
        kind, val = take()
        if kind == "num":
            coeff = Fraction(val)
            if peek() == ("op", "/"):
                take()
                k2, den = take()
                if k2 != "num" or den == 0:
                    raise MalformedTerm(f"bad denominator in {text!r}")
                coeff /= den
            return coeff, [0] * n
        if kind == "var":
            if val not in index:
                raise UnknownVariable(f"{val!r} is not a variable of {ring}")
            exp = [0] * n
            e = 1
            if peek() == ("op", "^"):
                take()
                k2, e = take()
                if k2 != "num":
                    raise MalformedTerm(f"exponent must be a natural number in {text!r}")
            exp[index[val]] = e
            return Fraction(1), exp
        raise MalformedTerm(f"expected coefficient or variable in {text!r}")

    def term():
        sign = 1
        while peek()[0] == "op" and peek()[1] in "+-":
            if take()[1] == "-":
                sign = -sign
        coeff, exp = item()
        while peek() == ("op", "*"):
            take()
            c2, e2 = item()
            coeff *= c2
            exp = [a + b for a, b in zip(exp, e2)]
        return sign * coeff, tuple(exp)

    acc = {}
    c, e = term()
    acc[e] = acc.get(e, 0) + c
    while pos < len(tokens):
        kind, val = peek()
        if kind != "op" or val not in "+-":
            raise MalformedTerm(f"expected '+' or '-' in {text!r}")
        c, e = term()
        acc[e] = acc.get(e, 0) + c
    return Poly(ring, acc)
