"""Sparse multivariate polynomials over exact fields.

A :class:`Polynomial` is an immutable map from exponent tuples to nonzero
coefficients, tagged with the :class:`PolyRing` it lives in.  Arithmetic
between different rings is refused.  The Groebner engine works on its own
packed representation (see :mod:`algmatroid.groebner`) and converts at the
boundary.

Expression grammar accepted by :func:`parse_polynomial` / :func:`parse_rational`::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := power (('*'|'/') power)*
    power  := atom ['^' INTEGER]
    atom   := INTEGER | IDENT | '(' expr ')'

Identifiers are ring variables or the extension-field generator name.
Juxtaposition (``2x``) is rejected; write ``2*x``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field as dc_field
from typing import Iterable, Sequence

from .fields import QQ, FFElement, Field, FieldError, MPQ

__all__ = [
    "MonomialOrder",
    "LEX",
    "GREVLEX",
    "PolyRing",
    "Polynomial",
    "RationalFunction",
    "ParseError",
    "RingMismatchError",
    "parse_polynomial",
    "parse_rational",
    "degree_summaries",
]

MAX_EXPONENT = (1 << 15) - 1


class ParseError(ValueError):
    pass


class RingMismatchError(ValueError):
    pass


# ---------------------------------------------------------------------------
# monomial orders


@dataclass(frozen=True)
class MonomialOrder:
    """lex, grevlex, or a two-block elimination order.

    For ``kind == "elim"`` the variables with indices in ``front`` are compared
    first (grevlex within the block), ties broken by grevlex on the rest.  Any
    polynomial whose leading monomial avoids the front block lies entirely in
    the subring of the back variables.
    """

    kind: str = "grevlex"
    front: tuple[int, ...] = ()

    def __post_init__(self):
        if self.kind not in ("lex", "grevlex", "elim"):
            raise ValueError(f"unknown monomial order {self.kind!r}")

    def key(self, exp: Sequence[int]):
        if self.kind == "lex":
            return tuple(exp)
        if self.kind == "grevlex":
            return (sum(exp),) + tuple(-e for e in reversed(exp))
        fset = set(self.front)
        fe = [exp[i] for i in self.front]
        be = [e for i, e in enumerate(exp) if i not in fset]
        return (sum(fe),) + tuple(-e for e in reversed(fe)) + (sum(be),) + tuple(-e for e in reversed(be))

    @classmethod
    def elimination(cls, front: Iterable[int]) -> "MonomialOrder":
        return cls("elim", tuple(sorted(set(front))))


LEX = MonomialOrder("lex")
GREVLEX = MonomialOrder("grevlex")


# ---------------------------------------------------------------------------
# rings

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


@dataclass(frozen=True)
class PolyRing:
    field: Field
    variables: tuple[str, ...]
    order: MonomialOrder = GREVLEX
    _index: dict = dc_field(default=None, compare=False, hash=False, repr=False)

    def __post_init__(self):
        vs = tuple(self.variables)
        object.__setattr__(self, "variables", vs)
        if len(set(vs)) != len(vs):
            raise ValueError("variable names must be distinct")
        for v in vs:
            if not _IDENT.match(v):
                raise ValueError(f"invalid variable name {v!r}")
            if self.field.generator_name and v == self.field.generator_name:
                raise ValueError(f"variable {v!r} clashes with the field generator name")
        object.__setattr__(self, "_index", {v: i for i, v in enumerate(vs)})

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise ValueError(f"unknown variable {name!r}") from None

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c) -> "Polynomial":
        c = self.field(c) if not _is_coeff(c) else c
        if not c:
            return self.zero()
        return Polynomial(self, {(0,) * self.nvars: c})

    def var(self, name: str) -> "Polynomial":
        i = self.index(name)
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): self.field.one})

    def gens(self) -> list["Polynomial"]:
        return [self.var(v) for v in self.variables]

    def with_order(self, order: MonomialOrder) -> "PolyRing":
        return PolyRing(self.field, self.variables, order)

    def parse(self, text: str) -> "Polynomial":
        return parse_polynomial(text, self)

    def __repr__(self):
        return f"PolyRing({self.field!r}, {list(self.variables)}, {self.order.kind})"

    def __reduce__(self):
        return (PolyRing, (self.field, self.variables, self.order))


def _is_coeff(c) -> bool:
    return isinstance(c, (MPQ, FFElement))


# ---------------------------------------------------------------------------
# polynomials


class Polynomial:
    """Immutable sparse polynomial.  ``terms`` maps exponent tuples to coefficients."""

    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring: PolyRing, terms: dict, _clean: bool = True):
        self.ring = ring
        if _clean:
            n = ring.nvars
            clean = {}
            for e, c in terms.items():
                if c:
                    if len(e) != n:
                        raise ValueError("exponent length does not match ring")
                    clean[tuple(e)] = c
            terms = clean
        self._terms = terms
        self._hash = None

    # -- basic accessors ------------------------------------------------------
    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        """Terms sorted decreasingly by the ring's monomial order."""
        key = self.ring.order.key
        return sorted(self._terms.items(), key=lambda t: key(t[0]), reverse=True)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and not any(next(iter(self._terms))))

    def constant_value(self):
        if not self._terms:
            return self.ring.field.zero
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return next(iter(self._terms.values()))

    def leading_term(self, order: MonomialOrder | None = None):
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        key = (order or self.ring.order).key
        e = max(self._terms, key=key)
        return e, self._terms[e]

    def leading_coefficient(self, order: MonomialOrder | None = None):
        return self.leading_term(order)[1]

    def total_degree(self) -> int:
        if not self._terms:
            return -1
        return max(sum(e) for e in self._terms)

    def degrees(self) -> tuple[int, ...]:
        n = self.ring.nvars
        if not self._terms:
            return (0,) * n
        return tuple(max(e[i] for e in self._terms) for i in range(n))

    def support(self) -> frozenset:
        return frozenset(self._terms)

    def variables_used(self) -> tuple[int, ...]:
        used = set()
        for e in self._terms:
            used.update(i for i, x in enumerate(e) if x)
        return tuple(sorted(used))

    # -- arithmetic ----------------------------------------------------------------
    def _check(self, other: "Polynomial"):
        if other.ring is not self.ring and other.ring != self.ring:
            raise RingMismatchError(f"cannot combine polynomials from {self.ring!r} and {other.ring!r}")

    def _lift(self, other):
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, MPQ, FFElement)):
            return self.ring.constant(self.ring.field(other))
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = out.get(e)
            if v is None:
                out[e] = c
            else:
                v = v + c
                if v:
                    out[e] = v
                else:
                    del out[e]
        return Polynomial(self.ring, out, False)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, {e: -c for e, c in self._terms.items()}, False)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, RationalFunction):
            return NotImplemented
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out: dict = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e)
                out[e] = c1 * c2 if v is None else v + c1 * c2
        return Polynomial(self.ring, {e: c for e, c in out.items() if c}, False)

    __rmul__ = __mul__

    def scale(self, c) -> "Polynomial":
        c = self.ring.field(c) if not _is_coeff(c) else c
        if not c:
            return self.ring.zero()
        return Polynomial(self.ring, {e: v * c for e, v in self._terms.items()}, False)

    def __truediv__(self, other):
        if isinstance(other, Polynomial) and not other.is_constant():
            return RationalFunction(self, other)
        if isinstance(other, Polynomial):
            other = other.constant_value()
        if isinstance(other, RationalFunction):
            return RationalFunction(self * other.den, other.num)
        c = self.ring.field(other) if not _is_coeff(other) else other
        if not c:
            raise ZeroDivisionError("division by zero")
        return self.scale(self.ring.field.one / c)

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        if k > MAX_EXPONENT:
            raise OverflowError("exponent too large")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self._terms == other._terms
        if isinstance(other, (int, MPQ, FFElement)):
            return self._terms == self.ring.constant(other)._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- calculus and evaluation ----------------------------------------------------
    def diff(self, var) -> "Polynomial":
        """Formal partial derivative; in characteristic p, ``e*c`` vanishes when p | e."""
        i = var if isinstance(var, int) else self.ring.index(var)
        if not 0 <= i < self.ring.nvars:
            raise ValueError(f"variable index {i} out of range")
        F = self.ring.field
        out = {}
        for e, c in self._terms.items():
            k = e[i]
            if k:
                v = c * F(k)
                if v:
                    ne = e[:i] + (k - 1,) + e[i + 1 :]
                    out[ne] = v
        return Polynomial(self.ring, out, False)

    def evaluate(self, point: Sequence):
        """Exact value at a point given as a sequence of field elements (or ints)."""
        n = self.ring.nvars
        if len(point) != n:
            raise ValueError(f"point has length {len(point)}, ring has {n} variables")
        F = self.ring.field
        pt = [F(v) if not _is_coeff(v) else v for v in point]
        powers: list[dict] = [dict() for _ in range(n)]
        total = F.zero
        for e, c in self._terms.items():
            term = c
            for i, k in enumerate(e):
                if k:
                    p = powers[i].get(k)
                    if p is None:
                        p = pt[i] ** k
                        powers[i][k] = p
                    term = term * p
            total = total + term
        return total

    def compose(self, values: Sequence, target=None):
        """Substitute ring elements (Polynomials or RationalFunctions) for the variables."""
        n = self.ring.nvars
        if len(values) != n:
            raise ValueError("need one value per variable")
        powers: list[dict] = [dict() for _ in range(n)]
        total = target
        for e, c in self.items():
            term = None
            for i, k in enumerate(e):
                if k:
                    p = powers[i].get(k)
                    if p is None:
                        p = values[i] ** k
                        powers[i][k] = p
                    term = p if term is None else term * p
            if term is None:
                term = c
            else:
                term = term * c if not isinstance(term, (Polynomial, RationalFunction)) else _scale_any(term, c)
            total = term if total is None else total + term
        if total is None:
            if target is not None:
                return target
            raise ValueError("cannot infer target ring of an empty substitution")
        return total

    def rename(self, ring: PolyRing, index_map: Sequence[int]) -> "Polynomial":
        """Move into ``ring``; variable i of self becomes variable ``index_map[i]``.

        ``index_map[i]`` may be ``None`` for variables absent from self.
        """
        if ring.field != self.ring.field:
            raise RingMismatchError("rename cannot change the coefficient field")
        m = ring.nvars
        out = {}
        for e, c in self._terms.items():
            ne = [0] * m
            for i, k in enumerate(e):
                if k:
                    j = index_map[i]
                    if j is None:
                        raise ValueError(f"variable {self.ring.variables[i]} has no image in target ring")
                    ne[j] += k
            out[tuple(ne)] = c
        return Polynomial(ring, out, False)

    def to_ring(self, ring: PolyRing) -> "Polynomial":
        """Move into a ring sharing variable names (by name)."""
        if ring == self.ring:
            return self
        idx = []
        used = set(self.variables_used())
        for i, v in enumerate(self.ring.variables):
            if v in ring._index:
                idx.append(ring._index[v])
            elif i in used:
                raise ValueError(f"variable {v} not present in target ring")
            else:
                idx.append(None)
        return self.rename(ring, idx)

    # -- normalization ----------------------------------------------------------
    def monic(self, order: MonomialOrder | None = None) -> "Polynomial":
        if not self._terms:
            return self
        lc = self.leading_coefficient(order)
        return self.scale(self.ring.field.one / lc)

    def normalized(self, order: MonomialOrder | None = None) -> "Polynomial":
        """Canonical associate: primitive integral with positive leading coefficient over QQ, monic otherwise.

        ``order`` defaults to lex on the ring variables.
        """
        if not self._terms:
            return self
        order = order or LEX
        if self.ring.field.characteristic != 0:
            return self.monic(order)
        den = 1
        for c in self._terms.values():
            den = den * int(c.denominator) // math.gcd(den, int(c.denominator))
        nums = [int(c * den) for c in self._terms.values()]
        g = 0
        for x in nums:
            g = math.gcd(g, x)
        f = self.scale(MPQ(den, g))
        if f.leading_coefficient(order) < 0:
            f = -f
        return f

    # -- printing -------------------------------------------------------------------
    def to_str(self) -> str:
        if not self._terms:
            return "0"
        F = self.ring.field
        names = self.ring.variables
        out = []
        for e, c in self.items():
            mono = "*".join(
                names[i] if k == 1 else f"{names[i]}^{k}" for i, k in enumerate(e) if k
            )
            neg = False
            if F.characteristic == 0 and c < 0:
                neg, c = True, -c
            cs = F.format(c)
            if not mono:
                body = cs
            elif cs == "1":
                body = mono
            else:
                if "+" in cs or "-" in cs[1:]:
                    cs = f"({cs})"
                body = f"{cs}*{mono}"
            if not out:
                out.append(("-" if neg else "") + body)
            else:
                out.append((" - " if neg else " + ") + body)
        return "".join(out)

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"Polynomial({self.to_str()!r})"

    def __reduce__(self):
        return (Polynomial, (self.ring, self._terms, False))


def _scale_any(term, c):
    if isinstance(term, Polynomial):
        return term.scale(c)
    return RationalFunction(term.num.scale(c), term.den)


def degree_summaries(f: Polynomial):
    """(total degree, per-variable degree vector, exponent support)."""
    if f.is_zero():
        raise ValueError("degree summaries of the zero polynomial are undefined")
    return f.total_degree(), f.degrees(), f.support()


# ---------------------------------------------------------------------------
# rational functions


class RationalFunction:
    """num/den with den != 0.  Not kept in lowest terms; equality cross-multiplies."""

    __slots__ = ("num", "den")

    def __init__(self, num: Polynomial, den: Polynomial | None = None):
        if den is None:
            den = num.ring.one()
        num._check(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if den.is_constant() and den.constant_value() != num.ring.field.one:
            num = num.scale(num.ring.field.one / den.constant_value())
            den = num.ring.one()
        self.num = num
        self.den = den

    @property
    def ring(self) -> PolyRing:
        return self.num.ring

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def as_polynomial(self) -> Polynomial:
        if not self.is_polynomial():
            raise ValueError("rational function has a nonconstant denominator")
        return self.num

    def _lift(self, other):
        if isinstance(other, RationalFunction):
            self.num._check(other.num)
            return other
        if isinstance(other, Polynomial):
            self.num._check(other)
            return RationalFunction(other)
        if isinstance(other, (int, MPQ, FFElement)):
            return RationalFunction(self.ring.constant(self.ring.field(other)))
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        if self.den == o.den:
            return RationalFunction(self.num + o.num, self.den)
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return RationalFunction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        if o.num.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunction(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o / self

    def __pow__(self, k: int):
        return RationalFunction(self.num ** k, self.den ** k)

    def __eq__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self.num * o.den == o.num * self.den

    def __hash__(self):
        if self.is_polynomial():
            return hash(self.num)
        return hash(("rf", self.num.total_degree(), self.den.total_degree()))

    def diff(self, var) -> "RationalFunction":
        dn, dd = self.num.diff(var), self.den.diff(var)
        if dd.is_zero():
            return RationalFunction(dn, self.den)
        return RationalFunction(dn * self.den - self.num * dd, self.den * self.den)

    def evaluate(self, point):
        d = self.den.evaluate(point)
        if not d:
            raise ZeroDivisionError("denominator vanishes at the point")
        return self.num.evaluate(point) / d

    def to_str(self) -> str:
        if self.is_polynomial():
            return self.num.to_str()
        return f"({self.num.to_str()})/({self.den.to_str()})"

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"RationalFunction({self.to_str()!r})"


# ---------------------------------------------------------------------------
# parsing

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\*\*|[-+*/^()]))")


def _tokenize(text: str):
    pos, out = 0, []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos:pos + 1]!r} at position {pos} in {text!r}")
        num, ident, op = m.groups()
        if num is not None:
            out.append(("num", int(num), m.start(1)))
        elif ident is not None:
            out.append(("id", ident, m.start(2)))
        else:
            out.append(("op", "^" if op == "**" else op, m.start(3)))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text: str, ring: PolyRing):
        self.text = text
        self.ring = ring
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self):
        t = self.peek()
        self.i += 1
        return t

    def fail(self, msg):
        t = self.peek()
        where = t[2] if t else len(self.text)
        raise ParseError(f"{msg} at position {where} in {self.text!r}")

    def parse(self):
        if not self.toks:
            raise ParseError("empty expression")
        v = self.expr()
        if self.peek() is not None:
            t = self.peek()
            if t[0] in ("num", "id") or t[1] == "(":
                self.fail("implicit multiplication is not allowed")
            self.fail(f"unexpected token {t[1]!r}")
        return v

    def expr(self):
        sign = None
        t = self.peek()
        if t and t[0] == "op" and t[1] in "+-":
            self.take()
            sign = t[1]
        v = self.term()
        if sign == "-":
            v = -v
        while True:
            t = self.peek()
            if t and t[0] == "op" and t[1] in "+-":
                self.take()
                w = self.term()
                v = v + w if t[1] == "+" else v - w
            else:
                return v

    def term(self):
        v = self.power()
        while True:
            t = self.peek()
            if t and t[0] == "op" and t[1] in "*/":
                self.take()
                w = self.power()
                if t[1] == "*":
                    v = v * w
                else:
                    v = _divide(v, w, self)
            else:
                return v

    def power(self):
        v = self.atom()
        t = self.peek()
        if t and t[0] == "op" and t[1] == "^":
            self.take()
            sign = 1
            t2 = self.peek()
            if t2 and t2[0] == "op" and t2[1] == "-":
                self.take()
                sign = -1
            t2 = self.take()
            if t2 is None or t2[0] != "num":
                self.i -= 1
                self.fail("exponent must be a non-negative integer literal")
            if sign < 0:
                self.fail("negative exponents are not allowed")
            if t2[1] > MAX_EXPONENT:
                raise ParseError(f"exponent {t2[1]} exceeds the supported maximum {MAX_EXPONENT}")
            v = v ** t2[1]
        return v

    def atom(self):
        t = self.take()
        ring = self.ring
        if t is None:
            self.i -= 1
            self.fail("unexpected end of expression")
        kind, val, _ = t
        if kind == "num":
            return ring.constant(ring.field(val))
        if kind == "id":
            if val in ring._index:
                return ring.var(val)
            F = ring.field
            if F.generator_name and val == F.generator_name:
                return ring.constant(F.gen)
            self.i -= 1
            self.fail(f"unknown variable {val!r}")
        if val == "(":
            v = self.expr()
            t = self.take()
            if t is None or t[1] != ")":
                self.i -= 1
                self.fail("missing closing parenthesis")
            return v
        self.i -= 1
        self.fail(f"unexpected token {val!r}")


def _divide(v, w, parser):
    if isinstance(w, Polynomial) and w.is_constant():
        c = w.constant_value()
        if not c:
            raise ParseError(f"division by zero (literal not invertible in {parser.ring.field!r}) in {parser.text!r}")
        return v.scale(parser.ring.field.one / c) if isinstance(v, Polynomial) else v / w
    if isinstance(v, Polynomial):
        v = RationalFunction(v)
    if isinstance(w, RationalFunction) and w.num.is_zero() or isinstance(w, Polynomial) and w.is_zero():
        raise ParseError(f"division by zero in {parser.text!r}")
    return v / w


def parse_rational(text: str, ring: PolyRing) -> RationalFunction:
    v = _Parser(text, ring).parse()
    return v if isinstance(v, RationalFunction) else RationalFunction(v)


def parse_polynomial(text: str, ring: PolyRing) -> Polynomial:
    try:
        v = _Parser(text, ring).parse()
    except FieldError as exc:
        raise ParseError(f"literal not in field: {exc}") from exc
    if isinstance(v, RationalFunction):
        if not v.is_polynomial():
            raise ParseError(f"{text!r} is not a polynomial (division by a nonconstant)")
        v = v.num
    return v
