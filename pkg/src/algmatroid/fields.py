"""Exact coefficient fields: the rationals and small finite fields GF(p^k).

Rationals are backed by ``gmpy2.mpq``; finite field elements are instances of
:class:`FFElement`, an immutable wrapper around an integer code.  Both support
the ordinary Python arithmetic operators, which is all the polynomial layer
relies on.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

import gmpy2

MPQ = type(gmpy2.mpq())

__all__ = [
    "FieldError",
    "Field",
    "Rationals",
    "FiniteField",
    "FFElement",
    "QQ",
    "GF",
    "is_prime",
]


class FieldError(ValueError):
    """Invalid field construction or a literal that does not live in the field."""


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    return bool(gmpy2.is_prime(p, 40))


class Field:
    """Common interface of coefficient fields."""

    characteristic: int
    order: int | None
    generator_name: str | None = None

    def __call__(self, value):
        raise NotImplementedError

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def random_element(self, rng: random.Random, window: int):
        raise NotImplementedError

    def format(self, c) -> str:
        raise NotImplementedError

    def is_finite(self) -> bool:
        return self.order is not None


class Rationals(Field):
    characteristic = 0
    order = None
    generator_name = None

    def __call__(self, value):
        if isinstance(value, FFElement):
            raise FieldError(f"{value!r} is not a rational number")
        if isinstance(value, Fraction):
            return gmpy2.mpq(value.numerator, value.denominator)
        return gmpy2.mpq(value)

    def random_element(self, rng, window):
        return gmpy2.mpq(rng.randint(-window, window))

    def format(self, c) -> str:
        if c.denominator == 1:
            return str(c.numerator)
        return f"{c.numerator}/{c.denominator}"

    def spec(self) -> str:
        return "QQ"

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("QQ")

    def __reduce__(self):
        return (Rationals, ())


QQ = Rationals()


class FFElement:
    """Element of a :class:`FiniteField`, stored as an integer code.

    For GF(p) the code is the residue; for GF(p^k) it is the base-p encoding of
    the coefficient vector of the representative polynomial in the generator.
    """

    __slots__ = ("v", "F")

    def __init__(self, v: int, F: "FiniteField"):
        self.v = v
        self.F = F

    def _coerce(self, other):
        if isinstance(other, FFElement):
            if other.F is not self.F and other.F != self.F:
                raise FieldError("cannot mix elements of different fields")
            return other.v
        if isinstance(other, int):
            return self.F(other).v
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FFElement(self.F._add(self.v, o), self.F)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FFElement(self.F._add(self.v, self.F._neg(o)), self.F)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FFElement(self.F._add(o, self.F._neg(self.v)), self.F)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FFElement(self.F._mul(self.v, o), self.F)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FFElement(self.F._mul(self.v, self.F._inv(o)), self.F)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FFElement(self.F._mul(o, self.F._inv(self.v)), self.F)

    def __neg__(self):
        return FFElement(self.F._neg(self.v), self.F)

    def __pos__(self):
        return self

    def __pow__(self, e: int):
        F = self.F
        if e < 0:
            return FFElement(F._inv(self.v), F) ** (-e)
        r, b = F._one, self.v
        while e:
            if e & 1:
                r = F._mul(r, b)
            b = F._mul(b, b)
            e >>= 1
        return FFElement(r, F)

    def __bool__(self):
        return self.v != 0

    def __eq__(self, other):
        if isinstance(other, FFElement):
            return self.v == other.v and (self.F is other.F or self.F == other.F)
        if isinstance(other, int):
            return self.v == self.F(other).v
        return NotImplemented

    def __hash__(self):
        return hash((self.v, self.F.order))

    def __repr__(self):
        return self.F.format(self)

    def __reduce__(self):
        return (FFElement, (self.v, self.F))


class FiniteField(Field):
    """GF(p) or GF(p^k) = GF(p)[g]/(modulus).

    ``modulus`` is the list of coefficients (low degree first) of a monic
    irreducible polynomial over GF(p).  Irreducibility is checked by trial
    division by every monic polynomial of degree at most k/2, which is
    only reasonable for the tiny extensions this package targets.
    """

    # full add/mul tables below this order
    _TABLE_LIMIT = 256

    def __init__(self, p: int, modulus: list[int] | None = None, generator_name: str | None = None):
        if not is_prime(p):
            raise FieldError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        if modulus is None or len(modulus) <= 2:
            self.k = 1
            self.modulus = None
            self.generator_name = None
        else:
            mod = [c % p for c in modulus]
            while mod and mod[-1] == 0:
                mod.pop()
            if len(mod) < 2:
                raise FieldError("modulus must have positive degree")
            inv_lead = pow(mod[-1], -1, p)
            mod = [(c * inv_lead) % p for c in mod]
            if not _is_irreducible_mod_p(mod, p):
                raise FieldError(f"modulus {mod} is reducible over GF({p})")
            self.modulus = tuple(mod)
            self.k = len(mod) - 1
            self.generator_name = generator_name or "L"
        self.order = p ** self.k
        self._one = 1
        self._build_tables()

    # -- internal integer-code arithmetic ---------------------------------
    def _digits(self, v):
        p = self.p
        out = []
        for _ in range(self.k):
            out.append(v % p)
            v //= p
        return out

    def _undigits(self, ds):
        v = 0
        for d in reversed(ds):
            v = v * self.p + d
        return v

    def _slow_mul(self, a, b):
        p, k = self.p, self.k
        if k == 1:
            return (a * b) % p
        da, db = self._digits(a), self._digits(b)
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % p
        mod = self.modulus
        for d in range(len(prod) - 1, k - 1, -1):
            c = prod[d]
            if c:
                for i in range(k + 1):
                    prod[d - k + i] = (prod[d - k + i] - c * mod[i]) % p
        return self._undigits(prod[:k])

    def _slow_add(self, a, b):
        if self.k == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        return self._undigits([(x + y) % self.p for x, y in zip(self._digits(a), self._digits(b))])

    def _slow_neg(self, a):
        if self.k == 1:
            return (-a) % self.p
        if self.p == 2:
            return a
        return self._undigits([(-x) % self.p for x in self._digits(a)])

    def _build_tables(self):
        q = self.order
        if self.k == 1:
            p = self.p
            self._add = lambda a, b: (a + b) % p
            self._neg = lambda a: (-a) % p
            self._mul = lambda a, b: (a * b) % p

            def inv(a):
                if a == 0:
                    raise ZeroDivisionError("division by zero in GF(%d)" % p)
                return pow(a, -1, p)

            self._inv = inv
            return
        if q > self._TABLE_LIMIT:
            self._add, self._neg, self._mul = self._slow_add, self._slow_neg, self._slow_mul

            def inv(a):
                if a == 0:
                    raise ZeroDivisionError("division by zero in GF(%d)" % q)
                return self._pow_code(a, q - 2)

            self._inv = inv
            return
        add = [[self._slow_add(a, b) for b in range(q)] for a in range(q)]
        mul = [[self._slow_mul(a, b) for b in range(q)] for a in range(q)]
        neg = [self._slow_neg(a) for a in range(q)]
        invt = [0] * q
        for a in range(1, q):
            for b in range(1, q):
                if mul[a][b] == 1:
                    invt[a] = b
                    break
        self._add = lambda a, b: add[a][b]
        self._mul = lambda a, b: mul[a][b]
        self._neg = neg.__getitem__

        def inv(a):
            if a == 0:
                raise ZeroDivisionError("division by zero in GF(%d)" % q)
            return invt[a]

        self._inv = inv

    def _pow_code(self, a, e):
        r = 1
        while e:
            if e & 1:
                r = self._mul(r, a)
            a = self._mul(a, a)
            e >>= 1
        return r

    # -- public -------------------------------------------------------------
    def __call__(self, value):
        if isinstance(value, FFElement):
            if value.F != self:
                raise FieldError("element of a different field")
            return value
        if isinstance(value, (Fraction, MPQ)):
            num, den = int(value.numerator), int(value.denominator)
            if den % self.p == 0:
                raise FieldError(f"{value} is not defined in GF({self.order})")
            return FFElement(num % self.p, self) / FFElement(den % self.p, self)
        return FFElement(int(value) % self.p, self)

    @property
    def gen(self) -> FFElement:
        if self.k == 1:
            raise FieldError("prime field has no extension generator")
        return FFElement(self.p, self)

    def elements(self):
        return [FFElement(v, self) for v in range(self.order)]

    def random_element(self, rng, window=None):
        return FFElement(rng.randrange(self.order), self)

    def format(self, c) -> str:
        if self.k == 1:
            return str(c.v)
        ds = self._digits(c.v)
        parts = []
        g = self.generator_name
        for i in range(self.k - 1, -1, -1):
            d = ds[i]
            if not d:
                continue
            if i == 0:
                parts.append(str(d))
            else:
                mono = g if i == 1 else f"{g}^{i}"
                parts.append(mono if d == 1 else f"{d}*{mono}")
        if not parts:
            return "0"
        return "+".join(parts)

    def spec(self) -> str:
        if self.k == 1:
            return f"GF({self.p})"
        g = self.generator_name
        terms = []
        for i in range(self.k, -1, -1):
            c = self.modulus[i]
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                mono = g if i == 1 else f"{g}^{i}"
                terms.append(mono if c == 1 else f"{c}*{mono}")
        return f"GF({self.order}, {g}, {'+'.join(terms)})"

    def __repr__(self):
        return self.spec()

    def __eq__(self, other):
        return (
            isinstance(other, FiniteField)
            and other.p == self.p
            and other.modulus == self.modulus
            and other.generator_name == self.generator_name
        )

    def __hash__(self):
        return hash(("GF", self.p, self.modulus, self.generator_name))

    def __reduce__(self):
        return (GF, (self.p, list(self.modulus) if self.modulus else None, self.generator_name))


def _poly_mod_p(a, b, p):
    """Remainder of a by monic b over GF(p), coefficient lists low-first."""
    a = list(a)
    db = len(b) - 1
    for d in range(len(a) - 1, db - 1, -1):
        c = a[d] % p
        if c:
            for i in range(db + 1):
                a[d - db + i] = (a[d - db + i] - c * b[i]) % p
    r = [x % p for x in a[:db]]
    while r and r[-1] == 0:
        r.pop()
    return r


def _is_irreducible_mod_p(mod, p) -> bool:
    deg = len(mod) - 1
    if deg == 1:
        return True
    for d in range(1, deg // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            cand = list(low) + [1]
            if not _poly_mod_p(mod, cand, p):
                return False
    return True


_FIELD_CACHE: dict = {}


def GF(q_or_p: int, modulus: list[int] | None = None, generator_name: str | None = None) -> FiniteField:
    """Construct (and cache) a finite field.

    ``GF(2)`` is the prime field; ``GF(2, [1, 1, 1], "L")`` is GF(4) with
    ``L^2 + L + 1 = 0``.  For a prime power q without explicit modulus the
    first irreducible monic polynomial in lexicographic order is used.
    """
    p = q_or_p
    if modulus is None and not is_prime(q_or_p):
        # prime power with default modulus
        for cand in range(2, q_or_p + 1):
            if is_prime(cand):
                k, r = 0, q_or_p
                while r % cand == 0:
                    r //= cand
                    k += 1
                if r == 1:
                    p = cand
                    break
        else:
            raise FieldError(f"{q_or_p} is not a prime power")
        if r != 1:
            raise FieldError(f"{q_or_p} is not a prime power")
        for low in itertools.product(range(p), repeat=k):
            cand_mod = list(reversed(low)) + [1]
            if cand_mod[0] != 0 and _is_irreducible_mod_p(cand_mod, p):
                modulus = cand_mod
                break
    key = (p, tuple(modulus) if modulus else None, generator_name if modulus else None)
    if key not in _FIELD_CACHE:
        _FIELD_CACHE[key] = FiniteField(p, modulus, generator_name)
    return _FIELD_CACHE[key]
