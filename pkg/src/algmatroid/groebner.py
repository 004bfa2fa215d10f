"""Buchberger's algorithm and the elimination toolkit built on it.

Internally every polynomial is a dict mapping *packed* monomials to
coefficients.  A packed monomial is a single Python int holding, from the
most significant end, the linear forms that define the monomial order
followed by the raw exponent vector (one guard bit per field).  With that
layout monomial multiplication is integer addition, comparison in the
monomial order is integer comparison, and divisibility is a single masked
subtraction.
"""

from __future__ import annotations

import heapq
import logging
from dataclasses import dataclass, field as dc_field
from typing import Iterable, Sequence

from .polynomial import (
    GREVLEX,
    MonomialOrder,
    PolyRing,
    Polynomial,
    RationalFunction,
    RingMismatchError,
)

__all__ = [
    "Budget",
    "BudgetExceeded",
    "UnitIdealError",
    "DimensionError",
    "IdealPresentation",
    "GroebnerBasis",
    "buchberger",
    "normal_form",
    "eliminate",
    "dimension",
    "height",
    "zero_dim_degree",
    "implicitize",
    "intersect",
    "poly_lcm",
    "poly_gcd",
    "divide_exact",
    "saturate",
]

log = logging.getLogger(__name__)

_WIDTH = 16
_EXP_LIMIT = (1 << (_WIDTH - 1)) - 1


class BudgetExceeded(RuntimeError):
    """A Groebner computation hit its configured resource cap."""


class UnitIdealError(ValueError):
    """The ideal is the whole ring."""


class DimensionError(ValueError):
    """Operation needs a zero-dimensional ideal (or got one it cannot use)."""


@dataclass
class Budget:
    max_pairs: int = 200_000
    max_basis: int = 5_000

    def copy(self) -> "Budget":
        return Budget(self.max_pairs, self.max_basis)


DEFAULT_BUDGET = Budget()


# ---------------------------------------------------------------------------
# packed monomials


class _Packer:
    def __init__(self, nvars: int, order: MonomialOrder):
        n = nvars
        W = _WIDTH
        self.n = n
        self.order = order
        if order.kind == "lex":
            forms: list[list[int]] = []
        elif order.kind == "grevlex":
            forms = _grevlex_forms(list(range(n)), n)
        else:
            front = list(order.front)
            fset = set(front)
            back = [i for i in range(n) if i not in fset]
            forms = _grevlex_forms(front, n) + _grevlex_forms(back, n)
        nf = len(forms)
        # exponent fields: variable 0 most significant (makes lex a plain int compare)
        self.exp_shift = [W * (n - 1 - i) for i in range(n)]
        self.mask = (1 << W) - 1
        self.guard = sum(1 << (W * i + W - 1) for i in range(n))
        self.low_mask = (1 << (W * n)) - 1
        units = []
        for i in range(n):
            v = 1 << self.exp_shift[i]
            for k, form in enumerate(forms):
                if form[i]:
                    v += form[i] << (W * (n + nf - 1 - k))
            units.append(v)
        self.units = units

    def pack(self, exp: Sequence[int]) -> int:
        m = 0
        for e, u in zip(exp, self.units):
            if e:
                if e > _EXP_LIMIT:
                    raise OverflowError("exponent exceeds packed-monomial capacity")
                m += e * u
        return m

    def unpack(self, m: int) -> tuple[int, ...]:
        mask = self.mask
        return tuple((m >> s) & mask for s in self.exp_shift)

    def divides(self, a: int, b: int) -> bool:
        return not ((b - a) & self.guard)

    def lcm(self, a: int, b: int) -> int:
        ea, eb = self.unpack(a), self.unpack(b)
        return self.pack([x if x > y else y for x, y in zip(ea, eb)])

    def coprime(self, a: int, b: int) -> bool:
        ea, eb = self.unpack(a), self.unpack(b)
        return not any(x and y for x, y in zip(ea, eb))

    def degree(self, m: int) -> int:
        return sum(self.unpack(m))

    def support_mask(self, m: int) -> int:
        e = self.unpack(m)
        return sum(1 << i for i, x in enumerate(e) if x)


def _grevlex_forms(block: list[int], n: int) -> list[list[int]]:
    forms = []
    for k in range(len(block), 0, -1):
        f = [0] * n
        for i in block[:k]:
            f[i] = 1
        forms.append(f)
    return forms


_PACKERS: dict = {}


def _packer(n: int, order: MonomialOrder) -> _Packer:
    key = (n, order)
    p = _PACKERS.get(key)
    if p is None:
        p = _Packer(n, order)
        if len(_PACKERS) > 4096:
            _PACKERS.clear()
        _PACKERS[key] = p
    return p


def _to_packed(f: Polynomial, pk: _Packer) -> dict:
    units = pk.units
    out = {}
    for e, c in f._terms.items():
        m = 0
        for x, u in zip(e, units):
            if x:
                m += x * u
        out[m] = c
    return out


def _from_packed(d: dict, pk: _Packer, ring: PolyRing) -> Polynomial:
    return Polynomial(ring, {pk.unpack(m): c for m, c in d.items()}, False)


# ---------------------------------------------------------------------------
# reduction


class _Basis:
    """Monic polynomials in packed form: (lm, tail) with tail sorted decreasingly."""

    def __init__(self, pk: _Packer):
        self.pk = pk
        self.lms: list[int] = []
        self.tails: list[list] = []
        self.active: list[int] = []
        self._cache: dict = {}

    def add(self, d: dict) -> int:
        lm = max(d)
        inv = 1 / d[lm]
        tail = sorted(((m, c * inv) for m, c in d.items() if m != lm), reverse=True)
        self.lms.append(lm)
        self.tails.append(tail)
        return len(self.lms) - 1

    def find(self, m: int, idxs: list[int]):
        guard = self.pk.guard
        lms = self.lms
        for i in idxs:
            if not ((m - lms[i]) & guard):
                return i
        return None


def _reduce(d: dict, basis: _Basis, idxs: list[int], full: bool = True) -> dict:
    """Normal form of ``d`` (packed dict) against basis members ``idxs``."""
    if not d:
        return {}
    p = dict(d)
    heap = [-m for m in p]
    heapq.heapify(heap)
    rem = {}
    lms, tails = basis.lms, basis.tails
    guard = basis.pk.guard
    pop, push = heapq.heappop, heapq.heappush
    while heap:
        m = -pop(heap)
        c = p.pop(m, None)
        if c is None:
            continue
        r = None
        for i in idxs:
            if not ((m - lms[i]) & guard):
                r = i
                break
        if r is None:
            rem[m] = c
            if not full:
                for mm, cc in p.items():
                    rem[mm] = cc
                return rem
            continue
        shift = m - lms[r]
        for t, gc in tails[r]:
            mm = t + shift
            v = p.get(mm)
            if v is None:
                p[mm] = -(c * gc)
                push(heap, -mm)
            else:
                v = v - c * gc
                if v:
                    p[mm] = v
                else:
                    del p[mm]
    return rem


# ---------------------------------------------------------------------------
# ideals and bases


@dataclass(eq=False)
class IdealPresentation:
    """An ideal given by generators in ``ring``.  An empty generator list is the zero ideal."""

    ring: PolyRing
    generators: tuple
    _gbs: dict = dc_field(default_factory=dict, repr=False)

    def __post_init__(self):
        gens = []
        for g in self.generators:
            if not isinstance(g, Polynomial):
                raise TypeError("generators must be Polynomials")
            if g.ring != self.ring:
                raise RingMismatchError("generator from a different ring")
            if not g.is_zero():
                gens.append(g)
        self.generators = tuple(gens)

    @classmethod
    def from_strings(cls, ring: PolyRing, texts: Iterable[str]) -> "IdealPresentation":
        return cls(ring, tuple(ring.parse(t) for t in texts))

    def is_zero(self) -> bool:
        return not self.generators

    def groebner(self, order: MonomialOrder | None = None, budget: Budget | None = None) -> "GroebnerBasis":
        order = order or GREVLEX
        gb = self._gbs.get(order)
        if gb is None:
            gb = buchberger(self, order, budget)
            self._gbs[order] = gb
        return gb

    def __contains__(self, f: Polynomial) -> bool:
        return normal_form(f, self.groebner()).is_zero()

    def __repr__(self):
        gens = ", ".join(g.to_str() for g in self.generators)
        return f"<{gens}> in {self.ring!r}"

    def __getstate__(self):
        return {"ring": self.ring, "generators": self.generators, "_gbs": {}}


class GroebnerBasis:
    """Reduced Groebner basis (monic elements, sorted by increasing leading monomial)."""

    def __init__(self, ring: PolyRing, order: MonomialOrder, basis: _Basis, idxs: list[int], stats: dict | None = None):
        self.ring = ring
        self.order = order
        self._basis = basis
        self._idxs = list(idxs)
        self._pk = basis.pk
        self.stats = stats or {}
        pk = self._pk
        self.polys = tuple(
            Polynomial(
                ring,
                {pk.unpack(basis.lms[i]): ring.field.one, **{pk.unpack(m): c for m, c in basis.tails[i]}},
                False,
            )
            for i in self._idxs
        )

    def __len__(self):
        return len(self.polys)

    def __iter__(self):
        return iter(self.polys)

    def is_unit(self) -> bool:
        return len(self._idxs) == 1 and self._basis.lms[self._idxs[0]] == 0

    def leading_exponents(self) -> list[tuple[int, ...]]:
        return [self._pk.unpack(self._basis.lms[i]) for i in self._idxs]

    def leading_monomials(self) -> list[Polynomial]:
        F = self.ring.field
        return [Polynomial(self.ring, {e: F.one}, False) for e in self.leading_exponents()]

    def reduce(self, f: Polynomial) -> Polynomial:
        return normal_form(f, self)

    def __repr__(self):
        return f"GroebnerBasis({[p.to_str() for p in self.polys]}, order={self.order.kind})"

    def __eq__(self, other):
        return (
            isinstance(other, GroebnerBasis)
            and self.ring == other.ring
            and self.order == other.order
            and set(self.polys) == set(other.polys)
        )

    def __hash__(self):
        return hash(frozenset(self.polys))


def buchberger(ideal: IdealPresentation, order: MonomialOrder | None = None, budget: Budget | None = None) -> GroebnerBasis:
    """Reduced Groebner basis of ``ideal`` under ``order``.

    Buchberger's algorithm with the Gebauer-Moeller criteria and sugar-degree
    pair selection.  Raises :class:`BudgetExceeded` when the number of pair
    reductions or the size of the intermediate basis passes ``budget``.
    """
    order = order or GREVLEX
    budget = budget or DEFAULT_BUDGET
    ring = ideal.ring
    pk = _packer(ring.nvars, order)
    basis = _Basis(pk)
    sugar: list[int] = []
    G: list[int] = []
    pairs: list[tuple] = []
    stats = {"pairs_reduced": 0, "zero_reductions": 0}

    def insert(d: dict, s: int):
        nonlocal G, pairs
        h = basis.add(d)
        sugar.append(s)
        G, pairs = _update(G, pairs, h, basis, sugar)
        if len(basis.lms) > budget.max_basis:
            raise BudgetExceeded(f"intermediate basis exceeded {budget.max_basis} elements")

    gens = sorted(
        (_to_packed(g, pk) for g in ideal.generators),
        key=lambda d: max(d),
    )
    for d in gens:
        r = _reduce(d, basis, G)
        if not r:
            continue
        if max(r) == 0:
            return _unit_basis(ring, order, pk, stats)
        insert(r, max(pk.degree(m) for m in r))

    while pairs:
        k = min(range(len(pairs)), key=lambda t: pairs[t][:2])
        s, lcm, i, j = pairs.pop(k)
        stats["pairs_reduced"] += 1
        if stats["pairs_reduced"] > budget.max_pairs:
            raise BudgetExceeded(f"more than {budget.max_pairs} S-pair reductions")
        spoly = _spoly(basis, i, j, lcm)
        r = _reduce(spoly, basis, G)
        if not r:
            stats["zero_reductions"] += 1
            continue
        if max(r) == 0:
            return _unit_basis(ring, order, pk, stats)
        insert(r, s)

    G = _interreduce(basis, G)
    stats["size"] = len(G)
    return GroebnerBasis(ring, order, basis, G, stats)


def _unit_basis(ring, order, pk, stats):
    basis = _Basis(pk)
    idx = basis.add({0: ring.field.one})
    return GroebnerBasis(ring, order, basis, [idx], stats)


def _spoly(basis: _Basis, i: int, j: int, lcm: int) -> dict:
    si = lcm - basis.lms[i]
    sj = lcm - basis.lms[j]
    out: dict = {}
    for m, c in basis.tails[i]:
        out[m + si] = c
    for m, c in basis.tails[j]:
        mm = m + sj
        v = out.get(mm)
        if v is None:
            out[mm] = -c
        else:
            v = v - c
            if v:
                out[mm] = v
            else:
                del out[mm]
    return out


def _update(G: list[int], B: list[tuple], h: int, basis: _Basis, sugar: list[int]):
    """Gebauer-Moeller installation of a new basis element h."""
    pk = basis.pk
    lms = basis.lms
    lh = lms[h]
    guard = pk.guard

    def div(a, b):
        return not ((b - a) & guard)

    lcms = {g: pk.lcm(lh, lms[g]) for g in G}
    C = list(G)
    D = []
    while C:
        g1 = C.pop(0)
        l1 = lcms[g1]
        if pk.coprime(lh, lms[g1]):
            D.append(g1)
            continue
        if any(div(lcms[g2], l1) for g2 in C) or any(div(lcms[g2], l1) for g2 in D):
            continue
        D.append(g1)
    E = [g for g in D if not pk.coprime(lh, lms[g])]

    B_new = []
    for pair in B:
        s, l12, g1, g2 = pair
        if div(lh, l12) and lcms.get(g1, pk.lcm(lh, lms[g1])) != l12 and lcms.get(g2, pk.lcm(lh, lms[g2])) != l12:
            continue
        B_new.append(pair)
    for g in E:
        l = lcms[g]
        s = max(sugar[h] + pk.degree(l - lh), sugar[g] + pk.degree(l - lms[g]))
        B_new.append((s, l, h, g))

    G_new = [g for g in G if not div(lh, lms[g])]
    G_new.append(h)
    return G_new, B_new


def _interreduce(basis: _Basis, G: list[int]) -> list[int]:
    """Fully reduce every element's tail by the others; returns indices sorted by LM."""
    G = sorted(G, key=lambda i: basis.lms[i])
    out = []
    for i in G:
        others = [j for j in G if j != i]
        tail = dict(basis.tails[i])
        red = _reduce(tail, basis, others) if tail else {}
        basis.tails[i] = sorted(red.items(), reverse=True)
        out.append(i)
    return out


def normal_form(f: Polynomial, gb: GroebnerBasis) -> Polynomial:
    """Remainder of f on division by gb; zero iff f lies in the ideal."""
    if f.ring != gb.ring:
        raise RingMismatchError("polynomial and Groebner basis live in different rings")
    d = _to_packed(f, gb._pk)
    r = _reduce(d, gb._basis, gb._idxs)
    return _from_packed(r, gb._pk, f.ring)


# ---------------------------------------------------------------------------
# dimension and degree


def _min_hitting_set(sets: list[int]) -> int:
    sets = sorted(set(sets), key=lambda s: bin(s).count("1"))
    minimal = []
    for s in sets:
        if not any((t & s) == t for t in minimal):
            minimal.append(s)
    best = [len(minimal) + 1]

    def rec(chosen: int, k: int):
        if k >= best[0]:
            return
        unhit = None
        for s in minimal:
            if not (s & chosen):
                if unhit is None or bin(s).count("1") < bin(unhit).count("1"):
                    unhit = s
        if unhit is None:
            best[0] = k
            return
        s = unhit
        while s:
            low = s & -s
            rec(chosen | low, k + 1)
            s ^= low

    rec(0, 0)
    return best[0]


def dimension(ideal: IdealPresentation | GroebnerBasis, budget: Budget | None = None) -> int:
    """Krull dimension of k[vars]/ideal from the leading-term ideal of a Groebner basis."""
    gb = ideal if isinstance(ideal, GroebnerBasis) else ideal.groebner(budget=budget)
    n = gb.ring.nvars
    if gb.is_unit():
        raise UnitIdealError("the ideal is the whole ring")
    if len(gb) == 0:
        return n
    supports = [gb._pk.support_mask(gb._basis.lms[i]) for i in gb._idxs]
    return n - _min_hitting_set(supports)


def height(ideal: IdealPresentation | GroebnerBasis, budget: Budget | None = None) -> int:
    gb = ideal if isinstance(ideal, GroebnerBasis) else ideal.groebner(budget=budget)
    return gb.ring.nvars - dimension(gb)


def standard_monomials(gb: GroebnerBasis, limit: int = 1_000_000) -> list[tuple[int, ...]]:
    """Monomials outside the leading-term ideal (requires a zero-dimensional ideal)."""
    if gb.is_unit():
        return []
    if dimension(gb) != 0:
        raise DimensionError("ideal is not zero-dimensional")
    pk = gb._pk
    lms = [gb._basis.lms[i] for i in gb._idxs]
    guard = pk.guard
    seen = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for m in frontier:
            for u in pk.units:
                mm = m + u
                if mm in seen:
                    continue
                if any(not ((mm - lm) & guard) for lm in lms):
                    continue
                seen.add(mm)
                nxt.append(mm)
                if len(seen) > limit:
                    raise BudgetExceeded("too many standard monomials")
        frontier = nxt
    return sorted(pk.unpack(m) for m in seen)


def zero_dim_degree(ideal: IdealPresentation | GroebnerBasis, budget: Budget | None = None) -> int:
    """Vector-space dimension of k[vars]/ideal for a zero-dimensional ideal."""
    gb = ideal if isinstance(ideal, GroebnerBasis) else ideal.groebner(budget=budget)
    if gb.is_unit():
        return 0
    return len(standard_monomials(gb))


# ---------------------------------------------------------------------------
# elimination and friends


def eliminate(ideal: IdealPresentation, keep: Sequence, budget: Budget | None = None) -> IdealPresentation:
    """ideal ∩ k[keep], expressed in the subring on ``keep`` (grevlex).

    ``keep`` holds variable names or indices.  The returned presentation
    carries its reduced Groebner basis (grevlex) already.
    """
    ring = ideal.ring
    keep_idx = sorted({k if isinstance(k, int) else ring.index(k) for k in keep})
    front = [i for i in range(ring.nvars) if i not in set(keep_idx)]
    sub = PolyRing(ring.field, tuple(ring.variables[i] for i in keep_idx), GREVLEX)
    if not front:
        gb = ideal.groebner(GREVLEX, budget)
        out = IdealPresentation(sub, tuple(g.to_ring(sub) for g in gb.polys))
        out._gbs[GREVLEX] = GroebnerBasis(sub, GREVLEX, *_rebase(gb, sub, gb._idxs, keep_idx))
        return out
    order = MonomialOrder.elimination(front)
    gb = ideal.groebner(order, budget)
    if gb.is_unit():
        one = sub.one()
        out = IdealPresentation(sub, (one,))
        pk = _packer(sub.nvars, GREVLEX)
        out._gbs[GREVLEX] = _unit_basis(sub, GREVLEX, pk, {})
        return out
    front_mask = sum(1 << i for i in front)
    kept = [i for i in gb._idxs if not (gb._pk.support_mask(gb._basis.lms[i]) & front_mask)]
    basis, idxs = _rebase(gb, sub, kept, keep_idx)
    out = IdealPresentation(sub, tuple(_from_packed({basis.lms[i]: sub.field.one, **dict(basis.tails[i])}, basis.pk, sub) for i in idxs))
    out._gbs[GREVLEX] = GroebnerBasis(sub, GREVLEX, basis, idxs)
    return out


def _rebase(gb: GroebnerBasis, sub: PolyRing, idxs: list[int], keep_idx: list[int]):
    """Repack selected basis elements (all inside k[keep]) for the subring's grevlex packer."""
    pk_new = _packer(sub.nvars, GREVLEX)
    basis = _Basis(pk_new)
    new_idx = []
    for i in idxs:
        d = {gb._basis.lms[i]: sub.field.one}
        d.update(dict(gb._basis.tails[i]))
        nd = {}
        for m, c in d.items():
            e = gb._pk.unpack(m)
            nd[pk_new.pack([e[k] for k in keep_idx])] = c
        new_idx.append(basis.add(nd))
    new_idx.sort(key=lambda i: basis.lms[i])
    return basis, new_idx


def _extended_ring(ring: PolyRing, extra: Sequence[str]) -> PolyRing:
    return PolyRing(ring.field, tuple(ring.variables) + tuple(extra), GREVLEX)


def _fresh(names: Iterable[str], base: str) -> str:
    taken = set(names)
    k = 0
    while f"{base}{k}" in taken:
        k += 1
    return f"{base}{k}"


def implicitize(param, budget: Budget | None = None) -> IdealPresentation:
    """Prime ideal of the closure of the image of a rational parametrization.

    Builds the graph ideal ``x_j*q_j(t) - p_j(t)`` in k[t, x], adjoins
    ``u*prod(q_j) - 1`` when some denominator is nonconstant, and eliminates
    the parameters and u.
    """
    pring: PolyRing = param.param_ring
    labels = list(param.labels)
    if set(labels) & set(pring.variables):
        raise ValueError("coordinate labels must differ from parameter names")
    u = _fresh(list(pring.variables) + labels, "_u")
    big = PolyRing(pring.field, tuple(pring.variables) + (u,) + tuple(labels), GREVLEX)
    d = pring.nvars
    idx = list(range(d))
    gens = []
    dens = []
    for j, g in enumerate(param.coords):
        g = g if isinstance(g, RationalFunction) else RationalFunction(g)
        p = g.num.rename(big, idx)
        q = g.den.rename(big, idx)
        x = big.var(labels[j])
        gens.append(x * q - p)
        if not q.is_constant() and q not in dens:
            dens.append(q)
    if dens:
        prod = big.one()
        for q in dens:
            prod = prod * q
        gens.append(big.var(u) * prod - 1)
    return eliminate(IdealPresentation(big, tuple(gens)), labels, budget)


def intersect(ideals: Sequence[IdealPresentation], budget: Budget | None = None) -> IdealPresentation:
    """Intersection of ideals in a common ring via elimination of a tag variable."""
    if not ideals:
        raise ValueError("need at least one ideal")
    ring = ideals[0].ring
    acc = ideals[0]
    for nxt in ideals[1:]:
        if nxt.ring != ring:
            raise RingMismatchError("ideals live in different rings")
        w = _fresh(ring.variables, "_w")
        big = _extended_ring(ring, [w])
        W = big.var(w)
        idx = list(range(ring.nvars))
        gens = [W * g.rename(big, idx) for g in acc.generators]
        gens += [(1 - W) * g.rename(big, idx) for g in nxt.generators]
        res = eliminate(IdealPresentation(big, tuple(gens)), list(ring.variables), budget)
        acc = IdealPresentation(ring, tuple(g.to_ring(ring) for g in res.generators))
    return acc


def divide_exact(f: Polynomial, g: Polynomial) -> Polynomial:
    """f / g when g divides f; raises ValueError otherwise."""
    if g.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    ring = f.ring
    pk = _packer(ring.nvars, GREVLEX)
    gd = _to_packed(g, pk)
    lg = max(gd)
    lcg = gd[lg]
    tail = sorted(((m, c) for m, c in gd.items() if m != lg), reverse=True)
    p = _to_packed(f, pk)
    heap = [-m for m in p]
    heapq.heapify(heap)
    q = {}
    while heap:
        m = -heapq.heappop(heap)
        c = p.pop(m, None)
        if c is None:
            continue
        if not pk.divides(lg, m):
            raise ValueError("division is not exact")
        qc = c / lcg
        shift = m - lg
        q[shift] = qc
        for t, tc in tail:
            mm = t + shift
            v = p.get(mm)
            if v is None:
                p[mm] = -(qc * tc)
                heapq.heappush(heap, -mm)
            else:
                v = v - qc * tc
                if v:
                    p[mm] = v
                else:
                    del p[mm]
    return _from_packed(q, pk, ring)


def poly_lcm(f: Polynomial, g: Polynomial, budget: Budget | None = None) -> Polynomial:
    """Least common multiple (normalized associate) via <f> ∩ <g>."""
    if f.is_zero() or g.is_zero():
        return f.ring.zero()
    if f.is_constant():
        return g.normalized()
    if g.is_constant():
        return f.normalized()
    try:
        divide_exact(f, g)
        return f.normalized()
    except ValueError:
        pass
    try:
        divide_exact(g, f)
        return g.normalized()
    except ValueError:
        pass
    res = intersect([IdealPresentation(f.ring, (f,)), IdealPresentation(g.ring, (g,))], budget)
    if len(res.generators) != 1:
        raise ArithmeticError("intersection of principal ideals is not principal")
    return res.generators[0].normalized()


def poly_gcd(f: Polynomial, g: Polynomial, budget: Budget | None = None) -> Polynomial:
    if f.is_zero():
        return g.normalized()
    if g.is_zero():
        return f.normalized()
    lcm = poly_lcm(f, g, budget)
    return divide_exact(f * g, lcm).normalized()


def saturate(ideal: IdealPresentation, f: Polynomial, budget: Budget | None = None) -> IdealPresentation:
    """ideal : f^infinity via an auxiliary inverse of f."""
    ring = ideal.ring
    w = _fresh(ring.variables, "_s")
    big = _extended_ring(ring, [w])
    idx = list(range(ring.nvars))
    gens = [g.rename(big, idx) for g in ideal.generators]
    gens.append(big.var(w) * f.rename(big, idx) - 1)
    res = eliminate(IdealPresentation(big, tuple(gens)), list(ring.variables), budget)
    return IdealPresentation(ring, tuple(g.to_ring(ring) for g in res.generators))
