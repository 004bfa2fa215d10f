"""The linear engine: Jacobian matrices, their ranks, and the NM-locus.

Ideal-form Jacobians (rows = generators, columns = variables) represent the
dual of the algebraic matroid over the function field of the variety; the
parametrized form (rows = parameters) represents the matroid itself.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .fields import MPQ
from .groebner import (
    Budget,
    GroebnerBasis,
    IdealPresentation,
    divide_exact,
    intersect,
    normal_form,
    poly_lcm,
)
from .linalg import clear_denominators, det, integer_rank, rank as exact_rank
from .matroid import GroundSet, MatroidError, RankOracle
from .polynomial import Polynomial, PolyRing, RationalFunction, parse_rational

__all__ = [
    "Parametrization",
    "JacobianMatrix",
    "JacobianError",
    "NMLocus",
    "jacobian_of_ideal",
    "jacobian_of_param",
    "specialized_rank",
    "symbolic_rank_mod_P",
    "nm_locus",
    "sample_valid_point",
    "LinearRankOracle",
    "matroid_from_linear",
]


class JacobianError(ValueError):
    pass


@dataclass(frozen=True)
class Parametrization:
    param_ring: PolyRing
    coords: tuple
    labels: tuple

    def __post_init__(self):
        coords = tuple(c if isinstance(c, RationalFunction) else RationalFunction(c) for c in self.coords)
        for c in coords:
            if c.ring != self.param_ring:
                raise JacobianError("coordinate functions must live in the parameter ring")
        labels = tuple(self.labels)
        if len(labels) != len(coords):
            raise JacobianError("one label per coordinate function")
        if len(set(labels)) != len(labels):
            raise JacobianError("coordinate labels must be distinct")
        object.__setattr__(self, "coords", coords)
        object.__setattr__(self, "labels", labels)

    @classmethod
    def from_strings(cls, ring: PolyRing, coords: Sequence[tuple[str, str]]) -> "Parametrization":
        labels = [name for name, _ in coords]
        return cls(ring, tuple(parse_rational(expr, ring) for _, expr in coords), tuple(labels))

    @property
    def field(self):
        return self.param_ring.field

    @property
    def dim_params(self) -> int:
        return self.param_ring.nvars

    def denominators(self) -> list[Polynomial]:
        out = []
        for c in self.coords:
            if not c.den.is_constant() and c.den not in out:
                out.append(c.den)
        return out


@dataclass
class JacobianMatrix:
    entries: list  # rows of Polynomial / RationalFunction
    orientation: str  # "ideal" or "param"
    labels: tuple
    ring: PolyRing

    @property
    def shape(self):
        return len(self.entries), len(self.labels)

    def column(self, j: int) -> list:
        return [row[j] for row in self.entries]

    def evaluate(self, point: Sequence) -> list[list]:
        """Specialize every entry; raises JacobianError if a denominator vanishes."""
        try:
            return [[e.evaluate(point) for e in row] for row in self.entries]
        except ZeroDivisionError:
            raise JacobianError(f"a denominator vanishes at {tuple(point)}") from None

    def polynomial_columns(self) -> list[list[Polynomial]]:
        """Columns with rational entries cleared of their common denominator.

        Each column is multiplied by a nonzero function, which leaves the
        column matroid over the function field unchanged.
        """
        cols = []
        for j in range(len(self.labels)):
            col = self.column(j)
            if all(isinstance(e, Polynomial) or e.is_polynomial() for e in col):
                cols.append([e if isinstance(e, Polynomial) else e.num for e in col])
                continue
            D = None
            for e in col:
                if not e.den.is_constant():
                    D = e.den if D is None else poly_lcm(D, e.den)
            cols.append([e.num * divide_exact(D, e.den) for e in col])
        return cols


def jacobian_of_ideal(P: IdealPresentation) -> JacobianMatrix:
    ring = P.ring
    rows = [[f.diff(j) for j in range(ring.nvars)] for f in P.generators]
    return JacobianMatrix(rows, "ideal", tuple(ring.variables), ring)


def jacobian_of_param(phi: Parametrization) -> JacobianMatrix:
    ring = phi.param_ring
    rows = []
    for i in range(ring.nvars):
        row = []
        for g in phi.coords:
            d = g.diff(i)
            row.append(d.num if d.is_polynomial() else d)
        rows.append(row)
    return JacobianMatrix(rows, "param", tuple(phi.labels), ring)


# ---------------------------------------------------------------------------
# ranks


def _columns_at(J: JacobianMatrix, point: Sequence, allow_char_p: bool = False) -> list[list]:
    """Specialized columns; rational columns become primitive integer vectors."""
    F = J.ring.field
    if F.characteristic != 0 and not allow_char_p:
        raise JacobianError("Jacobian ranks in positive characteristic do not give the algebraic matroid")
    M = J.evaluate(point)
    cols = [[M[i][j] for i in range(len(M))] for j in range(len(J.labels))]
    if F.characteristic == 0:
        cols = [clear_denominators(c) for c in cols]
    return cols


def specialized_rank(J: JacobianMatrix, point: Sequence, S: Iterable[int], allow_char_p: bool = False) -> int:
    cols = _columns_at(J, point, allow_char_p)
    sub = [cols[j] for j in S]
    if not sub or not sub[0]:
        return 0
    return exact_rank(sub)


def symbolic_rank_mod_P(
    J: JacobianMatrix,
    P: IdealPresentation,
    S: Iterable[int],
    gb: GroebnerBasis | None = None,
    budget: Budget | None = None,
    cap: int | None = None,
    reduced: list | None = None,
) -> int:
    """Rank of the columns S over Frac(k[x]/P).

    Division-free elimination: rows are combined as ``p*row - a*pivot_row``
    and every entry is reduced to its normal form, so an entry is zero in the
    quotient exactly when its normal form vanishes.  P must be prime (the
    quotient is a domain), which is the standing assumption.  ``cap`` is a
    known upper bound that ends the elimination early; ``reduced`` holds the
    entries' normal forms, indexed [column][row], if already computed.
    """
    if J.orientation != "ideal":
        raise JacobianError("symbolic rank mod P applies to ideal-form Jacobians")
    gb = gb or P.groebner(budget=budget)
    S = list(S)
    # columns of S become the rows we eliminate
    if reduced is None:
        M = [[normal_form(J.entries[i][j], gb) for i in range(len(J.entries))] for j in S]
    else:
        M = [list(reduced[j]) for j in S]
    if not M:
        return 0
    nrows, ncols = len(M), len(M[0])
    cap = min(cap if cap is not None else nrows, nrows, ncols)
    r = 0
    for c in range(ncols):
        live = [i for i in range(r, nrows) if not M[i][c].is_zero()]
        if not live:
            continue
        if r + 1 == cap:
            return cap
        # the sparsest pivot keeps the eliminated entries small
        piv = min(live, key=lambda i: len(M[i][c].terms))
        M[r], M[piv] = M[piv], M[r]
        p = M[r][c]
        for i in range(r + 1, nrows):
            a = M[i][c]
            if a.is_zero():
                continue
            M[i] = [normal_form(p * M[i][k] - a * M[r][k], gb) if k > c else M[i][k].ring.zero() for k in range(ncols)]
            # strip a common content to keep coefficients small
            M[i] = _primitive_row(M[i])
        r += 1
        if r == nrows:
            break
    return r


def _primitive_row(row: list[Polynomial]) -> list[Polynomial]:
    nz = [e for e in row if not e.is_zero()]
    if not nz or nz[0].ring.field.characteristic != 0:
        return row
    g = 0
    den = 1
    for e in nz:
        for c in e.terms.values():
            g = math.gcd(g, int(c.numerator))
            d = int(c.denominator)
            den = den * d // math.gcd(den, d)
    if g in (0, 1) and den == 1:
        return row
    s = MPQ(den, g or 1)
    return [e.scale(s) if not e.is_zero() else e for e in row]


# ---------------------------------------------------------------------------
# NM-locus


@dataclass
class NMLocus:
    ring: PolyRing
    principal_generator: Polynomial | None = None
    components: list = field(default_factory=list)  # minor ideals, one per (co)base
    reduced_generator: Polynomial | None = None  # normal form mod P (ideal form only)
    form: str = "principal"

    @property
    def ideal(self) -> IdealPresentation:
        if self.principal_generator is not None:
            return IdealPresentation(self.ring, (self.principal_generator,))
        return intersect(self.components)

    def is_unit(self) -> bool:
        return self.principal_generator is not None and self.principal_generator.is_constant()

    def contains_point(self, point: Sequence) -> bool:
        """True if the point lies on the locus (some minor ideal vanishes there)."""
        if self.principal_generator is not None:
            return not self.principal_generator.evaluate(point)
        return any(all(not g.evaluate(point) for g in comp.generators) for comp in self.components)

    def to_json(self) -> dict:
        out = {"form": self.form, "ring": list(self.ring.variables)}
        if self.principal_generator is not None:
            out["generator"] = self.principal_generator.to_str()
            out["unit"] = self.is_unit()
        if self.reduced_generator is not None:
            out["generator_mod_P"] = self.reduced_generator.to_str()
        if self.components:
            out["components"] = [[g.to_str() for g in c.generators] for c in self.components]
        return out


def _max_minors(cols: list[list[Polynomial]], size: int) -> list[Polynomial]:
    m = len(cols[0])
    out = []
    for rows in itertools.combinations(range(m), size):
        out.append(det([[cols[j][i] for j in range(len(cols))] for i in rows]))
    return out


def nm_locus(J: JacobianMatrix, context, bases: Iterable[Sequence[int]], budget: Budget | None = None) -> NMLocus:
    """Non-matroidal locus from the Jacobian and the known bases.

    Param form: lcm of the d×d minors over bases.  Ideal form with exactly
    n−d rows: lcm of the minors over cobases that are nonzero mod P, also
    reported reduced mod P.  Otherwise the locus is returned as the list of
    minor ideals I_{n−d}(J{cobase}) whose union of zero sets it is.
    """
    bases = [tuple(sorted(B)) for B in bases]
    if not bases:
        raise JacobianError("bases are needed to compute the NM-locus")
    ring = J.ring
    n = len(J.labels)
    cols = J.polynomial_columns()
    m = len(J.entries)
    if J.orientation == "param":
        d = len(bases[0])
        if d == 0:
            return NMLocus(ring, ring.one())
        if m != d:
            raise JacobianError("parameter count differs from the matroid rank; use a dominant parametrization")
        minors = [det([[cols[j][i] for j in B] for i in range(d)]) for B in bases]
        return NMLocus(ring, _lcm_all(minors, budget))
    if J.orientation != "ideal":
        raise JacobianError(f"unknown orientation {J.orientation}")
    P: IdealPresentation = context
    gb = P.groebner(budget=budget)
    d = len(bases[0])
    c = n - d
    full = set(range(n))
    cobases = [tuple(sorted(full - set(B))) for B in bases]
    if c == 0:
        return NMLocus(ring, ring.one(), reduced_generator=ring.one())
    if m == c:
        minors = []
        for Bc in cobases:
            mnr = det([[cols[j][i] for j in Bc] for i in range(c)])
            if not normal_form(mnr, gb).is_zero():
                minors.append(mnr)
        gen = _lcm_all(minors, budget)
        return NMLocus(ring, gen, reduced_generator=normal_form(gen, gb).normalized())
    comps = []
    seen = set()
    for Bc in cobases:
        gens = [g for g in _max_minors([cols[j] for j in Bc], c) if not g.is_zero()]
        key = frozenset(g.normalized() for g in gens)
        if key in seen:
            continue
        seen.add(key)
        comps.append(IdealPresentation(ring, tuple(gens)))
    return NMLocus(ring, None, comps, form="intersection")


def _lcm_all(polys: list[Polynomial], budget=None) -> Polynomial:
    uniq = []
    for f in polys:
        if f.is_zero():
            continue
        g = f.normalized()
        if g not in uniq:
            uniq.append(g)
    if not uniq:
        raise JacobianError("all maximal minors vanish")
    # larger first so that the divisibility fast path fires often
    uniq.sort(key=lambda f: (-f.total_degree(), -len(f)))
    acc = uniq[0]
    for f in uniq[1:]:
        acc = poly_lcm(acc, f, budget)
    return acc.normalized()


# ---------------------------------------------------------------------------
# points and oracles


def sample_valid_point(phi: Parametrization, nm: NMLocus | None = None, seed: int = 0, window: int = 10**6, retries: int = 100) -> tuple[int, ...]:
    """Random integer parameter point off the denominators and the NM-locus."""
    if phi.field.characteristic != 0:
        raise JacobianError("point sampling for matroid use needs characteristic zero")
    rng = random.Random(seed)
    dens = phi.denominators()
    for _ in range(retries):
        pt = tuple(rng.randint(-window, window) for _ in range(phi.dim_params))
        if any(not q.evaluate(pt) for q in dens):
            continue
        if nm is not None and nm.contains_point(pt):
            continue
        return pt
    raise JacobianError(f"no valid point found in {retries} tries; degenerate parametrization or wrong NM ideal")


class LinearRankOracle(RankOracle):
    """Column-matroid ranks of a Jacobian.

    ``mode``: "point" (specialized at a parameter point or a user-supplied
    point on the variety) or "symbolic" (minors mod P).  Ideal-form ranks are
    turned into ranks of the matroid itself by ρ(S) = |S| + rk(E∖S) − rk(E).
    """

    def __init__(self, J: JacobianMatrix, point=None, P: IdealPresentation | None = None, allow_char_p: bool = False, budget=None):
        super().__init__(GroundSet(J.labels))
        self.J = J
        self.point = tuple(point) if point is not None else None
        self.P = P
        self.budget = budget
        self.certified = J.ring.field.characteristic == 0
        if not self.certified and not allow_char_p:
            raise JacobianError("Jacobian oracle in positive characteristic is not the algebraic matroid; pass allow_char_p")
        self._jmemo: dict = {}
        if self.point is not None:
            self.mode = "point"
            self._cols = _columns_at(J, self.point, allow_char_p)
        elif P is not None and J.orientation == "ideal":
            self.mode = "symbolic"
            self._gb = P.groebner(budget=budget)
            rows = range(len(J.entries))
            self._reduced = [[normal_form(J.entries[i][j], self._gb) for i in rows] for j in range(len(J.labels))]
        else:
            raise JacobianError("need a point, or P for an ideal-form Jacobian")
        self._all = tuple(range(len(J.labels)))
        self._rkE = self.jrank(self._all)

    def jrank(self, S: Sequence[int]) -> int:
        """Rank of the column set S of J itself."""
        S = tuple(S)
        r = self._jmemo.get(S)
        if r is not None:
            return r
        if not S:
            r = 0
        elif self.mode == "point":
            sub = [self._cols[j] for j in S]
            if not sub[0]:
                r = 0
            elif isinstance(sub[0][0], int):
                r = integer_rank(sub)
            else:
                r = exact_rank(sub)
        else:
            r = symbolic_rank_mod_P(self.J, self.P, S, self._gb, self.budget, cap=getattr(self, "_rkE", None), reduced=self._reduced)
        self._jmemo[S] = r
        return r

    def _rank(self, S):
        if self.J.orientation == "param":
            return self.jrank(S)
        rest = tuple(j for j in self._all if j not in set(S))
        return len(S) + self.jrank(rest) - self._rkE

    def __getstate__(self):
        d = super().__getstate__()
        d["_jmemo"] = {}
        return d


def _probe_sets(n: int, probes: int, rng: random.Random) -> list[tuple[int, ...]]:
    out = [tuple(range(n))]
    while len(out) < probes:
        k = rng.randint(1, n)
        out.append(tuple(sorted(rng.sample(range(n), k))))
    return out


def matroid_from_linear(
    J: JacobianMatrix,
    context=None,
    point=None,
    seed: int = 0,
    probes: int = 50,
    window: int = 10**6,
    retries: int = 20,
    nm: NMLocus | None = None,
    allow_char_p: bool = False,
    budget=None,
) -> LinearRankOracle:
    """RankOracle from a Jacobian.

    Param form: a random valid point is checked against a second one on
    ``probes`` subsets.  Specialization can only lower ranks, so on a
    disagreement the point with the larger rank wins and the loser is
    replaced, until a pair agrees on every probe.  Ideal form goes through
    symbolic minors mod P unless an explicit point is given.
    """
    if J.orientation == "ideal":
        if point is not None:
            return LinearRankOracle(J, point=point, allow_char_p=allow_char_p)
        if context is None:
            raise JacobianError("ideal-form Jacobian needs the ideal P")
        return LinearRankOracle(J, P=context, allow_char_p=allow_char_p, budget=budget)
    if point is not None:
        return LinearRankOracle(J, point=point, allow_char_p=allow_char_p)
    phi: Parametrization = context
    if phi is None:
        raise JacobianError("parametrized Jacobian needs its parametrization to sample points")
    rng = random.Random(seed)
    n = len(J.labels)
    sets = _probe_sets(n, probes, random.Random(seed + 1))
    best = LinearRankOracle(J, point=sample_valid_point(phi, nm, rng.randrange(2**62), window))
    for attempt in range(retries):
        other = LinearRankOracle(J, point=sample_valid_point(phi, nm, rng.randrange(2**62), window))
        diff = [(best.jrank(S), other.jrank(S)) for S in sets]
        if all(a == b for a, b in diff):
            best.meta = {"points": [best.point, other.point], "probes": len(sets), "attempts": attempt + 1}
            return best
        if sum(b > a for a, b in diff) > 0 and all(b >= a for a, b in diff):
            best = other
        elif not all(a >= b for a, b in diff):
            # incomparable: both points are special; keep the one with larger total rank
            if sum(b for _, b in diff) > sum(a for a, _ in diff):
                best = other
    raise JacobianError(f"two-sample validation did not stabilize after {retries} attempts")
