"""Circuit polynomials and base degrees.

Both work from an ideal P or directly from a parametrization phi.  For phi,
P ∩ k[C] is the implicitization of the coordinates in C alone, and the base
degree of B is deg(phi_B) / deg(phi), each a count of points in a
zero-dimensional fiber in parameter space.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .groebner import (
    Budget,
    BudgetExceeded,
    IdealPresentation,
    dimension,
    eliminate,
    implicitize,
    normal_form,
    zero_dim_degree,
)
from .jacobian import Parametrization, sample_valid_point
from .matroid import GroundSet, Matroid, RankOracle
from .polynomial import LEX, Polynomial, PolyRing, RationalFunction, degree_summaries

__all__ = [
    "DecoratedCircuit",
    "DecoratedBase",
    "DecoratedMatroid",
    "DecorationError",
    "FiberRankOracle",
    "circuit_polynomial",
    "base_degree",
    "decorate",
    "histogram",
]


class DecorationError(ValueError):
    pass


@dataclass
class DecoratedCircuit:
    circuit: tuple
    polynomial: Polynomial
    degree: int
    top_degree: tuple  # indexed by the circuit's variables
    support: frozenset
    top_degree_full: tuple = ()  # indexed by the whole ground set
    propagated: bool = False
    note: str | None = None

    def to_json(self, labels, with_polynomial=True) -> dict:
        out = {
            "circuit": [labels[i] for i in self.circuit],
            "degree": self.degree,
            "top_degree": list(self.top_degree),
            "top_degree_full": list(self.top_degree_full),
            "support": sorted(list(e) for e in self.support),
        }
        if with_polynomial:
            out["polynomial"] = self.polynomial.to_str()
        if self.propagated:
            out["propagated"] = True
        if self.note:
            out["note"] = self.note
        return out


@dataclass
class DecoratedBase:
    base: tuple
    base_degree: int
    fiber_point: tuple  # the lambda values (first accepted sample)
    samples: list = field(default_factory=list)
    propagated: bool = False

    def to_json(self, labels) -> dict:
        out = {
            "base": [labels[i] for i in self.base],
            "base_degree": self.base_degree,
            "lambda": [str(x) for x in self.fiber_point],
        }
        if self.propagated:
            out["propagated"] = True
        return out


# ---------------------------------------------------------------------------
# circuit polynomials


def _restricted_param(phi: Parametrization, S: Sequence[int]) -> Parametrization:
    return Parametrization(phi.param_ring, tuple(phi.coords[i] for i in S), tuple(phi.labels[i] for i in S))


def elimination_ideal(context, S: Sequence[int], budget: Budget | None = None) -> IdealPresentation:
    """P ∩ k[S] in the subring on S (grevlex)."""
    S = sorted(S)
    if isinstance(context, Parametrization):
        return implicitize(_restricted_param(context, S), budget)
    return eliminate(context, list(S), budget)


def _labels_of(context) -> tuple:
    if isinstance(context, Parametrization):
        return context.labels
    return tuple(context.ring.variables)


def circuit_polynomial(context, C: Iterable[int], budget: Budget | None = None) -> DecoratedCircuit:
    """θ_C: the normalized generator of P ∩ k[C], with its degree data."""
    C = tuple(sorted(set(C)))
    if not C:
        raise DecorationError("empty set is not a circuit")
    E = elimination_ideal(context, C, budget)
    if E.is_zero():
        raise DecorationError(f"elimination ideal of {C} is zero: the set is independent")
    polys = E.groebner().polys
    if len(polys) != 1:
        raise DecorationError(f"elimination ideal of {C} is not principal ({len(polys)} generators): not a circuit")
    theta = polys[0].normalized(LEX)
    if theta.is_constant():
        raise DecorationError(f"elimination ideal of {C} is the unit ideal")
    total, per_var, support = degree_summaries(theta)
    if min(per_var) == 0:
        missing = [i for i, d in zip(C, per_var) if d == 0]
        raise DecorationError(f"generator for {C} does not involve {missing}: not a circuit")
    n = len(_labels_of(context))
    full = [0] * n
    for i, d in zip(C, per_var):
        full[i] = d
    dc = DecoratedCircuit(C, theta, total, tuple(per_var), frozenset(support), tuple(full))
    if len(C) == 1 and total > 1 and theta.ring.field.characteristic == 0:
        dc.note = f"loop polynomial of degree {total}; over an algebraically closed field it would be linear"
    return dc


# ---------------------------------------------------------------------------
# base degrees


def _fiber_count_ideal(P: IdealPresentation, B: Sequence[int], lam: Sequence[int], budget) -> int | None:
    ring = P.ring
    gens = list(P.generators) + [ring.gens()[b] - lam[s] for s, b in enumerate(B)]
    I = IdealPresentation(ring, tuple(gens))
    gb = I.groebner(budget=budget)
    if gb.is_unit():
        return 0
    if dimension(gb) != 0:
        return None
    return zero_dim_degree(gb)


def _param_fiber_ideal(phi: Parametrization, targets: list[tuple[int, object]]) -> IdealPresentation:
    """Ideal in k[t, u] of parameter points with g_j(t) = value_j for the listed (j, value)."""
    pr = phi.param_ring
    dens = phi.denominators()
    names = tuple(pr.variables)
    if dens:
        u = "_u"
        while u in names:
            u += "_"
        ring = PolyRing(pr.field, names + (u,))
    else:
        ring = PolyRing(pr.field, names)
    idx = list(range(pr.nvars))
    gens = []
    for j, v in targets:
        g = phi.coords[j]
        gens.append(g.num.rename(ring, idx) - g.den.rename(ring, idx).scale(pr.field(v)))
    if dens:
        prod = ring.one()
        for q in dens:
            prod = prod * q.rename(ring, idx)
        gens.append(ring.var(ring.variables[-1]) * prod - 1)
    return IdealPresentation(ring, tuple(gens))


def _zero_dim_count(I: IdealPresentation, budget) -> int | None:
    gb = I.groebner(budget=budget)
    if gb.is_unit():
        return 0
    if dimension(gb) != 0:
        return None
    return zero_dim_degree(gb)


class FiberRankOracle(RankOracle):
    """Gröbner rank oracle for a parametrization without implicitizing.

    ρ(S) = d − dim of the fiber of φ_S through a random parameter point.  A
    special point can only enlarge the fiber, so the larger of the ranks at
    two independent points is used.  Characteristic zero only.
    """

    def __init__(self, phi: Parametrization, seed: int = 0, window: int = 1000, budget: Budget | None = None):
        super().__init__(GroundSet(phi.labels))
        if phi.field.characteristic != 0:
            raise DecorationError("fiber ranks need characteristic zero; implicitize instead")
        self.phi = phi
        self.budget = budget
        rng = random.Random(seed)
        self.points = [sample_valid_point(phi, seed=rng.randrange(2**62), window=window) for _ in range(2)]
        self._values = [[g.evaluate(t0) for g in phi.coords] for t0 in self.points]

    def _rank(self, S):
        if not S:
            return 0
        d = self.phi.dim_params
        best = 0
        for vals in self._values:
            I = _param_fiber_ideal(self.phi, [(j, vals[j]) for j in S])
            best = max(best, d - dimension(I, self.budget))
            if best == min(d, len(S)):
                break
        return best


def _param_degree(phi: Parametrization, rng: random.Random, window: int, budget) -> int:
    """deg(phi): points in a generic fiber of phi itself."""
    for _ in range(10):
        t0 = [rng.randint(-window, window) for _ in range(phi.dim_params)]
        try:
            vals = [g.evaluate(t0) for g in phi.coords]
        except ZeroDivisionError:
            continue
        c = _zero_dim_count(_param_fiber_ideal(phi, list(enumerate(vals))), budget)
        if c is None:
            raise DecorationError("parametrization has positive-dimensional fibers; base degrees need the implicit ideal")
        return c
    raise DecorationError("could not sample a parameter point off the denominators")


def base_degree(
    context,
    B: Iterable[int],
    seed: int = 0,
    window: int = 97,
    retries: int = 10,
    budget: Budget | None = None,
    _phi_degree: int | None = None,
) -> DecoratedBase:
    """Generic fiber size of the projection onto B (characteristic zero only).

    Two independent λ samples must agree; on disagreement more samples are
    drawn and the first value seen twice is accepted.
    """
    B = tuple(sorted(set(B)))
    is_param = isinstance(context, Parametrization)
    field_ = context.field if is_param else context.ring.field
    if field_.characteristic != 0:
        raise DecorationError("base degree is not defined in positive characteristic")
    rng = random.Random(seed)
    phi_deg = None
    if is_param:
        phi_deg = _phi_degree or _param_degree(context, random.Random(seed ^ 0x5EED), 10**6, budget)
    counts = []
    lams = []
    tries = 0
    while tries < retries:
        tries += 1
        lam = tuple(rng.randint(-window, window) for _ in B)
        if is_param:
            c = _zero_dim_count(_param_fiber_ideal(context, list(zip(B, lam))), budget)
        else:
            c = _fiber_count_ideal(context, B, lam, budget)
        if c is None or c == 0:
            # λ landed on a special (or empty) fiber, resample
            continue
        counts.append(c)
        lams.append(lam)
        seen = Counter(counts)
        val, k = seen.most_common(1)[0]
        if k >= 2:
            if is_param:
                if val % phi_deg:
                    raise DecorationError(f"fiber count {val} not divisible by deg(phi) = {phi_deg}")
                val //= phi_deg
            first = lams[counts.index(seen.most_common(1)[0][0])]
            return DecoratedBase(B, val, first, samples=list(zip(lams, counts)))
    if not counts:
        raise DecorationError(f"fibers over {B} stayed positive-dimensional: not a basis?")
    raise DecorationError(f"base degree of {B} unstable across samples: {counts}")


# ---------------------------------------------------------------------------
# whole-matroid decoration


@dataclass
class DecoratedMatroid:
    matroid: Matroid
    circuits: list = field(default_factory=list)  # DecoratedCircuit or error dicts
    bases: list = field(default_factory=list)  # DecoratedBase or error dicts
    notes: list = field(default_factory=list)

    def circuit_degree_histogram(self) -> dict:
        return histogram(c.degree for c in self.circuits if isinstance(c, DecoratedCircuit))

    def base_degree_histogram(self) -> dict:
        return histogram(b.base_degree for b in self.bases if isinstance(b, DecoratedBase))

    def errors(self) -> list:
        return [x for x in self.circuits + self.bases if isinstance(x, dict)]

    def to_json(self, with_polynomials=True) -> dict:
        labels = self.matroid.ground.labels
        out = self.matroid.to_json()
        out["decorated_circuits"] = [
            c.to_json(labels, with_polynomials) if isinstance(c, DecoratedCircuit) else c for c in self.circuits
        ]
        out["decorated_bases"] = [b.to_json(labels) if isinstance(b, DecoratedBase) else b for b in self.bases]
        out["histograms"] = {
            "circuit_degree": {str(k): v for k, v in self.circuit_degree_histogram().items()},
            "base_degree": {str(k): v for k, v in self.base_degree_histogram().items()},
            "circuit_size": {str(k): v for k, v in histogram(len(c) for c in (self.matroid.circuits or ())).items()},
        }
        if self.notes:
            out["notes"] = list(self.notes)
        return out


def histogram(values: Iterable[int]) -> dict:
    return dict(sorted(Counter(values).items()))


def _permute_poly(f: Polynomial, g: Sequence[int], C: Sequence[int], target: Sequence[int], labels) -> Polynomial:
    """Image of θ_C (in k[C]) under g, as a polynomial in k[target]."""
    ring = PolyRing(f.ring.field, tuple(labels[i] for i in target))
    pos = {v: k for k, v in enumerate(target)}
    return f.rename(ring, [pos[g[i]] for i in C]).normalized(LEX)


def decorate(
    context,
    m: Matroid,
    circuits: bool = True,
    bases: bool = True,
    action=None,
    seed: int = 0,
    budget: Budget | None = None,
    sink: Callable | None = None,
) -> DecoratedMatroid:
    """Decorate every circuit and base of m.

    With an action, one representative per orbit is computed and the rest
    are filled in by transporting the decoration along a group element (the
    action is assumed to preserve P).  Failures become per-item error
    records; ``sink(kind, item)`` is called as each item completes.
    """
    labels = m.ground.labels
    out = DecoratedMatroid(m)
    field_ = context.field if isinstance(context, Parametrization) else context.ring.field

    def emit(kind, item):
        if sink is not None:
            sink(kind, item)

    if circuits and m.circuits is not None:
        for C, item in _orbitwise(sorted(m.circuits, key=lambda c: (len(c), c)), action, lambda C: circuit_polynomial(context, C, budget), labels, kind="circuit"):
            out.circuits.append(item)
            emit("circuit", item)
        if field_.characteristic == 0:
            for c in out.circuits:
                if isinstance(c, DecoratedCircuit) and c.note:
                    out.notes.append(f"{[labels[i] for i in c.circuit]}: {c.note}")

    if bases and m.bases is not None:
        if field_.characteristic != 0:
            out.notes.append("bases left undecorated: base degree is not defined in positive characteristic")
        else:
            phi_deg = None
            if isinstance(context, Parametrization):
                phi_deg = _param_degree(context, random.Random(seed ^ 0x5EED), 10**6, budget)

            def one(B):
                return base_degree(context, B, seed=seed + _subset_seed(B), budget=budget, _phi_degree=phi_deg)

            for B, item in _orbitwise(sorted(m.bases), action, one, labels, kind="base"):
                out.bases.append(item)
                emit("base", item)
    return out


def _subset_seed(S) -> int:
    h = 0
    for i in S:
        h = (h * 1_000_003 + i + 1) % (1 << 61)
    return h


def _orbitwise(items: list, action, compute: Callable, labels, kind: str):
    """Yield (item, decoration) in the order of ``items``."""
    done: dict = {}
    if action is None:
        for S in items:
            yield S, _safe(compute, S, kind, labels)
        return
    # group elements mapping the canonical representative onto each member
    for S in items:
        rep = action.canonical(S)
        if rep not in done:
            done[rep] = _safe(compute, rep, kind, labels)
        base = done[rep]
        if S == rep:
            yield S, base
            continue
        if isinstance(base, dict):
            yield S, {**base, kind: [labels[i] for i in S], "propagated": True}
            continue
        g = next(g for g in action.elements if tuple(sorted(g[i] for i in rep)) == S)
        if kind == "circuit":
            theta = _permute_poly(base.polynomial, g, rep, S, labels)
            total, per_var, support = degree_summaries(theta)
            full = [0] * len(labels)
            for i, d in zip(S, per_var):
                full[i] = d
            yield S, DecoratedCircuit(S, theta, total, tuple(per_var), frozenset(support), tuple(full), True, base.note)
        else:
            yield S, DecoratedBase(S, base.base_degree, base.fiber_point, [], True)


def _safe(compute, S, kind, labels):
    try:
        return compute(S)
    except (DecorationError, BudgetExceeded, ArithmeticError, ValueError) as e:
        return {kind: [labels[i] for i in S], "error": type(e).__name__, "message": str(e)}
