"""Field-agnostic matroid layer.

A matroid is seen through a rank oracle.  Subsets are sorted index tuples at
the API surface; internally bitmasks (bit i = element i) are used for the
containment tests that dominate enumeration.
"""

from __future__ import annotations

import itertools
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .groebner import Budget, IdealPresentation, dimension, eliminate

__all__ = [
    "GroundSet",
    "RankOracle",
    "SymbolicRankOracle",
    "BasesRankOracle",
    "Matroid",
    "enumerate_bases",
    "enumerate_circuits_naive",
    "circuits_by_exchange",
    "orbit_scan",
    "dualize",
    "verify_axioms",
    "MatroidError",
]


class MatroidError(ValueError):
    pass


def _mask(S) -> int:
    m = 0
    for i in S:
        m |= 1 << i
    return m


_SUBSET_SCAN = 10  # below this size, enumerate subsets instead of scanning lists


def _submasks(m: int):
    """All nonempty submasks of m."""
    sub = m
    while sub:
        yield sub
        sub = (sub - 1) & m


def _proper_submasks(m: int):
    return (x for x in _submasks(m) if x != m)


def _unmask(m: int) -> tuple[int, ...]:
    out = []
    i = 0
    while m:
        if m & 1:
            out.append(i)
        m >>= 1
        i += 1
    return tuple(out)


@dataclass(frozen=True)
class GroundSet:
    labels: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(self.labels))
        if len(set(self.labels)) != len(self.labels):
            raise MatroidError("ground set labels must be distinct")

    def __len__(self):
        return len(self.labels)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise MatroidError(f"unknown ground set element {label!r}") from None

    def subset(self, items: Iterable) -> tuple[int, ...]:
        """Canonical sorted index tuple; accepts labels or indices."""
        out = set()
        for x in items:
            if isinstance(x, str):
                out.add(self.index(x))
            else:
                x = int(x)
                if not 0 <= x < len(self.labels):
                    raise MatroidError(f"index {x} outside ground set")
                out.add(x)
        return tuple(sorted(out))

    def names(self, S: Iterable[int]) -> list[str]:
        return [self.labels[i] for i in S]


# ---------------------------------------------------------------------------
# rank oracles


def _rank_chunk(args):
    oracle, chunk = args
    return [oracle._rank(S) for S in chunk]


class RankOracle:
    """Memoized rank function on subsets of a ground set.

    Subclasses implement ``_rank(S)`` for a sorted index tuple S.
    """

    certified = True

    def __init__(self, ground: GroundSet):
        self.ground = ground
        self._memo: dict[tuple[int, ...], int] = {}
        self.queries = 0
        self.meta: dict = {}

    def _rank(self, S: tuple[int, ...]) -> int:
        raise NotImplementedError

    def rank(self, S: Iterable) -> int:
        S = self.ground.subset(S)
        r = self._memo.get(S)
        if r is None:
            self.queries += 1
            r = self._rank(S) if S else 0
            self._memo[S] = r
        return r

    def __call__(self, S):
        return self.rank(S)

    def full_rank(self) -> int:
        return self.rank(range(len(self.ground)))

    def is_independent(self, S) -> bool:
        S = self.ground.subset(S)
        return self.rank(S) == len(S)

    def rank_many(self, subsets: Sequence[tuple[int, ...]], jobs: int = 1) -> list[int]:
        """Ranks of many subsets; with ``jobs > 1`` uncached ones go to a process pool."""
        subsets = [self.ground.subset(S) for S in subsets]
        todo = sorted({S for S in subsets if S and S not in self._memo})
        if jobs > 1 and len(todo) > 64:
            size = max(1, len(todo) // (4 * jobs))
            chunks = [todo[i : i + size] for i in range(0, len(todo), size)]
            try:
                with ProcessPoolExecutor(jobs) as ex:
                    results = list(ex.map(_rank_chunk, [(self._pool_copy(), c) for c in chunks]))
            except (TypeError, AttributeError, OSError):
                results = None
            if results is not None:
                for c, rs in zip(chunks, results):
                    for S, r in zip(c, rs):
                        self._memo[S] = r
                self.queries += len(todo)
        return [self.rank(S) for S in subsets]

    def _pool_copy(self):
        return self

    def __getstate__(self):
        d = self.__dict__.copy()
        d["_memo"] = {}
        return d


class SymbolicRankOracle(RankOracle):
    """ρ(S) = |S| − ht(P ∩ k[S]), i.e. the Krull dimension of the elimination ideal."""

    def __init__(self, ideal: IdealPresentation, budget: Budget | None = None, labels=None):
        super().__init__(GroundSet(labels or ideal.ring.variables))
        if len(self.ground) != ideal.ring.nvars:
            raise MatroidError("labels must match the ring variables")
        self.ideal = ideal
        self.budget = budget
        self._elim: dict[tuple[int, ...], IdealPresentation] = {}

    def elimination(self, S) -> IdealPresentation:
        S = self.ground.subset(S)
        out = self._elim.get(S)
        if out is None:
            out = eliminate(self.ideal, list(S), self.budget)
            self._elim[S] = out
        return out

    def _rank(self, S):
        E = self.elimination(S)
        if E.is_zero():
            r = len(S)
        else:
            r = dimension(E)
        if r == len(S):
            # independent sets are the bulk; keep only dependent eliminations
            self._elim.pop(S, None)
        return r

    def circuit_check(self, C) -> bool:
        """Circuit oracle: P ∩ k[C] is principal with a generator involving every variable of C."""
        C = self.ground.subset(C)
        E = self.elimination(C)
        gens = E.groebner().polys
        if len(gens) != 1:
            return False
        return len(gens[0].variables_used()) == len(C)


class BasesRankOracle(RankOracle):
    """Rank from an explicit list of bases: ρ(S) = max |S ∩ B|."""

    def __init__(self, ground: GroundSet, bases: Iterable[Sequence[int]]):
        super().__init__(ground)
        self._bases = [_mask(B) for B in bases]
        if not self._bases:
            raise MatroidError("a matroid has at least one basis")

    def _rank(self, S):
        m = _mask(S)
        return max(bin(m & b).count("1") for b in self._bases)


# ---------------------------------------------------------------------------
# the matroid value


@dataclass
class Matroid:
    ground: GroundSet
    rank: int
    bases: frozenset | None = None
    circuits: frozenset | None = None
    orbit_classes: dict | None = None
    meta: dict = field(default_factory=dict)

    @classmethod
    def from_bases(cls, ground: GroundSet, bases: Iterable[Sequence[int]], circuits=None) -> "Matroid":
        bases = frozenset(tuple(sorted(B)) for B in bases)
        if not bases:
            raise MatroidError("empty base family")
        r = len(next(iter(bases)))
        if circuits is not None:
            circuits = frozenset(tuple(sorted(C)) for C in circuits)
        return cls(ground, r, bases, circuits)

    def oracle(self) -> BasesRankOracle:
        if self.bases is None:
            raise MatroidError("bases not enumerated")
        return BasesRankOracle(self.ground, self.bases)

    def to_json(self) -> dict:
        out = {"ground": list(self.ground.labels), "rank": self.rank}
        if self.bases is not None:
            out["bases"] = [self.ground.names(B) for B in sorted(self.bases)]
        if self.circuits is not None:
            out["circuits"] = [self.ground.names(C) for C in sorted(self.circuits, key=lambda c: (len(c), c))]
        if self.orbit_classes:
            out["orbit_classes"] = self.orbit_classes
        return out

    @classmethod
    def from_json(cls, doc: dict) -> "Matroid":
        g = GroundSet(doc["ground"])
        bases = frozenset(g.subset(B) for B in doc["bases"]) if "bases" in doc else None
        circuits = frozenset(g.subset(C) for C in doc["circuits"]) if "circuits" in doc else None
        return cls(g, int(doc["rank"]), bases, circuits)

    def __eq__(self, other):
        if not isinstance(other, Matroid):
            return NotImplemented
        return (self.ground, self.rank, self.bases, self.circuits) == (other.ground, other.rank, other.bases, other.circuits)


# ---------------------------------------------------------------------------
# enumeration


def enumerate_bases(oracle: RankOracle, jobs: int = 1) -> frozenset:
    """All rank-sized independent subsets, by exhaustive scan."""
    n = len(oracle.ground)
    r = oracle.full_rank()
    cands = list(itertools.combinations(range(n), r))
    ranks = oracle.rank_many(cands, jobs)
    return frozenset(S for S, k in zip(cands, ranks) if k == r)


def enumerate_circuits_naive(
    oracle: RankOracle,
    max_size: int | None = None,
    confirm: Callable | None = None,
    jobs: int = 1,
) -> frozenset:
    """Minimal dependent sets of size <= max_size by an upward level scan.

    Only sets whose every maximal proper subset is independent are queried,
    so supersets of known circuits are pruned.  ``confirm(C)`` may veto a
    candidate (the symbolic circuit oracle); a veto raises, since in a
    matroid given by a prime ideal it signals a broken precondition.
    """
    n = len(oracle.ground)
    if max_size is None:
        max_size = oracle.full_rank() + 1
    max_size = min(max_size, n)
    circuits = []
    indep = {0}
    for k in range(1, max_size + 1):
        cands = []
        seen = set()
        for m in indep:
            top = m.bit_length()
            for e in range(top, n):
                c = m | (1 << e)
                if c in seen:
                    continue
                # every k-1 subset must be independent
                ok = True
                x = c
                while x:
                    low = x & -x
                    if (c ^ low) not in indep:
                        ok = False
                        break
                    x ^= low
                if ok:
                    seen.add(c)
                    cands.append(c)
        cands.sort()
        tuples = [_unmask(c) for c in cands]
        ranks = oracle.rank_many(tuples, jobs)
        nxt = set()
        for c, S, r in zip(cands, tuples, ranks):
            if r == k:
                nxt.add(c)
            else:
                if confirm is not None and not confirm(S):
                    raise MatroidError(f"circuit oracle rejected minimal dependent set {S}")
                circuits.append(S)
        indep = nxt
        if not indep:
            break
    return frozenset(circuits)


def _dependent(oracle: RankOracle, S) -> bool:
    return oracle.rank(S) < len(S)


def _shrink(oracle: RankOracle, S: Sequence[int]) -> tuple[int, ...]:
    """Greedy removal in label order down to a minimal dependent subset."""
    cur = sorted(S)
    if not _dependent(oracle, cur):
        raise MatroidError(f"set {tuple(cur)} is independent; no circuit inside")
    for x in sorted(S):
        T = [y for y in cur if y != x]
        if _dependent(oracle, T):
            cur = T
    return tuple(cur)


def fundamental_circuit(oracle: RankOracle, B: Sequence[int], e: int) -> tuple[int, ...]:
    return _shrink(oracle, sorted(set(B) | {e}))


def circuits_by_exchange(oracle: RankOracle, B: Sequence[int], bases: Iterable | None = None, scan_limit: int = 2_000_000):
    """Circuits by closing the fundamental circuits of B under circuit elimination.

    Returns ``(circuits, certificate)``.  The certificate records

    - ``minimal``: every circuit is dependent with all one-smaller subsets independent;
    - ``closed``: every elimination (C1 ∪ C2) − e contains a found circuit;
    - ``complete``: every set containing no found circuit is independent,
      decided by an upward scan that tests containment in the base list
      (enumerated by the rank-sized scan if not supplied); ``None`` if the
      scan exceeded ``scan_limit`` sets.
    """
    n = len(oracle.ground)
    B = tuple(sorted(B))
    if oracle.rank(B) != len(B) or len(B) != oracle.full_rank():
        raise MatroidError(f"{B} is not a basis")
    found: list[int] = []
    known = set()

    def add(C):
        m = _mask(C)
        if m not in known:
            known.add(m)
            found.append(m)
            return True
        return False

    for e in range(n):
        if e not in B:
            add(fundamental_circuit(oracle, B, e))

    def covered(U: int) -> bool:
        return any(c & U == c for c in found)

    i = 0
    while i < len(found):
        C1 = found[i]
        for j in range(i):
            C2 = found[j]
            common = C1 & C2
            while common:
                low = common & -common
                common ^= low
                U = (C1 | C2) & ~low
                if not covered(U):
                    add(_shrink(oracle, _unmask(U)))
        i += 1

    circuits = frozenset(_unmask(c) for c in found)

    minimal = all(
        _dependent(oracle, C) and all(not _dependent(oracle, C[:k] + C[k + 1 :]) for k in range(len(C)))
        for C in circuits
    )
    closed = True
    for a, b in itertools.combinations(found, 2):
        common = a & b
        while common:
            low = common & -common
            common ^= low
            if not covered((a | b) & ~low):
                closed = False
                break
        if not closed:
            break

    if bases is None:
        bases = enumerate_bases(oracle)
    base_masks = [_mask(b) for b in bases]
    complete = _free_sets_independent(found, base_masks, n, scan_limit)
    cert = {"minimal": minimal, "closed": closed, "complete": complete, "seed_basis": list(B)}
    return circuits, cert


def _free_sets_independent(circuits: list[int], base_masks: list[int], n: int, limit: int):
    """True iff every set containing no listed circuit lies inside some basis."""
    level = {0}
    visited = 0
    while level:
        nxt = set()
        for m in level:
            for e in range(m.bit_length(), n):
                c = m | (1 << e)
                if any(k & c == k for k in circuits):
                    continue
                visited += 1
                if visited > limit:
                    return None
                if not any(c & b == c for b in base_masks):
                    return False
                nxt.add(c)
        level = nxt
    return True


def orbit_scan(oracle: RankOracle, action, max_size: int | None = None, jobs: int = 1) -> dict:
    """Orbit-reduced level scan for bases and circuits.

    Works with one canonical representative per orbit of k-subsets, and only
    extends independent representatives.  Requires the action to preserve
    the matroid; ``check_orbits`` samples that separately.

    Returns a dict with per-level ``independent`` and ``circuits`` lists of
    ``(rep, orbit_size)`` and the totals.
    """
    n = len(oracle.ground)
    if action.n != n:
        raise MatroidError("action and ground set sizes differ")
    r = oracle.full_rank()
    if max_size is None:
        max_size = r + 1
    max_size = min(max_size, n)
    levels = {}
    indep = {0}
    for k in range(1, max_size + 1):
        cands = sorted(action.extend_reps(indep), reverse=True)
        keep = []
        for c in cands:
            x = c
            ok = True
            while x:
                low = x & -x
                if action.canonical_mask(c ^ low) not in indep:
                    ok = False
                    break
                x ^= low
            if ok:
                keep.append(c)
        tuples = [action.from_mask(c) for c in keep]
        ranks = oracle.rank_many(tuples, jobs)
        ind, circ = [], []
        nxt = set()
        for c, S, rk in zip(keep, tuples, ranks):
            size = len(action.images(c))
            if rk == k:
                nxt.add(c)
                ind.append((S, size))
            else:
                circ.append((S, size))
        levels[k] = {"independent": ind, "circuits": circ}
        indep = nxt
        if not indep:
            break
    bases = levels.get(r, {"independent": []})["independent"] if r else [((), 1)]
    return {
        "rank": r,
        "levels": levels,
        "base_classes": bases,
        "n_bases": sum(s for _, s in bases),
        "circuit_classes": [x for k in sorted(levels) for x in levels[k]["circuits"]],
        "n_circuits": sum(s for k in levels for _, s in levels[k]["circuits"]),
    }


def check_orbits(oracle: RankOracle, action, reps: Iterable[Sequence[int]]) -> tuple[bool, tuple | None]:
    """Spot-check that ranks are constant on the orbits of the given sets."""
    for S in reps:
        r = oracle.rank(S)
        for T in action.orbit(S):
            if oracle.rank(T) != r:
                return False, tuple(T)
    return True, None


def dualize(m: Matroid) -> Matroid:
    if m.bases is None:
        raise MatroidError("bases not enumerated")
    full = set(range(len(m.ground)))
    return Matroid.from_bases(m.ground, [tuple(sorted(full - set(B))) for B in m.bases])


# ---------------------------------------------------------------------------
# axiom checks


def verify_axioms(m: Matroid, exhaustive_limit: int = 2_000_000, samples: int = 2000, seed: int = 0) -> dict:
    """Check matroid axioms on enumerated bases / circuits.

    Exhaustive when the number of (pair, element) checks is below
    ``exhaustive_limit``, otherwise ``samples`` random pairs are tested.
    Never raises; failures carry witnesses.
    """
    rng = random.Random(seed)
    report: dict = {"ok": True, "checks": {}}

    def record(name, ok, count, witness=None, mode="exhaustive"):
        report["checks"][name] = {"ok": ok, "count": count, "mode": mode, "witness": witness}
        if not ok:
            report["ok"] = False

    if m.bases is not None:
        bases = sorted(m.bases)
        sizes = {len(B) for B in bases}
        bad = next((B for B in bases if len(B) != len(bases[0])), None)
        record("equicardinality", len(sizes) <= 1 and bool(bases), len(bases), bad and [list(bases[0]), list(bad)])
        masks = [_mask(B) for B in bases]
        mset = set(masks)
        work = len(masks) ** 2 * max(1, m.rank)
        if work <= exhaustive_limit:
            pairs = itertools.product(masks, masks)
            mode = "exhaustive"
        else:
            pairs = ((rng.choice(masks), rng.choice(masks)) for _ in range(samples))
            mode = "sampled"
        witness = None
        count = 0
        for A, Bm in pairs:
            if A == Bm:
                continue
            count += 1
            for a in _unmask(A & ~Bm):
                if not any((A & ~(1 << a)) | (1 << b) in mset for b in _unmask(Bm & ~A)):
                    witness = {"A": list(_unmask(A)), "B": list(_unmask(Bm)), "a": a}
                    break
            if witness:
                break
        record("basis_exchange", witness is None, count, witness, mode)

    if m.circuits is not None:
        circ = sorted(m.circuits)
        cm = [_mask(C) for C in circ]
        cset = set(cm)
        small = max((len(C) for C in circ), default=0) <= _SUBSET_SCAN
        witness = {"empty": True} if any(not C for C in circ) else None
        if small:
            # look for a circuit among the proper subsets of each circuit
            for c in cm:
                if witness:
                    break
                for sub in _proper_submasks(c):
                    if sub in cset:
                        witness = {"contained": list(_unmask(sub)), "in": list(_unmask(c))}
                        break
        else:
            by_size = sorted(cm, key=lambda x: bin(x).count("1"))
            for i, a in enumerate(by_size):
                if witness:
                    break
                for b in by_size[i + 1 :]:
                    if a & b == a and a != b:
                        witness = {"contained": list(_unmask(a)), "in": list(_unmask(b))}
                        break
        record("circuit_minimality", witness is None, len(circ), witness)

        def has_circuit(U):
            if bin(U).count("1") <= 16:
                return any(sub in cset for sub in _submasks(U))
            return any(c & U == c for c in cm)

        if len(cm) ** 2 <= exhaustive_limit // max(1, len(cm)):
            pairs = [(a, b) for a, b in itertools.combinations(cm, 2) if a & b]
            mode = "exhaustive"
        else:
            pairs = []
            for _ in range(samples * 20):
                if len(pairs) >= samples:
                    break
                a, b = rng.choice(cm), rng.choice(cm)
                if a != b and a & b:
                    pairs.append((a, b))
            mode = "sampled"
        witness = None
        for a, b in pairs:
            common = a & b
            while common and witness is None:
                low = common & -common
                common ^= low
                if not has_circuit((a | b) & ~low):
                    witness = {"C1": list(_unmask(a)), "C2": list(_unmask(b)), "e": low.bit_length() - 1}
            if witness:
                break
        record("circuit_elimination", witness is None, len(pairs), witness, mode)

        if m.bases is not None:
            masks = [_mask(B) for B in m.bases]
            sample = cm if len(cm) * len(masks) <= exhaustive_limit else rng.sample(cm, min(samples, len(cm)))
            witness = None
            for c in sample:
                if any(c & b == c for b in masks):
                    witness = {"circuit_inside_basis": list(_unmask(c))}
                    break
                for low in _unmask(c):
                    sub = c & ~(1 << low)
                    if not any(sub & b == sub for b in masks):
                        witness = {"circuit_not_minimal": list(_unmask(c)), "dependent_subset": list(_unmask(sub))}
                        break
                if witness:
                    break
            mode = "exhaustive" if len(sample) == len(cm) else "sampled"
            record("bases_circuits_consistent", witness is None, len(sample), witness, mode)
    return report
