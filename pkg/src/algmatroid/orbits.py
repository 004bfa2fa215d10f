"""Permutation actions on a ground set and orbit representatives of subsets.

Subsets are handled internally as bitmasks in *reversed* bit order (element
i is bit n-1-i) so that the lexicographically least sorted index tuple in an
orbit is the numerically largest mask.
"""

from __future__ import annotations

import re
from collections import deque
from typing import Iterable, Sequence

__all__ = ["GroundSetAction", "ActionError"]

_CHUNK = 8


class ActionError(ValueError):
    pass


class GroundSetAction:
    """Group generated by permutations of ``range(n)``.

    Each generator is a tuple ``g`` with ``g[i]`` the image of element i.
    The whole group is expanded by breadth-first closure, which is fine for
    the small groups used here (S4 on 24 points, S6 on 20 points).
    """

    def __init__(self, n: int, generators: Sequence[Sequence[int]], max_order: int = 100_000):
        self.n = n
        gens = []
        for g in generators:
            g = tuple(int(x) for x in g)
            if len(g) != n or sorted(g) != list(range(n)):
                raise ActionError(f"not a permutation of {n} points: {g}")
            gens.append(g)
        self.generators = tuple(gens)
        self.max_order = max_order
        self._elements = None
        self._tables = None

    @classmethod
    def from_cycles(cls, n: int, lines: Iterable[str], one_based: bool = True) -> "GroundSetAction":
        """Parse generators written in cycle notation, e.g. ``(1 2)(3 4 5)``."""
        gens = []
        for line in lines:
            line = line.strip()
            if not line:
                continue
            perm = list(range(n))
            if not re.fullmatch(r"(\(\s*\d+(?:[\s,]+\d+)*\s*\)\s*)+", line):
                raise ActionError(f"malformed cycle notation: {line!r}")
            seen = set()
            for cyc in re.findall(r"\(([^)]*)\)", line):
                pts = [int(x) - (1 if one_based else 0) for x in re.split(r"[\s,]+", cyc.strip())]
                for x in pts:
                    if not 0 <= x < n:
                        raise ActionError(f"point {x + one_based} outside ground set of size {n}")
                    if x in seen:
                        raise ActionError(f"point {x + one_based} repeated in {line!r}")
                    seen.add(x)
                for a, b in zip(pts, pts[1:] + pts[:1]):
                    perm[a] = b
            gens.append(tuple(perm))
        return cls(n, gens)

    @property
    def elements(self) -> list[tuple[int, ...]]:
        if self._elements is None:
            ident = tuple(range(self.n))
            seen = {ident}
            queue = deque([ident])
            while queue:
                h = queue.popleft()
                for g in self.generators:
                    c = tuple(g[h[i]] for i in range(self.n))
                    if c not in seen:
                        seen.add(c)
                        queue.append(c)
                        if len(seen) > self.max_order:
                            raise ActionError("group too large for full expansion")
            self._elements = sorted(seen)
        return self._elements

    @property
    def order(self) -> int:
        return len(self.elements)

    # -- subsets -------------------------------------------------------------
    def to_mask(self, S: Iterable[int]) -> int:
        n = self.n
        m = 0
        for i in S:
            m |= 1 << (n - 1 - i)
        return m

    def from_mask(self, m: int) -> tuple[int, ...]:
        n = self.n
        return tuple(sorted(n - 1 - b for b in _bits(m)))

    def _build_tables(self):
        n = self.n
        nchunks = (n + _CHUNK - 1) // _CHUNK
        tables = []
        for g in self.elements:
            per = []
            for c in range(nchunks):
                lo = c * _CHUNK
                tbl = [0] * (1 << _CHUNK)
                for v in range(1 << _CHUNK):
                    out = 0
                    for b in range(_CHUNK):
                        if v >> b & 1 and lo + b < n:
                            i = n - 1 - (lo + b)
                            out |= 1 << (n - 1 - g[i])
                    tbl[v] = out
                per.append(tbl)
            tables.append(per)
        self._tables = tables

    def images(self, mask: int) -> set[int]:
        if self._tables is None:
            self._build_tables()
        out = set()
        for per in self._tables:
            img = 0
            m = mask
            for tbl in per:
                img |= tbl[m & 0xFF]
                m >>= _CHUNK
            out.add(img)
        return out

    def canonical_mask(self, mask: int) -> int:
        if self._tables is None:
            self._build_tables()
        best = mask
        for per in self._tables:
            img = 0
            m = mask
            for tbl in per:
                img |= tbl[m & 0xFF]
                m >>= _CHUNK
            if img > best:
                best = img
        return best

    def canonical(self, S: Iterable[int]) -> tuple[int, ...]:
        """Lexicographically least image of S under the group."""
        return self.from_mask(self.canonical_mask(self.to_mask(S)))

    def orbit(self, S: Iterable[int]) -> list[tuple[int, ...]]:
        return sorted(self.from_mask(m) for m in self.images(self.to_mask(S)))

    def orbit_size(self, S: Iterable[int]) -> int:
        return len(self.images(self.to_mask(S)))

    def apply(self, g: Sequence[int], S: Iterable[int]) -> tuple[int, ...]:
        return tuple(sorted(g[i] for i in S))

    def orbit_reduce(self, family: Iterable[Sequence[int]]):
        """Group a family of subsets into orbits.

        Returns ``(reps, sizes, closed)``: canonical representatives (sorted),
        the number of family members in each class, and whether every class
        is a full orbit (i.e. the family is invariant).
        """
        counts: dict[int, int] = {}
        for S in family:
            c = self.canonical_mask(self.to_mask(S))
            counts[c] = counts.get(c, 0) + 1
        reps = sorted(counts, reverse=True)
        sizes = [counts[m] for m in reps]
        closed = all(len(self.images(m)) == counts[m] for m in reps)
        return [self.from_mask(m) for m in reps], sizes, closed

    def subset_orbit_reps(self, k: int, grow_from: Iterable[int] | None = None) -> list[int]:
        """Canonical masks of all k-subsets, built level by level."""
        level = {0}
        for _ in range(k):
            level = self.extend_reps(level)
        return sorted(level, reverse=True)

    def extend_reps(self, reps: Iterable[int]) -> set[int]:
        """Canonical masks of all (k+1)-sets of the form rep ∪ {e}."""
        n = self.n
        out = set()
        for m in reps:
            for b in range(n):
                bit = 1 << b
                if not m & bit:
                    out.add(self.canonical_mask(m | bit))
        return out

    def stabilizes(self, predicate, masks: Iterable[int]) -> tuple[bool, int | None]:
        """Check that ``predicate`` is constant on the orbit of each mask."""
        for m in masks:
            v = predicate(m)
            for img in self.images(m):
                if predicate(img) != v:
                    return False, m
        return True, None


def _bits(m: int):
    while m:
        low = m & -m
        yield low.bit_length() - 1
        m ^= low
