import itertools

import sympy
from hypothesis import given
from hypothesis import strategies as st

from algmatroid.fields import GF, QQ
from algmatroid.linalg import bareiss_det, clear_denominators, det, field_rank, integer_rank, kernel_support, rank
from algmatroid.orbits import GroundSetAction

matrices = st.integers(1, 5).flatmap(
    lambda r: st.integers(1, 5).flatmap(lambda c: st.lists(st.lists(st.integers(-4, 4), min_size=c, max_size=c), min_size=r, max_size=r))
)


@given(matrices)
def test_integer_rank_agrees_with_field_rank_and_sympy(M):
    r = integer_rank(M)
    assert r == field_rank([[QQ(x) for x in row] for row in M])
    assert r == sympy.Matrix(M).rank()


@given(matrices)
def test_rank_mod_p_never_exceeds_rational_rank(M):
    F = GF(3)
    assert field_rank([[F(x) for x in row] for row in M]) <= integer_rank(M)


@given(st.lists(st.lists(st.fractions(max_denominator=9).map(lambda f: QQ(f.numerator) / f.denominator), min_size=3, max_size=3), min_size=1, max_size=4))
def test_clear_denominators_preserves_rank(rows):
    assert integer_rank([clear_denominators(r) for r in rows]) == rank(rows)


def test_kernel_support():
    r, supp = kernel_support([[1, 0, 0], [0, 1, 0], [1, 1, 0], [0, 0, 1]])
    assert r == 3 and supp == {0, 1, 2}


def test_determinants():
    M = [[2, -1, 0], [1, 3, 4], [0, 5, -2]]
    want = sympy.Matrix(M).det()
    assert det(M) == want
    assert bareiss_det(M, lambda a, b: a // b) == want


# -- group actions -----------------------------------------------------------

def s4_on_pairs():
    pairs = list(itertools.combinations(range(4), 2))
    idx = {p: i for i, p in enumerate(pairs)}
    gens = []
    for s in [(1, 0, 2, 3), (1, 2, 3, 0)]:
        gens.append(tuple(idx[tuple(sorted((s[a], s[b])))] for a, b in pairs))
    return GroundSetAction(6, gens)


def test_group_order_and_cycles():
    act = s4_on_pairs()
    assert act.order == 24
    c = GroundSetAction.from_cycles(4, ["(1 2)", "(1 2 3 4)"])
    assert c.order == 24
    assert GroundSetAction.from_cycles(5, ["(1 2 3 4 5)"]).order == 5


@given(st.integers(0, 6))
def test_orbits_partition_k_subsets(k):
    act = s4_on_pairs()
    all_k = list(itertools.combinations(range(6), k))
    reps, sizes, closed = act.orbit_reduce(all_k)
    assert closed and sum(sizes) == len(all_k)
    seen = set()
    for R in reps:
        orb = set(act.orbit(R))
        assert not orb & seen
        seen |= orb
        assert act.canonical(R) == tuple(R)
        assert all(act.canonical(S) == tuple(R) for S in orb)
    assert seen == set(all_k)
    assert sorted(act.from_mask(m) for m in act.subset_orbit_reps(k)) == sorted(tuple(r) for r in reps)


def test_known_orbit_counts():
    # S4 on the edges of K4: graphs up to isomorphism by number of edges
    act = s4_on_pairs()
    assert [len(act.subset_orbit_reps(k)) for k in range(7)] == [1, 1, 2, 3, 2, 1, 1]
