import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from algmatroid.fields import GF, QQ
from algmatroid.groebner import (
    Budget,
    BudgetExceeded,
    IdealPresentation,
    UnitIdealError,
    dimension,
    eliminate,
    implicitize,
    normal_form,
    poly_gcd,
    poly_lcm,
    saturate,
    zero_dim_degree,
)
from algmatroid.jacobian import Parametrization
from algmatroid.polynomial import GREVLEX, LEX, Polynomial, PolyRing, parse_rational

R = PolyRing(QQ, ("x", "y", "z"))
R7 = PolyRing(GF(7), ("x", "y", "z"))


def ideal(*gens, ring=R):
    return IdealPresentation.from_strings(ring, gens)


def _mono(ring, e):
    return Polynomial(ring, {tuple(e): ring.field.one})


def spoly(f, g, order):
    ef, cf = f.leading_term(order)
    eg, cg = g.leading_term(order)
    l = tuple(max(a, b) for a, b in zip(ef, eg))
    uf = _mono(f.ring, [a - b for a, b in zip(l, ef)]).scale(1 / cf if f.ring.field is QQ else cf ** -1)
    ug = _mono(g.ring, [a - b for a, b in zip(l, eg)]).scale(1 / cg if g.ring.field is QQ else cg ** -1)
    return uf * f - ug * g


small_polys = st.lists(
    st.tuples(st.integers(-3, 3), st.tuples(*[st.integers(0, 2)] * 3)), min_size=1, max_size=3
)


def from_terms(ring, terms):
    acc = {}
    for c, e in terms:
        acc[e] = acc.get(e, 0) + c
    return Polynomial(ring, {e: ring.field(c) for e, c in acc.items()})


@st.composite
def ideals(draw, ring=R):
    gens = [from_terms(ring, draw(small_polys)) for _ in range(draw(st.integers(1, 3)))]
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        gens = [ring.parse("x")]
    return IdealPresentation(ring, tuple(gens))


@given(ideals(), st.sampled_from([GREVLEX, LEX]))
def test_buchberger_criterion(I, order):
    gb = I.groebner(order, Budget(20_000, 500))
    for i, f in enumerate(gb.polys):
        for g in gb.polys[i + 1 :]:
            assert normal_form(spoly(f, g, order), gb).is_zero()
    for f in I.generators:
        assert normal_form(f, gb).is_zero()


@given(ideals(), st.randoms(use_true_random=False))
def test_reduced_basis_is_unique(I, rnd):
    gens = list(I.generators)
    rnd.shuffle(gens)
    extra = gens[0] * gens[-1] + gens[0]
    J = IdealPresentation(R, tuple(gens) + (extra,))
    assert I.groebner(budget=Budget(20_000, 500)) == J.groebner(budget=Budget(20_000, 500))


@given(ideals())
def test_matches_sympy_reduced_basis(I):
    x, y, z = sympy.symbols("x y z")
    ours = sorted(p.to_str() for p in I.groebner(budget=Budget(20_000, 500)).polys)
    G = sympy.groebner([sympy.sympify(g.to_str().replace("^", "**")) for g in I.generators], x, y, z, order="grevlex")
    theirs = sorted(R.parse(str(g).replace("**", "^")).monic().to_str() for g in G.exprs)
    assert ours == theirs


def test_zero_dim_degree_is_order_invariant():
    I = ideal("x^2 + y^2 + z^2 - 3", "x*y - 1", "z^3 - x")
    d1 = zero_dim_degree(I.groebner(GREVLEX))
    d2 = zero_dim_degree(I.groebner(LEX))
    assert d1 == d2 > 0


def test_zero_dim_degree_counts_points_with_multiplicity():
    assert zero_dim_degree(ideal("x^2 - 1", "y - x", "z")) == 2
    assert zero_dim_degree(ideal("x^3", "y", "z")) == 3


def test_dimensions():
    assert dimension(ideal("x^2 + y^2 - 1", "z")) == 1
    assert dimension(ideal("x*y", "x*z")) == 2
    assert dimension(ideal("x", "y", "z")) == 0
    assert dimension(IdealPresentation(R, ())) == 3
    with pytest.raises(UnitIdealError):
        dimension(ideal("x", "x - 1"))


def test_eliminate_twisted_cubic():
    I = ideal("y - x^2", "z - x^3")
    E = eliminate(I, [1, 2])
    assert [g.to_str() for g in E.groebner().polys] == ["y^3 - z^2"]
    assert eliminate(I, [0]).is_zero()


def test_implicitize_twisted_cubic():
    T = PolyRing(QQ, ("t",))
    phi = Parametrization(T, tuple(parse_rational(s, T) for s in ("t", "t^2", "t^3")), ("x", "y", "z"))
    P = implicitize(phi)
    for g in ("y - x^2", "z - x*y", "y^2 - x*z"):
        assert P.ring.parse(g) in P


def test_implicitize_rational_map():
    T = PolyRing(QQ, ("t",))
    phi = Parametrization(T, (parse_rational("(1 - t^2)/(1 + t^2)", T), parse_rational("2*t/(1 + t^2)", T)), ("x", "y"))
    P = implicitize(phi)
    assert [g.to_str() for g in P.groebner().polys] == ["x^2 + y^2 - 1"]


def test_saturation_removes_component():
    I = ideal("x*y", "x*z")
    S = saturate(I, R.parse("x"))
    assert sorted(g.to_str() for g in S.groebner().polys) == ["y", "z"]


def test_lcm_gcd_against_sympy():
    f = R.parse("(x^2 - y^2)*(x + z)")
    g = R.parse("(x - y)^2*(z + 1)")
    x, y, z = sympy.symbols("x y z")
    F, G = (sympy.sympify(p.to_str().replace("^", "**")) for p in (f, g))
    want_l = R.parse(str(sympy.expand(sympy.lcm(F, G))).replace("**", "^"))
    want_g = R.parse(str(sympy.expand(sympy.gcd(F, G))).replace("**", "^"))
    assert poly_lcm(f, g).normalized() == want_l.normalized()
    assert poly_gcd(f, g).normalized() == want_g.normalized()


def test_finite_field_basis():
    I = ideal("x^7 - x", "y^2 - x", ring=R7)
    gb = I.groebner()
    assert not gb.is_unit()
    assert R7.parse("y^14 - y^2") in I


def test_budget_exceeded():
    I = ideal("x^3 - y*z + 1", "y^3 - x*z + 2", "z^3 - x*y + 3")
    with pytest.raises(BudgetExceeded):
        I.groebner(LEX, Budget(max_pairs=2, max_basis=5_000))
