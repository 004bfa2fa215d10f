import json

import pytest

from algmatroid.decorations import (
    DecoratedBase,
    DecoratedCircuit,
    DecorationError,
    FiberRankOracle,
    base_degree,
    circuit_polynomial,
    decorate,
    elimination_ideal,
)
from algmatroid.groebner import IdealPresentation, normal_form
from algmatroid.matroid import Matroid
from algmatroid.polynomial import PolyRing
from conftest import fixture, matroid_of

PL4_SIZE4 = {
    "p1243*p2134 - p1234*p2143": 6,
    "p1234^2*p2134 - p1234*p1324*p2134 - p1234*p2134^2 - p1324*p2134^2 + p1234^2*p2314 + p1234*p2134*p2314": 12,
    "p1234^2*p1324 - p1234*p1324^2 - p1324^2*p2134 + p1234^2*p3124": 12,
    "p1234^4 - 2*p1234^3*p1324 + p1234^2*p1324^2 - p1234^3*p2134 - p1234^2*p1324*p2134 + 2*p1234*p1324^2*p2134"
    " + p1234*p1324*p2134^2 + p1324^2*p2134^2 - p1234^3*p3214 - p1234^2*p2134*p3214": 24,
    "p1234^2*p2314 - 2*p1234*p1324*p2314 + p1324^2*p2314 - p1324*p2314^2 + p1234^2*p3214 - 2*p1234*p1324*p3214"
    " + p1324^2*p3214 + p1234*p2314*p3214 + p1324*p2314*p3214 - p1234*p3214^2": 12,
}

# circuit complement -> (top-degree vector over p11..p44, degree)
MIXTURE_TABLE = {
    ("p32", "p42"): ((2, 1, 2, 1, 2, 1, 2, 1, 1, 0, 1, 1, 1, 0, 1, 1), 6),
    ("p41",): ((1, 2, 2, 1, 1, 2, 2, 1, 1, 1, 1, 1, 0, 1, 1, 1), 6),
    ("p31",): ((1, 2, 2, 1, 1, 2, 2, 1, 0, 1, 1, 1, 1, 1, 1, 1), 6),
    ("p14", "p24", "p34", "p44"): ((2, 2, 2, 0, 2, 2, 2, 0, 1, 1, 1, 0, 1, 1, 1, 0), 6),
    ("p22",): ((3, 1, 3, 2, 2, 0, 2, 2, 2, 1, 2, 2, 2, 1, 2, 2), 9),
    ("p21",): ((1, 3, 3, 2, 0, 2, 2, 2, 1, 2, 2, 2, 1, 2, 2, 2), 9),
    ("p33", "p43"): ((2, 2, 1, 1, 2, 2, 1, 1, 1, 1, 0, 1, 1, 1, 0, 1), 6),
    ("p11",): ((0, 2, 2, 2, 1, 3, 3, 2, 1, 2, 2, 2, 1, 2, 2, 2), 9),
    ("p12",): ((2, 0, 2, 2, 3, 1, 3, 2, 2, 1, 2, 2, 2, 1, 2, 2), 9),
    ("p13",): ((2, 2, 0, 2, 3, 3, 1, 2, 2, 2, 1, 2, 2, 2, 1, 2), 9),
    ("p23",): ((3, 3, 1, 2, 2, 2, 0, 2, 2, 2, 1, 2, 2, 2, 1, 2), 9),
}
MIXTURE_TERMS = sorted([24, 27, 27, 19, 150, 136, 24, 136, 150, 150, 150])

_decorated = {}


def decorated(name):
    if name not in _decorated:
        p = fixture(name)
        m, _ = matroid_of(name)
        ctx = p.param if p.kind == "param" else p.ideal
        _decorated[name] = decorate(ctx, m, seed=0)
    return _decorated[name]


def test_circle():
    dm = decorated("circle")
    (c,) = dm.circuits
    assert c.polynomial.to_str() == "x^2 + y^2 - 1" and c.degree == 2
    assert [b.base_degree for b in dm.bases] == [2, 2]


def test_twisted_cubic_param_base_degrees():
    dm = decorated("twisted_cubic_param")
    assert {b.base: b.base_degree for b in dm.bases} == {(0,): 1, (1,): 2, (2,): 3}


def test_torus_base_degree():
    assert decorated("torus").base_degree_histogram() == {4: 3}


def _in_ideal(theta, C, name):
    """theta (in k[C]) vanishes on the variety: normal form mod P, or substitution of phi."""
    p = fixture(name)
    if p.kind == "param":
        vals = [p.param.coords[i] for i in C]
        out = theta.compose(vals)
        return out.num.is_zero() if hasattr(out, "num") else out.is_zero()
    ring = p.ideal.ring
    lifted = theta.rename(ring, list(C))
    return normal_form(lifted, p.ideal.groebner()).is_zero()


@pytest.mark.parametrize("name", ["circle", "twisted_cubic", "torus", "nonpappus_f2", "nonpappus_f4", "nonpappus_f2_param", "mixture", "mapk"])
def test_circuit_polynomials_membership_and_minimality(name):
    dm = decorated(name)
    _, oracle = matroid_of(name)
    assert not dm.errors()
    for c in dm.circuits:
        assert _in_ideal(c.polynomial, c.circuit, name)
        assert all(d > 0 for d in c.top_degree)
        for e in c.circuit:
            assert oracle.rank(tuple(x for x in c.circuit if x != e)) == len(c.circuit) - 1
        assert c.degree == c.polynomial.total_degree()


def test_nonpappus_degree_tables():
    assert decorated("nonpappus_f2").circuit_degree_histogram() == {1: 2, 2: 33, 3: 24, 4: 21, 5: 4, 7: 2}
    assert decorated("nonpappus_f2_param").circuit_degree_histogram() == {1: 2, 2: 33, 3: 24, 4: 21, 5: 4, 7: 2}
    assert decorated("nonpappus_f4").circuit_degree_histogram() == {1: 12, 2: 59, 4: 15}
    assert not decorated("nonpappus_f2").bases
    assert any("positive characteristic" in n for n in decorated("nonpappus_f2").notes)


def test_mixture_table():
    dm = decorated("mixture")
    labels = fixture("mixture").labels
    got = {}
    for c in dm.circuits:
        comp = tuple(sorted(labels[i] for i in range(16) if i not in c.circuit))
        got[comp] = (tuple(c.top_degree_full), c.degree)
    assert got == {tuple(sorted(k)): v for k, v in MIXTURE_TABLE.items()}
    assert sorted(len(c.polynomial.terms) for c in dm.circuits) == MIXTURE_TERMS
    assert dm.base_degree_histogram() == {1: 52, 2: 54, 3: 6}


def test_pl4_size_four_circuit_polynomials():
    p = fixture("pl4")
    for text, orbit in PL4_SIZE4.items():
        names = sorted({t for t in text.replace("^", " ").replace("*", " ").replace("-", " ").replace("+", " ").split() if t.startswith("p")})
        C = tuple(p.labels.index(v) for v in names)
        dc = circuit_polynomial(p.param, C)
        printed = PolyRing(p.field, tuple(names)).parse(text)
        assert dc.polynomial.normalized() == printed.normalized()
        assert p.action.orbit_size(C) == orbit
        assert _in_ideal(dc.polynomial, C, "pl4")


def test_pl4_large_base_degree():
    p = fixture("pl4")
    B = tuple(p.labels.index(v) for v in ("p1234", "p2341", "p3412", "p4123"))
    assert base_degree(p.param, B).base_degree == 24


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_base_degree_two_sample_stability(seed):
    p = fixture("mixture")
    m, _ = matroid_of("mixture")
    B = sorted(m.bases)[seed * 17]
    a = base_degree(p.ideal, B, seed=seed)
    b = base_degree(p.ideal, B, seed=seed + 100)
    assert a.base_degree == b.base_degree
    counts = [c for _, c in a.samples]
    assert counts.count(a.base_degree) >= 2


def test_non_circuit_and_non_basis_are_rejected():
    p = fixture("twisted_cubic")
    with pytest.raises(DecorationError):
        circuit_polynomial(p.ideal, (0,))  # independent
    with pytest.raises(DecorationError):
        base_degree(p.ideal, (0, 1))  # dependent: the fiber is empty or positive-dimensional


def test_loop_note_over_rationals():
    R = PolyRing(fixture("circle").field, ("x", "y"))
    P = IdealPresentation.from_strings(R, ["x^2 + 1"])
    dc = circuit_polynomial(P, (0,))
    assert dc.degree == 2 and "loop" in dc.note


def test_orbit_propagation_matches_direct_computation():
    p = fixture("pl4")
    m, _ = matroid_of("pl4")
    small = sorted(C for C in m.circuits if len(C) == 4)
    sub = Matroid(m.ground, m.rank, None, frozenset(small))
    via_orbits = decorate(p.param, sub, bases=False, action=p.action)
    direct = decorate(p.param, sub, bases=False)
    assert sum(c.propagated for c in via_orbits.circuits) == len(small) - 5
    for a, b in zip(via_orbits.circuits, direct.circuits):
        assert a.circuit == b.circuit
        assert a.polynomial.normalized() == b.polynomial.normalized()


def test_decoration_json_is_deterministic():
    a = json.dumps(decorated("nonpappus_f4").to_json(), sort_keys=True)
    p = fixture("nonpappus_f4")
    m, _ = matroid_of("nonpappus_f4")
    b = json.dumps(decorate(p.ideal, m, seed=0).to_json(), sort_keys=True)
    assert a == b


def test_fiber_rank_oracle_agrees_on_twisted_cubic():
    o = FiberRankOracle(fixture("twisted_cubic_param").param)
    assert [o.rank(S) for S in [(), (0,), (0, 1), (0, 1, 2)]] == [0, 1, 1, 1]


def test_elimination_ideal_forms_agree():
    pi, pp = fixture("twisted_cubic"), fixture("twisted_cubic_param")
    a = elimination_ideal(pi.ideal, (1, 2)).groebner().polys
    b = elimination_ideal(pp.param, (1, 2)).groebner().polys
    assert [f.to_str() for f in a] == [f.to_str() for f in b]
