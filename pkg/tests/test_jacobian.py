import itertools
import random

import pytest

from algmatroid.cli import RunConfig, cross_engine, rank_oracle
from algmatroid.fields import QQ
from algmatroid.groebner import normal_form
from algmatroid.jacobian import (
    JacobianError,
    LinearRankOracle,
    jacobian_of_ideal,
    jacobian_of_param,
    matroid_from_linear,
    nm_locus,
    sample_valid_point,
    specialized_rank,
)
from algmatroid.matroid import enumerate_bases
from conftest import fixture, matroid_of

TORUS_JACOBIAN = [
    "4*x^3 + 4*x*y^2 + 4*x*z^2 - 20*x",
    "4*x^2*y + 4*y^3 + 4*y*z^2 - 20*y",
    "4*x^2*z + 4*y^2*z + 4*z^3 + 12*z",
]
TORUS_NM = "-x^5*y*z - 2*x^3*y^3*z - x*y^5*z - 2*x^3*y*z^3 - 2*x*y^3*z^3 - x*y*z^5 + 2*x^3*y*z + 2*x*y^3*z + 2*x*y*z^3 + 15*x*y*z"


def test_torus_jacobian_entries():
    P = fixture("torus").ideal
    J = jacobian_of_ideal(P)
    assert J.shape == (1, 3)
    for j, want in enumerate(TORUS_JACOBIAN):
        assert J.entries[0][j] == P.ring.parse(want)


def test_torus_nm_locus_generator():
    P = fixture("torus").ideal
    m, _ = matroid_of("torus")
    nm = nm_locus(jacobian_of_ideal(P), P, m.bases)
    printed = P.ring.parse(TORUS_NM)
    assert nm.principal_generator.normalized() == printed.normalized()
    gb = P.groebner()
    assert normal_form(nm.principal_generator, gb).normalized() == normal_form(printed, gb).normalized()


def test_parabola_nm_locus_is_t():
    p = fixture("parabola_param")
    m, _ = matroid_of("parabola_param")
    nm = nm_locus(jacobian_of_param(p.param), p.param, m.bases)
    assert nm.principal_generator.normalized().to_str() == "t"


def test_line_nm_locus_is_unit():
    p = fixture("line_param")
    m, _ = matroid_of("line_param")
    assert nm_locus(jacobian_of_param(p.param), p.param, m.bases).is_unit()


def _matroid_at(J, point):
    o = LinearRankOracle(J, point=point)
    return {S: o.rank(S) for k in range(3) for S in itertools.combinations(range(2), k)}


def test_parabola_behaviour_at_and_off_the_locus():
    p = fixture("parabola_param")
    J = jacobian_of_param(p.param)
    generic = matroid_from_linear(J, p.param, seed=3)
    want = {S: generic.rank(S) for k in range(3) for S in itertools.combinations(range(2), k)}
    assert _matroid_at(J, (0,)) != want
    nm = nm_locus(J, p.param, enumerate_bases(generic))
    for seed in range(25):
        pt = sample_valid_point(p.param, nm, seed=seed, window=3)
        assert _matroid_at(J, pt) == want


def test_ideal_jacobian_represents_the_dual():
    # circle at (3/5, 4/5): J = (6/5, 8/5), rank 1, so the dual is U(1,2) like the matroid
    P = fixture("circle").ideal
    J = jacobian_of_ideal(P)
    pt = (QQ(3) / 5, QQ(4) / 5)
    assert specialized_rank(J, pt, [0]) == specialized_rank(J, pt, [1]) == 1
    o = LinearRankOracle(J, point=pt)
    assert o.rank((0,)) == o.rank((1,)) == o.rank((0, 1)) == 1


def test_special_point_on_circle_drops_rank():
    P = fixture("circle").ideal
    o = LinearRankOracle(jacobian_of_ideal(P), point=(1, 0))
    # the y column vanishes, so y is a loop of the dual and a coloop of the specialized matroid
    assert o.jrank((1,)) == 0 and o.rank((0,)) == 0


@pytest.mark.parametrize(
    "name",
    ["circle", "twisted_cubic", "twisted_cubic_param", "torus", "parabola_param", "line_param", "mixture", "pl4", "mapk", "gr36_chart"],
)
def test_symbolic_and_linear_ranks_agree(name):
    rep = cross_engine(fixture(name), RunConfig(seed=7), samples=200)
    assert rep["ok"], rep["disagreements"]
    assert rep["count"] == 200 or len(fixture(name).labels) < 8


def test_grassmannian_chart_has_the_plucker_matroid():
    a, b = (rank_oracle(fixture(n), RunConfig(seed=1)) for n in ("gr36", "gr36_chart"))
    assert a.ground.labels == b.ground.labels
    rng = random.Random(5)
    for _ in range(300):
        S = tuple(sorted(rng.sample(range(20), rng.randint(1, 12))))
        assert a.rank(S) == b.rank(S)


def test_char_p_jacobian_is_gated():
    p = fixture("nonpappus_f2")
    J = jacobian_of_ideal(p.ideal)
    with pytest.raises(JacobianError):
        LinearRankOracle(J, P=p.ideal)
    o = LinearRankOracle(J, P=p.ideal, allow_char_p=True)
    assert not o.certified
    with pytest.raises(Exception):
        rank_oracle(p, RunConfig(engine="linear"))


def test_two_sample_protocol_records_points():
    p = fixture("pl4")
    o = matroid_from_linear(jacobian_of_param(p.param), p.param, seed=11)
    assert len(o.meta["points"]) == 2 and o.meta["probes"] == 50
    assert o.full_rank() == 4


def test_special_point_loses_against_generic_point(monkeypatch):
    # feed the protocol t = 0 (on the locus) first: the higher-rank point must replace it
    import algmatroid.jacobian as jac

    p = fixture("parabola_param")
    J = jacobian_of_param(p.param)
    points = iter([(0,), (2,), (5,)])
    monkeypatch.setattr(jac, "sample_valid_point", lambda *a, **k: next(points))
    o = matroid_from_linear(J, p.param, seed=0)
    assert o.point == (2,)
    assert o.rank((1,)) == 1 and o.meta["attempts"] == 2


def test_default_sampling_finds_generic_matroid():
    p = fixture("parabola_param")
    J = jacobian_of_param(p.param)
    for seed in range(10):
        o = matroid_from_linear(J, p.param, seed=seed)
        assert o.rank((0,)) == o.rank((1,)) == o.rank((0, 1)) == 1


def test_rational_parametrization_jacobian():
    p = fixture("nonpappus_f2_param")
    assert p.field.characteristic == 2
    rng = random.Random(0)
    cfg = RunConfig(engine="symbolic")
    o = rank_oracle(p, cfg)
    assert o.full_rank() == 3
    S = tuple(sorted(rng.sample(range(9), 4)))
    assert o.rank(S) <= 3
