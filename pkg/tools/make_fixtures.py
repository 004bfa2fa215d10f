"""Regenerate the machine-built fixtures (mixture, pl4, gr36, mapk).

Run from the repository root:  python3 tools/make_fixtures.py
"""

import itertools
import random
from pathlib import Path

from algmatroid.fields import QQ
from algmatroid.linalg import det
from algmatroid.polynomial import PolyRing

OUT = Path(__file__).resolve().parent.parent / "src" / "algmatroid" / "fixtures"


def _perm_cycles(perm):
    """1-based cycle notation of a permutation tuple (identity -> '')."""
    seen, out = set(), []
    for i in range(len(perm)):
        if i in seen or perm[i] == i:
            continue
        cyc, j = [], i
        while j not in seen:
            seen.add(j)
            cyc.append(j + 1)
            j = perm[j]
        out.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(out)


def mixture():
    V = [f"p{i}{j}" for i in range(1, 5) for j in range(1, 5)]
    R = PolyRing(QQ, tuple(V))
    P = {v: R.var(v) for v in V}
    col5 = [
        R.zero(),
        R.zero(),
        P["p33"] * (P["p11"] * P["p22"] - P["p12"] * P["p21"]),
        P["p41"] * (P["p12"] * P["p23"] - P["p13"] * P["p22"]) + P["p43"] * (P["p11"] * P["p22"] - P["p12"] * P["p21"]),
    ]
    M = [[P[f"p{i}{j}"] for j in range(1, 5)] + [col5[i - 1]] for i in range(1, 5)]
    gens = []
    for drop in range(5):
        gens.append(det([[row[j] for j in range(5) if j != drop] for row in M]))
    lines = [
        "# component of the algebraic boundary of the rank-3 mixture model for 4x4 tables:",
        "# the 4x4 minors of",
        "#   p11 p12 p13 p14 0",
        "#   p21 p22 p23 p24 0",
        "#   p31 p32 p33 p34 p33*(p11*p22-p12*p21)",
        "#   p41 p42 p43 p44 p41*(p12*p23-p13*p22)+p43*(p11*p22-p12*p21)",
        "# (generated by tools/make_fixtures.py)",
        "[field]",
        "QQ",
        "[variables]",
        " ".join(V),
        "[ideal]",
    ]
    lines += [g.to_str() for g in gens if not g.is_zero()]
    (OUT / "mixture.problem").write_text("\n".join(lines) + "\n")


def pl4():
    perms = list(itertools.permutations((1, 2, 3, 4)))
    th = "abcd"
    lines = [
        "# Plackett-Luce model for n = 4 with reciprocals dropped:",
        "# p_pi = th_pi1 * (th_pi1 + th_pi2) * (th_pi1 + th_pi2 + th_pi3)",
        "# parameters a b c d stand for th_1 .. th_4",
        "[field]",
        "QQ",
        "[parameters]",
        "a b c d",
        "[coordinates]",
    ]
    for pi in perms:
        s = [th[k - 1] for k in pi]
        lines.append(f"p{''.join(map(str, pi))} = {s[0]}*({s[0]} + {s[1]})*({s[0]} + {s[1]} + {s[2]})")
    index = {pi: i for i, pi in enumerate(perms)}
    # S4 acting on letters: sigma . p_pi = p_(sigma o pi)
    lines.append("[action]")
    for sigma in [(2, 1, 3, 4), (2, 3, 4, 1)]:
        img = tuple(index[tuple(sigma[k - 1] for k in pi)] for pi in perms)
        lines.append(_perm_cycles(img))
    (OUT / "pl4.problem").write_text("\n".join(lines) + "\n")


def gr36():
    triples = list(itertools.combinations(range(1, 7), 3))
    rows = ["a", "b", "c"]
    lines = [
        "# Grassmannian Gr(3,6): Pluecker coordinates as the 3x3 minors of a generic 3x6 matrix",
        "# with rows a1..a6, b1..b6, c1..c6",
        "[field]",
        "QQ",
        "[parameters]",
        " ".join(f"{r}{j}" for r in rows for j in range(1, 7)),
        "[coordinates]",
    ]
    for (i, j, k) in triples:
        terms = []
        for sigma in itertools.permutations((i, j, k)):
            inv = sum(1 for x, y in itertools.combinations(sigma, 2) if x > y)
            sign = "-" if inv % 2 else "+"
            terms.append(f"{sign} a{sigma[0]}*b{sigma[1]}*c{sigma[2]}")
        expr = " ".join(terms).lstrip("+ ")
        lines.append(f"p{i}{j}{k} = {expr}")
    index = {t: n for n, t in enumerate(triples)}
    lines.append("[action]")
    for sigma in [(2, 1, 3, 4, 5, 6), (2, 3, 4, 5, 6, 1)]:
        img = tuple(index[tuple(sorted(sigma[x - 1] for x in t))] for t in triples)
        lines.append(_perm_cycles(img))
    (OUT / "gr36.problem").write_text("\n".join(lines) + "\n")


def gr36_chart():
    """Gr(3,6) through the chart [u*I | X]: every Pluecker coordinate is u times a minor of [I | X]."""
    names = ["u"] + [f"x{i}{j}" for i in range(1, 4) for j in range(4, 7)]
    R = PolyRing(QQ, tuple(names))
    u = R.var("u")
    M = [[R.zero()] * 6 for _ in range(3)]
    for i in range(3):
        M[i][i] = R.one()
        for j in range(3, 6):
            M[i][j] = R.var(f"x{i + 1}{j + 1}")
    triples = list(itertools.combinations(range(6), 3))
    lines = [
        "# Grassmannian Gr(3,6) via the 10-parameter chart u*[I | X]; generically injective,",
        "# so base degrees can be read off parameter fibers",
        "[field]",
        "QQ",
        "[parameters]",
        " ".join(names),
        "[coordinates]",
    ]
    for T in triples:
        f = u * det([[M[r][c] for c in T] for r in range(3)])
        lines.append(f"p{''.join(str(c + 1) for c in T)} = {f.to_str()}")
    index = {t: n for n, t in enumerate(triples)}
    lines.append("[action]")
    for sigma in [(1, 0, 2, 3, 4, 5), (1, 2, 3, 4, 5, 0)]:
        img = tuple(index[tuple(sorted(sigma[x] for x in t))] for t in triples)
        lines.append(_perm_cycles(img))
    (OUT / "gr36_chart.problem").write_text("\n".join(lines) + "\n")


MAPK_GENS = [
    # the printed first generator has +a00*K*S00; mass action gives -a00*K*S00, and only
    # the latter has a 3-dimensional component
    "-{a00}*K*S00 + {b00}*KS00 + {g0100}*FS01 + {g1000}*FS10 + {g1100}*FS11",
    "-{a01}*K*S01 + {b01}*KS01 + {c0001}*KS00 - {al01}*F*S01 + {be01}*FS01 + {g1101}*FS11",
    "-{a10}*K*S10 + {b10}*KS10 + {c0010}*KS00 - {al10}*F*S10 + {be10}*FS10 + {g1110}*FS11",
    "-{al11}*F*S11 + {be11}*FS11 + {c0111}*KS01 + {c1011}*KS10 + {c0011}*KS00",
    "{a00}*K*S00 - ({b00} + {c0001} + {c0010} + {c0011})*KS00",
    "{a01}*K*S01 - ({b01} + {c0111})*KS01",
    "{a10}*K*S10 - ({b10} + {c1011})*KS10",
    "{al01}*F*S01 - ({be01} + {g0100})*FS01",
    "{al10}*F*S10 - ({be10} + {g1000})*FS10",
    "{al11}*F*S11 - ({be11} + {g1101} + {g1110} + {g1100})*FS11",
    "-{a00}*K*S00 + ({b00} + {c0001} + {c0010} + {c0011})*KS00 - {a01}*K*S01 + ({b01} + {c0111})*KS01"
    " - {a10}*K*S10 + ({b10} + {c1011})*KS10",
    "-{al01}*F*S01 + ({be01} + {g0100})*FS01 - {al10}*F*S10 + ({be10} + {g1000})*FS10 - {al11}*F*S11"
    " + ({be11} + {g1101} + {g1110} + {g1100})*FS11",
]
MAPK_CONSTS = "a00 a01 a10 b00 b01 b10 c0001 c0010 c0011 c0111 c1011 al01 al10 al11 be01 be10 be11 g0100 g1000 g1100 g1101 g1110".split()
MAPK_SEED = 20140


def mapk():
    rng = random.Random(MAPK_SEED)
    consts = {k: rng.randint(2, 31) for k in MAPK_CONSTS}
    lines = [
        "# MAPK steady-state ideal with rate constants fixed to random integers",
        f"# drawn by random.Random({MAPK_SEED}).randint(2, 31) in the order:",
        "# " + " ".join(MAPK_CONSTS),
        "# " + " ".join(str(consts[k]) for k in MAPK_CONSTS),
        "# The ideal has a coordinate-subspace component containing K; saturating by K",
        "# keeps only the 3-dimensional component whose matroid is studied.",
        "# The first generator uses the mass-action sign -a00*K*S00.",
        "[field]",
        "QQ",
        "[variables]",
        "KS00 KS01 KS10 FS01 FS10 FS11 K F S00 S01 S10 S11",
        "[ideal]",
    ]
    lines += [g.format(**consts) for g in MAPK_GENS]
    lines += ["[saturate]", "K"]
    (OUT / "mapk.problem").write_text("\n".join(lines) + "\n")


if __name__ == "__main__":
    mixture()
    pl4()
    gr36()
    gr36_chart()
    mapk()
