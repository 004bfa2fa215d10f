"""Command-line front end.

    algmatroid bases fixture:mixture
    algmatroid decorate torus.problem --out torus.json
    algmatroid circuits fixture:pl4 --action
    algmatroid check fixture:pl4 --cross-engine

Every command prints one JSON document (stdout or ``--out``); ``--format
text`` prints a short table instead.  Exit codes: 0 ok, 2 budget exceeded,
3 bad input, 4 verification failed.
"""

from __future__ import annotations

import argparse
import json
import logging
import random
import sys
import time
from importlib import resources
from pathlib import Path

from .decorations import DecoratedBase, FiberRankOracle, DecoratedCircuit, DecorationError, base_degree, circuit_polynomial, decorate, histogram
from .fields import FieldError
from .groebner import BudgetExceeded, eliminate
from .jacobian import JacobianError, LinearRankOracle, jacobian_of_ideal, jacobian_of_param, matroid_from_linear, nm_locus
from .matroid import (
    Matroid,
    MatroidError,
    SymbolicRankOracle,
    circuits_by_exchange,
    enumerate_bases,
    enumerate_circuits_naive,
    orbit_scan,
    verify_axioms,
)
from .polynomial import ParseError
from .problem import Problem, ProblemError, RunConfig, load_problem

SCHEMA_VERSION = 1

EXIT_OK, EXIT_BUDGET, EXIT_INPUT, EXIT_VERIFY = 0, 2, 3, 4

log = logging.getLogger("algmatroid")


class VerificationFailed(RuntimeError):
    pass


def fixture_path(name: str) -> Path:
    """Path of a bundled fixture, e.g. ``fixture_path("torus")``."""
    p = resources.files("algmatroid") / "fixtures" / f"{name}.problem"
    if not p.is_file():
        raise ProblemError(f"no bundled fixture named {name!r}")
    return Path(str(p))


def fixture_names() -> list[str]:
    d = resources.files("algmatroid") / "fixtures"
    return sorted(p.name[: -len(".problem")] for p in d.iterdir() if p.name.endswith(".problem"))


def open_problem(spec: str) -> Problem:
    """A path, or ``fixture:NAME`` for a bundled fixture."""
    if spec.startswith("fixture:"):
        return load_problem(fixture_path(spec[len("fixture:"):]))
    return load_problem(spec)


# ---------------------------------------------------------------------------
# pipeline pieces, usable without the argument parser


def rank_oracle(problem: Problem, cfg: RunConfig):
    engine = cfg.resolve_engine(problem)
    budget = cfg.budget()
    if engine == "symbolic" and problem.kind == "param" and problem.field.characteristic == 0:
        return FiberRankOracle(problem.param, seed=cfg.seed, budget=budget)
    if engine == "symbolic":
        return SymbolicRankOracle(problem.ideal_presentation(budget), budget, problem.labels)
    if problem.kind == "param":
        J = jacobian_of_param(problem.param)
        return matroid_from_linear(J, problem.param, seed=cfg.seed, retries=cfg.retries, budget=budget)
    J = jacobian_of_ideal(problem.ideal)
    return matroid_from_linear(J, problem.ideal, seed=cfg.seed, budget=budget)


def decoration_context(problem: Problem, cfg: RunConfig):
    """The parametrization itself when there is one, else the ideal."""
    return problem.param if problem.kind == "param" else problem.ideal_presentation(cfg.budget())


def find_circuits(oracle, bases, method="auto", jobs=1) -> tuple[frozenset, dict]:
    """Circuits by exchange closure, falling back to the naive scan when uncertified.

    ``auto`` goes straight to the naive scan for Jacobian oracles.
    """
    info: dict = {"method": method}
    if method == "auto" and isinstance(oracle, LinearRankOracle):
        # ranks are cheap linear algebra, the plain level scan wins
        method = "naive"
    if method in ("auto", "exchange"):
        B = min(bases)
        circs, cert = circuits_by_exchange(oracle, B, bases)
        info["certificate"] = {k: cert[k] for k in ("minimal", "closed", "complete")}
        if method == "exchange" or all(info["certificate"].values()):
            info["method"] = "exchange"
            return frozenset(circs), info
        log.info("exchange closure not certified complete, running the naive scan")
    circs = enumerate_circuits_naive(oracle, jobs=jobs)
    info["method"] = "naive"
    return frozenset(circs), info


def compute_matroid(problem: Problem, cfg: RunConfig, circuits=True, method="auto", oracle=None) -> tuple[Matroid, dict]:
    oracle = oracle or rank_oracle(problem, cfg)
    bases = enumerate_bases(oracle, jobs=cfg.jobs)
    info: dict = {}
    circs = None
    if circuits:
        circs, info = find_circuits(oracle, bases, method, cfg.jobs)
    m = Matroid.from_bases(oracle.ground, bases, circs)
    return m, info


def orbit_summary(problem: Problem, cfg: RunConfig, oracle=None, max_size=None) -> dict:
    if problem.action is None:
        raise ProblemError("--action needs an [action] section in the problem file")
    oracle = oracle or rank_oracle(problem, cfg)
    scan = orbit_scan(oracle, problem.action, max_size=max_size, jobs=cfg.jobs)
    names = oracle.ground.names
    return {
        "rank": scan["rank"],
        "n_bases": scan["n_bases"],
        "n_circuits": scan["n_circuits"],
        "group_order": problem.action.order,
        "base_classes": [{"rep": names(S), "orbit_size": k} for S, k in scan["base_classes"]],
        "circuit_classes": [{"rep": names(S), "orbit_size": k} for S, k in scan["circuit_classes"]],
        "histograms": {
            "circuit_size": _str_keys(histogram(len(S) for S, _ in scan["circuit_classes"])),
            "circuit_size_weighted": _str_keys((len(S), k) for S, k in scan["circuit_classes"]),
        },
        "_scan": scan,
    }


def _str_keys(h) -> dict:
    if not isinstance(h, dict):
        acc: dict = {}
        for key, k in h:
            acc[key] = acc.get(key, 0) + k
        h = dict(sorted(acc.items()))
    return {str(k): v for k, v in h.items()}


def cross_engine(problem: Problem, cfg: RunConfig, samples=200) -> dict:
    """Symbolic and linear ranks compared on random subsets (plus the empty and full sets)."""
    if problem.field.characteristic != 0:
        raise ProblemError("cross-engine check needs characteristic zero")
    budget = cfg.budget()
    sym = rank_oracle(problem, RunConfig(**{**cfg.__dict__, "engine": "symbolic"}))
    lin = rank_oracle(problem, RunConfig(**{**cfg.__dict__, "engine": "linear"}))
    rng = random.Random(cfg.seed)
    n = len(problem.labels)
    subsets = [(), tuple(range(n))]
    while len(subsets) < samples:
        k = rng.randint(1, n)
        subsets.append(tuple(sorted(rng.sample(range(n), k))))
    bad = []
    for S in subsets:
        a, b = sym.rank(S), lin.rank(S)
        if a != b:
            bad.append({"subset": sym.ground.names(S), "symbolic": a, "linear": b})
    return {"ok": not bad, "count": len(subsets), "disagreements": bad[:10]}


# ---------------------------------------------------------------------------
# commands


def _subset(problem, text):
    if text is None:
        return tuple(range(len(problem.labels)))
    items = text.replace(",", " ").split()
    try:
        return tuple(sorted({problem.labels.index(x) for x in items}))
    except ValueError:
        bad = [x for x in items if x not in problem.labels]
        raise ProblemError(f"unknown labels {bad}") from None


def cmd_rank(problem, cfg, args) -> dict:
    S = _subset(problem, args.subset)
    oracle = rank_oracle(problem, cfg)
    return {"subset": [problem.labels[i] for i in S], "rank": oracle.rank(S), "full_rank": oracle.full_rank()}


def cmd_bases(problem, cfg, args) -> dict:
    if args.action:
        oracle = rank_oracle(problem, cfg)
        out = orbit_summary(problem, cfg, oracle, max_size=oracle.full_rank())
        out.pop("circuit_classes")
        out.pop("n_circuits")
        out.pop("histograms")
        out.pop("_scan")
        return out
    m, _ = compute_matroid(problem, cfg, circuits=False)
    out = m.to_json()
    out["n_bases"] = len(m.bases)
    return out


def cmd_circuits(problem, cfg, args) -> dict:
    if args.action:
        out = orbit_summary(problem, cfg)
        out.pop("_scan")
        return out
    m, info = compute_matroid(problem, cfg, method=args.method)
    out = m.to_json()
    out.update(n_bases=len(m.bases), n_circuits=len(m.circuits), circuit_search=info)
    out["histograms"] = {"circuit_size": _str_keys(histogram(len(C) for C in m.circuits))}
    return out


def cmd_decorate(problem, cfg, args) -> dict:
    context = decoration_context(problem, cfg)
    budget = cfg.budget()
    want_c = "circuits" in cfg.decorations
    want_b = "bases" in cfg.decorations
    if args.action:
        summary = orbit_summary(problem, cfg)
        scan = summary.pop("_scan")
        labels = problem.labels
        circs, bases = [], []
        if want_c:
            for S, k in scan["circuit_classes"]:
                circs.append((_try(lambda: circuit_polynomial(context, S, budget), "circuit", S, labels), k))
        if want_b and problem.field.characteristic == 0:
            for S, k in scan["base_classes"]:
                bases.append((_try(lambda: base_degree(context, S, seed=cfg.seed, budget=budget), "base", S, labels), k))
        with_poly = "polynomials" in cfg.decorations
        out = {k: v for k, v in summary.items() if k not in ("base_classes", "circuit_classes")}
        out["decorated_circuit_classes"] = [{**_item_json(c, labels, with_poly), "orbit_size": k} for c, k in circs]
        out["decorated_base_classes"] = [{**_item_json(b, labels, with_poly), "orbit_size": k} for b, k in bases]
        cd = [(c.degree, k) for c, k in circs if isinstance(c, DecoratedCircuit)]
        bd = [(b.base_degree, k) for b, k in bases if isinstance(b, DecoratedBase)]
        out["histograms"].update(
            circuit_degree_classes=_str_keys(histogram(d for d, _ in cd)),
            circuit_degree_weighted=_str_keys(cd),
            base_degree_classes=_str_keys(histogram(d for d, _ in bd)),
            base_degree_weighted=_str_keys(bd),
        )
        out["n_errors"] = sum(isinstance(x, dict) for x, _ in circs + bases)
        return out
    m, info = compute_matroid(problem, cfg, method=args.method)
    dm = decorate(context, m, circuits=want_c, bases=want_b, seed=cfg.seed, budget=budget, action=problem.action)
    out = dm.to_json(with_polynomials="polynomials" in cfg.decorations)
    out.update(n_bases=len(m.bases), n_circuits=len(m.circuits), circuit_search=info, n_errors=len(dm.errors()))
    if "nm-locus" in cfg.decorations and problem.field.characteristic == 0:
        out["nm_locus"] = _nm(problem, cfg, m.bases).to_json()
    return out


def _try(fn, kind, S, labels):
    try:
        return fn()
    except (DecorationError, BudgetExceeded, ArithmeticError, ValueError) as e:
        return {kind: [labels[i] for i in S], "error": type(e).__name__, "message": str(e)}


def _item_json(x, labels, with_poly):
    if isinstance(x, DecoratedCircuit):
        return x.to_json(labels, with_poly)
    if isinstance(x, DecoratedBase):
        return x.to_json(labels)
    return x


def _nm(problem, cfg, bases):
    if problem.field.characteristic != 0:
        raise ProblemError("the NM-locus is defined through the Jacobian, which needs characteristic zero")
    if problem.kind == "param":
        return nm_locus(jacobian_of_param(problem.param), problem.param, bases, cfg.budget())
    return nm_locus(jacobian_of_ideal(problem.ideal), problem.ideal, bases, cfg.budget())


def cmd_nm_locus(problem, cfg, args) -> dict:
    oracle = rank_oracle(problem, cfg)
    bases = enumerate_bases(oracle, jobs=cfg.jobs)
    return {"n_bases": len(bases), "nm_locus": _nm(problem, cfg, bases).to_json()}


def cmd_check(problem, cfg, args) -> dict:
    if args.bases_file:
        try:
            doc = json.loads(Path(args.bases_file).read_text())
            doc = doc.get("result", doc)
            doc.setdefault("ground", list(problem.labels))
            doc.setdefault("rank", len(doc["bases"][0]) if doc.get("bases") else 0)
            m = Matroid.from_json(doc)
        except (OSError, ValueError, KeyError) as e:
            raise ProblemError(f"cannot read matroid from {args.bases_file}: {e}") from None
    else:
        m, _ = compute_matroid(problem, cfg, method=args.method)
    report = verify_axioms(m, seed=cfg.seed)
    out = {"axioms": report, "n_bases": len(m.bases) if m.bases is not None else None}
    if m.circuits is not None:
        out["n_circuits"] = len(m.circuits)
    ok = report["ok"]
    if args.cross_engine:
        out["cross_engine"] = cross_engine(problem, cfg, args.samples)
        ok = ok and out["cross_engine"]["ok"]
    out["ok"] = ok
    if not ok:
        raise VerificationFailed(out)
    return out


def cmd_implicitize(problem, cfg, args) -> dict:
    budget = cfg.budget()
    P = problem.ideal_presentation(budget)
    if args.subset is not None:
        S = _subset(problem, args.subset)
        P = eliminate(P, list(S), budget)
    gb = P.groebner(budget=budget)
    return {"ring": list(P.ring.variables), "generators": [g.to_str() for g in gb.polys]}


COMMANDS = {
    "rank": cmd_rank,
    "bases": cmd_bases,
    "circuits": cmd_circuits,
    "decorate": cmd_decorate,
    "nm-locus": cmd_nm_locus,
    "check": cmd_check,
    "implicitize": cmd_implicitize,
}


# ---------------------------------------------------------------------------
# argument handling and output


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="algmatroid", description="Decorated algebraic matroids of ideals and parametrizations.")
    ap.add_argument("--list-fixtures", action="store_true", help="print the bundled fixture names and exit")
    sub = ap.add_subparsers(dest="command")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("problem", help="problem file, or fixture:NAME")
    common.add_argument("--engine", choices=["auto", "symbolic", "linear"], default="auto")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--budget-pairs", type=int, default=None, help="max S-pairs per Groebner basis")
    common.add_argument("--budget-basis", type=int, default=None, help="max basis size per Groebner basis")
    common.add_argument("--retries", type=int, default=20, help="resampling attempts for generic points")
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--out", default=None, help="write JSON here instead of stdout")
    common.add_argument("--format", choices=["json", "text"], default="json")
    common.add_argument("-v", "--verbose", action="store_true")

    p = sub.add_parser("rank", parents=[common], help="rank of a subset")
    p.add_argument("--subset", default=None, help="labels separated by spaces or commas (default: everything)")
    p = sub.add_parser("bases", parents=[common], help="list the bases")
    p.add_argument("--action", action="store_true", help="count orbit classes under the problem's group action")
    for name, helptext in (("circuits", "list the circuits"), ("decorate", "circuit polynomials and base degrees")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("--action", action="store_true", help="work with orbit representatives")
        p.add_argument("--method", choices=["auto", "exchange", "naive"], default="auto")
        if name == "decorate":
            p.add_argument(
                "--decorations",
                default="bases,circuits,polynomials,degrees,top-degrees",
                help="comma list from bases,circuits,polynomials,degrees,top-degrees,nm-locus",
            )
    sub.add_parser("nm-locus", parents=[common], help="non-matroidal locus from the Jacobian")
    p = sub.add_parser("check", parents=[common], help="matroid axioms and optional engine comparison")
    p.add_argument("--cross-engine", action="store_true")
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--bases-file", default=None, help="check this matroid JSON instead of computing one")
    p.add_argument("--method", choices=["auto", "exchange", "naive"], default="auto")
    p = sub.add_parser("implicitize", parents=[common], help="generators of P, or of P restricted to --subset")
    p.add_argument("--subset", default=None)
    return ap


def _config(args) -> RunConfig:
    decos = tuple(x.strip() for x in getattr(args, "decorations", "bases,circuits,polynomials").split(",") if x.strip())
    return RunConfig(
        engine=args.engine,
        seed=args.seed,
        max_pairs=args.budget_pairs,
        max_basis=args.budget_basis,
        retries=args.retries,
        jobs=args.jobs,
        out=args.out,
        decorations=decos,
    )


def envelope(command: str, problem: Problem, cfg: RunConfig, result: dict) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "problem": {
            "name": problem.name,
            "sha256": problem.source_hash,
            "field": str(problem.field),
            "kind": problem.kind,
            "labels": list(problem.labels),
        },
        "config": {"engine": cfg.resolve_engine(problem), "seed": cfg.seed},
        "result": result,
    }


def render_text(doc: dict) -> str:
    res = doc["result"]
    lines = [f"{doc['command']}  {doc['problem']['name']}  field={doc['problem']['field']}  engine={doc['config']['engine']}"]
    for key in ("rank", "full_rank", "n_bases", "n_circuits", "n_errors", "ok"):
        if key in res:
            lines.append(f"  {key:<12}{res[key]}")
    if "subset" in res:
        lines.append(f"  {'subset':<12}{' '.join(res['subset'])}")
    for name, h in sorted(res.get("histograms", {}).items()):
        if h:
            lines.append(f"  {name}:")
            lines.extend(f"    {k:>4}  {v}" for k, v in h.items())
    if "nm_locus" in res:
        nm = res["nm_locus"]
        lines.append(f"  nm-locus ({nm['form']}): {nm.get('generator', nm.get('components'))}")
    if "generators" in res:
        lines.extend(f"  {g}" for g in res["generators"])
    return "\n".join(lines)


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.list_fixtures:
        print("\n".join(fixture_names()))
        return EXIT_OK
    if not args.command:
        ap.print_help(sys.stderr)
        return EXIT_INPUT
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    t0 = time.perf_counter()
    doc = None
    code = EXIT_OK
    try:
        problem = open_problem(args.problem)
        cfg = _config(args)
        try:
            result = COMMANDS[args.command](problem, cfg, args)
        except VerificationFailed as e:
            result = e.args[0]
            code = EXIT_VERIFY
        doc = envelope(args.command, problem, cfg, result)
    except BudgetExceeded as e:
        print(f"budget exceeded: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except (ProblemError, ParseError, FieldError, JacobianError, MatroidError, DecorationError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    log.info("%s finished in %.2fs", args.command, time.perf_counter() - t0)
    text = render_text(doc) + "\n" if args.format == "text" else json.dumps(doc, indent=1, sort_keys=True) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    if code == EXIT_VERIFY:
        print("verification failed", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
