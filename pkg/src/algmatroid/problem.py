"""Problem files: a small sectioned text format for ideals and parametrizations.

Example::

    # the unit circle
    [field]
    QQ
    [variables]
    x y
    [ideal]
    x^2 + y^2 - 1

A parametrization replaces ``[variables]``/``[ideal]`` by ``[parameters]``
and ``[coordinates]`` (one ``label = expression`` per line).  Optional
sections: ``[action]`` (one permutation per line in 1-based cycle notation on
ground-set positions) and ``[saturate]`` (polynomials to saturate the ideal
by, applied once at load time).  A trailing backslash continues a line;
``#`` starts a comment.
"""

from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass, field
from pathlib import Path

from .fields import GF, QQ, Field, FieldError
from .groebner import Budget, IdealPresentation, implicitize, saturate
from .jacobian import Parametrization
from .orbits import ActionError, GroundSetAction
from .polynomial import ParseError, PolyRing, parse_polynomial, parse_rational

__all__ = ["Problem", "ProblemError", "parse_problem", "load_problem", "parse_field", "RunConfig"]

_SECTIONS = {"field", "variables", "ideal", "parameters", "coordinates", "action", "saturate", "name", "note"}


class ProblemError(ValueError):
    pass


def parse_field(text: str) -> Field:
    """``QQ``, ``GF(p)``, ``GF(q)`` or ``GF(q, L, <modulus in L>)``."""
    t = text.strip()
    if t in ("QQ", "Q"):
        return QQ
    m = re.fullmatch(r"GF\(\s*(\d+)\s*(?:,\s*([A-Za-z_]\w*)\s*(?:,\s*(.+?))?)?\)", t)
    if not m:
        raise ProblemError(f"unrecognized field {t!r}")
    q = int(m.group(1))
    gen = m.group(2)
    mod_text = m.group(3)
    try:
        if mod_text is None:
            F = GF(q)
            if F.k > 1 and gen and gen != F.generator_name:
                F = GF(F.p, list(F.modulus), gen)
            return F
        # the prime is the smallest prime factor of q
        p = next(d for d in range(2, q + 1) if q % d == 0)
        base = GF(p)
        R = PolyRing(base, (gen,))
        f = parse_polynomial(mod_text, R)
        deg = f.total_degree()
        coeffs = [0] * (deg + 1)
        for e, c in f.terms.items():
            coeffs[e[0]] = c.v
        if coeffs[-1] != 1:
            raise ProblemError("modulus must be monic")
        F = GF(p, coeffs, gen)
        if F.order != q:
            raise ProblemError(f"modulus of degree {deg} does not give a field of order {q}")
        return F
    except (FieldError, ParseError) as e:
        raise ProblemError(str(e)) from None


@dataclass
class Problem:
    name: str
    field: Field
    kind: str  # "ideal" or "param"
    labels: tuple
    ideal: IdealPresentation | None = None
    param: Parametrization | None = None
    action: GroundSetAction | None = None
    source_hash: str = ""
    notes: list = field(default_factory=list)
    _implicit: IdealPresentation | None = None

    def ideal_presentation(self, budget: Budget | None = None) -> IdealPresentation:
        """The prime ideal, implicitized on demand for parametrizations."""
        if self.ideal is not None:
            return self.ideal
        if self._implicit is None:
            self._implicit = implicitize(self.param, budget)
        return self._implicit


def _logical_lines(text: str):
    buf = ""
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].rstrip()
        if line.endswith("\\"):
            buf += line[:-1] + " "
            continue
        line = (buf + line).strip()
        buf = ""
        if line:
            yield line
    if buf.strip():
        yield buf.strip()


def parse_problem(text: str, name: str = "problem") -> Problem:
    sections: dict[str, list[str]] = {}
    current = None
    for line in _logical_lines(text):
        m = re.fullmatch(r"\[\s*([A-Za-z_]+)\s*\]", line)
        if m:
            current = m.group(1).lower()
            if current not in _SECTIONS:
                raise ProblemError(f"unknown section [{current}]")
            if current in sections:
                raise ProblemError(f"duplicate section [{current}]")
            sections[current] = []
            continue
        if current is None:
            raise ProblemError(f"text before the first section: {line!r}")
        sections[current].append(line)

    if "field" not in sections or len(sections["field"]) != 1:
        raise ProblemError("exactly one [field] line is required")
    F = parse_field(sections["field"][0])
    has_ideal = "ideal" in sections
    has_param = "coordinates" in sections
    if has_ideal == has_param:
        raise ProblemError("give exactly one of [ideal] or [parameters]/[coordinates]")
    if "name" in sections and sections["name"]:
        name = sections["name"][0]

    try:
        if has_ideal:
            names = " ".join(sections.get("variables", [])).replace(",", " ").split()
            if not names:
                raise ProblemError("[variables] is required with [ideal]")
            ring = PolyRing(F, tuple(names))
            gens = [parse_polynomial(t, ring) for t in sections["ideal"]]
            if not gens:
                raise ProblemError("[ideal] has no generators")
            ideal = IdealPresentation(ring, tuple(gens))
            for t in sections.get("saturate", []):
                ideal = saturate(ideal, parse_polynomial(t, ring))
            prob = Problem(name, F, "ideal", tuple(names), ideal=ideal)
        else:
            if "saturate" in sections:
                raise ProblemError("[saturate] applies to ideals only")
            pnames = " ".join(sections.get("parameters", [])).replace(",", " ").split()
            if not pnames:
                raise ProblemError("[parameters] is required with [coordinates]")
            pring = PolyRing(F, tuple(pnames))
            coords = []
            for line in sections["coordinates"]:
                if "=" not in line:
                    raise ProblemError(f"coordinate line needs 'label = expression': {line!r}")
                lab, expr = line.split("=", 1)
                coords.append((lab.strip(), parse_rational(expr, pring)))
            labels = tuple(l for l, _ in coords)
            for l in labels:
                if not re.fullmatch(r"[A-Za-z_]\w*", l):
                    raise ProblemError(f"bad coordinate label {l!r}")
            phi = Parametrization(pring, tuple(c for _, c in coords), labels)
            prob = Problem(name, F, "param", labels, param=phi)
    except (ParseError, ValueError) as e:
        if isinstance(e, ProblemError):
            raise
        raise ProblemError(str(e)) from None

    if "action" in sections:
        try:
            act = GroundSetAction.from_cycles(len(prob.labels), sections["action"])
        except ActionError as e:
            raise ProblemError(str(e)) from None
        prob.action = act if act.generators else None
    prob.notes = sections.get("note", [])
    prob.source_hash = hashlib.sha256(text.encode()).hexdigest()[:16]
    return prob


def load_problem(path) -> Problem:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as e:
        raise ProblemError(f"cannot read {path}: {e}") from None
    return parse_problem(text, path.stem)


@dataclass
class RunConfig:
    engine: str = "auto"  # symbolic | linear | auto
    seed: int = 0
    max_pairs: int | None = None
    max_basis: int | None = None
    retries: int = 20
    jobs: int = 1
    out: str | None = None
    decorations: tuple = ("bases", "circuits", "polynomials", "degrees", "top-degrees")

    def budget(self) -> Budget:
        d = Budget()
        return Budget(self.max_pairs or d.max_pairs, self.max_basis or d.max_basis)

    def resolve_engine(self, problem: Problem) -> str:
        """auto: parametrizations go linear, ideals symbolic; characteristic p is always symbolic."""
        if problem.field.characteristic != 0:
            if self.engine == "linear":
                raise ProblemError("the linear engine needs characteristic zero")
            return "symbolic"
        if self.engine == "auto":
            return "linear" if problem.kind == "param" else "symbolic"
        if self.engine not in ("symbolic", "linear"):
            raise ProblemError(f"unknown engine {self.engine!r}")
        return self.engine
