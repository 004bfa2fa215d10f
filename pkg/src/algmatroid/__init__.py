"""Decorated algebraic matroids: bases, circuits with their polynomials, base
degrees and the non-matroidal locus, from an ideal or a rational parametrization.
"""

from .decorations import DecoratedBase, DecoratedCircuit, DecoratedMatroid, base_degree, circuit_polynomial, decorate
from .fields import GF, QQ
from .groebner import Budget, BudgetExceeded, IdealPresentation, eliminate, implicitize
from .jacobian import (
    NMLocus,
    Parametrization,
    jacobian_of_ideal,
    jacobian_of_param,
    matroid_from_linear,
    nm_locus,
)
from .matroid import (
    Matroid,
    SymbolicRankOracle,
    circuits_by_exchange,
    enumerate_bases,
    enumerate_circuits_naive,
    orbit_scan,
    verify_axioms,
)
from .polynomial import PolyRing, parse_polynomial
from .problem import Problem, RunConfig, load_problem, parse_problem
from .cli import compute_matroid, fixture_path, open_problem, rank_oracle

__version__ = "0.1.0"
