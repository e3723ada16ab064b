"""Bound states of the coupled radial first-order system and ordering
checks between pairs of attractive potentials.

Public surface: build a Problem from a geometry (AngularSector or OneDim)
and a Potential, solve its nodeless state with solve_ground, and compare
two potentials with end_to_end / check_theorem / check_corollary.
"""
from .comparison import (ComparisonCase, ComparisonReport, CorollaryVerdict,
                         TheoremVerdict, WeightKind, check_corollary,
                         check_preconditions, check_theorem, crossings,
                         end_to_end, verify_identity, weighted_cumulative)
from .coulomb import CoulombGround, coulomb_ground, coulomb_ground_for
from .errors import (ConfigError, DiracompError, NoBoundStateError,
                     QuadratureError, SolverError, SupercriticalCouplingError,
                     UnsupportedPotentialError)
from .kernel import BACKEND, available_backends
from .model import (AngularSector, Classification, OneDim, Potential, Problem,
                    classify, evaluate, kappa, make_potential, scale_length)
from .solver import (EffectiveMassCrossing, LemmaCheck, ShootingConfig,
                     WaveSolution, count_nodes, integrate_out,
                     lemma_monotonicity_check, mismatch, rhs,
                     sign_change_of_effective_mass, solve_ground)

__version__ = "0.1.0"

__all__ = [
    "AngularSector", "BACKEND", "Classification", "ComparisonCase",
    "ComparisonReport", "ConfigError", "CorollaryVerdict", "CoulombGround",
    "DiracompError", "EffectiveMassCrossing", "LemmaCheck",
    "NoBoundStateError", "OneDim", "Potential", "Problem", "QuadratureError",
    "ShootingConfig", "SolverError", "SupercriticalCouplingError",
    "TheoremVerdict", "UnsupportedPotentialError", "WaveSolution",
    "WeightKind", "available_backends", "check_corollary",
    "check_preconditions", "check_theorem", "classify", "coulomb_ground",
    "coulomb_ground_for", "count_nodes", "crossings", "end_to_end",
    "evaluate", "integrate_out", "kappa", "lemma_monotonicity_check",
    "make_potential", "mismatch", "rhs", "scale_length",
    "sign_change_of_effective_mass", "solve_ground", "verify_identity",
    "weighted_cumulative", "__version__",
]
