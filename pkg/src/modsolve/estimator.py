"""scikit-learn style front end.

``ModularSolver().fit(system)`` runs the whole pipeline.  ``system`` may be
the text of a system file, a list of polynomials, or an :class:`Ideal`.
Hyper-parameters live in ``__init__`` and are exposed through
``get_params``/``set_params``; results are fitted attributes ending in ``_``.
"""
from __future__ import annotations

from typing import Optional

from sklearn.base import BaseEstimator

from .ideals import Ideal
from .parser import parse_system
from .pipeline import RunConfig, run_pipeline
from .unisolve import DEFAULT_RESIDUAL_TOL, DEFAULT_TOL

__all__ = ["ModularSolver"]


def _as_ideal(system) -> Ideal:
    if isinstance(system, Ideal):
        return system
    if isinstance(system, str):
        ring, gens = parse_system(system)
        return Ideal(gens, ring)
    gens = list(system)
    return Ideal(gens)


class ModularSolver(BaseEstimator):
    """Solve a zero-dimensional system through a triangular decomposition.

    Parameters
    ----------
    mode : {"modular", "direct"}
        Lift per-prime decompositions, or decompose over Q directly.
    primes_per_round : int
        Primes drawn per round of the modular loop.
    jobs : int
        Worker processes for the per-prime computations.
    tol, residual_tol : float
        Root clustering tolerance and acceptance bound on residuals.
    seed : int or None
        Seed of the prime stream.
    decomposition_only : bool
        Stop after the decomposition.
    disjoint : bool
        Use the saturation variant (pairwise comaximal sets).
    """

    def __init__(self, mode: str = "modular", primes_per_round: int = 10, jobs: int = 1,
                 tol: float = DEFAULT_TOL, residual_tol: float = DEFAULT_RESIDUAL_TOL,
                 seed: Optional[int] = None, decomposition_only: bool = False,
                 disjoint: bool = False):
        self.mode = mode
        self.primes_per_round = primes_per_round
        self.jobs = jobs
        self.tol = tol
        self.residual_tol = residual_tol
        self.seed = seed
        self.decomposition_only = decomposition_only
        self.disjoint = disjoint

    def fit(self, X, y=None):
        config = RunConfig(mode=self.mode, primes_per_round=self.primes_per_round,
                           jobs=self.jobs, tol=self.tol, residual_tol=self.residual_tol,
                           seed=self.seed, decomposition_only=self.decomposition_only,
                           disjoint=self.disjoint)
        result = run_pipeline(_as_ideal(X), config)
        self.result_ = result
        self.triangular_sets_ = result.decomposition
        self.dimension_ = result.dimension
        self.solutions_ = result.solutions
        self.verified_ = result.verified
        self.report_ = result.report
        return self

    def transform(self, X=None):
        """Solution coordinates as a list of complex tuples (fits first if ``X`` given)."""
        if X is not None:
            self.fit(X)
        if not hasattr(self, "result_"):
            raise AttributeError("ModularSolver is not fitted yet")
        if self.solutions_ is None:
            return []
        return [P.coordinates for P in self.solutions_]

    def fit_transform(self, X, y=None):
        return self.fit(X).transform()
