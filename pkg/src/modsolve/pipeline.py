"""End-to-end solving: decomposition, numeric solving, verification."""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable, Optional

from .ideals import Ideal
from .modular import ModularConfig, ProgressEvent, mod_decompose
from .triang import TriangularDecomposition, triang_m, triang_m_disjoint
from .unisolve import (DEFAULT_RESIDUAL_TOL, DEFAULT_TOL, SolutionSet, VerificationReport,
                       solve_triang, test_zero)

__all__ = ["RunConfig", "RunResult", "run_pipeline"]


@dataclass(frozen=True)
class RunConfig:
    mode: str = "modular"
    primes_per_round: int = 10
    jobs: int = 1
    tol: float = DEFAULT_TOL
    residual_tol: float = DEFAULT_RESIDUAL_TOL
    seed: Optional[int] = None
    decomposition_only: bool = False
    disjoint: bool = False
    max_rounds: int = 50

    def __post_init__(self):
        if self.mode not in ("modular", "direct"):
            raise ValueError(f"mode must be 'modular' or 'direct', not {self.mode!r}")
        if self.primes_per_round < 1 or self.jobs < 1:
            raise ValueError("primes per round and jobs must be >= 1")
        if self.tol <= 0 or self.residual_tol <= 0:
            raise ValueError("tolerances must be positive")


@dataclass
class RunResult:
    ideal: Ideal
    decomposition: TriangularDecomposition
    dimension: int
    solutions: Optional[SolutionSet] = None
    report: Optional[VerificationReport] = None
    rounds: int = 0
    primes_used: int = 0
    wall_seconds: float = 0.0
    events: list = field(default_factory=list)

    @property
    def verified(self) -> Optional[bool]:
        return None if self.report is None else self.report.passed

    def to_json(self) -> dict:
        """The documented output schema; exact coefficients as strings."""
        sols = []
        if self.solutions is not None:
            for P in self.solutions:
                sols.append({
                    "coords": [[c.real, c.imag] for c in P.coordinates],
                    "multiplicity": P.multiplicity,
                    "residual": P.residual,
                    "set": P.set_index,
                    "shared_with": list(P.shared_with),
                })
        out = {
            "variables": list(self.ideal.ring.variables),
            "dimension": self.dimension,
            "triangular_sets": self.decomposition.strings(),
            "solutions": sols,
            "total_multiplicity": (self.solutions.total_multiplicity
                                   if self.solutions is not None else None),
            "distinct_points": (self.solutions.distinct_locations()
                                if self.solutions is not None else None),
            "verified": self.verified,
            "timing": {"rounds": self.rounds, "primes_used": self.primes_used,
                       "wall_seconds": self.wall_seconds},
        }
        if self.report is not None and self.report.failures:
            out["verification_failures"] = list(self.report.failures)
        return out


def run_pipeline(I: Ideal, config: Optional[RunConfig] = None,
                 on_event: Optional[Callable[[ProgressEvent], None]] = None) -> RunResult:
    """Decompose ``I`` (modularly or directly), then solve and verify.

    Raises DimensionError for ideals that are not zero-dimensional.
    """
    cfg = config or RunConfig()
    start = time.perf_counter()
    events: list[ProgressEvent] = []

    def record(ev: ProgressEvent):
        events.append(ev)
        if on_event is not None:
            on_event(ev)

    if cfg.mode == "modular":
        mcfg = ModularConfig(primes_per_round=cfg.primes_per_round, jobs=cfg.jobs,
                             seed=cfg.seed, max_rounds=cfg.max_rounds, disjoint=cfg.disjoint)
        D = mod_decompose(I, mcfg, record)
        done = [e for e in events if e.kind == "done"]
        rounds = done[-1].detail["rounds"] if done else 0
        primes = done[-1].detail["primes_used"] if done else 0
    else:
        D = (triang_m_disjoint if cfg.disjoint else triang_m)(I).canonical()
        rounds = primes = 0

    result = RunResult(I, D, 0, rounds=rounds, primes_used=primes, events=events)
    if cfg.decomposition_only:
        result.dimension = D.total_vdim() if not cfg.disjoint else I.vdim()
    else:
        result.dimension = I.vdim()
        result.solutions = solve_triang(D, cfg.tol, generators=I.generators)
        report = test_zero(I, D, result.solutions, cfg.residual_tol, dimension=result.dimension)
        if cfg.disjoint:
            # multiplicities are not preserved by the disjoint variant
            report.failures = [f for f in report.failures if not f.startswith("total")]
        result.report = report
    result.wall_seconds = time.perf_counter() - start
    return result

