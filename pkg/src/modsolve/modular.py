"""Multi-modular triangular decomposition.

Each round decomposes ``I mod p`` for a batch of fresh primes (in parallel
when ``jobs > 1``), keeps the largest class of primes that agree on the
shape of the result, lifts coefficients with CRT and Farey reconstruction,
and accepts the lift once it reproduces the decomposition modulo one more
independent prime.
"""
from __future__ import annotations

import logging
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import repeat
from math import prod
from typing import Callable, Optional, Sequence

from .arith import PrimeStream, farey_reconstruct
from .ideals import DimensionError, Ideal, reduce_ideal_mod_p
from .poly import Polynomial
from .triang import TriangularDecomposition, TriangularSet, triang_m, triang_m_disjoint

__all__ = [
    "ModularConfig",
    "ModularFailure",
    "ModularSnapshot",
    "ProgressEvent",
    "delete_unlucky",
    "lift_decomposition",
    "mod_decompose",
    "p_test_triang",
    "snapshot_for_prime",
]

logger = logging.getLogger(__name__)


class ModularFailure(RuntimeError):
    """The retry loop hit its round cap without an accepted lift."""


@dataclass(frozen=True)
class ModularConfig:
    primes_per_round: int = 10
    jobs: int = 1
    seed: Optional[int] = None
    max_rounds: int = 50
    method: str = "auto"
    disjoint: bool = False

    def __post_init__(self):
        if self.primes_per_round < 1:
            raise ValueError("primes_per_round must be >= 1")
        if self.jobs < 1:
            raise ValueError("jobs must be >= 1")
        if self.max_rounds < 1:
            raise ValueError("max_rounds must be >= 1")


#: signature of a prime for which ``I mod p`` is not zero-dimensional
POSITIVE_DIMENSIONAL = (-1, ())


@dataclass(frozen=True)
class ModularSnapshot:
    prime: int
    decomposition: Optional[TriangularDecomposition]
    signature: tuple

    @property
    def zero_dimensional(self) -> bool:
        return self.decomposition is not None

    @property
    def total_degree(self) -> int:
        return sum(sum(d) for d in self.signature[1])


@dataclass(frozen=True)
class ProgressEvent:
    kind: str      # round, snapshot, vote, lift, ptest, done
    round: int
    primes: tuple = ()
    detail: dict = field(default_factory=dict)

    def __str__(self):
        extra = " ".join(f"{k}={v}" for k, v in self.detail.items())
        return f"[round {self.round}] {self.kind} {extra}".rstrip()


def _decomposer(disjoint: bool):
    return triang_m_disjoint if disjoint else triang_m


def snapshot_for_prime(I: Ideal, p: int, method: str = "auto",
                       disjoint: bool = False) -> Optional[ModularSnapshot]:
    """Decompose ``I mod p``; ``None`` if ``p`` divides a denominator.

    If ``I mod p`` is not zero-dimensional the snapshot carries no
    decomposition and the :data:`POSITIVE_DIMENSIONAL` signature, so that it
    still takes part in the vote.
    """
    Ip = reduce_ideal_mod_p(I, p)
    if Ip is None:
        return None
    try:
        D = _decomposer(disjoint)(Ip, method)
    except DimensionError:
        return ModularSnapshot(p, None, POSITIVE_DIMENSIONAL)
    return ModularSnapshot(p, D, D.signature())


def _signature_text(sig) -> str:
    return repr(sig)


def delete_unlucky(snapshots: Sequence[ModularSnapshot]):
    """Keep the largest class of equal signatures.

    Ties go to the smaller total leading degree, then to the smaller
    signature text.  Returns ``(survivors, primes)`` in input order.
    """
    if not snapshots:
        raise ValueError("no snapshots to vote on")
    classes: dict[tuple, list[ModularSnapshot]] = defaultdict(list)
    for s in snapshots:
        classes[s.signature].append(s)
    best = min(classes.items(),
               key=lambda kv: (-len(kv[1]), kv[1][0].total_degree, _signature_text(kv[0])))
    survivors = best[1]
    return survivors, [s.prime for s in survivors]


def _crt_basis(primes: Sequence[int]):
    N = prod(primes)
    basis = []
    for p in primes:
        q = N // p
        basis.append(q * pow(q, -1, p) % N)
    return N, basis


def lift_decomposition(snapshots: Sequence[ModularSnapshot]) -> Optional[TriangularDecomposition]:
    """CRT + Farey lift of agreeing snapshots; ``None`` if any coefficient fails."""
    if not snapshots:
        raise ValueError("nothing to lift")
    sig = snapshots[0].signature
    if any(s.signature != sig for s in snapshots):
        raise ValueError("snapshots disagree on the signature; vote first")
    if sig == POSITIVE_DIMENSIONAL:
        raise ValueError("cannot lift positive-dimensional snapshots")
    primes = [s.prime for s in snapshots]
    if len(set(primes)) != len(primes):
        raise ValueError("duplicate primes among snapshots")
    N, basis = _crt_basis(primes)
    ring = snapshots[0].decomposition.ring.with_modulus(None)
    sets = []
    for k, F0 in enumerate(snapshots[0].decomposition.sets):
        polys = []
        for j in range(len(F0.polys)):
            images = [s.decomposition.sets[k].polys[j].terms for s in snapshots]
            monos = set()
            for t in images:
                monos.update(t)
            terms = {}
            for m in monos:
                r = sum(t.get(m, 0) * e for t, e in zip(images, basis)) % N
                c = farey_reconstruct(r, N)
                if c is None:
                    return None
                if c:
                    terms[m] = c
            polys.append(Polynomial(ring, terms))
        try:
            sets.append(TriangularSet(ring, tuple(polys)))
        except ValueError:
            return None
    return TriangularDecomposition(ring, tuple(sets))


def _coefficient_integers(I: Ideal, F: Optional[TriangularDecomposition] = None) -> set[int]:
    out = set()
    for f in I.generators:
        for c in f.terms.values():
            c = Fraction(c)
            out.update((abs(c.numerator), c.denominator))
    if F is not None:
        for c in F.coefficients():
            c = Fraction(c)
            out.update((abs(c.numerator), c.denominator))
    out.discard(0)
    out.discard(1)
    return out


def p_test_triang(I: Ideal, F: TriangularDecomposition, used_primes: Sequence[int] = (),
                  stream: Optional[PrimeStream] = None, method: str = "auto",
                  disjoint: bool = False) -> bool:
    """Check a lifted decomposition against a fresh prime.

    The prime avoids ``used_primes`` and every numerator and denominator in
    ``I`` and ``F``.  True iff ``F mod p`` equals the decomposition of
    ``I mod p``, both in canonical order.
    """
    if stream is None:
        stream = PrimeStream()
    stream.issued.update(used_primes)
    excluded = _coefficient_integers(I, F)
    while True:
        p = stream.draw(1, excluded).primes[0]
        Ip = reduce_ideal_mod_p(I, p)
        Fp = F.reduce_mod(p)
        if Ip is not None and Fp is not None:
            break
    try:
        direct = _decomposer(disjoint)(Ip, method)
    except DimensionError:
        return False
    return direct.canonical() == Fp.canonical()


def _denominators(I: Ideal) -> set[int]:
    out = set()
    for f in I.generators:
        for c in f.terms.values():
            d = Fraction(c).denominator
            if d > 1:
                out.add(d)
    return out


def mod_decompose(I: Ideal, config: Optional[ModularConfig] = None,
                  on_event: Optional[Callable[[ProgressEvent], None]] = None
                  ) -> TriangularDecomposition:
    """Triangular decomposition of a zero-dimensional ``I`` over Q, modularly.

    Result is in canonical order.  Raises ModularFailure after
    ``config.max_rounds`` rounds without an accepted lift.
    """
    cfg = config or ModularConfig()
    if I.ring.modulus is not None:
        raise ValueError("mod_decompose expects an ideal over the rationals")

    def emit(kind, rnd, primes=(), **detail):
        ev = ProgressEvent(kind, rnd, tuple(primes), detail)
        logger.debug("%s", ev)
        if on_event is not None:
            on_event(ev)

    stream = PrimeStream(cfg.seed)
    excluded = _denominators(I)
    snapshots: list[ModularSnapshot] = []
    used: list[int] = []
    pool = ProcessPoolExecutor(max_workers=cfg.jobs) if cfg.jobs > 1 else None
    try:
        for rnd in range(1, cfg.max_rounds + 1):
            batch = list(stream.draw(cfg.primes_per_round, excluded))
            used.extend(batch)
            emit("round", rnd, batch)
            if pool is None:
                results = [snapshot_for_prime(I, p, cfg.method, cfg.disjoint) for p in batch]
            else:
                results = list(pool.map(snapshot_for_prime, repeat(I), batch,
                                        repeat(cfg.method), repeat(cfg.disjoint)))
            for p, s in zip(batch, results):
                if s is None:
                    emit("snapshot", rnd, (p,), usable=False)
                else:
                    snapshots.append(s)
            if not snapshots:
                continue
            snapshots, kept = delete_unlucky(snapshots)
            emit("vote", rnd, kept, kept=len(kept), signature=snapshots[0].signature)
            if not snapshots[0].zero_dimensional:
                raise DimensionError("ideal is not zero-dimensional "
                                     f"(modulo {len(kept)} of {len(used)} primes)")
            F = lift_decomposition(snapshots)
            emit("lift", rnd, kept, ok=F is not None)
            if F is None:
                continue
            ok = p_test_triang(I, F, used, stream, cfg.method, cfg.disjoint)
            emit("ptest", rnd, kept, ok=ok)
            if ok:
                emit("done", rnd, kept, rounds=rnd, primes_used=len(used))
                return F.canonical()
    finally:
        if pool is not None:
            pool.shutdown()
    raise ModularFailure(f"no verified lift after {cfg.max_rounds} rounds "
                         f"({len(used)} primes)")
