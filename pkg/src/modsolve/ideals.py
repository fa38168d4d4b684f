"""Ideals: dimension checks, vdim, quotients, saturation, containment.

For zero-dimensional ideals the quotient ``I : h`` is computed as the kernel
of ``f -> NF(h*f)`` on ``K[X]/I``, walking monomials in increasing lex order
(the FGLM pattern).  This produces the reduced lex basis of ``I : h``
directly.  The elimination route, ``I : h = (I ∩ <h>) / h`` with
``I ∩ <h>`` read off a lex basis of ``<t*I, (1-t)*h>``, works for any ideal
and is kept both as the general fallback and as an independent check.
"""
from __future__ import annotations

import threading
from typing import Iterable, Optional, Sequence

from .groebner import GroebnerBasis, reduced_groebner
from .poly import Polynomial, Ring

__all__ = [
    "DimensionError",
    "Ideal",
    "ideal_contains",
    "ideal_intersection",
    "ideal_quotient",
    "is_zero_dimensional",
    "reduce_ideal_mod_p",
    "saturation",
    "standard_monomials",
    "vdim",
]


class DimensionError(ValueError):
    """Raised when an operation needs a zero-dimensional ideal and gets another."""


class Ideal:
    """Generators in a fixed ring, with a lazily computed reduced lex basis.

    The basis is computed at most once even under concurrent first access.
    """

    def __init__(self, generators: Iterable[Polynomial], ring: Optional[Ring] = None):
        gens = [g for g in generators]
        if ring is None:
            if not gens:
                raise ValueError("cannot infer the ring of an empty generator list")
            ring = gens[0].ring
        for g in gens:
            if g.ring != ring:
                raise ValueError(f"generator {g} is not in {ring}")
        self.ring = ring
        self.generators = tuple(g for g in gens if not g.is_zero())
        self._basis: Optional[GroebnerBasis] = None
        self._lock = threading.Lock()

    @classmethod
    def from_basis(cls, basis: GroebnerBasis) -> "Ideal":
        ideal = cls(basis.elements, basis.ring)
        ideal._basis = basis
        return ideal

    def __getstate__(self):
        return {"ring": self.ring, "generators": self.generators, "_basis": self._basis}

    def __setstate__(self, state):
        self.__dict__.update(state)
        self._lock = threading.Lock()

    def __repr__(self):
        return f"Ideal({', '.join(map(str, self.generators))}; {self.ring!r})"

    def groebner(self) -> GroebnerBasis:
        if self._basis is None:
            with self._lock:
                if self._basis is None:
                    if not self.generators:
                        self._basis = GroebnerBasis(self.ring, ())
                    else:
                        self._basis = reduced_groebner(self.generators)
        return self._basis

    def is_unit(self) -> bool:
        return self.groebner().is_unit()

    def is_zero_dimensional(self) -> bool:
        return is_zero_dimensional(self.groebner())

    def vdim(self) -> int:
        return vdim(self.groebner())

    def contains(self, f: Polynomial) -> bool:
        return self.groebner().contains(f)

    __contains__ = contains

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.ring == other.ring and self.groebner() == other.groebner()

    def __hash__(self):
        return hash(self.groebner())

    def __add__(self, other) -> "Ideal":
        if isinstance(other, Polynomial):
            return Ideal(self.generators + (other,), self.ring)
        return Ideal(self.generators + tuple(other.generators), self.ring)

    def quotient(self, h: Polynomial, method: str = "auto") -> "Ideal":
        return Ideal.from_basis(ideal_quotient(self, h, method))

    def saturation(self, h: Polynomial, method: str = "auto") -> "Ideal":
        return Ideal.from_basis(saturation(self, h, method))

    def reduce_mod(self, p: int) -> Optional["Ideal"]:
        return reduce_ideal_mod_p(self, p)


def _as_ideal(I) -> Ideal:
    if isinstance(I, Ideal):
        return I
    if isinstance(I, GroebnerBasis):
        return Ideal.from_basis(I)
    return Ideal(list(I))


# ---------------------------------------------------------------------------
# dimension
# ---------------------------------------------------------------------------
def _pure_power_bounds(G: GroebnerBasis) -> list[Optional[int]]:
    ring = G.ring
    bounds: list[Optional[int]] = [None] * ring.nvars
    for m in G.leading_monomials:
        exps = ring.unpack(m)
        nz = [i for i, e in enumerate(exps) if e]
        if len(nz) == 1:
            i = nz[0]
            if bounds[i] is None or exps[i] < bounds[i]:
                bounds[i] = exps[i]
    return bounds


def is_zero_dimensional(G: GroebnerBasis) -> bool:
    """Every variable has a pure power among the leading monomials."""
    G = _as_ideal(G).groebner() if not isinstance(G, GroebnerBasis) else G
    if G.is_unit():
        return True
    return all(b is not None for b in _pure_power_bounds(G))


def standard_monomials(G: GroebnerBasis) -> list[int]:
    """Packed monomials divisible by no leading monomial, ascending."""
    if not isinstance(G, GroebnerBasis):
        G = _as_ideal(G).groebner()
    if G.is_unit():
        return []
    if not is_zero_dimensional(G):
        raise DimensionError("ideal is not zero-dimensional")
    ring = G.ring
    lms = G.leading_monomials
    bounds = _pure_power_bounds(G)
    divides = ring.divides
    n = ring.nvars
    out: list[int] = []

    def walk(i: int, m: int):
        if i == n:
            out.append(m)
            return
        step = 1 << ring.shift(i)
        for e in range(bounds[i]):
            mm = m + e * step
            if any(divides(l, mm) for l in lms):
                break
            walk(i + 1, mm)

    walk(0, 0)
    out.sort()
    return out


def vdim(G) -> int:
    """``dim_K K[X]/I`` for a zero-dimensional ``I``, counted via standard monomials."""
    return len(standard_monomials(G))


# ---------------------------------------------------------------------------
# linear algebra over the coefficient field
# ---------------------------------------------------------------------------
class _Field:
    def __init__(self, ring: Ring):
        self.p = ring.modulus
        self.one = ring.coerce(1)

    def inv(self, a):
        return pow(a, -1, self.p) if self.p else self.one / a

    def axpy(self, y: dict, a, x: dict) -> None:
        """``y += a * x`` in place on sparse vectors."""
        p = self.p
        for k, v in x.items():
            w = y.get(k, 0) + a * v
            if p:
                w %= p
            if w:
                y[k] = w
            else:
                y.pop(k, None)

    def scaled(self, x: dict, a) -> dict:
        p = self.p
        if p:
            return {k: v * a % p for k, v in x.items()}
        return {k: v * a for k, v in x.items()}


def _kernel_walk(G: GroebnerBasis, h: Polynomial) -> GroebnerBasis:
    """Reduced lex basis of ``{f : NF_G(h*f) = 0}`` (FGLM-style walk)."""
    ring = G.ring
    field = _Field(ring)
    reduce_terms = G.reducer().reduce_terms
    nf_h = reduce_terms(h.terms)
    if not nf_h:
        return GroebnerBasis(ring, (ring.one(),))
    mult_cache: dict[tuple[int, int], dict] = {}

    def times_var(i: int, vec: dict) -> dict:
        step = 1 << ring.shift(i)
        out: dict = {}
        for m, c in vec.items():
            key = (i, m)
            img = mult_cache.get(key)
            if img is None:
                img = reduce_terms({m + step: field.one})
                mult_cache[key] = img
            field.axpy(out, c, img)
        return out

    images: dict[int, dict] = {}      # staircase monomial -> NF(h*m)
    rows: list[tuple[int, dict, dict]] = []  # (pivot, vector, combination)
    new_basis: list[Polynomial] = []
    new_lms: list[int] = []
    candidates = {0: None}            # monomial -> (var, parent) that produced it
    divides = ring.divides
    while candidates:
        m = min(candidates)
        origin = candidates.pop(m)
        if origin is None:
            vec = dict(nf_h)
        else:
            i, parent = origin
            vec = times_var(i, images[parent])
        raw = dict(vec)
        combo = {m: field.one}
        for pivot, rvec, rcombo in rows:
            a = vec.get(pivot)
            if a:
                field.axpy(vec, -a, rvec)
                field.axpy(combo, -a, rcombo)
        if not vec:
            new_basis.append(Polynomial(ring, combo))
            new_lms.append(m)
            for c in [c for c in candidates if divides(m, c)]:
                del candidates[c]
            continue
        pivot = max(vec)
        inv = field.inv(vec[pivot])
        rows.append((pivot, field.scaled(vec, inv), field.scaled(combo, inv)))
        images[m] = raw
        for i in range(ring.nvars):
            c = m + (1 << ring.shift(i))
            if c in candidates or c in images:
                continue
            if any(divides(l, c) for l in new_lms):
                continue
            candidates[c] = (i, m)
    new_basis.sort(key=lambda g: g.lm())
    return GroebnerBasis(ring, tuple(new_basis))


def _eliminate_intersection(ring: Ring, A: Sequence[Polynomial],
                            B: Sequence[Polynomial]) -> list[Polynomial]:
    """Generators of ``<A> ∩ <B>``: the t-free part of a lex basis of ``<t*A, (1-t)*B>``."""
    name = "_t"
    while name in ring.variables:
        name += "_"
    big = ring.with_leading_variable(name)
    t = big.gen(0)
    gens = [t * g.embed(big) for g in A]
    gens.extend((big.one() - t) * g.embed(big) for g in B)
    E = reduced_groebner(gens)
    limit = 1 << big.shift(0)
    return [g.restrict(ring) for g in E if g.lm() < limit]


def _elimination_quotient(I: Ideal, h: Polynomial) -> GroebnerBasis:
    ring = I.ring
    inter = _eliminate_intersection(ring, I.generators, [h])
    if not inter:
        return GroebnerBasis(ring, ())
    return reduced_groebner([g.exact_quotient(h) for g in inter])


def ideal_intersection(I, J) -> GroebnerBasis:
    """Reduced basis of ``I ∩ J`` by elimination."""
    I, J = _as_ideal(I), _as_ideal(J)
    if I.ring != J.ring:
        raise ValueError("ideals live in different rings")
    if not I.generators or not J.generators:
        return GroebnerBasis(I.ring, ())
    inter = _eliminate_intersection(I.ring, I.generators, J.generators)
    return reduced_groebner(inter) if inter else GroebnerBasis(I.ring, ())


def ideal_quotient(I, h: Polynomial, method: str = "auto") -> GroebnerBasis:
    """Reduced basis of ``I : h = {f : f*h in I}``.

    ``method`` is ``"linear"`` (zero-dimensional ``I`` only),
    ``"elimination"``, or ``"auto"`` (linear when possible).
    """
    I = _as_ideal(I)
    if h.is_zero():
        raise ValueError("quotient by the zero polynomial")
    if h.ring != I.ring:
        raise ValueError("h is not in the ideal's ring")
    if method not in ("auto", "linear", "elimination"):
        raise ValueError(f"unknown quotient method {method!r}")
    G = I.groebner()
    if G.is_unit() or h.is_constant():
        return G
    if method == "elimination":
        return _elimination_quotient(I, h)
    if is_zero_dimensional(G):
        return _kernel_walk(G, h)
    if method == "linear":
        raise DimensionError("linear quotient needs a zero-dimensional ideal")
    return _elimination_quotient(I, h)


def saturation(I, h: Polynomial, method: str = "auto") -> GroebnerBasis:
    """``I : h^inf``, by repeated quotients until the basis stops changing."""
    J = _as_ideal(I)
    current = J.groebner()
    while True:
        nxt = ideal_quotient(J, h, method)
        if nxt == current:
            return current
        J = Ideal.from_basis(nxt)
        current = nxt


def ideal_contains(I, J) -> bool:
    """True iff ``I ⊆ J`` (every generator of ``I`` reduces to 0 modulo ``J``)."""
    I, J = _as_ideal(I), _as_ideal(J)
    if I.ring != J.ring:
        raise ValueError("ideals live in different rings")
    GJ = J.groebner()
    if not GJ.elements:
        return not I.generators
    reduce = GJ.reducer()
    return all(reduce(f).is_zero() for f in I.generators)


def reduce_ideal_mod_p(I, p: int) -> Optional[Ideal]:
    """``I_p``, or ``None`` when ``p`` divides a coefficient denominator."""
    I = _as_ideal(I)
    try:
        gens = [f.reduce_mod(p) for f in I.generators]
    except ZeroDivisionError:
        return None
    return Ideal(gens, I.ring.with_modulus(p))
