"""Triangular sets and the multiplicity-preserving triangular decomposition.

A triangular set in ``K[x1, ..., xn]`` is stored as ``(f1, ..., fn)`` where
``f1`` is univariate in ``xn``, ``f2`` involves ``x(n-1), xn``, and so on;
``LT(fi) = x(n-i+1)^alpha_i``.  Every set produced here is interreduced, so
it is the reduced lex basis of the ideal it generates.

Decomposition lists are kept in *structural order*: the recursion order of
the algorithm, stably sorted by the main degrees.  That order depends only
on the shape of the computation, which is what lets decompositions computed
modulo different primes be matched set by set.  :meth:`canonical` adds the
text rendering as a final tie-break for presentation and comparison.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from .groebner import GroebnerBasis, normal_form, reduced_groebner
from .ideals import (DimensionError, Ideal, ideal_quotient, is_zero_dimensional,
                     saturation, vdim)
from .poly import Polynomial, Ring

__all__ = [
    "TriangularDecomposition",
    "TriangularSet",
    "extract_leading_coeffs",
    "triang_m",
    "triang_m_disjoint",
]


@dataclass(frozen=True)
class TriangularSet:
    ring: Ring
    polys: tuple[Polynomial, ...]

    def __post_init__(self):
        ring, n = self.ring, self.ring.nvars
        if len(self.polys) != n:
            raise ValueError(f"a triangular set in {n} variables needs {n} polynomials")
        for k, f in enumerate(self.polys):
            var = n - 1 - k
            if f.ring != ring:
                raise ValueError(f"{f} is not in {ring}")
            if f.is_zero():
                raise ValueError("zero polynomial in a triangular set")
            exps = f.le()
            if any(e for i, e in enumerate(exps) if i != var) or exps[var] == 0:
                raise ValueError(f"leading term of {f} is not a pure power of "
                                 f"{ring.variables[var]}")
            if f.lc() != 1:
                raise ValueError(f"{f} is not monic")

    def __iter__(self) -> Iterator[Polynomial]:
        return iter(self.polys)

    def __len__(self):
        return len(self.polys)

    def __getitem__(self, i):
        return self.polys[i]

    @property
    def alphas(self) -> tuple[int, ...]:
        """``(alpha_1, ..., alpha_n)``: degree of ``fi`` in its main variable."""
        n = self.ring.nvars
        return tuple(f.le()[n - 1 - k] for k, f in enumerate(self.polys))

    @property
    def main_degrees(self) -> tuple[int, ...]:
        """Main degrees listed in declared variable order ``x1, ..., xn``."""
        return tuple(reversed(self.alphas))

    def vdim(self) -> int:
        d = 1
        for a in self.alphas:
            d *= a
        return d

    def basis(self) -> GroebnerBasis:
        return GroebnerBasis(self.ring, tuple(sorted(self.polys, key=lambda f: f.lm())))

    def ideal(self) -> Ideal:
        return Ideal.from_basis(self.basis())

    def strings(self) -> list[str]:
        return [str(f) for f in self.polys]

    def sort_key(self):
        return (self.main_degrees, tuple(self.strings()))

    def reduce_mod(self, p: int) -> Optional["TriangularSet"]:
        try:
            return TriangularSet(self.ring.with_modulus(p),
                                 tuple(f.reduce_mod(p) for f in self.polys))
        except ZeroDivisionError:
            return None

    def __str__(self):
        return "{" + ", ".join(self.strings()) + "}"

    @classmethod
    def interreduced(cls, ring: Ring, polys: Sequence[Polynomial]) -> "TriangularSet":
        """Build from a triangular list, reducing each tail by the earlier members."""
        out: list[Polynomial] = []
        for f in polys:
            f = f.monic()
            if out:
                lm = f.lm()
                head = f.lt()
                f = head + normal_form(f - head, out)
                assert f.lm() == lm
            out.append(f)
        return cls(ring, tuple(out))


@dataclass(frozen=True)
class TriangularDecomposition:
    ring: Ring
    sets: tuple[TriangularSet, ...]

    def __iter__(self) -> Iterator[TriangularSet]:
        return iter(self.sets)

    def __len__(self):
        return len(self.sets)

    def __getitem__(self, i):
        return self.sets[i]

    def structural(self) -> "TriangularDecomposition":
        return TriangularDecomposition(
            self.ring, tuple(sorted(self.sets, key=lambda F: F.main_degrees)))

    def canonical(self) -> "TriangularDecomposition":
        return TriangularDecomposition(self.ring, tuple(sorted(self.sets, key=TriangularSet.sort_key)))

    def signature(self) -> tuple:
        """``(number of sets, sorted leading-degree tuples)``; prime independent."""
        return (len(self.sets), tuple(sorted(F.main_degrees for F in self.sets)))

    def total_vdim(self) -> int:
        return sum(F.vdim() for F in self.sets)

    def strings(self) -> list[list[str]]:
        return [F.strings() for F in self.sets]

    def reduce_mod(self, p: int) -> Optional["TriangularDecomposition"]:
        out = []
        for F in self.sets:
            Fp = F.reduce_mod(p)
            if Fp is None:
                return None
            out.append(Fp)
        return TriangularDecomposition(self.ring.with_modulus(p), tuple(out))

    def coefficients(self):
        for F in self.sets:
            for f in F.polys:
                yield from f.terms.values()

    def __str__(self):
        return "(" + ", ".join(str(F) for F in self.sets) + ")"


def extract_leading_coeffs(G: GroebnerBasis) -> list[Polynomial]:
    """Leading coefficients of ``g1, ..., g(m-1)`` as polynomials in ``x1``.

    The results live in ``K[x2, ..., xn]``.
    """
    elements = list(G)
    if not elements:
        raise ValueError("empty basis")
    return [g.leading_coefficient_in_first() for g in elements[:-1]]


def _decompose(G: GroebnerBasis, disjoint: bool, method: str) -> list[TriangularSet]:
    ring = G.ring
    if G.is_unit() or not G.elements:
        if not G.elements:
            raise DimensionError("the zero ideal is not zero-dimensional")
        return []
    if not is_zero_dimensional(G):
        raise DimensionError("ideal is not zero-dimensional")
    if ring.nvars == 1:
        return [TriangularSet.interreduced(ring, [G[0]])]
    g_last = G[-1]
    lead = extract_leading_coeffs(G)
    result = []
    for F in _decompose(reduced_groebner(lead), disjoint, method):
        polys = [f.embed(ring) for f in F.polys] + [g_last]
        result.append(TriangularSet.interreduced(ring, polys))
    current = list(G.elements)
    current_basis = G
    for h in lead:
        h = h.embed(ring)
        if h in current:
            continue
        J = Ideal.from_basis(current_basis)
        Q = saturation(J, h, method) if disjoint else ideal_quotient(J, h, method)
        result.extend(_decompose(Q, disjoint, method))
        current.append(h)
        current_basis = reduced_groebner(list(current_basis.elements) + [h])
    return result


def triang_m(I, method: str = "auto") -> TriangularDecomposition:
    """Triangular decomposition respecting multiplicities.

    ``sum(vdim(F) for F in result) == vdim(I)``.  The unit ideal gives the
    empty decomposition; a non-zero-dimensional ideal raises DimensionError.
    """
    I = I if isinstance(I, Ideal) else Ideal(I if not isinstance(I, GroebnerBasis) else I.elements)
    sets = _decompose(I.groebner(), False, method)
    return TriangularDecomposition(I.ring, tuple(sets)).structural()


def triang_m_disjoint(I, method: str = "auto") -> TriangularDecomposition:
    """Variant with saturations: pairwise comaximal sets, multiplicities not kept."""
    I = I if isinstance(I, Ideal) else Ideal(I if not isinstance(I, GroebnerBasis) else I.elements)
    sets = _decompose(I.groebner(), True, method)
    return TriangularDecomposition(I.ring, tuple(sets)).structural()
