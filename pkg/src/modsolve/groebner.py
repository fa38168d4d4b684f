"""Division, S-polynomials and reduced lex Groebner bases (Buchberger).

Two reduction kernels do the heavy lifting:

* over F_p every basis element is kept monic and coefficients are residues;
* over Q basis elements are kept as primitive integer polynomials and the
  reduction is fraction-free, with the content stripped periodically.

Both kernels pick, for each term, the divisor with the smallest leading
monomial (ties by position), so normal forms are deterministic.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, lcm as int_lcm
from typing import Iterable, Sequence

from .poly import Polynomial, Ring

__all__ = [
    "GroebnerBasis",
    "Reducer",
    "is_groebner",
    "normal_form",
    "reduced_groebner",
    "s_polynomial",
]

# strip the content of the working polynomial every this many reduction steps
_CONTENT_EVERY = 16


# ---------------------------------------------------------------------------
# internal representations
# ---------------------------------------------------------------------------
def _to_int_poly(f: Polynomial) -> dict:
    """Primitive integer multiple of a rational polynomial, positive lc."""
    den = reduce(int_lcm, (c.denominator for c in f.terms.values()), 1)
    out = {m: int(c * den) for m, c in f.terms.items()}
    return _primitive(out)


def _primitive(terms: dict) -> dict:
    if not terms:
        return terms
    g = 0
    for c in terms.values():
        g = gcd(g, c)
        if g == 1:
            break
    if terms[max(terms)] < 0:
        g = -g
    if g == 1:
        return terms
    return {m: c // g for m, c in terms.items()}


class _Basis:
    """Reducer set sorted by leading monomial; entries ``(lm, lc, tail)``."""

    __slots__ = ("ring", "entries")

    def __init__(self, ring: Ring, polys: Iterable[dict]):
        self.ring = ring
        entries = []
        for t in polys:
            lm = max(t)
            tail = [(m, c) for m, c in t.items() if m != lm]
            entries.append((lm, t[lm], tail))
        entries.sort(key=lambda e: e[0])
        self.entries = entries

    def find(self, m: int):
        g = self.ring.guard
        for e in self.entries:
            if ((m | g) - e[0]) & g == g:
                return e
        return None


def _reduce_modp(f: dict, basis: _Basis, p: int, full: bool = True) -> dict:
    """Normal form of ``f`` w.r.t. a monic basis over F_p."""
    f = dict(f)
    heap = [-m for m in f]
    heapq.heapify(heap)
    result = {}
    guard = basis.ring.guard
    entries = basis.entries
    while heap:
        m = -heapq.heappop(heap)
        c = f.pop(m, 0)
        if not c:
            continue
        for lm, _, tail in entries:
            if ((m | guard) - lm) & guard == guard:
                q = m - lm
                for tm, tc in tail:
                    nm = tm + q
                    old = f.get(nm)
                    if old is None:
                        f[nm] = -c * tc % p
                        heapq.heappush(heap, -nm)
                    else:
                        v = (old - c * tc) % p
                        if v:
                            f[nm] = v
                        else:
                            del f[nm]
                break
        else:
            result[m] = c
            if not full:
                result.update(f)
                return result
    return result


def _reduce_int(f: dict, basis: _Basis, full: bool = True) -> tuple[dict, Fraction]:
    """Fraction-free normal form over Q.

    Returns ``(r, s)`` such that the true remainder is ``s * r``.
    """
    f = dict(f)
    heap = [-m for m in f]
    heapq.heapify(heap)
    result: dict = {}
    scale = Fraction(1)
    guard = basis.ring.guard
    entries = basis.entries
    steps = 0
    while heap:
        m = -heapq.heappop(heap)
        c = f.pop(m, 0)
        if not c:
            continue
        for lm, a, tail in entries:
            if ((m | guard) - lm) & guard == guard:
                g0 = gcd(a, c)
                mul_f = a // g0
                mul_g = c // g0
                if mul_f != 1:
                    if mul_f < 0:
                        mul_f, mul_g = -mul_f, -mul_g
                    for k in f:
                        f[k] *= mul_f
                    for k in result:
                        result[k] *= mul_f
                    scale /= mul_f
                q = m - lm
                for tm, tc in tail:
                    nm = tm + q
                    old = f.get(nm)
                    if old is None:
                        f[nm] = -mul_g * tc
                        heapq.heappush(heap, -nm)
                    else:
                        v = old - mul_g * tc
                        if v:
                            f[nm] = v
                        else:
                            del f[nm]
                steps += 1
                if steps % _CONTENT_EVERY == 0:
                    g = 0
                    for v in f.values():
                        g = gcd(g, v)
                        if g == 1:
                            break
                    if g > 1:
                        for v in result.values():
                            g = gcd(g, v)
                            if g == 1:
                                break
                    if g > 1:
                        for k in f:
                            f[k] //= g
                        for k in result:
                            result[k] //= g
                        scale *= g
                break
        else:
            result[m] = c
            if not full:
                result.update(f)
                return result, scale
    return result, scale


def _internal(f: Polynomial) -> dict:
    if f.ring.modulus is None:
        return _to_int_poly(f)
    return dict(f.monic().terms)


def _external(ring: Ring, t: dict) -> Polynomial:
    """Monic polynomial from an internal representation."""
    if not t:
        return Polynomial(ring, {})
    lc = t[max(t)]
    p = ring.modulus
    if p is None:
        return Polynomial(ring, {m: Fraction(c, lc) for m, c in t.items()})
    inv = pow(lc, -1, p)
    return Polynomial(ring, {m: c * inv % p for m, c in t.items()})


def _reduce(ring: Ring, f: dict, basis: _Basis) -> dict:
    """Normal form up to a non-zero scalar (primitive / monic)."""
    if ring.modulus is None:
        r, _ = _reduce_int(f, basis)
        return _primitive(r)
    r = _reduce_modp(f, basis, ring.modulus)
    if r:
        lc = r[max(r)]
        if lc != 1:
            inv = pow(lc, -1, ring.modulus)
            r = {m: c * inv % ring.modulus for m, c in r.items()}
    return r


# ---------------------------------------------------------------------------
# public division helpers
# ---------------------------------------------------------------------------
def _check_ring(polys: Sequence[Polynomial]) -> Ring:
    ring = polys[0].ring
    for g in polys:
        if g.ring != ring:
            raise ValueError(f"ring mismatch: {g.ring} vs {ring}")
    return ring


class Reducer:
    """Reusable division by a fixed list of polynomials."""

    def __init__(self, G: Sequence[Polynomial]):
        G = list(G)
        if not G:
            raise ValueError("a reducer needs a non-empty divisor list")
        if any(g.is_zero() for g in G):
            raise ValueError("divisors must be non-zero")
        self.ring = _check_ring(G)
        self._basis = _Basis(self.ring, [_internal(g) for g in G])

    def reduce_terms(self, terms: dict) -> dict:
        """Exact normal form of a raw term dict (coefficients in the ring's domain)."""
        if not terms:
            return {}
        if self.ring.modulus is None:
            den = reduce(int_lcm, (c.denominator for c in terms.values()), 1)
            r, s = _reduce_int({m: int(c * den) for m, c in terms.items()}, self._basis)
            s /= den
            return {m: c * s for m, c in r.items()}
        return _reduce_modp(terms, self._basis, self.ring.modulus)

    def is_reducible(self, m: int) -> bool:
        return self._basis.find(m) is not None

    def __call__(self, f: Polynomial) -> Polynomial:
        if f.ring != self.ring:
            raise ValueError(f"ring mismatch: {f.ring} vs {self.ring}")
        return Polynomial(self.ring, self.reduce_terms(f.terms))


def normal_form(f: Polynomial, G: Sequence[Polynomial]) -> Polynomial:
    """Fully reduced remainder of ``f`` on division by ``G``.

    ``f - normal_form(f, G)`` lies in the ideal generated by ``G`` and no
    term of the result is divisible by a leading monomial of ``G``.
    """
    return Reducer(G)(f)


def s_polynomial(f: Polynomial, g: Polynomial) -> Polynomial:
    """``(l/LT(f))*f - (l/LT(g))*g`` with ``l = lcm(LM(f), LM(g))``."""
    ring = _check_ring([f, g])
    if f.is_zero() or g.is_zero():
        raise ValueError("S-polynomial of a zero polynomial")
    l = ring.lcm(f.lm(), g.lm())
    one = ring.coerce(1)
    a = f.mul_term(l - f.lm(), one / f.lc() if ring.modulus is None
                   else pow(f.lc(), -1, ring.modulus))
    b = g.mul_term(l - g.lm(), one / g.lc() if ring.modulus is None
                   else pow(g.lc(), -1, ring.modulus))
    return a - b


def _spoly_internal(ring: Ring, f: dict, lf: int, g: dict, lg: int) -> dict:
    l = ring.lcm(lf, lg)
    qf, qg = l - lf, l - lg
    p = ring.modulus
    out: dict = {}
    if p is None:
        a, b = f[lf], g[lg]
        g0 = gcd(a, b)
        mf, mg = b // g0, a // g0
        for m, c in f.items():
            if m != lf:
                out[m + qf] = mf * c
        for m, c in g.items():
            if m != lg:
                k = m + qg
                v = out.get(k, 0) - mg * c
                if v:
                    out[k] = v
                else:
                    out.pop(k, None)
    else:
        for m, c in f.items():
            if m != lf:
                out[m + qf] = c
        for m, c in g.items():
            if m != lg:
                k = m + qg
                v = (out.get(k, 0) - c) % p
                if v:
                    out[k] = v
                else:
                    out.pop(k, None)
    return out


# ---------------------------------------------------------------------------
# Buchberger
# ---------------------------------------------------------------------------
@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced, monic lex Groebner basis sorted by ascending leading monomial."""

    ring: Ring
    elements: tuple[Polynomial, ...]
    reduced: bool = True

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __getitem__(self, i):
        return self.elements[i]

    @property
    def leading_monomials(self) -> list[int]:
        return [g.lm() for g in self.elements]

    def is_unit(self) -> bool:
        return len(self.elements) == 1 and self.elements[0].is_constant()

    def __getstate__(self):
        return {k: v for k, v in self.__dict__.items() if k != "_reducer"}

    def __setstate__(self, state):
        for k, v in state.items():
            object.__setattr__(self, k, v)

    def reducer(self) -> Reducer:
        r = self.__dict__.get("_reducer")
        if r is None:
            r = Reducer(self.elements)
            object.__setattr__(self, "_reducer", r)
        return r

    def normal_form(self, f: Polynomial) -> Polynomial:
        if not self.elements:
            return f
        return self.reducer()(f)

    def contains(self, f: Polynomial) -> bool:
        return self.normal_form(f).is_zero()

    def __str__(self):
        return "[" + ", ".join(str(g) for g in self.elements) + "]"


def _update(ring: Ring, lms: list, active: list, pairs: list, h: int):
    """Install basis element ``h``, pruning pairs with the chain and product criteria."""
    lm_h = lms[h]
    divides, coprime, lcm = ring.divides, ring.coprime, ring.lcm
    cands = [(lcm(lm_h, lms[g]), g) for g in active]
    kept = []
    while cands:
        l, g = cands.pop()
        if coprime(lm_h, lms[g]):
            kept.append((l, g, True))
            continue
        if any(divides(l2, l) for l2, _ in cands):
            continue
        if any(divides(l2, l) for l2, _, _ in kept):
            continue
        kept.append((l, g, False))
    new_pairs = [(l, g, h) for l, g, cop in kept if not cop]
    survivors = []
    for pair in pairs:
        l, i, j = pair
        if (divides(lm_h, l) and lcm(lms[i], lm_h) != l
                and lcm(lms[j], lm_h) != l):
            continue
        survivors.append(pair)
    survivors.extend(new_pairs)
    active = [g for g in active if not divides(lm_h, lms[g])]
    active.append(h)
    return active, survivors


def _buchberger(ring: Ring, polys: list) -> list:
    """Minimal Groebner basis (internal form) of the given internal polys."""
    store: list = []
    lms: list = []
    sugar: list = []
    active: list = []
    pairs: list = []

    def install(t: dict, s: int):
        nonlocal active, pairs
        store.append(t)
        lms.append(max(t))
        sugar.append(s)
        active, pairs = _update(ring, lms, active, pairs, len(store) - 1)

    polys = sorted((t for t in polys if t), key=max)
    for t in polys:
        basis = _Basis(ring, [store[i] for i in active]) if active else None
        r = _reduce(ring, t, basis) if basis else t
        if r:
            if not basis:
                r = _reduce(ring, r, _Basis(ring, []))
            if 0 in r and len(r) == 1:
                return [r]
            install(r, max(ring.total_degree(m) for m in t))

    basis = _Basis(ring, [store[i] for i in active])
    while pairs:
        # normal strategy: smallest lcm first
        best = min(range(len(pairs)), key=lambda k: pairs[k][0])
        l, i, j = pairs.pop(best)
        s = _spoly_internal(ring, store[i], lms[i], store[j], lms[j])
        if not s:
            continue
        r = _reduce(ring, s, basis)
        if not r:
            continue
        if 0 in r and len(r) == 1:
            return [r]
        sg = max(sugar[i] + ring.total_degree(l - lms[i]),
                 sugar[j] + ring.total_degree(l - lms[j]))
        install(r, sg)
        basis = _Basis(ring, [store[k] for k in active])
    return [store[i] for i in active]


def _interreduce(ring: Ring, basis: list) -> list:
    basis = sorted(basis, key=max)
    out = []
    for k, t in enumerate(basis):
        others = _Basis(ring, basis[:k] + basis[k + 1:])
        lm = max(t)
        head = {lm: t[lm]}
        tail = {m: c for m, c in t.items() if m != lm}
        if ring.modulus is None:
            r, s = _reduce_int(tail, others)
            # t = lc*lm + tail  ->  lc*lm + s*r, scaled to integers
            s_frac = Fraction(s)
            num, den = s_frac.numerator, s_frac.denominator
            merged = {m: c * num for m, c in r.items()}
            merged[lm] = t[lm] * den
            out.append(_primitive(merged))
        else:
            r = _reduce_modp(tail, others, ring.modulus)
            r.update(head)
            out.append(r)
    return out


def reduced_groebner(gens: Iterable[Polynomial]) -> GroebnerBasis:
    """Reduced monic lex Groebner basis, sorted so ``LM(g1) < ... < LM(gm)``."""
    gens = list(gens)
    if not gens:
        raise ValueError("reduced_groebner needs at least one generator")
    ring = _check_ring(gens)
    internal = [_internal(g) for g in gens if not g.is_zero()]
    if not internal:
        raise ValueError("all generators are zero")
    basis = _buchberger(ring, internal)
    if len(basis) == 1 and 0 in basis[0] and len(basis[0]) == 1:
        return GroebnerBasis(ring, (ring.one(),))
    basis = _interreduce(ring, basis)
    elements = sorted((_external(ring, t) for t in basis), key=lambda g: g.lm())
    return GroebnerBasis(ring, tuple(elements))


def is_groebner(G: Sequence[Polynomial]) -> bool:
    """Buchberger's criterion: every S-polynomial reduces to zero."""
    G = [g for g in G if not g.is_zero()]
    for a in range(len(G)):
        for b in range(a + 1, len(G)):
            if not normal_form(s_polynomial(G[a], G[b]), G).is_zero():
                return False
    return True
