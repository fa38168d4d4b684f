"""Numeric solving of triangular sets and the final verification.

Univariate roots come from Aberth-Ehrlich iteration in mpmath.  When the
coefficients are exact rationals the multiplicities are read off a
square-free decomposition (Yun) first, and each square-free factor is
solved on its own; rational roots of linear factors stay exact, so the
next level of a triangular set is solved exactly as well.  For floating
coefficients, approximations are grouped into clusters whose Weierstrass
inclusion disks overlap (or that lie within ``tol``); a cluster of ``k``
approximations is a root of multiplicity ``k`` located at their mean.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Optional, Sequence, Union

import mpmath

from .ideals import Ideal, ideal_contains
from .poly import Polynomial
from .triang import TriangularDecomposition, TriangularSet

__all__ = [
    "DegenerateChainError",
    "RootCluster",
    "SolutionPoint",
    "SolutionSet",
    "UnivariatePoly",
    "VerificationReport",
    "refine_point",
    "solve_triang",
    "square_free_decomposition",
    "test_zero",
    "uni_roots",
]

logger = logging.getLogger(__name__)

DEFAULT_TOL = 1e-8
DEFAULT_RESIDUAL_TOL = 1e-6
WORKING_DPS = 50
MAX_DPS = 1600
RESIDUAL_TARGET = 1e-12

Number = Union[Fraction, int, float, complex, "mpmath.mpc", "mpmath.mpf"]


class DegenerateChainError(ArithmeticError):
    """A substitution made a triangular-set member vanish identically."""


# ---------------------------------------------------------------------------
# univariate polynomials
# ---------------------------------------------------------------------------
def _is_exact(c) -> bool:
    return isinstance(c, (int, Fraction))


@dataclass(frozen=True)
class UnivariatePoly:
    """Coefficients ``c0, ..., cd`` (ascending), leading coefficient non-zero."""

    coeffs: tuple

    def __post_init__(self):
        cs = list(self.coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        cs = [Fraction(c) if isinstance(c, int) else c for c in cs]
        object.__setattr__(self, "coeffs", tuple(cs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def exact(self) -> bool:
        return all(_is_exact(c) for c in self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    @classmethod
    def from_polynomial(cls, f: Polynomial, var: int = 0) -> "UnivariatePoly":
        ring = f.ring
        coeffs: dict[int, Fraction] = {}
        for m, c in f.terms.items():
            exps = ring.unpack(m)
            if any(e for i, e in enumerate(exps) if i != var):
                raise ValueError(f"{f} is not univariate in {ring.variables[var]}")
            coeffs[exps[var]] = c
        d = max(coeffs, default=-1)
        return cls(tuple(coeffs.get(k, Fraction(0)) for k in range(d + 1)))


# exact helpers on ascending Fraction lists ----------------------------------
def _trim(a: list) -> list:
    while a and a[-1] == 0:
        a.pop()
    return a


def _monic(a: list) -> list:
    lc = a[-1]
    return [c / lc for c in a]


def _derivative(a: list) -> list:
    return _trim([k * a[k] for k in range(1, len(a))])


def _sub(a: list, b: list) -> list:
    n = max(len(a), len(b))
    return _trim([(a[k] if k < len(a) else 0) - (b[k] if k < len(b) else 0) for k in range(n)])


def _divmod(a: list, b: list) -> tuple[list, list]:
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    lc = b[-1]
    while len(a) >= len(b) and a:
        k = len(a) - len(b)
        c = a[-1] / lc
        q[k] = c
        for i, bc in enumerate(b):
            a[i + k] -= c * bc
        a.pop()
        _trim(a)
    return _trim(q), a


def _gcd(a: list, b: list) -> list:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        _, r = _divmod(a, b)
        a, b = b, _monic(r) if r else r
    return _monic(a) if a else a


def square_free_decomposition(coeffs: Sequence) -> list[tuple[list, int]]:
    """Yun's algorithm: ``[(a_i, i)]`` with ``f = lc * prod a_i^i``, ``a_i`` monic, square-free."""
    f = _trim([Fraction(c) for c in coeffs])
    if len(f) <= 1:
        return []
    f = _monic(f)
    df = _derivative(f)
    a0 = _gcd(f, df)
    b, _ = _divmod(f, a0)
    c, _ = _divmod(df, a0)
    d = _sub(c, _derivative(b))
    out = []
    i = 1
    while len(b) > 1:
        a = _gcd(b, d)
        if len(a) > 1:
            out.append((a, i))
        b, _ = _divmod(b, a)
        c, _ = _divmod(d, a)
        d = _sub(c, _derivative(b))
        i += 1
    return out


# numeric root finding --------------------------------------------------------
@dataclass(frozen=True)
class RootCluster:
    value: Union[complex, Fraction]
    multiplicity: int
    radius: float = 0.0
    exact_value: Optional[Fraction] = None

    def __post_init__(self):
        if self.multiplicity < 1:
            raise ValueError("multiplicity must be positive")


def _horner(coeffs, z):
    p = mpmath.mpc(0)
    dp = mpmath.mpc(0)
    for c in reversed(coeffs):
        dp = dp * z + p
        p = p * z + c
    return p, dp


def _aberth(coeffs: list) -> list:
    """All roots (with repetition) of the polynomial with mp coefficients."""
    d = len(coeffs) - 1
    lc = coeffs[-1]
    cs = [c / lc for c in coeffs]
    if d == 1:
        return [-cs[0]]
    bound = max([abs(cs[k]) ** (mpmath.mpf(1) / (d - k)) for k in range(d)] + [mpmath.mpf(0)])
    radius = 2 * bound if bound > 0 else mpmath.mpf(1)
    center = -cs[d - 1] / d
    zs = [center + radius * mpmath.expj(2 * mpmath.pi * k / d + mpmath.mpf("0.4"))
          for k in range(d)]
    eps = mpmath.mpf(10) ** (-mpmath.mp.dps + 5)
    best = None
    stall = 0
    for _ in range(200 + 50 * d):
        biggest = mpmath.mpf(0)
        for i in range(d):
            z = zs[i]
            p, dp = _horner(cs, z)
            if p == 0:
                continue
            s = mpmath.mpc(0)
            for j in range(d):
                if j != i:
                    diff = z - zs[j]
                    if diff != 0:
                        s += 1 / diff
            if dp == 0:
                # stationary point of p: nudge off it
                w = radius * mpmath.mpf(10) ** (-mpmath.mp.dps // 4) * mpmath.mpc(1, 1)
            else:
                ratio = p / dp
                denom = 1 - ratio * s
                w = ratio / denom if denom != 0 else ratio
            zs[i] = z - w
            rel = abs(w) / max(1, abs(zs[i]))
            if rel > biggest:
                biggest = rel
        if biggest < eps:
            break
        # clustered approximations of a multiple root stop improving at
        # roughly eps^(1/k); give up once nothing has improved for a while
        if best is None or biggest < best:
            best = biggest
            stall = 0
        else:
            stall += 1
            if stall > 60:
                break
    return zs


def _inclusion_radii(cs: list, zs: list) -> list:
    d = len(zs)
    lc = cs[-1]
    radii = []
    for i, z in enumerate(zs):
        p, _ = _horner(cs, z)
        den = lc
        for j in range(d):
            if j != i:
                den *= z - zs[j]
        radii.append(mpmath.inf if den == 0 else d * abs(p / den))
    return radii


def _cluster(cs: list, zs: list, tol) -> list[RootCluster]:
    d = len(zs)
    if d == 1:
        return [RootCluster(complex(zs[0]), 1, 0.0)]
    radii = _inclusion_radii(cs, zs)
    scale = max([mpmath.mpf(1)] + [abs(z) for z in zs])
    parent = list(range(d))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(d):
        for j in range(i + 1, d):
            gap = abs(zs[i] - zs[j])
            if gap <= radii[i] + radii[j] or gap <= tol * scale:
                parent[find(i)] = find(j)
    groups: dict[int, list[int]] = {}
    for i in range(d):
        groups.setdefault(find(i), []).append(i)
    out = []
    for members in groups.values():
        center = mpmath.fsum(zs[i] for i in members) / len(members)
        spread = max(abs(zs[i] - center) for i in members)
        out.append(RootCluster(center, len(members), float(spread)))
    return out


def _as_mp(c):
    if isinstance(c, Fraction):
        return mpmath.mpf(c.numerator) / c.denominator
    return mpmath.mpmathify(c)


def _sort_clusters(cl: list[RootCluster]) -> list[RootCluster]:
    return sorted(cl, key=lambda r: (float(mpmath.re(r.value)), float(mpmath.im(r.value)),
                                     r.multiplicity))


def uni_roots(f, tol: float = DEFAULT_TOL, dps: int = WORKING_DPS) -> list[RootCluster]:
    """Roots of a univariate polynomial with multiplicities.

    ``f`` is a :class:`UnivariatePoly` or a sequence of ascending
    coefficients.  Cluster values are mpmath numbers at ``dps`` digits
    (``exact_value`` holds the rational root when one is known exactly).
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if not isinstance(f, UnivariatePoly):
        f = UnivariatePoly(tuple(f))
    if f.is_zero():
        raise ValueError("the zero polynomial has no finite root set")
    if f.degree == 0:
        return []
    with mpmath.workdps(dps):
        if f.exact:
            out = []
            for factor, mult in square_free_decomposition(f.coeffs):
                if len(factor) == 2:
                    r = -factor[0] / factor[1]
                    out.append(RootCluster(_as_mp(r), mult, 0.0, r))
                    continue
                cs = [_as_mp(c) for c in factor]
                for z in _aberth(cs):
                    out.append(RootCluster(z, mult, 0.0, None))
            return _sort_clusters(out)
        cs = [_as_mp(c) for c in f.coeffs]
        return _sort_clusters(_cluster(cs, _aberth(cs), mpmath.mpf(tol)))


# ---------------------------------------------------------------------------
# triangular solving
# ---------------------------------------------------------------------------
@dataclass
class SolutionPoint:
    coordinates: tuple          # complex, ordered x1..xn
    multiplicity: int
    residual: float = 0.0
    set_index: int = 0
    shared_with: tuple = ()     # indices of other points at the same location
    refined: bool = False
    warning: Optional[str] = None
    exact: tuple = ()           # per-coordinate exact rational or None

    def __post_init__(self):
        if self.multiplicity < 1:
            raise ValueError("multiplicity must be positive")
        if self.residual < 0:
            raise ValueError("residual must be non-negative")


@dataclass
class SolutionSet:
    points: list = field(default_factory=list)

    @property
    def total_multiplicity(self) -> int:
        return sum(p.multiplicity for p in self.points)

    def __iter__(self):
        return iter(self.points)

    def __len__(self):
        return len(self.points)

    def distinct_locations(self) -> int:
        seen = set()
        for i, p in enumerate(self.points):
            seen.add(min((i,) + tuple(p.shared_with)))
        return len(seen)


def _substitute(f: Polynomial, var: int, values: dict) -> UnivariatePoly:
    """Plug ``values`` (var index -> number) into ``f``; univariate in ``var``."""
    ring = f.ring
    coeffs: dict[int, object] = {}
    exact = all(_is_exact(v) for v in values.values())
    powers: dict = {}
    for m, c in f.terms.items():
        exps = ring.unpack(m)
        term = c if exact else _as_mp(c)
        for i, e in enumerate(exps):
            if e and i != var:
                key = (i, e)
                if key not in powers:
                    powers[key] = values[i] ** e
                term = term * powers[key]
        k = exps[var]
        coeffs[k] = coeffs.get(k, 0) + term
    d = max(coeffs, default=-1)
    return UnivariatePoly(tuple(coeffs.get(k, 0) for k in range(d + 1)))


def _solve_set(F: TriangularSet, tol: float, dps: int) -> list[tuple[dict, int]]:
    n = F.ring.nvars
    partial: list[tuple[dict, int]] = [({}, 1)]
    for k, f in enumerate(F.polys):
        var = n - 1 - k
        nxt = []
        for values, mult in partial:
            g = _substitute(f, var, values)
            if g.is_zero() or g.degree < 1:
                raise DegenerateChainError(f"substitution degenerates {f} in set {F}")
            for rc in uni_roots(g, tol, dps):
                v = rc.exact_value if rc.exact_value is not None else rc.value
                nv = dict(values)
                nv[var] = v
                nxt.append((nv, mult * rc.multiplicity))
        partial = nxt
    return partial


def _to_complex(v) -> complex:
    if isinstance(v, Fraction):
        return complex(float(v))
    return complex(v)


def _residual(gens: Sequence[Polynomial], coords: Sequence, dps: int) -> float:
    if not gens:
        return 0.0
    with mpmath.workdps(dps):
        pt = [_as_mp(c) for c in coords]
        worst = mpmath.mpf(0)
        for g in gens:
            val = mpmath.mpc(0)
            for m, c in g.terms.items():
                term = _as_mp(c)
                for x, e in zip(pt, g.ring.unpack(m)):
                    if e:
                        term *= x ** e
                val += term
            worst = max(worst, abs(val))
        return float(worst)


def solve_triang(D: TriangularDecomposition, tol: float = DEFAULT_TOL,
                 generators: Optional[Sequence[Polynomial]] = None,
                 dps: int = WORKING_DPS, refine: bool = True,
                 target: float = RESIDUAL_TARGET, max_dps: int = MAX_DPS) -> SolutionSet:
    """All solutions of every set in ``D`` with multiplicities.

    Points of different sets are never merged; coinciding locations are
    cross-referenced through ``shared_with``.  Residuals are measured
    against ``generators`` (default: the set's own polynomials).  A set
    whose worst residual exceeds ``target`` is solved again with twice the
    working precision, up to ``max_dps`` digits; tails with huge rational
    coefficients cancel badly at low precision.
    """
    points: list[SolutionPoint] = []
    for idx, F in enumerate(D.sets):
        gens = list(generators) if generators is not None else list(F.polys)
        work = dps
        while True:
            found = _solve_points(F, idx, gens, tol, work, refine)
            worst = max((P.residual for P in found), default=0.0)
            if worst <= target or work >= max_dps:
                break
            logger.debug("set %d: residual %.3g at %d digits, retrying", idx, worst, work)
            work *= 2
        points.extend(found)
    _annotate_shared(points, tol)
    return SolutionSet(points)


def _solve_points(F: TriangularSet, idx: int, gens: list, tol: float, dps: int,
                  refine: bool) -> list[SolutionPoint]:
    out = []
    for values, mult in _solve_set(F, tol, dps):
        raw = [values[i] for i in range(F.ring.nvars)]
        exact = tuple(v if isinstance(v, Fraction) else None for v in raw)
        with mpmath.workdps(dps):
            mp_coords = tuple(_as_mp(v) for v in raw)
        P = SolutionPoint(tuple(_to_complex(v) for v in raw), mult,
                          _residual(gens, raw, dps), idx, exact=exact)
        P._mp = mp_coords
        if refine:
            P = refine_point(P, F, tol, generators=gens, dps=dps)
        out.append(P)
    return out


def _annotate_shared(points: list[SolutionPoint], tol: float) -> None:
    for i, P in enumerate(points):
        shared = []
        for j, Q in enumerate(points):
            if i != j and P.set_index != Q.set_index:
                scale = max([1.0] + [abs(c) for c in P.coordinates])
                if max(abs(a - b) for a, b in zip(P.coordinates, Q.coordinates)) <= 100 * tol * scale:
                    shared.append(j)
        P.shared_with = tuple(shared)


def refine_point(P: SolutionPoint, F: TriangularSet, tol: float = DEFAULT_TOL,
                 generators: Optional[Sequence[Polynomial]] = None,
                 dps: int = WORKING_DPS, max_iter: int = 30) -> SolutionPoint:
    """Newton polish of ``P`` against ``F``; multiplicity is never touched.

    Exact coordinates and singular Jacobians are left alone.  If the
    iteration does not reduce the residual the input is returned with
    ``warning`` set.
    """
    gens = list(generators) if generators is not None else list(F.polys)
    if P.exact and all(v is not None for v in P.exact):
        return P
    ring = F.ring
    n = ring.nvars
    with mpmath.workdps(dps):
        x = list(getattr(P, "_mp", None) or [mpmath.mpc(c) for c in P.coordinates])
        polys = list(F.polys)
        derivs = [[_partial(f, i) for i in range(n)] for f in polys]

        def value(fs, pt):
            return [_eval_mp(f, pt) for f in fs]

        def size(v):
            return max(abs(c) for c in v)

        fx = value(polys, x)
        start = size(fx)
        if start == 0:
            return P
        cur = start
        for _ in range(max_iter):
            J = mpmath.matrix(n, n)
            for r in range(n):
                for c in range(n):
                    J[r, c] = _eval_mp(derivs[r][c], x)
            try:
                step = mpmath.lu_solve(J, mpmath.matrix(fx))
            except ZeroDivisionError:
                break
            cand = [x[i] - step[i] for i in range(n)]
            fc = value(polys, cand)
            if size(fc) >= cur:
                break
            x, fx, cur = cand, fc, size(fc)
            if cur < mpmath.mpf(10) ** (-dps + 5):
                break
        if cur > start:
            return replace(P, warning="refinement diverged")
        if cur == start:
            return P
        coords = tuple(complex(v) for v in x)
        out = replace(P, coordinates=coords, residual=_residual(gens, x, dps), refined=True)
        out._mp = tuple(x)
        return out


def _partial(f: Polynomial, i: int) -> Polynomial:
    ring = f.ring
    step = 1 << ring.shift(i)
    out = {}
    for m, c in f.terms.items():
        e = ring.degree_of(m, i)
        if e:
            out[m - step] = c * e
    return Polynomial(ring, out)


def _eval_mp(f: Polynomial, pt):
    val = mpmath.mpc(0)
    for m, c in f.terms.items():
        term = _as_mp(c)
        for x, e in zip(pt, f.ring.unpack(m)):
            if e:
                term *= x ** e
        val += term
    return val


# ---------------------------------------------------------------------------
# verification
# ---------------------------------------------------------------------------
@dataclass
class VerificationReport:
    contained: list
    dimension: int
    total_multiplicity: int
    max_residual: float
    residual_tol: float
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def __bool__(self):
        return self.passed


def test_zero(I: Ideal, D: TriangularDecomposition, S: SolutionSet,
              tol: float = DEFAULT_RESIDUAL_TOL, dimension: Optional[int] = None
              ) -> VerificationReport:
    """Exact containment ``I ⊆ <F>`` for every set, multiplicity count, residuals."""
    contained = [ideal_contains(I, F.ideal()) for F in D.sets]
    dim = I.vdim() if dimension is None else dimension
    total = S.total_multiplicity
    worst = max((p.residual for p in S.points), default=0.0)
    failures = []
    for k, ok in enumerate(contained):
        if not ok:
            failures.append(f"input ideal not contained in triangular set {k}")
    if total != dim:
        failures.append(f"total multiplicity {total} != dimension {dim}")
    if worst > tol:
        bad = sum(1 for p in S.points if p.residual > tol)
        failures.append(f"{bad} point(s) with residual above {tol:g} (max {worst:.3g})")
    return VerificationReport(contained, dim, total, worst, tol, failures)


test_zero.__test__ = False  # not a pytest test
