"""Sparse multivariate polynomials over Q or F_p in lexicographic order.

Monomials are packed into a single Python ``int``: every variable owns a
fixed-width bit field, the *last* variable in the lowest field and the first
variable in the highest.  With that layout

* comparing two packed monomials as integers is the lex comparison for
  ``x1 > x2 > ... > xn``,
* multiplying monomials is integer addition,
* dropping the first variable, or adding a new largest one, leaves the
  encoding of every other monomial untouched.

The last point is what lets triangular decomposition recurse into
``K[x2, ..., xn]`` and quotient computations add an elimination variable
without re-encoding anything.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Optional, Sequence, Union

from .arith import rational_mod

__all__ = [
    "FIELD_BITS",
    "Polynomial",
    "Ring",
    "lex_compare",
    "leading_data",
]

FIELD_BITS = 16
_FIELD_MASK = (1 << FIELD_BITS) - 1
MAX_EXPONENT = (1 << (FIELD_BITS - 1)) - 1

Coefficient = Union[int, Fraction]


def lex_compare(a: Sequence[int], b: Sequence[int]) -> int:
    """-1, 0 or 1 as exponent vector ``a`` is lex-smaller, equal or larger."""
    if len(a) != len(b):
        raise ValueError("exponent vectors of different lengths")
    for x, y in zip(a, b):
        if x != y:
            return 1 if x > y else -1
    return 0


class Ring:
    """Variables (ordered ``x1 > ... > xn``) plus a coefficient domain.

    ``modulus=None`` means the rationals, otherwise the prime field of that
    order.
    """

    __slots__ = ("variables", "modulus", "nvars", "guard", "_hash")

    def __init__(self, variables: Iterable[str], modulus: Optional[int] = None):
        variables = tuple(variables)
        if not variables:
            raise ValueError("a ring needs at least one variable")
        if len(set(variables)) != len(variables):
            raise ValueError(f"duplicate variable names in {variables}")
        self.variables = variables
        self.modulus = modulus
        self.nvars = len(variables)
        self.guard = sum(1 << (FIELD_BITS * i + FIELD_BITS - 1)
                         for i in range(self.nvars))
        self._hash = hash((variables, modulus))

    def __repr__(self):
        dom = "QQ" if self.modulus is None else f"GF({self.modulus})"
        return f"Ring({', '.join(self.variables)}; {dom})"

    def __eq__(self, other):
        return (isinstance(other, Ring) and self.variables == other.variables
                and self.modulus == other.modulus)

    def __hash__(self):
        return self._hash

    def __reduce__(self):
        return (Ring, (self.variables, self.modulus))

    @property
    def is_rational(self) -> bool:
        return self.modulus is None

    # -- monomials ---------------------------------------------------------
    def shift(self, i: int) -> int:
        """Bit offset of variable ``i`` (0-based, in declared order)."""
        return FIELD_BITS * (self.nvars - 1 - i)

    def pack(self, exps: Sequence[int]) -> int:
        if len(exps) != self.nvars:
            raise ValueError(f"expected {self.nvars} exponents, got {len(exps)}")
        m = 0
        for e in exps:
            if e < 0 or e > MAX_EXPONENT:
                raise ValueError(f"exponent {e} out of range")
            m = (m << FIELD_BITS) | e
        return m

    def unpack(self, m: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.nvars):
            out.append(m & _FIELD_MASK)
            m >>= FIELD_BITS
        return tuple(reversed(out))

    def divides(self, a: int, b: int) -> bool:
        """True if monomial ``a`` divides monomial ``b``."""
        g = self.guard
        return ((b | g) - a) & g == g

    def lcm(self, a: int, b: int) -> int:
        m = 0
        for i in range(self.nvars):
            s = FIELD_BITS * i
            m |= max((a >> s) & _FIELD_MASK, (b >> s) & _FIELD_MASK) << s
        return m

    def coprime(self, a: int, b: int) -> bool:
        for i in range(self.nvars):
            s = FIELD_BITS * i
            if (a >> s) & _FIELD_MASK and (b >> s) & _FIELD_MASK:
                return False
        return True

    def total_degree(self, m: int) -> int:
        d = 0
        while m:
            d += m & _FIELD_MASK
            m >>= FIELD_BITS
        return d

    def degree_of(self, m: int, i: int) -> int:
        return (m >> self.shift(i)) & _FIELD_MASK

    def variable_monomial(self, i: int, e: int = 1) -> int:
        return e << self.shift(i)

    # -- coefficients ------------------------------------------------------
    def coerce(self, c) -> Coefficient:
        if self.modulus is None:
            return Fraction(c)
        if isinstance(c, int):
            return c % self.modulus
        return rational_mod(c, self.modulus)

    # -- derived rings -----------------------------------------------------
    def subring(self, k: int = 1) -> "Ring":
        """Ring on the variables after the first ``k``."""
        return Ring(self.variables[k:], self.modulus)

    def with_modulus(self, modulus: Optional[int]) -> "Ring":
        return Ring(self.variables, modulus)

    def with_leading_variable(self, name: str) -> "Ring":
        """Ring with one extra variable ordered above all existing ones."""
        return Ring((name,) + self.variables, self.modulus)

    # -- constructors ------------------------------------------------------
    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c) -> "Polynomial":
        c = self.coerce(c)
        return Polynomial(self, {0: c} if c else {})

    def gen(self, i: Union[int, str]) -> "Polynomial":
        if isinstance(i, str):
            i = self.variables.index(i)
        one = self.coerce(1)
        return Polynomial(self, {self.variable_monomial(i): one})

    def gens(self) -> list["Polynomial"]:
        return [self.gen(i) for i in range(self.nvars)]

    def from_exponents(self, terms: Mapping[Sequence[int], object]) -> "Polynomial":
        """Build from ``{exponent_tuple: coefficient}``."""
        out: dict[int, Coefficient] = {}
        for exps, c in terms.items():
            m = self.pack(tuple(exps))
            c = self.coerce(c)
            v = out.get(m, 0) + c
            if self.modulus is not None:
                v %= self.modulus
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Polynomial(self, out)

    def monomial_str(self, m: int) -> str:
        parts = []
        for name, e in zip(self.variables, self.unpack(m)):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts)


class Polynomial:
    """Immutable sparse polynomial; ``terms`` maps packed monomial -> coefficient.

    The constructor trusts its input (no zero coefficients, coefficients in
    the ring's domain).  Use :meth:`Ring.from_exponents` or the arithmetic
    operators for anything built from untrusted data.
    """

    __slots__ = ("ring", "terms", "_lm")

    def __init__(self, ring: Ring, terms: dict):
        self.ring = ring
        self.terms = terms
        self._lm = None

    def __reduce__(self):
        return (Polynomial, (self.ring, self.terms))

    # -- inspection --------------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def __iter__(self) -> Iterator[tuple[int, Coefficient]]:
        """Terms as ``(packed monomial, coefficient)`` in descending lex order."""
        for m in sorted(self.terms, reverse=True):
            yield m, self.terms[m]

    def exponent_terms(self) -> list[tuple[tuple[int, ...], Coefficient]]:
        return [(self.ring.unpack(m), c) for m, c in self]

    def lm(self) -> int:
        if self._lm is None:
            if not self.terms:
                raise ZeroDivisionError("the zero polynomial has no leading term")
            self._lm = max(self.terms)
        return self._lm

    def lc(self) -> Coefficient:
        return self.terms[self.lm()]

    def le(self) -> tuple[int, ...]:
        return self.ring.unpack(self.lm())

    def lt(self) -> "Polynomial":
        m = self.lm()
        return Polynomial(self.ring, {m: self.terms[m]})

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and 0 in self.terms)

    def is_one(self) -> bool:
        return len(self.terms) == 1 and self.terms.get(0) == 1

    def degree(self, i: Union[int, str]) -> int:
        if isinstance(i, str):
            i = self.ring.variables.index(i)
        if not self.terms:
            return -1
        return max(self.ring.degree_of(m, i) for m in self.terms)

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(self.ring.total_degree(m) for m in self.terms)

    def support(self) -> frozenset:
        return frozenset(self.terms)

    def used_variables(self) -> set[int]:
        used = set()
        for m in self.terms:
            for i, e in enumerate(self.ring.unpack(m)):
                if e:
                    used.add(i)
        return used

    # -- comparison --------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == self.ring.constant(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    # -- arithmetic --------------------------------------------------------
    def _coerce_other(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise ValueError(f"ring mismatch: {self.ring} vs {other.ring}")
            return other
        return self.ring.constant(other)

    def _combine(self, other: "Polynomial", sign: int) -> "Polynomial":
        p = self.ring.modulus
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, 0) + sign * c
            if p is not None:
                v %= p
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Polynomial(self.ring, out)

    def __add__(self, other):
        try:
            return self._combine(self._coerce_other(other), 1)
        except TypeError:
            return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        try:
            return self._combine(self._coerce_other(other), -1)
        except TypeError:
            return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        p = self.ring.modulus
        if p is None:
            return Polynomial(self.ring, {m: -c for m, c in self.terms.items()})
        return Polynomial(self.ring, {m: (-c) % p for m, c in self.terms.items()})

    def scale(self, c) -> "Polynomial":
        c = self.ring.coerce(c)
        if not c:
            return self.ring.zero()
        p = self.ring.modulus
        if p is None:
            return Polynomial(self.ring, {m: v * c for m, v in self.terms.items()})
        return Polynomial(self.ring, {m: v * c % p for m, v in self.terms.items()})

    def mul_term(self, mono: int, c) -> "Polynomial":
        c = self.ring.coerce(c)
        if not c:
            return self.ring.zero()
        p = self.ring.modulus
        if p is None:
            return Polynomial(self.ring, {m + mono: v * c for m, v in self.terms.items()})
        return Polynomial(self.ring, {m + mono: v * c % p for m, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            try:
                return self.scale(other)
            except TypeError:
                return NotImplemented
        other = self._coerce_other(other)
        p = self.ring.modulus
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = m1 + m2
                out[m] = out.get(m, 0) + c1 * c2
        if p is None:
            out = {m: c for m, c in out.items() if c}
        else:
            out = {m: c % p for m, c in out.items() if c % p}
        return Polynomial(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only non-negative integer powers are supported")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def monic(self) -> "Polynomial":
        if not self.terms:
            return self
        lc = self.lc()
        if lc == 1:
            return self
        p = self.ring.modulus
        if p is None:
            return Polynomial(self.ring, {m: c / lc for m, c in self.terms.items()})
        inv = pow(lc, -1, p)
        return Polynomial(self.ring, {m: c * inv % p for m, c in self.terms.items()})

    def exact_quotient(self, h: "Polynomial") -> "Polynomial":
        """``self / h``; raises ArithmeticError if ``h`` does not divide ``self``."""
        h = self._coerce_other(h)
        if h.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        ring = self.ring
        lm_h, lc_h = h.lm(), h.lc()
        inv = (ring.coerce(1) / lc_h) if ring.modulus is None else pow(lc_h, -1, ring.modulus)
        rest = self
        q: dict = {}
        while rest.terms:
            m = rest.lm()
            if not ring.divides(lm_h, m):
                raise ArithmeticError(f"{h} does not divide {self}")
            c = rest.terms[m] * inv
            if ring.modulus is not None:
                c %= ring.modulus
            q[m - lm_h] = c
            rest = rest - h.mul_term(m - lm_h, c)
        return Polynomial(ring, q)

    # -- structure in the main variable -------------------------------------
    def coefficients_in_first(self) -> dict[int, "Polynomial"]:
        """Write ``self`` as ``sum_j c_j * x1^j``; the ``c_j`` live in the subring."""
        sub = self.ring.subring()
        s = self.ring.shift(0)
        low = (1 << s) - 1
        out: dict[int, dict] = {}
        for m, c in self.terms.items():
            out.setdefault(m >> s, {})[m & low] = c
        return {j: Polynomial(sub, t) for j, t in out.items()}

    def leading_coefficient_in_first(self) -> "Polynomial":
        """Leading coefficient w.r.t. the first variable, as a subring element."""
        s = self.ring.shift(0)
        top = self.lm() >> s
        low = (1 << s) - 1
        sub = self.ring.subring()
        return Polynomial(sub, {m & low: c for m, c in self.terms.items() if m >> s == top})

    def embed(self, ring: Ring) -> "Polynomial":
        """Reinterpret in a ring whose trailing variables are ours."""
        if ring == self.ring:
            return self
        k = ring.nvars - self.ring.nvars
        if k < 0 or ring.variables[k:] != self.ring.variables or ring.modulus != self.ring.modulus:
            raise ValueError(f"cannot embed {self.ring} into {ring}")
        return Polynomial(ring, self.terms)

    def restrict(self, ring: Ring) -> "Polynomial":
        """Inverse of :meth:`embed`; fails if a dropped variable occurs."""
        if ring == self.ring:
            return self
        k = self.ring.nvars - ring.nvars
        if k < 0 or self.ring.variables[k:] != ring.variables or ring.modulus != self.ring.modulus:
            raise ValueError(f"cannot restrict {self.ring} to {ring}")
        limit = 1 << (FIELD_BITS * ring.nvars)
        if any(m >= limit for m in self.terms):
            raise ValueError("polynomial involves variables outside the target ring")
        return Polynomial(ring, self.terms)

    # -- coefficient maps --------------------------------------------------
    def reduce_mod(self, p: int) -> "Polynomial":
        """Coefficient-wise image in ``F_p``; ZeroDivisionError if a denominator dies."""
        if self.ring.modulus is not None:
            raise ValueError("polynomial is already modular")
        ring = self.ring.with_modulus(p)
        out = {}
        for m, c in self.terms.items():
            v = rational_mod(c, p)
            if v:
                out[m] = v
        return Polynomial(ring, out)

    def coefficients(self) -> list[Coefficient]:
        return [c for _, c in self]

    def evaluate(self, point: Sequence) -> object:
        """Evaluate at ``point`` (one value per variable, any numeric type)."""
        if len(point) != self.ring.nvars:
            raise ValueError("point has the wrong number of coordinates")
        total = 0
        cache: dict = {}
        for m, c in self.terms.items():
            term = c
            for i, e in enumerate(self.ring.unpack(m)):
                if e:
                    key = (i, e)
                    if key not in cache:
                        cache[key] = point[i] ** e
                    term = term * cache[key]
            total = total + term
        return total

    # -- rendering ---------------------------------------------------------
    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        for m, c in self:
            mono = self.ring.monomial_str(m)
            neg = self.ring.modulus is None and c < 0
            a = -c if neg else c
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            if not pieces:
                pieces.append(f"-{body}" if neg else body)
            else:
                pieces.append(f" - {body}" if neg else f" + {body}")
        return "".join(pieces)

    def __repr__(self):
        return f"Polynomial({self}; {self.ring!r})"


def leading_data(f: Polynomial):
    """``(LE, LC, LM, LT)`` of a non-zero polynomial.

    ``LM`` is returned as a monic polynomial and ``LT = LC * LM``.
    """
    if f.is_zero():
        raise ZeroDivisionError("the zero polynomial has no leading data")
    m = f.lm()
    one = f.ring.coerce(1)
    return f.le(), f.lc(), Polynomial(f.ring, {m: one}), f.lt()
