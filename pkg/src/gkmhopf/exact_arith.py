"""Exact scalar and polynomial arithmetic.

Scalars are ``gmpy2.mpq`` rationals (for the rational base fields) or
:class:`NumberFieldElem` (for the real cyclotomic field Q(gamma) with
gamma = 2cos(pi/p)).  Polynomials are sparse maps from exponent tuples to
nonzero scalars; negative exponents are allowed, so the same class serves the
polynomial and the Laurent models.

:class:`RootFraction` is the localized element ``numerator / prod x_alpha^m``
whose denominator is kept as a multiplicity vector over the positive roots.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from operator import add
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from gmpy2 import mpq

RATIONAL_TYPES = (int, Fraction, type(mpq()))
_ZERO = mpq(0)

SUPPORTED_DIHEDRAL_PRIMES = (3, 5, 7)


class CapabilityError(ValueError):
    """Requested configuration is outside what the library supports."""


class ConsistencyError(ArithmeticError):
    """An identity that must hold exactly failed."""


# --------------------------------------------------------------------------
# univariate integer polynomials (coefficient lists, low degree first)


def _upoly_trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


def _upoly_mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _upoly_trim(out)


def _upoly_sub(a, b):
    n = max(len(a), len(b))
    return _upoly_trim([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)])


def _upoly_divexact(a, b):
    """Exact division of integer polynomials; raises if not exact."""
    a = list(a)
    q = [0] * max(len(a) - len(b) + 1, 0)
    for i in range(len(a) - len(b), -1, -1):
        coef = Fraction(a[i + len(b) - 1], b[-1])
        if coef.denominator != 1:
            raise ConsistencyError("non-integral quotient")
        coef = int(coef)
        q[i] = coef
        for j, y in enumerate(b):
            a[i + j] -= coef * y
    if any(a):
        raise ConsistencyError("division is not exact")
    return _upoly_trim(q)


def _upoly_isqrt(f):
    """Square root of a monic integer polynomial that is a perfect square."""
    n = len(f) - 1
    if n % 2:
        raise ConsistencyError("odd degree polynomial is not a square")
    m = n // 2
    g = [0] * (m + 1)
    g[m] = 1
    # match coefficients from the top down
    for k in range(m - 1, -1, -1):
        sq = _upoly_mul(g, g)
        target = f[m + k]
        have = sq[m + k] if m + k < len(sq) else 0
        g[k] = Fraction(target - have, 2)
        if g[k].denominator != 1:
            raise ConsistencyError("polynomial is not an integral square")
        g[k] = int(g[k])
    if _upoly_mul(g, g) != _upoly_trim(f):
        raise ConsistencyError("polynomial is not a perfect square")
    return g


def minimal_polynomial_of_gamma(p: int) -> Tuple[int, ...]:
    """Monic minimal polynomial of ``2cos(pi/p)`` over Q, low degree first.

    Uses the Dickson identity ``D_p(2cos t) = 2cos(p t)``: the numbers
    ``2cos(k pi/p)`` with ``k`` odd are the roots of ``D_p(x) + 2``, which
    factors as ``(x + 2) g(x)^2`` with ``g`` the minimal polynomial.
    """
    if p not in SUPPORTED_DIHEDRAL_PRIMES:
        raise CapabilityError(f"dihedral prime p={p} not supported (use one of {SUPPORTED_DIHEDRAL_PRIMES})")
    d_prev, d_cur = [2], [0, 1]
    for _ in range(p - 1):
        d_prev, d_cur = d_cur, _upoly_sub(_upoly_mul([0, 1], d_cur), d_prev)
    f = list(d_cur)
    f[0] += 2
    g = _upoly_isqrt(_upoly_divexact(f, [2, 1]))
    return tuple(g)


# --------------------------------------------------------------------------
# base fields


class FieldKind(enum.Enum):
    RATIONAL = "rational"
    RATIONAL_BETA = "rational_beta"
    CYCLOTOMIC_REAL = "cyclotomic_real"


class BaseField:
    """Q, Q with a formal invertible beta, or the real cyclotomic field Q(gamma)."""

    def __init__(self, kind: FieldKind, p: Optional[int] = None):
        self.kind = kind
        self.p = p
        if kind is FieldKind.CYCLOTOMIC_REAL:
            self.minpoly = minimal_polynomial_of_gamma(p)
            self.degree = len(self.minpoly) - 1
        else:
            self.minpoly = (0, 1)
            self.degree = 1
        self._gamma = None
        self.inverse_cache: Dict[tuple, "NumberFieldElem"] = {}
        # gamma^k for k = d, ..., 2d - 2 in the power basis
        self.reduction: List[List] = []
        d = self.degree
        if d > 1:
            row = [mpq(-c) for c in self.minpoly[:d]]
            for _ in range(d - 1):
                self.reduction.append(row)
                top = row[-1]
                row = [mpq(0)] + row[:-1]
                row = [x + top * y for x, y in zip(row, self.reduction[0])]

    def __repr__(self):
        if self.kind is FieldKind.CYCLOTOMIC_REAL:
            return f"BaseField(Q(2cos(pi/{self.p})))"
        return f"BaseField({self.kind.value})"

    @property
    def is_cyclotomic(self) -> bool:
        return self.kind is FieldKind.CYCLOTOMIC_REAL

    def __call__(self, x):
        """Coerce an int/Fraction (or a coefficient sequence) into the field."""
        if not self.is_cyclotomic:
            if isinstance(x, NumberFieldElem):
                raise TypeError("number field element in a rational field")
            return mpq(x)
        if isinstance(x, NumberFieldElem):
            return x
        if isinstance(x, (list, tuple)):
            coeffs = [mpq(c) for c in x] + [mpq(0)] * (self.degree - len(x))
            return NumberFieldElem(self, tuple(coeffs[: self.degree]))._reduced_from(coeffs)
        return NumberFieldElem(self, (mpq(x),) + (mpq(0),) * (self.degree - 1))

    def gamma(self):
        if not self.is_cyclotomic:
            raise CapabilityError("gamma only exists in a cyclotomic field")
        if self._gamma is None:
            self._gamma = self([0, 1]) if self.degree > 1 else self(1)
        return self._gamma

    def zero(self):
        return self(0)

    def one(self):
        return self(1)

    def gamma_float(self) -> float:
        import math

        return 2 * math.cos(math.pi / self.p)


class NumberFieldElem:
    """Element of Q(gamma) in the power basis ``1, gamma, ..., gamma^(d-1)``."""

    __slots__ = ("field", "c")

    def __init__(self, field: BaseField, coeffs: tuple):
        self.field = field
        self.c = coeffs

    def _reduced_from(self, coeffs):
        m = self.field.minpoly
        d = self.field.degree
        coeffs = list(coeffs)
        for i in range(len(coeffs) - 1, d - 1, -1):
            top = coeffs[i]
            if top:
                for j in range(d):
                    coeffs[i - d + j] -= top * m[j]
            coeffs[i] = 0
        coeffs = coeffs[:d] + [mpq(0)] * (d - len(coeffs))
        return NumberFieldElem(self.field, tuple(mpq(x) for x in coeffs))

    def _coerce(self, other):
        if isinstance(other, NumberFieldElem):
            return other
        if isinstance(other, RATIONAL_TYPES):
            return self.field(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return NumberFieldElem(self.field, tuple(a + b for a, b in zip(self.c, o.c)))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return NumberFieldElem(self.field, tuple(a - b for a, b in zip(self.c, o.c)))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __neg__(self):
        return NumberFieldElem(self.field, tuple(-a for a in self.c))

    def __mul__(self, other):
        if isinstance(other, RATIONAL_TYPES):
            return NumberFieldElem(self.field, tuple(a * other for a in self.c))
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        d = self.field.degree
        prod = [_ZERO] * (2 * d - 1)
        for i, a in enumerate(self.c):
            if a:
                for j, b in enumerate(o.c):
                    if b:
                        prod[i + j] += a * b
        out = prod[:d]
        for row, top in zip(self.field.reduction, prod[d:]):
            if top:
                out = [x + top * y for x, y in zip(out, row)]
        return NumberFieldElem(self.field, tuple(out))

    __rmul__ = __mul__

    def mult_matrix(self):
        """Matrix of multiplication by ``self`` in the power basis (columns = images)."""
        d = self.field.degree
        cols = []
        for j in range(d):
            basis = [mpq(0)] * d
            basis[j] = mpq(1)
            cols.append((self * NumberFieldElem(self.field, tuple(basis))).c)
        return [[cols[j][i] for j in range(d)] for i in range(d)]

    def inverse(self):
        if not self:
            raise ZeroDivisionError("inverse of zero in Q(gamma)")
        cache = self.field.inverse_cache
        hit = cache.get(self.c)
        if hit is None:
            d = self.field.degree
            rhs = [mpq(1)] + [mpq(0)] * (d - 1)
            hit = NumberFieldElem(self.field, tuple(solve_rational(self.mult_matrix(), rhs)))
            if len(cache) < 4096:
                cache[self.c] = hit
        return hit

    def __truediv__(self, other):
        if isinstance(other, RATIONAL_TYPES):
            return NumberFieldElem(self.field, tuple(a / other for a in self.c))
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.field(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = self.field.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __bool__(self):
        return any(self.c)

    def __eq__(self, other):
        if isinstance(other, RATIONAL_TYPES):
            return self.c[0] == other and not any(self.c[1:])
        if isinstance(other, NumberFieldElem):
            return self.c == other.c
        return NotImplemented

    def __hash__(self):
        if not any(self.c[1:]):
            return hash(self.c[0])
        return hash(self.c)

    def __repr__(self):
        return format_scalar(self)

    def is_rational(self) -> bool:
        return not any(self.c[1:])

    def is_integral(self) -> bool:
        """Integrality in the power basis, i.e. membership in Z[gamma]."""
        return all(x.denominator == 1 for x in self.c)

    def to_float(self) -> float:
        g = self.field.gamma_float()
        return sum(float(x) * g**i for i, x in enumerate(self.c))


def field_norm(a) -> "mpq":
    """Norm from Q(gamma) down to Q: determinant of multiplication by ``a``."""
    if isinstance(a, RATIONAL_TYPES):
        return mpq(a)
    return determinant(a.mult_matrix())


def is_zero(c) -> bool:
    return not c


def format_scalar(c) -> str:
    if isinstance(c, NumberFieldElem):
        parts = []
        for i, x in enumerate(c.c):
            if x:
                mon = "" if i == 0 else ("g" if i == 1 else f"g^{i}")
                if mon and x == 1:
                    parts.append(mon)
                elif mon and x == -1:
                    parts.append("-" + mon)
                else:
                    parts.append(f"{x}{'*' + mon if mon else ''}")
        if not parts:
            return "0"
        s = "+".join(parts).replace("+-", "-")
        return f"({s})" if len(parts) > 1 else s
    return str(c)


# --------------------------------------------------------------------------
# dense rational linear algebra (small matrices only)


def determinant(m) -> "mpq":
    a = [[mpq(x) for x in row] for row in m]
    n = len(a)
    det = mpq(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            return mpq(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        for r in range(col + 1, n):
            f = a[r][col] / a[col][col]
            if f:
                for k in range(col, n):
                    a[r][k] -= f * a[col][k]
    return det


def solve_rational(m, rhs):
    """Solve ``m x = rhs`` for square ``m`` over a field (generic scalars)."""
    n = len(m)
    a = [list(row) + [rhs[i]] for i, row in enumerate(m)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col] if not isinstance(a[col][col], NumberFieldElem) else a[col][col].inverse()
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [a[i][n] for i in range(n)]


def invert_matrix(m):
    n = len(m)
    cols = []
    for j in range(n):
        e = [0] * n
        e[j] = 1
        cols.append(solve_rational(m, e))
    return [[cols[j][i] for j in range(n)] for i in range(n)]


# --------------------------------------------------------------------------
# sparse multivariate (Laurent) polynomials

Exponent = Tuple[int, ...]


def _add_exp(a: Exponent, b: Exponent) -> Exponent:
    return tuple(map(add, a, b))


class MultiPoly:
    """Sparse polynomial ``{exponent tuple: nonzero coefficient}``.

    Instances are treated as immutable once built.
    """

    __slots__ = ("terms", "nvars")

    def __init__(self, terms: Dict[Exponent, object], nvars: int):
        self.terms = terms
        self.nvars = nvars

    # construction
    @classmethod
    def zero(cls, nvars: int) -> "MultiPoly":
        return cls({}, nvars)

    @classmethod
    def constant(cls, c, nvars: int) -> "MultiPoly":
        return cls({(0,) * nvars: c} if c else {}, nvars)

    @classmethod
    def monomial(cls, exp: Sequence[int], c=1, nvars: Optional[int] = None) -> "MultiPoly":
        exp = tuple(exp)
        return cls({exp: c} if c else {}, len(exp) if nvars is None else nvars)

    @classmethod
    def from_dict(cls, terms: Dict[Exponent, object], nvars: int) -> "MultiPoly":
        return cls({tuple(e): c for e, c in terms.items() if c}, nvars)

    # queries
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def constant_term(self):
        return self.terms.get((0,) * self.nvars, 0)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and (0,) * self.nvars in self.terms)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def min_exponents(self) -> Exponent:
        return tuple(min(e[i] for e in self.terms) for i in range(self.nvars))

    # ring operations
    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            other = MultiPoly.constant(other, self.nvars)
        if len(other.terms) > len(self.terms):
            self, other = other, self
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e)
            if v is None:
                out[e] = c
            else:
                v = v + c
                if v:
                    out[e] = v
                else:
                    del out[e]
        return MultiPoly(out, self.nvars)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly({e: -c for e, c in self.terms.items()}, self.nvars)

    def __sub__(self, other: "MultiPoly") -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            other = MultiPoly.constant(other, self.nvars)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e)
            if v is None:
                out[e] = -c
            else:
                v = v - c
                if v:
                    out[e] = v
                else:
                    del out[e]
        return MultiPoly(out, self.nvars)

    def __rsub__(self, other):
        return MultiPoly.constant(other, self.nvars) - self

    def scale(self, c) -> "MultiPoly":
        if not c:
            return MultiPoly({}, self.nvars)
        return MultiPoly({e: v * c for e, v in self.terms.items()}, self.nvars)

    def __mul__(self, other) -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            return self.scale(other)
        if not self.terms or not other.terms:
            return MultiPoly({}, self.nvars)
        if len(other.terms) == 1:
            (e2, c2), = other.terms.items()
            return MultiPoly({_add_exp(e, e2): c * c2 for e, c in self.terms.items()}, self.nvars)
        out: Dict[Exponent, object] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = _add_exp(e1, e2)
                v = out.get(e)
                out[e] = c1 * c2 if v is None else v + c1 * c2
        return MultiPoly({e: c for e, c in out.items() if c}, self.nvars)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, n: int) -> "MultiPoly":
        if n < 0:
            if not self.is_monomial():
                raise ArithmeticError("negative power of a non-monomial")
            (e, c), = self.terms.items()
            return MultiPoly({tuple(-n * x for x in e): (1 / c) ** (-n) if not isinstance(c, int) else mpq(1, c) ** (-n)}, self.nvars)
        out = MultiPoly.constant(1, self.nvars)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def monomial_inverse(self) -> "MultiPoly":
        if not self.is_monomial():
            raise ArithmeticError("only monomials are invertible here")
        (e, c), = self.terms.items()
        inv = c.inverse() if isinstance(c, NumberFieldElem) else 1 / mpq(c)
        return MultiPoly({tuple(-x for x in e): inv}, self.nvars)

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.terms == other.terms
        if not other:
            return not self.terms
        return self.terms == MultiPoly.constant(other, self.nvars).terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # substitutions
    def linear_substitute(self, images: Sequence["MultiPoly"]) -> "MultiPoly":
        """Substitute variable ``i`` by ``images[i]`` (nonnegative exponents only)."""
        if not self.terms:
            return self
        nv = images[0].nvars
        powers = [dict() for _ in images]

        def pw(i, k):
            cache = powers[i]
            if k not in cache:
                if k == 0:
                    cache[k] = MultiPoly.constant(1, nv)
                elif k == 1:
                    cache[k] = images[i]
                else:
                    cache[k] = pw(i, k - 1) * images[i]
            return cache[k]

        out = MultiPoly({}, nv)
        acc: Dict[Exponent, object] = {}
        for e, c in self.terms.items():
            term = MultiPoly.constant(c, nv)
            for i, k in enumerate(e):
                if k:
                    term = term * pw(i, k)
            for e2, c2 in term.terms.items():
                v = acc.get(e2)
                acc[e2] = c2 if v is None else v + c2
        out = MultiPoly({e: c for e, c in acc.items() if c}, nv)
        return out

    def monomial_map(self, matrix: Sequence[Sequence[int]]) -> "MultiPoly":
        """Apply an integer linear map to every exponent vector.

        ``matrix[i][j]`` is the coefficient of old coordinate ``j`` in new
        coordinate ``i``; the map must be injective (it is for group actions).
        """
        n = self.nvars
        out = {}
        for e, c in self.terms.items():
            out[tuple(sum(row[j] * e[j] for j in range(n)) for row in matrix)] = c
        return MultiPoly(out, n)

    def evaluate(self, values: Sequence) -> object:
        total = 0
        for e, c in self.terms.items():
            t = c
            for v, k in zip(values, e):
                if k:
                    t = t * v**k
            total = total + t
        return total

    def __repr__(self):
        return self.to_string()

    def to_string(self, names: Optional[Sequence[str]] = None) -> str:
        if not self.terms:
            return "0"
        if names is None:
            names = [f"x{i + 1}" for i in range(self.nvars)]
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mon = "*".join(
                names[i] if k == 1 else f"{names[i]}^{k}" if k > 0 else f"{names[i]}^({k})"
                for i, k in enumerate(e)
                if k
            )
            cs = format_scalar(c)
            if not mon:
                parts.append(cs)
            elif c == 1:
                parts.append(mon)
            elif c == -1:
                parts.append("-" + mon)
            else:
                parts.append(f"{cs}*{mon}")
        return " + ".join(parts).replace("+ -", "- ")


def poly_divrem_linear(f: MultiPoly, l: MultiPoly) -> Tuple[MultiPoly, MultiPoly]:
    """Divide ``f`` by a homogeneous linear form ``l``.

    Returns ``(q, r)`` with ``f = q*l + r`` and ``r`` free of the pivot
    variable of ``l`` (its last variable with a nonzero coefficient), so
    ``r == 0`` exactly when ``l`` divides ``f``.
    """
    if not l.terms:
        raise ValueError("division by the zero linear form")
    if any(sum(e) != 1 or min(e) < 0 for e in l.terms):
        raise ValueError("divisor must be a homogeneous linear form")
    n = f.nvars
    pivot = max(e.index(1) for e in l.terms)
    lead = l.terms[tuple(1 if i == pivot else 0 for i in range(n))]
    inv_lead = lead.inverse() if isinstance(lead, NumberFieldElem) else mpq(1) / lead
    rest = [(e.index(1), c) for e, c in l.terms.items() if e.index(1) != pivot]
    rem = dict(f.terms)
    quo: Dict[Exponent, object] = {}
    # eliminate monomials containing the pivot, highest pivot degree first
    while True:
        cands = [e for e in rem if e[pivot] > 0]
        if not cands:
            break
        top = max(e[pivot] for e in cands)
        for e in [e for e in cands if e[pivot] == top]:
            c = rem.pop(e)
            qc = c * inv_lead
            qe = e[:pivot] + (e[pivot] - 1,) + e[pivot + 1 :]
            v = quo.get(qe)
            quo[qe] = qc if v is None else v + qc
            for j, lc in rest:
                ne = qe[:j] + (qe[j] + 1,) + qe[j + 1 :]
                v = rem.get(ne)
                nv = -qc * lc if v is None else v - qc * lc
                if nv:
                    rem[ne] = nv
                elif ne in rem:
                    del rem[ne]
    return MultiPoly({e: c for e, c in quo.items() if c}, n), MultiPoly(rem, n)


def _coset_split(e: Exponent, a: Exponent, j: int) -> Tuple[Exponent, int]:
    t = e[j] // a[j]
    if not t:
        return e, 0
    return tuple([x - t * y for x, y in zip(e, a)]), t


def laurent_divide_binomial(f: MultiPoly, a: Sequence[int]) -> Optional[MultiPoly]:
    """Exact quotient ``f / (1 - m_a)`` in the Laurent ring, or ``None``.

    Exponents are collapsed modulo ``Z*a`` with the representative fixed by
    the last nonzero coordinate of ``a``; each coset is then a Laurent
    polynomial in ``t = m_a`` and is divided by ``1 - t`` via partial sums.
    """
    a = tuple(a)
    if not any(a):
        raise ValueError("binomial exponent must be nonzero")
    j = max(i for i, x in enumerate(a) if x)
    cosets: Dict[Exponent, Dict[int, object]] = {}
    for e, c in f.terms.items():
        rep, t = _coset_split(e, a, j)
        cosets.setdefault(rep, {})[t] = c
    out: Dict[Exponent, object] = {}
    for rep, series in cosets.items():
        ts = sorted(series)
        partial = 0
        for k in range(ts[0], ts[-1] + 1):
            partial = partial + series.get(k, 0)
            if partial:
                out[tuple([x + k * y for x, y in zip(rep, a)]) if k else rep] = partial
        if partial:
            return None
    return MultiPoly(out, f.nvars)


def laurent_divisible_by_binomial(f: MultiPoly, a: Sequence[int]) -> bool:
    """True iff ``1 - m_a`` divides the Laurent polynomial ``f``."""
    a = tuple(a)
    if not any(a):
        raise ValueError("binomial exponent must be nonzero")
    j = max(i for i, x in enumerate(a) if x)
    sums: Dict[Exponent, object] = {}
    for e, c in f.terms.items():
        rep, _ = _coset_split(e, a, j)
        sums[rep] = sums.get(rep, 0) + c
    return not any(sums.values())


# --------------------------------------------------------------------------
# localized elements with root-factor denominators


class RootFraction:
    """``num / prod_alpha x_alpha^den[alpha]`` over a formal-group backend.

    ``ring`` supplies the root factors and exact division by them; see
    :class:`gkmhopf.formal_group.FGLBackend`.
    """

    __slots__ = ("ring", "num", "den")

    def __init__(self, ring, num: MultiPoly, den: Tuple[int, ...], normalized: bool = False):
        self.ring = ring
        if not num.terms:
            self.num = num
            self.den = ring.empty_den
            return
        self.num = num
        self.den = den
        if not normalized and any(den):
            self._normalize()

    def _normalize(self):
        num = self.num
        den = list(self.den)
        for i, m in enumerate(den):
            while m:
                q = self.ring.divide_by_root(num, i)
                if q is None:
                    break
                num = q
                m -= 1
            den[i] = m
        self.num = num
        self.den = tuple(den)

    def normalize(self) -> "RootFraction":
        out = RootFraction(self.ring, self.num, self.den, normalized=True)
        out._normalize()
        return out

    # predicates
    def is_zero(self) -> bool:
        return not self.num.terms

    def __bool__(self):
        return bool(self.num.terms)

    def in_s(self) -> bool:
        return not any(self.den)

    def poly(self) -> MultiPoly:
        if any(self.den):
            raise ConsistencyError(f"element is not in S: {self}")
        return self.num

    # arithmetic
    def _lift(self, other):
        if isinstance(other, RootFraction):
            return other
        if isinstance(other, MultiPoly):
            return RootFraction(self.ring, other, self.ring.empty_den, normalized=True)
        return RootFraction(self.ring, self.ring.const(other), self.ring.empty_den, normalized=True)

    def __add__(self, other):
        other = self._lift(other)
        if not other.num.terms:
            return self
        if not self.num.terms:
            return other
        if self.den == other.den:
            return RootFraction(self.ring, self.num + other.num, self.den)
        den = tuple(max(a, b) for a, b in zip(self.den, other.den))
        n1 = self.num * self.ring.root_product(tuple(d - a for d, a in zip(den, self.den)))
        n2 = other.num * self.ring.root_product(tuple(d - b for d, b in zip(den, other.den)))
        return RootFraction(self.ring, n1 + n2, den)

    __radd__ = __add__

    def __neg__(self):
        return RootFraction(self.ring, -self.num, self.den, normalized=True)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        if not self.num.terms or not other.num.terms:
            return RootFraction(self.ring, MultiPoly.zero(self.num.nvars), self.ring.empty_den)
        den = tuple(a + b for a, b in zip(self.den, other.den))
        return RootFraction(self.ring, self.num * other.num, den)

    __rmul__ = __mul__

    def inverse(self) -> "RootFraction":
        """Inverse of a unit times a product of root factors."""
        if not self.num.is_monomial():
            raise ArithmeticError(f"cannot invert non-monomial numerator {self.num}")
        return RootFraction(self.ring, self.ring.root_product(self.den) * self.num.monomial_inverse(), self.ring.empty_den, normalized=True)

    def __truediv__(self, other):
        return self * self._lift(other).inverse()

    def __eq__(self, other):
        if not isinstance(other, RootFraction):
            other = self._lift(other)
        return (self - other).is_zero()

    __hash__ = None

    def act(self, w: int) -> "RootFraction":
        """Apply the Weyl group element with index ``w``."""
        return self.ring.act_fraction(w, self)

    def __repr__(self):
        if not any(self.den):
            return f"({self.num})"
        dens = "*".join(
            (f"x[{self.ring.root_label(i)}]" + (f"^{m}" if m > 1 else "")) for i, m in enumerate(self.den) if m
        )
        return f"({self.num})/({dens})"


def lcm_int(values: Iterable[int]) -> int:
    from math import gcd

    return reduce(lambda a, b: a * b // gcd(a, b), values, 1)


@dataclass(frozen=True)
class SignedRoot:
    """A root written as ``sign * positive_root[index]``."""

    sign: int
    index: int
