"""Twisted group algebra Q_W, push-pull elements and the Demazure algebra.

An element ``sum_w q_w delta_w`` is stored as a dict ``{w: q_w}`` with
:class:`~gkmhopf.exact_arith.RootFraction` coefficients, multiplied through
``delta_w f = w(f) delta_w``.
"""
from __future__ import annotations

from typing import Dict, List, Optional, Sequence, Tuple

from .exact_arith import ConsistencyError, MultiPoly, RootFraction
from .formal_group import FGLBackend


class QWElem:
    """Element of the twisted group algebra ``Q_W``."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: FGLBackend, coeffs: Dict[int, RootFraction]):
        self.ring = ring
        self.coeffs = {w: q for w, q in coeffs.items() if not q.is_zero()}

    @classmethod
    def delta(cls, ring, w: int, q=None) -> "QWElem":
        q = ring.lift(ring.one() if q is None else q)
        return cls(ring, {w: q})

    @classmethod
    def scalar(cls, ring, q) -> "QWElem":
        return cls(ring, {0: ring.lift(q)})

    @classmethod
    def zero(cls, ring) -> "QWElem":
        return cls(ring, {})

    def __add__(self, other: "QWElem") -> "QWElem":
        out = dict(self.coeffs)
        for w, q in other.coeffs.items():
            out[w] = out[w] + q if w in out else q
        return QWElem(self.ring, out)

    def __neg__(self):
        return QWElem(self.ring, {w: -q for w, q in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other) -> "QWElem":
        if not isinstance(other, QWElem):
            return self * QWElem.scalar(self.ring, other)
        ring = self.ring
        rs = ring.rs
        out: Dict[int, RootFraction] = {}
        for u, p in self.coeffs.items():
            for v, q in other.coeffs.items():
                term = p * ring.act_fraction(u, q)
                uv = rs.mul(u, v)
                out[uv] = out[uv] + term if uv in out else term
        return QWElem(ring, out)

    def left_scale(self, q) -> "QWElem":
        q = self.ring.lift(q)
        return QWElem(self.ring, {w: q * c for w, c in self.coeffs.items()})

    def __eq__(self, other):
        if not isinstance(other, QWElem):
            return NotImplemented
        return not (self - other).coeffs

    __hash__ = None

    def coefficient(self, w: int) -> RootFraction:
        return self.coeffs.get(w, self.ring.fraction(0))

    def support(self) -> List[int]:
        return sorted(self.coeffs)

    def apply(self, f) -> RootFraction:
        """Operator action ``(q delta_w)(f) = q w(f)``."""
        ring = self.ring
        f = ring.lift(f)
        total = ring.fraction(0)
        for w, q in self.coeffs.items():
            total = total + q * ring.act_fraction(w, f)
        return total

    def conjugate(self, u: int) -> "QWElem":
        """``delta_u a delta_{u^-1}``."""
        ring = self.ring
        rs = ring.rs
        ui = rs.inverse(u)
        return QWElem(ring, {rs.mul(rs.mul(u, w), ui): ring.act_fraction(u, q) for w, q in self.coeffs.items()})

    def __repr__(self):
        rs = self.ring.rs
        parts = [f"{q}*d[{rs.elements[w].word_string()}]" for w, q in sorted(self.coeffs.items())]
        return " + ".join(parts) if parts else "0"


class DemazureAlgebra:
    """Push-pull elements, products over words and related elements of ``Q_W``."""

    def __init__(self, ring: FGLBackend):
        self.ring = ring
        self.rs = ring.rs
        self._yw: Dict[int, QWElem] = {}
        self._pi: Optional[QWElem] = None

    def y_root(self, k: int) -> QWElem:
        """``Y_alpha = 1/x_{-alpha} + (1/x_alpha) delta_{s_alpha}`` for root index ``k``."""
        ring, rs = self.ring, self.rs
        sign, i = rs.signed(k)
        return QWElem(ring, {0: ring.inv_root(rs.negate_index(k)), rs.reflection_of[i]: ring.inv_root(k)})

    def x_root(self, k: int) -> QWElem:
        """Divided difference element ``X_alpha = 1/x_alpha - (1/x_alpha) delta_{s_alpha}``."""
        ring, rs = self.ring, self.rs
        sign, i = rs.signed(k)
        inv = ring.inv_root(k)
        return QWElem(ring, {0: inv, rs.reflection_of[i]: -inv})

    def _letter_root(self, letter: int) -> int:
        i = abs(letter) - 1
        return i if letter > 0 else self.rs.negate_index(i)

    def y_simple(self, letter: int) -> QWElem:
        """``Y_i``; negative letters give ``Y_{-i}``."""
        return self.y_root(self._letter_root(letter))

    def y_word(self, word: Sequence[int]) -> QWElem:
        out = QWElem.delta(self.ring, 0)
        for letter in word:
            out = out * self.y_simple(letter)
        return out

    def x_word(self, word: Sequence[int]) -> QWElem:
        out = QWElem.delta(self.ring, 0)
        for letter in word:
            out = out * self.x_root(self._letter_root(letter))
        return out

    def y(self, w: int) -> QWElem:
        """``Y_{I_w}`` for the canonical reduced word of ``w`` (cached)."""
        cached = self._yw.get(w)
        if cached is None:
            word = self.rs.word(w)
            if not word:
                cached = QWElem.delta(self.ring, 0)
            else:
                prefix = self.rs.element_from_word(word[:-1])
                cached = self.y(prefix) * self.y_simple(word[-1])
            self._yw[w] = cached
        return cached

    def x(self, w: int) -> QWElem:
        return self.x_word(self.rs.word(w))

    def leading(self, w: int) -> RootFraction:
        """Coefficient of ``delta_w`` in ``Y_{I_w}``."""
        return self.y(w).coefficient(w)

    # --------------------------------------------------------------- checks
    def reduced_words(self, w: int) -> List[Tuple[int, ...]]:
        rs = self.rs
        words = [()]
        for _ in range(rs.length(w)):
            words = [a + (i,) for a in words for i in range(1, rs.rank + 1) if rs.length(rs.element_from_word(a + (i,))) == len(a) + 1]
        return [a for a in words if rs.element_from_word(a) == w]

    def braid_check(self) -> dict:
        """Compare ``Y_I`` over all reduced words ``I`` of every element."""
        discrepancies = []
        checked = 0
        for w in range(self.rs.order):
            words = self.reduced_words(w)
            ref = self.y(w)
            for word in words:
                checked += 1
                if self.y_word(word) != ref:
                    discrepancies.append(word)
        return {"passed": not discrepancies, "words_checked": checked, "discrepancies": discrepancies}

    def pi_element(self) -> QWElem:
        """``pi = sum_w (1/w(x_Pi)) delta_w``."""
        if self._pi is None:
            ring = self.ring
            inv = ring.inv_x_pi()
            self._pi = QWElem(ring, {w: ring.act_fraction(w, inv) for w in range(self.rs.order)})
        return self._pi

    def iota(self, a: QWElem) -> QWElem:
        """Anti-involution ``q delta_w -> delta_{w^-1} q w(x_Pi)/x_Pi``."""
        ring, rs = self.ring, self.rs
        xpi = ring.fraction(ring.x_pi())
        inv = ring.inv_x_pi()
        out = {}
        for w, q in a.coeffs.items():
            wi = rs.inverse(w)
            # delta_{w^-1} q w(x_Pi)/x_Pi = w^-1(q) * x_Pi / w^-1(x_Pi) delta_{w^-1}
            ratio = xpi * ring.act_fraction(wi, inv)
            out[wi] = ring.act_fraction(wi, q) * ratio
        return QWElem(ring, out)

    # ------------------------------------------------------ basis expansion
    def expand_in_y_basis(self, a: QWElem) -> Dict[int, RootFraction]:
        """Coefficients ``c_w`` with ``a = sum_w c_w Y_{I_w}`` (left coefficients)."""
        rs = self.rs
        rem = a
        out: Dict[int, RootFraction] = {}
        while rem.coeffs:
            v = max(rem.coeffs, key=lambda w: (rs.length(w), w))
            c = rem.coeffs[v] * self.leading(v).inverse()
            out[v] = c
            rem = rem - self.y(v).left_scale(c)
            if v in rem.coeffs:
                raise ConsistencyError("triangular expansion failed to clear the leading term")
        return out

    def expand_in_twisted_y_basis(self, a: QWElem, u: int) -> Dict[int, RootFraction]:
        """Coefficients ``c_w`` with ``a = sum_w c_w {}^uY_{I_w}``."""
        ring, rs = self.ring, self.rs
        back = a.conjugate(rs.inverse(u))
        return {w: ring.act_fraction(u, c) for w, c in self.expand_in_y_basis(back).items()}

    def twisted_y(self, u: int, w: int) -> QWElem:
        """``{}^uY_{I_w} = delta_u Y_{I_w} delta_{u^-1}``."""
        return self.y(w).conjugate(u)

    def tilde_y(self, u: int, w: int, d_u) -> QWElem:
        """``{}^u tilde Y_{I_w} = sum_v d^u_{w,v} {}^uY_{I_v}``."""
        out = QWElem.zero(self.ring)
        for v in range(self.rs.order):
            d = d_u[w][v]
            if not d.is_zero():
                out = out + self.twisted_y(u, v).left_scale(d)
        return out

    def nu_constants(self, u: int, c_u, d_u) -> Dict[Tuple[int, int, int], MultiPoly]:
        """Structure constants ``nu(u)_{x,y}^z`` of the tilde basis.

        They are defined by
        ``tY_{y^-1} tY_{x^-1} = sum_z nu(u)_{x,y}^z tY_{z^-1}``
        with ``tY = {}^u tilde Y``.  The product is expanded in the triangular
        ``{}^uY`` basis and converted with ``C_u = (D_u^t)^{-1}``.  Every
        constant is certified to lie in S.
        """
        rs = self.rs
        n = rs.order
        tys = [self.tilde_y(u, w, d_u) for w in range(n)]
        out: Dict[Tuple[int, int, int], MultiPoly] = {}
        zero = self.ring.fraction(0)
        for a in range(n):
            for b in range(n):
                prod = tys[b] * tys[a]
                coeffs = self.expand_in_twisted_y_basis(prod, u)
                for z in range(n):
                    total = zero
                    for v, bv in coeffs.items():
                        total = total + c_u[z][v] * bv
                    total = total.normalize()
                    if not total.in_s():
                        raise ConsistencyError(f"structure constant not in S: {total}")
                    out[(rs.inverse(a), rs.inverse(b), rs.inverse(z))] = total.poly()
        return out
