"""Twisted tensor powers, the coproduct, the counit and the switch map.

An element of the n-fold twisted tensor power of Z is represented by its
coordinate model on ``W^n``.  A pure tensor ``z1 (x) z2 (x) ... (x) zn`` has model

    (v1, ..., vn) -> z1_{v1} * v1(z2_{v2}) * (v1 v2)(z3_{v3}) * ...

which is compatible with the balancing relation ``z c(s) (x) z' = z (x) s z'``.
"""
from __future__ import annotations

import itertools
from typing import Dict, List, Sequence, Tuple

from .exact_arith import CapabilityError, MultiPoly, RootFraction
from .formulas import VerificationReport, new_report
from .structure import GKMClass, StructureAlgebra

Term = Tuple[GKMClass, GKMClass]


class TensorClass:
    """Coordinate model of an element of the ``n``-fold twisted tensor power."""

    __slots__ = ("ring", "arity", "order", "values")

    def __init__(self, ring, arity: int, order: int, values: Dict[Tuple[int, ...], RootFraction]):
        self.ring = ring
        self.arity = arity
        self.order = order
        self.values = values

    @classmethod
    def zero(cls, ring, arity: int, order: int) -> "TensorClass":
        zero = ring.fraction(0)
        return cls(ring, arity, order, {k: zero for k in itertools.product(range(order), repeat=arity)})

    def __getitem__(self, key) -> RootFraction:
        return self.values[tuple(key)]

    def __add__(self, other: "TensorClass") -> "TensorClass":
        return TensorClass(self.ring, self.arity, self.order, {k: v + other.values[k] for k, v in self.values.items()})

    def __sub__(self, other: "TensorClass") -> "TensorClass":
        return TensorClass(self.ring, self.arity, self.order, {k: v - other.values[k] for k, v in self.values.items()})

    def __mul__(self, other: "TensorClass") -> "TensorClass":
        """Pointwise product of models (the product of the tensor algebra)."""
        return TensorClass(self.ring, self.arity, self.order, {k: v * other.values[k] for k, v in self.values.items()})

    def __eq__(self, other):
        if not isinstance(other, TensorClass):
            return NotImplemented
        return self.arity == other.arity and all((v - other.values[k]).is_zero() for k, v in self.values.items())

    __hash__ = None

    def restrict(self, slot: int, value: int) -> Dict[Tuple[int, ...], RootFraction]:
        """Model restricted to ``v_slot = value`` (remaining indices as keys)."""
        return {k[:slot] + k[slot + 1:]: v for k, v in self.values.items() if k[slot] == value}

    def to_json(self, alg: StructureAlgebra) -> Dict[str, str]:
        rs = alg.rs
        out = {}
        for k, v in self.values.items():
            out[",".join(rs.elements[i].word_string() for i in k)] = alg.ring.format(v.normalize())
        return out


# ------------------------------------------------------------------- models
def tensor_embed(alg: StructureAlgebra, *classes: GKMClass) -> TensorClass:
    """Model of ``z1 (x) ... (x) zn``."""
    ring, rs = alg.ring, alg.rs
    n = alg.order
    values = {}
    for key in itertools.product(range(n), repeat=len(classes)):
        prefix = 0
        value = ring.fraction(1)
        for z, v in zip(classes, key):
            coord = z.coords[v]
            if coord.is_zero():
                value = ring.fraction(0)
                break
            value = value * ring.act_fraction(prefix, coord)
            prefix = rs.mul(prefix, v)
        values[key] = value
    return TensorClass(ring, len(classes), n, values)


def extend_right(alg: StructureAlgebra, left: TensorClass, z: GKMClass) -> TensorClass:
    """Model of ``A (x) z`` for a model ``A`` of arity ``n``."""
    ring, rs = alg.ring, alg.rs
    values = {}
    for key, a in left.values.items():
        prefix = 0
        for v in key:
            prefix = rs.mul(prefix, v)
        for v in range(alg.order):
            c = z.coords[v]
            values[key + (v,)] = ring.fraction(0) if a.is_zero() or c.is_zero() else a * ring.act_fraction(prefix, c)
    return TensorClass(ring, left.arity + 1, alg.order, values)


def extend_left(alg: StructureAlgebra, z: GKMClass, right: TensorClass) -> TensorClass:
    """Model of ``z (x) B`` for a model ``B`` of arity ``n``."""
    ring = alg.ring
    values = {}
    for v in range(alg.order):
        c = z.coords[v]
        for key, b in right.values.items():
            values[(v,) + key] = ring.fraction(0) if c.is_zero() or b.is_zero() else c * ring.act_fraction(v, b)
    return TensorClass(ring, right.arity + 1, alg.order, values)


def terms_model(alg: StructureAlgebra, terms: Sequence[Term]) -> TensorClass:
    out = TensorClass.zero(alg.ring, 2, alg.order)
    for a, b in terms:
        out = out + tensor_embed(alg, a, b)
    return out


def product_model(alg: StructureAlgebra, z: GKMClass, arity: int = 2) -> TensorClass:
    """Independent oracle ``(v1, ..., vn) -> z_{v1 ... vn}``."""
    rs = alg.rs
    values = {}
    for key in itertools.product(range(alg.order), repeat=arity):
        prod = 0
        for v in key:
            prod = rs.mul(prod, v)
        values[key] = z.coords[prod]
    return TensorClass(alg.ring, arity, alg.order, values)


# ---------------------------------------------------------------- coproduct
def delta_terms(alg: StructureAlgebra, z: GKMClass, u: int = 0) -> List[Term]:
    """Pure tensors summing to ``Delta(z)``.

    ``z`` is expanded in the twisted Schubert basis ``zeta(u)_w`` (coefficients
    on the left) and each basis class is sent to
    ``sum_{x,y} zeta(u)_x (x) zeta(u)_y c(nu(u)_{x,y}^w)``.
    """
    try:
        nu = alg.nu(u)
    except ArithmeticError as exc:
        raise CapabilityError(f"structure constants unavailable for this backend: {exc}") from exc
    coeffs = alg.expand_schubert(z, u)
    terms: List[Term] = []
    n = alg.order
    for w, p in enumerate(coeffs):
        if not p:
            continue
        for x in range(n):
            left = alg.schubert(u, x) * p
            right = alg.zero()
            for y in range(n):
                c = nu.get((x, y, w))
                if c:
                    right = right + alg.schubert(u, y) * alg.char_map(c)
            if not right.is_zero():
                terms.append((left, right))
    return terms


def delta(alg: StructureAlgebra, z: GKMClass, u: int = 0) -> TensorClass:
    """``Delta(z)`` as a ``W^2`` model."""
    return terms_model(alg, delta_terms(alg, z, u))


def counit(alg: StructureAlgebra, z: GKMClass) -> MultiPoly:
    """``epsilon(z) = z_e``."""
    value = z.coords[0].normalize()
    if not value.in_s():
        raise ArithmeticError("counit of a class outside Z")
    return value.poly()


# ------------------------------------------------------------------- checks
def counit_diagrams_check(alg: StructureAlgebra, z: GKMClass, u: int = 0) -> VerificationReport:
    """``(eps (x) id) Delta = id = (id (x) eps) Delta``, via terms and via models."""
    rep = new_report(alg, "counit")
    terms = delta_terms(alg, z, u)
    left = alg.zero()
    right = alg.zero()
    for a, b in terms:
        left = left + b * counit(alg, a)
        right = right + a * alg.char_map(counit(alg, b))
    rep.add({"side": "eps (x) id"}, z, left, left == z)
    rep.add({"side": "id (x) eps"}, z, right, right == z)
    model = terms_model(alg, terms)
    first = model.restrict(0, 0)
    second = model.restrict(1, 0)
    rep.add({"side": "model v1 = e"}, z, "", all((first[(v,)] - z.coords[v]).is_zero() for v in range(alg.order)))
    rep.add({"side": "model v2 = e"}, z, "", all((second[(v,)] - z.coords[v]).is_zero() for v in range(alg.order)))
    return rep


def coassociativity_check(alg: StructureAlgebra, z: GKMClass, u: int = 0) -> VerificationReport:
    """``(Delta (x) id) Delta(z) = (id (x) Delta) Delta(z)`` as ``W^3`` models."""
    rep = new_report(alg, "coassociativity")
    terms = delta_terms(alg, z, u)
    lhs = TensorClass.zero(alg.ring, 3, alg.order)
    rhs = TensorClass.zero(alg.ring, 3, alg.order)
    for a, b in terms:
        lhs = lhs + extend_right(alg, delta(alg, a, u), b)
        rhs = rhs + extend_left(alg, a, delta(alg, b, u))
    rep.add({"u": alg.rs.elements[u].word_string()}, "(Delta x id) Delta", "(id x Delta) Delta", lhs == rhs)
    return rep


def bimonoid_compat_check(alg: StructureAlgebra, z: GKMClass, zp: GKMClass, u: int = 0) -> VerificationReport:
    """``Delta(z z')`` equals the pointwise product of ``Delta(z)`` and ``Delta(z')``."""
    rep = new_report(alg, "bimonoid")
    lhs = delta(alg, z * zp, u)
    rhs = delta(alg, z, u) * delta(alg, zp, u)
    rep.add({"u": alg.rs.elements[u].word_string()}, "Delta(z z')", "Delta(z) Delta(z')", lhs == rhs)
    return rep


def delta_oracle_check(alg: StructureAlgebra, z: GKMClass, u: int = 0) -> VerificationReport:
    """Compare ``Delta(z)`` with the model ``(v1, v2) -> z_{v1 v2}``."""
    rep = new_report(alg, "delta_oracle")
    lhs = delta(alg, z, u)
    rhs = product_model(alg, z)
    rep.add({"u": alg.rs.elements[u].word_string()}, "Delta(z)", "z_{v1 v2}", lhs == rhs)
    return rep


# --------------------------------------------------------------- switch map
BorelPresentation = List[Tuple[MultiPoly, MultiPoly]]


def rho(alg: StructureAlgebra, presentation: BorelPresentation) -> GKMClass:
    """``rho(sum a_i (x) b_i) = sum a_i c(b_i)``."""
    out = alg.zero()
    for a, b in presentation:
        out = out + alg.borel_map(a, b)
    return out


def upsilon(alg: StructureAlgebra, presentation: BorelPresentation) -> GKMClass:
    """Switch map on a Borel presentation: ``sum b_i c(a_i)``."""
    return rho(alg, [(b, a) for a, b in presentation])


def upsilon_class(alg: StructureAlgebra, z: GKMClass) -> GKMClass:
    """Switch map in coordinates, ``Upsilon(z)_v = v(z_{v^-1})``.

    Agrees with :func:`upsilon` on the image of ``rho`` and is defined on all
    of Z, where it preserves the edge conditions.
    """
    ring, rs = alg.ring, alg.rs
    return alg.make([ring.act_fraction(v, z.coords[rs.inverse(v)]) for v in range(alg.order)])
