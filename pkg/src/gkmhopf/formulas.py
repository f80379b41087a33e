"""Executable checks of the push-forward identities in the structure algebra.

Every check returns a :class:`VerificationReport`; both sides are computed
independently and compared exactly.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Any, Dict, List, Sequence

from .demazure import QWElem
from .exact_arith import MultiPoly
from .structure import GKMClass, StructureAlgebra


@dataclass
class VerificationReport:
    identity: str
    root_system: str
    backend: str
    instances: List[Dict[str, Any]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(inst["equal"] for inst in self.instances)

    def add(self, inputs: Dict[str, str], lhs, rhs, equal: bool):
        self.instances.append({"inputs": inputs, "lhs": str(lhs), "rhs": str(rhs), "equal": bool(equal)})

    def merge(self, other: "VerificationReport") -> "VerificationReport":
        self.instances.extend(other.instances)
        return self

    def to_dict(self) -> Dict[str, Any]:
        return {
            "identity": self.identity,
            "root_system": self.root_system,
            "backend": self.backend,
            "passed": self.passed,
            "instances": self.instances,
        }


def new_report(alg: StructureAlgebra, identity: str) -> VerificationReport:
    return VerificationReport(identity, f"{alg.rs.tag}/{alg.rs.lattice.value}", alg.ring.kind.value)


def random_elements(alg: StructureAlgebra, seed: int, count: int) -> List[MultiPoly]:
    """Seeded random elements of S (small integer coefficients)."""
    rng = random.Random(seed)
    return [alg.ring.random_element(rng) for _ in range(count)]


def _fmt(alg, f) -> str:
    return alg.ring.format(f)


def _apply(op: QWElem, f) -> MultiPoly:
    """``op(f)``, which must land in S for elements of the Demazure algebra."""
    value = op.apply(f).normalize()
    if not value.in_s():
        raise ArithmeticError("operator image is not in S")
    return value.poly()


def _name(alg, w) -> str:
    return alg.rs.elements[w].word_string()


# ------------------------------------------------------------ Demazure formula
def demazure_formula_check(alg: StructureAlgebra, s, u: int) -> VerificationReport:
    """``c(u^-1 s) = sum_w {}^uY_{I_w}(s) zeta(u)^vee_w`` coordinatewise."""
    ring, rs = alg.ring, alg.rs
    rep = new_report(alg, "demazure_formula")
    s = ring.lift(s).poly()
    lhs = alg.char_map(ring.act(rs.inverse(u), s))
    rhs = alg.zero()
    for w in range(alg.order):
        coeff = _apply(alg.dem.twisted_y(u, w), s)
        if coeff:
            rhs = rhs + alg.twisted_dual(u, w) * coeff
    rep.add({"s": _fmt(alg, s), "u": _name(alg, u)}, lhs, rhs, lhs == rhs)
    return rep


def fundamental_class_check(alg: StructureAlgebra, u: int) -> VerificationReport:
    """Both expansions of the unit class: in duals ``zeta(u)^vee`` and in ``zeta``."""
    ring, rs = alg.ring, alg.rs
    rep = new_report(alg, "fundamental_class")
    one = ring.one()
    first = alg.zero()
    coeffs = [_apply(alg.dem.twisted_y(u, w), one) for w in range(alg.order)]
    for w, c in enumerate(coeffs):
        if c:
            first = first + alg.twisted_dual(u, w) * c
    rep.add({"u": _name(alg, u), "form": "duals"}, alg.one(), first, first == alg.one())
    _, d = alg.multiplicity_matrices(u, check=False)
    second = alg.zero()
    for v in range(alg.order):
        total = ring.zero()
        for w in range(alg.order):
            total = total + d[v][w] * coeffs[w]
        if total:
            second = second + alg.zeta(v) * total
    rep.add({"u": _name(alg, u), "form": "schubert"}, alg.one(), second, second == alg.one())
    return rep


# ---------------------------------------------------------- push-forward rules
def pushforward_product_check(alg: StructureAlgebra, f, g, u: int) -> VerificationReport:
    """``pi . (c(f) c(g)) = sum_{w,v} Y_w(f) u(Y_v(g)) pi . (zeta^vee_w zeta(u)^vee_v)``."""
    ring = alg.ring
    rep = new_report(alg, "pushforward_product")
    f, g = ring.lift(f).poly(), ring.lift(g).poly()
    lhs = alg.hecke(alg.dem.pi_element(), alg.char_map(f) * alg.char_map(g))
    yf = [_apply(alg.dem.y(w), f) for w in range(alg.order)]
    uyg = [ring.act(u, _apply(alg.dem.y(v), g)) for v in range(alg.order)]
    total = ring.zero()
    for w in range(alg.order):
        if not yf[w]:
            continue
        for v in range(alg.order):
            if not uyg[v]:
                continue
            pairing = alg.pi_pair(alg.dual(w), alg.twisted_dual(u, v), check=False)
            if pairing:
                total = total + yf[w] * uyg[v] * pairing
    rhs = alg.one() * total
    rep.add({"f": _fmt(alg, f), "g": _fmt(alg, g), "u": _name(alg, u)}, lhs, rhs, lhs == rhs)
    return rep


def _is_invariant(alg: StructureAlgebra, f: MultiPoly) -> bool:
    rs = alg.rs
    return all(alg.ring.act(rs.element_from_word((i,)), f) == f for i in range(1, rs.rank + 1))


def pushforward_point_check(alg: StructureAlgebra, f, g, u: int) -> VerificationReport:
    """``pi(f u^-1(g)) = sum_{w,v} d^u_{w,v} Y_w(f) {}^uY_v(g)`` plus W-invariance of both sides."""
    ring, rs = alg.ring, alg.rs
    rep = new_report(alg, "pushforward_point")
    f, g = ring.lift(f).poly(), ring.lift(g).poly()
    lhs = _apply(alg.dem.pi_element(), f * ring.act(rs.inverse(u), g))
    _, d = alg.multiplicity_matrices(u, check=False)
    yf = [_apply(alg.dem.y(w), f) for w in range(alg.order)]
    uyg = [_apply(alg.dem.twisted_y(u, v), g) for v in range(alg.order)]
    rhs = ring.zero()
    for w in range(alg.order):
        for v in range(alg.order):
            if yf[w] and uyg[v] and d[w][v]:
                rhs = rhs + d[w][v] * yf[w] * uyg[v]
    inputs = {"f": _fmt(alg, f), "g": _fmt(alg, g), "u": _name(alg, u)}
    rep.add(inputs, _fmt(alg, lhs), _fmt(alg, rhs), lhs == rhs)
    rep.add(dict(inputs, side="lhs W-invariant"), _fmt(alg, lhs), "", _is_invariant(alg, lhs))
    rep.add(dict(inputs, side="rhs W-invariant"), _fmt(alg, rhs), "", _is_invariant(alg, rhs))
    return rep


def top_leibniz_check(alg: StructureAlgebra, f, g) -> VerificationReport:
    """Additive ``u = w0`` case: ``pi(f w0(g)) = sum_w Y_w(f) X_{w w0}(g)``."""
    ring, rs = alg.ring, alg.rs
    if not ring.additive:
        raise ValueError("the top Leibniz rule is an additive statement")
    rep = new_report(alg, "top_leibniz")
    f, g = ring.lift(f).poly(), ring.lift(g).poly()
    lhs = _apply(alg.dem.pi_element(), f * ring.act(rs.w0, g))
    rhs = ring.zero()
    for w in range(alg.order):
        rhs = rhs + _apply(alg.dem.y(w), f) * _apply(alg.dem.x(rs.mul(w, rs.w0)), g)
    rep.add({"f": _fmt(alg, f), "g": _fmt(alg, g)}, _fmt(alg, lhs), _fmt(alg, rhs), lhs == rhs)
    return rep


# --------------------------------------------------------------- antipode side
def antipode_corollary_check(alg: StructureAlgebra, g, u: int, v: int) -> VerificationReport:
    """``v u^-1(g) 1 = sum_w c({}^u tilde Y_w(g)) zeta(v)_{w^-1}``."""
    ring, rs = alg.ring, alg.rs
    rep = new_report(alg, "antipode_corollary")
    g = ring.lift(g).poly()
    lhs = alg.one() * ring.act(rs.mul(v, rs.inverse(u)), g)
    rhs = alg.zero()
    for w in range(alg.order):
        coeff = _apply(alg.tilde_y(u, w), g)
        if coeff:
            rhs = rhs + alg.char_map(coeff) * alg.schubert(v, rs.inverse(w))
    rep.add({"g": _fmt(alg, g), "u": _name(alg, u), "v": _name(alg, v)}, lhs, rhs, lhs == rhs)
    return rep


def antipode_additive_check(alg: StructureAlgebra, g) -> VerificationReport:
    """Additive ``u = v = w0``: ``g 1 = sum_w c(X_{w w0}(g)) sigma_{w^-1}``."""
    ring, rs = alg.ring, alg.rs
    if not ring.additive:
        raise ValueError("this specialization is additive")
    rep = new_report(alg, "antipode_additive_w0")
    g = ring.lift(g).poly()
    lhs = alg.one() * g
    rhs = alg.zero()
    for w in range(alg.order):
        coeff = _apply(alg.dem.x(rs.mul(w, rs.w0)), g)
        if coeff:
            rhs = rhs + alg.char_map(coeff) * alg.sigma(rs.inverse(w))
    rep.add({"g": _fmt(alg, g)}, lhs, rhs, lhs == rhs)
    return rep


def schubert_product_identity_check(alg: StructureAlgebra, g) -> VerificationReport:
    """Additive identity in products of opposite Schubert classes.

    ``g 1 = sum_{x,y} (-1)^{l(w0 x)} X_{w0 x y^-1 w0}(g) sigma_x sigma_y`` where the
    sum runs over pairs with ``l(w0 x) + l(y^-1 w0) = l(w0 x y^-1 w0)``, i.e.
    the pairs for which ``X_{w0 x} X_{y^-1 w0}`` does not vanish.  The
    unreduced form ``sum_{x,y} (-1)^{l(w0 x)} X_{w0 x} X_{y^-1 w0}(g) sigma_x sigma_y``
    is checked as a second instance.
    """
    ring, rs = alg.ring, alg.rs
    if not ring.additive:
        raise ValueError("this identity is additive")
    rep = new_report(alg, "schubert_product_identity")
    g = ring.lift(g).poly()
    lhs = alg.one() * g
    reduced = alg.zero()
    unreduced = alg.zero()
    w0 = rs.w0
    for x in range(alg.order):
        w0x = rs.mul(w0, x)
        sign = ring.const(-1 if rs.length(w0x) % 2 else 1)
        for y in range(alg.order):
            yw0 = rs.mul(rs.inverse(y), w0)
            prod = alg.sigma(x) * alg.sigma(y)
            coeff = _apply(alg.dem.x(w0x), _apply(alg.dem.x(yw0), g))
            if coeff:
                unreduced = unreduced + prod * (coeff * sign)
            composite = rs.mul(w0x, yw0)
            if rs.length(w0x) + rs.length(yw0) != rs.length(composite):
                continue
            coeff = _apply(alg.dem.x(composite), g)
            if coeff:
                reduced = reduced + prod * (coeff * sign)
    rep.add({"g": _fmt(alg, g), "form": "reduced"}, lhs, reduced, lhs == reduced)
    rep.add({"g": _fmt(alg, g), "form": "unreduced"}, lhs, unreduced, lhs == unreduced)
    return rep


# --------------------------------------------------------- auxiliary identities
def pi_char_check(alg: StructureAlgebra, f) -> VerificationReport:
    """``pi . c(f) = c(pi(f))``."""
    rep = new_report(alg, "pi_char")
    f = alg.ring.lift(f).poly()
    lhs = alg.hecke(alg.dem.pi_element(), alg.char_map(f))
    rhs = alg.char_map(_apply(alg.dem.pi_element(), f))
    rep.add({"f": _fmt(alg, f)}, lhs, rhs, lhs == rhs)
    return rep


def char_hecke_check(alg: StructureAlgebra, f, w: int) -> VerificationReport:
    """``c(Y_w(f)) = Y_w . c(f)``."""
    rep = new_report(alg, "char_hecke")
    f = alg.ring.lift(f).poly()
    lhs = alg.char_map(_apply(alg.dem.y(w), f))
    rhs = alg.hecke(alg.dem.y(w), alg.char_map(f))
    rep.add({"f": _fmt(alg, f), "w": _name(alg, w)}, lhs, rhs, lhs == rhs)
    return rep


def projection_formula_check(alg: StructureAlgebra, z: GKMClass, zp: GKMClass, i: int) -> VerificationReport:
    """``pi . ((Y_i . z) z') = pi . (z (Y_i . z'))``."""
    rep = new_report(alg, "projection_formula")
    yi = alg.dem.y_simple(i)
    lhs = alg.pi_pair(alg.hecke(yi, z), zp)
    rhs = alg.pi_pair(z, alg.hecke(yi, zp))
    rep.add({"i": str(i)}, _fmt(alg, lhs), _fmt(alg, rhs), lhs == rhs)
    return rep


def hecke_weyl_commutation_check(alg: StructureAlgebra, a: QWElem, b: QWElem, z: GKMClass) -> VerificationReport:
    """``a . (b (.) z) = b (.) (a . z)``."""
    rep = new_report(alg, "hecke_weyl_commutation")
    lhs = alg.hecke(a, alg.weyl(b, z))
    rhs = alg.weyl(b, alg.hecke(a, z))
    rep.add({}, lhs, rhs, lhs == rhs)
    return rep


def random_demazure_element(alg: StructureAlgebra, rng: random.Random, max_len: int = 3) -> QWElem:
    """Random S-combination of push-pull products over short words."""
    ring, rs = alg.ring, alg.rs
    out = QWElem.zero(ring)
    for _ in range(rng.randint(1, 2)):
        word = [rng.randint(1, rs.rank) for _ in range(rng.randint(0, max_len))]
        coeff = ring.random_element(rng, max_terms=2)
        out = out + alg.dem.y_word(word).left_scale(coeff)
    return out


def random_qw_element(alg: StructureAlgebra, rng: random.Random) -> QWElem:
    """Random element ``sum q_w delta_w`` with coefficients in S."""
    ring = alg.ring
    coeffs = {}
    for _ in range(rng.randint(1, 3)):
        coeffs[rng.randrange(alg.order)] = ring.fraction(ring.random_element(rng, max_terms=2))
    return QWElem(ring, coeffs)


def run_identity(alg: StructureAlgebra, identity: str, seed: int = 0, trials: int = 5) -> VerificationReport:
    """Run a named identity over seeded random inputs and all twists."""
    rs = alg.rs
    rng_elems = random_elements(alg, seed, 2 * trials)
    fs, gs = rng_elems[:trials], rng_elems[trials:]
    rep = new_report(alg, identity)
    if identity == "demazure":
        for s in fs:
            for u in range(alg.order):
                rep.merge(demazure_formula_check(alg, s, u))
    elif identity == "fundamental":
        for u in range(alg.order):
            rep.merge(fundamental_class_check(alg, u))
    elif identity == "pushforward":
        for f, g in zip(fs, gs):
            for u in range(alg.order):
                rep.merge(pushforward_product_check(alg, f, g, u))
                rep.merge(pushforward_point_check(alg, f, g, u))
    elif identity == "top-leibniz":
        for f, g in zip(fs, gs):
            rep.merge(top_leibniz_check(alg, f, g))
    elif identity == "antipode":
        for g in gs:
            for u in range(alg.order):
                rep.merge(antipode_corollary_check(alg, g, u, u))
            rep.merge(antipode_corollary_check(alg, g, 0, rs.w0))
            if alg.ring.additive:
                rep.merge(antipode_additive_check(alg, g))
                rep.merge(schubert_product_identity_check(alg, g))
    elif identity == "pi-char":
        for f in fs:
            rep.merge(pi_char_check(alg, f))
    else:
        raise ValueError(f"unknown identity {identity!r}")
    return rep


IDENTITIES = ("demazure", "fundamental", "pushforward", "top-leibniz", "antipode", "pi-char")
