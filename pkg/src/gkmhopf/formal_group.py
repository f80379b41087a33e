"""Formal group ring backends.

Two finite formal group laws are supported:

* additive, ``F(x, y) = x + y``: S is the polynomial ring over K in the
  variables ``x_{b_i}`` for a basis ``b_i`` of the lattice, and ``x_lam`` is the
  linear form with the lattice coordinates of ``lam``;
* connective, ``F(x, y) = x + y - beta*x*y``: S sits in the Laurent ring
  ``K[beta^{+-1}][e^{+-b}]`` via ``x_lam = beta^{-1}(1 - e^{-lam})``.  The last
  exponent coordinate is the power of ``beta``.

For the dihedral types the lattice is a free Z[gamma]-module; in the Laurent
model it is flattened to a Z-module with basis ``gamma^j b_i`` so that the
Weyl group acts on exponents by integer matrices.
"""
from __future__ import annotations

import ast
import enum
import random
from typing import Dict, List, Optional, Sequence, Tuple

from .exact_arith import (
    mpq,
    ConsistencyError,
    MultiPoly,
    NumberFieldElem,
    RootFraction,
    laurent_divide_binomial,
    laurent_divisible_by_binomial,
    poly_divrem_linear,
)
from .root_system import LatticeChoice, RootSystem, build_root_system


class FGLKind(enum.Enum):
    ADDITIVE = "additive"
    CONNECTIVE = "connective"


class FGLBackend:
    """Formal group ring of a root system for the additive or connective law."""

    def __init__(self, rs: RootSystem, kind):
        self.rs = rs
        self.kind = FGLKind(kind) if not isinstance(kind, FGLKind) else kind
        self.field = rs.field
        self.n_pos = rs.n_pos
        self.empty_den = (0,) * rs.n_pos
        self.additive = self.kind is FGLKind.ADDITIVE
        if self.additive:
            self.nvars = rs.rank
        else:
            self.zdim = rs.rank * rs.field.degree
            self.nvars = self.zdim + 1
        self.root_polys = [self.x_of(a) for a in rs.positive_roots]
        self.units = [self._neg_unit(k) for k in range(rs.n_pos)]
        self.unit_invs = [u.monomial_inverse() for u in self.units]
        self._root_product_cache: Dict[Tuple[int, ...], MultiPoly] = {}
        self._build_actions()

    def __repr__(self):
        return f"FGLBackend({self.rs.tag}, {self.rs.lattice.value}, {self.kind.value})"

    # ----------------------------------------------------------- coordinates
    def zcoords(self, lam) -> Tuple[int, ...]:
        """Integer coordinates of a lattice vector in the flattened Z-basis."""
        coords = self.rs.lattice_coords(lam)
        out = []
        for c in coords:
            if isinstance(c, NumberFieldElem):
                parts = c.c
            else:
                parts = (mpq(c),)
            for x in parts:
                if mpq(x).denominator != 1:
                    raise ValueError(f"{lam} is not in the lattice")
                out.append(int(x))
        return tuple(out)

    def _zbasis_vectors(self):
        rs = self.rs
        d = rs.field.degree
        vecs = []
        for b in rs.lattice_basis:
            for j in range(d):
                g = rs.field.gamma() ** j if rs.field.is_cyclotomic else rs.field.one()
                vecs.append(tuple(g * x for x in b))
        return vecs

    # -------------------------------------------------------------- elements
    def const(self, c) -> MultiPoly:
        return MultiPoly.constant(self.field(c) if not isinstance(c, NumberFieldElem) else c, self.nvars)

    def one(self) -> MultiPoly:
        return self.const(1)

    def zero(self) -> MultiPoly:
        return MultiPoly.zero(self.nvars)

    def beta(self) -> MultiPoly:
        if self.additive:
            raise ValueError("beta only exists in the connective backend")
        return MultiPoly.monomial((0,) * self.zdim + (1,), self.field.one(), self.nvars)

    def emon(self, lam, coeff=1) -> MultiPoly:
        """The group-ring monomial ``e^{lam}`` (connective only)."""
        return MultiPoly.monomial(self.zcoords(lam) + (0,), self.field(coeff), self.nvars)

    def variable(self, i: int) -> MultiPoly:
        """``x_{b_i}`` for the i-th lattice basis vector."""
        return self.x_of(self.rs.lattice_basis[i])

    def x_of(self, lam) -> MultiPoly:
        """``x_lam`` as an element of the model."""
        if self.additive:
            coords = self.rs.lattice_coords(lam)
            terms = {}
            for i, c in enumerate(coords):
                if c:
                    terms[tuple(1 if j == i else 0 for j in range(self.nvars))] = c
            return MultiPoly(terms, self.nvars)
        z = self.zcoords(lam)
        if not any(z):
            return self.zero()
        one = self.field.one()
        return MultiPoly({(0,) * self.zdim + (-1,): one, tuple(-x for x in z) + (-1,): -one}, self.nvars)

    def x_root(self, k: int) -> MultiPoly:
        """``x_alpha`` for the root with full index ``k`` (negatives allowed)."""
        sign, i = self.rs.signed(k)
        return self.root_polys[i] if sign > 0 else self.root_polys[i] * self.units[i]

    def _neg_unit(self, k: int) -> MultiPoly:
        """``x_{-alpha}/x_alpha`` as a unit monomial."""
        if self.additive:
            return self.const(-1)
        return self.emon(self.rs.positive_roots[k], -1)

    def x_neg(self, k: int) -> MultiPoly:
        return self.root_polys[k] * self.units[k]

    def formal_sum(self, a: MultiPoly, b: MultiPoly) -> MultiPoly:
        """``F(a, b)``."""
        if self.additive:
            return a + b
        return a + b - self.beta() * a * b

    def kappa(self, k: int) -> MultiPoly:
        """``1/x_alpha + 1/x_{-alpha}`` cleared to an element of S."""
        f = self.fraction(self.one(), self.unit_den(k)) + self.fraction(self.unit_invs[k], self.unit_den(k))
        if not f.in_s():
            raise ConsistencyError(f"kappa for root {k} did not simplify into S")
        return f.poly()

    def x_pi(self) -> MultiPoly:
        """Product of ``x_alpha`` over all negative roots."""
        out = self.one()
        for k in range(self.n_pos):
            out = out * self.x_neg(k)
        return out

    def inv_x_pi(self) -> RootFraction:
        num = self.one()
        for k in range(self.n_pos):
            num = num * self.unit_invs[k]
        return RootFraction(self, num, (1,) * self.n_pos, normalized=True)

    # -------------------------------------------------------------- fractions
    def unit_den(self, k: int) -> Tuple[int, ...]:
        return tuple(1 if j == k else 0 for j in range(self.n_pos))

    def fraction(self, num, den=None) -> RootFraction:
        if not isinstance(num, MultiPoly):
            num = self.const(num)
        return RootFraction(self, num, den or self.empty_den)

    def lift(self, f) -> RootFraction:
        if isinstance(f, RootFraction):
            return f
        return self.fraction(f)

    def inv_root(self, k: int) -> RootFraction:
        """``1/x_alpha`` for the full root index ``k``."""
        sign, i = self.rs.signed(k)
        num = self.one() if sign > 0 else self.unit_invs[i]
        return RootFraction(self, num, self.unit_den(i), normalized=True)

    def root_product(self, den: Sequence[int]) -> MultiPoly:
        den = tuple(den)
        cached = self._root_product_cache.get(den)
        if cached is None:
            cached = self.one()
            for k, m in enumerate(den):
                for _ in range(m):
                    cached = cached * self.root_polys[k]
            self._root_product_cache[den] = cached
        return cached

    def root_label(self, k: int) -> str:
        return self.rs.root_name(k)

    def divide_by_root(self, f: MultiPoly, k: int) -> Optional[MultiPoly]:
        """Exact quotient ``f / x_alpha`` for positive root ``k``, or ``None``."""
        if self.additive:
            q, r = poly_divrem_linear(f, self.root_polys[k])
            return None if r else q
        a = tuple(-x for x in self.zcoords(self.rs.positive_roots[k])) + (0,)
        q = laurent_divide_binomial(f, a)
        if q is None:
            return None
        return q * self.beta()

    def divisible_by_root(self, f, k: int) -> bool:
        if isinstance(f, RootFraction):
            f = f.poly()
        if self.additive:
            return not poly_divrem_linear(f, self.root_polys[k])[1]
        a = tuple(-x for x in self.zcoords(self.rs.positive_roots[k])) + (0,)
        return laurent_divisible_by_binomial(f, a)

    def s_membership(self, f) -> bool:
        if isinstance(f, MultiPoly):
            return True
        return f.normalize().in_s()

    # ---------------------------------------------------------------- W action
    def _build_actions(self):
        rs = self.rs
        if self.additive:
            self._var_images = []
            for w in range(rs.order):
                self._var_images.append([self.x_of(rs.apply(w, b)) for b in rs.lattice_basis])
        else:
            basis = self._zbasis_vectors()
            self._exp_mats = []
            for w in range(rs.order):
                cols = [self.zcoords(rs.apply(w, v)) for v in basis]
                mat = [[cols[j][i] for j in range(self.zdim)] + [0] for i in range(self.zdim)]
                mat.append([0] * self.zdim + [1])
                self._exp_mats.append(mat)

    def act(self, w: int, f: MultiPoly) -> MultiPoly:
        """Apply the Weyl group element ``w`` to ``f``."""
        if w == 0 or not f.terms:
            return f
        if self.additive:
            if f.is_constant():
                return f
            return f.linear_substitute(self._var_images[w])
        return f.monomial_map(self._exp_mats[w])

    def act_fraction(self, w: int, q: RootFraction) -> RootFraction:
        if w == 0 or q.is_zero():
            return q
        num = self.act(w, q.num)
        den = [0] * self.n_pos
        rs = self.rs
        for k, m in enumerate(q.den):
            if m:
                sign, j = rs.signed(rs.root_image(w, k))
                den[j] += m
                if sign < 0:
                    for _ in range(m):
                        num = num * self.unit_invs[j]
        return RootFraction(self, num, tuple(den), normalized=True)

    # ---------------------------------------------------------------- random
    def random_element(self, rng: random.Random, max_terms: int = 4) -> MultiPoly:
        """Random element of S with small integer coefficients."""
        out = self.zero()
        if self.additive:
            for _ in range(rng.randint(1, max_terms)):
                deg = rng.randint(0, 3)
                exp = [0] * self.nvars
                for _ in range(deg):
                    exp[rng.randrange(self.nvars)] += 1
                out = out + MultiPoly.monomial(exp, self.field(rng.randint(-3, 3)), self.nvars)
        else:
            for _ in range(rng.randint(1, max_terms)):
                exp = [rng.randint(-2, 2) for _ in range(self.zdim)] + [rng.randint(0, 1)]
                out = out + MultiPoly.monomial(exp, self.field(rng.randint(-3, 3)), self.nvars)
        return out

    def variable_names(self) -> List[str]:
        if self.additive:
            return [f"x{i + 1}" for i in range(self.nvars)]
        return [f"e{i + 1}" for i in range(self.zdim)] + ["b"]

    def parse(self, text: str) -> MultiPoly:
        """Parse an integer-coefficient expression in the variable names.

        Additive names are ``x1 .. xn`` (the variables ``x_{b_i}``); connective
        names are ``e1 .. en`` (the monomials ``e^{b_i}``) and ``b`` (beta).
        Negative integer powers are allowed for connective monomials.  Over
        the cyclotomic field ``g`` stands for gamma.
        """
        names = {name: i for i, name in enumerate(self.variable_names())}

        def ev(node):
            if isinstance(node, ast.Expression):
                return ev(node.body)
            if isinstance(node, ast.Constant) and isinstance(node.value, int):
                return self.const(node.value)
            if isinstance(node, ast.Name):
                if node.id == "g" and self.field.is_cyclotomic:
                    return self.const(self.field.gamma())
                if node.id not in names:
                    raise ValueError(f"unknown variable {node.id!r}; expected one of {sorted(names)}")
                exp = [0] * self.nvars
                exp[names[node.id]] = 1
                return MultiPoly.monomial(exp, self.field.one(), self.nvars)
            if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
                val = ev(node.operand)
                return -val if isinstance(node.op, ast.USub) else val
            if isinstance(node, ast.BinOp):
                if isinstance(node.op, ast.Pow):
                    exponent = node.right
                    sign = 1
                    if isinstance(exponent, ast.UnaryOp) and isinstance(exponent.op, ast.USub):
                        sign, exponent = -1, exponent.operand
                    if not (isinstance(exponent, ast.Constant) and isinstance(exponent.value, int)):
                        raise ValueError("exponents must be integer literals")
                    base = ev(node.left)
                    if sign < 0:
                        if self.additive or not base.is_monomial():
                            raise ValueError("negative powers only apply to connective monomials")
                        return base.monomial_inverse() ** exponent.value
                    return base ** exponent.value
                left, right = ev(node.left), ev(node.right)
                if isinstance(node.op, ast.Add):
                    return left + right
                if isinstance(node.op, ast.Sub):
                    return left - right
                if isinstance(node.op, ast.Mult):
                    return left * right
            raise ValueError(f"unsupported syntax in {text!r}")

        try:
            tree = ast.parse(text.replace("^", "**"), mode="eval")
        except SyntaxError as exc:
            raise ValueError(f"cannot parse {text!r}") from exc
        return ev(tree)

    def parse_root_expression(self, text: str) -> RootFraction:
        """Evaluate an expression written with root symbols.

        ``x(i)`` and ``x(-i)`` are ``x_{alpha_i}`` and ``x_{-alpha_i}`` for the
        i-th positive root, ``kappa(i)`` is ``1/x(i) + 1/x(-i)`` and ``b`` is
        beta.  Division is allowed by products of root symbols only.
        """
        n_pos = self.rs.n_pos

        def root_index(node) -> int:
            arg = node.args[0] if isinstance(node, ast.Call) and len(node.args) == 1 else None
            sign = 1
            if isinstance(arg, ast.UnaryOp) and isinstance(arg.op, ast.USub):
                sign, arg = -1, arg.operand
            if not (isinstance(arg, ast.Constant) and isinstance(arg.value, int) and 1 <= arg.value <= n_pos):
                raise ValueError(f"root symbols take an index in 1..{n_pos} (optionally negated)")
            k = arg.value - 1
            return k if sign > 0 else self.rs.negate_index(k)

        def inverse_of(node) -> RootFraction:
            if isinstance(node, ast.Call) and getattr(node.func, "id", None) == "x":
                return self.inv_root(root_index(node))
            if isinstance(node, ast.BinOp) and isinstance(node.op, ast.Mult):
                return inverse_of(node.left) * inverse_of(node.right)
            raise ValueError("only products of root symbols may appear in a denominator")

        def ev(node) -> RootFraction:
            if isinstance(node, ast.Expression):
                return ev(node.body)
            if isinstance(node, ast.Constant) and isinstance(node.value, int):
                return self.fraction(node.value)
            if isinstance(node, ast.Name) and node.id == "b":
                return self.fraction(self.beta())
            if isinstance(node, ast.Call) and isinstance(node.func, ast.Name):
                if node.func.id == "x":
                    return self.fraction(self.x_root(root_index(node)))
                if node.func.id == "kappa":
                    k = root_index(node)
                    if not self.rs.is_positive(k):
                        raise ValueError("kappa takes a positive root index")
                    return self.fraction(self.kappa(k))
            if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
                val = ev(node.operand)
                return -val if isinstance(node.op, ast.USub) else val
            if isinstance(node, ast.BinOp):
                if isinstance(node.op, ast.Div):
                    return ev(node.left) * inverse_of(node.right)
                if isinstance(node.op, ast.Pow) and isinstance(node.right, ast.Constant):
                    base, out = ev(node.left), self.fraction(1)
                    for _ in range(node.right.value):
                        out = out * base
                    return out
                left, right = ev(node.left), ev(node.right)
                if isinstance(node.op, ast.Add):
                    return left + right
                if isinstance(node.op, ast.Sub):
                    return left - right
                if isinstance(node.op, ast.Mult):
                    return left * right
            raise ValueError(f"unsupported syntax in {text!r}")

        try:
            tree = ast.parse(text.replace("^", "**"), mode="eval")
        except SyntaxError as exc:
            raise ValueError(f"cannot parse {text!r}") from exc
        return ev(tree)

    def format(self, f) -> str:
        if isinstance(f, RootFraction):
            if f.in_s():
                return f.num.to_string(self.variable_names())
            return repr(f)
        return f.to_string(self.variable_names())


_BACKENDS: Dict[Tuple[str, str, str], FGLBackend] = {}


def get_backend(type_tag, kind="additive", lattice=LatticeChoice.ROOT) -> FGLBackend:
    """Cached backend for a (type, lattice, law) triple."""
    rs = build_root_system(type_tag, lattice)
    kind = FGLKind(kind) if not isinstance(kind, FGLKind) else kind
    key = (rs.tag, rs.lattice.value, kind.value)
    if key not in _BACKENDS:
        _BACKENDS[key] = FGLBackend(rs, kind)
    return _BACKENDS[key]
