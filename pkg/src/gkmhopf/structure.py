"""GKM model of the structure algebra Z.

A class is a tuple of coordinates ``(z_v)_{v in W}`` with
:class:`~gkmhopf.exact_arith.RootFraction` entries.  Membership in Z means
every coordinate lies in S and ``z_{s_alpha w} - z_w`` is divisible by
``x_alpha`` along every edge of the Bruhat moment graph.
"""
from __future__ import annotations

from typing import Dict, List, Optional, Sequence, Tuple

from .demazure import DemazureAlgebra, QWElem
from .exact_arith import ConsistencyError, MultiPoly, RootFraction
from .formal_group import FGLBackend, get_backend


class GKMClass:
    """Element of ``oplus_{v in W} Q`` (a class of Z when it passes membership)."""

    __slots__ = ("ring", "coords")

    def __init__(self, ring: FGLBackend, coords: Sequence):
        self.ring = ring
        self.coords = tuple(ring.lift(c) for c in coords)

    def __getitem__(self, v: int) -> RootFraction:
        return self.coords[v]

    def __len__(self):
        return len(self.coords)

    def __add__(self, other: "GKMClass") -> "GKMClass":
        return GKMClass(self.ring, [a + b for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other: "GKMClass") -> "GKMClass":
        return GKMClass(self.ring, [a - b for a, b in zip(self.coords, other.coords)])

    def __neg__(self):
        return GKMClass(self.ring, [-a for a in self.coords])

    def __mul__(self, other) -> "GKMClass":
        """Pointwise product with a class, or left multiplication by a scalar."""
        if isinstance(other, GKMClass):
            return GKMClass(self.ring, [a * b for a, b in zip(self.coords, other.coords)])
        s = self.ring.lift(other)
        return GKMClass(self.ring, [s * a for a in self.coords])

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, GKMClass):
            return NotImplemented
        return all((a - b).is_zero() for a, b in zip(self.coords, other.coords))

    __hash__ = None

    def is_zero(self) -> bool:
        return all(a.is_zero() for a in self.coords)

    def support(self) -> List[int]:
        return [v for v, a in enumerate(self.coords) if not a.is_zero()]

    def polys(self) -> List[MultiPoly]:
        return [a.normalize().poly() for a in self.coords]

    def __repr__(self):
        return "(" + ", ".join(self.ring.format(a) for a in self.coords) + ")"


class StructureAlgebra:
    """Structure algebra of a root system for a chosen formal group law."""

    def __init__(self, ring: FGLBackend):
        self.ring = ring
        self.rs = ring.rs
        self.dem = DemazureAlgebra(ring)
        self.graph = self.rs.moment_graph()
        self._inv_xpi_at = [ring.act_fraction(w, ring.inv_x_pi()) for w in range(self.rs.order)]
        self._schubert: Dict[Tuple[int, int], GKMClass] = {}
        self._duals: Optional[List[GKMClass]] = None
        self._a_matrix = None
        self._mult: Dict[int, Tuple[list, list]] = {}
        self._nu: Dict[int, dict] = {}

    @classmethod
    def of(cls, type_tag, kind="additive", lattice="root") -> "StructureAlgebra":
        return _cached_algebra(type_tag, kind, lattice)

    @property
    def order(self) -> int:
        return self.rs.order

    # --------------------------------------------------------- construction
    def make(self, coords) -> GKMClass:
        return GKMClass(self.ring, coords)

    def one(self) -> GKMClass:
        return self.make([self.ring.one()] * self.order)

    def zero(self) -> GKMClass:
        return self.make([self.ring.zero()] * self.order)

    def point(self, v: int) -> GKMClass:
        """Fixed-point class ``[v]``: ``v(x_Pi)`` at ``v``, zero elsewhere."""
        ring = self.ring
        coords = [ring.zero()] * self.order
        coords[v] = ring.act(v, ring.x_pi())
        return self.make(coords)

    def char_map(self, f) -> GKMClass:
        """``c(f) = (w(f))_w``."""
        f = self.ring.lift(f)
        return self.make([self.ring.act_fraction(w, f) for w in range(self.order)])

    def borel_map(self, f1, f2) -> GKMClass:
        """``rho(f1 (x) f2) = f1 c(f2)``."""
        return self.char_map(f2) * f1

    # ----------------------------------------------------------- membership
    def membership_failures(self, z: GKMClass) -> List[str]:
        ring = self.ring
        out = []
        polys = []
        for v, c in enumerate(z.coords):
            c = c.normalize()
            if not c.in_s():
                out.append(f"coordinate {self.rs.elements[v].word_string()} not in S")
                polys.append(None)
            else:
                polys.append(c.num)
        for src, dst, k in self.graph.edges:
            if polys[src] is None or polys[dst] is None:
                continue
            diff = polys[dst] - polys[src]
            if diff and not ring.divisible_by_root(diff, k):
                out.append(
                    f"edge {self.rs.elements[src].word_string()}->{self.rs.elements[dst].word_string()} "
                    f"fails divisibility by x[{ring.root_label(k)}]"
                )
        return out

    def is_member(self, z: GKMClass) -> bool:
        return not self.membership_failures(z)

    def assert_member(self, z: GKMClass, what: str = "class") -> GKMClass:
        fails = self.membership_failures(z)
        if fails:
            raise ConsistencyError(f"{what} is not in the structure algebra: {fails[:3]}")
        return z

    # --------------------------------------------------------------- actions
    def hecke(self, a: QWElem, z: GKMClass) -> GKMClass:
        """``(q delta_w . z)_v = v(q) z_{vw}``."""
        ring, rs = self.ring, self.rs
        out = []
        for v in range(self.order):
            total = ring.fraction(0)
            for w, q in a.coeffs.items():
                zz = z.coords[rs.mul(v, w)]
                if not zz.is_zero():
                    total = total + ring.act_fraction(v, q) * zz
            out.append(total)
        return self.make(out)

    def weyl(self, a: QWElem, z: GKMClass) -> GKMClass:
        """``(q delta_w (.) z)_v = q w(z_{w^-1 v})``."""
        ring, rs = self.ring, self.rs
        out = []
        for v in range(self.order):
            total = ring.fraction(0)
            for w, q in a.coeffs.items():
                zz = z.coords[rs.mul(rs.inverse(w), v)]
                if not zz.is_zero():
                    total = total + q * ring.act_fraction(w, zz)
            out.append(total)
        return self.make(out)

    def weyl_delta(self, u: int, z: GKMClass) -> GKMClass:
        """``delta_u (.) z``."""
        ring, rs = self.ring, self.rs
        ui = rs.inverse(u)
        return self.make([ring.act_fraction(u, z.coords[rs.mul(ui, v)]) for v in range(self.order)])

    def hecke_word(self, word: Sequence[int], z: GKMClass) -> GKMClass:
        """``Y_{i_1} ... Y_{i_k} . z`` applied letter by letter."""
        for letter in reversed(tuple(word)):
            z = self.hecke(self.dem.y_simple(letter), z)
        return z

    # ------------------------------------------------------ Schubert classes
    def schubert(self, v: int, w: int) -> GKMClass:
        """Twisted Schubert class ``zeta(v)_w = Y_{I_w^-1} . [v]``."""
        key = (v, w)
        if key not in self._schubert:
            if v == 0:
                word = tuple(reversed(self.rs.word(w)))
                self._schubert[key] = self.hecke_word(word, self.point(0))
            else:
                self._schubert[key] = self.weyl_delta(v, self.schubert(0, w))
        return self._schubert[key]

    def zeta(self, w: int) -> GKMClass:
        return self.schubert(0, w)

    def sigma(self, w: int) -> GKMClass:
        """Opposite Schubert class ``zeta(w0)_w`` (degree ``r - l(w)``)."""
        return self.schubert(self.rs.w0, w)

    def theta(self, w: int) -> GKMClass:
        """``sigma_{w0 w}``: the class of degree ``l(w)`` supported on ``{v >= w}``."""
        return self.sigma(self.rs.mul(self.rs.w0, w))

    # --------------------------------------------------------------- pairing
    def pi_value(self, z: GKMClass) -> RootFraction:
        """The ``e``-coordinate of ``pi . z``, i.e. ``sum_u z_u / u(x_Pi)``."""
        total = self.ring.fraction(0)
        for u, c in enumerate(z.coords):
            if not c.is_zero():
                total = total + c * self._inv_xpi_at[u]
        return total.normalize()

    def pi_pair(self, z: GKMClass, zp: GKMClass, check: bool = True) -> MultiPoly:
        """``pi . (z z')`` as an element of S.

        With ``check`` the full Hecke image is computed and every coordinate is
        compared with the ``e``-coordinate.
        """
        prod = z * zp
        if check:
            image = self.hecke(self.dem.pi_element(), prod)
            first = image.coords[0]
            for c in image.coords[1:]:
                if not (c - first).is_zero():
                    raise ConsistencyError("pi . (z z') is not a multiple of the fundamental class")
            value = first.normalize()
        else:
            value = self.pi_value(prod)
        if not value.in_s():
            raise ConsistencyError(f"pairing value not in S: {value}")
        return value.poly()

    # ------------------------------------------------------------ dual basis
    def y_matrix(self):
        """``A[w][v]``: coefficient of ``delta_v`` in ``Y_{I_w}``."""
        if self._a_matrix is None:
            n = self.order
            self._a_matrix = [[self.dem.y(w).coefficient(v) for v in range(n)] for w in range(n)]
        return self._a_matrix

    def dual_basis(self) -> List[GKMClass]:
        """Poincare duals ``zeta^vee_u`` with ``pi . (zeta_w zeta^vee_u) = delta_{w,u}``.

        Since ``pi . (zeta_w z) = (Y_{I_w} . z)_e = sum_v A[w][v] z_v``, the dual
        coordinates form ``A^{-1}``, obtained by forward substitution along
        the length order (``A`` is Bruhat-triangular with invertible diagonal).
        """
        if self._duals is None:
            rs = self.rs
            n = self.order
            a = self.y_matrix()
            zero = self.ring.fraction(0)
            cols = []
            for u in range(n):
                col = [zero] * n
                for w in range(n):  # indices are sorted by length
                    total = self.ring.fraction(1 if w == u else 0)
                    for v in range(w):
                        if not a[w][v].is_zero() and not col[v].is_zero():
                            total = total - a[w][v] * col[v]
                    col[w] = (total * a[w][w].inverse()).normalize()
                cols.append(self.assert_member(self.make(col), f"dual of {rs.elements[u].word_string()}"))
            self._duals = cols
        return self._duals

    def dual(self, w: int) -> GKMClass:
        return self.dual_basis()[w]

    def twisted_dual(self, v: int, w: int) -> GKMClass:
        """``zeta(v)^vee_w = delta_v (.) zeta^vee_w``."""
        return self.weyl_delta(v, self.dual(w))

    def expand_schubert(self, z: GKMClass, u: int = 0) -> List[MultiPoly]:
        """Coefficients of ``z`` in the basis ``zeta(u)_w``."""
        return [self.pi_pair(z, self.twisted_dual(u, w), check=False) for w in range(self.order)]

    def expand_dual(self, z: GKMClass, u: int = 0) -> List[MultiPoly]:
        """Coefficients of ``z`` in the basis ``zeta(u)^vee_w``."""
        return [self.pi_pair(z, self.schubert(u, w), check=False) for w in range(self.order)]

    # ------------------------------------------------- multiplicity matrices
    def multiplicity_matrices(self, u: int, check: bool = True):
        """``(C_u, D_u)`` with entries in S, indexed in canonical order.

        ``c^u_{w,v} = pi . (zeta_w zeta(u)_v)`` and
        ``d^u_{w,v} = pi . (zeta^vee_w zeta(u)^vee_v)``.  With ``check`` the
        identities ``C_u D_u^t = 1``, ``u(C_{u^-1}) = C_u^t``,
        ``u(D_{u^-1}) = D_u^t`` and the length vanishing of ``c`` are asserted.
        """
        if u not in self._mult:
            n = self.order
            c = [[self.pi_pair(self.zeta(w), self.schubert(u, v), check=False) for v in range(n)] for w in range(n)]
            d = [[self.pi_pair(self.dual(w), self.twisted_dual(u, v), check=False) for v in range(n)] for w in range(n)]
            self._mult[u] = (c, d)
        c, d = self._mult[u]
        if check:
            self._check_multiplicities(u, c, d)
        return c, d

    def _check_multiplicities(self, u, c, d):
        ring, rs = self.ring, self.rs
        n = self.order
        for i in range(n):
            for j in range(n):
                total = ring.zero()
                for k in range(n):
                    total = total + c[i][k] * d[j][k]
                if total != ring.const(1 if i == j else 0):
                    raise ConsistencyError(f"C_u D_u^t is not the identity at ({i},{j})")
        cinv, dinv = self.multiplicity_matrices(rs.inverse(u), check=False)
        for i in range(n):
            for j in range(n):
                if ring.act(u, cinv[i][j]) != c[j][i]:
                    raise ConsistencyError("u(C_{u^-1}) differs from C_u^t")
                if ring.act(u, dinv[i][j]) != d[j][i]:
                    raise ConsistencyError("u(D_{u^-1}) differs from D_u^t")
                if rs.length(i) + rs.length(j) < rs.length(u) and c[i][j]:
                    raise ConsistencyError("c^u_{w,v} nonzero below the length bound")

    def nu(self, u: int) -> Dict[Tuple[int, int, int], MultiPoly]:
        """Structure constants ``nu(u)_{x,y}^z`` keyed by ``(x, y, z)``."""
        if u not in self._nu:
            c, d = self.multiplicity_matrices(u, check=False)
            lift = self.ring.lift
            cu = [[lift(x) for x in row] for row in c]
            du = [[lift(x) for x in row] for row in d]
            self._nu[u] = self.dem.nu_constants(u, cu, du)
        return self._nu[u]

    def tilde_y(self, u: int, w: int) -> QWElem:
        c, d = self.multiplicity_matrices(u, check=False)
        return self.dem.tilde_y(u, w, [[self.ring.lift(x) for x in row] for row in d])


_ALGEBRAS: Dict[tuple, StructureAlgebra] = {}


def _cached_algebra(type_tag, kind, lattice) -> StructureAlgebra:
    ring = get_backend(type_tag, kind, lattice)
    key = (ring.rs.tag, ring.rs.lattice.value, ring.kind.value)
    if key not in _ALGEBRAS:
        _ALGEBRAS[key] = StructureAlgebra(ring)
    return _ALGEBRAS[key]
