"""Root systems of rank at most two, their Weyl groups and Bruhat moment graphs.

All lattice vectors are written in simple-root coordinates over the base
field K (``mpq`` rationals for crystallographic types, ``NumberFieldElem`` for the
dihedral types).  Roots are generated by closure under simple reflections, so
no sign test on real numbers is ever needed: positivity is membership in the
generated positive system.

Weyl group elements are integers ``0..|W|-1`` in the canonical order
(length first, then the lexicographically least reduced word).  The
:class:`WeylElem` records carry the word, length and root permutation.
"""
from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .exact_arith import (
    mpq,
    BaseField,
    CapabilityError,
    FieldKind,
    SUPPORTED_DIHEDRAL_PRIMES,
    field_norm,
    invert_matrix,
)


class LatticeChoice(enum.Enum):
    ROOT = "root"
    WEIGHT = "weight"


CRYSTALLOGRAPHIC_CARTAN = {
    "A1": [[2]],
    "A2": [[2, -1], [-1, 2]],
    # alpha_1 long, alpha_2 short
    "B2": [[2, -2], [-1, 2]],
    # alpha_1 short, alpha_2 long
    "G2": [[2, -1], [-3, 2]],
}


def parse_type(tag) -> Tuple[str, Optional[int]]:
    """Normalize a type tag: ``"A2"``, ``"I2:5"``, ``"I2(5)"`` or ``("I2", 5)``."""
    if isinstance(tag, tuple):
        name, m = tag
    else:
        s = str(tag).strip().upper()
        match = re.fullmatch(r"I2[:(]?(\d+)\)?", s)
        if match:
            name, m = "I2", int(match.group(1))
        else:
            name, m = s, None
    if name == "I2":
        if m not in SUPPORTED_DIHEDRAL_PRIMES:
            raise CapabilityError(f"I2({m}) not supported; m must be one of {SUPPORTED_DIHEDRAL_PRIMES}")
        return "I2", int(m)
    if name not in CRYSTALLOGRAPHIC_CARTAN:
        raise CapabilityError(f"unsupported root system type {tag!r}")
    return name, None


@dataclass(frozen=True)
class WeylElem:
    """A Weyl group element: canonical index, reduced word and root permutation.

    ``perm[k]`` is the index of ``w(root_k)`` in the full root list
    (positive roots first, then their negatives in the same order).
    """

    index: int
    word: Tuple[int, ...]
    length: int
    perm: Tuple[int, ...] = field(compare=False, repr=False)

    def word_string(self) -> str:
        return "e" if not self.word else "".join(f"s{i}" for i in self.word)


@dataclass(frozen=True)
class MomentGraph:
    vertices: Tuple[int, ...]
    # (source, target, positive root index)
    edges: Tuple[Tuple[int, int, int], ...]

    def successors(self, w: int):
        return [(t, a) for s, t, a in self.edges if s == w]


class RootSystem:
    """Finite root system of rank <= 2 with a chosen lattice.

    Parameters
    ----------
    type_tag : str or tuple
        ``"A1"``, ``"A2"``, ``"B2"``, ``"G2"`` or ``"I2:p"`` with p in {3, 5, 7}.
    lattice : LatticeChoice or str
        Root or weight lattice.
    """

    def __init__(self, type_tag, lattice=LatticeChoice.ROOT):
        self.type_name, self.m = parse_type(type_tag)
        self.lattice = LatticeChoice(lattice) if not isinstance(lattice, LatticeChoice) else lattice
        if self.type_name == "I2":
            self.field = BaseField(FieldKind.CYCLOTOMIC_REAL, self.m)
            g = self.field.gamma()
            two = self.field(2)
            self.cartan = [[two, -g], [-g, two]]
        else:
            self.field = BaseField(FieldKind.RATIONAL)
            self.cartan = [[mpq(x) for x in row] for row in CRYSTALLOGRAPHIC_CARTAN[self.type_name]]
        self.rank = len(self.cartan)
        self.crystallographic = self.type_name != "I2"
        self._build_roots()
        self._build_lattice()
        self._build_weyl()

    # ------------------------------------------------------------------ roots
    @property
    def tag(self) -> str:
        return f"I2:{self.m}" if self.type_name == "I2" else self.type_name

    def coroot_simple(self, i: int, lam) -> object:
        """``alpha_i^vee(lam)`` for ``lam`` in simple-root coordinates."""
        return sum((lam[j] * self.cartan[j][i] for j in range(self.rank)), self.field.zero())

    def reflect_simple(self, i: int, lam) -> tuple:
        c = self.coroot_simple(i, lam)
        return tuple(x - c if j == i else x for j, x in enumerate(lam))

    def _unit(self, i):
        z, o = self.field.zero(), self.field.one()
        return tuple(o if j == i else z for j in range(self.rank))

    def _build_roots(self):
        simple = [self._unit(i) for i in range(self.rank)]
        pos = list(simple)
        seen = set(pos)
        k = 0
        while k < len(pos):
            b = pos[k]
            for i in range(self.rank):
                if b == simple[i]:
                    continue
                c = self.reflect_simple(i, b)
                if c not in seen:
                    seen.add(c)
                    pos.append(c)
            k += 1
        self.simple_roots = simple
        self.positive_roots: List[tuple] = pos
        self.n_pos = len(pos)
        self.roots = pos + [tuple(-x for x in b) for b in pos]
        self.root_index: Dict[tuple, int] = {b: i for i, b in enumerate(self.roots)}

    def negate_index(self, k: int) -> int:
        return k + self.n_pos if k < self.n_pos else k - self.n_pos

    def signed(self, k: int) -> Tuple[int, int]:
        """Root index ``k`` as ``(sign, positive index)``."""
        return (1, k) if k < self.n_pos else (-1, k - self.n_pos)

    def is_positive(self, k: int) -> bool:
        return k < self.n_pos

    def root_name(self, i: int) -> str:
        parts = []
        for j, c in enumerate(self.positive_roots[i]):
            if c:
                coef = "" if c == 1 else f"{c}*"
                parts.append(f"{coef}a{j + 1}")
        return "+".join(parts)

    # ---------------------------------------------------------------- lattice
    def _build_lattice(self):
        if self.lattice is LatticeChoice.ROOT:
            self.lattice_basis = [self._unit(i) for i in range(self.rank)]
        else:
            minv = invert_matrix(self.cartan)
            self.lattice_basis = [tuple(minv[i]) for i in range(self.rank)]
        # B[i] are rows; coordinates c of lam satisfy lam = sum c_i B[i]
        self._to_basis = invert_matrix([[self.lattice_basis[i][j] for i in range(self.rank)] for j in range(self.rank)])

    def lattice_coords(self, lam) -> tuple:
        """Coordinates of ``lam`` in the chosen lattice basis (over K)."""
        return tuple(
            sum((self._to_basis[i][j] * lam[j] for j in range(self.rank)), self.field.zero()) for i in range(self.rank)
        )

    def in_lattice(self, lam) -> bool:
        for c in self.lattice_coords(lam):
            if self.crystallographic:
                if mpq(c).denominator != 1:
                    return False
            elif not c.is_integral():
                return False
        return True

    def weight_index(self) -> int:
        """``|Lambda_w / Lambda_r|`` as the absolute norm of ``det M``."""
        if self.rank == 1:
            det = self.cartan[0][0]
        else:
            det = self.cartan[0][0] * self.cartan[1][1] - self.cartan[0][1] * self.cartan[1][0]
        n = field_norm(det) if not self.crystallographic else mpq(det)
        return abs(int(n))

    def coroot(self, k: int, lam) -> object:
        """``alpha^vee(lam)`` for the root with index ``k``."""
        w, i = self._root_origin[k]
        return self.coroot_simple(i, self.apply(self.inverse(w), lam))

    def coroot_table(self):
        """``table[k][i] = alpha_k^vee(b_i)`` for positive roots and lattice basis vectors."""
        return [[self.coroot(k, b) for b in self.lattice_basis] for k in range(self.n_pos)]

    # ------------------------------------------------------------------ group
    def _build_weyl(self):
        nroots = len(self.roots)
        self.simple_perms = []
        for i in range(self.rank):
            self.simple_perms.append(tuple(self.root_index[self.reflect_simple(i, b)] for b in self.roots))
        identity = tuple(range(nroots))
        elems = [WeylElem(0, (), 0, identity)]
        key = {self._key(identity): 0}
        level = [0]
        while level:
            nxt = []
            for wi in level:
                w = elems[wi]
                for i in range(self.rank):
                    if not self.is_positive(w.perm[i]):
                        continue
                    perm = tuple(w.perm[k] for k in self.simple_perms[i])
                    kk = self._key(perm)
                    if kk in key:
                        continue
                    key[kk] = len(elems)
                    elems.append(WeylElem(len(elems), w.word + (i + 1,), w.length + 1, perm))
                    nxt.append(len(elems) - 1)
            level = nxt
        self.elements: List[WeylElem] = elems
        self.order = len(elems)
        self._key_to_index = key
        n = self.order
        self.mul_table = [[key[self._key(tuple(elems[a].perm[k] for k in elems[b].perm))] for b in range(n)] for a in range(n)]
        self.inv_table = [self.mul_table[a].index(0) for a in range(n)]
        self.w0 = max(range(n), key=lambda a: elems[a].length)
        self.simple_index = [key[self._key(self.simple_perms[i])] for i in range(self.rank)]
        # a (w, i) with w(alpha_i) = root k, for every root k
        origin = {}
        for w in elems:
            for i in range(self.rank):
                origin.setdefault(w.perm[i], (w.index, i))
        self._root_origin = origin
        self.reflection_of = [
            self.mul(self.mul(origin[k][0], self.simple_index[origin[k][1]]), self.inverse(origin[k][0]))
            for k in range(self.n_pos)
        ]
        self._bruhat = self._bruhat_table()

    def _key(self, perm):
        return tuple(perm[i] for i in range(self.rank))

    def mul(self, a: int, b: int) -> int:
        return self.mul_table[a][b]

    def inverse(self, a: int) -> int:
        return self.inv_table[a]

    def length(self, a: int) -> int:
        return self.elements[a].length

    def word(self, a: int) -> Tuple[int, ...]:
        return self.elements[a].word

    def element_from_word(self, word: Sequence[int]) -> int:
        w = 0
        for i in word:
            if not 1 <= i <= self.rank:
                raise ValueError(f"letter {i} out of range for rank {self.rank}")
            w = self.mul(w, self.simple_index[i - 1])
        return w

    def parse_element(self, text: str) -> int:
        """Parse ``"e"``, ``"w0"``, ``"s1s2"``, ``"12"`` or ``"1,2"``."""
        t = text.strip().lower()
        if t in ("e", "", "id"):
            return 0
        if t == "w0":
            return self.w0
        letters = [int(x) for x in re.findall(r"\d", t.replace("s", ""))]
        return self.element_from_word(letters)

    def root_image(self, w: int, k: int) -> int:
        return self.elements[w].perm[k]

    def apply(self, w: int, lam) -> tuple:
        """Apply ``w`` to a vector in simple-root coordinates."""
        perm = self.elements[w].perm
        out = [self.field.zero()] * self.rank
        for j in range(self.rank):
            if lam[j]:
                img = self.roots[perm[j]]
                for i in range(self.rank):
                    out[i] = out[i] + lam[j] * img[i]
        return tuple(out)

    def matrix(self, w: int):
        """Action matrix in simple-root coordinates (column j is ``w(alpha_j)``)."""
        perm = self.elements[w].perm
        return [[self.roots[perm[j]][i] for j in range(self.rank)] for i in range(self.rank)]

    def inversion_set(self, w: int) -> List[int]:
        """Positive roots sent to negative roots by ``w``."""
        return [k for k in range(self.n_pos) if not self.is_positive(self.root_image(w, k))]

    def right_descent(self, w: int, i: int) -> bool:
        """True when ``l(w s_i) < l(w)``."""
        return not self.is_positive(self.root_image(w, i))

    # ----------------------------------------------------------------- bruhat
    def _bruhat_table(self):
        n = self.order
        table = [[False] * n for _ in range(n)]
        by_len = sorted(range(n), key=lambda a: self.length(a))
        for w in by_len:
            if w == 0:
                table[0][0] = True
                continue
            i = next(i for i in range(self.rank) if self.right_descent(w, i))
            ws = self.mul(w, self.simple_index[i])
            for u in range(n):
                us = self.mul(u, self.simple_index[i])
                table[u][w] = table[us][ws] if self.right_descent(u, i) else table[u][ws]
        return table

    def bruhat_leq(self, u: int, w: int) -> bool:
        return self._bruhat[u][w]

    # ----------------------------------------------------------- moment graph
    def moment_graph(self) -> MomentGraph:
        edges = []
        for w in range(self.order):
            winv = self.inverse(w)
            for k in range(self.n_pos):
                if self.is_positive(self.root_image(winv, k)):
                    edges.append((w, self.mul(self.reflection_of[k], w), k))
        return MomentGraph(tuple(range(self.order)), tuple(edges))

    def demazure_product(self, word: Sequence[int]) -> int:
        """0-Hecke monoid product: apply ``s_i`` only when it raises the length."""
        w = 0
        for i in word:
            if not self.right_descent(w, i - 1):
                w = self.mul(w, self.simple_index[i - 1])
        return w

    def alternative_a2_order(self) -> List[int]:
        """Indices of ``(e, s1, s2, s2s1, s1s2, w0)`` for type A2."""
        if self.type_name != "A2":
            raise CapabilityError("the alternative table order is defined for A2 only")
        return [self.element_from_word(w) for w in [(), (1,), (2,), (2, 1), (1, 2), (1, 2, 1)]]

    def __repr__(self):
        return f"RootSystem({self.tag}, {self.lattice.value})"


_CACHE: Dict[Tuple[str, str], RootSystem] = {}


def build_root_system(type_tag, lattice=LatticeChoice.ROOT) -> RootSystem:
    """Build (or fetch a cached) root system."""
    name, m = parse_type(type_tag)
    lat = LatticeChoice(lattice) if not isinstance(lattice, LatticeChoice) else lattice
    key = (f"{name}{m or ''}", lat.value)
    if key not in _CACHE:
        _CACHE[key] = RootSystem((name, m) if m else name, lat)
    return _CACHE[key]
