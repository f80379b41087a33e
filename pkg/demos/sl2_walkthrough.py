"""SL2 in both backends: Schubert classes, duals and the matrices C_u, D_u."""
from gkmhopf import StructureAlgebra


def show(kind):
    alg = StructureAlgebra.of("A1", kind, "weight")
    ring, rs = alg.ring, alg.rs
    print(f"== A1 ({kind}) ==")
    for w in range(alg.order):
        name = rs.elements[w].word_string()
        print(f"zeta_{name} = {[ring.format(c) for c in alg.zeta(w).coords]}")
        print(f"dual_{name} = {[ring.format(c) for c in alg.dual(w).coords]}")
    for u in (0, rs.w0):
        c, d = alg.multiplicity_matrices(u)
        print(f"C_{rs.elements[u].word_string()} = {[[ring.format(x) for x in row] for row in c]}")
        print(f"D_{rs.elements[u].word_string()} = {[[ring.format(x) for x in row] for row in d]}")


if __name__ == "__main__":
    show("additive")
    show("connective")
