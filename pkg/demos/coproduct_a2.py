"""The coproduct on A2 Schubert classes, compared with the product model."""
from gkmhopf import StructureAlgebra
from gkmhopf.coproduct import coassociativity_check, delta, product_model

alg = StructureAlgebra.of("A2", "additive")
rs = alg.rs
for w in range(alg.order):
    z = alg.zeta(w)
    ok = delta(alg, z, rs.w0) == product_model(alg, z)
    coassoc = coassociativity_check(alg, z, rs.w0).passed
    print(f"zeta_{rs.elements[w].word_string():8s} Delta matches z_(v1 v2): {ok}  coassociative: {coassoc}")

nu = alg.nu(rs.w0)
print("nonzero nu(w0)_{x,y}^z:")
for (x, y, z), c in sorted(nu.items()):
    if c:
        names = ", ".join(rs.elements[i].word_string() for i in (x, y, z))
        print(f"  ({names}) -> {alg.ring.format(c)}")
