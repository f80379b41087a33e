"""Double quotient and Hopf structure mod p for the dihedral types I2(p)."""
import sys

from gkmhopf.dihedral import double_quotient, hopf_on_quotient

for p in [int(a) for a in sys.argv[1:]] or [3, 5]:
    quotient = double_quotient(f"I2:{p}")
    print(f"I2({p}):", " | ".join(" + ".join(f) or "0" for f in quotient.summary()))
    res = hopf_on_quotient(p)
    print("  a_k =", res["a"])
    print("  checks:", ", ".join(f"{k}={'ok' if v else 'FAIL'}" for k, v in res["checks"].items()))

for tag, lattice in [("A1", "root"), ("A2", "root"), ("A2", "weight"), ("B2", "root"), ("G2", "root")]:
    print(f"{tag} ({lattice} lattice):", " | ".join(" + ".join(f) or "0" for f in double_quotient(tag, lattice).summary()))
