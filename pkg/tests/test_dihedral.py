from math import factorial

import pytest
from hypothesis import given
from hypothesis import strategies as st
from sympy import ZZ, Matrix
from sympy.matrices.normalforms import smith_normal_form

from gkmhopf.dihedral import (
    double_quotient,
    expected_a,
    hopf_on_quotient,
    norm,
    pieri_products,
    residue,
    smith_invariants,
    trace_power,
    u_elem,
    unit_prime_certificates,
    v_elem,
)
from gkmhopf.exact_arith import CapabilityError
from gkmhopf.root_system import build_root_system
from gkmhopf.structure import StructureAlgebra


@pytest.mark.parametrize("p", [3, 5, 7])
def test_unit_and_prime_certificates(p):
    cert = unit_prime_certificates(p)
    assert cert["passed"]
    assert cert["residue_field_size"] == p
    assert len(cert["rows"]) == p - 1


def test_certificate_rejects_unsupported_prime():
    with pytest.raises(CapabilityError):
        unit_prime_certificates(11)


@pytest.mark.parametrize("p", [5, 7])
def test_trace_powers_and_norms(p):
    fld = build_root_system(f"I2:{p}").field
    g = fld.gamma()
    assert trace_power(fld, 1) == g
    assert trace_power(fld, 2) == g * g - fld(2)
    # xi^p = -1 in this normalization, so t_p = -2 and t_{p-k} = -t_k
    assert trace_power(fld, p) == fld(-2)
    for k in range(1, p):
        assert trace_power(fld, p - k) == -trace_power(fld, k)
        assert abs(norm(u_elem(fld, k))) == 1
        assert abs(norm(v_elem(fld, k))) == p
    assert residue(v_elem(fld, 1), p) == 0
    assert residue(g, p) == p - 2


def _sympy_invariants(rows, ncols):
    if not rows:
        return []
    snf = smith_normal_form(Matrix(rows), domain=ZZ)
    return [abs(int(snf[i, i])) for i in range(min(snf.shape)) if snf[i, i] != 0]


@given(
    st.integers(1, 4).flatmap(
        lambda n: st.lists(st.lists(st.integers(-12, 12), min_size=n, max_size=n), min_size=0, max_size=4).map(lambda r: (r, n))
    )
)
def test_smith_invariants_match_sympy(data):
    rows, ncols = data
    assert smith_invariants(rows, ncols) == _sympy_invariants(rows, ncols)


@pytest.mark.parametrize(
    "tag,lattice,expected",
    [
        ("A1", "root", [["Z"], ["Z/2"]]),
        ("A1", "weight", [["Z"], []]),
        ("A2", "weight", [["Z"], [], [], []]),
        ("A2", "root", [["Z"], ["Z/3"], ["Z/3"], []]),
        ("B2", "root", [["Z"], ["Z/2"], ["Z/2"], ["Z/2"], []]),
        ("B2", "weight", [["Z"], [], [], [], []]),
        ("G2", "root", [["Z"], [], [], ["Z/2"], [], [], []]),
        ("I2:3", "root", [["O"], ["F_3"], ["F_3"], []]),
        ("I2:5", "root", [["O"], ["F_5"], ["F_5"], ["F_5"], ["F_5"], []]),
    ],
)
def test_double_quotients(tag, lattice, expected):
    assert double_quotient(tag, lattice).summary() == expected


def test_both_engines_agree_on_a2_type():
    z = double_quotient("I2:3", engine="Z").summary()
    o = double_quotient("I2:3", engine="O").summary()
    assert [[f.replace("Z/", "F_").replace("Z", "O") for f in d] for d in z] == o


def test_integer_engine_rejects_cyclotomic_coefficients():
    with pytest.raises(CapabilityError):
        double_quotient("I2:5", engine="Z")


def _ending(rs, k, i):
    return next(w for w in range(rs.order) if rs.length(w) == k and rs.word(w)[-1] == i)


@pytest.mark.parametrize("p", [5, 7])
def test_pieri_relations(p):
    """Degree-k relations are ``-(2 theta_{k1} + t_{p-k} theta_{k2})`` and ``-(t_{p-k} theta_{k1} + 2 theta_{k2})``.

    Here ``theta_{k1}`` ends in ``s1``, ``t_j = xi^j + xi^-j``, the first vector
    comes from ``c(alpha_1) theta_v`` with ``v`` ending in ``s2`` and the second
    from ``c(alpha_2) theta_v`` with ``v`` ending in ``s1``.
    """
    alg = StructureAlgebra.of(f"I2:{p}", "additive")
    rs, fld = alg.rs, alg.rs.field
    a1, a2 = rs.lattice_basis
    for k in range(1, p):
        t = trace_power(fld, p - k)
        k1, k2 = _ending(rs, k, 1), _ending(rs, k, 2)
        first = dict(pieri_products(alg, a1, k))
        second = dict(pieri_products(alg, a2, k))
        v2 = _ending(rs, k - 1, 2) if k > 1 else 0
        v1 = _ending(rs, k - 1, 1) if k > 1 else 0
        assert first[v2] == {k1: fld(-2), k2: -t}
        assert second[v1] == {k1: -t, k2: fld(-2)}


def test_expected_a_closed_form():
    for p in (3, 5, 7):
        for k in range(1, p):
            sign = (-1) ** (k * (k - 1) // 2)
            assert (expected_a(k, p) * factorial(k) - sign) % p == 0
    assert [expected_a(k, 5) for k in range(1, 5)] == [1, 2, 4, 4]
    assert [expected_a(k, 7) for k in range(1, 7)] == [1, 3, 1, 5, 1, 1]


@pytest.mark.parametrize("p", [3, 5])
def test_hopf_structure_on_reduced_quotient(p):
    res = hopf_on_quotient(p)
    assert res["passed"], res["checks"]
    assert res["a"] == res["a_expected"]
    assert res["graded_group"] == [["O"]] + [[f"F_{p}"]] * (p - 1) + [[]]
