import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gkmhopf.exact_arith import CapabilityError
from gkmhopf.root_system import build_root_system

TYPES = ["A1", "A2", "B2", "G2", "I2:3", "I2:5", "I2:7"]
ORDERS = {"A1": 2, "A2": 6, "B2": 8, "G2": 12, "I2:3": 6, "I2:5": 10, "I2:7": 14}
N_POS = {"A1": 1, "A2": 3, "B2": 4, "G2": 6, "I2:3": 3, "I2:5": 5, "I2:7": 7}


@pytest.fixture(params=TYPES)
def rs(request):
    return build_root_system(request.param)


def test_orders_and_longest_element(rs):
    assert rs.order == ORDERS[rs.tag]
    assert rs.n_pos == N_POS[rs.tag]
    assert rs.length(rs.w0) == rs.n_pos
    assert rs.inverse(rs.w0) == rs.w0
    assert len(rs.inversion_set(rs.w0)) == rs.n_pos


def test_group_axioms(rs):
    n = rs.order
    for a, b, c in itertools.product(range(n), repeat=3):
        assert rs.mul(rs.mul(a, b), c) == rs.mul(a, rs.mul(b, c))
    for a in range(n):
        assert rs.mul(a, rs.inverse(a)) == 0
        assert rs.mul(0, a) == a


def test_canonical_words_are_reduced_and_ordered(rs):
    keys = [(rs.length(w), rs.word(w)) for w in range(rs.order)]
    assert keys == sorted(keys)
    for w in range(rs.order):
        assert rs.element_from_word(rs.word(w)) == w
        assert len(rs.word(w)) == rs.length(w) == len(rs.inversion_set(w))


def test_simple_reflections_square_to_identity_and_braid(rs):
    s1, s2 = (rs.element_from_word((i,)) for i in range(1, rs.rank + 1)) if rs.rank == 2 else (rs.element_from_word((1,)), None)
    assert rs.mul(s1, s1) == 0
    if s2 is not None:
        m = rs.order // 2
        assert rs.element_from_word((1, 2) * m) == 0
        assert rs.element_from_word((1, 2) * (m - 1)) != 0


def _subword_products(rs, w):
    word = rs.word(w)
    out = set()
    for mask in itertools.product((0, 1), repeat=len(word)):
        out.add(rs.element_from_word([a for a, keep in zip(word, mask) if keep]))
    return out


def test_bruhat_order_matches_subword_oracle(rs):
    for w in range(rs.order):
        below = _subword_products(rs, w)
        for u in range(rs.order):
            assert rs.bruhat_leq(u, w) == (u in below)


def test_moment_graph_edges(rs):
    graph = rs.moment_graph()
    assert len(graph.edges) == rs.order * rs.n_pos // 2
    for a, b, k in graph.edges:
        assert rs.length(b) > rs.length(a)
        assert rs.mul(rs.reflection_of[k], a) == b
        assert rs.bruhat_leq(a, b)


def test_parse_element_forms(rs):
    assert rs.parse_element("e") == 0
    assert rs.parse_element("w0") == rs.w0
    s1 = rs.element_from_word((1,))
    assert rs.parse_element("s1") == s1 == rs.parse_element("1")
    if rs.rank == 2:
        assert rs.parse_element("s1s2") == rs.parse_element("12") == rs.parse_element("1,2")
        with pytest.raises(ValueError):
            rs.parse_element("s3")


def test_demazure_product_is_max_of_subwords(rs):
    if rs.rank == 1:
        assert rs.demazure_product((1, 1, 1)) == rs.w0
        return
    for word in itertools.product((1, 2), repeat=4):
        d = rs.demazure_product(word)
        subs = set()
        for mask in itertools.product((0, 1), repeat=len(word)):
            subs.add(rs.element_from_word([a for a, keep in zip(word, mask) if keep]))
        assert all(rs.bruhat_leq(u, d) for u in subs)
        assert d in subs


def test_alternative_a2_order():
    rs = build_root_system("A2")
    assert [rs.elements[w].word_string() for w in rs.alternative_a2_order()] == ["e", "s1", "s2", "s2s1", "s1s2", "s1s2s1"]
    with pytest.raises(CapabilityError):
        build_root_system("B2").alternative_a2_order()


def test_reflections_preserve_roots_and_coroot_pairing():
    for tag in TYPES:
        rs = build_root_system(tag)
        roots = set(rs.roots)
        for w in range(rs.order):
            assert {rs.apply(w, r) for r in rs.roots} == roots
        for k in range(rs.n_pos):
            assert rs.coroot(k, rs.positive_roots[k]) == rs.field(2)


@pytest.mark.parametrize("tag,index", [("A1", 2), ("A2", 3), ("B2", 2), ("G2", 1)])
def test_weight_lattice_index(tag, index):
    assert build_root_system(tag, "weight").weight_index() == index


def test_dihedral_coroot_pairings_are_non_integral():
    rs = build_root_system("I2:5")
    assert not rs.crystallographic
    assert any(not c.is_rational() for row in rs.coroot_table() for c in row)


def test_unsupported_types():
    for tag in ["F4", "I2:4", "I2:11", "A3"]:
        with pytest.raises(CapabilityError):
            build_root_system(tag)


@given(st.sampled_from(TYPES), st.data())
def test_length_of_product_with_simple_reflection(tag, data):
    rs = build_root_system(tag)
    w = data.draw(st.integers(0, rs.order - 1))
    i = data.draw(st.integers(1, rs.rank))
    ws = rs.mul(w, rs.element_from_word((i,)))
    assert abs(rs.length(ws) - rs.length(w)) == 1
    assert (rs.length(ws) < rs.length(w)) == rs.right_descent(w, i - 1)
