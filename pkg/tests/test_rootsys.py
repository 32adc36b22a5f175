from itertools import permutations, product
from math import factorial

import pytest
from hypothesis import given, settings, strategies as st

from coxcat.rootsys import (
    NotFiniteTypeError, ValidationError, build_root_system, custom_datum, format_one_line,
    parse_one_line, root_system,
)

GROUP_ORDER = {
    "A": lambda n: factorial(n + 1),
    "B": lambda n: 2 ** n * factorial(n),
    "C": lambda n: 2 ** n * factorial(n),
    "D": lambda n: 2 ** (n - 1) * factorial(n),
}
N_POS = {"A": lambda n: n * (n + 1) // 2, "B": lambda n: n * n, "C": lambda n: n * n,
         "D": lambda n: n * (n - 1)}
SMALL = [("A", 1), ("A", 2), ("A", 3), ("A", 4), ("B", 2), ("B", 3), ("C", 2), ("C", 3),
         ("D", 2), ("D", 3), ("D", 4)]


def signed_permutations(t, n):
    """All one-line forms of the classical group, built directly."""
    if t == "A":
        return set(permutations(range(1, n + 2)))
    out = set()
    for p in permutations(range(1, n + 1)):
        for signs in product((1, -1), repeat=n):
            if t == "D" and signs.count(-1) % 2:
                continue
            out.add(tuple(a * s for a, s in zip(p, signs)))
    return out


def classical_length(t, w):
    """Inversion-count formulas for the length in types A and B."""
    n = len(w)
    inv = sum(1 for i in range(n) for j in range(i + 1, n) if w[i] > w[j])
    if t == "A":
        return inv
    nsp = sum(1 for i in range(n) for j in range(i + 1, n) if w[i] + w[j] < 0)
    neg = sum(1 for x in w if x < 0)
    return inv + nsp + neg


@pytest.mark.parametrize("t,n", SMALL)
def test_orders_and_root_counts(t, n):
    rs = root_system(t, n)
    assert len(rs.elements()) == GROUP_ORDER[t](n)
    assert rs.n_pos == N_POS[t](n)
    assert len(rs.roots) == 2 * rs.n_pos
    assert rs.w0.length == rs.n_pos


@pytest.mark.parametrize("t,n", SMALL)
def test_one_line_forms_are_the_signed_permutations(t, n):
    rs = root_system(t, n)
    assert {w.one_line for w in rs.elements()} == signed_permutations(t, n)


@pytest.mark.parametrize("t,n", [("A", 3), ("A", 4), ("B", 2), ("B", 3), ("C", 3)])
def test_length_matches_inversion_formula(t, n):
    rs = root_system(t, n)
    for w in rs.elements():
        assert w.length == classical_length("A" if t == "A" else "B", w.one_line)
        assert w.length == len(w.inversion_set) == len(w.word)


@pytest.mark.parametrize("t,n", [("A", 3), ("B", 3), ("D", 4)])
def test_group_axioms(t, n):
    rs = root_system(t, n)
    els = rs.elements()
    e = rs.identity
    for w in els[::7]:
        assert w * w.inverse() == e
        assert rs.from_word(w.word) == w
        for v in els[::11]:
            assert (w * v).inverse() == v.inverse() * w.inverse()
            assert abs((w * v).length - w.length) <= v.length


def test_simple_reflection_action_b2():
    rs = root_system("B", 2)
    c = rs.from_word([0, 1])
    assert c.one_line == (2, -1)
    assert c.word_labels == (0, 1)


def test_descents_agree_with_length():
    rs = root_system("A", 3)
    for w in rs.elements():
        for i in range(rs.rank):
            assert w.is_right_descent(i) == ((w * rs.simple(i)).length < w.length)
            assert w.is_left_descent(i) == ((rs.simple(i) * w).length < w.length)


def test_reflections_are_involutions_with_their_roots():
    rs = root_system("B", 3)
    assert len(rs.reflections) == rs.n_pos
    for r in rs.reflections:
        t = r.element
        assert t * t == rs.identity
        assert t != rs.identity
        assert rs.reflection_root_index(t) == rs.index[r.root.coords]


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(0, 2), max_size=12))
def test_words_reduce_consistently(word):
    rs = root_system("B", 3)
    w = rs.from_word(word)
    assert w.length <= len(word)
    assert w.length % 2 == len(word) % 2
    assert rs.from_word(w.word) == w
    assert rs.from_one_line(w.one_line) == w


@settings(max_examples=60, deadline=None)
@given(st.permutations(range(1, 6)))
def test_one_line_round_trip(p):
    rs = root_system("A", 4)
    w = rs.from_one_line(p)
    assert w.one_line == tuple(p)
    assert parse_one_line(format_one_line(p)) == tuple(p)


def test_parse_signed_one_line():
    assert parse_one_line("-3,1,2") == (-3, 1, 2)
    assert parse_one_line("-21") == (-2, 1)


def test_custom_g2_and_f4():
    g2 = build_root_system(custom_datum([[2, -1], [-3, 2]]))
    assert len(g2.roots) == 12
    assert len(g2.elements()) == 12
    assert g2.w0.length == 6
    f4 = build_root_system(custom_datum([[2, -1, 0, 0], [-1, 2, -2, 0], [0, -1, 2, -1], [0, 0, -1, 2]]))
    assert len(f4.roots) == 48


def test_custom_matches_classical_b3():
    cls = root_system("B", 3)
    cus = build_root_system(custom_datum(cls.datum.cartan_matrix))
    assert sorted(cus.roots) == sorted(cls.roots)


def test_affine_matrix_is_rejected():
    with pytest.raises(NotFiniteTypeError):
        build_root_system(custom_datum([[2, -2], [-2, 2]]))


@pytest.mark.parametrize("bad", [
    [[2, 1], [1, 2]],
    [[2, -1], [0, 2]],
    [[1, -1], [-1, 2]],
    [[2, -1, 0], [-1, 2]],
])
def test_invalid_cartan_matrices(bad):
    with pytest.raises(ValidationError):
        build_root_system(custom_datum(bad))


def test_one_line_validation():
    rs = root_system("D", 3)
    with pytest.raises(ValidationError):
        rs.from_one_line((-1, 2, 3))
    with pytest.raises(ValidationError):
        root_system("A", 2).from_one_line((1, 1, 2))
