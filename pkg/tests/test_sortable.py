from itertools import combinations

import pytest

from coxcat.catalan import build_nc, coxeter_element, enumerate_coxeter_elements
from coxcat.orders import weak_leq
from coxcat.rootsys import ValidationError, root_system
from coxcat.sortable import (
    c_sorting_word, cambrian_class, cover_reflections, coxeter_reflection_order,
    inverse_coxeter, is_sortable, nc_c, pi_down, pi_up, psi_labels, skips, sortable_elements,
)
from coxcat.orders import is_valid_reflection_order


def avoids(p, pattern):
    k = len(pattern)
    for idx in combinations(range(len(p)), k):
        vals = [p[i] for i in idx]
        if all((vals[a] < vals[b]) == (pattern[a] < pattern[b]) for a in range(k) for b in range(k)):
            return False
    return True


@pytest.mark.parametrize("n", [3, 4])
def test_linear_coxeter_elements_give_pattern_avoiders(n):
    rs = root_system("A", n)
    up = coxeter_element(rs, list(range(1, n + 1)))
    down = coxeter_element(rs, list(range(n, 0, -1)))
    assert {x.one_line for x in sortable_elements(up)} == {
        w.one_line for w in rs.elements() if avoids(w.one_line, (3, 1, 2))}
    assert {x.one_line for x in sortable_elements(down)} == {
        w.one_line for w in rs.elements() if avoids(w.one_line, (2, 3, 1))}


@pytest.mark.parametrize("t,n", [("A", 3), ("B", 3), ("D", 4)])
def test_nc_c_is_a_bijection_onto_nc(t, n):
    rs = root_system(t, n)
    for c in enumerate_coxeter_elements(rs)[:3]:
        srt = sortable_elements(c)
        nc = build_nc(c)
        assert len(srt) == len(nc.elements)
        assert {nc_c(x, c) for x in srt} == set(nc.elements)


@pytest.mark.parametrize("t,n", [("A", 3), ("B", 3)])
def test_cambrian_projections(t, n):
    rs = root_system(t, n)
    c = enumerate_coxeter_elements(rs)[1]
    bottoms = set()
    for x in rs.elements():
        lo, hi = pi_down(x, c), pi_up(x, c)
        assert weak_leq(lo, x) and weak_leq(x, hi)
        assert is_sortable(lo, c)
        assert pi_down(lo, c) == lo
        assert pi_down(hi, c) == lo
        bottoms.add(lo)
    assert len(bottoms) == len(sortable_elements(c))
    x = rs.elements()[7]
    assert all(pi_down(y, c) == pi_down(x, c) for y in cambrian_class(x, c))


def test_sorting_word_reconstructs_the_element():
    rs = root_system("B", 3)
    c = coxeter_element(rs, [1, 0, 2])
    for x in rs.elements():
        sw = c_sorting_word(x, c)
        assert rs.from_word(sw.letters) == x
        assert len(sw.letters) == x.length
        assert list(sw.positions) == sorted(sw.positions)


def test_forced_skips_are_cover_reflections():
    rs = root_system("A", 4)
    c = coxeter_element(rs, [2, 1, 3, 4])
    for x in sortable_elements(c):
        assert set(skips(x, c).fs) == cover_reflections(x)


def test_coxeter_reflection_order_is_valid():
    for t, n in [("A", 3), ("B", 3)]:
        rs = root_system(t, n)
        for c in enumerate_coxeter_elements(rs):
            order = coxeter_reflection_order(c)
            assert is_valid_reflection_order(order)
            assert order.reflections[0] == rs.simple(c.word[0])


def test_inverse_coxeter():
    rs = root_system("B", 3)
    c = coxeter_element(rs, [2, 0, 1])
    assert inverse_coxeter(c).element == c.element.inverse()


def test_s5_example():
    rs = root_system("A", 4)
    c = coxeter_element(rs, [2, 1, 3, 4])
    x = rs.from_one_line((3, 5, 4, 2, 1))
    assert [sorted(rs.datum.labels[i] for i in syl) for syl in c_sorting_word(x, c).syllables] == \
        [[1, 2, 3, 4], [2, 3, 4], [2]]
    sk = skips(x, c)
    T = lambda i, j: rs.from_one_line(tuple(j if k == i else i if k == j else k for k in range(1, 6)))
    assert sk.fs == [T(2, 4), T(1, 2), T(4, 5)]
    assert sk.ufs == [T(3, 4)]
    assert nc_c(x, c).one_line == (4, 1, 3, 5, 2)
    assert not is_sortable(rs.from_one_line((5, 3, 4, 2, 1)), c)


def test_s8_example():
    rs = root_system("A", 7)
    c = coxeter_element(rs, [2, 5, 1, 3, 6, 7, 4])
    x = c.element * c.element
    assert is_sortable(x, c) and weak_leq(c.element, x)
    u = nc_c(x, c)
    assert u.one_line == (7, 8, 4, 3, 2, 6, 1, 5)
    k = u.inverse() * c.element
    assert k.one_line == (4, 7, 3, 6, 5, 1, 2, 8)
    x2 = rs.from_one_line((3, 6, 4, 1, 7, 2, 5, 8))
    assert is_sortable(x2, c) and nc_c(x2, c) == k
    T = lambda i, j: rs.from_one_line(tuple(j if m == i else i if m == j else m for m in range(1, 9)))
    assert cover_reflections(x2) == {T(1, 4), T(2, 7), T(4, 6)}
    order = coxeter_reflection_order(c)
    assert sorted(cover_reflections(x), key=order.position) == [T(5, 8), T(3, 4), T(2, 5), T(1, 7)]


def test_b4_skip_labels():
    rs = root_system("B", 4)
    c = coxeter_element(rs, [0, 1, 2, 3])
    wop = rs.from_one_line((-3, -4, 2, -1))
    assert weak_leq(c.element, wop)
    assert c_sorting_word(wop, c).letters == (0, 1, 2, 3, 1, 2, 0, 1, 0, 1)
    x = pi_down(wop, c)
    assert x.one_line == (4, 3, 2, -1)
    assert c_sorting_word(x, c).letters == (0, 1, 2, 3, 1, 2, 1)
    y = c.element.inverse() * x
    assert y.one_line == (3, 2, 1, 4)
    sk = skips(y, c)
    assert sk.positions == (0, 3, 6, 9)
    assert [t.one_line for t in sk.reflections] == [(-1, 2, 3, 4), (4, 2, 3, 1), (2, 1, 3, 4), (1, 3, 2, 4)]
    w = rs.w0 * wop.inverse()
    psi = psi_labels(w, c)
    assert [t.one_line for t in psi] == [(-1, 2, 3, 4), (-4, 2, 3, -1), (1, 4, 3, 2), (1, 2, 4, 3)]


def test_skips_reject_unsortable():
    rs = root_system("A", 4)
    c = coxeter_element(rs, [2, 1, 3, 4])
    with pytest.raises(ValidationError):
        skips(rs.from_one_line((5, 3, 4, 2, 1)), c)


def test_psi_labels_need_length_additivity():
    rs = root_system("A", 3)
    c = coxeter_element(rs, [1, 2, 3])
    with pytest.raises(ValidationError):
        psi_labels(rs.w0, c)
