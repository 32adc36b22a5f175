import pytest

from coxcat.catalan import build_nc, coxeter_element, enumerate_coxeter_elements, support
from coxcat.orders import bruhat_leq
from coxcat.rootsys import ValidationError, root_system
from coxcat.intervals import (
    biane_inversions, classify_translates, is_length_additive, length_additive_elements,
    representative_for, right_inv_nc, shape_equivalent, sortable_preimage,
    translated_interval, verify_hasse_union,
)


def cat_plus(t, n):
    # product of (e_i + h - 1) / (e_i + 1) over the exponents
    exps = {"A": list(range(1, n + 1)), "B": list(range(1, 2 * n, 2)),
            "D": list(range(1, 2 * n - 2, 2)) + [n - 1]}[t]
    h = max(exps) + 1
    num = den = 1
    for e in exps:
        num *= e + h - 1
        den *= e + 1
    return num // den


def test_length_additive_count_matches_brute_force():
    rs = root_system("A", 3)
    c = coxeter_element(rs, [2, 1, 3])
    brute = [w for w in rs.elements() if (w * c.element).length == w.length + 3]
    assert length_additive_elements(c) == brute


def test_rejects_non_additive():
    rs = root_system("A", 3)
    c = coxeter_element(rs, [1, 2, 3])
    with pytest.raises(ValidationError):
        translated_interval(rs.w0, c)


@pytest.mark.parametrize("t,n", [("A", 3), ("B", 2), ("B", 3)])
def test_translates_are_rank_n_and_span_identity_to_c(t, n):
    rs = root_system(t, n)
    for c in enumerate_coxeter_elements(rs)[:2]:
        for w in length_additive_elements(c):
            I = translated_interval(w, c)
            assert rs.identity in I.elements and c.element in I.elements
            assert I.interval.rank == n
            assert len(I.decreasing_labels()) == n


@pytest.mark.parametrize("t,n", [("A", 3), ("B", 3), ("D", 4)])
def test_classification(t, n):
    rs = root_system(t, n)
    c = enumerate_coxeter_elements(rs)[0]
    res = classify_translates(c)
    assert res.ok, res.failures[:3]
    assert len(res.classes) == cat_plus(t, n)


def test_hasse_union():
    rs = root_system("A", 3)
    for c in enumerate_coxeter_elements(rs):
        rep = verify_hasse_union(c)
        assert rep.ok, rep.failures[:3]


def test_s5_translate_fixture():
    rs = root_system("A", 4)
    c = coxeter_element(rs, [2, 1, 3, 4])
    I = translated_interval(rs.from_one_line((1, 2, 5, 3, 4)), c)
    assert len(I.elements) == 16
    assert I.bruhat_max.one_line == (4, 1, 3, 5, 2)
    assert {x.one_line for x in I.neighbors_of_max()} == {
        (1, 4, 3, 5, 2), (2, 1, 3, 5, 4), (3, 1, 4, 5, 2), (4, 1, 3, 2, 5)}


def test_shape_equivalence():
    rs = root_system("A", 3)
    c = coxeter_element(rs, [1, 2, 3])
    ws = length_additive_elements(c)
    e = rs.identity
    for w in ws[:6]:
        assert shape_equivalent(w, w * c.element, e, translated_interval(w, c).bruhat_max) == (
            set(translated_interval(w, c).elements) ==
            {x for x in rs.elements() if bruhat_leq(x, translated_interval(w, c).bruhat_max)})
    with pytest.raises(ValidationError):
        shape_equivalent(rs.w0, e, e, e)


@pytest.mark.parametrize("t,n", [("A", 3), ("B", 3), ("A", 4)])
def test_representatives_live_in_the_support_parabolic(t, n):
    rs = root_system(t, n)
    c = enumerate_coxeter_elements(rs)[0]
    nc = build_nc(c)
    for u in nc.elements:
        w, cword, cp = representative_for(u, c)
        assert set(w.word) <= support(u)
        assert sorted(cword) == sorted(support(u))
        assert is_length_additive(w, c) or len(cword) < n


def test_skip_inversions_match_right_noncrossing_inversions():
    for t, n in [("A", 3), ("A", 4), ("B", 3)]:
        rs = root_system(t, n)
        c = enumerate_coxeter_elements(rs)[-1]
        for u in build_nc(c).positive_subset:
            assert biane_inversions(u, c) == right_inv_nc(u, c)


def test_sortable_preimage_rejects_partial_support():
    rs = root_system("A", 3)
    c = coxeter_element(rs, [1, 2, 3])
    with pytest.raises(ValidationError):
        sortable_preimage(rs.simple(1), c)
