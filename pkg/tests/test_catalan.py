from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from coxcat.catalan import (
    CompletionError, build_nc, clust_plus, cluster_complete_to_basis, coxeter_element,
    enumerate_coxeter_elements, full_support, inv_nc, is_noncrossing, strong_closure_check,
    support, verify_clusters,
)
from coxcat.orders import absolute_leq, absolute_length
from coxcat.rootsys import ValidationError, build_root_system, custom_datum, root_system

DEGREES = {
    "A": lambda n: list(range(2, n + 2)),
    "B": lambda n: [2 * i for i in range(1, n + 1)],
    "C": lambda n: [2 * i for i in range(1, n + 1)],
    "D": lambda n: [2 * i for i in range(1, n)] + [n],
}


def catalan_from_degrees(degs, shift=0):
    h = max(degs)
    out = Fraction(1)
    for d in degs:
        out *= Fraction(h + d - shift, d)
    return int(out)


GROUPS = [("A", 2), ("A", 3), ("A", 4), ("B", 2), ("B", 3), ("C", 3), ("D", 4)]


@pytest.mark.parametrize("t,n", GROUPS)
def test_counts_match_degree_formula(t, n):
    rs = root_system(t, n)
    degs = DEGREES[t](n)
    for c in enumerate_coxeter_elements(rs)[:4]:
        nc = build_nc(c)
        assert len(nc.elements) == catalan_from_degrees(degs)
        assert len(nc.positive_subset) == catalan_from_degrees(degs, 2)


def test_g2_counts():
    rs = build_root_system(custom_datum([[2, -1], [-3, 2]]))
    for c in enumerate_coxeter_elements(rs):
        nc = build_nc(c)
        assert (len(nc.elements), len(nc.positive_subset)) == (8, 5)


def test_coxeter_element_count():
    # acyclic orientations of the Dynkin tree: 2^(n-1)
    assert len(enumerate_coxeter_elements(root_system("A", 4))) == 8
    assert len(enumerate_coxeter_elements(root_system("D", 4))) == 8


def test_coxeter_word_validation():
    rs = root_system("A", 3)
    with pytest.raises(ValidationError):
        coxeter_element(rs, [1, 1, 2])


@pytest.mark.parametrize("t,n", [("A", 3), ("B", 3)])
def test_kreweras_covers(t, n):
    rs = root_system(t, n)
    c = enumerate_coxeter_elements(rs)[0]
    nc = build_nc(c)
    assert nc.bottom == rs.identity and nc.top == c.element
    for a, b, tt in nc.kreweras_hasse:
        assert a * tt == b and rs.is_reflection(tt)
        assert absolute_length(b) == absolute_length(a) + 1
    for u in nc.elements:
        assert absolute_leq(u, c.element)
    assert all(is_noncrossing(u, c) for u in nc.elements)


B2_TABLE = [
    # sortable word, noncrossing word, Inv_NC words, Clust+ coordinates (alpha_0, alpha_1)
    ((), (), [], []),
    ((0,), (0,), [(0,)], [(1, 0)]),
    ((1,), (1,), [(1,)], [(0, 1)]),
    ((0, 1), (0, 1, 0), [(0, 1, 0), (1, 0, 1)], [(2, 1), (1, 0)]),
    ((0, 1, 0), (1, 0, 1), [(1,), (1, 0, 1)], [(2, 1), (1, 1)]),
    ((0, 1, 0, 1), (0, 1), [(0,), (0, 1, 0)], [(1, 1), (0, 1)]),
]


def test_b2_table():
    from coxcat.sortable import nc_c, sortable_elements
    rs = root_system("B", 2)
    c = coxeter_element(rs, [0, 1])
    nc = build_nc(c)
    assert len(nc.elements) == 6
    assert len(sortable_elements(c)) == 6
    for sw, uw, invs, clust in B2_TABLE:
        x, u = rs.from_word(sw), rs.from_word(uw)
        assert nc_c(x, c) == u
        assert inv_nc(nc, u) == {rs.from_word(w) for w in invs}
        assert {r.coords for r in clust_plus(nc, u)} == set(clust)


def test_cluster_size_is_support_size_not_reflection_length():
    rs = root_system("A", 3)
    c = coxeter_element(rs, [3, 2, 1])
    nc = build_nc(c)
    u = rs.from_one_line((4, 3, 2, 1))
    assert u in nc
    assert absolute_length(u) == 2
    assert len(clust_plus(nc, u)) == len(support(u)) == 3


@pytest.mark.parametrize("t,n", GROUPS)
def test_cluster_properties(t, n):
    rs = root_system(t, n)
    for c in enumerate_coxeter_elements(rs)[:2]:
        assert verify_clusters(c) == []
        nc = build_nc(c)
        for u in nc.elements:
            assert len(nc.clust_plus[u]) == len(support(u))
            assert (len(nc.clust_plus[u]) == n) == full_support(u)


def _det(M):
    M = [[Fraction(x) for x in r] for r in M]
    n = len(M)
    d = Fraction(1)
    for i in range(n):
        p = next((r for r in range(i, n) if M[r][i]), None)
        if p is None:
            return 0
        if p != i:
            M[i], M[p] = M[p], M[i]
            d = -d
        d *= M[i][i]
        for r in range(i + 1, n):
            f = M[r][i] / M[i][i]
            M[r] = [a - f * b for a, b in zip(M[r], M[i])]
    return d


@pytest.mark.parametrize("t,n", [("B", 3), ("D", 4), ("C", 3)])
def test_completion_is_unimodular(t, n):
    rs = root_system(t, n)
    c = enumerate_coxeter_elements(rs)[-1]
    nc = build_nc(c)
    for u in nc.elements:
        roots = sorted(r.coords for r in nc.clust_plus[u])
        basis = cluster_complete_to_basis(rs, roots)
        assert basis[:len(roots)] == roots
        assert abs(_det(basis)) == 1


def test_completion_failures():
    rs = root_system("B", 2)
    with pytest.raises(CompletionError):
        cluster_complete_to_basis(rs, [(1, 0), (2, 0)])
    with pytest.raises(CompletionError):
        cluster_complete_to_basis(rs, [(2, 0)])


def test_strong_closure_examples():
    rs = root_system("B", 2)
    assert not strong_closure_check(rs, [(2, 1), (0, 1)])
    assert strong_closure_check(rs, [(2, 1), (1, 0)])
    assert strong_closure_check(rs, [(1, 0)])
    with pytest.raises(ValidationError):
        strong_closure_check(rs, [(3, 1)])


def _in_cone_lp(beta, gens):
    import numpy as np
    from scipy.optimize import linprog
    A = np.array(gens, dtype=float).T
    res = linprog(np.zeros(len(gens)), A_eq=A, b_eq=np.array(beta, dtype=float),
                  bounds=[(0, None)] * len(gens), method="highs")
    return res.status == 0


@settings(max_examples=40, deadline=None)
@given(st.sets(st.integers(0, 17), min_size=1, max_size=4))
def test_strong_closure_against_lp(idx):
    rs = root_system("B", 3)
    gens = [rs.roots[i] for i in sorted(idx)]
    S = set(gens)
    expected = not any(_in_cone_lp(b, gens) for b in rs.roots if b not in S)
    assert strong_closure_check(rs, gens) == expected
