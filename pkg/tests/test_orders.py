import json
from types import SimpleNamespace

import pytest
from hypothesis import given, settings, strategies as st

from coxcat.rootsys import MixedGroupError, root_system
from coxcat.orders import (
    absolute_leq, absolute_length, bruhat_covers, bruhat_interval, bruhat_leq,
    bruhat_leq_subword, bruhat_upper_covers, el_decreasing_chains, el_increasing_chains,
    hasse_to_dot, hasse_to_json, inversions_from_word, is_valid_reflection_order,
    reflection_order_from_word, weak_leq, ReflectionOrder,
)
from coxcat.rootsys import CoxcatError


def reflection_length_bfs(rs):
    """Absolute length by breadth-first search with all reflections as generators."""
    dist = {rs.identity: 0}
    frontier = [rs.identity]
    while frontier:
        new = []
        for w in frontier:
            for t in rs.reflections:
                x = w * t.element
                if x not in dist:
                    dist[x] = dist[w] + 1
                    new.append(x)
        frontier = new
    return dist


@pytest.mark.parametrize("t,n", [("A", 3), ("B", 3)])
def test_bruhat_matches_subword_criterion(t, n):
    rs = root_system(t, n)
    els = rs.elements()
    for u in els:
        for v in els:
            assert bruhat_leq(u, v) == bruhat_leq_subword(u, v)


@pytest.mark.parametrize("t,n", [("A", 3), ("B", 3), ("D", 4)])
def test_absolute_length_matches_bfs(t, n):
    rs = root_system(t, n)
    dist = reflection_length_bfs(rs)
    assert all(absolute_length(w) == d for w, d in dist.items())


def test_weak_order_is_length_additive_prefix():
    rs = root_system("A", 3)
    for u in rs.elements():
        for v in rs.elements():
            assert weak_leq(u, v) == ((u.inverse() * v).length == v.length - u.length)


def test_covers_are_inverse_relations():
    rs = root_system("B", 3)
    for v in rs.elements():
        for u in bruhat_covers(v):
            assert v in bruhat_upper_covers(u)
            assert bruhat_leq(u, v) and u.length == v.length - 1


def test_interval_and_hasse_exports():
    rs = root_system("A", 2)
    I = bruhat_interval(rs.identity, rs.w0)
    assert len(I.elements) == 6 and I.rank == 3
    assert len(I.hasse_edges) == 8
    data = json.loads(hasse_to_json(I))
    assert len(data["vertices"]) == 6 and len(data["edges"]) == 8
    assert hasse_to_dot(I).startswith("digraph")


def test_empty_interval():
    rs = root_system("A", 2)
    s1, s2 = rs.simple(0), rs.simple(1)
    assert bruhat_interval(s1, s2).elements == []


def test_reflection_order_from_reduced_word_is_valid():
    rs = root_system("B", 3)
    order = reflection_order_from_word(rs, rs.w0.word)
    assert len(order.reflections) == rs.n_pos
    assert is_valid_reflection_order(order)



def test_swapped_reflection_order_is_invalid():
    rs = root_system("A", 2)
    a, b, c = reflection_order_from_word(rs, [0, 1, 0]).reflections
    assert is_valid_reflection_order(ReflectionOrder([c, b, a], ()))
    assert not is_valid_reflection_order(ReflectionOrder([b, a, c], ()))


def test_inversions_from_word_are_distinct_for_reduced_words():
    rs = root_system("A", 4)
    invs = inversions_from_word(rs, rs.w0.word)
    assert len(set(invs)) == rs.n_pos


@pytest.mark.parametrize("t,n", [("A", 3), ("B", 2)])
def test_bruhat_intervals_have_one_increasing_and_one_decreasing_chain(t, n):
    rs = root_system(t, n)
    order = reflection_order_from_word(rs, rs.w0.word)
    els = rs.elements()
    for u in els[::3]:
        for v in els[::2]:
            if bruhat_leq(u, v) and u != v:
                I = bruhat_interval(u, v)
                assert el_increasing_chains(I, order)[0] == 1
                assert el_decreasing_chains(I, order)[0] == 1


def test_non_graded_poset_is_rejected():
    rs = root_system("A", 2)
    e, s, t = rs.identity, rs.simple(0), rs.simple(1)
    st_ = s * t
    poset = SimpleNamespace(bottom=e, top=st_, hasse_edges=[(e, s, s), (s, st_, t), (e, st_, st_)])
    order = reflection_order_from_word(rs, rs.w0.word)
    with pytest.raises(CoxcatError):
        el_decreasing_chains(poset, order)


def test_mixed_groups_raise():
    with pytest.raises(MixedGroupError):
        bruhat_leq(root_system("A", 2).identity, root_system("B", 2).identity)


@settings(max_examples=40, deadline=None)
@given(st.permutations(range(1, 6)), st.permutations(range(1, 6)))
def test_absolute_order_properties(p, q):
    rs = root_system("A", 4)
    u, v = rs.from_one_line(p), rs.from_one_line(q)
    assert absolute_length(u) == absolute_length(u.inverse())
    assert absolute_length(u * v) <= absolute_length(u) + absolute_length(v)
    assert absolute_leq(rs.identity, u)
    if absolute_leq(u, v):
        assert absolute_length(u) <= absolute_length(v)
