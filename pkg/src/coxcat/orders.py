"""
Bruhat, weak and absolute orders, Bruhat intervals and reflection orders.

Bruhat comparison uses the one-sided descent recursion; the subword
property is kept as an independent check. Edges of Hasse diagrams carry
the reflection ``t`` with ``upper = lower * t``. Right labels are what
survives left translation of an interval, which is why they are used.

>>> from coxcat.rootsys import root_system
>>> rs = root_system("A", 2)
>>> s1, s2 = rs.simple(0), rs.simple(1)
>>> bruhat_leq(s1, s1 * s2 * s1), bruhat_leq(s1 * s2, s2 * s1)
(True, False)
>>> absolute_length(s1 * s2), absolute_length(rs.w0)
(2, 1)
>>> len(bruhat_interval(rs.identity, rs.w0).elements)
6
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .rootsys import (
    MixedGroupError, Reflection, RootSystemData, ValidationError, WeylElement,
)

__all__ = [
    "bruhat_leq", "bruhat_leq_subword", "bruhat_covers", "bruhat_upper_covers",
    "weak_leq", "descents", "inversions", "inversions_from_word",
    "absolute_length", "absolute_leq", "matrix_rank",
    "BruhatInterval", "bruhat_interval", "ReflectionOrder", "reflection_order_from_word",
    "is_valid_reflection_order", "el_decreasing_chains", "el_increasing_chains",
    "hasse_to_dot", "hasse_to_json", "element_label",
]


def _same(u: WeylElement, v: WeylElement):
    if u.rs is not v.rs:
        raise MixedGroupError("elements belong to different groups")


def _cache(rs: RootSystemData, name: str) -> dict:
    d = rs.__dict__.setdefault("_order_caches", {})
    return d.setdefault(name, {})


def bruhat_leq(u: WeylElement, v: WeylElement) -> bool:
    """Bruhat comparison by peeling a right descent off v."""
    _same(u, v)
    cache = _cache(u.rs, "bruhat")
    k = (u.key, v.key)
    hit = cache.get(k)
    if hit is not None:
        return hit
    if u.length > v.length:
        res = False
    elif u.length == v.length:
        res = u == v
    elif u.length == 0:
        res = True
    else:
        i = min(v.right_descents())
        s = v.rs.simple(i)
        vs = v * s
        res = bruhat_leq(u * s if u.is_right_descent(i) else u, vs)
    cache[k] = res
    return res


def bruhat_leq_subword(u: WeylElement, v: WeylElement) -> bool:
    """Subword criterion: u is a product of a subword of a reduced word of v."""
    _same(u, v)
    reach = {v.rs.identity}
    for i in v.word:
        s = v.rs.simple(i)
        reach |= {x * s for x in reach}
    return u in reach


def bruhat_covers(v: WeylElement) -> list[WeylElement]:
    """Lower covers: tv with t a left inversion and length dropping by one."""
    rs = v.rs
    out = []
    for i in v.inversion_set:
        x = rs.reflection(i).element * v
        if x.length == v.length - 1:
            out.append(x)
    return sorted(out)


def bruhat_upper_covers(v: WeylElement) -> list[WeylElement]:
    rs = v.rs
    out = []
    for i in range(rs.n_pos):
        if i in v.inversion_set:
            continue
        x = rs.reflection(i).element * v
        if x.length == v.length + 1:
            out.append(x)
    return sorted(out)


def weak_leq(u: WeylElement, v: WeylElement) -> bool:
    """Right weak order: some reduced word of u is a prefix of one for v."""
    _same(u, v)
    return u.inversion_set <= v.inversion_set


def descents(w: WeylElement, side: str = "right") -> frozenset[int]:
    if side == "right":
        return w.right_descents()
    if side == "left":
        return w.left_descents()
    raise ValidationError("side must be 'left' or 'right'")


def inversions(w: WeylElement) -> set[Reflection]:
    """Reflections t with l(tw) < l(w)."""
    return {w.rs.reflection(i) for i in w.inversion_set}


def inversions_from_word(rs: RootSystemData, word: Sequence[int]) -> list[WeylElement]:
    """The reflections s1..s(j-1) sj s(j-1)..s1 read off a word, in order."""
    out = []
    prefix = rs.identity
    for i in word:
        s = rs.simple(i)
        out.append(prefix * s * prefix.inverse())
        prefix = prefix * s
    return out


def matrix_rank(rows: Sequence[Sequence]) -> int:
    M = [[Fraction(x) for x in r] for r in rows]
    rank = 0
    ncols = len(M[0]) if M else 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(M)) if M[r][col]), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        for r in range(rank + 1, len(M)):
            if M[r][col]:
                f = M[r][col] / M[rank][col]
                M[r] = [a - f * b for a, b in zip(M[r], M[rank])]
        rank += 1
    return rank


def absolute_length(w: WeylElement) -> int:
    """Reflection length, as the rank of (w - 1) on the root lattice."""
    cache = _cache(w.rs, "lT")
    r = cache.get(w.key)
    if r is None:
        M = w.matrix
        n = len(M)
        r = matrix_rank([[M[i][j] - (i == j) for j in range(n)] for i in range(n)])
        cache[w.key] = r
    return r


def absolute_leq(u: WeylElement, v: WeylElement) -> bool:
    _same(u, v)
    return absolute_length(v) == absolute_length(u) + absolute_length(u.inverse() * v)


def element_label(w: WeylElement) -> str:
    from .rootsys import format_one_line
    ol = w.one_line
    if ol is not None:
        return format_one_line(ol)
    return "s" + "".join(str(x) for x in w.word_labels) if w.length else "e"


@dataclass
class BruhatInterval:
    """Elements of [bottom, top] with right-labelled Hasse edges."""
    bottom: WeylElement
    top: WeylElement
    elements: list[WeylElement] = field(default_factory=list)
    hasse_edges: list[tuple[WeylElement, WeylElement, WeylElement]] = field(default_factory=list)

    @property
    def rank(self) -> int:
        return self.top.length - self.bottom.length

    def __len__(self):
        return len(self.elements)

    def __contains__(self, x):
        return x in set(self.elements)


def bruhat_interval(u: WeylElement, v: WeylElement) -> BruhatInterval:
    """The interval [u, v]; empty when u is not below v."""
    _same(u, v)
    if not bruhat_leq(u, v):
        return BruhatInterval(u, v, [], [])
    seen = {v}
    frontier = [v]
    edges = []
    while frontier:
        new = []
        for y in frontier:
            for x in bruhat_covers(y):
                if not bruhat_leq(u, x):
                    continue
                edges.append((x, y, x.inverse() * y))
                if x not in seen:
                    seen.add(x)
                    new.append(x)
        frontier = new
    edges.sort(key=lambda e: (e[0], e[1]))
    return BruhatInterval(u, v, sorted(seen), edges)


@dataclass
class ReflectionOrder:
    """A total order on reflections, usually read off a reduced word of w0."""
    reflections: list[WeylElement]
    source_word: tuple[int, ...] = ()

    def __post_init__(self):
        self._pos = {t.key: i for i, t in enumerate(self.reflections)}

    def position(self, t: WeylElement) -> int:
        try:
            return self._pos[t.key]
        except KeyError:
            raise ValidationError(f"{t!r} is not in the reflection order") from None

    def precedes(self, a: WeylElement, b: WeylElement) -> bool:
        return self.position(a) < self.position(b)


def reflection_order_from_word(rs: RootSystemData, word: Sequence[int]) -> ReflectionOrder:
    w = rs.from_word(word)
    if w != rs.w0 or len(word) != rs.n_pos:
        raise ValidationError("need a reduced word for the longest element")
    return ReflectionOrder(inversions_from_word(rs, word), tuple(word))


def is_valid_reflection_order(order: ReflectionOrder) -> bool:
    """Betweenness: a root in the open cone of two others sits between them."""
    rs = order.reflections[0].rs
    pos = {}
    for t in order.reflections:
        pos[rs.reflection_root_index(t)] = order.position(t)
    if len(pos) != rs.n_pos:
        return False
    roots = rs.roots
    for b in range(rs.n_pos):
        for g in range(b + 1, rs.n_pos):
            B, G = roots[b], roots[g]
            for a in range(rs.n_pos):
                if a in (b, g):
                    continue
                if _in_open_cone(roots[a], B, G):
                    lo, hi = sorted((pos[b], pos[g]))
                    if not lo < pos[a] < hi:
                        return False
    return True


def _in_open_cone(a, b, g) -> bool:
    # solve a = x b + y g over Q using a 2x2 nonsingular minor
    n = len(a)
    for i in range(n):
        for j in range(i + 1, n):
            det = b[i] * g[j] - b[j] * g[i]
            if det:
                x = Fraction(a[i] * g[j] - a[j] * g[i], det)
                y = Fraction(b[i] * a[j] - b[j] * a[i], det)
                if x <= 0 or y <= 0:
                    return False
                return all(a[k] == x * b[k] + y * g[k] for k in range(n))
    return False


def _poset_parts(poset):
    bottom, top = poset.bottom, poset.top
    edges = poset.hasse_edges
    return bottom, top, edges


def _check_graded(bottom, edges):
    rank = {bottom: 0}
    adj: dict = {}
    for x, y, t in edges:
        adj.setdefault(x, []).append((y, t))
    frontier = [bottom]
    while frontier:
        new = []
        for x in frontier:
            for y, _ in adj.get(x, ()):
                r = rank[x] + 1
                if y in rank:
                    if rank[y] != r:
                        raise ValidationError("poset is not graded")
                else:
                    rank[y] = r
                    new.append(y)
        frontier = new
    return adj


def _monotone_chains(poset, order: ReflectionOrder, decreasing: bool):
    bottom, top, edges = _poset_parts(poset)
    adj = _check_graded(bottom, edges)
    chains = []

    def dfs(x, last, path):
        if x == top:
            chains.append(list(path))
            return
        for y, t in adj.get(x, ()):
            p = order.position(t)
            if last is not None and (p >= last if decreasing else p <= last):
                continue
            path.append(y)
            dfs(y, p, path)
            path.pop()

    dfs(bottom, None, [bottom])
    return chains


def el_decreasing_chains(poset, order: ReflectionOrder) -> tuple[int, list[list[WeylElement]]]:
    """Maximal chains whose edge labels strictly decrease going up.

    ``poset`` is anything with ``bottom``, ``top`` and right-labelled
    ``hasse_edges``: a Bruhat interval, a translated interval or a
    noncrossing partition lattice.
    """
    chains = _monotone_chains(poset, order, True)
    return len(chains), chains


def el_increasing_chains(poset, order: ReflectionOrder) -> tuple[int, list[list[WeylElement]]]:
    chains = _monotone_chains(poset, order, False)
    return len(chains), chains


def _edge_label(t: WeylElement) -> str:
    rs = t.rs
    if rs.is_reflection(t):
        return str(rs.root(rs.reflection_root_index(t)).coords)
    return element_label(t)


def hasse_to_dot(poset, name: str = "hasse") -> str:
    lines = [f"digraph {name} {{", "  rankdir=BT;"]
    for x in sorted({e[0] for e in poset.hasse_edges} | {e[1] for e in poset.hasse_edges}
                    | {poset.bottom, poset.top}):
        lines.append(f'  "{element_label(x)}";')
    for x, y, t in poset.hasse_edges:
        lines.append(f'  "{element_label(x)}" -> "{element_label(y)}" [label="{_edge_label(t)}"];')
    lines.append("}")
    return "\n".join(lines)


def hasse_to_json(poset) -> str:
    verts = sorted({e[0] for e in poset.hasse_edges} | {e[1] for e in poset.hasse_edges}
                   | {poset.bottom, poset.top})
    data = {
        "vertices": [element_label(x) for x in verts],
        "edges": [[element_label(x), element_label(y), _edge_label(t)]
                  for x, y, t in poset.hasse_edges],
    }
    return json.dumps(data, sort_keys=True)
