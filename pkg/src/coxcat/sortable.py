"""
c-sorting words, c-sortable elements and their skip reflections.

The c-sorting word of x is the leftmost reduced subword of c c c ... that
spells x. It splits into syllables, one per copy of c, and x is c-sortable
when each syllable contains the next. Every simple reflection s is first
omitted at some position of c c c ...; the reflection y s y^-1, with y
the part of the word read so far, is the skip at that position. A skip is
forced when y s is shorter than y.

>>> from coxcat.rootsys import root_system
>>> from coxcat.catalan import coxeter_element
>>> rs = root_system("A", 4)
>>> c = coxeter_element(rs, [2, 1, 3, 4])
>>> x = rs.from_one_line((3, 5, 4, 2, 1))
>>> [sorted(rs.datum.labels[i] for i in syl) for syl in c_sorting_word(x, c).syllables]
[[1, 2, 3, 4], [2, 3, 4], [2]]
>>> nc_c(x, c).one_line
(4, 1, 3, 5, 2)
>>> is_sortable(rs.from_one_line((5, 3, 4, 2, 1)), c)
False
"""

from __future__ import annotations

from dataclasses import dataclass

from .catalan import CoxeterElement
from .orders import ReflectionOrder, reflection_order_from_word, weak_leq
from .rootsys import ValidationError, WeylElement

__all__ = [
    "SortingWord", "SkipData", "c_sorting_word", "is_sortable", "sortable_elements",
    "pi_down", "pi_up", "cambrian_class", "skips", "nc_c", "cover_reflections",
    "psi_labels", "inverse_coxeter", "coxeter_reflection_order",
]


@dataclass(frozen=True)
class SortingWord:
    """Letters of x taken from c c c ..., split by copy of c."""
    element: WeylElement
    letters: tuple[int, ...]
    positions: tuple[int, ...]  # 0-based positions in c c c ...
    syllables: tuple[frozenset[int], ...]

    @property
    def sortable(self) -> bool:
        return all(b <= a for a, b in zip(self.syllables, self.syllables[1:]))


@dataclass(frozen=True)
class SkipData:
    positions: tuple[int, ...]
    reflections: tuple[WeylElement, ...]
    forced: tuple[bool, ...]

    @property
    def fs(self) -> list[WeylElement]:
        return [t for t, f in zip(self.reflections, self.forced) if f]

    @property
    def ufs(self) -> list[WeylElement]:
        return [t for t, f in zip(self.reflections, self.forced) if not f]


def c_sorting_word(x: WeylElement, c: CoxeterElement) -> SortingWord:
    rs = x.rs
    n = rs.rank
    z = x
    letters, positions = [], []
    p = 0
    while z.length:
        s = c.word[p % n]
        if z.is_left_descent(s):
            letters.append(s)
            positions.append(p)
            z = rs.simple(s) * z
        p += 1
    copies = positions[-1] // n + 1 if positions else 0
    syl = [set() for _ in range(copies)]
    for s, q in zip(letters, positions):
        syl[q // n].add(s)
    return SortingWord(x, tuple(letters), tuple(positions), tuple(frozenset(a) for a in syl))


def is_sortable(x: WeylElement, c: CoxeterElement) -> bool:
    return c_sorting_word(x, c).sortable


def sortable_elements(c: CoxeterElement) -> list[WeylElement]:
    """All c-sortable elements, memoized per Coxeter element."""
    cache = c.rs.__dict__.setdefault("_sortable_cache", {})
    key = c.element.key
    if key not in cache:
        cache[key] = [x for x in c.rs.elements() if is_sortable(x, c)]
    return cache[key]


def inverse_coxeter(c: CoxeterElement) -> CoxeterElement:
    w = tuple(reversed(c.word))
    return CoxeterElement(c.rs.from_word(w), w)


def pi_down(x: WeylElement, c: CoxeterElement) -> WeylElement:
    """Largest c-sortable element below x in right weak order."""
    if is_sortable(x, c):
        return x
    best = None
    for y in sortable_elements(c):
        if y.length < x.length and weak_leq(y, x):
            if best is None or y.length > best.length:
                best = y
    return best


def pi_up(x: WeylElement, c: CoxeterElement) -> WeylElement:
    w0 = x.rs.w0
    return pi_down(x * w0, inverse_coxeter(c)) * w0


def cambrian_class(x: WeylElement, c: CoxeterElement) -> list[WeylElement]:
    """Elements with the same bottom projection as x."""
    b = pi_down(x, c)
    return [y for y in x.rs.elements() if pi_down(y, c) == b]


def skips(x: WeylElement, c: CoxeterElement) -> SkipData:
    sw = c_sorting_word(x, c)
    if not sw.sortable:
        raise ValidationError(f"{x!r} is not c-sortable")
    rs = x.rs
    n = rs.rank
    used = {s: 0 for s in range(n)}
    for s in sw.letters:
        used[s] += 1
    slot = {s: i for i, s in enumerate(c.word)}
    found = sorted((used[s] * n + slot[s], s) for s in range(n))
    refl, forced = [], []
    for pos, s in found:
        y = rs.identity
        for t, q in zip(sw.letters, sw.positions):
            if q >= pos:
                break
            y = y * rs.simple(t)
        ys = y * rs.simple(s)
        refl.append(ys * y.inverse())
        forced.append(ys.length < y.length)
    return SkipData(tuple(p for p, _ in found), tuple(refl), tuple(forced))


def nc_c(x: WeylElement, c: CoxeterElement) -> WeylElement:
    """Product of the forced skips in position order."""
    out = x.rs.identity
    for t in skips(x, c).fs:
        out = out * t
    return out


def cover_reflections(x: WeylElement) -> set[WeylElement]:
    """Reflections x s x^-1 for right descents s of x."""
    rs = x.rs
    return {x * rs.simple(s) * x.inverse() for s in x.right_descents()}


def coxeter_reflection_order(c: CoxeterElement) -> ReflectionOrder:
    """Reflection order read off the c-sorting word of the longest element."""
    rs = c.rs
    return reflection_order_from_word(rs, c_sorting_word(rs.w0, c).letters)


def psi_labels(w: WeylElement, c: CoxeterElement) -> list[WeylElement]:
    """Labels of the c-decreasing chain in w^-1 [w, wc], built from skips.

    With x the bottom projection of w^-1 w0, take the skips phi_i of c^-1 x
    and return phi_1..phi_(i-1) phi_i phi_(i-1)..phi_1 for each i.
    """
    rs = w.rs
    if (w * c.element).length != w.length + rs.rank:
        raise ValidationError("lengths of w and c do not add")
    x = pi_down(w.inverse() * rs.w0, c)
    phis = skips(c.element.inverse() * x, c).reflections
    out = []
    prefix = rs.identity
    for phi in phis:
        out.append(prefix * phi * prefix.inverse())
        prefix = prefix * phi
    return out
