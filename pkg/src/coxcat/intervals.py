"""
Translated Bruhat intervals w^-1 [w, wc] inside the noncrossing partitions.

When the lengths of w and c add, left translation by w^-1 carries [w, wc]
onto a rank-n subposet of NC(W, c) running from the identity to c. This
module builds these translates, groups the w's that give the same one, and
checks how the top element and its neighbours are determined by the
c-sortable element below w^-1 w0.

>>> from coxcat.rootsys import root_system
>>> from coxcat.catalan import coxeter_element
>>> rs = root_system("A", 4)
>>> c = coxeter_element(rs, [2, 1, 3, 4])
>>> I = translated_interval(rs.from_one_line((1, 2, 5, 3, 4)), c)
>>> len(I.elements), I.bruhat_max.one_line
(16, (4, 1, 3, 5, 2))
>>> sorted(x.one_line for x in I.neighbors_of_max())
[(1, 4, 3, 5, 2), (2, 1, 3, 5, 4), (3, 1, 4, 5, 2), (4, 1, 3, 2, 5)]
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .catalan import CoxeterElement, build_nc, support
from .orders import (
    BruhatInterval, absolute_leq, bruhat_interval, bruhat_leq, el_decreasing_chains, weak_leq,
)
from .rootsys import CoxcatError, ValidationError, WeylElement
from .sortable import (
    coxeter_reflection_order, nc_c, pi_down, skips, sortable_elements,
)

__all__ = [
    "TranslatedInterval", "is_length_additive", "translated_interval", "length_additive_elements",
    "shape_equivalent", "Classification", "classify_translates", "representative_for",
    "biane_inversions", "right_inv_nc", "sortable_preimage",
    "HasseUnionReport", "verify_hasse_union",
]


def is_length_additive(w: WeylElement, c: CoxeterElement) -> bool:
    return (w * c.element).length == w.length + c.rs.rank


def length_additive_elements(c: CoxeterElement) -> list[WeylElement]:
    return [w for w in c.rs.elements() if is_length_additive(w, c)]


@dataclass
class TranslatedInterval:
    base_w: WeylElement
    coxeter: CoxeterElement
    interval: BruhatInterval
    elements: list[WeylElement]
    induced_hasse: list[tuple[WeylElement, WeylElement, WeylElement]]
    bruhat_max: WeylElement

    @property
    def bottom(self) -> WeylElement:
        return self.coxeter.rs.identity

    @property
    def top(self) -> WeylElement:
        return self.coxeter.element

    @property
    def hasse_edges(self):
        return self.induced_hasse

    @property
    def key(self) -> frozenset:
        return frozenset(x.key for x in self.elements)

    def neighbors_of_max(self) -> list[WeylElement]:
        """Elements joined to the Bruhat-maximal element in the translated Hasse diagram."""
        u = self.bruhat_max
        out = [a for a, b, _ in self.induced_hasse if b == u]
        out += [b for a, b, _ in self.induced_hasse if a == u]
        return sorted(set(out))

    def decreasing_chain(self) -> list[WeylElement]:
        count, chains = el_decreasing_chains(self, coxeter_reflection_order(self.coxeter))
        if count != 1:
            raise CoxcatError(f"expected one c-decreasing chain, found {count}")
        return chains[0]

    def decreasing_labels(self) -> list[WeylElement]:
        ch = self.decreasing_chain()
        return [a.inverse() * b for a, b in zip(ch, ch[1:])]


def translated_interval(w: WeylElement, c: CoxeterElement) -> TranslatedInterval:
    if not is_length_additive(w, c):
        raise ValidationError("lengths of w and c do not add")
    I = bruhat_interval(w, w * c.element)
    wi = w.inverse()
    elems = sorted(wi * x for x in I.elements)
    edges = [(wi * x, wi * y, t) for x, y, t in I.hasse_edges]
    maximal = [x for x in elems if all(bruhat_leq(y, x) for y in elems)]
    if len(maximal) != 1:
        raise CoxcatError("translated interval has no Bruhat maximum")
    return TranslatedInterval(w, c, I, elems, edges, maximal[0])


def shape_equivalent(u: WeylElement, v: WeylElement, u2: WeylElement, v2: WeylElement) -> bool:
    """Whether u2 u^-1 carries [u, v] onto [u2, v2]."""
    if not (bruhat_leq(u, v) and bruhat_leq(u2, v2)):
        raise ValidationError("arguments must be Bruhat intervals")
    A = bruhat_interval(u, v).elements
    B = set(bruhat_interval(u2, v2).elements)
    g = u2 * u.inverse()
    return len(A) == len(B) and all(g * x in B for x in A)


def sortable_preimage(u: WeylElement, c: CoxeterElement) -> WeylElement:
    """The c-sortable x with c below x in weak order and nc_c(x) = u."""
    for x in sortable_elements(c):
        if weak_leq(c.element, x) and nc_c(x, c) == u:
            return x
    raise ValidationError(f"{u!r} is not a fully supported noncrossing partition")


def right_inv_nc(u: WeylElement, c: CoxeterElement) -> frozenset[WeylElement]:
    nc = build_nc(c)
    ui = u.inverse()
    return frozenset(ui * t * u for t in nc.inv_nc[u])


def biane_inversions(u: WeylElement, c: CoxeterElement) -> frozenset[WeylElement]:
    """Right noncrossing inversions from the skip factorizations of u and u^-1 c.

    Forced skips t_1..t_k factor u and conjugated unforced skips c^-1 ufs_i c
    factor u^-1 c; deleting one factor at a time gives the reflections.
    """
    x = sortable_preimage(u, c)
    sk = skips(x, c)
    rs = u.rs
    ce = c.element
    head = list(sk.fs)
    tail = [ce.inverse() * t * ce for t in sk.ufs]

    def prod(ts):
        out = rs.identity
        for t in ts:
            out = out * t
        return out

    if prod(head) != u or prod(tail) != u.inverse() * ce:
        raise CoxcatError("skip factorizations do not multiply out")
    out = set()
    for i in range(len(head)):
        out.add(u.inverse() * prod(head[:i] + head[i + 1:]))
    full = prod(tail)
    for i in range(len(tail)):
        out.add(prod(tail[:i] + tail[i + 1:]) * full.inverse())
    return frozenset(out)


@dataclass
class Classification:
    """Length-additive w's grouped by their translated interval."""
    coxeter: CoxeterElement
    classes: dict = field(default_factory=dict)   # bruhat max u -> list of w
    intervals: dict = field(default_factory=dict)  # u -> TranslatedInterval
    failures: list = field(default_factory=list)
    checked: int = 0

    @property
    def ok(self) -> bool:
        return not self.failures


def classify_translates(c: CoxeterElement) -> Classification:
    """Group the w's and check that three descriptions of a group agree.

    Two w's fall together when their translated intervals coincide. This
    must match equality of the bottom projections of w^-1 w0 and equality of
    the c-decreasing chains, the top element must be nc_c of that
    projection, and the neighbours of the top must be t u with t a
    noncrossing inversion of u.
    """
    rs = c.rs
    nc = build_nc(c)
    order = coxeter_reflection_order(c)
    res = Classification(c)
    by_set, by_proj, by_chain = {}, {}, {}
    for w in length_additive_elements(c):
        res.checked += 1
        I = translated_interval(w, c)
        proj = pi_down(w.inverse() * rs.w0, c)
        count, chains = el_decreasing_chains(I, order)
        if count != 1:
            res.failures.append({"w": w, "reason": "decreasing chain count", "count": count})
            continue
        chain = tuple(x.key for x in chains[0])
        by_set.setdefault(I.key, set()).add(w)
        by_proj.setdefault(proj.key, set()).add(w)
        by_chain.setdefault(chain, set()).add(w)
        u = I.bruhat_max
        if any(x not in nc for x in I.elements):
            res.failures.append({"w": w, "reason": "element outside NC"})
        if nc_c(proj, c) != u:
            res.failures.append({"w": w, "reason": "Bruhat max differs from nc_c", "u": u})
        expected = sorted(t * u for t in nc.inv_nc[u])
        if I.neighbors_of_max() != expected:
            res.failures.append({"w": w, "reason": "neighbours of the max", "u": u})
        res.classes.setdefault(u, []).append(w)
        res.intervals.setdefault(u, I)
    parts = lambda d: sorted(sorted(x.key for x in s) for s in d.values())
    if not (parts(by_set) == parts(by_proj) == parts(by_chain)):
        res.failures.append({"reason": "partitions disagree"})
    if len(by_set) != len(res.classes):
        res.failures.append({"reason": "distinct intervals share a Bruhat max"})
    if sorted(res.classes) != sorted(nc.positive_subset):
        res.failures.append({"reason": "Bruhat maxima are not the fully supported elements"})
    return res


def representative_for(u: WeylElement, c: CoxeterElement):
    """Find w' in the support parabolic with u the top of w'^-1 [w', w' c'].

    c' is the subword of c on the support of u. Returns (w', c' word, c').
    """
    rs = u.rs
    nc = build_nc(c)
    if u not in nc:
        raise ValidationError(f"{u!r} is not noncrossing for this Coxeter element")
    J = support(u)
    cword = tuple(s for s in c.word if s in J)
    cp = rs.from_word(cword)
    k = len(cword)
    for w in rs.parabolic(J):
        top = w * cp
        if top.length != w.length + k:
            continue
        wi = w.inverse()
        elems = [wi * x for x in bruhat_interval(w, top).elements]
        m = max(elems, key=lambda x: x.length)
        if m == u and all(bruhat_leq(y, m) for y in elems):
            return w, cword, cp
    raise CoxcatError(f"no representative found for {u!r}")


@dataclass
class HasseUnionReport:
    coxeter: CoxeterElement
    checked: int = 0
    failures: list = field(default_factory=list)
    edges_covered: bool = False

    @property
    def ok(self) -> bool:
        return not self.failures and self.edges_covered


def verify_hasse_union(c: CoxeterElement) -> HasseUnionReport:
    """Each translate lies in NC(W, c), Bruhat order on [w, wc] matches
    absolute order on the translate, and the translated Hasse diagrams
    together give the Kreweras Hasse diagram.
    """
    nc = build_nc(c)
    rep = HasseUnionReport(c)
    seen = set()
    for w in length_additive_elements(c):
        rep.checked += 1
        I = translated_interval(w, c)
        wi = w.inverse()
        outside = [x for x in I.elements if x not in nc]
        if outside:
            rep.failures.append({"w": w, "reason": "translate leaves NC", "element": outside[0]})
            continue
        for x in I.interval.elements:
            for y in I.interval.elements:
                if bruhat_leq(x, y) != absolute_leq(wi * x, wi * y):
                    rep.failures.append({"w": w, "reason": "orders differ", "pair": (x, y)})
                    break
        seen |= {(a.key, b.key) for a, b, _ in I.induced_hasse}
    kre = {(a.key, b.key) for a, b, _ in nc.kreweras_hasse}
    rep.edges_covered = seen == kre
    if seen - kre:
        rep.failures.append({"reason": "translated cover is not a Kreweras cover"})
    return rep
