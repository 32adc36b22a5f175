"""
Coxeter elements and noncrossing partitions.

``build_nc`` collects the elements below a Coxeter element c in absolute
order, with the Kreweras covers, the fully supported elements and the map
sending u to the positive roots of its noncrossing inversions conjugated
back by u.

>>> from coxcat.rootsys import root_system
>>> rs = root_system("B", 2)
>>> nc = build_nc(coxeter_element(rs, [0, 1]))
>>> len(nc.elements), len(nc.positive_subset)
(6, 3)
>>> c = nc.coxeter.element
>>> sorted(r.coords for r in nc.clust_plus[c])
[(0, 1), (1, 1)]
>>> strong_closure_check(rs, [(2, 1), (0, 1)])
False
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations
from typing import Iterable, Sequence

from .orders import absolute_length, matrix_rank
from .rootsys import (
    CoxcatError, Root, RootSystemData, ValidationError, WeylElement,
)

__all__ = [
    "CoxeterElement", "NcLattice", "coxeter_element", "enumerate_coxeter_elements",
    "build_nc", "is_noncrossing", "support", "full_support", "inv_nc", "clust_plus",
    "strong_closure_check", "cluster_complete_to_basis", "CompletionError",
    "verify_clusters",
]


class CompletionError(CoxcatError):
    pass


@dataclass(frozen=True)
class CoxeterElement:
    """A product of all simple reflections, each used once."""
    element: WeylElement
    word: tuple[int, ...]  # internal simple indices

    def __post_init__(self):
        rs = self.element.rs
        if sorted(self.word) != list(range(rs.rank)):
            raise ValidationError("a Coxeter word uses every simple reflection exactly once")
        if rs.from_word(self.word) != self.element:
            raise ValidationError("word does not represent the element")

    @property
    def rs(self) -> RootSystemData:
        return self.element.rs

    @property
    def labels(self) -> tuple[int, ...]:
        lab = self.rs.datum.labels
        return tuple(lab[i] for i in self.word)

    def conjugate(self, w: WeylElement) -> "CoxeterElement | None":
        """w c w^-1 as a Coxeter element, or None when it is not one."""
        x = self.element.conj(w)
        for cand in enumerate_coxeter_elements(self.rs):
            if cand.element == x:
                return cand
        return None


def coxeter_element(rs: RootSystemData, word: Sequence[int], labels: bool = True) -> CoxeterElement:
    """Coxeter element from a word in simple labels (or internal indices)."""
    idx = tuple(rs.label_to_index(i) for i in word) if labels else tuple(word)
    return CoxeterElement(rs.from_word(idx), idx)


def enumerate_coxeter_elements(rs: RootSystemData) -> list[CoxeterElement]:
    """Distinct Coxeter elements, each with its least word."""
    cache = rs.__dict__.setdefault("_coxeter_cache", None)
    if cache is not None:
        return list(cache)
    seen = {}
    for word in permutations(range(rs.rank)):
        w = rs.from_word(word)
        if w not in seen:
            seen[w] = CoxeterElement(w, tuple(word))
    out = list(seen.values())
    rs._coxeter_cache = out
    return list(out)


def is_noncrossing(u: WeylElement, c: CoxeterElement) -> bool:
    return absolute_length(u) + absolute_length(u.inverse() * c.element) == c.rs.rank


def support(u: WeylElement) -> frozenset[int]:
    """Simple reflections occurring in a reduced word (any one will do)."""
    return frozenset(u.word)


def full_support(u: WeylElement) -> bool:
    return len(support(u)) == u.rs.rank


@dataclass
class NcLattice:
    """Noncrossing partitions below c with the Kreweras order."""
    coxeter: CoxeterElement
    elements: list[WeylElement]
    kreweras_hasse: list[tuple[WeylElement, WeylElement, WeylElement]]
    positive_subset: list[WeylElement]
    inv_nc: dict = field(default_factory=dict)
    clust_plus: dict = field(default_factory=dict)

    def __post_init__(self):
        self._set = set(self.elements)

    def __contains__(self, u) -> bool:
        return u in self._set

    def __len__(self):
        return len(self.elements)

    @property
    def rs(self) -> RootSystemData:
        return self.coxeter.rs

    @property
    def bottom(self) -> WeylElement:
        return self.rs.identity

    @property
    def top(self) -> WeylElement:
        return self.coxeter.element

    @property
    def hasse_edges(self):
        return self.kreweras_hasse

    def rank(self, u: WeylElement) -> int:
        return absolute_length(u)


def build_nc(c: CoxeterElement) -> NcLattice:
    rs = c.rs
    cache = rs.__dict__.setdefault("_nc_cache", {})
    if c.element.key in cache:
        return cache[c.element.key]
    elems = [u for u in rs.elements() if is_noncrossing(u, c)]
    eset = set(elems)
    edges = []
    for u in elems:
        lu = absolute_length(u)
        for t in rs.reflections:
            x = u * t.element
            if x in eset and absolute_length(x) == lu + 1:
                edges.append((u, x, t.element))
    edges.sort(key=lambda e: (e[0], e[1]))
    pos = [u for u in elems if full_support(u)]
    nc = NcLattice(c, elems, edges, pos)
    for u in elems:
        inc = _inv_nc(u, eset)
        nc.inv_nc[u] = inc
        uinv = u.inverse()
        nc.clust_plus[u] = frozenset(
            rs.root(rs.reflection_root_index(uinv * t * u)) for t in inc)
    cache[c.element.key] = nc
    return nc


def _inv_nc(u: WeylElement, eset) -> frozenset[WeylElement]:
    rs = u.rs
    out = set()
    for i in u.inversion_set:
        t = rs.reflection(i).element
        if t * u in eset:
            out.add(t)
    return frozenset(out)


def inv_nc(nc: NcLattice, u: WeylElement) -> frozenset[WeylElement]:
    """Left inversions t of u with tu still noncrossing."""
    if u not in nc:
        raise ValidationError(f"{u!r} is not noncrossing for this Coxeter element")
    return nc.inv_nc[u]


def clust_plus(nc: NcLattice, u: WeylElement) -> frozenset[Root]:
    if u not in nc:
        raise ValidationError(f"{u!r} is not noncrossing for this Coxeter element")
    return nc.clust_plus[u]


def _coords(r) -> tuple[int, ...]:
    return tuple(r.coords) if isinstance(r, Root) else tuple(r)


def _solve_cone(target, gens) -> list[Fraction] | None:
    """Coefficients of target in the linearly independent gens, if any."""
    k, n = len(gens), len(target)
    # rows: coordinates; columns: generators plus target
    M = [[Fraction(gens[j][i]) for j in range(k)] + [Fraction(target[i])] for i in range(n)]
    row = 0
    pivots = []
    for col in range(k):
        piv = next((r for r in range(row, n) if M[r][col]), None)
        if piv is None:
            return None
        M[row], M[piv] = M[piv], M[row]
        p = M[row][col]
        M[row] = [x / p for x in M[row]]
        for r in range(n):
            if r != row and M[r][col]:
                f = M[r][col]
                M[r] = [a - f * b for a, b in zip(M[r], M[row])]
        pivots.append(col)
        row += 1
    if any(M[r][k] for r in range(row, n)):
        return None
    return [M[r][k] for r in range(k)]


def strong_closure_check(rs: RootSystemData, roots: Iterable) -> bool:
    """True iff the only roots in the nonnegative cone of ``roots`` are ``roots``.

    Roots are given in simple-root coordinates (negative roots allowed).
    A root lies in a cone exactly when it lies in the cone of some linearly
    independent subset of the generators, so it is enough to test those.
    """
    S = {_coords(r) for r in roots}
    for r in S:
        if r not in rs.index:
            raise ValidationError(f"{r} is not a root")
    gens = sorted(S)
    rank = matrix_rank(gens) if gens else 0
    indep = []
    for k in range(1, rank + 1):
        for sub in combinations(gens, k):
            if matrix_rank(sub) == k:
                indep.append(sub)
    for beta in rs.roots:
        if beta in S:
            continue
        for sub in indep:
            coef = _solve_cone(beta, sub)
            if coef is not None and all(x >= 0 for x in coef):
                return False
    return True


def cluster_complete_to_basis(rs: RootSystemData, roots: Iterable) -> list[tuple[int, ...]]:
    """Extend integer vectors to a basis of the root lattice.

    Column operations bring the k x n coordinate matrix A to [H | 0] with H
    lower triangular, tracking A V = [H | 0] with V unimodular. When H has
    unit diagonal, the last n - k rows of V^-1 complete the input.
    """
    vecs = [_coords(r) for r in roots]
    n = rs.rank
    k = len(vecs)
    if k > n:
        raise CompletionError("more vectors than the rank")
    A = [list(v) for v in vecs]
    V = [[int(i == j) for j in range(n)] for i in range(n)]
    Vi = [[int(i == j) for j in range(n)] for i in range(n)]

    def add_col(dst, src, q):  # col dst += q * col src
        for row in A:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]
        Vi[src] = [a - q * b for a, b in zip(Vi[src], Vi[dst])]

    def swap_col(i, j):
        for M in (A, V):
            for row in M:
                row[i], row[j] = row[j], row[i]
        Vi[i], Vi[j] = Vi[j], Vi[i]

    def neg_col(i):
        for M in (A, V):
            for row in M:
                row[i] = -row[i]
        Vi[i] = [-x for x in Vi[i]]

    for r in range(k):
        while True:
            nz = [j for j in range(r, n) if A[r][j]]
            if not nz:
                raise CompletionError("vectors are linearly dependent")
            j0 = min(nz, key=lambda j: abs(A[r][j]))
            if j0 != r:
                swap_col(r, j0)
            if len(nz) == 1:
                break
            for j in range(r + 1, n):
                if A[r][j]:
                    add_col(j, r, -(A[r][j] // A[r][r]))
        if A[r][r] < 0:
            neg_col(r)
        if A[r][r] != 1:
            raise CompletionError("vectors do not extend to a lattice basis")
    return [tuple(v) for v in vecs] + [tuple(Vi[i]) for i in range(k, n)]


def verify_clusters(c: CoxeterElement) -> list[dict]:
    """Failures of the cluster properties of Clust+; empty when all hold.

    Each image is a strongly closed set of positive roots of size |support(u)|
    extending to a lattice basis, and distinct u have distinct images.
    """
    nc = build_nc(c)
    rs = c.rs
    fails = []
    images = set()
    for u in nc.elements:
        roots = nc.clust_plus[u]
        if len(roots) != len(support(u)):
            fails.append({"u": u, "reason": "size differs from the support"})
        if not all(r.positive for r in roots):
            fails.append({"u": u, "reason": "negative root"})
        if not strong_closure_check(rs, roots):
            fails.append({"u": u, "reason": "not strongly closed"})
        try:
            cluster_complete_to_basis(rs, roots)
        except CompletionError:
            fails.append({"u": u, "reason": "does not extend to a lattice basis"})
        images.add(frozenset(roots))
    if len(images) != len(nc.elements):
        fails.append({"reason": "Clust+ is not injective"})
    return fails
