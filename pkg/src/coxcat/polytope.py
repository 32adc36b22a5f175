"""
Moment polytopes of Bruhat intervals and the complex they glue into.

Vertices are x . lam - lam written in simple-root coordinates, so they are
integer points of the root lattice. The hull is computed exactly by brute
force over affinely independent subsets, which is plenty for the
dimensions and vertex counts that occur here (at most a few dozen points
in dimension at most four).

>>> from coxcat.rootsys import root_system
>>> from coxcat.catalan import coxeter_element
>>> rs = root_system("A", 2)
>>> perm = moment_polytope(rs.elements())
>>> perm.dimension, len(perm.facets), perm.volume()
(2, 6, Fraction(3, 1))
>>> hhmp_tiling_check(coxeter_element(rs, [1, 2])).ok
True
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import factorial
from typing import Iterable, Sequence

from .catalan import CoxeterElement, build_nc
from .orders import bruhat_interval, element_label, matrix_rank
from .rootsys import CoxcatError, RootSystemData, ValidationError, WeylElement

__all__ = [
    "default_lambda", "is_regular", "vertex_point", "LatticePolytope", "moment_polytope",
    "faces_as_subintervals", "polypositroid_test", "MomentComplex", "build_moment_complex",
    "TilingReport", "hhmp_tiling_check", "affine_rank", "nullspace", "edges_parallel_to_roots",
]


def default_lambda(rs: RootSystemData) -> tuple[Fraction, ...]:
    """Regular dominant weight used for vertex coordinates."""
    n, t = rs.rank, rs.type_label
    if t == "A":
        v = range(n, -1, -1)
    elif t in ("B", "C"):
        v = range(1, n + 1)
    elif t == "D":
        v = range(n)
    else:
        # sum of the positive roots, in ambient coordinates
        tot = [0] * rs.rank
        for r in rs.roots[:rs.n_pos]:
            tot = [a + b for a, b in zip(tot, r)]
        return rs.ambient(tot)
    return tuple(Fraction(x) for x in v)


def is_regular(rs: RootSystemData, lam: Sequence) -> bool:
    """Strictly positive pairing with every positive root."""
    return all(rs.form(lam, rs.ambient(r)) > 0 for r in rs.roots[:rs.n_pos])


def vertex_point(x: WeylElement, lam: Sequence) -> tuple[int, ...]:
    rs = x.rs
    cache = rs.__dict__.setdefault("_vertex_cache", {})
    key = (x.key, tuple(lam))
    pt = cache.get(key)
    if pt is None:
        img = x.act(lam)
        diff = [a - Fraction(b) for a, b in zip(img, lam)]
        coords = rs.to_root_coords(diff)
        pt = tuple(int(v) if v.denominator == 1 else v for v in coords)
        cache[key] = pt
    return pt


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[list[Fraction]]:
    """Basis of {x : rows . x = 0} over Q."""
    M = [[Fraction(v) for v in r] for r in rows]
    pivots = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][col]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        p = M[r][col]
        M[r] = [v / p for v in M[r]]
        for i in range(len(M)):
            if i != r and M[i][col]:
                f = M[i][col]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(col)
        r += 1
    free = [j for j in range(ncols) if j not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -M[i][f]
        basis.append(v)
    return basis


def affine_rank(points: Sequence[Sequence]) -> int:
    pts = list(points)
    if len(pts) <= 1:
        return 0
    p0 = pts[0]
    return matrix_rank([[a - b for a, b in zip(p, p0)] for p in pts[1:]])


def _det(M) -> Fraction:
    M = [[Fraction(x) for x in r] for r in M]
    n = len(M)
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col]), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            M[col], M[piv] = M[piv], M[col]
            det = -det
        det *= M[col][col]
        for r in range(col + 1, n):
            if M[r][col]:
                f = M[r][col] / M[col][col]
                M[r] = [a - f * b for a, b in zip(M[r], M[col])]
    return det


@dataclass
class LatticePolytope:
    """Convex hull of labelled points, with its face lattice.

    ``facets`` holds (normal, offset, vertex labels) in projected
    coordinates: the hull is embedded in Q^d by keeping d coordinates on
    which its affine span projects isomorphically.
    """
    vertices: dict
    dimension: int = 0
    facets: list = field(default_factory=list)
    faces: dict = field(default_factory=dict)  # frozenset of labels -> dimension

    def __post_init__(self):
        pts = list(self.vertices.values())
        if len(set(pts)) != len(pts):
            raise ValidationError("distinct labels share a point (weight not regular?)")
        self.dimension = affine_rank(pts)
        self._axes = self._projection_axes()
        self._compute_facets()
        self._compute_faces()

    def _projection_axes(self) -> list[int]:
        pts = list(self.vertices.values())
        if not pts:
            return []
        p0 = pts[0]
        diffs = [[a - b for a, b in zip(p, p0)] for p in pts[1:]]
        axes, rank = [], 0
        for j in range(len(p0)):
            trial = axes + [j]
            if matrix_rank([[d[k] for k in trial] for d in diffs] or [[0] * len(trial)]) > rank:
                axes = trial
                rank += 1
        return axes

    def proj(self, p) -> tuple:
        return tuple(Fraction(p[j]) for j in self._axes)

    def _compute_facets(self):
        d = self.dimension
        labels = list(self.vertices)
        P = {k: self.proj(self.vertices[k]) for k in labels}
        self.facets = []
        if d == 0:
            return
        seen = set()
        for sub in combinations(labels, d):
            pts = [P[k] for k in sub]
            rows = [[a - b for a, b in zip(p, pts[0])] for p in pts[1:]]
            ns = nullspace(rows, d) if rows else [[Fraction(int(i == 0)) for i in range(d)]]
            if len(ns) != 1:
                continue
            a = ns[0]
            b = b0 = sum(x * y for x, y in zip(a, pts[0]))
            vals = {k: sum(x * y for x, y in zip(a, P[k])) for k in labels}
            if all(v <= b for v in vals.values()):
                pass
            elif all(v >= b for v in vals.values()):
                a = [-x for x in a]
                b = -b
            else:
                continue
            on = frozenset(k for k in labels if vals[k] == b0)
            if on in seen:
                continue
            if affine_rank([P[k] for k in on]) != d - 1:
                continue
            seen.add(on)
            self.facets.append((tuple(a), b, on))

    def _compute_faces(self):
        allv = frozenset(self.vertices)
        faces = {allv}
        frontier = {f for _, _, f in self.facets}
        faces |= frontier
        while frontier:
            new = set()
            for f in frontier:
                for _, _, g in self.facets:
                    h = f & g
                    if h and h not in faces:
                        new.add(h)
            faces |= new
            frontier = new
        if self.dimension == 0:
            faces = {allv}
        self.faces = {f: affine_rank([self.vertices[k] for k in f]) for f in faces}

    def faces_of_dim(self, k: int) -> list[frozenset]:
        return sorted((f for f, d in self.faces.items() if d == k), key=lambda f: sorted(map(_lab, f)))

    @property
    def edges(self) -> list[frozenset]:
        return self.faces_of_dim(1)

    @property
    def vertex_labels(self) -> list:
        return [next(iter(f)) for f in self.faces_of_dim(0)]

    def subfacets(self, face: frozenset) -> list[frozenset]:
        d = self.faces[face]
        return [g for g, e in self.faces.items() if e == d - 1 and g < face]

    def triangulate(self, face: frozenset | None = None) -> list[tuple]:
        """Pulling triangulation: cone from the least vertex over far facets."""
        if face is None:
            face = frozenset(self.vertices)
        if self.faces[face] == 0:
            return [tuple(face)]
        v = min(face, key=_lab)
        out = []
        for g in self.subfacets(face):
            if v in g:
                continue
            for simp in self.triangulate(g):
                out.append((v,) + simp)
        return out

    def volume(self) -> Fraction:
        """Volume in the projected coordinates (Lebesgue, not normalized)."""
        d = self.dimension
        if d == 0:
            return Fraction(1)
        tot = Fraction(0)
        for simp in self.triangulate():
            pts = [self.proj(self.vertices[k]) for k in simp]
            tot += abs(_det([[a - b for a, b in zip(p, pts[0])] for p in pts[1:]]))
        return tot / factorial(d)

    def contains(self, p, strict: bool = False) -> bool:
        """Membership for a point in the affine span (projected coordinates)."""
        q = self.proj(p)
        for a, b, _ in self.facets:
            v = sum(x * y for x, y in zip(a, q))
            if v > b or (strict and v == b):
                return False
        return True

    def in_affine_span(self, p) -> bool:
        pts = list(self.vertices.values())
        return affine_rank(pts + [tuple(p)]) == self.dimension

    def centroid(self) -> tuple[Fraction, ...]:
        pts = list(self.vertices.values())
        return tuple(sum(Fraction(p[j]) for p in pts) / len(pts) for j in range(len(pts[0])))

    def direction_space(self, face: frozenset | None = None) -> list[tuple]:
        if face is None:
            face = frozenset(self.vertices)
        pts = [self.vertices[k] for k in sorted(face, key=_lab)]
        return [tuple(Fraction(a) - b for a, b in zip(p, pts[0])) for p in pts[1:]]

    def subpolytope(self, face: frozenset) -> "LatticePolytope":
        return LatticePolytope({k: self.vertices[k] for k in face})


def _lab(k):
    return k if not isinstance(k, WeylElement) else (k.length, k.word)


def moment_polytope(elements: Iterable[WeylElement], lam: Sequence | None = None) -> LatticePolytope:
    """conv{x . lam} for the given elements, shifted by -lam."""
    elements = list(elements)
    if not elements:
        raise ValidationError("need at least one element")
    rs = elements[0].rs
    lam = tuple(Fraction(x) for x in (lam if lam is not None else default_lambda(rs)))
    if not is_regular(rs, lam):
        raise ValidationError("weight is not regular dominant")
    return LatticePolytope({x: vertex_point(x, lam) for x in elements})


def faces_as_subintervals(P: LatticePolytope) -> list[tuple[WeylElement, WeylElement]]:
    """Each face as a Bruhat interval (bottom, top); raises if one is not."""
    out = []
    for face in sorted(P.faces, key=lambda f: (P.faces[f], sorted(map(_lab, f)))):
        lo = min(face, key=_lab)
        hi = max(face, key=_lab)
        if set(bruhat_interval(lo, hi).elements) != set(face):
            raise CoxcatError(f"face {[element_label(x) for x in face]} is not a Bruhat interval")
        out.append((lo, hi))
    return out


def edges_parallel_to_roots(P: LatticePolytope) -> bool:
    rs = next(iter(P.vertices)).rs
    for e in P.edges:
        a, b = (P.vertices[k] for k in e)
        d = [x - y for x, y in zip(a, b)]
        if not any(matrix_rank([d, r]) == 1 for r in rs.roots[:rs.n_pos]):
            return False
    return True


def _coxeter_directions(c: CoxeterElement) -> list[tuple[Fraction, ...]]:
    """(1 - c)^-1 beta for every positive root beta, in root coordinates.

    A hyperplane has a normal n with (1 - c) n parallel to beta exactly when
    its Q-orthogonal complement contains this vector.
    """
    rs = c.rs
    M = c.element.matrix
    n = rs.rank
    A = [[Fraction(int(i == j) - M[i][j]) for j in range(n)] for i in range(n)]
    from .rootsys import _solve
    return [tuple(_solve(A, r)) for r in rs.roots[:rs.n_pos]]


def _qdot(Q, u, v) -> Fraction:
    return sum(u[i] * Q[i][j] * v[j] for i in range(len(u)) for j in range(len(v)))


def polypositroid_test(P: LatticePolytope, c: CoxeterElement) -> bool:
    """Facet normals n of every face satisfy (1 - c) n parallel to a root.

    Working inside a face with direction space L, a facet G with direction
    space L_G has normal direction v in the orthogonal of L_G but not of L.
    Normals are taken as v_beta = (1 - c)^-1 beta, and the orthogonal of L
    itself must be spanned by such vectors so the face is cut out by
    hyperplanes of the same kind.
    """
    rs = c.rs
    Q = rs.gram
    V = _coxeter_directions(c)
    n = rs.rank
    for face, d in P.faces.items():
        L = P.direction_space(face)
        perp = [v for v in V if all(_qdot(Q, v, l) == 0 for l in L)]
        if (matrix_rank(perp) if perp else 0) != n - d:
            return False
        for g in P.subfacets(face):
            LG = P.direction_space(g)
            if not any(all(_qdot(Q, v, l) == 0 for l in LG) and
                       any(_qdot(Q, v, l) != 0 for l in L) for v in V):
                return False
    return True


@dataclass
class MomentComplex:
    coxeter: CoxeterElement
    faces: dict = field(default_factory=dict)  # frozenset(elements) -> {"dim", "owners"}
    top_faces: list = field(default_factory=list)
    polytopes: dict = field(default_factory=dict)  # bruhat max u -> polytope

    def f_vector(self) -> list[int]:
        top = max((f["dim"] for f in self.faces.values()), default=0)
        out = [0] * (top + 1)
        for f in self.faces.values():
            out[f["dim"]] += 1
        return out

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * m for k, m in enumerate(self.f_vector()))

    def one_skeleton(self) -> set[frozenset]:
        return {f for f, r in self.faces.items() if r["dim"] == 1}

    def to_json(self) -> str:
        lam = default_lambda(self.coxeter.rs)
        verts = sorted({x for f in self.faces for x in f})
        data = {
            "vertices": {element_label(x): list(map(int, vertex_point(x, lam))) for x in verts},
            "faces": [
                {"verts": sorted(element_label(x) for x in f), "dim": r["dim"],
                 "owners": sorted(element_label(u) for u in r["owners"])}
                for f, r in sorted(self.faces.items(),
                                   key=lambda kv: (kv[1]["dim"], sorted(map(_lab, kv[0]))))
            ],
        }
        return json.dumps(data, sort_keys=True)

    def to_dot(self) -> str:
        lines = ["graph complex {"]
        for f in sorted(self.one_skeleton(), key=lambda f: sorted(map(_lab, f))):
            a, b = sorted(f, key=_lab)
            lines.append(f'  "{element_label(a)}" -- "{element_label(b)}";')
        lines.append("}")
        return "\n".join(lines)

    def to_off(self) -> str:
        """OFF file of the 2-dimensional faces, polygons ordered by angle."""
        lam = default_lambda(self.coxeter.rs)
        verts = sorted({x for f in self.faces for x in f}, key=_lab)
        idx = {x: i for i, x in enumerate(verts)}
        pts = [vertex_point(x, lam) for x in verts]
        polys = []
        for f, r in self.faces.items():
            if r["dim"] != 2:
                continue
            polys.append(_polygon_order(f, self.faces, idx))
        pad = lambda p: list(p) + [0] * (3 - len(p)) if len(p) < 3 else list(p)[:3]
        lines = ["OFF", f"{len(pts)} {len(polys)} 0"]
        lines += [" ".join(str(int(v)) for v in pad(p)) for p in pts]
        lines += [" ".join(map(str, [len(p)] + p)) for p in polys]
        return "\n".join(lines)


def _polygon_order(face, faces, idx) -> list[int]:
    edges = [f for f, r in faces.items() if r["dim"] == 1 and f <= face]
    adj = {}
    for e in edges:
        a, b = tuple(e)
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    start = min(face, key=_lab)
    order, prev, cur = [start], None, start
    while True:
        nxt = [v for v in adj.get(cur, []) if v != prev]
        if not nxt or nxt[0] == start:
            break
        prev, cur = cur, nxt[0]
        order.append(cur)
    return [idx[x] for x in order]


def build_moment_complex(c: CoxeterElement, lam: Sequence | None = None) -> MomentComplex:
    """Glue the translated interval polytopes along common vertex sets."""
    from .intervals import classify_translates
    cls = classify_translates(c)
    if not cls.ok:
        raise CoxcatError(f"translated intervals misbehave: {cls.failures[:1]}")
    mc = MomentComplex(c)
    for u in sorted(cls.intervals):
        I = cls.intervals[u]
        P = moment_polytope(I.elements, lam)
        mc.polytopes[u] = P
        mc.top_faces.append(frozenset(I.elements))
        for f, d in P.faces.items():
            rec = mc.faces.setdefault(f, {"dim": d, "owners": set()})
            rec["owners"].add(u)
    nc = build_nc(c)
    kreweras = {frozenset((a, b)) for a, b, _ in nc.kreweras_hasse}
    if mc.one_skeleton() != kreweras:
        raise CoxcatError("1-skeleton differs from the Kreweras Hasse diagram")
    return mc


@dataclass
class TilingReport:
    coxeter: CoxeterElement
    piece_volumes: list
    total: Fraction
    permutahedron_volume: Fraction
    overlaps: list

    @property
    def ok(self) -> bool:
        return self.total == self.permutahedron_volume and not self.overlaps


def hhmp_tiling_check(c: CoxeterElement, lam: Sequence | None = None) -> TilingReport:
    """Pieces P[w, wc] tile the permutahedron: volumes add, interiors disjoint.

    Disjointness is spot-checked: the centroid of each piece and the
    midpoints between it and each vertex must avoid the interiors of the
    other pieces.
    """
    from .intervals import length_additive_elements
    rs = c.rs
    pieces = []
    for w in length_additive_elements(c):
        P = moment_polytope(bruhat_interval(w, w * c.element).elements, lam)
        pieces.append((w, P))
    vols = [(w, P.volume()) for w, P in pieces]
    total = sum((v for _, v in vols), Fraction(0))
    perm = moment_polytope(rs.elements(), lam).volume()
    overlaps = []
    for i, (w, P) in enumerate(pieces):
        g = P.centroid()
        samples = [g] + [tuple((a + Fraction(b)) / 2 for a, b in zip(g, p)) for p in P.vertices.values()]
        for j, (w2, P2) in enumerate(pieces):
            if i != j and any(P2.contains(s, strict=True) for s in samples):
                overlaps.append((w, w2))
    return TilingReport(c, vols, total, perm, overlaps)
