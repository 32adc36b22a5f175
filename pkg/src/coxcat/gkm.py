"""
GKM graph cohomology over Z[t_1, ..., t_n], one variable per simple root.

A class on a graph whose edges carry roots is a tuple of polynomials, one
per vertex, such that the difference across each edge is divisible by the
linear form of its root. This module builds Schubert classes on the full
Cayley graph, and on the noncrossing subgraph both the basis dual to
localization integrals over the paving pieces and a flowup basis obtained
by interpolation.

>>> from coxcat.rootsys import root_system
>>> from coxcat.catalan import coxeter_element
>>> rs = root_system("B", 2)
>>> c = coxeter_element(rs, [0, 1])
>>> betti(c), betti_full(rs)
([1, 2, 3], [1, 2, 2, 2, 1])
>>> basis = duality_basis(c)
>>> sorted(f.degree() for f in basis.values())
[0, 1, 1, 2, 2, 2]
>>> p = IntPoly.linear((1, -1)) * IntPoly.linear((1, 1))
>>> str(p), str(p.div_linear((1, 1)))
('t1^2 - t2^2', 't1 - t2')
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Iterable, Sequence

from .catalan import (
    CoxeterElement, build_nc, cluster_complete_to_basis,
)
from .orders import bruhat_interval, bruhat_leq
from .rootsys import CoxcatError, RootSystemData, ValidationError, WeylElement

__all__ = [
    "IntPoly", "RationalFunction", "DivisionError", "ClassError",
    "GkmGraph", "GkmClass", "cayley_graph", "nc_graph", "is_class", "check_class",
    "schubert_classes", "divided_difference", "PavingPiece", "paving_piece",
    "equivariant_multiplicity", "integrate", "duality_basis", "flowup_basis_interpolate",
    "expand_in_basis", "betti", "betti_full", "psi_iso", "psi_compose_check",
    "restrict_and_expand", "structure_constants", "act_on_poly", "root_form",
    "GkmReport", "verify_gkm_bases", "psi_ring_check", "psi_duality_witness",
]


class DivisionError(CoxcatError, ArithmeticError):
    pass


class ClassError(CoxcatError):
    pass


# polynomials


class IntPoly:
    """Integer polynomial as a map from exponent tuples to coefficients."""
    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: dict | None = None):
        self.nvars = nvars
        self.terms = {e: c for e, c in (terms or {}).items() if c}

    @classmethod
    def const(cls, nvars: int, c: int) -> "IntPoly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, nvars: int, i: int) -> "IntPoly":
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): 1})

    @classmethod
    def linear(cls, coeffs: Sequence[int]) -> "IntPoly":
        n = len(coeffs)
        terms = {}
        for i, a in enumerate(coeffs):
            if a:
                e = [0] * n
                e[i] = 1
                terms[tuple(e)] = int(a)
        return cls(n, terms)

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def __eq__(self, other):
        if isinstance(other, int):
            other = IntPoly.const(self.nvars, other)
        if not isinstance(other, IntPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "IntPoly") -> "IntPoly":
        if isinstance(other, int):
            other = IntPoly.const(self.nvars, other)
        t = dict(self.terms)
        for e, c in other.terms.items():
            t[e] = t.get(e, 0) + c
        return IntPoly(self.nvars, t)

    __radd__ = __add__

    def __neg__(self) -> "IntPoly":
        return IntPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "IntPoly") -> "IntPoly":
        if isinstance(other, int):
            other = IntPoly.const(self.nvars, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other) -> "IntPoly":
        if isinstance(other, int):
            return IntPoly(self.nvars, {e: c * other for e, c in self.terms.items()})
        t: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                t[e] = t.get(e, 0) + c1 * c2
        return IntPoly(self.nvars, t)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "IntPoly":
        out = IntPoly.const(self.nvars, 1)
        for _ in range(k):
            out = out * self
        return out

    def content(self) -> int:
        g = 0
        for c in self.terms.values():
            g = gcd(g, c)
        return g

    def exact_div_int(self, k: int) -> "IntPoly":
        if any(c % k for c in self.terms.values()):
            raise DivisionError(f"{self} is not divisible by {k}")
        return IntPoly(self.nvars, {e: c // k for e, c in self.terms.items()})

    def evaluate(self, point: Sequence, modulus: int | None = None):
        tot = 0
        for e, c in self.terms.items():
            term = c
            for x, k in zip(point, e):
                term *= x ** k if modulus is None else pow(x, k, modulus)
            tot += term
        return tot % modulus if modulus else tot

    def substitute(self, M: Sequence[Sequence[int]]) -> "IntPoly":
        """Replace t_i by sum_j M[i][j] t_j."""
        n = self.nvars
        images = [IntPoly.linear(M[i]) if len(M[i]) == n else IntPoly.linear(M[i]) for i in range(n)]
        powers: dict = {}
        out = IntPoly(len(M[0]) if M else n)
        for e, c in self.terms.items():
            term = IntPoly.const(out.nvars, c)
            for i, k in enumerate(e):
                if k:
                    key = (i, k)
                    if key not in powers:
                        powers[key] = images[i] ** k
                    term = term * powers[key]
            out = out + term
        return out

    def div_linear(self, form: Sequence[int]) -> "IntPoly":
        """Exact quotient by the linear form sum form[i] t_i."""
        q, r = self.divmod_linear(form)
        if not r.is_zero():
            raise DivisionError(f"{self} is not divisible by {IntPoly.linear(form)}")
        return q

    def divisible_by_linear(self, form: Sequence[int]) -> bool:
        try:
            return self.divmod_linear(form)[1].is_zero()
        except DivisionError:
            return False

    def divmod_linear(self, form: Sequence[int]):
        """Divide as a polynomial in a pivot variable of the form.

        Returns (quotient, remainder); the remainder is free of the pivot.
        The pivot is a variable with coefficient +-1 when there is one, so
        the computation stays in Z; otherwise the quotient must come out
        integral or a DivisionError is raised.
        """
        n = self.nvars
        nz = [i for i, a in enumerate(form) if a]
        if not nz:
            raise DivisionError("division by zero form")
        j = min(nz, key=lambda i: (abs(form[i]), i))
        a = form[j]
        # group by the exponent of t_j
        slices: dict[int, dict] = {}
        for e, c in self.terms.items():
            slices.setdefault(e[j], {})[e[:j] + (0,) + e[j + 1:]] = Fraction(c)
        rest = {tuple(int(k == i) for k in range(n)): Fraction(form[i]) for i in nz if i != j}
        top = max(slices, default=-1)
        quot: dict[int, dict] = {}
        carry: dict = {}
        for k in range(top, 0, -1):
            cur = dict(slices.get(k, {}))
            for e, c in carry.items():
                cur[e] = cur.get(e, 0) - c
            qk = {e: c / a for e, c in cur.items() if c}
            quot[k - 1] = qk
            carry = {}
            for e1, c1 in qk.items():
                for e2, c2 in rest.items():
                    e = tuple(x + y for x, y in zip(e1, e2))
                    carry[e] = carry.get(e, 0) + c1 * c2
        rem = dict(slices.get(0, {}))
        for e, c in carry.items():
            rem[e] = rem.get(e, 0) - c
        qterms = {}
        for k, qk in quot.items():
            for e, c in qk.items():
                if c:
                    ee = list(e)
                    ee[j] = k
                    qterms[tuple(ee)] = c
        if any(c.denominator != 1 for c in qterms.values()) or \
                any(c.denominator != 1 for c in rem.values() if c):
            raise DivisionError("quotient is not integral")
        return (IntPoly(n, {e: int(c) for e, c in qterms.items()}),
                IntPoly(n, {e: int(c) for e, c in rem.items() if c}))

    def to_json(self) -> list:
        return [[list(e), c] for e, c in sorted(self.terms.items(), reverse=True)]

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in sorted(self.terms.items(), key=lambda kv: (-sum(kv[0]), tuple(-x for x in kv[0]))):
            mono = " ".join(f"t{i + 1}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(e) if k)
            if not mono:
                s = str(abs(c))
            elif abs(c) == 1:
                s = mono
            else:
                s = f"{abs(c)} {mono}"
            parts.append(("-" if c < 0 else "+", s))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, s in parts[1:]:
            out += f" {sign} {s}"
        return out

    def __repr__(self) -> str:
        return f"IntPoly({self})"


def _normalize_form(form: Sequence[int]) -> tuple[tuple[int, ...], int]:
    """Primitive form with positive leading coefficient, and the scalar removed."""
    g = 0
    for a in form:
        g = gcd(g, a)
    lead = next(a for a in form if a)
    s = g if lead > 0 else -g
    return tuple(a // s for a in form), s


@dataclass(frozen=True)
class RationalFunction:
    """num / (const * product of linear forms)."""
    num: IntPoly
    const: int = 1
    den: tuple = ()  # sorted tuple of primitive linear forms, with repetition

    @classmethod
    def make(cls, num: IntPoly, const: int = 1, forms: Iterable[Sequence[int]] = ()) -> "RationalFunction":
        den = []
        for f in forms:
            nf, s = _normalize_form(f)
            den.append(nf)
            const *= s
        if const < 0:
            num, const = -num, -const
        return cls(num, const, tuple(sorted(den))).simplify()

    def simplify(self) -> "RationalFunction":
        num, den = self.num, list(self.den)
        if num.is_zero():
            return RationalFunction(num, 1, ())
        kept = []
        for f in den:
            try:
                num = num.div_linear(f)
            except DivisionError:
                kept.append(f)
        g = gcd(num.content(), self.const)
        if g > 1:
            num = num.exact_div_int(g)
        return RationalFunction(num, self.const // g, tuple(kept))

    def is_polynomial(self) -> bool:
        return not self.den and self.const == 1

    def as_poly(self) -> IntPoly:
        if not self.is_polynomial():
            raise DivisionError(f"{self} is not a polynomial")
        return self.num

    def __add__(self, other: "RationalFunction") -> "RationalFunction":
        mine, theirs = list(self.den), list(other.den)
        common = []
        rest_other = list(theirs)
        for f in mine:
            common.append(f)
            if f in rest_other:
                rest_other.remove(f)
        common += rest_other
        # numerators over the common denominator
        def lift(r: "RationalFunction"):
            extra = list(common)
            for f in r.den:
                extra.remove(f)
            num = r.num
            for f in extra:
                num = num * IntPoly.linear(f)
            return num
        n1, n2 = lift(self), lift(other)
        l = self.const * other.const // gcd(self.const, other.const)
        num = n1 * (l // self.const) + n2 * (l // other.const)
        return RationalFunction(num, l, tuple(sorted(common))).simplify()

    def __neg__(self):
        return RationalFunction(-self.num, self.const, self.den)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other) -> "RationalFunction":
        if isinstance(other, IntPoly):
            other = RationalFunction(other)
        return RationalFunction(self.num * other.num, self.const * other.const,
                                tuple(sorted(self.den + other.den))).simplify()

    def inverse_of_monomial(self) -> "RationalFunction":
        """Reciprocal, for values whose numerator is a constant."""
        if self.num.degree() != 0 or len(self.num.terms) != 1:
            raise DivisionError("can only invert when the numerator is constant")
        k = next(iter(self.num.terms.values()))
        nvars = self.num.nvars
        num = IntPoly.const(nvars, self.const)
        for f in self.den:
            num = num * IntPoly.linear(f)
        return RationalFunction.make(num, k)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __str__(self):
        den = " ".join(f"({IntPoly.linear(f)})" for f in self.den)
        c = f"{self.const}" if self.const != 1 else ""
        if not den and not c:
            return str(self.num)
        return f"({self.num}) / ({c}{' ' if c and den else ''}{den})"


def root_form(coords: Sequence[int]) -> tuple[int, ...]:
    """Coefficients of t_beta = sum beta_i t_i."""
    return tuple(int(x) for x in coords)


def act_on_poly(w: WeylElement, p: IntPoly) -> IntPoly:
    """w acting by t_i -> t_{w alpha_i}."""
    M = w.matrix  # column i is w(alpha_i)
    n = len(M)
    return p.substitute([[M[j][i] for j in range(n)] for i in range(n)])


# graphs and classes


@dataclass
class GkmGraph:
    vertices: list
    edges: list  # (u, v, positive root coords)
    adjacency: dict = field(default_factory=dict)

    def __post_init__(self):
        self.adjacency = {v: [] for v in self.vertices}
        for u, v, r in self.edges:
            self.adjacency[u].append((v, r))
            self.adjacency[v].append((u, r))

    @property
    def nvars(self) -> int:
        return self.vertices[0].rs.rank


def cayley_graph(rs: RootSystemData) -> GkmGraph:
    """All elements, with edges {w, t w} labelled by the root of t."""
    verts = rs.elements()
    edges = []
    for w in verts:
        for t in rs.reflections:
            x = t.element * w
            if w < x:
                edges.append((w, x, t.root.coords))
    return GkmGraph(list(verts), edges)


def nc_graph(c: CoxeterElement) -> GkmGraph:
    """Cayley graph restricted to the noncrossing partitions."""
    nc = build_nc(c)
    rs = c.rs
    edges = []
    for w in nc.elements:
        for t in rs.reflections:
            x = t.element * w
            if x in nc and w < x:
                edges.append((w, x, t.root.coords))
    return GkmGraph(list(nc.elements), edges)


@dataclass
class GkmClass:
    values: dict  # vertex -> IntPoly

    def __add__(self, other: "GkmClass") -> "GkmClass":
        return GkmClass({v: self.values[v] + other.values[v] for v in self.values})

    def __sub__(self, other: "GkmClass") -> "GkmClass":
        return GkmClass({v: self.values[v] - other.values[v] for v in self.values})

    def __mul__(self, other) -> "GkmClass":
        if isinstance(other, GkmClass):
            return GkmClass({v: self.values[v] * other.values[v] for v in self.values})
        return GkmClass({v: p * other for v, p in self.values.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, GkmClass) and self.values == other.values

    def __getitem__(self, v):
        return self.values[v]

    def degree(self) -> int:
        return max(p.degree() for p in self.values.values())

    @classmethod
    def constant(cls, graph: GkmGraph, k: int = 1) -> "GkmClass":
        return cls({v: IntPoly.const(graph.nvars, k) for v in graph.vertices})


def check_class(values, graph: GkmGraph) -> None:
    """Raise ClassError naming the first edge where divisibility fails."""
    vals = values.values if isinstance(values, GkmClass) else values
    for u, v, r in graph.edges:
        if not (vals[u] - vals[v]).divisible_by_linear(r):
            raise ClassError(f"edge {u!r} -- {v!r} with root {r}: difference not divisible")


def is_class(values, graph: GkmGraph) -> bool:
    try:
        check_class(values, graph)
    except ClassError:
        return False
    return True


# Schubert classes


def divided_difference(f: GkmClass, i: int, rs: RootSystemData) -> GkmClass:
    """(d_i f)_v = (f_v - f_{v s_i}) / t_{-v(alpha_i)}."""
    s = rs.simple(i)
    out = {}
    for v, p in f.values.items():
        img = rs.roots[v.key[i]]
        form = tuple(-x for x in img)
        out[v] = (p - f.values[v * s]).div_linear(form)
    return GkmClass(out)


def schubert_classes(rs: RootSystemData) -> dict:
    """Schubert classes on the Cayley graph, from the top class down."""
    n = rs.rank
    top = IntPoly.const(n, 1)
    for r in rs.roots[:rs.n_pos]:
        top = top * IntPoly.linear(r)
    zero = IntPoly(n)
    w0 = rs.w0
    out = {w0: GkmClass({v: (top if v == w0 else zero) for v in rs.elements()})}
    frontier = [w0]
    while frontier:
        new = []
        for w in frontier:
            for i in w.right_descents():
                x = w * rs.simple(i)
                if x not in out:
                    out[x] = divided_difference(out[w], i, rs)
                    new.append(x)
        frontier = new
    return out


# paving pieces and localization


@dataclass
class PavingPiece:
    """Translated interval with top u in the support parabolic, and its polytope."""
    u: WeylElement
    base_w: WeylElement
    coxeter_word: tuple
    elements: list
    polytope: object


def paving_piece(u: WeylElement, c: CoxeterElement) -> PavingPiece:
    from .intervals import representative_for
    from .polytope import moment_polytope
    cache = c.rs.__dict__.setdefault("_piece_cache", {})
    key = (u.key, c.element.key)
    if key not in cache:
        w, cword, cp = representative_for(u, c)
        elems = [w.inverse() * x for x in bruhat_interval(w, w * cp).elements]
        cache[key] = PavingPiece(u, w, cword, elems, moment_polytope(elems))
    return cache[key]


def _primitive(v) -> tuple[int, ...]:
    g = 0
    for x in v:
        g = gcd(g, int(x))
    return tuple(int(x) // g for x in v)


def _gcd_maximal_minors(rays: Sequence[Sequence[int]]) -> int:
    from .polytope import _det
    k = len(rays)
    n = len(rays[0])
    g = 0
    for cols in combinations(range(n), k):
        g = gcd(g, int(_det([[r[j] for j in cols] for r in rays])))
    return g


def _vertex_rays(P, v) -> list[tuple[int, ...]]:
    out = []
    for e in P.edges:
        if v in e:
            (other,) = tuple(e - {v})
            out.append(_primitive([a - b for a, b in zip(P.vertices[other], P.vertices[v])]))
    return out


def _cone_simplices(P, v, rays) -> list[list[tuple[int, ...]]]:
    """Split the tangent cone at v into simplicial cones on its own rays."""
    k = P.dimension
    if len(rays) == k:
        return [rays]
    from .polytope import LatticePolytope
    # inward normals of the facets through v, in projected coordinates
    normals = [tuple(-x for x in a) for a, b, on in P.facets if v in on]
    phi = [sum(col) for col in zip(*normals)]
    section = {}
    for r in rays:
        pr = P.proj(r)
        h = sum(x * y for x, y in zip(phi, pr))
        if h <= 0:
            raise CoxcatError("degenerate tangent cone")
        section[r] = tuple(Fraction(x) / h for x in pr)
    S = LatticePolytope(section)
    return [list(simp) for simp in S.triangulate()]


def equivariant_multiplicity(v: WeylElement, P) -> RationalFunction:
    """Sum over simplicial pieces sigma of the tangent cone of m_sigma / prod t_g.

    The g are primitive ray generators and m_sigma is the index of the
    lattice they span inside the lattice of the affine span of P.
    """
    if v not in P.vertices:
        raise ValidationError("not a vertex of the polytope")
    n = len(P.vertices[v])
    if P.dimension == 0:
        return RationalFunction(IntPoly.const(n, 1))
    rays = _vertex_rays(P, v)
    if len(rays) < P.dimension:
        raise CoxcatError("degenerate tangent cone")
    total = RationalFunction(IntPoly(n))
    for simp in _cone_simplices(P, v, rays):
        m = _gcd_maximal_minors(simp)
        total = total + RationalFunction.make(IntPoly.const(n, m), 1, simp)
    return total


def integrate(values: dict, piece: PavingPiece) -> RationalFunction:
    """Localization sum over the vertices of a paving piece."""
    P = piece.polytope
    n = piece.u.rs.rank
    total = RationalFunction(IntPoly(n))
    for x in piece.elements:
        f = values[x]
        if f.is_zero():
            continue
        total = total + equivariant_multiplicity(x, P) * f
    return total


def duality_basis(c: CoxeterElement) -> dict:
    """Classes S_u on the noncrossing graph with integral over Y_v equal to delta.

    Vertices are handled in order of length. The top of Y_v is v and every
    other vertex of Y_v is shorter, so the integral condition over Y_v
    determines the value at v from values already known.
    """
    cache = c.rs.__dict__.setdefault("_duality_cache", {})
    if c.element.key in cache:
        return cache[c.element.key]
    nc = build_nc(c)
    rs = c.rs
    n = rs.rank
    order = sorted(nc.elements)
    pieces = {v: paving_piece(v, c) for v in order}
    weights = {v: {x: equivariant_multiplicity(x, pieces[v].polytope) for x in pieces[v].elements}
               for v in order}
    basis = {}
    for u in order:
        vals = {}
        for v in order:
            acc = RationalFunction(IntPoly.const(n, int(u == v)))
            for x in pieces[v].elements:
                if x != v and not vals[x].is_zero():
                    acc = acc - weights[v][x] * vals[x]
            q = acc * weights[v][v].inverse_of_monomial()
            if not q.is_polynomial():
                raise CoxcatError(f"value at {v!r} is not a polynomial: {q}")
            vals[v] = q.num
        basis[u] = GkmClass(vals)
    cache[c.element.key] = basis
    return basis


def _leading(u: WeylElement, nc) -> IntPoly:
    p = IntPoly.const(u.rs.rank, 1)
    rs = u.rs
    for t in nc.inv_nc[u]:
        p = p * IntPoly.linear(rs.root(rs.reflection_root_index(t)).coords)
    return p


def _unimodular_inverse(B: Sequence[Sequence[int]]) -> list[list[int]]:
    from .rootsys import _solve
    n = len(B)
    cols = []
    for j in range(n):
        e = [int(i == j) for i in range(n)]
        cols.append(_solve([list(map(Fraction, r)) for r in B], e))
    inv = [[cols[j][i] for j in range(n)] for i in range(n)]
    if any(x.denominator != 1 for r in inv for x in r):
        raise CoxcatError("basis is not unimodular")
    return [[int(x) for x in r] for r in inv]


def _interpolate(targets: list[tuple[tuple[int, ...], IntPoly]], rs: RootSystemData) -> IntPoly:
    """h with h = g_j modulo t_{beta_j}, the beta_j part of a lattice basis.

    In coordinates t' where the t_{beta_j} are the first variables, setting
    a set S of them to zero is a linear substitution R_S, and
    h = sum over nonempty S of (-1)^(|S|+1) R_S(g_{min S}).
    """
    n = rs.rank
    if not targets:
        raise CoxcatError("nothing to interpolate")
    betas = [b for b, _ in targets]
    basis = cluster_complete_to_basis(rs, betas)
    Binv = _unimodular_inverse(basis)
    # R_S(t) = Binv P_S B t ; substitution matrix rows give t_i in terms of t
    k = len(targets)
    h = IntPoly(n)
    for size in range(1, k + 1):
        for S in combinations(range(k), size):
            PB = [[0] * n if i in S else list(basis[i]) for i in range(n)]
            M = [[sum(Binv[i][m] * PB[m][j] for m in range(n)) for j in range(n)] for i in range(n)]
            term = targets[S[0]][1].substitute(M)
            h = h + term if size % 2 else h - term
    return h


def flowup_basis_interpolate(c: CoxeterElement) -> dict:
    """A flowup basis built vertex by vertex by interpolation.

    f^u vanishes before u in length order, equals the product of the
    noncrossing inversion roots at u, and at each later vertex v is
    interpolated from its neighbours t v, t in Inv_NC(v), whose roots
    extend to a lattice basis.
    """
    nc = build_nc(c)
    rs = c.rs
    n = rs.rank
    order = sorted(nc.elements)
    out = {}
    for idx, u in enumerate(order):
        vals = {v: IntPoly(n) for v in order[:idx]}
        vals[u] = _leading(u, nc)
        for v in order[idx + 1:]:
            targets = []
            for t in sorted(nc.inv_nc[v], key=lambda t: rs.reflection_root_index(t)):
                beta = rs.root(rs.reflection_root_index(t)).coords
                targets.append((beta, vals[t * v]))
            h = _interpolate(targets, rs)
            for beta, g in targets:
                if not (h - g).divisible_by_linear(beta):
                    raise CoxcatError(f"interpolation failed at {v!r}")
            vals[v] = h
        out[u] = GkmClass(vals)
    return out


def _div_by_product(p: IntPoly, lead: IntPoly, forms: list) -> IntPoly:
    q = p
    for f in forms:
        q = q.div_linear(f)
    return q


def expand_in_basis(f: GkmClass, basis: dict, nc) -> dict:
    """Coefficients a_u with f = sum a_u basis[u], by a triangular solve."""
    rs = nc.rs
    order = sorted(nc.elements)
    coeffs = {}
    resid = GkmClass(dict(f.values))
    for x in order:
        val = resid.values[x]
        if val.is_zero():
            continue
        forms = [rs.root(rs.reflection_root_index(t)).coords for t in nc.inv_nc[x]]
        lead = basis[x].values[x]
        a = val
        for fm in forms:
            a = a.div_linear(fm)
        # basis leading values are the product up to sign; fix the sign
        prod = IntPoly.const(rs.rank, 1)
        for fm in forms:
            prod = prod * IntPoly.linear(fm)
        if lead == -prod:
            a = -a
        elif lead != prod:
            raise CoxcatError("basis leading value is not the expected product")
        coeffs[x] = a
        resid = resid - basis[x] * a
    if any(not p.is_zero() for p in resid.values.values()):
        raise CoxcatError("class is not in the span of the basis")
    return coeffs


def betti(c: CoxeterElement) -> list[int]:
    """Counts of noncrossing partitions by cluster size; flowup degrees must agree."""
    nc = build_nc(c)
    sizes = [len(nc.clust_plus[u]) for u in nc.elements]
    top = max(sizes)
    hist = [sizes.count(i) for i in range(top + 1)]
    degs = [_leading(u, nc).degree() for u in nc.elements]
    if [degs.count(i) for i in range(top + 1)] != hist:
        raise CoxcatError("Betti numbers disagree between clusters and flowup degrees")
    return hist


def betti_full(rs: RootSystemData) -> list[int]:
    lengths = [w.length for w in rs.elements()]
    return [lengths.count(i) for i in range(max(lengths) + 1)]


# conjugation isomorphisms


def psi_iso(c: CoxeterElement, w: WeylElement):
    """The map (f_u) -> (w . f_{w^-1 v w}) from NC(c) classes to NC(w c w^-1) classes."""
    cp = c.conjugate(w)
    if cp is None:
        raise ValidationError("w c w^-1 is not a Coxeter element")
    wi = w.inverse()
    target = build_nc(cp)

    def apply(f: GkmClass) -> GkmClass:
        return GkmClass({v: act_on_poly(w, f.values[wi * v * w]) for v in target.elements})

    apply.target = cp
    return apply


def psi_compose_check(c: CoxeterElement, w: WeylElement, w2: WeylElement, f: GkmClass) -> bool:
    first = psi_iso(c, w)
    second = psi_iso(first.target, w2)
    both = psi_iso(c, w2 * w)
    return second(first(f)) == both(f)


def restrict_and_expand(c: CoxeterElement) -> dict:
    """Expand each Schubert class, restricted to NC, in the duality basis.

    Returns {v: {u: coefficient}}; positivity of the constant terms is the
    experimental question being probed.
    """
    rs = c.rs
    nc = build_nc(c)
    basis = duality_basis(c)
    sch = schubert_classes(rs)
    out = {}
    for v, cls in sch.items():
        res = GkmClass({x: cls.values[x] for x in nc.elements})
        out[v] = expand_in_basis(res, basis, nc)
    return out


def structure_constants(c: CoxeterElement) -> dict:
    """Coefficients of products of duality basis classes, {(u, v): {w: coeff}}."""
    nc = build_nc(c)
    basis = duality_basis(c)
    out = {}
    for u in nc.elements:
        for v in nc.elements:
            out[(u, v)] = expand_in_basis(basis[u] * basis[v], basis, nc)
    return out


def _is_inverse_iso(c: CoxeterElement, w: WeylElement, f: GkmClass) -> bool:
    there = psi_iso(c, w)
    back = psi_iso(there.target, w.inverse())
    return back(there(f)) == f


def psi_ring_check(c: CoxeterElement, w: WeylElement, classes: Sequence[GkmClass]) -> bool:
    """Psi_(c,w) respects sums and products, lands in classes and has an inverse."""
    psi = psi_iso(c, w)
    target = nc_graph(psi.target)
    for f in classes:
        if not is_class(psi(f), target) or not _is_inverse_iso(c, w, f):
            return False
    for f in classes:
        for g in classes:
            if psi(f + g) != psi(f) + psi(g) or psi(f * g) != psi(f) * psi(g):
                return False
    return True


def psi_duality_witness(c: CoxeterElement):
    """(w, u) with Psi_(c,w) of the duality class at u not the duality class at w u w^-1."""
    rs = c.rs
    basis = duality_basis(c)
    for w in rs.elements():
        cp = c.conjugate(w)
        if cp is None or cp.element == c.element:
            continue
        psi = psi_iso(c, w)
        other = duality_basis(cp)
        for u in sorted(basis):
            if psi(basis[u]) != other[u.conj(w)]:
                return w, u
    return None


@dataclass
class GkmReport:
    coxeter: CoxeterElement
    checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def verify_gkm_bases(c: CoxeterElement) -> GkmReport:
    """Duality, flowup vanishing and leading terms of the duality basis,
    plus the interpolated flowup basis and the change of basis between them.
    """
    rs = c.rs
    n = rs.rank
    nc = build_nc(c)
    graph = nc_graph(c)
    basis = duality_basis(c)
    rep = GkmReport(c)
    for u in nc.elements:
        f = basis[u]
        rep.checked += 1
        if not is_class(f, graph):
            rep.failures.append({"u": u, "reason": "not a GKM class"})
        if f.values[u] != _leading(u, nc):
            rep.failures.append({"u": u, "reason": "leading term"})
        for v in nc.elements:
            if not bruhat_leq(u, v) and not f.values[v].is_zero():
                rep.failures.append({"u": u, "v": v, "reason": "flowup vanishing"})
            r = integrate(f.values, paving_piece(v, c))
            if not (r.is_polynomial() and r.as_poly() == IntPoly.const(n, int(u == v))):
                rep.failures.append({"u": u, "v": v, "reason": "duality", "integral": str(r)})
    flow = flowup_basis_interpolate(c)
    for u, f in flow.items():
        if not is_class(f, graph):
            rep.failures.append({"u": u, "reason": "interpolated class is not GKM"})
    for u in nc.elements:
        try:
            expand_in_basis(basis[u], flow, nc)
        except CoxcatError as e:
            rep.failures.append({"u": u, "reason": f"expansion: {e}"})
    return rep
