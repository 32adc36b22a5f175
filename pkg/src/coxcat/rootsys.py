"""
Crystallographic root systems and their Weyl groups.

A root system is built from a Cartan datum by closing the simple roots
under the simple reflections. Roots are integer vectors in the basis of
simple roots, and a group element is stored as the permutation it induces
on the finite set of roots. That makes products, inverses, lengths and
descents cheap, and works the same way for every finite type.

For the classical types the ambient coordinates are the usual epsilon
coordinates, so elements also have a (signed) one-line form.

>>> rs = root_system("B", 2)
>>> [str(rs.root(i)) for i in rs.positive_indices]
['(1, 0)', '(0, 1)', '(1, 1)', '(2, 1)']
>>> c = rs.from_word([0, 1])
>>> c.one_line
(2, -1)
>>> rs.from_one_line((2, -1)) == c
True
>>> len(rs.elements()), rs.w0.length
(8, 4)
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

__all__ = [
    "CoxcatError", "ValidationError", "NotFiniteTypeError", "MixedGroupError",
    "CartanDatum", "Root", "WeylElement", "Reflection", "RootSystemData",
    "classical_datum", "custom_datum", "build_root_system", "root_system",
    "root_of_reflection", "reflection_of_root", "act", "enumerate_weyl",
    "format_one_line", "parse_one_line",
]

MAX_ROOTS = 10000


class CoxcatError(Exception):
    """Base class for errors raised by this package."""


class ValidationError(CoxcatError, ValueError):
    pass


class NotFiniteTypeError(CoxcatError):
    pass


class MixedGroupError(CoxcatError, ValueError):
    pass


def _frac_matrix(rows) -> tuple[tuple[Fraction, ...], ...]:
    return tuple(tuple(Fraction(x) for x in row) for row in rows)


def _dot(form, u, v) -> Fraction:
    return sum((u[i] * form[i][j] * v[j]
                for i in range(len(u)) if u[i]
                for j in range(len(v)) if v[j]), Fraction(0))


@dataclass(frozen=True)
class CartanDatum:
    """Cartan matrix together with simple roots in an ambient space.

    ``cartan_matrix[i][j]`` is the pairing of the i-th simple root with the
    j-th simple coroot. ``labels`` are the names used for the simple
    reflections in input and output (1..n for type A, 0..n-1 otherwise).
    """
    type_label: str
    rank: int
    cartan_matrix: tuple[tuple[int, ...], ...]
    simple_roots: tuple[tuple[Fraction, ...], ...]
    bilinear_form: tuple[tuple[Fraction, ...], ...]
    labels: tuple[int, ...] = ()

    def __post_init__(self):
        n = self.rank
        if n < 1:
            raise ValidationError("rank must be positive")
        A = self.cartan_matrix
        if len(A) != n or any(len(row) != n for row in A):
            raise ValidationError("Cartan matrix must be n x n")
        for i in range(n):
            if A[i][i] != 2:
                raise ValidationError("Cartan matrix diagonal must be 2")
            for j in range(n):
                if i != j and A[i][j] > 0:
                    raise ValidationError("off-diagonal Cartan entries must be <= 0")
                if (A[i][j] == 0) != (A[j][i] == 0):
                    raise ValidationError("Cartan matrix zero pattern must be symmetric")
        if len(self.simple_roots) != n:
            raise ValidationError("need one simple root per rank")
        dim = len(self.bilinear_form)
        if any(len(r) != dim for r in self.simple_roots):
            raise ValidationError("simple roots must live in the ambient space")
        F = self.bilinear_form
        if any(F[i][j] != F[j][i] for i in range(dim) for j in range(dim)):
            raise ValidationError("bilinear form must be symmetric")
        for i in range(n):
            for j in range(n):
                ai, aj = self.simple_roots[i], self.simple_roots[j]
                if 2 * _dot(F, ai, aj) / _dot(F, aj, aj) != A[i][j]:
                    raise ValidationError("simple roots do not reproduce the Cartan matrix")
        if not self.labels:
            object.__setattr__(self, "labels", tuple(range(n)))

    @property
    def ambient_dim(self) -> int:
        return len(self.bilinear_form)


def classical_datum(type_label: str, rank: int) -> CartanDatum:
    """Datum for A_n, B_n, C_n, D_n in epsilon coordinates.

    Type A uses alpha_i = e_i - e_{i+1} in dimension n+1. Types B, C, D use
    alpha_0 = e_1, 2 e_1, e_1 + e_2 respectively and alpha_i = e_{i+1} - e_i.
    The form in type B is twice the dot product so that short roots have
    squared length 2.
    """
    t = type_label.upper()
    n = int(rank)
    if n < 1:
        raise ValidationError("rank must be positive")

    def unit(dim, i):
        v = [0] * dim
        v[i] = 1
        return v

    if t == "A":
        dim = n + 1
        roots = []
        for i in range(n):
            v = [0] * dim
            v[i], v[i + 1] = 1, -1
            roots.append(v)
        scale = 1
        labels = tuple(range(1, n + 1))
    elif t in ("B", "C", "D"):
        if t == "D" and n < 2:
            raise ValidationError("type D needs rank >= 2")
        dim = n
        if t == "B":
            first = unit(n, 0)
        elif t == "C":
            first = [2 * x for x in unit(n, 0)]
        else:
            first = [1, 1] + [0] * (n - 2)
        roots = [first]
        for i in range(1, n):
            v = [0] * dim
            v[i], v[i - 1] = 1, -1
            roots.append(v)
        scale = 2 if t == "B" else 1
        labels = tuple(range(n))
    else:
        raise ValidationError(f"unknown classical type {type_label!r}")
    form = [[scale if i == j else 0 for j in range(dim)] for i in range(dim)]
    F = _frac_matrix(form)
    simple = _frac_matrix(roots)
    A = tuple(tuple(int(2 * _dot(F, a, b) / _dot(F, b, b)) for b in simple) for a in simple)
    return CartanDatum(t, n, A, simple, F, labels)


def custom_datum(cartan_matrix: Sequence[Sequence[int]]) -> CartanDatum:
    """Datum for an arbitrary symmetrizable Cartan matrix.

    The ambient space is spanned by the simple roots themselves and the form
    is the symmetrization, found by propagating root lengths along the
    Dynkin diagram.
    """
    A = tuple(tuple(int(x) for x in row) for row in cartan_matrix)
    n = len(A)
    if n == 0 or any(len(row) != n for row in A):
        raise ValidationError("Cartan matrix must be square and nonempty")
    half_sq: list[Fraction | None] = [None] * n
    for start in range(n):
        if half_sq[start] is not None:
            continue
        half_sq[start] = Fraction(1)
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(n):
                if i == j or A[i][j] == 0:
                    continue
                if A[j][i] == 0:
                    raise ValidationError("Cartan matrix zero pattern must be symmetric")
                # (a_i, a_j) = A[i][j] d_j = A[j][i] d_i
                dj = Fraction(A[j][i]) * half_sq[i] / A[i][j]
                if half_sq[j] is None:
                    half_sq[j] = dj
                    stack.append(j)
                elif half_sq[j] != dj:
                    raise ValidationError("Cartan matrix is not symmetrizable")
    form = tuple(tuple(Fraction(A[i][j]) * half_sq[j] for j in range(n)) for i in range(n))
    simple = tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))
    return CartanDatum("Custom", n, A, simple, form, tuple(range(n)))


@dataclass(frozen=True)
class Root:
    """A root written in the basis of simple roots."""
    coords: tuple[int, ...]

    @property
    def positive(self) -> bool:
        return any(x > 0 for x in self.coords)

    @property
    def height(self) -> int:
        return sum(self.coords)

    def __neg__(self) -> "Root":
        return Root(tuple(-x for x in self.coords))

    def __str__(self) -> str:
        return str(self.coords)


@dataclass(frozen=True, eq=False)
class WeylElement:
    """Group element stored as the permutation it induces on root indices."""
    rs: "RootSystemData" = field(repr=False)
    key: tuple[int, ...]

    def __eq__(self, other):
        if not isinstance(other, WeylElement):
            return NotImplemented
        return self.key == other.key and self.rs is other.rs

    def __hash__(self):
        return hash(self.key)

    def __lt__(self, other: "WeylElement") -> bool:
        return (self.length, self.word) < (other.length, other.word)

    def _check(self, other: "WeylElement"):
        if other.rs is not self.rs:
            raise MixedGroupError("elements belong to different groups")

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        self._check(other)
        k = self.key
        return WeylElement(self.rs, tuple(k[j] for j in other.key))

    def inverse(self) -> "WeylElement":
        inv = [0] * len(self.key)
        for i, j in enumerate(self.key):
            inv[j] = i
        return WeylElement(self.rs, tuple(inv))

    def conj(self, g: "WeylElement") -> "WeylElement":
        """Return g * self * g^-1."""
        return g * self * g.inverse()

    @cached_property
    def length(self) -> int:
        npos = self.rs.n_pos
        return sum(1 for i in range(npos) if self.key[i] >= npos)

    def is_right_descent(self, i: int) -> bool:
        return self.key[i] >= self.rs.n_pos

    def is_left_descent(self, i: int) -> bool:
        return self.inverse().key[i] >= self.rs.n_pos

    def right_descents(self) -> frozenset[int]:
        return frozenset(i for i in range(self.rs.rank) if self.is_right_descent(i))

    def left_descents(self) -> frozenset[int]:
        inv = self.inverse()
        return frozenset(i for i in range(self.rs.rank) if inv.is_right_descent(i))

    @cached_property
    def word(self) -> tuple[int, ...]:
        """Lexicographically least reduced word (internal simple indices)."""
        out = []
        w = self
        while w.length:
            i = min(w.left_descents())
            out.append(i)
            w = self.rs.simple(i) * w
        return tuple(out)

    @property
    def word_labels(self) -> tuple[int, ...]:
        labels = self.rs.datum.labels
        return tuple(labels[i] for i in self.word)

    @cached_property
    def matrix(self) -> tuple[tuple[int, ...], ...]:
        """Integer matrix on the root lattice; column j is w(alpha_j)."""
        n = self.rs.rank
        cols = [self.rs.roots[self.key[j]] for j in range(n)]
        return tuple(tuple(cols[j][i] for j in range(n)) for i in range(n))

    @cached_property
    def inversion_set(self) -> frozenset[int]:
        """Indices of positive roots beta with w^-1(beta) negative."""
        inv = self.inverse().key
        npos = self.rs.n_pos
        return frozenset(i for i in range(npos) if inv[i] >= npos)

    def act(self, v: Sequence) -> tuple[Fraction, ...]:
        return act(self, v)

    @cached_property
    def one_line(self) -> tuple[int, ...] | None:
        return self.rs._one_line(self)

    def __repr__(self) -> str:
        ol = self.one_line
        if ol is not None:
            return f"W({format_one_line(ol)})"
        return f"W(word={self.word_labels})"


@dataclass(frozen=True)
class Reflection:
    """A reflection together with its positive root."""
    element: WeylElement
    root: Root

    def __str__(self) -> str:
        return repr(self.element)


class RootSystemData:
    """Roots, positive roots, reflections and the Weyl group of a datum."""

    def __init__(self, datum: CartanDatum):
        self.datum = datum
        self.rank = n = datum.rank
        A = datum.cartan_matrix

        def reflect(beta, i):
            pairing = sum(beta[j] * A[j][i] for j in range(n))
            if pairing == 0:
                return beta
            out = list(beta)
            out[i] -= pairing
            return tuple(out)

        simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
        seen = set(simple)
        frontier = list(simple)
        while frontier:
            new = []
            for beta in frontier:
                for i in range(n):
                    gamma = reflect(beta, i)
                    if gamma not in seen:
                        seen.add(gamma)
                        new.append(gamma)
                        if len(seen) > MAX_ROOTS:
                            raise NotFiniteTypeError("not finite type")
            frontier = new
        pos = [r for r in seen if all(x >= 0 for x in r)]
        if len(pos) * 2 != len(seen) or any(
                not (all(x >= 0 for x in r) or all(x <= 0 for x in r)) for r in seen):
            raise NotFiniteTypeError("not finite type")
        pos.sort(key=lambda r: (sum(r), tuple(-x for x in r)))
        self.roots: list[tuple[int, ...]] = pos + [tuple(-x for x in r) for r in pos]
        self.n_pos = len(pos)
        self.index = {r: i for i, r in enumerate(self.roots)}
        self._simple_keys = [
            tuple(self.index[reflect(r, i)] for r in self.roots) for i in range(n)]
        self.identity = WeylElement(self, tuple(range(len(self.roots))))
        self._simples = [WeylElement(self, k) for k in self._simple_keys]
        self._ambient = [self._to_ambient(r) for r in self.roots]
        self._ambient_index = {v: i for i, v in enumerate(self._ambient)}
        self._reflections = self._build_reflections()
        self._refl_by_key = {t.element.key: j for j, t in enumerate(self._reflections)}
        self._elements = None
        self._w0 = None

    def __repr__(self) -> str:
        return f"RootSystemData({self.datum.type_label}{self.rank})"

    @property
    def type_label(self) -> str:
        return self.datum.type_label

    @property
    def positive_indices(self) -> range:
        return range(self.n_pos)

    def root(self, i: int) -> Root:
        return Root(self.roots[i])

    def root_index(self, root) -> int:
        coords = root.coords if isinstance(root, Root) else tuple(root)
        try:
            return self.index[coords]
        except KeyError:
            raise ValidationError(f"{coords} is not a root") from None

    def negate(self, i: int) -> int:
        return i + self.n_pos if i < self.n_pos else i - self.n_pos

    def simple(self, i: int) -> WeylElement:
        return self._simples[i]

    def label_to_index(self, label: int) -> int:
        try:
            return self.datum.labels.index(label)
        except ValueError:
            raise ValidationError(f"no simple reflection labelled {label}") from None

    def from_word(self, word: Iterable[int], labels: bool = False) -> WeylElement:
        w = self.identity
        for i in word:
            w = w * self.simple(self.label_to_index(i) if labels else i)
        return w

    # ambient geometry

    def _to_ambient(self, coords) -> tuple[Fraction, ...]:
        S = self.datum.simple_roots
        dim = self.datum.ambient_dim
        return tuple(sum((coords[i] * S[i][k] for i in range(self.rank)), Fraction(0))
                     for k in range(dim))

    def ambient(self, coords) -> tuple[Fraction, ...]:
        """Ambient vector of a vector given in simple-root coordinates."""
        return self._to_ambient(tuple(coords))

    def to_root_coords(self, v: Sequence) -> tuple[Fraction, ...]:
        """Coordinates in the simple-root basis of an ambient vector in their span."""
        S = self.datum.simple_roots
        n, dim = self.rank, self.datum.ambient_dim
        # least squares is unnecessary: solve the n x n system from the Gram matrix
        gram = [[self.form(S[i], S[j]) for j in range(n)] for i in range(n)]
        rhs = [self.form(S[i], v) for i in range(n)]
        sol = _solve(gram, rhs)
        back = self._to_ambient(sol)
        if any(Fraction(back[k]) != Fraction(v[k]) for k in range(dim)):
            raise ValidationError("vector is not in the span of the roots")
        return tuple(sol)

    def form(self, u, v) -> Fraction:
        return _dot(self.datum.bilinear_form, u, v)

    def root_form(self, a, b) -> Fraction:
        """Bilinear form of two vectors given in simple-root coordinates."""
        return self.form(self._to_ambient(tuple(a)), self._to_ambient(tuple(b)))

    @cached_property
    def gram(self) -> tuple[tuple[Fraction, ...], ...]:
        S = self.datum.simple_roots
        return tuple(tuple(self.form(S[i], S[j]) for j in range(self.rank)) for i in range(self.rank))

    def coroot(self, root) -> tuple[Fraction, ...]:
        """Ambient coroot 2 alpha / (alpha, alpha)."""
        v = self._to_ambient(root.coords if isinstance(root, Root) else tuple(root))
        sq = self.form(v, v)
        return tuple(2 * x / sq for x in v)

    # reflections

    def _build_reflections(self) -> list[Reflection]:
        n = self.rank
        A = self.datum.cartan_matrix
        keys: dict[int, WeylElement] = {}
        for idx in range(self.n_pos):
            beta = self.roots[idx]
            if sum(beta) == 1:
                keys[idx] = self._simples[beta.index(1)]
                continue
            for i in range(n):
                if sum(beta[j] * A[j][i] for j in range(n)) > 0:
                    gamma = list(beta)
                    gamma[i] -= sum(beta[j] * A[j][i] for j in range(n))
                    s = self._simples[i]
                    keys[idx] = s * keys[self.index[tuple(gamma)]] * s
                    break
            else:  # pragma: no cover - impossible for finite root systems
                raise NotFiniteTypeError("could not lower root")
        return [Reflection(keys[i], Root(self.roots[i])) for i in range(self.n_pos)]

    @property
    def reflections(self) -> list[Reflection]:
        return list(self._reflections)

    def reflection(self, root_idx: int) -> Reflection:
        if root_idx >= self.n_pos:
            root_idx = self.negate(root_idx)
        return self._reflections[root_idx]

    def is_reflection(self, w: WeylElement) -> bool:
        return w.key in self._refl_by_key

    def reflection_root_index(self, w: WeylElement) -> int:
        """Index of the positive root of a reflection."""
        try:
            return self._refl_by_key[w.key]
        except KeyError:
            raise ValidationError(f"{w!r} is not a reflection") from None

    # the group

    def elements(self) -> list[WeylElement]:
        if self._elements is None:
            self._elements = enumerate_weyl(self)
        return self._elements

    @property
    def w0(self) -> WeylElement:
        if self._w0 is None:
            w = self.identity
            while True:
                for i in range(self.rank):
                    if not w.is_right_descent(i):
                        w = w * self.simple(i)
                        break
                else:
                    break
            self._w0 = w
        return self._w0

    def parabolic(self, subset: Iterable[int]) -> list[WeylElement]:
        """Elements of the standard parabolic subgroup on the given simple indices."""
        gens = sorted(set(subset))
        seen = {self.identity}
        frontier = [self.identity]
        while frontier:
            new = []
            for w in frontier:
                for i in gens:
                    x = w * self.simple(i)
                    if x not in seen:
                        seen.add(x)
                        new.append(x)
            frontier = new
        return sorted(seen)

    # classical one-line forms

    @property
    def is_classical(self) -> bool:
        return self.type_label in ("A", "B", "C", "D")

    def _one_line(self, w: WeylElement) -> tuple[int, ...] | None:
        if not self.is_classical:
            return None
        dim = self.datum.ambient_dim
        out = []
        for j in range(dim):
            e = [Fraction(0)] * dim
            e[j] = Fraction(1)
            img = act(w, e)
            k = next(i for i, x in enumerate(img) if x)
            out.append((k + 1) * int(img[k]))
        return tuple(out)

    def from_one_line(self, seq: Sequence[int]) -> WeylElement:
        """Element with the given (signed) one-line form."""
        if not self.is_classical:
            raise ValidationError("one-line forms exist only for classical types")
        dim = self.datum.ambient_dim
        seq = tuple(int(x) for x in seq)
        if len(seq) != dim or sorted(abs(x) for x in seq) != list(range(1, dim + 1)):
            raise ValidationError(f"{seq} is not a signed permutation of size {dim}")
        if self.type_label == "A" and any(x < 0 for x in seq):
            raise ValidationError("type A one-line forms have no signs")
        if self.type_label == "D" and sum(x < 0 for x in seq) % 2:
            raise ValidationError("type D elements have an even number of signs")

        def apply(v):
            out = [Fraction(0)] * dim
            for j, x in enumerate(v):
                if x:
                    k = seq[j]
                    out[abs(k) - 1] += x if k > 0 else -x
            return tuple(out)

        return WeylElement(self, tuple(self._ambient_index[apply(v)] for v in self._ambient))


def act(w: WeylElement, v: Sequence) -> tuple[Fraction, ...]:
    """Action of w on an ambient vector, one simple reflection at a time."""
    rs = w.rs
    dim = rs.datum.ambient_dim
    if len(v) != dim:
        raise ValidationError(f"expected a vector of length {dim}")
    out = [Fraction(x) for x in v]
    S = rs.datum.simple_roots
    for i in reversed(w.word):
        a = S[i]
        c = 2 * rs.form(out, a) / rs.form(a, a)
        if c:
            out = [out[k] - c * a[k] for k in range(dim)]
    return tuple(out)


def build_root_system(datum: CartanDatum) -> RootSystemData:
    return RootSystemData(datum)


_CACHE: dict[tuple[str, int], RootSystemData] = {}


def root_system(type_label: str, rank: int) -> RootSystemData:
    """Cached root system of a classical type."""
    key = (type_label.upper(), int(rank))
    if key not in _CACHE:
        _CACHE[key] = RootSystemData(classical_datum(*key))
    return _CACHE[key]


def root_of_reflection(tau: Reflection | WeylElement) -> Root:
    w = tau.element if isinstance(tau, Reflection) else tau
    return w.rs.root(w.rs.reflection_root_index(w))


def reflection_of_root(rs: RootSystemData, alpha) -> Reflection:
    idx = rs.root_index(alpha)
    if idx >= rs.n_pos:
        raise ValidationError("reflection_of_root expects a positive root")
    return rs.reflection(idx)


def enumerate_weyl(rs: RootSystemData) -> list[WeylElement]:
    """All group elements, by breadth-first search, sorted by (length, word)."""
    seen = {rs.identity}
    frontier = [rs.identity]
    while frontier:
        new = []
        for w in frontier:
            for i in range(rs.rank):
                x = w * rs.simple(i)
                if x not in seen:
                    seen.add(x)
                    new.append(x)
        frontier = new
    return sorted(seen)


def format_one_line(seq: Sequence[int]) -> str:
    """Compact one-line form; negatives are written with a leading minus.

    >>> format_one_line((4, 1, 3, 5, 2))
    '41352'
    >>> format_one_line((-3, 1, 2))
    '-3,1,2'
    """
    if all(0 < x < 10 for x in seq):
        return "".join(str(x) for x in seq)
    return ",".join(str(x) for x in seq)


def parse_one_line(text: str) -> tuple[int, ...]:
    """Inverse of ``format_one_line``; also accepts overlined digits as '-k'.

    >>> parse_one_line("41352")
    (4, 1, 3, 5, 2)
    >>> parse_one_line("-3,-4,2,-1")
    (-3, -4, 2, -1)
    """
    text = text.strip()
    if "," in text or " " in text:
        return tuple(int(x) for x in text.replace(" ", ",").split(",") if x)
    out, sign = [], 1
    for ch in text:
        if ch == "-":
            sign = -1
        else:
            out.append(sign * int(ch))
            sign = 1
    return tuple(out)


def _solve(matrix, rhs) -> list[Fraction]:
    """Solve a square nonsingular rational system by Gauss-Jordan elimination."""
    n = len(matrix)
    M = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(matrix, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col]), None)
        if piv is None:
            raise ValidationError("singular system")
        M[col], M[piv] = M[piv], M[col]
        p = M[col][col]
        M[col] = [x / p for x in M[col]]
        for r in range(n):
            if r != col and M[r][col]:
                f = M[r][col]
                M[r] = [a - f * b for a, b in zip(M[r], M[col])]
    return [M[r][n] for r in range(n)]
