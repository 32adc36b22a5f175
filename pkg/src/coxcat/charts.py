"""
Matrix charts for Schubert cells and Coxeter Schubert cells of the
classical groups, with Plücker coordinates checked over a prime field.

A chart is a matrix pattern over the symbols 1, * (free entry), x (entry
forced by isotropy of the columns) and 0. For type A the pattern has n+1
columns; for B, C and D only the first n columns (labelled -n..-1) are
kept, since they span a maximal isotropic subspace.

Rows are labelled 1..n+1 in type A, -n..-1, 0, 1..n in type B and
-n..-1, 1..n in types C and D. The 1 in column k sits in row w(k), where
w(-k) = -w(k).

>>> from coxcat.rootsys import root_system
>>> from coxcat.catalan import coxeter_element
>>> rs = root_system("A", 2)
>>> print(schubert_chart(rs.from_one_line((3, 2, 1))).render())
* * 1
* 1 .
1 . .
>>> rs = root_system("B", 2)
>>> print(schubert_chart(rs.from_one_line((2, -1))).render())
* 1
x .
* .
1 .
. .
>>> c = coxeter_element(rs, [1, 0])
>>> nc_cell_chart(rs.from_one_line((1, -2)), c).variable_count
2
"""

from __future__ import annotations

import os
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

from .catalan import CoxeterElement, build_nc
from .rootsys import CoxcatError, ValidationError, WeylElement

__all__ = [
    "ChartPattern", "FiniteFieldPoint", "ChartSolveError", "PluckerReport",
    "schubert_chart", "nc_cell_chart", "sample_point", "point_from_values",
    "plucker_vector", "plucker_coordinate", "verify_plucker_vanishing",
    "reduce_to_chart", "root_group_point", "is_prime", "DEFAULT_PRIME",
]

DEFAULT_PRIME = 10007


class ChartSolveError(CoxcatError):
    """The isotropy conditions do not pin down the crossed entries."""


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


def _row_labels(t: str, n: int) -> tuple[int, ...]:
    if t == "A":
        return tuple(range(1, n + 2))
    neg = tuple(range(-n, 0))
    pos = tuple(range(1, n + 1))
    return neg + (0,) + pos if t == "B" else neg + pos


def _col_labels(t: str, n: int) -> tuple[int, ...]:
    return tuple(range(1, n + 2)) if t == "A" else tuple(range(-n, 0))


def _signed(w: WeylElement):
    """w as a function on the row/column labels."""
    one = w.one_line
    if one is None:
        raise ValidationError("charts exist only for the classical types")

    def f(k: int) -> int:
        if k == 0:
            return 0
        return one[k - 1] if k > 0 else -one[-k - 1]
    return f


@dataclass
class ChartPattern:
    """Pattern of a Schubert cell chart.

    ``shape[i][j]`` is one of '1', '*', 'x', '0' (a star set to zero) or
    '.'. ``stars`` lists the free positions in reading order and
    ``star_roots`` gives the positive root (simple-root coordinates) of the
    root subgroup each star parametrizes.
    """
    group_type: str
    element: WeylElement
    row_labels: tuple[int, ...]
    col_labels: tuple[int, ...]
    shape: list[list[str]]
    stars: list[tuple[int, int]] = field(default_factory=list)
    crosses: list[tuple[int, int]] = field(default_factory=list)
    star_roots: dict = field(default_factory=dict)

    @property
    def variable_count(self) -> int:
        return len(self.stars)

    @property
    def column_block(self) -> int:
        return len(self.col_labels)

    @property
    def nrows(self) -> int:
        return len(self.row_labels)

    def ones(self) -> list[tuple[int, int]]:
        return [(i, j) for i, row in enumerate(self.shape) for j, s in enumerate(row) if s == "1"]

    def render(self, zero: str = ".") -> str:
        """Rows of symbols; ``zero`` replaces structural zeros."""
        return "\n".join(" ".join(zero if s == "." else s for s in row) for row in self.shape)

    def render_labelled(self) -> str:
        def lab(k):
            return f"-{-k}" if k < 0 else str(k)
        width = max(len(lab(k)) for k in self.row_labels + self.col_labels)
        head = " " * (width + 1) + " ".join(lab(k).rjust(width) for k in self.col_labels)
        body = [lab(r).rjust(width) + " " + " ".join(
            ("⊗" if s == "x" else s).rjust(width) for s in row)
            for r, row in zip(self.row_labels, self.shape)]
        return "\n".join([head] + body)

    def to_json(self) -> dict:
        return {
            "type": self.group_type,
            "cell": list(self.element.one_line),
            "rows": list(self.row_labels),
            "columns": list(self.col_labels),
            "shape": ["".join(r) for r in self.shape],
            "variables": self.variable_count,
        }


def schubert_chart(w: WeylElement) -> ChartPattern:
    """Chart of the Schubert cell U_w w B/B with one star per inversion."""
    rs = w.rs
    t = rs.type_label
    n = rs.rank
    wf = _signed(w)
    rows = _row_labels(t, n)
    cols = _col_labels(t, n)
    rpos = {r: i for i, r in enumerate(rows)}
    shape = [["."] * len(cols) for _ in rows]
    one_row = {}
    for j, k in enumerate(cols):
        one_row[j] = rpos[wf(k)]
        shape[one_row[j]][j] = "1"
    stars, crosses, roots = [], [], {}
    for j, k in enumerate(cols):
        for i in range(one_row[j]):
            if any(one_row[jj] == i for jj in range(j)):
                continue
            r = rows[i]
            if t != "A" and _crossed(t, r, j, cols, wf):
                shape[i][j] = "x"
                crosses.append((i, j))
                continue
            shape[i][j] = "*"
            stars.append((i, j))
            roots[(i, j)] = _star_root(rs, t, r, wf(k))
    pat = ChartPattern(t, w, rows, cols, shape, stars, crosses, roots)
    expected = {rs.root(b).coords for b in w.inversion_set}
    if set(roots.values()) != expected or len(stars) != w.length:
        raise CoxcatError(f"chart of {w!r} does not match its inversions")
    return pat


def _crossed(t: str, r: int, j: int, cols, wf) -> bool:
    for jj in range(j + 1):
        if jj == j and t == "C":
            break
        if r == -wf(cols[jj]):
            return True
    return False


def _star_root(rs, t: str, r: int, wk: int) -> tuple[int, ...]:
    dim = rs.datum.ambient_dim
    v = [0] * dim

    def add(label, s):
        if label:
            v[abs(label) - 1] += s if label > 0 else -s

    if t == "A":
        add(r, 1)
        add(wk, -1)
    else:
        add(wk, 1)
        add(r, -1)
    coords = tuple(int(x) for x in rs.to_root_coords(v))
    if coords not in rs.index or rs.index[coords] >= rs.n_pos:
        raise CoxcatError(f"chart entry does not give a positive root: {coords}")
    return coords


def nc_cell_chart(u: WeylElement, c: CoxeterElement) -> ChartPattern:
    """Chart of the Coxeter Schubert cell: stars off the noncrossing inversions are zeroed."""
    nc = build_nc(c)
    if u not in nc:
        raise ValidationError(f"{u!r} is not noncrossing for this Coxeter element")
    rs = u.rs
    keep = {rs.root(rs.reflection_root_index(t)).coords for t in nc.inv_nc[u]}
    pat = schubert_chart(u)
    stars = []
    for (i, j) in pat.stars:
        if pat.star_roots[(i, j)] in keep:
            stars.append((i, j))
        else:
            pat.shape[i][j] = "0"
            del pat.star_roots[(i, j)]
    pat.stars = stars
    return pat


# finite-field points

@dataclass
class FiniteFieldPoint:
    prime: int
    matrix: list[list[int]]
    pattern: ChartPattern
    values: tuple[int, ...] = ()

    def isotropy_defects(self) -> list[tuple[int, int]]:
        """Pairs of columns (j, k), j <= k, whose pairing is nonzero."""
        pat = self.pattern
        if pat.group_type == "A":
            return []
        G = _form(pat.group_type, pat.row_labels)
        cols = list(zip(*self.matrix))
        p = self.prime
        bad = []
        for k in range(len(cols)):
            for j in range(k + 1):
                if _pair(G, cols[j], cols[k]) % p:
                    bad.append((j, k))
        return bad


def _form(t: str, rows: Sequence[int]) -> dict:
    pos = {r: i for i, r in enumerate(rows)}
    G = {}
    for r in rows:
        if r == 0:
            G[(pos[0], pos[0])] = 1
        elif r > 0:
            G[(pos[r], pos[-r])] = 1
            G[(pos[-r], pos[r])] = -1 if t == "C" else 1
    return G


def _pair(G, a, b) -> int:
    return sum(g * a[i] * b[j] for (i, j), g in G.items())


def point_from_values(pattern: ChartPattern, values: Sequence[int], prime: int = DEFAULT_PRIME
                      ) -> FiniteFieldPoint:
    """Fill the stars with ``values`` (reading order) and solve the crosses."""
    if len(values) != pattern.variable_count:
        raise ValidationError(f"expected {pattern.variable_count} values")
    p = prime
    M = [[0] * pattern.column_block for _ in range(pattern.nrows)]
    for i, j in pattern.ones():
        M[i][j] = 1
    for (i, j), v in zip(pattern.stars, values):
        M[i][j] = v % p
    if pattern.crosses:
        _solve_crosses(pattern, M, p)
    pt = FiniteFieldPoint(p, M, pattern, tuple(v % p for v in values))
    if pt.isotropy_defects():
        raise ChartSolveError("solved point is not isotropic")
    return pt


def sample_point(pattern: ChartPattern, prime: int = DEFAULT_PRIME, seed=None) -> FiniteFieldPoint:
    """Uniformly random stars over F_p; crossed entries solved from isotropy."""
    if not is_prime(prime):
        raise ValidationError(f"{prime} is not prime")
    if prime <= 2 * pattern.nrows:
        raise ValidationError("prime must exceed twice the matrix size")
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    vals = [rng.randrange(prime) for _ in pattern.stars]
    return point_from_values(pattern, vals, prime)


def _solve_crosses(pattern: ChartPattern, M: list[list[int]], p: int) -> None:
    """Column by column, the crossed entries are forced by isotropy.

    Pairings with earlier columns are linear in the unknowns of the
    current column; the self-pairing (types B and D) is quadratic but
    becomes linear once the other unknowns are known, since the crossed
    entry opposite the 1 meets it with coefficient 2. Each round
    eliminates over the equations that are currently linear and keeps
    only the unknowns they determine.
    """
    t = pattern.group_type
    G = _form(t, pattern.row_labels)
    crosses_by_col: dict[int, list[int]] = {}
    for i, j in pattern.crosses:
        crosses_by_col.setdefault(j, []).append(i)
    for j in range(pattern.column_block):
        unknown = sorted(crosses_by_col.get(j, []), reverse=True)  # bottom to top
        if not unknown:
            continue
        var = {i: v for v, i in enumerate(unknown)}
        col = [("v", var[i]) if i in var else ("c", M[i][j]) for i in range(pattern.nrows)]
        eqs = []
        for jj in range(j):
            other = [M[i][jj] for i in range(pattern.nrows)]
            eqs.append(_bilinear_poly(G, col, [("c", x) for x in other], p))
        if t in ("B", "D"):
            eqs.append(_bilinear_poly(G, col, col, p))
        known: dict[int, int] = {}
        while len(known) < len(unknown):
            lin = []
            for e in eqs:
                e2 = _substitute(e, known, p)
                if all(len(m) <= 1 for m in e2):
                    lin.append(e2)
            new = _linear_determined(lin, len(unknown), known, p)
            if not new:
                raise ChartSolveError(
                    f"crossed entries of column {pattern.col_labels[j]} are not uniquely determined")
            known.update(new)
        for e in eqs:
            if _substitute(e, known, p):
                raise ChartSolveError(f"isotropy conditions are inconsistent in column {j}")
        for i, v in var.items():
            M[i][j] = known[v]


def _bilinear_poly(G, a, b, p) -> dict:
    """Polynomial of B(a, b); entries are ('c', value) or ('v', index)."""
    out: dict = {}
    for (i, j), g in G.items():
        (ka, xa), (kb, xb) = a[i], b[j]
        mono: tuple = ()
        coef = g
        if ka == "c":
            coef *= xa
        else:
            mono += (xa,)
        if kb == "c":
            coef *= xb
        else:
            mono += (xb,)
        mono = tuple(sorted(mono))
        if coef % p:
            out[mono] = (out.get(mono, 0) + coef) % p
    return {m: c for m, c in out.items() if c}


def _substitute(poly: dict, known: dict, p: int) -> dict:
    out: dict = {}
    for mono, c in poly.items():
        rest = []
        for v in mono:
            if v in known:
                c = c * known[v] % p
            else:
                rest.append(v)
        key = tuple(rest)
        out[key] = (out.get(key, 0) + c) % p
    return {m: c for m, c in out.items() if c}


def _linear_determined(eqs: list[dict], nvars: int, known: dict, p: int) -> dict:
    """Unknowns fixed by a linear system mod p (rows: sum c_v x_v + c = 0)."""
    free = [v for v in range(nvars) if v not in known]
    rows = []
    for e in eqs:
        rows.append([e.get((v,), 0) for v in free] + [e.get((), 0)])
    m = len(free)
    r = 0
    pivots = []
    for col in range(m):
        piv = next((k for k in range(r, len(rows)) if rows[k][col] % p), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][col], p - 2, p)
        rows[r] = [x * inv % p for x in rows[r]]
        for k in range(len(rows)):
            if k != r and rows[k][col]:
                f = rows[k][col]
                rows[k] = [(a - f * b) % p for a, b in zip(rows[k], rows[r])]
        pivots.append(col)
        r += 1
    out = {}
    for k, col in enumerate(pivots):
        if all(rows[k][cc] == 0 for cc in range(m) if cc != col):
            out[free[col]] = (-rows[k][m]) % p
    return out


# Plücker coordinates

def _det_mod(A: list[list[int]], p: int) -> int:
    A = [row[:] for row in A]
    n = len(A)
    det = 1
    for col in range(n):
        piv = next((r for r in range(col, n) if A[r][col] % p), None)
        if piv is None:
            return 0
        if piv != col:
            A[col], A[piv] = A[piv], A[col]
            det = -det
        det = det * A[col][col] % p
        inv = pow(A[col][col], p - 2, p)
        for r in range(col + 1, n):
            if A[r][col]:
                f = A[r][col] * inv % p
                A[r] = [(a - f * b) % p for a, b in zip(A[r], A[col])]
    return det % p


def _row_sets(w: WeylElement) -> list[frozenset[int]]:
    """Row-label sets whose leading minors multiply to Pl_w."""
    rs = w.rs
    t = rs.type_label
    n = rs.rank
    wf = _signed(w)
    if t == "A":
        return [frozenset(wf(k) for k in range(1, i + 1)) for i in range(1, n + 1)]
    lo = 1 if t == "D" else 0
    return [frozenset(-wf(k) for k in range(i + 1, n + 1)) for i in range(lo, n)]


def plucker_coordinate(point: FiniteFieldPoint, w: WeylElement, _cache=None) -> int:
    pat = point.pattern
    rpos = {r: i for i, r in enumerate(pat.row_labels)}
    out = 1
    for S in _row_sets(w):
        if _cache is not None and S in _cache:
            d = _cache[S]
        else:
            idx = sorted(rpos[r] for r in S)
            d = _det_mod([[point.matrix[i][j] for j in range(len(S))] for i in idx], point.prime)
            if _cache is not None:
                _cache[S] = d
        out = out * d % point.prime
        if not out:
            break
    return out


def plucker_vector(point: FiniteFieldPoint) -> dict[WeylElement, int]:
    """Extremal Plücker coordinates Pl_w for every w, as products of minors."""
    cache: dict = {}
    return {w: plucker_coordinate(point, w, cache) for w in point.pattern.element.rs.elements()}


# type A: the root-group product model of a cell

def root_group_point(w: WeylElement, values: dict, prime: int = DEFAULT_PRIME) -> list[list[int]]:
    """(prod of I + x E_ij over the inversions of w) times the permutation matrix of w.

    ``values`` maps (i, j) with i < j to x; the product is taken in
    lexicographic order of (i, j).
    """
    if w.rs.type_label != "A":
        raise ValidationError("root-group products are built here for type A only")
    n1 = w.rs.rank + 1
    p = prime
    U = [[int(a == b) for b in range(n1)] for a in range(n1)]
    for (i, j) in sorted(values):
        E = [[int(a == b) for b in range(n1)] for a in range(n1)]
        E[i - 1][j - 1] = values[(i, j)] % p
        U = [[sum(U[a][k] * E[k][b] for k in range(n1)) % p for b in range(n1)] for a in range(n1)]
    one = w.one_line
    return [[U[a][one[b] - 1] for b in range(n1)] for a in range(n1)]


def reduce_to_chart(M: list[list[int]], w: WeylElement, prime: int = DEFAULT_PRIME) -> list[list[int]]:
    """Representative of M B in the chart normal form of the cell of w.

    Column operations of the upper triangular Borel: scale each pivot to 1
    and clear the pivot row to its right.
    """
    p = prime
    A = [row[:] for row in M]
    n1 = len(A)
    one = w.one_line
    for j in range(n1):
        i = one[j] - 1
        if not A[i][j] % p or any(A[r][j] % p for r in range(i + 1, n1)):
            raise ValidationError("matrix is not in the cell of w")
        inv = pow(A[i][j], p - 2, p)
        for r in range(n1):
            A[r][j] = A[r][j] * inv % p
        for k in range(j + 1, n1):
            f = A[i][k]
            if f:
                for r in range(n1):
                    A[r][k] = (A[r][k] - f * A[r][j]) % p
    return A


# the vanishing sweep

@dataclass
class PluckerReport:
    coxeter: CoxeterElement
    prime: int
    trials: int
    seed: object
    cells: int = 0
    samples: int = 0
    failures: list = field(default_factory=list)
    nonvanishing: dict = field(default_factory=dict)  # u -> samples with Pl_u != 0
    spurious: int = 0  # extra vanishings of Pl_v, v in NC, v != u (statistics only)

    @property
    def min_nonvanishing_rate(self) -> float:
        if not self.nonvanishing:
            return 1.0
        return min(v / self.trials for v in self.nonvanishing.values())

    @property
    def ok(self) -> bool:
        return not self.failures and self.min_nonvanishing_rate >= 0.99

    def to_json(self) -> dict:
        rs = self.coxeter.rs
        return {
            "type": rs.type_label,
            "rank": rs.rank,
            "coxeter": list(self.coxeter.labels),
            "prime": self.prime,
            "trials": self.trials,
            "seed": self.seed,
            "cells": self.cells,
            "samples": self.samples,
            "failures": self.failures,
            "min_nonvanishing_rate": self.min_nonvanishing_rate,
            "spurious_vanishings": self.spurious,
            "ok": self.ok,
        }


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("COXCAT_THREADS", "1")))
    except ValueError:
        return 1


def _check_cell(u, c, nc, outside, trials, prime, seed):
    pat = nc_cell_chart(u, c)
    rs = u.rs
    inv_all = {rs.reflection(i).element for i in u.inversion_set}
    cut = [t * u for t in inv_all - nc.inv_nc[u]]
    fails, good, spurious = [], 0, 0
    for k in range(trials):
        rng = random.Random(f"{seed}:{u.key}:{k}")
        pt = sample_point(pat, prime, rng)
        pl = plucker_vector(pt)
        for w in outside:
            if pl[w]:
                fails.append({"cell": list(u.one_line), "trial": k, "nonzero": list(w.one_line),
                              "reason": "outside NC"})
        for w in cut:
            if pl[w]:
                fails.append({"cell": list(u.one_line), "trial": k, "nonzero": list(w.one_line),
                              "reason": "cut by a non-noncrossing inversion"})
        if pl[u]:
            good += 1
        spurious += sum(1 for v in nc.elements if v != u and not pl[v])
    return u, fails, good, spurious


def verify_plucker_vanishing(c: CoxeterElement, trials: int = 100, prime: int = DEFAULT_PRIME,
                             seed=0) -> PluckerReport:
    """Sample every Coxeter Schubert cell and test the extremal Plücker coordinates.

    On each sample, Pl_w must vanish for w outside NC(W, c) and Pl_(t u)
    must vanish for each inversion t of u that is not a noncrossing
    inversion. Pl_u is expected to be nonzero away from a hypersurface.
    """
    nc = build_nc(c)
    outside = [w for w in c.rs.elements() if w not in nc]
    rep = PluckerReport(c, prime, trials, seed)
    jobs = list(nc.elements)
    with ThreadPoolExecutor(max_workers=_threads()) as ex:
        results = list(ex.map(lambda u: _check_cell(u, c, nc, outside, trials, prime, seed), jobs))
    for u, fails, good, spur in results:
        rep.cells += 1
        rep.samples += trials
        rep.failures.extend(fails)
        rep.nonvanishing[u] = good
        rep.spurious += spur
    return rep
