"""Independent reference computations for the tests.

Dense Gaussian elimination over GF(p) or Q on plain lists, and
brute-force bar complexes and quadratic quotients built straight from
multiplication tables. Nothing here imports the package's linear
algebra.
"""

from __future__ import annotations

import itertools
from fractions import Fraction


def dense_rank(rows: list, p: int) -> int:
    """Rank of a list-of-lists matrix; p = 0 means rational arithmetic."""
    if p:
        m = [[x % p for x in r] for r in rows]
    else:
        m = [[Fraction(x) for x in r] for r in rows]
    if not m or not m[0]:
        return 0
    rank, ncols = 0, len(m[0])
    for col in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][col]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = pow(m[rank][col], -1, p) if p else 1 / m[rank][col]
        m[rank] = [(x * inv) % p if p else x * inv for x in m[rank]]
        for i in range(len(m)):
            if i != rank and m[i][col]:
                f = m[i][col]
                m[i] = [((a - f * b) % p if p else a - f * b) for a, b in zip(m[i], m[rank])]
        rank += 1
    return rank


def complex_matrix(X, n: int) -> list:
    """Dense matrix of d: X_n -> X_{n-1} with rows indexed by X_{n-1}."""
    cols = list(X.labels(n))
    rows = list(X.labels(n - 1))
    idx = {r: i for i, r in enumerate(rows)}
    m = [[0] * len(cols) for _ in rows]
    for j, c in enumerate(cols):
        for r, v in X.d.get(c, {}).items():
            m[idx[r]][j] = int(v) if X.F.p else v
    return m


def dense_homology(X) -> dict:
    """Homology ranks of a package Complex on every computed degree with known neighbours."""
    p = X.F.p
    out = {}
    for n in X.degrees():
        if not (X.window.known(n - 1) and X.window.known(n + 1)):
            continue
        dim = X.rank(n)
        r_out = dense_rank(complex_matrix(X, n), p) if X.labels(n - 1) and dim else 0
        up = X.labels(n + 1)
        r_in = dense_rank(complex_matrix(X, n + 1), p) if up and dim else 0
        out[n] = dim - r_out - r_in
    return out


# --- algebras from multiplication tables ------------------------------------------

class TableAlgebra:
    """Graded algebra given by a basis with degrees and a product table
    on the augmentation ideal: table[(i, j)] = {k: coeff}."""

    def __init__(self, degrees: dict, table: dict, p: int = 101):
        self.deg = degrees
        self.table = table
        self.p = p
        self.ideal = sorted(degrees, key=lambda x: (degrees[x], x))


def dual_numbers(p=101):
    return TableAlgebra({"x": 1}, {}, p)


def truncated(m: int, p=101):
    deg = {f"x{i}": i for i in range(1, m)}
    table = {(f"x{i}", f"x{j}"): {f"x{i + j}": 1} for i in range(1, m) for j in range(1, m) if i + j < m}
    return TableAlgebra(deg, table, p)


def exterior2(p=101):
    return TableAlgebra({"a": 1, "b": 1, "ab": 2}, {("a", "b"): {"ab": 1}, ("b", "a"): {"ab": -1}}, p)


def bar_homology(T: TableAlgebra, top: int) -> dict:
    """H_n of the bar complex of a graded algebra for 0 <= n <= top - 1.

    Words [a1|...|ap] have degree sum(|ai| + 1); the differential is
    sum_i (-1)^(e_i - 1) [..|ai ai+1|..] with e_i = |a1|+...+|ai| + i.
    """
    letters = [(a, T.deg[a] + 1) for a in T.ideal]
    words = {n: [] for n in range(top + 2)}
    for length in range(top + 2):
        for w in itertools.product(letters, repeat=length):
            n = sum(d for _, d in w)
            if n <= top + 1:
                words[n].append(tuple(a for a, _ in w))

    def d(w):
        out = {}
        e = 0
        for i in range(len(w) - 1):
            e += T.deg[w[i]] + 1
            for k, c in T.table.get((w[i], w[i + 1]), {}).items():
                nw = w[:i] + (k,) + w[i + 2:]
                out[nw] = out.get(nw, 0) + (-1) ** (e - 1) * c
        return out

    def mat(n):
        rows = {w: i for i, w in enumerate(words[n - 1])}
        m = [[0] * len(words[n]) for _ in rows]
        for j, w in enumerate(words[n]):
            for k, c in d(w).items():
                m[rows[k]][j] += c
        return m

    out = {}
    for n in range(top):
        dim = len(words[n])
        r_out = dense_rank(mat(n), T.p) if n >= 1 and words[n - 1] and dim else 0
        r_in = dense_rank(mat(n + 1), T.p) if words[n + 1] and dim else 0
        out[n] = dim - r_out - r_in
    return out


def quadratic_quotient_ranks(gens: dict, relations: list, top: int, p: int = 101) -> dict:
    """Ranks of T(gens)/(relations) in absolute degrees 0..top, by spanning
    u·r·w in every degree. gens: name -> nonzero degree; relations:
    list of {word tuple: coeff}."""
    letters = sorted(gens)
    by_deg: dict = {}
    for length in range(top + 1):
        for w in itertools.product(letters, repeat=length):
            n = sum(abs(gens[x]) for x in w)
            if n <= top:
                by_deg.setdefault(n, []).append(w)
    out = {}
    for n in range(top + 1):
        ws = by_deg.get(n, [])
        idx = {w: i for i, w in enumerate(ws)}
        rows = []
        for r in relations:
            rdeg = sum(abs(gens[x]) for x in next(iter(r)))
            for m in range(n - rdeg + 1):
                for u in by_deg.get(m, []):
                    for v in by_deg.get(n - rdeg - m, []):
                        row = [0] * len(ws)
                        for w, c in r.items():
                            row[idx[u + w + v]] += c
                        rows.append(row)
        out[n] = len(ws) - (dense_rank(rows, p) if rows else 0)
    return out


def free_series(gen_degrees: list, top: int) -> dict:
    """Coefficients of 1/(1 - sum t^|g|) for absolute degrees 0..top, via sympy."""
    import sympy
    t = sympy.symbols("t")
    s = sympy.series(1 / (1 - sum(t ** abs(g) for g in gen_degrees)), t, 0, top + 1).removeO()
    poly = sympy.Poly(s, t)
    return {n: int(poly.coeff_monomial(t ** n)) for n in range(top + 1)}
