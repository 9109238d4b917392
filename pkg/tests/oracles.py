"""Independent reference computations used only by the tests.

Nothing here imports the linear algebra or quotient code of the package:
the elimination is a separate textbook implementation and algebras are
built by brute-force spanning of all shifted relations.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product


def _norm(x, p):
    return x % p if p else x


def _inv(x, p):
    return pow(x, -1, p) if p else 1 / Fraction(x)


def rank(rows, p=None):
    """Rank of a list of sparse dict rows by plain Gaussian elimination."""
    pivots = {}
    r = 0
    for row in rows:
        v = {k: _norm(Fraction(c) if not p else c, p) for k, c in row.items()}
        v = {k: c for k, c in v.items() if c}
        while v:
            k = min(v)
            if k not in pivots:
                inv = _inv(v[k], p)
                pivots[k] = {j: _norm(c * inv, p) for j, c in v.items()}
                r += 1
                break
            c = v[k]
            for j, x in pivots[k].items():
                t = _norm(v.get(j, 0) - c * x, p)
                if t:
                    v[j] = t
                else:
                    v.pop(j, None)
    return r


def rref_dense(matrix, p=None):
    """Reduced row echelon form of a dense matrix (list of lists)."""
    M = [[_norm(Fraction(x) if not p else x, p) for x in row] for row in matrix]
    if not M:
        return []
    rows, cols = len(M), len(M[0])
    r = 0
    for c in range(cols):
        piv = next((k for k in range(r, rows) if M[k][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = _inv(M[r][c], p)
        M[r] = [_norm(x * inv, p) for x in M[r]]
        for k in range(rows):
            if k != r and M[k][c]:
                f = M[k][c]
                M[k] = [_norm(a - f * b, p) for a, b in zip(M[k], M[r])]
        r += 1
    return M[:r]


class BruteAlgebra:
    """``k<x_1..x_d>/(relations)`` truncated at degree ``N``, by spanning every ``u·r·v``.

    Relations are dicts ``{word tuple: coefficient}``.  Normal words are the
    non-pivot columns of the leftmost-pivot RREF of ``I_n`` in lex order.
    """

    def __init__(self, d, relations, N, p=None):
        self.d, self.N, self.p = d, N, p
        self.words = {}
        self.normal = {}
        self.red = {}
        for n in range(N + 1):
            words = list(product(range(d), repeat=n))
            idx = {w: k for k, w in enumerate(words)}
            span = []
            for rel in relations:
                s = len(next(iter(rel)))
                for i in range(n - s + 1):
                    for u in product(range(d), repeat=i):
                        for v in product(range(d), repeat=n - s - i):
                            row = [0] * len(words)
                            for w, c in rel.items():
                                row[idx[u + w + v]] += c
                            span.append(row)
            R = rref_dense(span, p) if span else []
            piv = {}
            for row in R:
                k = next(j for j, x in enumerate(row) if x)
                piv[k] = row
            normal = [w for k, w in enumerate(words) if k not in piv]
            self.words[n] = words
            self.normal[n] = normal
            pos = {w: k for k, w in enumerate(normal)}
            red = {}
            for k, w in enumerate(words):
                if k in piv:
                    red[w] = {pos[words[j]]: _norm(-x, p) for j, x in enumerate(piv[k]) if x and j != k}
                else:
                    red[w] = {pos[w]: 1}
            self.red[n] = red

    def dim(self, n):
        return len(self.normal[n])

    def mul(self, u, v):
        """Product of normal words as ``{normal index: coeff}`` in degree ``len(u)+len(v)``."""
        return self.red[len(u) + len(v)][u + v]


def _compositions(n, parts):
    """Sequences (d_0, d_1, .., d_parts) with d_0 ≥ 0, d_j ≥ 1, summing to n."""
    if parts == 0:
        yield (n,)
        return
    for d0 in range(n + 1):
        for rest in _positive(n - d0, parts):
            yield (d0,) + rest


def _positive(n, parts):
    if parts == 0:
        if n == 0:
            yield ()
        return
    for first in range(1, n - parts + 2):
        for rest in _positive(n - first, parts - 1):
            yield (first,) + rest


def bar_basis(A, i, n):
    out = []
    for comp in _compositions(n, i):
        if any(c > A.N for c in comp):
            continue
        for ws in product(*[A.normal[c] for c in comp]):
            out.append(ws)
    return out


def bar_differential_rows(A, i, n):
    """Normalized Hochschild boundary ``C_i -> C_{i-1}`` in internal degree ``n``."""
    p = A.p
    dom = bar_basis(A, i, n)
    cod = bar_basis(A, i - 1, n)
    cpos = {t: k for k, t in enumerate(cod)}
    rows = []
    for t in dom:
        row = {}

        def add(tup, c):
            k = cpos[tup]
            row[k] = _norm(row.get(k, 0) + c, p)

        for j in range(i):
            left, right = t[j], t[j + 1]
            deg = len(left) + len(right)
            for k, c in A.mul(left, right).items():
                merged = A.normal[deg][k]
                new = t[:j] + (merged,) + t[j + 2:]
                if j > 0 and len(merged) == 0:
                    continue
                add(new, c * (-1) ** j)
        last, first = t[i], t[0]
        deg = len(last) + len(first)
        for k, c in A.mul(last, first).items():
            add((A.normal[deg][k],) + t[1:i], c * (-1) ** i)
        rows.append({k: c for k, c in row.items() if c})
    return rows


def bar_hh(A, i, n):
    """``dim HH_i(A)_n`` from the normalized bar complex (needs ``n ≤ A.N``)."""
    dim = len(bar_basis(A, i, n))
    r_in = rank(bar_differential_rows(A, i, n), A.p) if i >= 1 else 0
    r_out = rank(bar_differential_rows(A, i + 1, n), A.p) if i + 1 <= n else 0
    return dim - r_in - r_out


def series_product(f, g, N):
    return [sum(f[k] * g[n - k] for k in range(n + 1) if k < len(f) and n - k < len(g)) for n in range(N + 1)]
