"""Hochschild homology from the reduced Koszul bimodule complex.

The term in homological degree ``i`` is ``⊕_s A ⊗ J^s_{n_s(i)}`` (a single
term ``A`` for ``i = 0`` and ``A ⊗ V`` for ``i = 1``).  The differential
``d̄`` moves letters from the J-part across to the A-part:

* ``d̄_1(ᾱ⊗v) = ᾱv - vᾱ``;
* odd ``i ≥ 3``: ``ᾱ⊗v w v' ↦ ᾱv⊗w v' - v'ᾱ⊗v w``;
* even ``i ≥ 2``: ``ᾱ⊗v_1…v_m ↦ Σ_{k=0}^{s-1} v_{m-k+1}…v_m · ᾱ · v_1…v_{s-1-k} ⊗ v_{s-k}…v_{m-k}``.

The bimodule complex ``A ⊗ J ⊗ A`` is never built.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .exactla import SparseMatrix, Vec, rank_of_rows
from .koszulchecker import KoszulComplex, n_s
from .tensorgraded import UNLIMITED, AlgebraCache, Budget, Presentation


@dataclass
class ComplexLayer:
    """``d̄_i`` restricted to internal degree ``n``."""

    i: int
    n: int
    domain: List[Tuple[str, int, Optional[int]]]
    matrix: SparseMatrix


@dataclass
class HomologyTable:
    entries: Dict[Tuple[int, int], int]
    field_tag: str
    imax: int
    N: int
    fingerprint: str
    extra: dict = field(default_factory=dict)

    def row(self, i: int) -> List[int]:
        """``HH_i`` for ``n = 0..N``."""
        return [self.entries[(i, n)] for n in range(self.N + 1)]

    def to_dict(self) -> dict:
        return {
            "field": self.field_tag,
            "imax": self.imax,
            "N": self.N,
            "fingerprint": self.fingerprint,
            "rows": {str(i): self.row(i) for i in range(self.imax + 1)},
        }


class HochschildComplex(KoszulComplex):
    """Same terms and bases as the Koszul complex, with the reduced differential ``d̄``."""

    def _moves(self, i: int, s: Optional[int], m: int, m_tgt: int, w: int):
        """Split the J-word ``w`` (length ``m``) into ``(left, left_len, right, right_len, tail, sign)``."""
        d = self.d
        if i == 1:
            return [(0, 0, w, 1, 0, 1), (w, 1, 0, 0, 0, -1)]
        if i % 2 == 1:
            first, rest = divmod(w, d ** (m - 1))
            head, last = divmod(w, d)
            return [(0, 0, first, 1, rest, 1), (last, 1, 0, 0, head, -1)]
        out = []
        for k in range(s):
            # w = suffix-free part P (m-k letters) followed by the last k letters
            P, suf = divmod(w, d ** k)
            pre, mid = divmod(P, d ** m_tgt)
            out.append((suf, k, pre, s - 1 - k, mid, 1))
        return out

    def matrix(self, i: int, n: int) -> List[Vec]:
        key = (i, n)
        hit = self._mat.get(key)
        if hit is not None:
            return hit
        rows: List[Vec] = []
        if i >= 1:
            src_terms = self.terms(i, n)
            tgt_terms = self.terms(i - 1, n)
            _, tpos = self.basis(i - 1, n)
            d, F, A = self.d, self.F, self.A
            elems, _ = self.basis(i, n)
            for t_idx, u, j in elems:
                src = src_terms[t_idx]
                k_tgt = self.target_index(i, src)
                if k_tgt is None:
                    raise AssertionError("source J nonzero but target J vanishes")
                tgt = tgt_terms[k_tgt]
                deg_u = n - src.m
                groups: Dict[int, Vec] = {}
                for w, c in src.J.rows[j].items():
                    for left, ll, right, rl, tail, sign in self._moves(i, src.branch, src.m, tgt.m, w):
                        word = (left * d ** deg_u + u) * d ** rl + right
                        coeff = c if sign > 0 else -c
                        for v, x in A.red(word, ll + deg_u + rl).items():
                            g = groups.setdefault(v, {})
                            t = F.norm(g.get(tail, 0) + coeff * x)
                            if t:
                                g[tail] = t
                            else:
                                g.pop(tail, None)
                row: Vec = {}
                for v, g in groups.items():
                    if not g:
                        continue
                    coords = tgt.J.coordinates(g)
                    if coords is None:
                        raise AssertionError("tail outside the target J space")
                    for jj, y in enumerate(coords):
                        if y:
                            row[tpos[(k_tgt, v, jj)]] = y
                rows.append(row)
        self._mat[key] = rows
        return rows

    def homology(self, i: int, n: int) -> int:
        return self.dim(i, n) - self.rank(i, n) - self.rank(i + 1, n)


def _complex(p: Presentation, budget: Budget = UNLIMITED, cache: Optional[AlgebraCache] = None) -> HochschildComplex:
    return HochschildComplex(cache or AlgebraCache(p, budget))


def reduced_differential(p: Presentation, i: int, n: int, complex_: Optional[HochschildComplex] = None) -> ComplexLayer:
    if i < 1:
        raise ValueError("d̄_i is defined for i ≥ 1")
    C = complex_ or _complex(p)
    elems, _ = C.basis(i, n)
    terms = C.terms(i, n)
    domain = [
        ("".join(p.generators[x] for x in _word(u, n - terms[t].m, C.d)), j, terms[t].branch)
        for t, u, j in elems
    ]
    rows = C.matrix(i, n)
    return ComplexLayer(i, n, domain, SparseMatrix(len(rows), C.dim(i - 1, n), rows, C.F))


def _word(u: int, n: int, d: int):
    out = []
    for _ in range(n):
        u, r = divmod(u, d)
        out.append(r)
    return out[::-1]


def hh_dimension(p: Presentation, i: int, n: int, complex_: Optional[HochschildComplex] = None) -> int:
    C = complex_ or _complex(p)
    return C.homology(i, n)


def hh_table(p: Presentation, imax: int, N: int, budget: Budget = UNLIMITED) -> HomologyTable:
    C = _complex(p, budget)
    entries = {}
    for n in range(N + 1):
        for i in range(imax + 1):
            budget.tick()
            entries[(i, n)] = C.homology(i, n)
    return HomologyTable(entries, p.field.tag, imax, N, p.fingerprint())


def commutator_quotient_dim(p: Presentation, n: int, cache: Optional[AlgebraCache] = None) -> int:
    """``dim A_n / span{ᾱv - vᾱ}``: HH_0 computed straight from the definition."""
    cache = cache or AlgebraCache(p)
    A, d, F = cache.A, cache.d, cache.F
    if n == 0:
        return 1
    rows = []
    for u in A.basis(n - 1):
        for v in range(d):
            r = dict(A.red(u * d + v, n))
            for k, x in A.red(v * d ** (n - 1) + u, n).items():
                t = F.norm(r.get(k, 0) - x)
                if t:
                    r[k] = t
                else:
                    r.pop(k, None)
            rows.append(r)
    return A.dim(n) - rank_of_rows(rows, F)
