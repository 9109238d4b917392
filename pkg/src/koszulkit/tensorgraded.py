"""Tensor powers of V, presentations, and the graded quotient A = T(V)/I.

A word of degree ``n`` over ``d`` generators is identified with its index in
base ``d`` (first letter most significant).  Integer order on indices is
then the lexicographic order on words, which is the column order used by
every RREF in the package.
"""

from __future__ import annotations

import hashlib
import json
import time
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .exactla import (
    QQ,
    Echelon,
    Field,
    SparseMatrix,
    Subspace,
    Vec,
    format_scalar,
    intersect_all,
    kernel,
    left_kernel_combinations,
    sum_all,
    vec_clean,
)

Word = Tuple[int, ...]


class PresentationError(ValueError):
    """The relations do not describe a supported (a,b)-homogeneous algebra."""


class BudgetExceeded(RuntimeError):
    """A computation would exceed the configured ambient-size or time budget."""


class Budget:
    """Guardrail on ambient dimension and wall-clock time."""

    def __init__(self, max_ambient_dim: int = 1 << 16, timeout: Optional[float] = None):
        self.max_ambient_dim = max_ambient_dim
        self.deadline = None if timeout is None else time.monotonic() + timeout

    def ambient(self, dim_v: int, n: int) -> None:
        if dim_v ** n > self.max_ambient_dim:
            raise BudgetExceeded(
                f"V^({n}) has {dim_v ** n} words, above the budget of {self.max_ambient_dim}"
            )

    def tick(self) -> None:
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise BudgetExceeded("time budget exhausted")


UNLIMITED = Budget(max_ambient_dim=1 << 40)


# ---------------------------------------------------------------------------
# words
# ---------------------------------------------------------------------------


def word_index(word: Sequence[int], d: int) -> int:
    i = 0
    for c in word:
        i = i * d + c
    return i


def index_word(i: int, n: int, d: int) -> Word:
    out = [0] * n
    for k in range(n - 1, -1, -1):
        i, out[k] = divmod(i, d)
    return tuple(out)


def reverse_index(i: int, n: int, d: int) -> int:
    return word_index(index_word(i, n, d)[::-1], d)


def embed(W: Subspace, i: int, j: int, d: int) -> Subspace:
    """``V^(i) ⊗ W ⊗ V^(j)`` in the word basis of ``V^(i+m+j)``."""
    if i < 0 or j < 0:
        raise ValueError("negative shift")
    m_size = W.ambient
    tail = d ** j
    block = m_size * tail
    rows = []
    for p in range(d ** i):
        base = p * block
        for r in W.rows:
            for q in range(tail):
                rows.append({base + w * tail + q: c for w, c in r.items()})
    # Already in RREF: distinct (p, q) give disjoint supports and pivots
    # stay ordered by (p, pivot, q).
    rows.sort(key=min)
    return Subspace(W.ambient * d ** (i + j), W.field, tuple(min(r) for r in rows), tuple(rows))


def tensor_vectors(left: Mapping[int, object], right: Mapping[int, object], right_size: int, F: Field) -> Vec:
    out = {}
    for u, a in left.items():
        for v, b in right.items():
            out[u * right_size + v] = F.norm(a * b)
    return out


# ---------------------------------------------------------------------------
# presentations
# ---------------------------------------------------------------------------


class Relation:
    """Homogeneous linear combination of words."""

    __slots__ = ("degree", "terms")

    def __init__(self, terms: Mapping[Word, object]):
        terms = {tuple(w): c for w, c in terms.items() if c != 0}
        if not terms:
            raise PresentationError("relation with no nonzero coefficient")
        degs = {len(w) for w in terms}
        if len(degs) != 1:
            raise PresentationError("relation is not homogeneous")
        self.degree = degs.pop()
        self.terms = terms

    def vector(self, d: int, F: Field) -> Vec:
        return vec_clean({word_index(w, d): c for w, c in self.terms.items()}, F)

    def reversed(self) -> "Relation":
        return Relation({w[::-1]: c for w, c in self.terms.items()})

    def __repr__(self) -> str:
        return f"Relation(degree={self.degree}, terms={len(self.terms)})"


class Presentation:
    """``T(V)/(R_a ⊕ R_b)`` with ``2 ≤ a < b`` and exactly two relation degrees."""

    def __init__(self, generators: Sequence[str], relations: Sequence[Relation], field: Field = QQ):
        self.generators = tuple(generators)
        if not self.generators:
            raise PresentationError("no generators")
        if len(set(self.generators)) != len(self.generators):
            raise PresentationError("duplicate generator names")
        self.relations = tuple(relations)
        self.field = field
        d = len(self.generators)
        for r in self.relations:
            for w in r.terms:
                if any(not 0 <= c < d for c in w):
                    raise PresentationError("relation uses an undeclared generator")
        degs = sorted({r.degree for r in self.relations})
        if any(s < 2 for s in degs):
            raise PresentationError("relations of degree < 2 are not supported")
        if len(degs) == 1:
            raise PresentationError(
                "a = b: the relations sit in a single degree, which reduces to N-Koszul, unsupported"
            )
        if len(degs) != 2:
            raise PresentationError(f"relation degrees {degs}: not (a,b)-homogeneous")
        self.a, self.b = degs
        self._spaces: Dict[int, Subspace] = {}
        for s in (self.a, self.b):
            vecs = [r.vector(d, field) for r in self.relations if r.degree == s]
            R = Subspace.span(vecs, d ** s, field)
            if R.dim == 0:
                raise PresentationError(f"relations of degree {s} vanish over {field}")
            self._spaces[s] = R

    @property
    def dim_v(self) -> int:
        return len(self.generators)

    def R(self, s: int) -> Subspace:
        return self._spaces[s]

    def with_field(self, field: Field) -> "Presentation":
        return Presentation(self.generators, self.relations, field)

    def word_str(self, w: Word) -> str:
        return "".join(self.generators[c] for c in w)

    def canonical(self) -> dict:
        d = self.dim_v
        rel = {}
        for s in (self.a, self.b):
            rel[str(s)] = [
                [[self.word_str(index_word(c, s, d)), format_scalar(x)] for c, x in sorted(r.items())]
                for r in self.R(s).rows
            ]
        return {"generators": list(self.generators), "field": self.field.tag, "relations": rel}

    def fingerprint(self) -> str:
        blob = json.dumps(self.canonical(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()[:16]

    def __repr__(self) -> str:
        return f"Presentation({''.join(self.generators)}; a={self.a}, b={self.b}, {self.field})"


def presentation_from_spaces(generators: Sequence[str], spaces: Iterable[Subspace], field: Field) -> Presentation:
    d = len(generators)
    rels = []
    for S in spaces:
        n = _degree_of(S.ambient, d)
        for r in S.rows:
            rels.append(Relation({index_word(c, n, d): x for c, x in r.items()}))
    return Presentation(generators, rels, field)


def _degree_of(ambient: int, d: int) -> int:
    n, size = 0, 1
    while size < ambient:
        size *= d
        n += 1
    if size != ambient:
        raise ValueError("ambient dimension is not a power of dim V")
    return n


def reverse(p: Presentation) -> Presentation:
    """Presentation of the opposite algebra (every relation word reversed)."""
    return Presentation(p.generators, [r.reversed() for r in p.relations], p.field)


def reverse_subspace(W: Subspace, n: int, d: int) -> Subspace:
    return Subspace.span(
        ({reverse_index(c, n, d): x for c, x in r.items()} for r in W.rows), W.ambient, W.field
    )


def perp(W: Subspace) -> Subspace:
    """Annihilator of ``W`` under the pairing that makes the word basis orthonormal."""
    return kernel(SparseMatrix(len(W.rows), W.ambient, list(W.rows), W.field))


def dual(p: Presentation) -> Presentation:
    """Koszul dual: generators ``v*`` and relation spaces ``R_a^⊥``, ``R_b^⊥``.

    Either perp may be zero (when ``R_s`` is everything); the result then
    fails the two-degree invariant and a :class:`PresentationError` is raised.
    """
    names = [g + "*" for g in p.generators]
    return presentation_from_spaces(names, [perp(p.R(p.a)), perp(p.R(p.b))], p.field)


# ---------------------------------------------------------------------------
# graded quotient
# ---------------------------------------------------------------------------


class GradedQuotient:
    """Degreewise normal forms for ``T(V)`` modulo the ideal of some relation spaces.

    ``basis(n)`` lists the normal words of degree ``n`` (non-pivot columns of
    the RREF of ``I_n``).  ``red(w, n)`` expresses the class of the word with
    index ``w`` in those normal words.

    Degree ``n`` is built from degree ``n-1`` using
    ``I_n = I_{n-1}⊗V + Σ_s V^(n-s)⊗R_s``: only the new relations need to be
    row-reduced, and only in the coordinates ``(normal word of degree n-1) ⊗ letter``.
    The pivots that appear coincide with the global leftmost-pivot RREF
    because lexicographic order compares prefixes first.
    """

    def __init__(self, d: int, spaces: Mapping[int, Subspace], field: Field, budget: Budget = UNLIMITED):
        self.d = d
        self.spaces = dict(spaces)
        self.F = field
        self.budget = budget
        self.min_deg = min(self.spaces) if self.spaces else None
        self._basis: Dict[int, List[int]] = {0: [0]}
        self._pivrows: Dict[int, Dict[int, Vec]] = {0: {}}
        self._memo: Dict[int, Dict[int, Vec]] = {0: {0: {0: field.coerce(1)}}}
        self._pos: Dict[int, Dict[int, int]] = {0: {0: 0}}

    # -- construction --------------------------------------------------------
    def _build(self, n: int) -> None:
        if n in self._basis:
            return
        for m in range(max(self._basis) + 1, n + 1):
            self._build_one(m)

    def _build_one(self, n: int) -> None:
        d, F = self.d, self.F
        self.budget.ambient(d, n)
        prev = self._basis[n - 1]
        e = Echelon(F)
        for s, R in self.spaces.items():
            if n < s:
                continue
            size = d ** s
            for u in self._basis[n - s]:
                shift = u * size
                for r in R.rows:
                    v: Vec = {}
                    for w, c in r.items():
                        word = shift + w
                        head, letter = divmod(word, d)
                        for b, x in self.red(head, n - 1).items():
                            k = b * d + letter
                            t = F.norm(v.get(k, 0) + c * x)
                            if t:
                                v[k] = t
                            else:
                                v.pop(k, None)
                    if v:
                        e.add(v)
            self.budget.tick()
        piv = dict(e.rref_rows())
        self._pivrows[n] = piv
        basis = [b * d + l for b in prev for l in range(d) if b * d + l not in piv]
        self._basis[n] = basis
        self._pos[n] = {w: k for k, w in enumerate(basis)}
        self._memo[n] = {}

    # -- queries ---------------------------------------------------------------
    def basis(self, n: int) -> List[int]:
        self._build(n)
        return self._basis[n]

    def position(self, n: int) -> Dict[int, int]:
        self._build(n)
        return self._pos[n]

    def dim(self, n: int) -> int:
        return len(self.basis(n))

    def red(self, w: int, n: int) -> Vec:
        """Class of word ``w`` (degree ``n``) as ``{normal word: coefficient}``."""
        memo = self._memo.get(n)
        if memo is None:
            self._build(n)
            memo = self._memo[n]
        hit = memo.get(w)
        if hit is not None:
            return hit
        F, d = self.F, self.d
        head, letter = divmod(w, d)
        v = {b * d + letter: x for b, x in self.red(head, n - 1).items()}
        piv = self._pivrows[n]
        if piv:
            for c in [c for c in v if c in piv]:
                a = v.pop(c)
                for k, x in piv[c].items():
                    if k == c:
                        continue
                    t = F.norm(v.get(k, 0) - a * x)
                    if t:
                        v[k] = t
                    else:
                        v.pop(k, None)
        memo[w] = v
        return v

    def red_vec(self, vec: Mapping[int, object], n: int) -> Vec:
        F = self.F
        out: Vec = {}
        for w, c in vec.items():
            for b, x in self.red(w, n).items():
                t = F.norm(out.get(b, 0) + c * x)
                if t:
                    out[b] = t
                else:
                    out.pop(b, None)
        return out

    def red_word(self, word: Sequence[int]) -> Vec:
        return self.red(word_index(word, self.d), len(word))

    def ideal(self, n: int) -> Subspace:
        """``I_n`` as an explicit subspace of ``V^(n)``."""
        self.budget.ambient(self.d, n)
        F = self.F
        one = F.coerce(1)
        normal = set(self.basis(n))
        rows = []
        for w in range(self.d ** n):
            if w in normal:
                continue
            r = {w: one}
            for b, x in self.red(w, n).items():
                r[b] = F.norm(-x)
            rows.append(r)
        return Subspace(self.d ** n, F, tuple(min(r) for r in rows), tuple(rows))


# ---------------------------------------------------------------------------
# per-presentation cache
# ---------------------------------------------------------------------------


class AlgebraCache:
    """Memoised graded data of one presentation: A_n, I_n, J_n^s and partial ideals."""

    def __init__(self, p: Presentation, budget: Budget = UNLIMITED):
        self.p = p
        self.d = p.dim_v
        self.F = p.field
        self.a, self.b = p.a, p.b
        self.budget = budget
        self._quot: Dict[frozenset, GradedQuotient] = {}
        self._J: Dict[Tuple[int, int], Subspace] = {}

    def quotient(self, degrees: Iterable[int] = ()) -> GradedQuotient:
        """Quotient by the ideal generated by the relation spaces in ``degrees``.

        With no argument both ``R_a`` and ``R_b`` are used, giving ``A`` itself.
        """
        key = frozenset(degrees) or frozenset((self.a, self.b))
        q = self._quot.get(key)
        if q is None:
            q = GradedQuotient(self.d, {s: self.p.R(s) for s in key}, self.F, self.budget)
            self._quot[key] = q
        return q

    @property
    def A(self) -> GradedQuotient:
        return self.quotient()

    def ideal_component(self, n: int) -> Subspace:
        return self.A.ideal(n)

    def algebra_component(self, n: int) -> Tuple[List[Word], "GradedQuotient"]:
        A = self.A
        return [index_word(w, n, self.d) for w in A.basis(n)], A

    def J(self, s: int, n: int) -> Subspace:
        """``J_n^s``: intersection of all shifts of ``R_s`` in ``V^(n)``.

        Built by ``J_n^s = (R_s ⊗ V^(n-s)) ∩ (V ⊗ J_{n-1}^s)``.
        """
        if s not in (self.a, self.b):
            raise ValueError(f"{s} is not a relation degree")
        if n < s:
            raise ValueError(f"J_n^s needs n ≥ s (got n={n}, s={s})")
        key = (s, n)
        hit = self._J.get(key)
        if hit is not None:
            return hit
        d, F = self.d, self.F
        if n == s:
            out = self.p.R(s)
        else:
            prev = self.J(s, n - 1)
            if prev.dim == 0:
                out = Subspace.zero(d ** n, F)
            else:
                self.budget.ambient(d, n)
                size = d ** (n - 1)
                X = [{l * size + w: c for w, c in r.items()} for l in range(d) for r in prev.rows]
                R = self.p.R(s)
                out = meet_window_vectors(X, n, 0, s, lambda m: R.reduce({m: 1}), d, F)
        self._J[key] = out
        return out

    def J_direct(self, s: int, n: int) -> Subspace:
        """Literal multi-shift intersection, used as an oracle."""
        R = self.p.R(s)
        return intersect_all([embed(R, i, n - s - i, self.d) for i in range(n - s + 1)])


# ---------------------------------------------------------------------------
# windows: V^(lo) ⊗ Y ⊗ V^(r) with Y given by a normal-form map
# ---------------------------------------------------------------------------


def window_image(vec: Mapping[int, object], n: int, lo: int, L: int, nf, d: int, F: Field) -> Vec:
    """Apply ``id ⊗ nf ⊗ id`` to ``vec``; the kernel of this map is ``V^lo ⊗ Y ⊗ V^r``."""
    r = n - lo - L
    tail = d ** r
    mid_size = d ** L
    out: Vec = {}
    cache: Dict[int, Vec] = {}
    for w, c in vec.items():
        pm, q = divmod(w, tail)
        p, m = divmod(pm, mid_size)
        img = cache.get(m)
        if img is None:
            img = nf(m)
            cache[m] = img
        base = p * mid_size
        for m2, x in img.items():
            k = (base + m2) * tail + q
            t = F.norm(out.get(k, 0) + c * x)
            if t:
                out[k] = t
            else:
                out.pop(k, None)
    return out


def meet_window_vectors(vectors: Sequence[Mapping[int, object]], n: int, lo: int, L: int, nf, d: int, F: Field) -> Subspace:
    """``span(vectors) ∩ (V^lo ⊗ ker(nf) ⊗ V^(n-lo-L))``."""
    images = [window_image(v, n, lo, L, nf, d, F) for v in vectors]
    combos = left_kernel_combinations(images, F)
    out = []
    for alpha in combos:
        acc: Vec = {}
        for k, x in alpha.items():
            for w, c in vectors[k].items():
                t = F.norm(acc.get(w, 0) + x * c)
                if t:
                    acc[w] = t
                else:
                    acc.pop(w, None)
        out.append(acc)
    return Subspace.span(out, d ** n, F)


def positional_sum(p: Presentation, terms: Iterable[Tuple[int, int]], n: int) -> Subspace:
    """Explicit ``Σ V^(pos) ⊗ R_s ⊗ V^(n-s-pos)`` over ``(s, pos)`` pairs (oracle helper)."""
    d = p.dim_v
    spaces = [embed(p.R(s), pos, n - s - pos, d) for s, pos in terms if pos >= 0 and n - s - pos >= 0]
    return sum_all(spaces, d ** n, p.field)


def ideal_by_span(p: Presentation, n: int) -> Subspace:
    """I_n spanned by every shift of every relation (brute-force oracle)."""
    terms = [(s, i) for s in (p.a, p.b) for i in range(n - s + 1)]
    return positional_sum(p, terms, n)


def parse_word(text: str, generators: Sequence[str]) -> Word:
    """Split ``text`` into generator names (longest match first)."""
    names = sorted(generators, key=len, reverse=True)
    out = []
    i = 0
    while i < len(text):
        for g in names:
            if g and text.startswith(g, i):
                out.append(generators.index(g))
                i += len(g)
                break
        else:
            raise PresentationError(f"cannot split {text!r} into generators {list(generators)}")
    return tuple(out)


def relation_from_pairs(pairs: Iterable[Tuple[object, str]], generators: Sequence[str]) -> Relation:
    terms: Dict[Word, object] = {}
    for coeff, word in pairs:
        w = parse_word(word, generators)
        terms[w] = terms.get(w, 0) + Fraction(coeff)
    return Relation(terms)


def make_presentation(generators: Sequence[str], relations: Sequence[Sequence[Tuple[object, str]]], field: Field = QQ) -> Presentation:
    """Convenience constructor: ``relations`` are lists of ``(coeff, word)`` pairs."""
    return Presentation(generators, [relation_from_pairs(r, generators) for r in relations], field)
