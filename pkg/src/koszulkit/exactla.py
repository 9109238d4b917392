"""Exact linear algebra over Q and GF(p).

Vectors are sparse dicts ``{column: value}`` with no stored zeros.  A
:class:`Subspace` keeps its basis in reduced row echelon form with the
leftmost-pivot convention, so two subspaces are equal exactly when their
stored forms are identical.

Everything here is written against a small :class:`Field` interface.  The
rationals use :class:`fractions.Fraction`; prime fields use plain ``int``
residues in ``range(p)``.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

Vec = Dict[int, object]


class DimensionMismatch(ValueError):
    """Two operands live in ambient spaces of different dimension."""


# ---------------------------------------------------------------------------
# fields
# ---------------------------------------------------------------------------


class Field:
    """Minimal exact field interface used by the elimination routines."""

    tag: str = ""
    characteristic: int = 0

    def coerce(self, x) -> object:
        raise NotImplementedError

    def norm(self, x) -> object:
        """Bring the result of ``+``/``-``/``*`` back to canonical form."""
        raise NotImplementedError

    def inv(self, x) -> object:
        raise NotImplementedError

    def __eq__(self, other) -> bool:
        return isinstance(other, Field) and self.tag == other.tag

    def __hash__(self) -> int:
        return hash(self.tag)

    def __repr__(self) -> str:
        return self.tag


class Rationals(Field):
    tag = "QQ"
    characteristic = 0

    def coerce(self, x):
        if isinstance(x, Fraction):
            return x
        return Fraction(x)

    def norm(self, x):
        return x

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / x


class PrimeField(Field):
    """GF(p) for an odd prime p."""

    def __init__(self, p: int):
        if p < 3 or not _is_prime(p):
            raise ValueError(f"GF(p) needs an odd prime, got {p}")
        self.p = p
        self.characteristic = p
        self.tag = f"GF:{p}"

    def coerce(self, x):
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError(f"{x} has no image in GF({self.p})")
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    def norm(self, x):
        return x % self.p

    def inv(self, x):
        if x % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(x, -1, self.p)


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


QQ = Rationals()
DEFAULT_PRIME = 32003


def field_from_tag(tag: str) -> Field:
    """Parse ``"QQ"`` or ``"GF:<p>"``."""
    if tag == "QQ":
        return QQ
    if tag.startswith("GF:"):
        return PrimeField(int(tag[3:]))
    raise ValueError(f"unknown field tag {tag!r}")


# ---------------------------------------------------------------------------
# sparse vector helpers
# ---------------------------------------------------------------------------


def vec_axpy(y: Vec, a, x: Mapping[int, object], F: Field) -> None:
    """In place ``y += a*x``."""
    norm = F.norm
    for c, v in x.items():
        t = norm(y.get(c, 0) + a * v)
        if t:
            y[c] = t
        else:
            y.pop(c, None)


def vec_scale(x: Mapping[int, object], a, F: Field) -> Vec:
    if not a:
        return {}
    norm = F.norm
    return {c: norm(a * v) for c, v in x.items()}


def vec_clean(x: Mapping[int, object], F: Field) -> Vec:
    """Coerce entries into ``F`` and drop zeros."""
    out = {}
    for c, v in x.items():
        v = F.coerce(v)
        if v:
            out[c] = v
    return out


# ---------------------------------------------------------------------------
# elimination core
# ---------------------------------------------------------------------------


class Echelon:
    """Incremental row echelon form with leftmost pivots.

    Rows are stored keyed by pivot column and normalised to pivot 1; each
    row only has entries right of its pivot.  Rows are *not* back-reduced
    until :meth:`rref_rows` is called.
    """

    __slots__ = ("F", "rows")

    def __init__(self, F: Field):
        self.F = F
        self.rows: Dict[int, Vec] = {}

    def reduce(self, v: Mapping[int, object]) -> Vec:
        """Return ``v`` reduced so that it has no entry at a pivot column."""
        rows = self.rows
        if not rows:
            return dict(v)
        v = dict(v)
        heap = [c for c in v if c in rows]
        if not heap:
            return v
        heapq.heapify(heap)
        F = self.F
        norm = F.norm
        seen = set()
        while heap:
            c = heapq.heappop(heap)
            if c in seen:
                continue
            seen.add(c)
            a = v.get(c)
            if not a:
                continue
            for cc, x in rows[c].items():
                t = norm(v.get(cc, 0) - a * x)
                if t:
                    if cc not in v and cc in rows and cc not in seen:
                        heapq.heappush(heap, cc)
                    v[cc] = t
                else:
                    v.pop(cc, None)
        return v

    def add(self, v: Mapping[int, object]) -> Optional[int]:
        """Insert ``v``; return the new pivot column or ``None`` if dependent."""
        r = self.reduce(v)
        if not r:
            return None
        c = min(r)
        inv = self.F.inv(r[c])
        if inv != 1:
            r = vec_scale(r, inv, self.F)
        self.rows[c] = r
        return c

    def rank(self) -> int:
        return len(self.rows)

    def rref_rows(self) -> List[Tuple[int, Vec]]:
        """Back-substitute and return ``[(pivot, row), ...]`` sorted by pivot."""
        rows = self.rows
        F = self.F
        norm = F.norm
        done: Dict[int, Vec] = {}
        for c in sorted(rows, reverse=True):
            r = dict(rows[c])
            for cc in sorted(k for k in r if k != c and k in done):
                a = r.get(cc)
                if not a:
                    continue
                for k, x in done[cc].items():
                    t = norm(r.get(k, 0) - a * x)
                    if t:
                        r[k] = t
                    else:
                        r.pop(k, None)
            done[c] = r
        self.rows = done
        return [(c, done[c]) for c in sorted(done)]


def echelon_of(rows: Iterable[Mapping[int, object]], F: Field) -> Echelon:
    e = Echelon(F)
    for r in rows:
        if r:
            e.add(r)
    return e


# ---------------------------------------------------------------------------
# matrices and subspaces
# ---------------------------------------------------------------------------


class SparseMatrix:
    """Row-major sparse matrix; ``data[i]`` is the dict of row ``i``."""

    __slots__ = ("nrows", "ncols", "data", "field")

    def __init__(self, nrows: int, ncols: int, data: Sequence[Mapping[int, object]], field: Field):
        if len(data) != nrows:
            raise ValueError("row count mismatch")
        clean = []
        for r in data:
            r = vec_clean(r, field)
            for c in r:
                if not 0 <= c < ncols:
                    raise IndexError(f"column {c} out of range for {ncols} columns")
            clean.append(r)
        self.nrows = nrows
        self.ncols = ncols
        self.data = clean
        self.field = field

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence], field: Field, ncols: Optional[int] = None) -> "SparseMatrix":
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        data = [{j: x for j, x in enumerate(r) if x} for r in rows]
        return cls(len(rows), ncols, data, field)

    def to_dense(self) -> List[List[object]]:
        return [[r.get(j, 0) for j in range(self.ncols)] for r in self.data]

    def entries(self) -> Dict[Tuple[int, int], object]:
        return {(i, j): x for i, r in enumerate(self.data) for j, x in r.items()}

    def apply(self, v: Mapping[int, object]) -> Vec:
        """Return ``M v`` for a column vector ``v``."""
        out = {}
        F = self.field
        for i, r in enumerate(self.data):
            s = 0
            for j, x in r.items():
                y = v.get(j)
                if y:
                    s += x * y
            s = F.norm(s)
            if s:
                out[i] = s
        return out

    def __repr__(self) -> str:
        return f"SparseMatrix({self.nrows}x{self.ncols}, nnz={sum(map(len, self.data))}, {self.field})"


class Subspace:
    """A subspace of ``F^ambient`` held in canonical RREF."""

    __slots__ = ("ambient", "field", "pivots", "rows", "_key")

    def __init__(self, ambient: int, field: Field, pivots: Tuple[int, ...], rows: Tuple[Vec, ...]):
        self.ambient = ambient
        self.field = field
        self.pivots = pivots
        self.rows = rows
        self._key = None

    # construction -----------------------------------------------------
    @classmethod
    def span(cls, vectors: Iterable[Mapping[int, object]], ambient: int, field: Field) -> "Subspace":
        e = Echelon(field)
        for v in vectors:
            v = vec_clean(v, field)
            if v:
                if max(v) >= ambient or min(v) < 0:
                    raise DimensionMismatch("vector outside the ambient space")
                e.add(v)
        return cls._from_echelon(e, ambient)

    @classmethod
    def _from_echelon(cls, e: Echelon, ambient: int) -> "Subspace":
        pr = e.rref_rows()
        return cls(ambient, e.F, tuple(c for c, _ in pr), tuple(r for _, r in pr))

    @classmethod
    def zero(cls, ambient: int, field: Field) -> "Subspace":
        return cls(ambient, field, (), ())

    @classmethod
    def full(cls, ambient: int, field: Field) -> "Subspace":
        one = field.coerce(1)
        return cls(ambient, field, tuple(range(ambient)), tuple({c: one} for c in range(ambient)))

    # basic queries ---------------------------------------------------------
    @property
    def dim(self) -> int:
        return len(self.rows)

    def __len__(self) -> int:
        return len(self.rows)

    def is_zero(self) -> bool:
        return not self.rows

    def key(self):
        if self._key is None:
            self._key = (
                self.ambient,
                self.field.tag,
                self.pivots,
                tuple(tuple(sorted(r.items())) for r in self.rows),
            )
        return self._key

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient}, {self.field})"

    def echelon(self) -> Echelon:
        e = Echelon(self.field)
        e.rows = dict(zip(self.pivots, self.rows))
        return e

    def reduce(self, v: Mapping[int, object]) -> Vec:
        """Remainder of ``v`` after subtracting its component along the pivots."""
        F = self.field
        v = vec_clean(v, F)
        for c, r in zip(self.pivots, self.rows):
            a = v.get(c)
            if a:
                vec_axpy(v, -a, r, F)
        return v

    def coordinates(self, v: Mapping[int, object]) -> Optional[List[object]]:
        """Coefficients of ``v`` in the RREF basis, or ``None`` if ``v`` is outside."""
        F = self.field
        v = vec_clean(v, F)
        coeffs = [v.get(c, 0) for c in self.pivots]
        for a, r in zip(coeffs, self.rows):
            if a:
                vec_axpy(v, -a, r, F)
        return None if v else coeffs

    def dense_rows(self) -> List[List[object]]:
        return [[r.get(j, 0) for j in range(self.ambient)] for r in self.rows]


def _check_same(U: Subspace, W: Subspace) -> None:
    if U.ambient != W.ambient:
        raise DimensionMismatch(f"ambient {U.ambient} vs {W.ambient}")
    if U.field != W.field:
        raise DimensionMismatch(f"field {U.field} vs {W.field}")


# ---------------------------------------------------------------------------
# public operations
# ---------------------------------------------------------------------------


def rref(m: SparseMatrix) -> Subspace:
    """Row space of ``m`` in canonical form."""
    return Subspace._from_echelon(echelon_of(m.data, m.field), m.ncols)


def rank(m: SparseMatrix) -> int:
    return echelon_of(m.data, m.field).rank()


def rank_of_rows(rows: Iterable[Mapping[int, object]], F: Field) -> int:
    return echelon_of(rows, F).rank()


def subspace_sum(U: Subspace, W: Subspace) -> Subspace:
    _check_same(U, W)
    if W.dim == 0:
        return U
    if U.dim == 0:
        return W
    e = U.echelon()
    e.rows = dict(e.rows)
    for r in W.rows:
        e.add(r)
    return Subspace._from_echelon(e, U.ambient)


def sum_all(spaces: Sequence[Subspace], ambient: int, F: Field) -> Subspace:
    e = Echelon(F)
    for S in spaces:
        if S.ambient != ambient:
            raise DimensionMismatch(f"ambient {S.ambient} vs {ambient}")
        for r in S.rows:
            e.add(r)
    return Subspace._from_echelon(e, ambient)


def intersect(U: Subspace, W: Subspace) -> Subspace:
    """Zassenhaus intersection.

    Rows ``(u | u)`` and ``(w | 0)`` are eliminated with leftmost pivots;
    the rows whose left half vanished carry a basis of ``U ∩ W`` on the right.
    """
    _check_same(U, W)
    D = U.ambient
    if U.dim == 0 or W.dim == 0:
        return Subspace.zero(D, U.field)
    if U.dim > W.dim:
        U, W = W, U
    e = Echelon(U.field)
    for r in W.rows:
        e.add(r)
    for r in U.rows:
        v = dict(r)
        for c, x in r.items():
            v[c + D] = x
        e.add(v)
    out = [{c - D: x for c, x in row.items()} for piv, row in e.rows.items() if piv >= D]
    return Subspace.span(out, D, U.field)


def intersect_all(spaces: Sequence[Subspace]) -> Subspace:
    it = iter(spaces)
    acc = next(it)
    for S in it:
        if acc.dim == 0:
            return acc
        acc = intersect(acc, S)
    return acc


def kernel(m: SparseMatrix) -> Subspace:
    """Null space ``{v : m v = 0}`` as a subspace of ``F^ncols``."""
    F = m.field
    R = rref(m)
    piv = set(R.pivots)
    one = F.coerce(1)
    vecs = []
    for f in range(m.ncols):
        if f in piv:
            continue
        v = {f: one}
        for c, r in zip(R.pivots, R.rows):
            x = r.get(f)
            if x:
                v[c] = F.norm(-x)
        vecs.append(v)
    return Subspace.span(vecs, m.ncols, F)


def left_kernel_combinations(images: Sequence[Mapping[int, object]], F: Field) -> List[Vec]:
    """All coefficient vectors ``α`` with ``Σ α_k images[k] = 0``.

    Returned as sparse dicts indexed by ``k``.  Implemented by eliminating
    ``(image_k | e_k)`` with the tag columns placed after every image column.
    """
    if not images:
        return []
    top = 0
    for v in images:
        if v:
            top = max(top, max(v) + 1)
    e = Echelon(F)
    one = F.coerce(1)
    for k, v in enumerate(images):
        row = dict(v)
        row[top + k] = one
        e.add(row)
    out = []
    for piv, row in e.rows.items():
        if piv >= top:
            out.append({c - top: x for c, x in row.items()})
    return out


def contains(U: Subspace, v: Mapping[int, object]) -> bool:
    if v and (max(v) >= U.ambient or min(v) < 0):
        raise DimensionMismatch("vector outside the ambient space")
    return not U.reduce(v)


def is_subspace(U: Subspace, W: Subspace) -> bool:
    """``U ⊆ W``."""
    _check_same(U, W)
    return all(not W.reduce(r) for r in U.rows)


def equals(U: Subspace, W: Subspace) -> bool:
    _check_same(U, W)
    return U == W


def image_basis(vectors: Iterable[Mapping[int, object]], ambient: int, F: Field) -> Subspace:
    return Subspace.span(vectors, ambient, F)


def format_scalar(x) -> str:
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return str(x)
