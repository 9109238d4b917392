"""Koszulity of (a,b)-homogeneous algebras.

Two independent routes are offered:

* ``exactness`` builds the left Koszul complex ``K_i = A⊗J^a_{n_a(i)} ⊕ A⊗J^b_{n_b(i)}``
  degree by degree and compares ``dim ker δ_i`` with ``rank δ_{i+1}``;
* ``conditions`` checks exclusivity, (e.c.), (e.v.c.), (e.c.c.) and the
  multidistributivity of the tuples built from ``E_a, E_b, F_1, ..., F_16``.

Large subspaces of ``V^(n)`` of the form ``V^(lo) ⊗ I^S_L ⊗ V^(r)`` (where
``I^S`` is the ideal generated by the relation spaces in ``S``) are never
written out.  They are met with small explicit subspaces through the normal
form map of the corresponding quotient, see :func:`tensorgraded.meet_window_vectors`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple

from .exactla import (
    Field,
    Subspace,
    Vec,
    format_scalar,
    intersect,
    is_subspace,
    rank_of_rows,
    subspace_sum,
    sum_all,
)
from .tensorgraded import (
    UNLIMITED,
    AlgebraCache,
    Budget,
    Presentation,
    embed,
    index_word,
    meet_window_vectors,
    positional_sum,
)

HOLDS = "holds"
FAILS = "fails"
HOLDS_UP_TO_BOUND = "holds-up-to-bound"
UNMET = "hypotheses-unmet"

KOSZUL = "koszul-up-to-bound"
NOT_KOSZUL = "not-koszul"
PRECONDITION_FAILED = "precondition-failed"


class PreconditionError(ValueError):
    """A check was requested whose hypotheses do not hold."""


def n_s(i: int, s: int) -> int:
    """Internal degree of the ``s``-branch of ``K_i``: ``l·s`` for ``i = 2l`` and ``l·s + 1`` for ``i = 2l+1``."""
    if i < 0:
        raise ValueError("negative homological degree")
    l, odd = divmod(i, 2)
    return l * s + odd


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------


@dataclass
class ConditionReport:
    name: str
    verdict: str
    details: List[dict] = field(default_factory=list)
    witness: Optional[dict] = None

    @property
    def ok(self) -> bool:
        return self.verdict in (HOLDS, HOLDS_UP_TO_BOUND)

    def to_dict(self) -> dict:
        return {"name": self.name, "verdict": self.verdict, "details": self.details, "witness": self.witness}


@dataclass
class KoszulVerdict:
    N: int
    imax: int
    strategy: str
    overall: str
    cells: Dict[Tuple[int, int], bool] = field(default_factory=dict)
    conditions: List[ConditionReport] = field(default_factory=list)
    witness: Optional[dict] = None
    conditions_overall: Optional[str] = None
    exactness_overall: Optional[str] = None
    strategies_agree: Optional[bool] = None

    @property
    def is_koszul(self) -> bool:
        return self.overall == KOSZUL

    def to_dict(self) -> dict:
        return {
            "degree_bound": self.N,
            "homological_bound": self.imax,
            "strategy": self.strategy,
            "overall": self.overall,
            "exactness_overall": self.exactness_overall,
            "conditions_overall": self.conditions_overall,
            "strategies_agree": self.strategies_agree,
            "witness": self.witness,
            "cells": [
                {"i": i, "n": n, "exact": ok} for (i, n), ok in sorted(self.cells.items())
            ],
            "conditions": [c.to_dict() for c in self.conditions],
        }


def describe_vector(v: Mapping[int, object], n: int, p: Presentation) -> dict:
    """Human and machine readable form of a vector of ``V^(n)``."""
    d = p.dim_v
    terms = [[p.word_str(index_word(w, n, d)), format_scalar(c)] for w, c in sorted(v.items())]
    return {"degree": n, "terms": terms}


# ---------------------------------------------------------------------------
# generic lattice checks on explicit subspaces
# ---------------------------------------------------------------------------


def check_triple_distributive(E: Subspace, F: Subspace, G: Subspace) -> bool:
    """``E ∩ (F+G) == (E∩F) + (E∩G)``."""
    lhs = intersect(E, subspace_sum(F, G))
    rhs = subspace_sum(intersect(E, F), intersect(E, G))
    return lhs == rhs


def check_multidistributive(E: Subspace, E2: Subspace, Fs: Sequence[Subspace], Gs: Sequence[Subspace]) -> bool:
    """``E∩E' = 0`` and ``(E⊕E') ∩ (ΣF+ΣG) = Σ(E∩F_i) ⊕ Σ(E'∩G_j)``."""
    ok, _ = multidistributive_detail(E, E2, Fs, Gs)
    return ok


def multidistributive_detail(E: Subspace, E2: Subspace, Fs: Sequence[Subspace], Gs: Sequence[Subspace]):
    D, K = E.ambient, E.field
    if intersect(E, E2).dim:
        return False, {"reason": "E∩E' ≠ 0"}
    big = sum_all(list(Fs) + list(Gs), D, K)
    lhs = intersect(subspace_sum(E, E2), big)
    rhs = sum_all([intersect(E, X) for X in Fs] + [intersect(E2, Y) for Y in Gs], D, K)
    ok = lhs == rhs
    info = {"lhs_dim": lhs.dim, "rhs_dim": rhs.dim}
    if not ok:
        for r in lhs.rows:
            if rhs.reduce(r):
                info["witness"] = r
                break
    return ok, info


# ---------------------------------------------------------------------------
# positional sums Σ V^(pos) ⊗ R_s ⊗ V^(n-s-pos)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PosSum:
    """Sum of shifted copies of ``R_s`` inside ``V^(n)``, as a set of ``(s, pos)``."""

    n: int
    terms: FrozenSet[Tuple[int, int]]

    @classmethod
    def run(cls, n: int, s: int, first: int, last: int) -> "PosSum":
        """Positions ``first..last`` of ``R_s``, dropping any with a negative outer exponent."""
        lo = max(first, 0)
        hi = min(last, n - s)
        return cls(n, frozenset((s, q) for q in range(lo, hi + 1)))

    def __add__(self, other: "PosSum") -> "PosSum":
        if self.n != other.n:
            raise ValueError("degree mismatch")
        return PosSum(self.n, self.terms | other.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def window(self) -> Optional[Tuple[int, int, FrozenSet[int]]]:
        """``(lo, L, S)`` when the sum equals ``V^(lo) ⊗ I^S_L ⊗ V^(n-lo-L)``."""
        if not self.terms:
            return None
        S = frozenset(s for s, _ in self.terms)
        lo = min(q for _, q in self.terms)
        end = max(q + s for s, q in self.terms)
        full = {(s, q) for s in S for q in range(lo, end - s + 1)}
        if full != set(self.terms):
            return None
        return lo, end - lo, S


def sum_possums(parts: Iterable[PosSum], n: int) -> PosSum:
    acc = PosSum(n, frozenset())
    for x in parts:
        acc = acc + x
    return acc


# ---------------------------------------------------------------------------
# the checker
# ---------------------------------------------------------------------------


class KoszulChecker:
    """All conditions and both Koszulity routes for one presentation."""

    def __init__(self, p: Presentation, budget: Budget = UNLIMITED, cache: Optional[AlgebraCache] = None):
        self.p = p
        self.budget = budget
        self.cache = cache or AlgebraCache(p, budget)
        self.d = p.dim_v
        self.F: Field = p.field
        self.a, self.b = p.a, p.b
        self.complex = KoszulComplex(self.cache)

    # -- helpers -------------------------------------------------------------
    def meet(self, vectors: Sequence[Mapping[int, object]], X: PosSum) -> Subspace:
        """``span(vectors) ∩ X``."""
        n, d, F = X.n, self.d, self.F
        if X.is_zero() or not vectors:
            return Subspace.zero(d ** n, F)
        w = X.window()
        if w is None:
            self.budget.ambient(d, n)
            return intersect(Subspace.span(vectors, d ** n, F), positional_sum(self.p, X.terms, n))
        lo, L, S = w
        q = self.cache.quotient(S)
        return meet_window_vectors(vectors, n, lo, L, lambda m: q.red(m, L), d, F)

    def explicit(self, X: PosSum) -> Subspace:
        self.budget.ambient(self.d, X.n)
        return positional_sum(self.p, X.terms, X.n)

    def _witness(self, v: Mapping[int, object], n: int) -> dict:
        return describe_vector(v, n, self.p)

    # -- exclusivity and extra conditions ------------------------------------
    def check_exclusive(self) -> ConditionReport:
        a, b = self.a, self.b
        Rb = self.p.R(b)
        lhs = self.meet(list(Rb.rows), PosSum.run(b, a, 0, b - a))
        det = {"n": b, "dim_R_b": Rb.dim, "dim_intersection": lhs.dim}
        if lhs.dim:
            return ConditionReport("exclusivity", FAILS, [det], self._witness(lhs.rows[0], b))
        return ConditionReport("exclusivity", HOLDS, [det])

    def _require_exclusive(self) -> None:
        if not self.check_exclusive().ok:
            raise PreconditionError("R_a and R_b are not exclusive")

    def ec_sides(self, s: int) -> Tuple[Subspace, Subspace]:
        """Both sides of (e.c.) for relation degree ``s`` (taken at shift ``s-1``)."""
        n = 2 * s - 1
        E = embed(self.p.R(s), s - 1, 0, self.d)
        lhs = self.meet(list(E.rows), PosSum.run(n, s, 0, s - 2))
        rhs = embed(self.cache.J(s, s + 1), s - 2, 0, self.d)
        return lhs, rhs

    def check_ec(self) -> ConditionReport:
        self._require_exclusive()
        details, witness, ok = [], None, True
        for s in (self.a, self.b):
            lhs, rhs = self.ec_sides(s)
            eq = lhs == rhs
            details.append({"s": s, "n": 2 * s - 1, "lhs_dim": lhs.dim, "rhs_dim": rhs.dim, "equal": eq})
            if not eq and witness is None:
                ok = False
                big, small = (lhs, rhs) if lhs.dim >= rhs.dim else (rhs, lhs)
                for r in big.rows:
                    if small.reduce(r):
                        witness = self._witness(r, 2 * s - 1)
                        break
        return ConditionReport("e.c.", HOLDS if ok else FAILS, details, witness)

    def evc_spaces(self) -> List[Subspace]:
        a, b, d = self.a, self.b, self.d
        n = a + b
        out = []
        # (V^(b-1)⊗R_a⊗V) ∩ (V^(b)⊗R_a) ∩ (R_b⊗V^(a))
        X = embed(self.p.R(b), 0, a, d)
        X = self.meet(list(X.rows), PosSum.run(n, a, b - 1, b - 1))
        X = self.meet(list(X.rows), PosSum.run(n, a, b, b))
        out.append(X)
        # (V^(a-1)⊗R_b⊗V) ∩ (V^(a)⊗R_b) ∩ (R_a⊗V^(b))
        Y = embed(self.p.R(a), 0, b, d)
        Y = self.meet(list(Y.rows), PosSum.run(n, b, a - 1, a - 1))
        Y = self.meet(list(Y.rows), PosSum.run(n, b, a, a))
        out.append(Y)
        return out

    def check_evc(self) -> ConditionReport:
        self._require_exclusive()
        n = self.a + self.b
        spaces = self.evc_spaces()
        details = [{"which": k + 1, "n": n, "dim": S.dim} for k, S in enumerate(spaces)]
        for S in spaces:
            if S.dim:
                return ConditionReport("e.v.c.", FAILS, details, self._witness(S.rows[0], n))
        return ConditionReport("e.v.c.", HOLDS, details)

    def ecc_spaces(self) -> List[Subspace]:
        a, b, d = self.a, self.b, self.d
        n = a + b - 1
        # (V^(b-1)⊗R_a) ∩ (R_b⊗V^(a-1) + ... + V^(a-2)⊗R_b⊗V)
        X = embed(self.p.R(a), b - 1, 0, d)
        X = self.meet(list(X.rows), PosSum.run(n, b, 0, a - 2))
        # (V^(a-1)⊗R_b) ∩ (R_a⊗V^(b-1) + ... + V^(b-2)⊗R_a⊗V)
        Y = embed(self.p.R(b), a - 1, 0, d)
        Y = self.meet(list(Y.rows), PosSum.run(n, a, 0, b - 2))
        return [X, Y]

    def check_ecc(self) -> ConditionReport:
        self._require_exclusive()
        n = self.a + self.b - 1
        spaces = self.ecc_spaces()
        details = [{"which": k + 1, "n": n, "dim": S.dim} for k, S in enumerate(spaces)]
        for S in spaces:
            if S.dim:
                return ConditionReport("e.c.c.", FAILS, details, self._witness(S.rows[0], n))
        return ConditionReport("e.c.c.", HOLDS, details)

    # -- theorem spaces ------------------------------------------------------
    def E_space(self, s: int, i: int, n: int) -> Subspace:
        m = n_s(i, s)
        if n < m:
            return Subspace.zero(self.d ** n, self.F)
        J = self.cache.J(s, m)
        if J.dim == 0:
            return Subspace.zero(self.d ** n, self.F)
        return embed(J, n - m, 0, self.d)

    def theorem_possums(self, i: int, n: int) -> Dict[str, PosSum]:
        """``F_1 .. F_16`` as sets of relation positions (only those defined for the parity of ``i``).

        ``F_5`` uses the positions ``n-n_a(i+2)+1 .. n-n_a(i)-1``, the same
        pattern as ``F_6`` and as ``G_1 = V^(..)⊗I^a_{2a-2}⊗V^(..)``.
        """
        a, b = self.a, self.b

        def na(k):
            return n_s(k, a) if k >= 0 else -10 ** 6

        def nb(k):
            return n_s(k, b) if k >= 0 else -10 ** 6

        run = PosSum.run
        out = {
            "F1": run(n, a, 0, n - na(i + 2)),
            "F2": run(n, b, 0, n - na(i) - b),
            "F3": run(n, a, 0, n - a - nb(i)),
            "F4": run(n, b, 0, n - nb(i + 2)),
        }
        if i % 2 == 0:
            out.update(
                F5=run(n, a, n - na(i + 2) + 1, n - na(i) - 1),
                F6=run(n, b, n - nb(i + 2) + 1, n - nb(i) - 1),
                F7=run(n, b, n - na(i) - b + 1, n - na(i - 2) - b - 1),
                F8=run(n, a, n - a - nb(i) + 1, n - a - nb(i - 2) - 1),
                F9=run(n, a, 0, n - na(i - 1) - a),
                F10=run(n, b, 0, n - na(i - 1) - b),
                F11=run(n, a, 0, n - nb(i - 1) - a),
                F12=run(n, b, 0, n - nb(i - 1) - b),
            )
        else:
            p13 = n - na(i + 1)
            p14 = n - na(i - 1) - b
            p15 = n - a - nb(i - 1)
            p16 = n - nb(i + 1)
            out.update(
                F13=run(n, a, p13, p13),
                F14=run(n, b, p14, p14),
                F15=run(n, a, p15, p15),
                F16=run(n, b, p16, p16),
            )
        return out

    def theorem_family(self, i: int, n: int) -> Tuple[List[str], List[str]]:
        """Names of the summands paired with ``E_a`` and with ``E_b`` at ``(i, n)``."""
        if i % 2 == 0:
            if n < n_s(i + 2, self.a):
                return ["F9", "F10"], ["F11", "F12"]
            return ["F1", "F2", "F5", "F7"], ["F3", "F4", "F6", "F8"]
        return ["F1", "F2", "F13", "F14"], ["F3", "F4", "F15", "F16"]

    def build_theorem_spaces(self, i: int, n: int) -> Dict[str, Subspace]:
        """Explicit ``E_a, E_b, F_l`` and the aliases ``E_1, E_2, D_1, G_1, H_1, ...``."""
        if i < 2:
            raise ValueError("theorem spaces are defined for i ≥ 2")
        out = {"E_a": self.E_space(self.a, i, n), "E_b": self.E_space(self.b, i, n)}
        for name, X in self.theorem_possums(i, n).items():
            out[name] = self.explicit(X)
        amb, K = self.d ** n, self.F
        if i % 2 == 0:
            out.update(
                E_1=out["E_a"], E_2=out["E_b"],
                D_1=sum_all([out["F1"], out["F2"]], amb, K), D_2=sum_all([out["F3"], out["F4"]], amb, K),
                G_1=out["F5"], G_2=out["F6"], H_1=out["F7"], H_2=out["F8"],
            )
        else:
            out.update({
                "E'_1": out["E_a"], "E'_2": out["E_b"],
                "D'_1": sum_all([out["F1"], out["F2"]], amb, K), "D'_2": sum_all([out["F3"], out["F4"]], amb, K),
                "G'_1": out["F13"], "G'_2": out["F16"], "H'_1": out["F14"], "H'_2": out["F15"],
            })
        return out

    def tuple_check(self, i: int, n: int) -> Tuple[bool, dict]:
        """Multidistributivity of the theorem tuple at ``(i, n)`` without materialising the F's."""
        self.budget.tick()
        Ea = self.E_space(self.a, i, n)
        Eb = self.E_space(self.b, i, n)
        fa, fb = self.theorem_family(i, n)
        info = {"i": i, "n": n, "family": "+".join(fa) + " | " + "+".join(fb), "dim_E_a": Ea.dim, "dim_E_b": Eb.dim}
        if Ea.dim == 0 and Eb.dim == 0:
            info.update(lhs_dim=0, rhs_dim=0, multidistributive=True)
            return True, info
        if Ea.dim and Eb.dim and intersect(Ea, Eb).dim:
            info.update(multidistributive=False, reason="E_a ∩ E_b ≠ 0")
            return False, info
        P = self.theorem_possums(i, n)
        total = sum_possums([P[k] for k in fa + fb], n)
        lhs = self.meet(list(Ea.rows) + list(Eb.rows), total)
        pieces = [self.meet(list(Ea.rows), P[k]) for k in fa] + [self.meet(list(Eb.rows), P[k]) for k in fb]
        rhs = sum_all(pieces, self.d ** n, self.F)
        assert is_subspace(rhs, lhs)
        ok = lhs.dim == rhs.dim
        info.update(lhs_dim=lhs.dim, rhs_dim=rhs.dim, multidistributive=ok)
        if not ok:
            for r in lhs.rows:
                if rhs.reduce(r):
                    info["witness"] = self._witness(r, n)
                    break
        return ok, info

    def tuple_check_explicit(self, i: int, n: int) -> bool:
        """Same check by brute force on explicit subspaces (oracle for small ``n``)."""
        S = self.build_theorem_spaces(i, n)
        fa, fb = self.theorem_family(i, n)
        return check_multidistributive(S["E_a"], S["E_b"], [S[k] for k in fa], [S[k] for k in fb])

    def purity_degrees(self, i: int, N: int) -> List[int]:
        a = self.a
        if i % 2 == 0:
            low = list(range(n_s(i, a) + 1, min(n_s(i, a) + a, N + 1)))
            return low + list(range(n_s(i + 2, a), N + 1))
        return list(range(n_s(i + 2, a), N + 1))

    def kernel_purity_report(self, i: int, N: int, hypotheses: Optional[bool] = None) -> ConditionReport:
        name = f"kernel purity i={i}"
        if hypotheses is None:
            hypotheses = all(r.ok for r in self.condition_chain())
        if not hypotheses:
            return ConditionReport(name, UNMET)
        details = []
        for n in self.purity_degrees(i, N):
            ok, info = self.tuple_check(i, n)
            details.append(info)
            if not ok:
                return ConditionReport(name, FAILS, details, info.get("witness"))
        return ConditionReport(name, HOLDS_UP_TO_BOUND, details)

    def condition_chain(self) -> List[ConditionReport]:
        """exclusivity → e.c. → e.v.c. → e.c.c., later ones marked unmet after a failure."""
        reports = [self.check_exclusive()]
        for fn, name in ((self.check_ec, "e.c."), (self.check_evc, "e.v.c."), (self.check_ecc, "e.c.c.")):
            if all(r.ok for r in reports):
                reports.append(fn())
            else:
                reports.append(ConditionReport(name, UNMET))
        return reports

    # -- verdicts ------------------------------------------------------------
    def exactness(self, N: int, imax: int) -> Tuple[Dict[Tuple[int, int], bool], Optional[dict]]:
        cells: Dict[Tuple[int, int], bool] = {}
        witness = None
        K = self.complex
        for n in range(1, N + 1):
            for i in range(0, imax + 1):
                self.budget.tick()
                ker = K.kernel_dim(i, n)
                im = K.rank(i + 1, n)
                ok = ker == im
                cells[(i, n)] = ok
                if not ok and witness is None:
                    witness = {"i": i, "n": n, "dim_ker": ker, "rank_next": im}
                    vec = K.nonexact_witness(i, n)
                    if vec is not None:
                        witness["vector"] = vec
        return cells, witness

    def koszul_verdict(self, N: int, imax: int, strategy: str = "exactness") -> KoszulVerdict:
        if strategy not in ("exactness", "conditions", "both"):
            raise ValueError(f"unknown strategy {strategy!r}")
        excl = self.check_exclusive()
        if not excl.ok:
            return KoszulVerdict(N, imax, strategy, PRECONDITION_FAILED, conditions=[excl], witness=excl.witness)
        v = KoszulVerdict(N, imax, strategy, KOSZUL)
        if strategy in ("exactness", "both"):
            cells, wit = self.exactness(N, imax)
            v.cells = cells
            v.exactness_overall = KOSZUL if wit is None else NOT_KOSZUL
            v.witness = wit
        if strategy in ("conditions", "both"):
            chain = self.condition_chain()
            reports = list(chain)
            hyp = all(r.ok for r in chain)
            for i in range(2, imax + 1):
                reports.append(self.kernel_purity_report(i, N, hypotheses=hyp))
            v.conditions = reports
            bad = [r for r in reports if not r.ok]
            v.conditions_overall = KOSZUL if not bad else NOT_KOSZUL
            if bad and v.witness is None:
                first = bad[0]
                v.witness = {"condition": first.name, "vector": first.witness}
        if strategy == "exactness":
            v.overall = v.exactness_overall
        elif strategy == "conditions":
            v.overall = v.conditions_overall
        else:
            # exactness of K is the definition, so it decides; a mismatch is reported, not hidden
            v.overall = v.exactness_overall
            v.strategies_agree = v.exactness_overall == v.conditions_overall
        return v


# ---------------------------------------------------------------------------
# the left Koszul complex
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Term:
    """One summand ``A ⊗ J`` of a complex term; ``branch`` is ``None`` for ``K_0, K_1``."""

    branch: Optional[int]
    m: int
    J: Subspace


class KoszulComplex:
    """Degreewise matrices of ``δ_i`` on ``K_i = ⊕_s A ⊗ J^s_{n_s(i)}``.

    Matrices are stored as one image row per domain basis element, in
    codomain coordinates.  Domain order: branch a before branch b, then
    A-words in word order, then J rows in RREF order.
    """

    def __init__(self, cache: AlgebraCache):
        self.cache = cache
        self.A = cache.A
        self.d = cache.d
        self.F = cache.F
        self.a, self.b = cache.a, cache.b
        self._rank: Dict[Tuple[int, int], int] = {}
        self._mat: Dict[Tuple[int, int], List[Vec]] = {}
        self._bases: Dict[Tuple[int, int], Tuple[list, dict]] = {}

    def terms(self, i: int, n_max: Optional[int] = None) -> List[Term]:
        d, F = self.d, self.F
        if i == 0:
            return [Term(None, 0, Subspace.full(1, F))]
        if i == 1:
            return [Term(None, 1, Subspace.full(d, F))]
        out = []
        for s in (self.a, self.b):
            m = n_s(i, s)
            if n_max is not None and m > n_max:
                continue
            J = self.cache.J(s, m)
            if J.dim:
                out.append(Term(s, m, J))
        return out

    def basis(self, i: int, n: int) -> Tuple[list, dict]:
        key = (i, n)
        hit = self._bases.get(key)
        if hit is not None:
            return hit
        elems = []
        if i >= 0:
            for t_idx, t in enumerate(self.terms(i, n)):
                if t.m > n:
                    continue
                for u in self.A.basis(n - t.m):
                    for j in range(t.J.dim):
                        elems.append((t_idx, u, j))
        pos = {e: k for k, e in enumerate(elems)}
        self._bases[key] = (elems, pos)
        return elems, pos

    def dim(self, i: int, n: int) -> int:
        return len(self.basis(i, n)[0])

    def target_index(self, i: int, src: Term) -> Optional[int]:
        tgt_terms = self.terms(i - 1)
        if i - 1 <= 1:
            return 0
        for k, t in enumerate(tgt_terms):
            if t.branch == src.branch:
                return k
        return None

    def matrix(self, i: int, n: int) -> List[Vec]:
        """Rows: images of the domain basis of ``K_i`` in degree ``n``."""
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
                k = src.m - tgt.m
                tail_size = d ** tgt.m
                deg_u = n - src.m
                pre_size = d ** k
                groups: Dict[int, Vec] = {}
                for w, c in src.J.rows[j].items():
                    pre, tail = divmod(w, tail_size)
                    for v, x in A.red(u * pre_size + pre, deg_u + k).items():
                        g = groups.setdefault(v, {})
                        t = F.norm(g.get(tail, 0) + c * x)
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

    def rank(self, i: int, n: int) -> int:
        key = (i, n)
        r = self._rank.get(key)
        if r is None:
            r = 0 if i <= 0 else rank_of_rows(self.matrix(i, n), self.F)
            self._rank[key] = r
        return r

    def kernel_dim(self, i: int, n: int) -> int:
        if i == 0:
            return self.dim(0, n) if n >= 1 else 0
        return self.dim(i, n) - self.rank(i, n)

    def nonexact_witness(self, i: int, n: int) -> Optional[dict]:
        """A kernel element of ``δ_i`` outside ``im δ_{i+1}``, in (A-word, J-row, branch) terms."""
        from .exactla import left_kernel_combinations

        dom = self.dim(i, n)
        if i == 0:
            ker_vecs = [{k: self.F.coerce(1)} for k in range(dom)]
        else:
            ker_vecs = left_kernel_combinations(self.matrix(i, n), self.F)
        image = Subspace.span(self.matrix(i + 1, n), max(dom, 1), self.F)
        ker = Subspace.span(ker_vecs, max(dom, 1), self.F)
        elems, _ = self.basis(i, n)
        terms = self.terms(i, n)
        for r in ker.rows:
            if image.reduce(r):
                out = []
                for k, c in sorted(r.items()):
                    t_idx, u, j = elems[k]
                    t = terms[t_idx]
                    out.append({
                        "branch": t.branch,
                        "a_word": "".join(self.cache.p.generators[x] for x in index_word(u, n - t.m, self.d)),
                        "j_row": j,
                        "coeff": format_scalar(c),
                    })
                return {"terms": out}
        return None

    def composition_is_zero(self, i: int, n: int) -> bool:
        """``δ_{i-1} ∘ δ_i = 0`` in degree ``n``."""
        if i < 2:
            return True
        lower = self.matrix(i - 1, n)
        F = self.F
        for row in self.matrix(i, n):
            acc: Vec = {}
            for k, c in row.items():
                for kk, x in lower[k].items():
                    t = F.norm(acc.get(kk, 0) + c * x)
                    if t:
                        acc[kk] = t
                    else:
                        acc.pop(kk, None)
            if acc:
                return False
        return True


# ---------------------------------------------------------------------------
# module-level conveniences
# ---------------------------------------------------------------------------


def check_exclusive(p: Presentation) -> ConditionReport:
    return KoszulChecker(p).check_exclusive()


def check_ec(p: Presentation) -> ConditionReport:
    return KoszulChecker(p).check_ec()


def check_evc(p: Presentation) -> ConditionReport:
    return KoszulChecker(p).check_evc()


def check_ecc(p: Presentation) -> ConditionReport:
    return KoszulChecker(p).check_ecc()


def build_theorem_spaces(p: Presentation, i: int, n: int) -> Dict[str, Subspace]:
    return KoszulChecker(p).build_theorem_spaces(i, n)


def kernel_purity_report(p: Presentation, i: int, N: int) -> ConditionReport:
    return KoszulChecker(p).kernel_purity_report(i, N)


def koszul_verdict(p: Presentation, N: int, imax: int, strategy: str = "exactness", budget: Budget = UNLIMITED) -> KoszulVerdict:
    return KoszulChecker(p, budget).koszul_verdict(N, imax, strategy)
