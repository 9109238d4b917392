"""Cyclic word counting over the alphabet {x, y}.

Words are strings over ``"xy"`` ordered as plain strings (``x < y``), so
the normal form of a necklace is ``min`` over its rotations.

The counts feed the closed forms for Hochschild homology dimensions and
are compared against the rank computations in :mod:`koszulkit.hochschild`.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product
from typing import List, Tuple

from sympy import totient
from sympy.utilities.iterables import multiset_permutations, partitions


def euler_phi(n: int) -> int:
    if n < 1:
        raise ValueError("euler_phi needs n ≥ 1")
    return int(totient(n))


def rho(n: int) -> int:
    """Number of binary necklaces of length ``n``: ``(1/n) Σ_{m|n} φ(m) 2^(n/m)``."""
    if n < 1:
        raise ValueError("rho needs n ≥ 1")
    total = sum(euler_phi(m) * 2 ** (n // m) for m in range(1, n + 1) if n % m == 0)
    assert total % n == 0
    return total // n


def rotate_right(w: str, k: int = 1) -> str:
    if not w:
        return w
    k %= len(w)
    return w[len(w) - k:] + w[: len(w) - k]


def normalform(w: str) -> str:
    """The lexicographically least rotation."""
    if not w:
        return w
    return min(rotate_right(w, k) for k in range(len(w)))


def swap(w: str) -> str:
    return w.translate(str.maketrans("xy", "yx"))


def delete(words: List[str]) -> List[str]:
    """Sorted union of the normal forms of ``words`` and of their letter-swapped copies."""
    return sorted({normalform(w) for w in words} | {normalform(swap(w)) for w in words})


def bounded_compositions(d: int, t: int) -> List[Tuple[int, ...]]:
    """Compositions of ``d`` with parts in ``1..t``."""
    out = []
    for part in partitions(d, k=t):
        multiset = [k for k, mult in sorted(part.items(), reverse=True) for _ in range(mult)]
        out.extend(tuple(c) for c in multiset_permutations(multiset))
    return out


def blocks(composition) -> str:
    """Alternating blocks, the first made of ``y``'s."""
    return "".join(("y" if k % 2 == 0 else "x") * c for k, c in enumerate(composition))


def ker(n: int, t: int) -> List[str]:
    d = n - t - 1
    if d < 1:
        return []
    comps = [c for c in bounded_compositions(d, t) if c[-1] < t or len(c) % 2 == 0]
    return delete(["x" * t + blocks(c) + "y" for c in comps])


@lru_cache(maxsize=None)
def _generators(n: int) -> Tuple[str, ...]:
    out: List[str] = []
    for t in range(2, n - 1):
        out.extend(ker(n, t))
    return tuple(out)


def generators(n: int) -> List[str]:
    """Concatenation of ``ker(n, t)`` for ``t = 2 .. n-2``."""
    return list(_generators(n))


def contain(w: str, v: str) -> bool:
    """Some right rotation of ``w`` by ``0 .. len(v)-1`` steps has ``v`` as a factor."""
    if not v:
        return True
    return any(v in rotate_right(w, k) for k in range(len(v)))


def cyclic_contains(w: str, v: str) -> bool:
    """``v`` is a factor of some rotation of ``w``, for ``len(v) ≤ len(w)``."""
    if not v:
        return True
    return any(v in rotate_right(w, k) for k in range(max(len(w), 1)))


def relations(w: str) -> bool:
    return "xxxx" in w or "yyyy" in w


def relb(b: int) -> str:
    return "xx" + "y" * (b - 4) + "xy"


def rela(a: int) -> str:
    vs = "".join("x" if k % 2 == 0 else "y" for k in range(a - 4))
    if len(vs) % 2 == 0:
        vs = rotate_right(vs)
    return "xx" + vs + "yy"


def ppredim0(n: int) -> int:
    return sum(1 for p in generators(n) if not (contain(p, "xxxx") or contain(p, "yyyy")))


def predim0(n: int, a: int, b: int) -> int:
    aword, bword = rela(a), relb(b)
    return sum(1 for p in generators(n) if not (contain(p, aword) or contain(p, bword)))


def predim1(n: int) -> int:
    return len(generators(n))


def _count_free(prefix: str, suffix: str, free: int) -> int:
    bad = sum(1 for w in product("xy", repeat=free) if relations(prefix + "".join(w) + suffix))
    return 2 ** free - bad


def predim2(n: int) -> int:
    if n < 5:
        raise ValueError("predim2 needs n ≥ 5")
    return _count_free("x", "xxx", n - 4)


def predim3(n: int) -> int:
    if n < 7:
        raise ValueError("predim3 needs n ≥ 7")
    return _count_free("xxx", "xxx", n - 6)
