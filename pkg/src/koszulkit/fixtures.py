"""Named example algebras, built programmatically.

The JSON files under ``fixtures/`` in the repository are generated from
these builders (see :func:`write_all`) and a test checks they stay in sync.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Callable, Dict

from .exactla import QQ, Field
from .tensorgraded import Presentation, make_presentation


def atilde_words(a: int, b: int):
    """Leading words of ``Ã_{a,b}``: ``x² w y²`` with an alternating middle, and ``x² y^(b-4) x y``."""
    if not ((a, b) == (4, 5) or 6 <= a < b):
        raise ValueError("Ã_{a,b} needs (a,b) = (4,5) or 6 ≤ a < b")
    w = ["y"] * (a - 4)
    for j in range(1, a):
        if 1 <= a - 2 * j <= a - 4:
            w[a - 2 * j - 1] = "x"
    ra = "xx" + "".join(w) + "yy"
    rb = "xx" + "y" * (b - 4) + "xy"
    return ra, rb


def atilde(a: int, b: int, field: Field = QQ) -> Presentation:
    ra, rb = atilde_words(a, b)
    return make_presentation(["x", "y"], [[(1, ra)], [(1, rb)]], field)


def downup(field: Field = QQ) -> Presentation:
    return make_presentation(
        ["x", "y"],
        [
            [(1, "xxy"), (-2, "xyx"), (1, "yxx")],
            [(1, "yyx"), (-2, "yxy"), (1, "xyy")],
            [(1, "xxxx")],
            [(1, "yyyy")],
        ],
        field,
    )


def xa_yb(a: int = 2, b: int = 3, field: Field = QQ) -> Presentation:
    return make_presentation(["x", "y"], [[(1, "x" * a)], [(1, "y" * b)]], field)


def evc_asymmetry(field: Field = QQ) -> Presentation:
    return make_presentation(["x", "y"], [[(1, "xxx")], [(1, "xyyy")]], field)


def ecc_asymmetry(field: Field = QQ) -> Presentation:
    return make_presentation(["x", "y"], [[(1, "xyy")], [(1, "xxxx"), (1, "xxxy")]], field)


def dual_nonexclusive(field: Field = QQ) -> Presentation:
    return make_presentation(["x", "y"], [[(1, "xxx")], [(1, "yyyy")]], field)


FIXTURES: Dict[str, Callable[[Field], Presentation]] = {
    "atilde-4-5": lambda F: atilde(4, 5, F),
    "atilde-6-7": lambda F: atilde(6, 7, F),
    "downup-quotient": downup,
    "xa-yb-2-3": lambda F: xa_yb(2, 3, F),
    "evc-asymmetry": evc_asymmetry,
    "ecc-asymmetry": ecc_asymmetry,
    "dual-nonexclusive": dual_nonexclusive,
}


def fixture(name: str, field: Field = QQ) -> Presentation:
    try:
        return FIXTURES[name](field)
    except KeyError:
        raise KeyError(f"unknown fixture {name!r}; known: {', '.join(sorted(FIXTURES))}") from None


def write_all(directory: Path) -> None:
    from .cli import presentation_to_json

    directory.mkdir(parents=True, exist_ok=True)
    for name in FIXTURES:
        doc = presentation_to_json(fixture(name))
        (directory / f"{name}.json").write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")
