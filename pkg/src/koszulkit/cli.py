"""``koszulkit`` command line.

Exit codes: 0 ok, 2 bad input, 3 unmet precondition, 4 verdict differs
from ``--expect``, 5 budget or timeout exceeded.
"""

from __future__ import annotations

import csv
import io
import json
import os
import sys
import time
from fractions import Fraction
from pathlib import Path
from typing import Optional

import click

from . import necklace
from .exactla import DEFAULT_PRIME, QQ, Field, PrimeField, field_from_tag, format_scalar
from .fixtures import FIXTURES, fixture
from .hochschild import hh_table
from .koszulchecker import KOSZUL, NOT_KOSZUL, PRECONDITION_FAILED, KoszulChecker
from .tensorgraded import (
    Budget,
    BudgetExceeded,
    Presentation,
    PresentationError,
    Relation,
    dual,
    index_word,
    parse_word,
    reverse,
)

EXIT_PARSE = 2
EXIT_PRECONDITION = 3
EXIT_EXPECT = 4
EXIT_BUDGET = 5


class InputError(click.ClickException):
    exit_code = EXIT_PARSE


class PreconditionFailure(click.ClickException):
    exit_code = EXIT_PRECONDITION


class BudgetFailure(click.ClickException):
    exit_code = EXIT_BUDGET


# ---------------------------------------------------------------------------
# presentation files
# ---------------------------------------------------------------------------


def _line_of(text: str, needle: str) -> Optional[int]:
    k = text.find(needle)
    return None if k < 0 else text.count("\n", 0, k) + 1


def parse_coefficient(raw, where: str, text: str = "") -> Fraction:
    if isinstance(raw, bool) or not isinstance(raw, (str, int)):
        raise InputError(f"{where}: coefficient must be a string like \"-2\" or \"1/3\", got {raw!r}")
    try:
        return Fraction(str(raw).strip())
    except (ValueError, ZeroDivisionError):
        line = _line_of(text, json.dumps(raw))
        at = f" (line {line})" if line else ""
        raise InputError(f"{where}{at}: bad coefficient {raw!r}") from None


def presentation_from_json(doc: dict, text: str = "", field: Optional[Field] = None) -> Presentation:
    if not isinstance(doc, dict):
        raise InputError("presentation file must hold a JSON object")
    try:
        gens = doc["generators"]
        rels = doc["relations"]
    except KeyError as e:
        raise InputError(f"missing key {e.args[0]!r}") from None
    if not isinstance(gens, list) or not all(isinstance(g, str) and g for g in gens):
        raise InputError("generators must be a list of non-empty names")
    if field is None:
        try:
            field = field_from_tag(doc.get("field", "QQ"))
        except ValueError as e:
            raise InputError(str(e)) from None
    relations = []
    for k, rel in enumerate(rels):
        terms = {}
        for j, term in enumerate(rel.get("terms", []) if isinstance(rel, dict) else []):
            where = f"relation {k}, term {j}"
            c = parse_coefficient(term.get("coeff"), where, text)
            try:
                w = parse_word(term.get("word", ""), gens)
            except PresentationError as e:
                raise InputError(f"{where}: {e}") from None
            terms[w] = terms.get(w, 0) + c
        try:
            relations.append(Relation(terms))
        except PresentationError as e:
            raise InputError(f"relation {k}: {e}") from None
    try:
        return Presentation(gens, relations, field)
    except (PresentationError, ZeroDivisionError) as e:
        raise InputError(str(e)) from None


def presentation_to_json(p: Presentation) -> dict:
    """A PresentationFile listing the RREF basis of each relation space."""
    d = p.dim_v
    rels = []
    for s in (p.a, p.b):
        for r in p.R(s).rows:
            terms = [
                {"coeff": format_scalar(c), "word": p.word_str(index_word(w, s, d))} for w, c in sorted(r.items())
            ]
            rels.append({"terms": terms})
    return {"generators": list(p.generators), "field": p.field.tag, "relations": rels}


def load_presentation(source: str, field: Optional[Field] = None) -> Presentation:
    """Load a PresentationFile, or build a shipped fixture when ``source`` names one."""
    path = Path(source)
    if not path.exists():
        name = path.stem if path.suffix == ".json" else source
        if name in FIXTURES:
            try:
                return fixture(name, field or QQ)
            except PresentationError as e:
                raise InputError(str(e)) from None
        raise InputError(f"{source}: no such file or fixture")
    text = path.read_text(encoding="utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"{source}: invalid JSON at line {e.lineno}: {e.msg}") from None
    return presentation_from_json(doc, text, field)


# ---------------------------------------------------------------------------
# output
# ---------------------------------------------------------------------------


def emit_report(command: str, p: Optional[Presentation], field_tag: Optional[str], bounds: dict, result, start: float, timing: bool) -> None:
    doc = {
        "command": command,
        "fixture_hash": p.fingerprint() if p is not None else None,
        "field": field_tag,
        "bounds": bounds,
        "result": result,
        "elapsed_ms": int((time.perf_counter() - start) * 1000) if timing else None,
    }
    click.echo(json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False))


def table_csv(table) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n"] + [f"HH_{i}" for i in range(table.imax + 1)])
    for n in range(table.N + 1):
        w.writerow([n] + [table.entries[(i, n)] for i in range(table.imax + 1)])
    return buf.getvalue()


def _field_option(tag: Optional[str]) -> Optional[Field]:
    if tag is None:
        return None
    try:
        return field_from_tag(tag)
    except ValueError as e:
        raise InputError(str(e)) from None


def _threads(threads: Optional[int]) -> int:
    if threads is not None:
        return threads
    env = os.environ.get("KOSZULKIT_THREADS")
    try:
        return int(env) if env else 1
    except ValueError:
        raise InputError(f"KOSZULKIT_THREADS={env!r} is not an integer") from None


def budget_options(f):
    f = click.option("--max-ambient-dim", type=int, default=1 << 16, show_default=True,
                     help="Refuse to materialise tensor powers larger than this.")(f)
    f = click.option("--timeout", type=float, default=None, help="Wall-clock limit in seconds.")(f)
    f = click.option("--threads", type=int, default=None,
                     help="Worker count (also KOSZULKIT_THREADS); recorded in the report.")(f)
    f = click.option("--no-timing", is_flag=True, help="Write elapsed_ms as null for byte-stable output.")(f)
    return f


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
def main():
    """Koszulity checks and Hochschild homology for (a,b)-homogeneous algebras."""


@main.command()
@click.argument("source")
@click.option("--field", "field_tag", default=None, help='"QQ" or "GF:<p>" (overrides the file).')
@budget_options
def check(source, field_tag, max_ambient_dim, timeout, threads, no_timing):
    """Exclusivity and the extra conditions (e.c.), (e.v.c.), (e.c.c.)."""
    start = time.perf_counter()
    p = load_presentation(source, _field_option(field_tag))
    budget = Budget(max_ambient_dim, timeout)
    try:
        reports = KoszulChecker(p, budget).condition_chain()
    except BudgetExceeded as e:
        raise BudgetFailure(str(e)) from None
    result = {"a": p.a, "b": p.b, "threads": _threads(threads), "conditions": [r.to_dict() for r in reports]}
    emit_report("check", p, p.field.tag, {"max_degree": p.a + p.b, "max_i": None}, result, start, not no_timing)


@main.command()
@click.argument("source")
@click.option("--max-degree", "N", type=int, default=None, help="Degree bound (default 2b+4).")
@click.option("--max-i", "imax", type=int, default=None, help="Homological bound (default 2b).")
@click.option("--strategy", type=click.Choice(["exactness", "conditions", "both"]), default="exactness", show_default=True)
@click.option("--field", "field_tag", default=None, help='"QQ" or "GF:<p>"; default GF(32003) when N > 12.')
@click.option("--expect", type=click.Choice(["koszul", "not-koszul"]), default=None,
              help="Exit with status 4 when the verdict differs.")
@budget_options
def koszul(source, N, imax, strategy, field_tag, expect, max_ambient_dim, timeout, threads, no_timing):
    """Decide (a,b)-Koszulity up to a degree bound."""
    start = time.perf_counter()
    p = load_presentation(source, _field_option(field_tag))
    N = 2 * p.b + 4 if N is None else N
    imax = 2 * p.b if imax is None else imax
    if field_tag is None and N > 12:
        p = p.with_field(PrimeField(DEFAULT_PRIME))
    budget = Budget(max_ambient_dim, timeout)
    try:
        verdict = KoszulChecker(p, budget).koszul_verdict(N, imax, strategy)
    except BudgetExceeded as e:
        raise BudgetFailure(str(e)) from None
    result = verdict.to_dict()
    result["threads"] = _threads(threads)
    emit_report("koszul", p, p.field.tag, {"max_degree": N, "max_i": imax}, result, start, not no_timing)
    if verdict.overall == PRECONDITION_FAILED:
        raise PreconditionFailure("R_a and R_b are not exclusive")
    if expect == "koszul" and verdict.overall != KOSZUL:
        sys.exit(EXIT_EXPECT)
    if expect == "not-koszul" and verdict.overall != NOT_KOSZUL:
        sys.exit(EXIT_EXPECT)


@main.command()
@click.argument("source")
@click.option("--max-degree", "N", type=int, default=12, show_default=True)
@click.option("--max-i", "imax", type=int, default=4, show_default=True)
@click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default="json", show_default=True)
@click.option("--field", "field_tag", default=None, help='"QQ" or "GF:<p>".')
@budget_options
def hh(source, N, imax, fmt, field_tag, max_ambient_dim, timeout, threads, no_timing):
    """Hochschild homology dimensions HH_i(A)_n for i ≤ max-i, n ≤ max-degree."""
    start = time.perf_counter()
    p = load_presentation(source, _field_option(field_tag))
    budget = Budget(max_ambient_dim, timeout)
    try:
        checker = KoszulChecker(p, budget)
        verdict = checker.koszul_verdict(N, imax + 1, "exactness")
        if verdict.overall != KOSZUL:
            click.echo(f"warning: the algebra is {verdict.overall} up to degree {N}; "
                       "the reduced complex need not compute HH", err=True)
        table = hh_table(p, imax, N, budget)
    except BudgetExceeded as e:
        raise BudgetFailure(str(e)) from None
    if fmt == "csv":
        click.echo(table_csv(table), nl=False)
        return
    result = table.to_dict()
    result["threads"] = _threads(threads)
    result["koszul"] = verdict.overall
    emit_report("hh", p, p.field.tag, {"max_degree": N, "max_i": imax}, result, start, not no_timing)


NECKLACE_FUNCTIONS = {
    "rho": (necklace.rho, 1),
    "euler_phi": (necklace.euler_phi, 1),
    "predim0": (necklace.predim0, 3),
    "ppredim0": (necklace.ppredim0, 1),
    "predim1": (necklace.predim1, 1),
    "predim2": (necklace.predim2, 1),
    "predim3": (necklace.predim3, 1),
}


@main.command(name="necklace")
@click.argument("fn", type=click.Choice(sorted(NECKLACE_FUNCTIONS)))
@click.argument("args", nargs=-1, type=int)
def necklace_cmd(fn, args):
    """Cyclic word counts, e.g. ``necklace predim2 9`` or ``necklace predim0 8 4 5``."""
    func, arity = NECKLACE_FUNCTIONS[fn]
    if len(args) != arity:
        raise InputError(f"{fn} takes {arity} integer argument(s)")
    try:
        click.echo(func(*args))
    except ValueError as e:
        raise InputError(str(e)) from None


def _write_presentation(p: Presentation, output: Optional[str]) -> None:
    text = json.dumps(presentation_to_json(p), indent=2, sort_keys=True, ensure_ascii=False) + "\n"
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        click.echo(text, nl=False)


@main.command(name="dual")
@click.argument("source")
@click.option("-o", "--output", default=None, help="Write here instead of stdout.")
@click.option("--field", "field_tag", default=None)
def dual_cmd(source, output, field_tag):
    """Koszul dual A^! (relation spaces R_a^⊥ and R_b^⊥)."""
    p = load_presentation(source, _field_option(field_tag))
    try:
        q = dual(p)
    except PresentationError as e:
        raise PreconditionFailure(f"the dual is not (a,b)-homogeneous: {e}") from None
    _write_presentation(q, output)


@main.command(name="opposite")
@click.argument("source")
@click.option("-o", "--output", default=None, help="Write here instead of stdout.")
@click.option("--field", "field_tag", default=None)
def opposite_cmd(source, output, field_tag):
    """Opposite algebra: every relation word reversed."""
    p = load_presentation(source, _field_option(field_tag))
    _write_presentation(reverse(p), output)


if __name__ == "__main__":  # pragma: no cover
    main()
