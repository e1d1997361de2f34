# Author: PB & Claude
# Maintainer: PB
# Original date: 2025.06.09
# Copyright (C) 2025 HRDAG https://hrdag.org
#
# This program is free software; you can redistribute it and/or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation; either version 2 of the License, or
# (at your option) any later version.
#
# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License along
# with this program; if not, see <https://www.gnu.org/licenses/>.
#
# ------
# hvmod/src/hvmod/cli.py

"""Command line interface for hvmod."""

import json
import logging
import shlex
from collections.abc import Callable, Iterator
from contextlib import contextmanager
from enum import Enum
from typing import Any

import typer
from rich.console import Console
from rich.logging import RichHandler
from rich.table import Table

from .catalog import (
    CATALOG_NAMES,
    CatalogEntry,
    catalog,
    describe,
    gysin_model,
    parse_representation,
)
from .classify import (
    IsoBucket,
    SigmaNClass,
    SplitClass,
    classify_f2_plus_sigma,
    classify_sigma_n,
    enumerate_sigma_n,
    search_j2,
    search_sigma_n,
    serre_containment,
    solve_j2,
)
from .f2lin import GradedModule
from .functors import fix_z2, quotient_E, smith_sequence, tor1
from .parser import format_presentation, load_presentation
from .steenrod import format_monomial, parse_steenrod
from .types import (
    DEFAULT_BUDGET,
    DEFAULT_MAX_DEGREE,
    DEFAULT_SEED,
    JSON_SCHEMA,
    TRUNCATION_NOTE,
    BudgetExceeded,
    ClassificationError,
    PresentationError,
    TruncationError,
    Verdict,
)
from .umod import (
    Presentation,
    as_module,
    is_hfree,
    is_isomorphic_bounded,
    is_nilclosed,
    is_nilpotent,
    is_reduced,
    validate,
)
from .validator import SUITES, run_suite

app = typer.Typer(help="Unstable modules over H*V and the Steenrod algebra")
module_app = typer.Typer(help="Checks and functors on a single presentation")
classify_app = typer.Typer(help="Classify solutions with a known E-bar")
enumerate_app = typer.Typer(help="List classification candidates")
search_app = typer.Typer(help="Brute-force searches over Sq tables")
app.add_typer(module_app, name="module")
app.add_typer(classify_app, name="classify")
app.add_typer(enumerate_app, name="enumerate")
app.add_typer(search_app, name="search")

console = Console(width=100, color_system=None, highlight=False,
                  markup=False, emoji=False, soft_wrap=True)


class OutputFormat(str, Enum):
    text = "text"
    json = "json"


class Predicate(str, Enum):
    validate = "validate"
    nilpotent = "nilpotent"
    reduced = "reduced"
    nilclosed = "nilclosed"
    hfree = "hfree"


_PREDICATES: dict[Predicate, Callable[[Presentation, int], Verdict]] = {
    Predicate.validate: validate,
    Predicate.nilpotent: is_nilpotent,
    Predicate.reduced: is_reduced,
    Predicate.nilclosed: is_nilclosed,
    Predicate.hfree: is_hfree,
}


def _max_degree_option(default: int | None = DEFAULT_MAX_DEGREE) -> Any:
    return typer.Option(default, "--max-degree", "-N",
                        envvar="HVMOD_MAX_DEGREE",
                        help="Truncation degree N")


def _format_option() -> Any:
    return typer.Option(OutputFormat.text, "--format", "-f",
                        help="Output format: text, json")


def _budget_option() -> Any:
    return typer.Option(DEFAULT_BUDGET, "--budget",
                        help="Assignments tried by isomorphism searches")


def _debug_option() -> Any:
    return typer.Option(False, "--debug", help="Log search progress to "
                        "stderr")


def _setup_logging(debug: bool) -> None:
    if not debug:
        return
    logger = logging.getLogger("hvmod")
    logger.setLevel(logging.DEBUG)
    if not any(isinstance(h, RichHandler) for h in logger.handlers):
        logger.addHandler(RichHandler(console=Console(stderr=True),
                                      show_time=False, show_path=False))


@contextmanager
def _reporting(debug: bool = False) -> Iterator[None]:
    """Map library errors to exit codes: 1 for math, 2 for input.

    Anything else is an internal error: exit 3, or the traceback itself
    under --debug.
    """
    try:
        yield
    except typer.Exit:
        raise
    except ClassificationError as e:
        typer.echo(f"Error: {e}", err=True)
        if e.verdict is not None and e.verdict.witness is not None:
            w = e.verdict.witness
            typer.echo(f"  witness in degree {w.degree}: {w.element} "
                       f"({w.condition})", err=True)
        raise typer.Exit(1)
    except BudgetExceeded as e:
        typer.echo(f"Error: budget-exceeded: {e}", err=True)
        raise typer.Exit(1)
    except KeyError as e:
        typer.echo(f"Error: {e.args[0] if e.args else e}", err=True)
        raise typer.Exit(2)
    except (PresentationError, TruncationError, ValueError, OSError) as e:
        typer.echo(f"Error: {e}", err=True)
        raise typer.Exit(2)
    except Exception as e:
        if debug:
            raise
        typer.echo(f"Internal error: {type(e).__name__}: {e}", err=True)
        raise typer.Exit(3)


def _report(command: list[str], max_degree: int | None,
            **fields: Any) -> dict[str, Any]:
    return {"schema": JSON_SCHEMA, "command": command,
            "max_degree": max_degree, "note": TRUNCATION_NOTE, **fields}


def _emit(fmt: OutputFormat, report: dict[str, Any],
          render: Callable[[], None]) -> None:
    if fmt is OutputFormat.json:
        typer.echo(json.dumps(report, indent=2, sort_keys=True))
        return
    console.print(f"$ hvmod {shlex.join(report['command'])}")
    render()
    console.print(f"note: {TRUNCATION_NOTE}")


def _module_dict(m: GradedModule) -> dict[str, Any]:
    return {
        "name": m.name,
        "rank": m.rank,
        "top": m.top,
        "dims": m.space.nonzero_dims(),
        "basis": {n: [m.label(n, k) for k in range(m.dim(n))]
                  for n in m.degrees() if m.dim(n)},
    }


def _print_dims(m: GradedModule, title: str | None = None,
                basis: bool = True) -> None:
    table = Table(title=title or m.name or None)
    table.add_column("degree", justify="right")
    table.add_column("dim", justify="right")
    if basis:
        table.add_column("basis")
    for n, d in m.space.nonzero_dims().items():
        row = [str(n), str(d)]
        if basis:
            row.append(", ".join(m.label(n, k) for k in range(d)))
        table.add_row(*row)
    if not m.space.nonzero_dims():
        table.add_row("-", "0", *([""] if basis else []))
    console.print(table)


def _print_verdict(label: str, verdict: Verdict) -> None:
    console.print(f"{label}: {verdict.status} "
                  f"(degree {verdict.certified_degree})")
    w = verdict.witness
    if w is not None:
        extra = "".join(f", {k}={v}" for k, v in w.data)
        console.print(f"  witness in degree {w.degree}: {w.element or '-'} "
                      f"({w.condition}{extra})")
    elif verdict.status == "budget-exceeded" and verdict.note:
        console.print(f"  {verdict.note}")


def _exit_for(verdict: Verdict) -> None:
    if not verdict.holds:
        raise typer.Exit(1)


@app.command()
def adem(
    expr: str = typer.Argument(..., help="Sum of Sq products, e.g. "
                               "'Sq2 Sq2'"),
    output_format: OutputFormat = _format_option(),
    debug: bool = _debug_option()
) -> None:
    """Rewrite a Steenrod expression into the admissible basis."""
    _setup_logging(debug)
    with _reporting(debug):
        result = parse_steenrod(expr)
        report = _report(["adem", expr], None, result=str(result),
                         monomials=[format_monomial(m)
                                    for m in result.sorted_monomials()],
                         degree=result.degree)
        _emit(output_format, report, lambda: console.print(str(result)))


@module_app.command("check")
def module_check(
    ref: str = typer.Argument(..., help="Presentation file or "
                              "catalog:<name>[:args]"),
    predicate: Predicate = typer.Option(Predicate.validate, "--predicate",
                                        "-p", help="Property to check"),
    max_degree: int = _max_degree_option(),
    output_format: OutputFormat = _format_option(),
    debug: bool = _debug_option()
) -> None:
    """Check a predicate on a module, up to the truncation."""
    _setup_logging(debug)
    with _reporting(debug):
        p = load_presentation(ref, max_degree)
        verdict = _PREDICATES[predicate](p, max_degree)
        m = as_module(p, max_degree)
        report = _report(["module", "check", ref, "--predicate",
                          predicate.value], max_degree,
                         predicate=predicate.value,
                         verdict=verdict.to_dict(), module=_module_dict(m))

        def render() -> None:
            _print_dims(m, basis=False)
            _print_verdict(predicate.value, verdict)

        _emit(output_format, report, render)
        _exit_for(verdict)


@module_app.command("quotient")
def module_quotient(
    ref: str = typer.Argument(..., help="Presentation file or catalog ref"),
    max_degree: int = _max_degree_option(),
    output_format: OutputFormat = _format_option(),
    debug: bool = _debug_option()
) -> None:
    """E-bar: the quotient by the augmentation ideal of H*V."""
    _setup_logging(debug)
    with _reporting(debug):
        bar = quotient_E(load_presentation(ref, max_degree), max_degree)
        report = _report(["module", "quotient", ref], max_degree,
                         quotient=_module_dict(bar))
        _emit(output_format, report, lambda: _print_dims(bar, "E-bar"))


@module_app.command("tor1")
def module_tor1(
    ref: str = typer.Argument(..., help="Presentation file or catalog ref"),
    max_degree: int = _max_degree_option(),
    output_format: OutputFormat = _format_option(),
    debug: bool = _debug_option()
) -> None:
    """Tor1 over H*V with F2, degreewise."""
    _setup_logging(debug)
    with _reporting(debug):
        result = tor1(load_presentation(ref, max_degree), max_degree)
        dims = {n: d for n, d in result.dims.items() if d}
        fields: dict[str, Any] = {"dims": dims}
        if result.module is not None:
            fields["module"] = _module_dict(result.module)
        report = _report(["module", "tor1", ref], max_degree, tor1=fields)

        def render() -> None:
            if result.module is not None:
                _print_dims(result.module, "Tor1")
                return
            table = Table(title="Tor1")
            table.add_column("degree", justify="right")
            table.add_column("dim", justify="right")
            for n, d in dims.items():
                table.add_row(str(n), str(d))
            console.print(table)

        _emit(output_format, report, render)


@module_app.command("iso")
def module_iso(
    first: str = typer.Argument(..., help="First presentation"),
    second: str = typer.Argument(..., help="Second presentation"),
    max_degree: int = _max_degree_option(),
    budget: int = _budget_option(),
    output_format: OutputFormat = _format_option(),
    debug: bool = _debug_option()
) -> None:
    """Search for an H*V-A-linear isomorphism up to the truncation."""
    _setup_logging(debug)
    with _reporting(debug):
        a = load_presentation(first, max_degree)
        b = load_presentation(second, max_degree)
        result = is_isomorphic_bounded(a, b, max_degree, budget)
        report = _report(["module", "iso", first, second], max_degree,
                         verdict=result.verdict.to_dict(),
                         iso=result.iso.to_lists() if result.iso else None)
        _emit(output_format, report,
              lambda: _print_verdict("isomorphic", result.verdict))
        _exit_for(result.verdict)


@app.command()
def fix(
    ref: str = typer.Argument(..., help="Presentation file or catalog ref"),
    max_degree: int = _max_degree_option(),
    output_format: OutputFormat = _format_option(),
    debug: bool = _debug_option()
) -> None:
    """Lannes' Fix for V = Z/2, certified on degrees <= N/2."""
    _setup_logging(debug)
    with _reporting(debug):
        result = fix_z2(load_presentation(ref, max_degree), max_degree)
        report = _report(["fix", ref], max_degree,
                         fix=_module_dict(result),
                         certified_degree=result.top)

        def render() -> None:
            _print_dims(result, "Fix E")
            console.print(f"certified to degree {result.top}")

        _emit(output_format, report, render)


@app.command()
def smith(
    ref: str = typer.Argument(..., help="Presentation file or catalog ref"),
    max_degree: int = _max_degree_option(),
    output_format: OutputFormat = _format_option(),
    debug: bool = _debug_option()
) -> None:
    """The Smith sequences 0 -> E -> H (x) Fix E -> C -> 0 and its bar."""
    _setup_logging(debug)
    with _reporting(debug):
        result = smith_sequence(load_presentation(ref, max_degree),
                                max_degree)
        parts = {
            "E-bar": result.reduced_module,
            "Fix E": result.fix_module,
            "H (x) Fix E": result.hull,
            "C": result.cokernel,
            "C-bar": result.reduced_cokernel,
            "tauC": result.trivial_part,
        }
        report = _report(
            ["smith", ref], max_degree,
            certified_degree=result.certified_degree,
            modules={k: _module_dict(m) for k, m in parts.items()},
            eta_injective=result.eta_injective.to_dict(),
            four_term_exact=result.four_term_exact.to_dict())

        def render() -> None:
            for title, m in parts.items():
                _print_dims(m, title, basis=False)
            _print_verdict("eta injective", result.eta_injective)
            _print_verdict("four-term sequence exact",
                           result.four_term_exact)

        _emit(output_format, report, render)
        _exit_for(result.four_term_exact)


@classify_app.command("sigma")
def classify_sigma(
    ref: str = typer.Argument(..., help="Presentation file or catalog ref"),
    split: bool = typer.Option(False, "--split", help="E-bar is F2 + Σ^n F2"
                               " instead of Σ^n F2"),
    max_degree: int = _max_degree_option(),
    budget: int = _budget_option(),
    output_format: OutputFormat = _format_option(),
    debug: bool = _debug_option()
) -> None:
    """Identify E as Σ^d u H*V (or H*V + Σ^d u H*V with --split)."""
    _setup_logging(debug)
    with _reporting(debug):
        p = load_presentation(ref, max_degree)
        command = ["classify", "sigma", ref] + (["--split"] if split else [])
        found: SigmaNClass | SplitClass
        if split:
            found = classify_f2_plus_sigma(p, max_degree, budget)
            sigma = found.sigma
        else:
            found = classify_sigma_n(p, max_degree, budget)
            sigma = found
        serre = serre_containment(sigma, max_degree)
        report = _report(command, max_degree, classification=found.to_dict(),
                         serre=serre.to_dict())

        def render() -> None:
            console.print(f"class: {found}")
            console.print(f"d = {sigma.d}, u = {sigma.to_dict()['u']}, "
                          f"n = {sigma.n}")
            _print_verdict("c^alpha H*V in u H*V", serre)

        _emit(output_format, report, render)


@classify_app.command("j2")
def classify_j2(
    ref: str = typer.Argument(..., help="Presentation file or catalog ref"),
    max_degree: int = _max_degree_option(),
    budget: int = _budget_option(),
    output_format: OutputFormat = _format_option(),
    debug: bool = _debug_option()
) -> None:
    """Tell the two solutions with E-bar = J(2) apart."""
    _setup_logging(debug)
    with _reporting(debug):
        found = solve_j2(load_presentation(ref, max_degree), max_degree,
                         budget)
        report = _report(["classify", "j2", ref], max_degree,
                         classification=found, model=f"j2-{found}")
        _emit(output_format, report,
              lambda: console.print(f"class: {found} (catalog j2-{found})"))


def _print_classes(classes: list[SigmaNClass]) -> None:
    table = Table(title="Σ^d u H*V")
    table.add_column("d", justify="right")
    table.add_column("u")
    table.add_column("class")
    for cls in classes:
        table.add_row(str(cls.d), cls.to_dict()["u"], str(cls))
    console.print(table)


@enumerate_app.command("sigma")
def enumerate_sigma(
    n: int = typer.Option(..., "--n", help="Degree of the generator of "
                          "E-bar"),
    rank: int = typer.Option(1, "--rank", "-r", help="Rank of V"),
    output_format: OutputFormat = _format_option(),
    debug: bool = _debug_option()
) -> None:
    """Every Σ^d u H*V with E-bar = Σ^n F2, up to isomorphism."""
    _setup_logging(debug)
    with _reporting(debug):
        classes = enumerate_sigma_n(n, rank)
        report = _report(["enumerate", "sigma", "--n", str(n), "--rank",
                          str(rank)], None, count=len(classes),
                         classes=[c.to_dict() for c in classes])

        def render() -> None:
            _print_classes(classes)
            console.print(f"{len(classes)} classes")

        _emit(output_format, report, render)


def _print_buckets(buckets: list[IsoBucket]) -> None:
    table = Table(title="isomorphism classes")
    table.add_column("class")
    table.add_column("representative")
    table.add_column("tables", justify="right")
    for b in buckets:
        table.add_row(b.label, b.representative.name, str(len(b.members)))
    console.print(table)
    console.print(f"{len(buckets)} classes")


@search_app.command("j2")
def search_j2_command(
    max_degree: int = _max_degree_option(8),
    budget: int = _budget_option(),
    output_format: OutputFormat = _format_option(),
    debug: bool = _debug_option()
) -> None:
    """Brute force over free modules on generators of degrees 1 and 2."""
    _setup_logging(debug)
    with _reporting(debug):
        buckets = search_j2(max_degree, budget)
        report = _report(["search", "j2", "--max-degree", str(max_degree)],
                         max_degree, count=len(buckets),
                         classes=[b.to_dict() for b in buckets])
        _emit(output_format, report, lambda: _print_buckets(buckets))


@search_app.command("sigma")
def search_sigma_command(
    n: int = typer.Option(..., "--n", help="Degree of the generator"),
    rank: int = typer.Option(1, "--rank", "-r", help="Rank of V"),
    max_degree: int = _max_degree_option(12),
    budget: int = _budget_option(),
    output_format: OutputFormat = _format_option(),
    debug: bool = _debug_option()
) -> None:
    """Brute force over one-generator free modules with E-bar = Σ^n F2."""
    _setup_logging(debug)
    with _reporting(debug):
        buckets = search_sigma_n(n, rank, max_degree, budget)
        report = _report(["search", "sigma", "--n", str(n), "--rank",
                          str(rank), "--max-degree", str(max_degree)],
                         max_degree, count=len(buckets),
                         classes=[b.to_dict() for b in buckets])
        _emit(output_format, report, lambda: _print_buckets(buckets))


def _entry_dict(entry: CatalogEntry, max_degree: int) -> dict[str, Any]:
    p = entry.presentation
    return {
        "name": entry.name,
        "args": list(entry.args),
        "provenance": entry.provenance,
        "presentation": format_presentation(p),
        "module": _module_dict(as_module(p, max_degree)),
        "quotient": _module_dict(quotient_E(p, max_degree))
        if p.rank else None,
        "expected_dims": entry.expected_dims,
    }


def _print_entry(entry: CatalogEntry, max_degree: int) -> None:
    p = entry.presentation
    console.print(f"{entry.name}: {entry.provenance}")
    console.print(format_presentation(p), end="")
    _print_dims(as_module(p, max_degree), p.name or entry.name)
    if p.rank:
        _print_dims(quotient_E(p, max_degree), "E-bar")


@app.command("catalog")
def catalog_command(
    name: str | None = typer.Argument(None, help="Catalog entry"),
    args: list[str] | None = typer.Argument(None, help="Entry arguments"),
    list_entries: bool = typer.Option(False, "--list", "-l",
                                      help="List catalog entries"),
    export: bool = typer.Option(False, "--export", help="Print the "
                                "presentation in the file format"),
    max_degree: int = _max_degree_option(),
    output_format: OutputFormat = _format_option(),
    debug: bool = _debug_option()
) -> None:
    """Show a named module from the catalog."""
    _setup_logging(debug)
    with _reporting(debug):
        if list_entries or name is None:
            report = _report(["catalog", "--list"], None, entries={
                n: describe(n) for n in CATALOG_NAMES})

            def render_list() -> None:
                table = Table(title="catalog")
                table.add_column("name")
                table.add_column("description")
                for n in CATALOG_NAMES:
                    table.add_row(n, describe(n))
                console.print(table)

            _emit(output_format, report, render_list)
            return
        entry = catalog(name, *(args or []), max_degree=max_degree)
        if export:
            typer.echo(format_presentation(entry.presentation), nl=False)
            return
        report = _report(["catalog", name, *(args or [])], max_degree,
                         entry=_entry_dict(entry, max_degree))
        _emit(output_format, report,
              lambda: _print_entry(entry, max_degree))


@app.command()
def gysin(
    characters: str = typer.Argument(..., help="Comma separated "
                                     "characters, e.g. t,0 or t1,t2"),
    max_degree: int = _max_degree_option(),
    output_format: OutputFormat = _format_option(),
    debug: bool = _debug_option()
) -> None:
    """Gysin model of the disc/sphere pair of a representation."""
    _setup_logging(debug)
    with _reporting(debug):
        entry = gysin_model(parse_representation(characters))
        report = _report(["gysin", characters], max_degree,
                         entry=_entry_dict(entry, max_degree))
        _emit(output_format, report,
              lambda: _print_entry(entry, max_degree))


@app.command()
def verify(
    suite: str = typer.Argument(..., help=f"Suite: all, "
                                f"{', '.join(SUITES)}"),
    seed: int = typer.Option(DEFAULT_SEED, "--seed", envvar="HVMOD_SEED",
                             help="Seed for randomized suites"),
    max_degree: int | None = _max_degree_option(None),
    budget: int = _budget_option(),
    output_format: OutputFormat = _format_option(),
    debug: bool = _debug_option()
) -> None:
    """Run acceptance suites; exit 0 only if every check passes."""
    _setup_logging(debug)
    with _reporting(debug):
        results = run_suite(suite, seed, budget, max_degree)
        passed = all(r.passed for r in results)
        command = ["verify", suite, "--seed", str(seed)]
        if max_degree is not None:
            command += ["--max-degree", str(max_degree)]
        report = _report(command, max_degree, passed=passed, suites=[
            {"name": r.name, "passed": r.passed,
             "checks": [{"name": c.name, "passed": c.passed,
                         "detail": c.detail} for c in r.checks]}
            for r in results])

        def render() -> None:
            for r in results:
                table = Table(title=f"{r.name}: "
                              f"{'passed' if r.passed else 'FAILED'}")
                table.add_column("check")
                table.add_column("result")
                table.add_column("detail")
                for c in r.checks:
                    table.add_row(c.name, "ok" if c.passed else "FAIL",
                                  c.detail)
                console.print(table)
            failed = sum(r.failed for r in results)
            console.print(f"{len(results)} suites, {failed} failed checks")

        _emit(output_format, report, render)
        if not passed:
            raise typer.Exit(1)


def main() -> None:
    """Main CLI entry point."""
    app()


if __name__ == "__main__":
    main()
