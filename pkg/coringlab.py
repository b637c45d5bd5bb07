#!/usr/bin/env python3
"""
coringlab -- corings, Tor Hopf algebras and shifted subgroups, computed exactly.

Every verb builds one object, checks its axioms and writes a JSON envelope
(inputs, convention, payload, report, timing).  Exit status is 0 when every
check passes, 2 when some axiom fails (the envelope is still written) and 1
for usage, parse and configuration errors.
"""

from __future__ import annotations

import functools
import json
import logging
import random
import time
from pathlib import Path
from typing import Any, Callable

import click
from pydantic import ValidationError
from rich.console import Console
from rich.logging import RichHandler
from rich.panel import Panel
from rich.table import Table

from bar_tor import exterior_dual_report, graded_commutativity_report, tor_bialgebra, tor_dims_via_resolution
from comodules import (
    check_coaction,
    descend_comodule,
    induce_comodule,
    isomorphic,
    random_coalgebra,
    random_comodule,
)
from corings import (
    check,
    check_bialgebra,
    check_coring,
    coring_tensor,
    dual_bialgebra,
    exterior_bialgebra,
    galois_coring,
    galois_extension,
)
from errors import CoringlabError
from export import (
    encode_descent,
    load_envelope,
    load_payload,
    make_envelope,
    serialize,
    write_envelope,
)
from fields import parse_field
from models import EnvelopeModel, Report
from presentations import POLYNOMIAL, parse_presentation, realize
from settings import COMONAD_SPECS, DEFAULT_POINTS, SCENARIOS, Settings, load_settings
from stable_rep import (
    check_stable,
    reflection_report,
    shifted_jordan_type,
    shifted_subgroup_coring,
    stable_endomorphism_algebra,
)
from watts import extract_coring, parse_spec, verify_watts

console = Console()
log = logging.getLogger("coringlab")


# ---------------------------------------------------------------------------
# Plumbing shared by every verb
# ---------------------------------------------------------------------------


class CoringlabGroup(click.Group):
    """Usage errors exit with status 1; status 2 means a failed axiom."""

    def main(self, *args: Any, **kwargs: Any) -> Any:
        kwargs.pop("standalone_mode", None)
        try:
            return super().main(*args, standalone_mode=False, **kwargs)
        except click.ClickException as exc:
            exc.show()
            raise SystemExit(1)
        except click.exceptions.Abort:
            console.print("\n[yellow]Aborted.[/yellow]")
            raise SystemExit(1)


def _setup_logging(verbose: bool) -> None:
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(message)s",
        handlers=[RichHandler(console=console, show_path=False)],
        force=True,
    )


def _fail(title: str, message: str) -> None:
    console.print(Panel(f"[red]{message}[/red]", title=title))
    raise SystemExit(1)


def common_options(fn: Callable) -> Callable:
    """--out, --pretty, --seed, --config and --verbose, with errors mapped to exit status 1."""

    @functools.wraps(fn)
    def wrapper(*args: Any, **kwargs: Any) -> Any:
        try:
            return fn(*args, **kwargs)
        except CoringlabError as exc:
            _fail(type(exc).__name__, str(exc))
        except ValidationError as exc:
            _fail("Invalid Configuration", str(exc))

    for option in reversed(
        [
            click.option("--out", type=click.Path(dir_okay=False), default=None,
                         help="Envelope path (default: <output_dir>/<verb>.json)"),
            click.option("--pretty", is_flag=True, help="Render the report as tables"),
            click.option("--seed", type=int, default=None, help="Seed for random batteries (default 0)"),
            click.option("--config", type=click.Path(exists=True, dir_okay=False), default=None,
                         help="JSON file with the same keys as the flags"),
            click.option("--verbose", is_flag=True, help="Log progress at DEBUG level"),
        ]
    ):
        wrapper = option(wrapper)
    return wrapper


def _prepare(config: str | None, verbose: bool, **overrides: Any) -> Settings:
    _setup_logging(verbose)
    settings = load_settings(config, **overrides)
    log.debug("settings: %s", settings.model_dump())
    return settings


def _dim_text(n: int | None) -> str:
    return "not computed" if n is None else str(n)


def render(envelope: EnvelopeModel) -> None:
    report = envelope.report
    table = Table(title=report.subject or envelope.command)
    table.add_column("Axiom", style="bold")
    table.add_column("Status", justify="center")
    table.add_column("Witness", style="dim")
    for entry in report.entries:
        status = "[green]pass[/green]" if entry.status == "pass" else "[red]fail[/red]"
        table.add_row(entry.axiom, status, entry.witness or "")
    console.print(table)
    if report.notes:
        notes = Table(title="Notes")
        notes.add_column("Key", style="bold")
        notes.add_column("Value", justify="right")
        for key, value in report.notes.items():
            notes.add_row(key, str(value))
        console.print(notes)
    if envelope.payload_kind == "tor":
        dims = Table(title="dim Tor_s")
        dims.add_column("s", justify="right")
        dims.add_column("bar complex", justify="right")
        dims.add_column("resolution", justify="right")
        oracle = envelope.payload.get("oracle") or []
        for s, n in enumerate(envelope.payload["table"]["dims"]):
            dims.add_row(str(s), _dim_text(n), _dim_text(oracle[s]) if s < len(oracle) else "")
        console.print(dims)


def finish(
    command: str,
    inputs: dict,
    payload_kind: str,
    payload: dict,
    report: Report,
    started: float,
    settings: Settings,
    out: str | None,
    pretty: bool,
) -> EnvelopeModel:
    """Write the envelope; a failing report ends the process with status 2."""
    envelope = make_envelope(
        command, inputs, payload_kind, payload, report, {"seconds": round(time.perf_counter() - started, 3)}
    )
    target = str(Path(out).resolve()) if out else f"{command}.json"
    write_envelope(envelope, target, settings)
    if pretty:
        render(envelope)
    if not report.passed:
        failing = ", ".join(f"{e.axiom} ({e.witness})" for e in report.failed())
        console.print(f"[red]Failed:[/red] {failing}")
        raise SystemExit(2)
    console.print(f"[green]All {len(report.entries)} checks passed[/green] for {report.subject or command}")
    return envelope


def _parse_point(text: str | None, p: int, r: int) -> tuple[int, ...]:
    if text is None:
        return DEFAULT_POINTS.get(r, (1,) * r) if p == 2 else (1,) * r
    try:
        point = tuple(int(part) for part in text.split(","))
    except ValueError:
        raise click.BadParameter(f"{text!r} is not a comma list of integers", param_hint="--point")
    if len(point) != r:
        raise click.BadParameter(f"{len(point)} coordinates given, r = {r}", param_hint="--point")
    return point


# ---------------------------------------------------------------------------
# Verbs
# ---------------------------------------------------------------------------


@click.group(cls=CoringlabGroup)
def cli() -> None:
    """coringlab -- exact corings, bialgebras and their comodules."""


@cli.command()
@click.option("--ring", required=True, help='Presentation, e.g. "Q[x,y]" or "GF(2)[x]/(x^2)"')
@click.option("--max-degree", type=int, default=None, help="Homological and internal degree cap")
@click.option("--check", "level", type=click.Choice(["coring", "bialgebra", "hopf"]), default="hopf",
              help="Strongest structure to verify")
@click.option("--oracle/--no-oracle", default=True, help="Compare with the minimal resolution")
@common_options
def tor(ring, max_degree, level, oracle, out, pretty, seed, config, verbose):
    """Tor^R(k, k) as a graded Hopf algebra."""
    settings = _prepare(config, verbose, seed=seed, max_degree=max_degree)
    n = settings.max_degree
    started = time.perf_counter()
    algebra = realize(parse_presentation(ring), n)
    t = tor_bialgebra(algebra, n, n)
    checker = {"coring": check_coring, "bialgebra": check_bialgebra, "hopf": check}[level]
    report = checker(t)
    report.subject = t.name
    report.extend(graded_commutativity_report(t))
    table = None
    if oracle:
        table = tor_dims_via_resolution(algebra, n, n)
        agrees = table.dims() == t.dims() and table.table == t.table()
        report.add("oracle_agrees", None if agrees else f"{t.dims()} vs {table.dims()}")
    report.notes["dims"] = ",".join(_dim_text(x) for x in t.dims())
    payload = serialize(t)
    if table is not None:
        payload["oracle"] = table.dims()
    finish("tor", {"ring": ring, "max_degree": n, "check": level}, "tor", payload,
           report, started, settings, out, pretty)


@cli.command()
@click.option("--ring", required=True, help="Presentation of the ring")
@click.option("--max-degree", type=int, default=None, help="Homological and internal degree cap")
@common_options
def dualize(ring, max_degree, out, pretty, seed, config, verbose):
    """Graded dual of Tor; for polynomial rings, compared with the exterior algebra."""
    settings = _prepare(config, verbose, seed=seed, max_degree=max_degree)
    n = settings.max_degree
    started = time.perf_counter()
    pres = parse_presentation(ring)
    t = tor_bialgebra(realize(pres, n), n, n)
    dual = dual_bialgebra(t, strict=True)
    report = check(dual)
    report.subject = dual.name
    if pres.kind == POLYNOMIAL and not pres.relations:
        report.extend(exterior_dual_report(t), prefix="exterior_")
    finish("dualize", {"ring": ring, "max_degree": n}, "coring", serialize(dual),
           report, started, settings, out, pretty)


@cli.command()
@click.option("--p", "p", type=int, required=True, help="The prime")
@click.option("--r", "r", type=int, required=True, help="Rank of the elementary abelian group")
@click.option("--point", default=None, help="Comma list of r coordinates in GF(p)")
@common_options
def shifted(p, r, point, out, pretty, seed, config, verbose):
    """The shifted subgroup coring of kE at a point."""
    settings = _prepare(config, verbose, seed=seed)
    chosen = _parse_point(point, p, r)
    started = time.perf_counter()
    c = shifted_subgroup_coring(p, r, chosen)
    report = check_stable(c)
    report.subject = c.name
    report.notes["dimension"] = c.dim
    report.notes["jordan_type"] = ",".join(str(b) for b in shifted_jordan_type(p, r, chosen))
    finish("shifted", {"p": p, "r": r, "point": list(chosen)}, "coring", serialize(c),
           report, started, settings, out, pretty)


@cli.command()
@click.option("--field", "field_text", required=True, help='Extension field, e.g. "Q(i^2+1)"')
@click.option("--tensor-exterior", is_flag=True, help="Tensor with the exterior bialgebra on one generator")
@common_options
def galois(field_text, tensor_exterior, out, pretty, seed, config, verbose):
    """The Galois coring L (x)_K L."""
    settings = _prepare(config, verbose, seed=seed)
    started = time.perf_counter()
    g = galois_extension(parse_field(field_text))
    c = galois_coring(g)
    if tensor_exterior:
        c = coring_tensor(exterior_bialgebra(1, "graded", g.base), g)
    report = check(c)
    report.subject = c.name
    report.extend(g.check(), prefix="galois_")
    finish("galois", {"field": field_text, "tensor_exterior": tensor_exterior}, "coring", serialize(c),
           report, started, settings, out, pretty)


@cli.command()
@click.option("--spec", "spec_name", default=None, type=click.Choice(sorted(COMONAD_SPECS)),
              help="A named comonad")
@click.option("--spec-file", type=click.Path(exists=True, dir_okay=False), default=None,
              help="JSON comonad specification")
@common_options
def extract(spec_name, spec_file, out, pretty, seed, config, verbose):
    """Extract C(S) from a comonad and verify the Eilenberg-Watts isomorphism."""
    settings = _prepare(config, verbose, seed=seed)
    if (spec_name is None) == (spec_file is None):
        raise click.UsageError("give exactly one of --spec and --spec-file")
    data = COMONAD_SPECS[spec_name] if spec_name else json.loads(Path(spec_file).read_text(encoding="utf-8"))
    started = time.perf_counter()
    spec = parse_spec(data)
    ext = extract_coring(spec)
    report = check(ext.coring)
    report.subject = ext.coring.name
    report.extend(
        verify_watts(spec, ext, settings.battery_size, settings.seed, settings.max_dimension), prefix="watts_"
    )
    finish("extract", {"spec": spec_name or spec_file, "comonad": data}, "coring", serialize(ext.coring),
           report, started, settings, out, pretty)


@cli.command()
@click.option("--p", "p", type=int, required=True, help="The prime")
@common_options
def endo(p, out, pretty, seed, config, verbose):
    """Stable endomorphisms of k[t]/(t) + ... + k[t]/(t^{p-1}) against the preprojective algebra."""
    settings = _prepare(config, verbose, seed=seed)
    started = time.perf_counter()
    se = stable_endomorphism_algebra(p)
    report = se.algebra.check()
    report.subject = se.report.subject
    report.extend(se.report, prefix="preprojective_")
    report.extend(reflection_report(p), prefix="reflection_")
    report.notes["dimension"] = se.algebra.dim
    finish("endo", {"p": p}, "algebra", serialize(se.algebra), report, started, settings, out, pretty)


@cli.command()
@click.option("--field", "field_text", required=True, help="Extension field L over its prime field K")
@click.option("--battery-size", type=int, default=None, help="Number of random comodules")
@common_options
def descend(field_text, battery_size, out, pretty, seed, config, verbose):
    """Induce random comodules to L and descend them back to K."""
    settings = _prepare(config, verbose, seed=seed, battery_size=battery_size)
    started = time.perf_counter()
    g = galois_extension(parse_field(field_text))
    rng = random.Random(settings.seed)
    report = Report(subject=f"descent along {g.extension.name}/{g.base.name}")
    witnesses: dict[str, str | None] = dict.fromkeys(["induced", "descended", "dimension_identity", "round_trip"])
    first = None
    for n in range(settings.battery_size):
        d = random_coalgebra(g.base, rng, settings.max_dimension)
        m = random_comodule(d, rng)
        m.name = f"M{n}"
        up = induce_comodule(m, g)
        back = descend_comodule(up, g, d)
        outcome = {
            "induced": check_coaction(up).passed,
            "descended": check_coaction(back).passed,
            "dimension_identity": back.dim * g.degree == up.dim,
            "round_trip": isomorphic(m, back, seed=settings.seed),
        }
        for key, ok in outcome.items():
            if not ok and witnesses[key] is None:
                witnesses[key] = m.name
        if first is None:
            first = (up, back)
    for key, witness in witnesses.items():
        report.add(key, witness)
    report.notes["comodules"] = settings.battery_size
    payload: dict = {}
    if first is not None:
        report.extend(check_coaction(first[0]), prefix="induced_")
        report.extend(check_coaction(first[1]), prefix="descended_")
        payload = encode_descent(*first).model_dump(by_alias=True)
    finish("descend", {"field": field_text, "battery_size": settings.battery_size, "seed": settings.seed},
           "descent", payload, report, started, settings, out, pretty)


def recheck(kind: str, obj: Any) -> Report:
    """The report a verb would embed for a reloaded payload, restricted to its structural axioms."""
    if kind in ("tor", "coring"):
        return check_stable(obj)
    if kind == "comodule":
        return check_coaction(obj)
    if kind == "descent":
        report = Report(subject="descent")
        report.extend(check_coaction(obj[0]), prefix="induced_")
        report.extend(check_coaction(obj[1]), prefix="descended_")
        return report
    if kind in ("algebra", "dual_module"):
        return obj.check()
    if kind == "report":
        return obj
    report = Report(subject=kind)
    report.add("valid")
    return report


@cli.command("check")
@click.option("--in", "source", required=True, type=click.Path(exists=True, dir_okay=False),
              help="Envelope written by any verb")
@common_options
def check_cmd(source, out, pretty, seed, config, verbose):
    """Reload an envelope, rebuild its object and re-run the checker."""
    settings = _prepare(config, verbose, seed=seed)
    started = time.perf_counter()
    envelope = load_envelope(source)
    obj = load_payload(envelope)
    report = recheck(envelope.payload_kind, obj)
    compared = [e for e in report.entries if envelope.report.status(e.axiom) is not None]
    changed = [e.axiom for e in compared if envelope.report.status(e.axiom) != e.status]
    report.add("reproduces_saved_report", ", ".join(changed) if changed else None)
    report.notes["compared"] = len(compared)
    finish("check", {"in": str(source)}, envelope.payload_kind, envelope.payload,
           report, started, settings, out, pretty)


@cli.command()
@click.option("--only", multiple=True, help="Run only the named scenarios")
@common_options
def reproduce(only, out, pretty, seed, config, verbose):
    """Run every reproduction scenario, one envelope each."""
    settings = _prepare(config, verbose, seed=seed)
    started = time.perf_counter()
    base = Path(out).resolve().parent if out else Path(settings.output_dir).resolve()
    directory = base / "reproduce"
    scenarios = [s for s in SCENARIOS if not only or s.name in only]
    report = Report(subject="reproduction")
    summary = Table(title="Reproduction")
    summary.add_column("Scenario", style="bold")
    summary.add_column("Verb")
    summary.add_column("Exit", justify="right")
    for scenario in scenarios:
        console.rule(f"[bold blue]{scenario.name}[/bold blue] [dim]{scenario.description}[/dim]")
        argv = [scenario.verb, *scenario.args, "--out", str(directory / f"{scenario.name}.json")]
        if config:
            argv += ["--config", config]
        if seed is not None:
            argv += ["--seed", str(seed)]
        try:
            cli.main(args=argv, prog_name="coringlab")
            code = 0
        except SystemExit as exc:
            code = exc.code if isinstance(exc.code, int) else 1
        summary.add_row(scenario.name, scenario.verb, str(code))
        report.add(scenario.name, None if code == 0 else f"exit {code}")
    console.print(summary)
    finish("reproduce", {"scenarios": [s.name for s in scenarios]}, "report", report.model_dump(),
           report, started, settings, out, pretty)


if __name__ == "__main__":
    cli()
