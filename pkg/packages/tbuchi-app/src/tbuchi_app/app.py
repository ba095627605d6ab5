"""``tbuchi`` command line: model generation, emptiness checks, iterability queries and benchmarks."""

import logging
from contextlib import contextmanager
from enum import Enum
from pathlib import Path
from typing import Annotated, Iterator, List, Optional, Union

import typer
from rich.console import Console
from rich.table import Table
from tbuchi_core.buchi_check import (
    BenchConfig,
    BenchRow,
    BenchTable,
    CyanEntry,
    IterableCheck,
    SearchConfig,
    SearchMode,
    SearchResult,
    SearchStats,
    WitnessZone,
    build_network,
    check,
    run_bench,
)
from tbuchi_core.dbm import format_zone
from tbuchi_core.omega_iter import AlwaysIterable, NotIterable, PreVerdict, Reduced, omega_iterable, preprocess
from tbuchi_core.oracle import OracleLimitError
from tbuchi_core.ta_model import (
    TBA,
    ModelError,
    Network,
    Transition,
    flatten,
    gen_property,
    parse_model,
    print_model,
    product,
    scale_constants,
)

from ._constants import LOGGER_NAME
from ._setup import configure_logging, start_metrics_server

logger = logging.getLogger(LOGGER_NAME)

app = typer.Typer(name="tbuchi", no_args_is_help=True, add_completion=False)
console = Console()
err_console = Console(stderr=True)

EXIT_EMPTY = 0
EXIT_CYCLE = 1
EXIT_ERROR = 2


class ModelFamily(str, Enum):
    CSMA = "csma"
    FISCHER = "fischer"
    FDDI = "fddi"
    TRAINGATE = "traingate"


class PropertyFamily(str, Enum):
    CSMA = "csma"
    CSMA_COLLISION = "csma-collision"
    FISCHER = "fischer"
    FDDI = "fddi"
    TRAINGATE = "traingate"


@contextmanager
def _rejecting() -> Iterator[None]:
    """Turn input errors into a one-line message on stderr and exit code 2."""
    try:
        yield
    except (ModelError, ValueError, OracleLimitError, OSError) as e:
        logger.error("rejected: %s", e)
        logger.debug("rejected input", exc_info=True)
        typer.echo(f"error: {e}", err=True)
        raise typer.Exit(EXIT_ERROR) from e


def _load(path: Path) -> Union[TBA, Network]:
    return parse_model(path.read_text(encoding="utf-8"))


def _load_automaton(path: Path) -> TBA:
    model = _load(path)
    return model if isinstance(model, TBA) else flatten(model)


@app.callback()
def setup() -> None:
    """Büchi emptiness checking for timed automata."""
    with _rejecting():
        configure_logging()
        start_metrics_server()


@app.command("gen-model")
def gen_model(
    family: Annotated[ModelFamily, typer.Option("--family", help="benchmark family")],
    n: Annotated[int, typer.Option("--n", min=1, help="number of processes")],
    fixed: Annotated[bool, typer.Option("--fixed", help="CSMA/CD: add the busy loop on RETRY")] = False,
    nonzeno: Annotated[bool, typer.Option("--nonzeno", help="CSMA/CD: require y >= 1 when leaving BUSY")] = False,
    scale: Annotated[int, typer.Option("--scale", min=1, help="divide every constant by this factor")] = 1,
    out: Annotated[Optional[Path], typer.Option("-o", "--out", help="output file, stdout when absent")] = None,
) -> None:
    """Write a benchmark network in the textual model format."""
    with _rejecting():
        cfg = BenchConfig(family=family.value, n=n, fixed=fixed, nonzeno=nonzeno, scale=scale)
        text = print_model(scale_constants(build_network(cfg), scale))
        if out is None:
            typer.echo(text, nl=False)
        else:
            out.write_text(text, encoding="utf-8")
            logger.info("wrote %s %d to %s", family.value, n, out)


def _stats_table(stats: SearchStats) -> Table:
    table = Table(show_header=False)
    table.add_row("visited", str(stats.visited))
    table.add_row("subsumptions", str(stats.subsumptions))
    table.add_row("iterability checks", str(stats.iter_checks))
    table.add_row("max depth", str(stats.max_depth))
    table.add_row("elapsed", f"{stats.elapsed:.3f}s")
    if stats.witness is not None:
        table.add_row("witness", f"{stats.witness.kind} {','.join(f't{i}' for i in stats.witness.path)}")
    return table


@app.command("check")
def check_command(
    file: Annotated[Path, typer.Argument(help="model file")],
    property_file: Annotated[Optional[Path], typer.Option("--property", help="property automaton file")] = None,
    builtin: Annotated[Optional[PropertyFamily], typer.Option("--builtin", help="shipped property family")] = None,
    n: Annotated[Optional[int], typer.Option("--n", min=1, help="process count of the shipped property")] = None,
    frame: Annotated[int, typer.Option("--L", min=1, help="CSMA/CD frame length")] = 808,
    slot: Annotated[int, typer.Option("--S", min=1, help="CSMA/CD slot time")] = 26,
    delay: Annotated[int, typer.Option("--K", min=1, help="Fischer delay")] = 2,
    sync_time: Annotated[int, typer.Option("--SA", min=1, help="FDDI synchronous allocation")] = 20,
    scale: Annotated[int, typer.Option("--scale", min=1, help="divide every constant by this factor")] = 1,
    mode: Annotated[SearchMode, typer.Option("--mode", help="search algorithm")] = SearchMode.IDFSS,
    seed: Annotated[int, typer.Option("--seed", min=0, help="successor order seed")] = 0,
    csv_out: Annotated[bool, typer.Option("--csv", help="print one CSV row instead of a table")] = False,
    sequence_only: Annotated[
        bool, typer.Option("--sequence-only", help="test the bare path instead of iterability from the zone")
    ] = False,
    cyan_entry: Annotated[CyanEntry, typer.Option("--cyan-entry", help="stack entry the path starts from")] = (
        CyanEntry.DEEPEST
    ),
    witness_zone: Annotated[WitnessZone, typer.Option("--witness-zone", help="zone tested against W")] = (
        WitnessZone.ABSTRACTED
    ),
) -> None:
    """Search a model for an accepting cycle. Exit 0 when empty, 1 when a cycle is found."""
    with _rejecting():
        if property_file is not None and builtin is not None:
            raise ValueError("--property and --builtin are mutually exclusive")
        model = _load(file)
        if property_file is not None:
            a = product(model, _load_automaton(property_file))
        elif builtin is not None:
            if n is None:
                raise ValueError("--builtin needs --n, the process count of the model")
            prop = gen_property(builtin.value, n, L=frame, S=slot, K=delay, SA=sync_time)
            a = product(model, prop)
        else:
            a = flatten(model)
        cfg = SearchConfig(
            seed=seed,
            mode=mode,
            iterable_check=IterableCheck.SEQUENCE_ONLY if sequence_only else IterableCheck.FROM_ZONE,
            cyan_entry=cyan_entry,
            witness_zone=witness_zone,
        )
        result, stats = check(scale_constants(a, scale), cfg)
        if csv_out:
            counted = n if builtin is not None else None
            row = BenchRow(
                file.stem, counted, mode, seed, stats.visited, stats.subsumptions, stats.iter_checks, result.value
            )
            typer.echo(BenchTable((row,)).to_csv(), nl=False)
        else:
            typer.echo(result.value)
            console.print(_stats_table(stats))
        raise typer.Exit(EXIT_CYCLE if result is SearchResult.CYCLE_FOUND else EXIT_EMPTY)


def _describe(verdict: PreVerdict) -> str:
    if isinstance(verdict, NotIterable):
        return f"NotIterable ({verdict.reason})"
    if isinstance(verdict, AlwaysIterable):
        return f"Iterable ({verdict.reason})"
    if isinstance(verdict, Reduced) and verdict.eliminated:
        return f"Reduced (guards dropped on {len(verdict.eliminated)} never-reset clocks)"
    return "Reduced (nothing to drop)"


def _sequence(a: TBA, path: str) -> List[Transition]:
    sigma: List[Transition] = []
    for token in path.split(","):
        token = token.strip()
        digits = token[1:] if token.startswith("t") else token
        if not digits.isdigit() or int(digits) >= len(a.transitions):
            raise ValueError(f"{token!r} is not a transition of {a.name} (t0..t{len(a.transitions) - 1})")
        t = a.transitions[int(digits)]
        if sigma and sigma[-1].dst != t.src:
            raise ValueError(f"{token} leaves {t.src}, not {sigma[-1].dst}")
        sigma.append(t)
    return sigma


@app.command()
def iterability(
    file: Annotated[Path, typer.Argument(help="model file")],
    path: Annotated[Optional[str], typer.Option("--path", help="transition indices, e.g. t0,t3")] = None,
) -> None:
    """Decide whether a path can be repeated forever; without --path, list the transitions."""
    with _rejecting():
        a = _load_automaton(file).compiled()
        if path is None:
            for i, t in enumerate(a.transitions):
                typer.echo(f"t{i}: {t.describe(a.clocks)}")
            return
        sigma = _sequence(a, path)
        if sigma[-1].dst != sigma[0].src:
            logger.warning("path ends in %s but starts in %s", sigma[-1].dst, sigma[0].src)
        typer.echo(f"preprocess: {_describe(preprocess(sigma))}")
        result = omega_iterable(sigma, a.dim - 1)
        verdict = "Iterable" if result.iterable else "NotIterable"
        typer.echo(f"{verdict} ({result.reason})")
        if result.zone is not None:
            typer.echo(f"W: {format_zone(result.zone, a.clocks)}")
        typer.echo(f"compositions: {result.compositions}, squarings: {result.squarings}")


@app.command()
def bench(
    family: Annotated[PropertyFamily, typer.Option("--family", help="benchmark family")],
    n: Annotated[int, typer.Option("--n", min=1, help="number of processes")],
    seeds: Annotated[int, typer.Option("--seeds", min=1, help="seeded runs per mode")] = 20,
    first_seed: Annotated[int, typer.Option("--first-seed", min=0, help="seed of the first run")] = 0,
    out: Annotated[Optional[Path], typer.Option("--out", help="CSV file, stdout when absent")] = None,
    fixed: Annotated[bool, typer.Option("--fixed/--no-fixed", help="CSMA/CD: busy loop on RETRY")] = True,
    nonzeno: Annotated[bool, typer.Option("--nonzeno/--no-nonzeno", help="CSMA/CD: y >= 1 leaving BUSY")] = True,
    scale: Annotated[int, typer.Option("--scale", min=1, help="divide every constant by this factor")] = 1,
    workers: Annotated[int, typer.Option("--workers", min=1, help="process pool size")] = 1,
    property_family: Annotated[
        Optional[PropertyFamily], typer.Option("--property", help="property family, defaults to --family")
    ] = None,
) -> None:
    """Run both search modes on every seed and write one CSV row per run."""
    with _rejecting():
        cfg = BenchConfig(
            family=family.value,
            n=n,
            seeds=seeds,
            first_seed=first_seed,
            property_family=property_family.value if property_family is not None else None,
            fixed=fixed,
            nonzeno=nonzeno,
            scale=scale,
            workers=workers,
        )
        table = run_bench(cfg)
        if out is None:
            typer.echo(table.to_csv(), nl=False)
        else:
            out.write_text(table.to_csv(), encoding="utf-8")
        summary = Table("mode", "visited mean", "visited median", "min", "max", "iter checks mean")
        for mode, agg in table.aggregates().items():
            visited = agg["visited"]
            summary.add_row(
                mode.value,
                f"{visited.mean:.1f}",
                f"{visited.median:.1f}",
                str(visited.minimum),
                str(visited.maximum),
                f"{agg['iter_checks'].mean:.1f}",
            )
        err_console.print(summary)


def main() -> None:
    app()
