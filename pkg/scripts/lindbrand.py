#!/usr/bin/env python3
"""
Lindbrand - random Lindblad dynamics experiments

Usage:
    python scripts/lindbrand.py run --preset fig1 --workers 4 --out results/fig1
    python scripts/lindbrand.py run --config my_run.env --seed 7
    python scripts/lindbrand.py validate --config my_run.env
    python scripts/lindbrand.py presets list

Precedence of values: runtime defaults from the environment, then the
preset, then the config file, then flags.
"""

import sys
from pathlib import Path
from typing import Any, Optional

# Add the project root to path so the src package resolves
sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

import click
from dotenv import load_dotenv
from rich.console import Console
from rich.panel import Panel
from rich.progress import Progress, SpinnerColumn, TextColumn
from rich.table import Table

# Load environment before imports that use config
load_dotenv()

from src import __version__
from src.cli import PRESETS, exit_code_for, get_preset, load_config, preset_names, read_config_file, run, validate
from src.cli.schema import EXPERIMENTS
from src.config import get_config, validate_config
from src.exceptions import ConfigurationError, LindbrandError
from src.logging_config import get_logger, setup_logging

console = Console()
logger = get_logger(__name__)


def _runtime_defaults() -> dict[str, Any]:
    config = get_config()
    return {
        "n_workers": config.runtime.workers,
        "output_dir": config.runtime.output_dir,
        "rel_tol": config.numerics.rel_tol,
    }


def _base_values(preset: Optional[str]) -> dict[str, Any]:
    values = _runtime_defaults()
    if preset:
        values.update(get_preset(preset))
    return values


def _init_logging(log_level: Optional[str], json_logs: Optional[bool]) -> None:
    config = get_config()
    setup_logging(
        level=log_level or config.logging.level,
        json_format=config.logging.json_format if json_logs is None else json_logs,
        log_file=config.logging.log_file,
        force=True,
    )


def _fail(exc: BaseException) -> None:
    message = exc.message if isinstance(exc, LindbrandError) else str(exc)
    console.print(f"\n[red]Error:[/red] {message}")
    details = getattr(exc, "details", None) or {}
    for diag in details.get("diagnostics", []):
        console.print(f"  [yellow]{diag['field']}[/yellow]: {diag['message']}")
    sys.exit(exit_code_for(exc))


@click.group()
@click.version_option(__version__, prog_name="lindbrand")
def cli() -> None:
    """Decoherence rates of random Lindblad dynamics."""


@cli.command("run")
@click.option("--preset", type=click.Choice(list(PRESETS)), help="Start from a named preset")
@click.option("--config", "config_path", type=click.Path(dir_okay=False), help="key = value config file")
@click.option("--experiment", type=click.Choice(EXPERIMENTS), help="Experiment to run")
@click.option("--seed", type=int, help="Master seed (drawn from OS entropy if omitted)")
@click.option("--workers", type=int, envvar="LINDBRAND_WORKERS", help="Worker processes")
@click.option("--out", "output_dir", type=click.Path(file_okay=False), help="Output directory")
@click.option("--log-level", type=click.Choice(["DEBUG", "INFO", "WARNING", "ERROR"], case_sensitive=False))
@click.option("--json-logs/--text-logs", default=None, help="Log format")
def run_command(
    preset: Optional[str],
    config_path: Optional[str],
    experiment: Optional[str],
    seed: Optional[int],
    workers: Optional[int],
    output_dir: Optional[str],
    log_level: Optional[str],
    json_logs: Optional[bool],
) -> None:
    """Run one experiment and write its CSV tables and manifest."""
    _init_logging(log_level, json_logs)
    try:
        validate_config()
        config = load_config(
            _base_values(preset),
            config_path,
            {"experiment": experiment, "seed": seed, "n_workers": workers, "output_dir": output_dir},
        )
        console.print(Panel.fit(
            f"[bold cyan]lindbrand {__version__}[/bold cyan]\n"
            f"Experiment: {config.experiment}\n"
            f"Ensembles: {', '.join(config.kinds)}  N: {', '.join(map(str, config.n_grid))}\n"
            f"Workers: {config.n_workers}",
            border_style="cyan",
        ))
        with Progress(
            SpinnerColumn(),
            TextColumn("[progress.description]{task.description}"),
            console=console,
            transient=True,
        ) as progress:
            progress.add_task(f"Running {config.experiment}...", total=None)
            manifest = run(config)
    except Exception as e:
        logger.error("Run failed", extra={"error": str(e), "type": type(e).__name__})
        _fail(e)
        return

    table = Table(title="Outputs")
    table.add_column("File", style="cyan")
    for name in manifest.outputs + ["manifest.json"]:
        table.add_row(str(Path(config.output_dir) / name))
    console.print(table)
    console.print(f"[green]Done[/green] in {manifest.wall_time_s:.1f}s, seed {manifest.seed}")
    if manifest.scale_note:
        console.print(f"[dim]Scale: {manifest.scale_note}[/dim]")


@cli.command("validate")
@click.option("--preset", type=click.Choice(list(PRESETS)))
@click.option("--config", "config_path", type=click.Path(dir_okay=False))
def validate_command(preset: Optional[str], config_path: Optional[str]) -> None:
    """Check a config without running it; lists every problem found."""
    try:
        raw = _base_values(preset)
        if config_path:
            raw.update(read_config_file(config_path))
    except LindbrandError as e:
        _fail(e)
        return

    diagnostics = validate(raw)
    if not diagnostics:
        console.print("[green]Configuration is valid[/green]")
        return
    table = Table(title="Configuration problems")
    table.add_column("Field", style="yellow")
    table.add_column("Problem")
    for diag in diagnostics:
        table.add_row(diag.field, diag.message)
    console.print(table)
    sys.exit(exit_code_for(ConfigurationError("invalid configuration")))


@cli.group("presets")
def presets_group() -> None:
    """Inspect the built-in experiment presets."""


@presets_group.command("list")
def presets_list() -> None:
    table = Table(title="Presets")
    table.add_column("Name", style="cyan")
    table.add_column("Experiment")
    table.add_column("Scale")
    for name in preset_names():
        values = PRESETS[name]
        table.add_row(name, values["experiment"], values.get("scale_note", ""))
    console.print(table)


@presets_group.command("show")
@click.argument("name")
def presets_show(name: str) -> None:
    """Print a preset as a config file."""
    try:
        values = get_preset(name)
    except ConfigurationError as e:
        _fail(e)
        return
    for key, value in values.items():
        if isinstance(value, list):
            value = ",".join(str(v) for v in value)
        elif isinstance(value, str) and " " in value:
            value = f"\"{value}\""
        click.echo(f"{key} = {value}")


def main() -> None:
    cli()


if __name__ == "__main__":
    main()
