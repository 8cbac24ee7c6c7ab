"""
Run orchestration: resolve the seed, dispatch to a pipeline, write the
tables, optional plot scripts and the manifest.
"""

import time
from dataclasses import asdict, dataclass, field
from typing import Any

from .. import __version__
from ..exceptions import ConfigurationError, NumericalError, ValidationError
from ..logging_config import LogContext, generate_run_id, get_logger
from ..randomness import SeedSpec, resolve_seed
from .experiments import PIPELINES
from .output import OutputWriter
from .schema import ExperimentConfig

logger = get_logger(__name__)

MANIFEST_NAME = "manifest.json"

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3


@dataclass
class RunManifest:
    """Everything needed to reproduce a run. wall_time_s and n_workers vary between reruns."""
    experiment: str
    seed: int
    version: str
    config: dict[str, Any]
    summary: dict[str, Any]
    outputs: list[str] = field(default_factory=list)
    scale_note: str = ""
    run_id: str = ""
    n_workers: int = 1
    wall_time_s: float = 0.0

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)


def run(config: ExperimentConfig) -> RunManifest:
    """
    Execute one experiment and write its outputs to config.output_dir.

    On any failure the files written so far are removed and the error
    propagates.
    """
    seed = resolve_seed(config.seed)
    config = config.resolved(seed=seed)
    writer = OutputWriter(config.output_dir)
    run_id = generate_run_id()

    with LogContext(run_id=run_id, experiment=config.experiment):
        logger.info(
            "Starting experiment",
            extra={"experiment": config.experiment, "seed": seed, "workers": config.n_workers},
        )
        started = time.perf_counter()
        try:
            result = PIPELINES[config.experiment](config, SeedSpec(seed))
            outputs = [p.name for p in writer.write_tables(result.tables)]
            for name, text in result.scripts.items():
                outputs.append(writer.write_script(name, text).name)

            manifest = RunManifest(
                experiment=config.experiment,
                seed=seed,
                version=__version__,
                config=config.model_dump(exclude={"n_workers", "output_dir"}),
                summary=result.summary,
                outputs=outputs,
                scale_note=config.scale_note,
                run_id=run_id,
                n_workers=config.n_workers,
                wall_time_s=round(time.perf_counter() - started, 3),
            )
            writer.write_json(MANIFEST_NAME, manifest.to_dict())
        except BaseException as e:
            logger.error("Experiment failed", extra={"experiment": config.experiment, "error": str(e)})
            writer.remove_partial()
            raise

        logger.info(
            "Experiment finished",
            extra={"experiment": config.experiment, "outputs": len(outputs), "wall_time_s": manifest.wall_time_s},
        )
    return manifest


def exit_code_for(exc: BaseException) -> int:
    """Process exit status for an error raised by run()."""
    if isinstance(exc, (ConfigurationError, ValidationError)):
        return EXIT_CONFIG
    if isinstance(exc, NumericalError):
        return EXIT_NUMERICAL
    return EXIT_FAILURE
