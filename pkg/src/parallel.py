"""
Ordered worker pool.

Results come back in input order whatever the worker count, and each task
derives its randomness from its own index, so reductions over the returned
list are bit-identical for 1 or W workers.

Worker processes re-apply the parent's logging setup and inherit its run id
and LogContext fields, so their records land in the same stream and carry
the same context as the parent's.
"""

from concurrent.futures import ProcessPoolExecutor
from typing import Any, Callable, Iterable, Optional, TypeVar

from .logging_config import (
    context_fields,
    get_logger,
    get_run_id,
    logging_settings,
    set_run_id,
    setup_logging,
)
from .validation import validate_worker_count

logger = get_logger(__name__)

T = TypeVar("T")
R = TypeVar("R")

TASKS_PER_WORKER = 4


def _init_worker(settings: dict[str, Any], parent_run_id: Optional[str], fields: dict[str, Any]) -> None:
    """Pool initializer: install the parent's logging configuration and context."""
    if settings:
        setup_logging(**settings, force=True)
    set_run_id(parent_run_id)
    context_fields.set(dict(fields))


def ordered_map(func: Callable[[T], R], items: Iterable[T], n_workers: int = 1) -> list[R]:
    """
    Map func over items, preserving order.

    func must be a module-level callable (or functools.partial of one) so it
    can be pickled into worker processes.
    """
    n_workers = validate_worker_count(n_workers)
    tasks = list(items)
    if n_workers == 1 or len(tasks) <= 1:
        return [func(task) for task in tasks]

    workers = min(n_workers, len(tasks))
    chunksize = max(1, len(tasks) // (TASKS_PER_WORKER * workers))
    logger.debug(
        "Dispatching tasks to worker pool",
        extra={"tasks": len(tasks), "workers": workers, "chunksize": chunksize},
    )
    initargs = (logging_settings(), get_run_id(), context_fields.get())
    with ProcessPoolExecutor(max_workers=workers, initializer=_init_worker, initargs=initargs) as pool:
        return list(pool.map(func, tasks, chunksize=chunksize))
