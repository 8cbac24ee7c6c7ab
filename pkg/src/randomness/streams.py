"""
Deterministic, splittable random streams.

A stream is a numpy Generator over PCG64 seeded from
SeedSequence(master_seed, spawn_key=lineage + (stream_index,)). The key
depends only on the indices, never on how many streams were drawn before,
so realization i produces the same numbers on any worker.
"""

from dataclasses import dataclass

import numpy as np

from ..exceptions import ParameterError
from ..validation import validate_count

UINT64_MASK = (1 << 64) - 1


@dataclass(frozen=True)
class SeedSpec:
    """Address of one random stream: master seed plus a path of indices."""
    master_seed: int
    stream_index: int = 0
    lineage: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if not 0 <= self.master_seed <= UINT64_MASK:
            raise ParameterError.out_of_range("master_seed", self.master_seed, 0, UINT64_MASK)
        if not 0 <= self.stream_index <= UINT64_MASK:
            raise ParameterError.out_of_range("stream_index", self.stream_index, 0, UINT64_MASK)

    @property
    def spawn_key(self) -> tuple[int, ...]:
        return (*self.lineage, self.stream_index)

    def child(self, index: int) -> "SeedSpec":
        """Seed of the index-th substream below this one."""
        return SeedSpec(self.master_seed, int(index), self.spawn_key)

    def generator(self) -> np.random.Generator:
        seq = np.random.SeedSequence(self.master_seed, spawn_key=self.spawn_key)
        return np.random.Generator(np.random.PCG64(seq))


def resolve_seed(seed: int | None) -> int:
    """Return seed unchanged, or draw a fresh 64-bit seed from OS entropy."""
    if seed is not None:
        return SeedSpec(int(seed)).master_seed
    return int(np.random.SeedSequence().entropy) & UINT64_MASK


def substream(master: SeedSpec, index: int) -> np.random.Generator:
    """Generator for the index-th substream of master."""
    return master.child(index).generator()


def gaussian(
    stream: np.random.Generator,
    mean: float,
    std_dev: float,
    count: int,
) -> np.ndarray:
    """
    Draw i.i.d. normal samples.

    Raises:
        ParameterError: If std_dev <= 0 or count < 1
    """
    if not std_dev > 0.0:
        raise ParameterError.not_positive("std_dev", std_dev)
    count = validate_count("count", count)
    return stream.normal(loc=mean, scale=std_dev, size=count)
