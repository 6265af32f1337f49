"""
Seeded random streams and the innovation samplers of the simulation designs.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Tuple, Union

import numpy as np

Shape = Union[int, Tuple[int, ...]]

# Standardizations making every innovation mean 0, variance 1.
T6_SCALE = np.sqrt(6.0 / 4.0)
CHI5_DF = 5


class Innovation(str, Enum):
    """Distribution of the error innovations e_it."""
    NORMAL = "normal"
    T6 = "t6"
    CHI5 = "chi5"


@dataclass(frozen=True)
class RngStream:
    """Addressable random stream.

    Identical ``(seed, stream_id, substream)`` triples always yield identical
    sequences; distinct triples yield independent ones (``SeedSequence``
    spawn keys).
    """

    seed: int
    stream_id: int = 0
    substream: int = 0

    def generator(self) -> np.random.Generator:
        seq = np.random.SeedSequence(self.seed, spawn_key=(self.stream_id, self.substream))
        return np.random.Generator(np.random.PCG64(seq))

    def child(self, substream: int) -> "RngStream":
        return RngStream(self.seed, self.stream_id, substream)


def sample_normal(rng: np.random.Generator, size: Shape = 1) -> np.ndarray:
    return rng.standard_normal(size)


def sample_t(rng: np.random.Generator, df: float = 6, size: Shape = 1) -> np.ndarray:
    """Student-t draws with ``df`` degrees of freedom (numpy ``standard_t``)."""
    return rng.standard_t(df, size)


def sample_chi2(rng: np.random.Generator, df: float, size: Shape = 1) -> np.ndarray:
    return rng.chisquare(df, size)


def standardized_innovations(
    rng: np.random.Generator, kind: Innovation, size: Shape
) -> np.ndarray:
    """Draw innovations with mean 0 and variance 1.

    Args:
        rng: Generator owned by the caller's stream
        kind: normal, t6/sqrt(1.5) or (chi2_5 - 5)/sqrt(10)
        size: Output shape

    Returns:
        Array of standardized draws
    """
    kind = Innovation(kind)
    if kind is Innovation.NORMAL:
        return sample_normal(rng, size)
    if kind is Innovation.T6:
        return sample_t(rng, 6, size) / T6_SCALE
    return (sample_chi2(rng, CHI5_DF, size) - CHI5_DF) / np.sqrt(2.0 * CHI5_DF)
