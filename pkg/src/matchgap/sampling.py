"""Sampling realized graphs and enumerating the full support.

A draw realizes each potential edge independently with its probability.
Sample ``index`` of a run consumes positions ``0..m-1`` of counter stream
``index``, so the realization is a pure function of (seed, index,
edge position) and Monte Carlo results do not depend on worker count or
evaluation order.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterator

import numpy as np

from .model import Instance
from .rng import uniform_block, uniforms

#: Exact enumeration refuses supports larger than 2**SUPPORT_CUTOFF.
SUPPORT_CUTOFF = 20


class SupportTooLarge(RuntimeError):
    """Raised when exact enumeration is requested beyond the cutoff."""


@dataclass(frozen=True, eq=False)
class SampledGraph:
    """One realized graph: a boolean indicator over the instance's edges."""

    instance: Instance
    realized: np.ndarray

    def __post_init__(self):
        r = np.asarray(self.realized, dtype=bool)
        if r.shape != (self.instance.num_edges,):
            raise ValueError("realization mask must have one entry per potential edge")
        r.setflags(write=False)
        object.__setattr__(self, "realized", r)

    @cached_property
    def edge_indices(self) -> np.ndarray:
        return np.nonzero(self.realized)[0]

    @cached_property
    def degrees(self) -> np.ndarray:
        """Realized degree per global vertex id."""
        deg = np.zeros(self.instance.total_vertices, dtype=np.int64)
        ends = self.instance.endpoints[self.edge_indices]
        if ends.size:
            np.add.at(deg, ends[:, 0], 1)
            np.add.at(deg, ends[:, 1], 1)
        return deg

    @property
    def num_realized(self) -> int:
        return int(self.realized.sum())


def sample(inst: Instance, seed: int, index: int) -> SampledGraph:
    """Draw sample ``index`` of the run identified by ``seed``."""
    u = uniforms(seed, index, inst.num_edges)
    return SampledGraph(inst, u < inst.x)


def realization_block(inst: Instance, seed: int, start: int, count: int) -> np.ndarray:
    """(count, m) boolean matrix for samples start..start+count-1.

    Row k equals sample(inst, seed, start + k).realized; the block form
    only batches the hashing.
    """
    u = uniform_block(seed, np.arange(start, start + count, dtype=np.uint64),
                      inst.num_edges)
    return u < inst.x[None, :]


def support_probabilities(inst: Instance) -> np.ndarray:
    """Probability of every edge subset, indexed by bitmask (bit j = edge j)."""
    m = inst.num_edges
    if m > SUPPORT_CUTOFF:
        raise SupportTooLarge(f"support too large: 2**{m} subsets exceeds cutoff 2**{SUPPORT_CUTOFF}")
    probs = np.ones(1, dtype=np.float64)
    for xj in inst.x:
        probs = np.concatenate([(1.0 - xj) * probs, xj * probs])
    return probs


def enumerate_support(inst: Instance) -> Iterator[tuple[SampledGraph, float]]:
    """Yield every realizable graph with its probability (mask order).

    Probabilities sum to 1 up to floating-point accumulation.  Refused
    above the support cutoff.
    """
    m = inst.num_edges
    probs = support_probabilities(inst)  # raises SupportTooLarge
    bits = 1 << np.arange(m)
    for mask in range(1 << m):
        realized = (mask & bits) != 0
        yield SampledGraph(inst, realized), float(probs[mask])


def graph_from_mask(inst: Instance, mask: int) -> SampledGraph:
    """Realized graph for one support bitmask."""
    bits = 1 << np.arange(inst.num_edges)
    return SampledGraph(inst, (mask & bits) != 0)
