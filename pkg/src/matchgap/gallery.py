"""Generators for extremal and benchmark instances.

- karp_sipser: every pair carries the same probability; vertex loads
  equal c, so c > 1 leaves the polytope (useful only for upper-bound
  demonstrations and explicitly flagged by validation).
- pendant_star: a tiny-probability edge whose one endpoint carries a
  near-certain edge and whose other endpoint carries a spread-out star;
  drives the weighted kernel to its floor.
- equal_split_star: both endpoints of the tiny edge carry equal stars;
  drives the unweighted envelope.
- random_point: random degree-feasible point of the polytope with random
  weights, for property sweeps.
"""

from __future__ import annotations

import itertools

import numpy as np

from .model import Instance, PotentialEdge
from .rng import uniforms

#: stream ids used by the random generator, disjoint from sampling streams
_STREAM_KEEP = 1 << 62
_STREAM_PROB = (1 << 62) + 1
_STREAM_WEIGHT = (1 << 62) + 2


def gen_karp_sipser(n: int, c: float, kind: str = "general") -> Instance:
    """Uniform-probability instance: x = c/(n-1) on all pairs (general) or
    c/n on all left-right pairs (bipartite), unit weights."""
    if n < 2:
        raise ValueError("need at least two vertices")
    if c < 0:
        raise ValueError("c must be nonnegative")
    if kind == "general":
        x = c / (n - 1)
        if x > 1.0:
            raise ValueError(f"c={c} makes probabilities exceed 1 at n={n}")
        edges = tuple(PotentialEdge(u, v, x, 1.0)
                      for u, v in itertools.combinations(range(n), 2))
    elif kind == "bipartite":
        x = c / n
        if x > 1.0:
            raise ValueError(f"c={c} makes probabilities exceed 1 at n={n}")
        edges = tuple(PotentialEdge(u, v, x, 1.0)
                      for u, v in itertools.product(range(n), range(n)))
    else:
        raise ValueError(f"unknown kind {kind!r}")
    return Instance(kind, n, edges)


def gen_pendant_star(n: int, eps: float, weight_on_edge: float = 1.0) -> Instance:
    """Bipartite pendant star.  Edge 0 is the designated edge (L0, R0) with
    probability eps; L0 also carries (L0, R1) with probability 1 - eps; R0
    carries n-1 edges of probability (1-eps)/(n-1) from L1..L(n-1)."""
    if n < 2:
        raise ValueError("need n >= 2")
    if not (0.0 < eps <= 1.0):
        raise ValueError("eps must lie in (0, 1]")
    edges = [PotentialEdge(0, 0, eps, weight_on_edge),
             PotentialEdge(0, 1, 1.0 - eps, 1.0)]
    spread = (1.0 - eps) / (n - 1)
    for i in range(1, n):
        edges.append(PotentialEdge(i, 0, spread, 1.0))
    return Instance("bipartite", n, tuple(edges))


def gen_equal_split_star(n: int, eps: float) -> Instance:
    """Bipartite double star.  Edge 0 is (L0, R0) with probability eps; L0
    carries n-1 edges to R1.. and R0 carries n-1 edges from L1.., each with
    probability (1-eps)/(n-1); unit weights."""
    if n < 2:
        raise ValueError("need n >= 2")
    if not (0.0 < eps <= 1.0):
        raise ValueError("eps must lie in (0, 1]")
    spread = (1.0 - eps) / (n - 1)
    edges = [PotentialEdge(0, 0, eps, 1.0)]
    for i in range(1, n):
        edges.append(PotentialEdge(0, i, spread, 1.0))
    for i in range(1, n):
        edges.append(PotentialEdge(i, 0, spread, 1.0))
    return Instance("bipartite", n, tuple(edges))


def gen_random_point(n: int, density: float, seed: int, kind: str = "bipartite",
                     weighted: bool = True) -> Instance:
    """Random degree-feasible instance: pairs kept with probability
    `density`, probabilities drawn uniformly then rescaled per vertex until
    every load is at most 1, weights uniform in [0, 1] (or all 1)."""
    if not (0.0 <= density <= 1.0):
        raise ValueError("density must lie in [0, 1]")
    if kind == "general":
        pairs = list(itertools.combinations(range(n), 2))
    elif kind == "bipartite":
        pairs = list(itertools.product(range(n), range(n)))
    else:
        raise ValueError(f"unknown kind {kind!r}")
    keep = uniforms(seed, _STREAM_KEEP, len(pairs)) < density
    probs = uniforms(seed, _STREAM_PROB, len(pairs))
    weights = uniforms(seed, _STREAM_WEIGHT, len(pairs)) if weighted \
        else np.ones(len(pairs))

    chosen = [(u, v, probs[i], weights[i]) for i, (u, v) in enumerate(pairs) if keep[i]]
    if not chosen:
        return Instance(kind, n, ())

    x = np.array([c[2] for c in chosen])
    total = 2 * n if kind == "bipartite" else n
    for _ in range(64):
        loads = np.zeros(total)
        for i, (u, v, _, _) in enumerate(chosen):
            gu = u
            gv = v + n if kind == "bipartite" else v
            loads[gu] += x[i]
            loads[gv] += x[i]
        if loads.max() <= 1.0:
            break
        for i, (u, v, _, _) in enumerate(chosen):
            gu = u
            gv = v + n if kind == "bipartite" else v
            x[i] /= max(1.0, loads[gu], loads[gv])
    edges = tuple(PotentialEdge(u, v, float(x[i]), float(chosen[i][3]))
                  for i, (u, v, _, _) in enumerate(chosen))
    return Instance(kind, n, edges)
