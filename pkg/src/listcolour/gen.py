"""Seeded random instances avoiding forbidden induced subgraphs."""

from __future__ import annotations

import random

from . import detect
from .graph import Graph, path


class SamplingExhausted(RuntimeError):
    def __init__(self, attempts: int):
        super().__init__(f"no admissible graph after {attempts} attempts")
        self.attempts = attempts


def _admissible(g: Graph, forbid: list[Graph]) -> bool:
    return all(detect.find_induced(g, pat) is None for pat in forbid)


def random_graph(
    n: int,
    density: float,
    forbid: list[str] = (),
    require_p7: bool = False,
    seed: int = 0,
    max_attempts: int = 20000,
    far_bias: float = 0.0,
    connected: bool = True,
) -> Graph:
    """Grow a connected graph one vertex at a time, rejecting bad extensions.

    Each new vertex gets a random neighbourhood (each existing vertex with
    probability ``density``, at least one neighbour). An extension that
    creates a forbidden induced pattern is thrown away and resampled. With
    ``require_p7`` the growth starts from an induced P7, which every
    later step keeps since vertices are never removed; ``far_bias`` is the
    probability that a new vertex may only attach to vertices outside that
    seed path, which pushes vertices into the deeper distance layers. With
    ``connected=False`` a new vertex may also arrive with no neighbours.
    Vertex labels are shuffled at the end, so the P7 is not sitting at ids 0..6.
    """
    if n > 10**4:
        raise ValueError("n must be at most 10^4")
    rng = random.Random(seed)
    pats = [detect.pattern(p) for p in forbid]
    if require_p7 and n < 7:
        raise ValueError("an induced P7 needs at least 7 vertices")
    attempts = 0
    g = path(7) if require_p7 else Graph([0]) if n else Graph()
    if not _admissible(g, pats):
        raise SamplingExhausted(1)
    while len(g) < n:
        v = len(g)
        existing = g.vertices()
        outer = existing[7:] if require_p7 else existing
        while True:
            attempts += 1
            if attempts > max_attempts:
                raise SamplingExhausted(attempts)
            pool = outer if outer and rng.random() < far_bias else existing
            nbrs = [u for u in pool if rng.random() < density]
            if not nbrs and connected:
                nbrs = [rng.choice(pool)]
            trial = g.copy()
            trial.add_vertex(v)
            for u in nbrs:
                trial.add_edge(v, u)
            if _admissible(trial, pats):
                g = trial
                break
    perm = list(range(n))
    rng.shuffle(perm)
    return Graph(perm, [(perm[u], perm[v]) for u, v in g.edges()])


def random_lists(g: Graph, seed: int = 0, p_full: float = 0.7, p_single: float = 0.02, k: int = 3) -> dict:
    """Random non-empty lists over 1..k, biased towards the full palette."""
    rng = random.Random(seed)
    palette = list(range(1, k + 1))
    out = {}
    for v in g.vertices():
        x = rng.random()
        if x < p_full:
            out[v] = frozenset(palette)
        elif x < p_full + p_single:
            out[v] = frozenset([rng.choice(palette)])
        else:
            out[v] = frozenset(rng.sample(palette, 2))
    return out


def uniform_lists(g: Graph, seed: int = 0, k: int = 3) -> dict:
    """Each list uniform over the non-empty subsets of 1..k."""
    rng = random.Random(seed)
    subsets = [frozenset(c for c in range(1, k + 1) if mask >> (c - 1) & 1) for mask in range(1, 2**k)]
    return {v: rng.choice(subsets) for v in g.vertices()}
