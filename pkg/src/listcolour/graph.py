"""Simple undirected graphs with deletion-stable integer vertex ids."""

from __future__ import annotations

from collections import deque
from typing import Iterable

INF = float("inf")


class GraphError(ValueError):
    """Raised on misuse of the graph API (unknown vertex, empty set, ...)."""


class Graph:
    """Simple undirected graph.

    Vertex ids are integers handed out monotonically; a deleted id is never
    reused, so ids stay meaningful across deletions and identifications.
    """

    __slots__ = ("_adj", "_next_id")

    def __init__(self, vertices: Iterable[int] = (), edges: Iterable[tuple[int, int]] = ()):
        self._adj: dict[int, set[int]] = {}
        self._next_id = 0
        for v in vertices:
            self.add_vertex(v)
        for u, v in edges:
            self.add_edge(u, v)

    # -- construction -------------------------------------------------------

    def add_vertex(self, v: int | None = None) -> int:
        if v is None:
            v = self._next_id
        if v in self._adj:
            raise GraphError(f"vertex {v} already present")
        if v < 0:
            raise GraphError("vertex ids must be non-negative")
        self._adj[v] = set()
        self._next_id = max(self._next_id, v + 1)
        return v

    def add_edge(self, u: int, v: int) -> None:
        if u == v:
            raise GraphError(f"self-loop on {u}")
        for x in (u, v):
            if x not in self._adj:
                self.add_vertex(x)
        self._adj[u].add(v)
        self._adj[v].add(u)

    def remove_edge(self, u: int, v: int) -> None:
        self._check(u)
        self._check(v)
        self._adj[u].discard(v)
        self._adj[v].discard(u)

    def remove_vertex(self, v: int) -> None:
        self._check(v)
        for u in self._adj.pop(v):
            self._adj[u].discard(v)

    def remove_vertices(self, vs: Iterable[int]) -> None:
        for v in list(vs):
            self.remove_vertex(v)

    def copy(self) -> Graph:
        g = Graph.__new__(Graph)
        g._adj = {v: set(nb) for v, nb in self._adj.items()}
        g._next_id = self._next_id
        return g

    # -- queries ------------------------------------------------------------

    def _check(self, v: int) -> None:
        if v not in self._adj:
            raise GraphError(f"unknown vertex {v}")

    def __contains__(self, v: object) -> bool:
        return v in self._adj

    def __len__(self) -> int:
        return len(self._adj)

    def __iter__(self):
        return iter(sorted(self._adj))

    def vertices(self) -> list[int]:
        return sorted(self._adj)

    def edges(self) -> list[tuple[int, int]]:
        return sorted((u, v) for u, nb in self._adj.items() for v in nb if u < v)

    def num_edges(self) -> int:
        return sum(len(nb) for nb in self._adj.values()) // 2

    def has_edge(self, u: int, v: int) -> bool:
        nb = self._adj.get(u)
        return nb is not None and v in nb

    def neighbours(self, v: int) -> set[int]:
        """N(v). The returned set is the live internal set; do not mutate it."""
        self._check(v)
        return self._adj[v]

    def closed_neighbourhood(self, v: int) -> set[int]:
        return self.neighbours(v) | {v}

    def set_neighbourhood(self, s: Iterable[int]) -> set[int]:
        """N(S): all neighbours of S outside S."""
        s = set(s)
        out: set[int] = set()
        for v in s:
            out |= self.neighbours(v)
        return out - s

    def degree(self, v: int) -> int:
        return len(self.neighbours(v))

    def induced(self, s: Iterable[int]) -> Graph:
        s = set(s)
        g = Graph.__new__(Graph)
        g._adj = {v: self._adj[v] & s for v in s}
        g._next_id = self._next_id
        return g

    def distance(self, u: int, s: Iterable[int]) -> float:
        """BFS distance from ``u`` to the nearest vertex of ``s``; ``INF`` if unreachable."""
        self._check(u)
        targets = set(s)
        if not targets:
            raise GraphError("distance to an empty set is undefined")
        dist = self.bfs_distances(targets)
        return dist.get(u, INF)

    def bfs_distances(self, sources: Iterable[int]) -> dict[int, int]:
        dist: dict[int, int] = {}
        queue = deque()
        for v in sources:
            self._check(v)
            if v not in dist:
                dist[v] = 0
                queue.append(v)
        while queue:
            v = queue.popleft()
            for w in self._adj[v]:
                if w not in dist:
                    dist[w] = dist[v] + 1
                    queue.append(w)
        return dist

    def components(self) -> list[list[int]]:
        """Connected components, each sorted, ordered by smallest vertex."""
        seen: set[int] = set()
        comps = []
        for v in sorted(self._adj):
            if v in seen:
                continue
            comp = list(self.bfs_distances([v]))
            seen.update(comp)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    # -- identification -----------------------------------------------------

    def identify(self, s: Iterable[int]) -> int:
        """Replace the vertex set ``s`` by a fresh vertex adjacent to N(S)."""
        s = set(s)
        if not s:
            raise GraphError("cannot identify an empty set")
        for v in s:
            self._check(v)
        nbhd = self.set_neighbourhood(s)
        self.remove_vertices(s)
        w = self.add_vertex()
        for x in nbhd:
            self.add_edge(w, x)
        return w

    # -- misc ---------------------------------------------------------------

    def bitmasks(self, order: list[int] | None = None) -> tuple[list[int], list[int]]:
        """Adjacency as Python-int bitmasks over positions in ``order``."""
        order = self.vertices() if order is None else order
        pos = {v: i for i, v in enumerate(order)}
        masks = []
        for v in order:
            m = 0
            for w in self._adj[v]:
                if w in pos:
                    m |= 1 << pos[w]
            masks.append(m)
        return order, masks

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self._adj == other._adj

    def __repr__(self) -> str:
        return f"Graph(n={len(self)}, m={self.num_edges()})"


def path(t: int, start: int = 0) -> Graph:
    vs = list(range(start, start + t))
    return Graph(vs, zip(vs, vs[1:]))


def cycle(t: int, start: int = 0) -> Graph:
    g = path(t, start)
    if t >= 3:
        g.add_edge(start, start + t - 1)
    return g


def complete(t: int, start: int = 0) -> Graph:
    vs = list(range(start, start + t))
    return Graph(vs, [(u, v) for i, u in enumerate(vs) for v in vs[i + 1:]])


def star(leaves: int) -> Graph:
    return Graph(range(leaves + 1), [(0, i) for i in range(1, leaves + 1)])


def disjoint_union(*graphs: Graph) -> Graph:
    """Disjoint union with vertices relabelled 0..n-1 in argument order."""
    out = Graph()
    offset = 0
    for g in graphs:
        relabel = {v: offset + i for i, v in enumerate(g.vertices())}
        for v in relabel.values():
            out.add_vertex(v)
        for u, v in g.edges():
            out.add_edge(relabel[u], relabel[v])
        offset += len(g)
    return out


def linear_forest(*lengths: int) -> Graph:
    return disjoint_union(*(path(t) for t in lengths))


def is_linear_forest(h: Graph) -> bool:
    """True iff every component of ``h`` is a path."""
    for comp in h.components():
        if any(h.degree(v) > 2 for v in comp):
            return False
        edges = sum(h.degree(v) for v in comp) // 2
        if edges != len(comp) - 1:
            return False
    return True


def layers(g: Graph, n0: Iterable[int]) -> tuple[list[set[int]], set[int]]:
    """Distance layers from ``n0``: returns ``([N0, N1, ...], unreachable)``."""
    n0 = list(n0)
    dist = g.bfs_distances(n0)
    depth = max(dist.values(), default=-1)
    out: list[set[int]] = [set() for _ in range(depth + 1)]
    for v, d in dist.items():
        out[d].add(v)
    unreachable = set(g.vertices()) - set(dist)
    return out, unreachable
