"""Exact list-colouring and NAE-3SAT by exhaustive search.

These are the referees: assumption-free, exponential in the worst case, and
bounded by an explicit budget. Running out of budget is reported as
``exhausted`` and never as an answer.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import product

from .graph import Graph

YES, NO, EXHAUSTED = "yes", "no", "exhausted"

MAX_NAE_VARS = 24


@dataclass(frozen=True)
class OracleBudget:
    nodes: int = 10**7
    seconds: float = 60.0


@dataclass
class OracleResult:
    status: str
    colouring: dict[int, int] | None = None
    nodes: int = 0

    @property
    def answer(self) -> bool | None:
        return {YES: True, NO: False}.get(self.status)


class _OutOfBudget(Exception):
    pass


def verify_colouring(g: Graph, lists: dict, colouring: dict) -> bool:
    """Proper and list-respecting, covering every vertex of ``g``."""
    for v in g.vertices():
        if v not in colouring or colouring[v] not in lists[v]:
            return False
    return all(colouring[u] != colouring[v] for u, v in g.edges())


def brute_list_colour(
    g: Graph,
    lists: dict,
    budget: OracleBudget | None = None,
    order: str = "smallest-list",
) -> OracleResult:
    """Decide whether ``g`` has a proper colouring respecting ``lists``.

    Backtracking with forward checking: assigning a colour strikes it from all
    uncoloured neighbours and any neighbour left with one colour is assigned in
    turn. ``order`` picks the branching vertex: ``"smallest-list"`` (dynamic),
    ``"ascending"`` (smallest id) or ``"max-degree"`` (static, degree desc).
    """
    budget = budget or OracleBudget()
    verts = g.vertices()
    if not verts:
        return OracleResult(YES, {})
    idx = {v: i for i, v in enumerate(verts)}
    nbrs = [[idx[w] for w in g.neighbours(v)] for v in verts]
    colours = sorted({c for v in verts for c in lists[v]})
    bit = {c: 1 << i for i, c in enumerate(colours)}
    dom = [0] * len(verts)
    for v in verts:
        for c in lists[v]:
            dom[idx[v]] |= bit[c]
    if order == "max-degree":
        static = sorted(range(len(verts)), key=lambda i: (-len(nbrs[i]), i))
    elif order == "ascending":
        static = list(range(len(verts)))
    elif order == "smallest-list":
        static = None
    else:
        raise ValueError(f"unknown order {order!r}")

    deadline = time.monotonic() + budget.seconds
    nodes = 0
    assigned = [-1] * len(verts)

    def assign(i: int, b: int, dom: list[int], trail: list[int]) -> bool:
        # set vertex i to colour-bit b, propagating singletons; False on wipe-out
        stack = [(i, b)]
        while stack:
            i, b = stack.pop()
            if assigned[i] != -1:
                if assigned[i] != b:
                    return False
                continue
            assigned[i] = b
            trail.append(i)
            dom[i] = b
            for j in nbrs[i]:
                if assigned[j] == -1 and dom[j] & b:
                    d = dom[j] & ~b
                    if not d:
                        return False
                    dom[j] = d
                    if d & (d - 1) == 0:
                        stack.append((j, d))
                elif assigned[j] == b:
                    return False
        return True

    def pick(dom: list[int]) -> int:
        if static is not None:
            for i in static:
                if assigned[i] == -1:
                    return i
            return -1
        best, best_size = -1, 99
        for i in range(len(verts)):
            if assigned[i] == -1:
                size = dom[i].bit_count()
                if size < best_size:
                    best, best_size = i, size
                    if size <= 1:
                        break
        return best

    def search(dom: list[int]) -> bool:
        nonlocal nodes
        nodes += 1
        if nodes > budget.nodes or (nodes & 1023 == 0 and time.monotonic() > deadline):
            raise _OutOfBudget
        i = pick(dom)
        if i == -1:
            return True
        d = dom[i]
        if d == 0:
            return False
        while d:
            b = d & -d
            d ^= b
            child = dom[:]
            trail: list[int] = []
            if assign(i, b, child, trail) and search(child):
                return True
            for j in trail:
                assigned[j] = -1
        return False

    # initial singletons
    start = dom[:]
    if any(x == 0 for x in start):
        return OracleResult(NO, nodes=0)
    trail: list[int] = []
    for i in range(len(verts)):
        if start[i] & (start[i] - 1) == 0 and assigned[i] == -1:
            if not assign(i, start[i], start, trail):
                return OracleResult(NO, nodes=0)
    try:
        found = search(start)
    except _OutOfBudget:
        return OracleResult(EXHAUSTED, nodes=nodes)
    except RecursionError:
        return OracleResult(EXHAUSTED, nodes=nodes)
    if not found:
        return OracleResult(NO, nodes=nodes)
    inv = {b: c for c, b in bit.items()}
    colouring = {v: inv[assigned[idx[v]]] for v in verts}
    return OracleResult(YES, colouring, nodes)


def oracle_answer(g: Graph, lists: dict, budget: OracleBudget | None = None) -> bool:
    """Yes/no via :func:`brute_list_colour`; raises if the budget runs out."""
    res = brute_list_colour(g, lists, budget)
    if res.status == EXHAUSTED:
        raise RuntimeError("oracle budget exhausted")
    return res.status == YES


# -- NAE-3SAT ---------------------------------------------------------------


@dataclass
class NAEFormula:
    """Positive NAE-3SAT: ``n`` variables, clauses as ordered triples over 1..n."""

    n: int
    clauses: list[tuple[int, int, int]] = field(default_factory=list)

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("variable count must be non-negative")
        self.clauses = [tuple(c) for c in self.clauses]
        for c in self.clauses:
            if len(c) != 3 or any(not 1 <= x <= self.n for x in c):
                raise ValueError(f"bad clause {c} for n={self.n}")

    @property
    def m(self) -> int:
        return len(self.clauses)

    def satisfied_by(self, tau: dict[int, bool]) -> bool:
        return all(len({tau[x] for x in c}) == 2 for c in self.clauses)


def nae_brute(f: NAEFormula) -> dict[int, bool] | None:
    """First NAE-satisfying assignment in lexicographic order (False < True), or None."""
    if f.n > MAX_NAE_VARS:
        raise ValueError(f"{f.n} variables exceeds the brute-force limit of {MAX_NAE_VARS}")
    for bits in product((False, True), repeat=f.n):
        tau = dict(zip(range(1, f.n + 1), bits))
        if f.satisfied_by(tau):
            return tau
    return None


def nae_all(f: NAEFormula):
    """Every NAE-satisfying assignment."""
    if f.n > MAX_NAE_VARS:
        raise ValueError(f"{f.n} variables exceeds the brute-force limit of {MAX_NAE_VARS}")
    for bits in product((False, True), repeat=f.n):
        tau = dict(zip(range(1, f.n + 1), bits))
        if f.satisfied_by(tau):
            yield tau
