"""Induced-subgraph finders for small patterns.

Matching is plain backtracking over bitmask adjacency: pattern vertices are
placed so that every non-root vertex is adjacent to an already-placed one,
and each step intersects the candidate set with the neighbourhoods (or
non-neighbourhoods) of everything placed so far. Host vertices are tried in
ascending id order, so the first witness found is reproducible.
"""

from __future__ import annotations

from itertools import combinations

from .graph import Graph, GraphError, complete, linear_forest, path, star, cycle

MAX_PATTERN = 8

PATTERNS = {
    "p2": lambda: path(2),
    "p7": lambda: path(7),
    "k4": lambda: complete(4),
    "p2p5": lambda: linear_forest(2, 5),
    "p3p4": lambda: linear_forest(3, 4),
    "p3p5": lambda: linear_forest(3, 5),
    "claw": lambda: star(3),
    "c7": lambda: cycle(7),
}


def pattern(name: str) -> Graph:
    try:
        return PATTERNS[name]()
    except KeyError:
        raise GraphError(f"unknown pattern {name!r}; choose from {sorted(PATTERNS)}") from None


def _search_plan(pat: Graph):
    """Order pattern vertices component by component (largest first), BFS inside."""
    comps = sorted(pat.components(), key=lambda c: (-len(c), c[0]))
    order: list[int] = []
    for comp in comps:
        start = min(comp, key=lambda v: (pat.degree(v), v))
        seen = [start]
        i = 0
        while i < len(seen):
            for w in sorted(pat.neighbours(seen[i])):
                if w not in seen:
                    seen.append(w)
            i += 1
        order.extend(seen)
    # symmetry breaking: a path component is matched with first endpoint < last
    pairs = []
    for comp in comps:
        sub = pat.induced(comp)
        ends = [v for v in comp if sub.degree(v) <= 1]
        if len(comp) >= 2 and len(ends) == 2 and sub.num_edges() == len(comp) - 1:
            a, b = sorted(ends, key=order.index)
            pairs.append((order.index(a), order.index(b)))
    return order, pairs


def find_induced(g: Graph, pat: Graph) -> list[int] | None:
    """Return host vertices realising ``pat`` as an induced subgraph, or None.

    The witness is aligned with ``pat.vertices()``: entry i is the image of the
    i-th pattern vertex in ascending id order.
    """
    if len(pat) > MAX_PATTERN:
        raise GraphError(f"pattern has {len(pat)} vertices; at most {MAX_PATTERN} supported")
    if len(pat) == 0:
        return []
    if len(pat) > len(g):
        return None
    order, sym = _search_plan(pat)
    k = len(order)
    host, adj = g.bitmasks()
    n = len(host)
    full = (1 << n) - 1

    pdeg = [pat.degree(p) for p in order]
    degok = {}
    for d in set(pdeg):
        m = 0
        for i in range(n):
            if adj[i].bit_count() >= d:
                m |= 1 << i
        degok[d] = m
    # relation of step s to each earlier step: True = edge required
    rel = [[pat.has_edge(order[s], order[q]) for q in range(s)] for s in range(k)]
    lower = {b: a for a, b in sym}

    img = [0] * k
    cands = [0] * (k + 1)

    def candidates(s: int, used: int) -> int:
        c = full & ~used & degok[pdeg[s]]
        for q in range(s):
            if rel[s][q]:
                c &= adj[img[q]]
            else:
                c &= ~adj[img[q]]
        if s in lower:
            c &= ~((1 << (img[lower[s]] + 1)) - 1)
        return c

    # iterative DFS to avoid Python recursion overhead
    s = 0
    used = 0
    cands[0] = candidates(0, 0)
    while True:
        c = cands[s]
        if c == 0:
            if s == 0:
                return None
            s -= 1
            used &= ~(1 << img[s])
            continue
        low = c & -c
        cands[s] = c ^ low
        i = low.bit_length() - 1
        img[s] = i
        if s == k - 1:
            mapping = {order[t]: host[img[t]] for t in range(k)}
            return [mapping[p] for p in pat.vertices()]
        used |= low
        s += 1
        cands[s] = candidates(s, used)


def is_free(g: Graph, pat: Graph) -> bool:
    return find_induced(g, pat) is None


def find_induced_path(g: Graph, t: int) -> list[int] | None:
    """An induced path on ``t`` vertices, listed in path order, or None."""
    if not 1 <= t <= MAX_PATTERN:
        raise GraphError(f"path length {t} outside 1..{MAX_PATTERN}")
    return find_induced(g, path(t))


def contains_K4(g: Graph) -> list[int] | None:
    """Four mutually adjacent vertices (smallest lexicographic), or None."""
    host, adj = g.bitmasks()
    for a in range(len(host)):
        ca = adj[a] & ~((1 << (a + 1)) - 1)
        while ca:
            lb = ca & -ca
            b = lb.bit_length() - 1
            ca ^= lb
            cb = ca & adj[b]
            while cb:
                lc = cb & -cb
                c = lc.bit_length() - 1
                cb ^= lc
                cd = cb & adj[c]
                if cd:
                    d = (cd & -cd).bit_length() - 1
                    return [host[a], host[b], host[c], host[d]]
    return None


def verify_witness(g: Graph, pat: Graph, witness: list[int]) -> bool:
    """Check that ``witness`` (aligned with ``pat.vertices()``) induces exactly ``pat``."""
    pv = pat.vertices()
    if len(witness) != len(pv) or len(set(witness)) != len(witness):
        return False
    if any(v not in g for v in witness):
        return False
    for (i, p), (j, q) in combinations(enumerate(pv), 2):
        if pat.has_edge(p, q) != g.has_edge(witness[i], witness[j]):
            return False
    return True


def brute_find_induced(g: Graph, pat: Graph) -> list[int] | None:
    """Reference finder: every |pat|-subset, every bijection. Tiny graphs only."""
    from itertools import permutations

    pv = pat.vertices()
    for sub in combinations(g.vertices(), len(pv)):
        if g.induced(sub).num_edges() != pat.num_edges():
            continue
        for perm in permutations(sub):
            if verify_witness(g, pat, list(perm)):
                return list(perm)
    return None
