"""List-assignment instances, propagation rules and the 2-list endgame.

Rules mutate the instance they are given. Every deletion or identification
is appended to ``Instance.log`` so that a colouring of the reduced graph can
be lifted back to every vertex that was ever removed (see :func:`lift`).
"""

from __future__ import annotations

import gc
from dataclasses import dataclass, field
from itertools import combinations, product

from .graph import Graph, layers
from .oracle import brute_list_colour, YES, NO as ORACLE_NO, EXHAUSTED

UNCHANGED, CHANGED, NO, YES_ = "unchanged", "changed", "no", "yes"
FIXPOINT = "fixpoint"

BASIC_RULES = tuple(range(1, 11))
PHASE1_RULES = tuple(range(1, 12))
ALL_RULES = tuple(range(1, 14))


class UsageError(ValueError):
    """A rule or solver entry point was called outside its precondition."""


@dataclass
class Instance:
    """A graph with a list assignment plus the bookkeeping the solver needs.

    ``perm`` maps the colour names used in the case analysis (1, 2, 3) to the
    actual colours of this branch; only Rule 13 reads it directly.
    """

    graph: Graph
    lists: dict[int, frozenset[int]]
    n0: tuple[int, ...] | None = None
    protected: frozenset[int] = frozenset()
    k: int = 3
    perm: tuple[int, int, int] = (1, 2, 3)
    phase4: bool = False
    log: tuple = ()

    def __post_init__(self):
        self.lists = {v: frozenset(self.lists.get(v, range(1, self.k + 1))) for v in self.graph.vertices()}

    def copy(self) -> Instance:
        inst = Instance.__new__(Instance)
        inst.graph = self.graph.copy()
        inst.lists = dict(self.lists)
        inst.n0 = self.n0
        inst.protected = self.protected
        inst.k = self.k
        inst.perm = self.perm
        inst.phase4 = self.phase4
        inst.log = self.log
        return inst

    @property
    def n0set(self) -> frozenset[int]:
        return frozenset(self.n0 or ())

    def colour(self, assignment: dict[int, int]) -> bool:
        """Pin vertices to single colours; False if a colour is not in the list
        or two adjacent pinned vertices clash."""
        for v, c in assignment.items():
            if c not in self.lists[v]:
                return False
        for u, v in combinations(assignment, 2):
            if assignment[u] == assignment[v] and self.graph.has_edge(u, v):
                return False
        for v, c in assignment.items():
            self.lists[v] = frozenset((c,))
        return True

    def delete(self, vs) -> None:
        vs = tuple(sorted(vs))
        group = set(vs)
        outside = {v: tuple(sorted(self.graph.neighbours(v) - group)) for v in vs}
        inner = tuple((u, v) for u, v in combinations(vs, 2) if self.graph.has_edge(u, v))
        self.log = self.log + (("del", vs, {v: self.lists[v] for v in vs}, outside, inner),)
        for v in vs:
            self.graph.remove_vertex(v)
            del self.lists[v]
        self.protected = self.protected - group

    def identify(self, s) -> int:
        s = tuple(sorted(s))
        new_list = frozenset.intersection(*(self.lists[x] for x in s))
        w = self.graph.identify(s)
        for x in s:
            del self.lists[x]
        self.lists[w] = new_list
        self.log = self.log + (("ident", s, w),)
        return w

    def layer_sets(self) -> tuple[list[set[int]], set[int]]:
        if self.n0 is None:
            raise UsageError("instance has no anchored N0")
        return layers(self.graph, self.n0)

    def layer(self, i: int) -> set[int]:
        lay, _ = self.layer_sets()
        return lay[i] if i < len(lay) else set()


@dataclass
class RuleResult:
    status: str
    colouring: dict[int, int] | None = None
    rule: int | None = None


def lift(inst: Instance, colouring: dict[int, int]) -> dict[int, int]:
    """Extend a colouring of ``inst.graph`` to every vertex recorded in the log."""
    col = dict(colouring)
    for event in reversed(inst.log):
        if event[0] == "ident":
            _, s, w = event
            for x in s:
                col[x] = col[w]
            continue
        _, vs, lists, outside, inner = event
        reduced = {}
        for v in vs:
            taken = {col[x] for x in outside[v]}
            reduced[v] = frozenset(lists[v]) - taken
        sub = Graph(vs, inner)
        res = brute_list_colour(sub, reduced)
        if res.status != YES:
            raise AssertionError(f"cannot lift colouring onto deleted vertices {vs}")
        col.update(res.colouring)
    return col


def verify(graph: Graph, lists: dict, colouring: dict) -> bool:
    for v in graph.vertices():
        if colouring.get(v) not in lists[v]:
            return False
    return all(colouring[u] != colouring[v] for u, v in graph.edges())


# -- 2-list colouring via 2-SAT --------------------------------------------


def two_list_solve(graph: Graph, lists: dict) -> dict[int, int] | None:
    """Colouring respecting lists of size at most 2, or None if none exists.

    One boolean per vertex: true means "takes the smaller colour of its list".
    Each edge forbids the two endpoints sharing any common colour; the formula
    is decided by strongly connected components of the implication graph.
    """
    # nothing built here forms reference cycles, and pausing the cycle
    # collector keeps its full-heap passes from making big inputs superlinear
    paused = gc.isenabled()
    gc.disable()
    try:
        return _two_list_solve(graph, lists)
    finally:
        if paused:
            gc.enable()


def _two_list_solve(graph: Graph, lists: dict) -> dict[int, int] | None:
    verts = graph.vertices()
    for v in verts:
        if len(lists[v]) > 2:
            raise UsageError(f"vertex {v} has {len(lists[v])} colours; 2-list colouring needs at most 2")
        if not lists[v]:
            return None
    idx = {v: i for i, v in enumerate(verts)}
    srt = {v: sorted(lists[v]) for v in verts}
    n = len(verts)
    # literal 2i = x_i, 2i+1 = not x_i
    imp: list[list[int]] = [[] for _ in range(2 * n)]

    def clause(a: int, b: int) -> None:
        imp[a ^ 1].append(b)
        imp[b ^ 1].append(a)

    def lit(v, c):
        cs = srt[v]
        if c == cs[0]:
            return 2 * idx[v]
        return 2 * idx[v] + 1

    for v in verts:
        if len(srt[v]) == 1:
            clause(2 * idx[v], 2 * idx[v])
    for u, v in graph.edges():
        for c in lists[u] & lists[v]:
            clause(lit(u, c) ^ 1, lit(v, c) ^ 1)

    comp = _tarjan(imp)
    out = {}
    for v in verts:
        i = idx[v]
        if comp[2 * i] == comp[2 * i + 1]:
            return None
        # Tarjan numbers sinks first; a literal is true if it comes later in topological order
        take_first = comp[2 * i] < comp[2 * i + 1]
        cs = srt[v]
        out[v] = cs[0] if take_first or len(cs) == 1 else cs[1]
    return out


def _tarjan(adj: list[list[int]]) -> list[int]:
    n = len(adj)
    index = [-1] * n
    low = [0] * n
    comp = [-1] * n
    on_stack = [False] * n
    stack: list[int] = []
    counter = 0
    ncomp = 0
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, i = work[-1]
            if i < len(adj[v]):
                work[-1] = (v, i + 1)
                w = adj[v][i]
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, 0))
                elif on_stack[w]:
                    low[v] = min(low[v], index[w])
            else:
                work.pop()
                if work:
                    p = work[-1][0]
                    low[p] = min(low[p], low[v])
                if low[v] == index[v]:
                    while True:
                        w = stack.pop()
                        on_stack[w] = False
                        comp[w] = ncomp
                        if w == v:
                            break
                    ncomp += 1
    return comp


# -- the rules ---------------------------------------------------------------


def _r1(inst: Instance, once: bool) -> RuleResult:
    for v in sorted(inst.lists):
        if not inst.lists[v]:
            return RuleResult(NO)
    return RuleResult(UNCHANGED)


def _r2(inst: Instance, once: bool) -> RuleResult:
    if any(len(L) > 2 for L in inst.lists.values()):
        return RuleResult(UNCHANGED)
    col = two_list_solve(inst.graph, inst.lists)
    if col is None:
        return RuleResult(NO)
    return RuleResult(YES_, col)


def _r3(inst: Instance, once: bool) -> RuleResult:
    if inst.n0 is None:
        return RuleResult(UNCHANGED)
    anchor = inst.n0[0]
    changed = False
    for comp in inst.graph.components():
        if anchor in comp:
            continue
        sub = inst.graph.induced(comp)
        res = brute_list_colour(sub, {v: inst.lists[v] for v in comp})
        if res.status == EXHAUSTED:
            raise RuntimeError("oracle budget exhausted on a detached component")
        if res.status == ORACLE_NO:
            return RuleResult(NO)
        inst.delete(comp)
        changed = True
        if once:
            break
    return RuleResult(CHANGED if changed else UNCHANGED)


def _deletable(inst: Instance, v: int) -> bool:
    return v not in inst.protected and v not in inst.n0set


def _r4(inst: Instance, once: bool) -> RuleResult:
    changed = False
    for u in sorted(inst.lists):
        if u not in inst.lists or not _deletable(inst, u):
            continue
        L = inst.lists[u]
        if len(L) == 1 and all(not (L & inst.lists[v]) for v in inst.graph.neighbours(u)):
            inst.delete([u])
            changed = True
            if once:
                break
    return RuleResult(CHANGED if changed else UNCHANGED)


def _r5(inst: Instance, once: bool) -> RuleResult:
    changed = False
    for u in sorted(inst.lists):
        L = inst.lists[u]
        if len(L) != 1:
            continue
        for v in sorted(inst.graph.neighbours(u)):
            if L <= inst.lists[v]:
                inst.lists[v] = inst.lists[v] - L
                changed = True
                if once or not inst.lists[v]:
                    return RuleResult(CHANGED)
    return RuleResult(CHANGED if changed else UNCHANGED)


def _r6(inst: Instance, once: bool) -> RuleResult:
    changed = False
    g = inst.graph
    for u, v in g.edges():
        common = sorted(g.neighbours(u) & g.neighbours(v))
        for x, y in combinations(common, 2):
            if g.has_edge(x, y):
                continue
            if inst.lists[x] != inst.lists[y]:
                both = inst.lists[x] & inst.lists[y]
                inst.lists[x] = inst.lists[y] = both
                changed = True
                if once or not both:
                    return RuleResult(CHANGED)
    return RuleResult(CHANGED if changed else UNCHANGED)


def _r7(inst: Instance, once: bool) -> RuleResult:
    changed = False
    g = inst.graph
    verts = g.vertices()
    for u in verts:
        Nu = g.neighbours(u)
        for v in verts:
            if v == u or v in Nu:
                continue
            if inst.lists[v] < inst.lists[u] and Nu <= g.neighbours(v):
                inst.lists[u] = inst.lists[v]
                changed = True
                if once:
                    return RuleResult(CHANGED)
    return RuleResult(CHANGED if changed else UNCHANGED)


def _r8(inst: Instance, once: bool) -> RuleResult:
    changed = False
    g = inst.graph
    for u, v in g.edges():
        pair = inst.lists[u] | inst.lists[v]
        if len(pair) != 2:
            continue
        for w in sorted(g.neighbours(u) & g.neighbours(v)):
            if len(inst.lists[w]) >= 2 and inst.lists[w] & pair:
                inst.lists[w] = inst.lists[w] - pair
                changed = True
                if once or not inst.lists[w]:
                    return RuleResult(CHANGED)
            # lists of u, v may have shrunk meanwhile
            pair = inst.lists[u] | inst.lists[v]
            if len(pair) != 2:
                break
    return RuleResult(CHANGED if changed else UNCHANGED)


def _r9(inst: Instance, once: bool) -> RuleResult:
    changed = False
    g = inst.graph
    for u in g.vertices():
        L = inst.lists[u]
        if len(L) < 2:
            continue
        seen = set()
        for w in g.neighbours(u):
            seen |= inst.lists[w]
        free = L - seen
        if free:
            inst.lists[u] = frozenset((min(free),))
            changed = True
            if once:
                break
    return RuleResult(CHANGED if changed else UNCHANGED)


def _r10(inst: Instance, once: bool) -> RuleResult:
    changed = False
    for u in inst.graph.vertices():
        if u not in inst.lists or not _deletable(inst, u):
            continue
        if len(inst.lists[u]) > inst.graph.degree(u):
            inst.delete([u])
            changed = True
            if once:
                break
    return RuleResult(CHANGED if changed else UNCHANGED)


def _pair_extends(inst: Instance, u: int, v: int) -> bool:
    """Every list colouring of N({u,v}) extends to the adjacent pair u, v."""
    g = inst.graph
    outside = sorted(g.set_neighbourhood([u, v]))
    if len(outside) > 6:
        return False
    for cols in product(*(sorted(inst.lists[x]) for x in outside)):
        assign = dict(zip(outside, cols))
        if any(assign[a] == assign[b] for a, b in combinations(outside, 2) if g.has_edge(a, b)):
            continue
        fu = inst.lists[u] - {assign[x] for x in g.neighbours(u) if x != v}
        fv = inst.lists[v] - {assign[x] for x in g.neighbours(v) if x != u}
        if not any(a != b for a in fu for b in fv):
            return False
    return True


def _r11(inst: Instance, once: bool = True) -> RuleResult:
    if inst.n0 is None:
        return RuleResult(UNCHANGED)
    n3 = inst.layer(3)
    g = inst.graph
    for u in sorted(n3):
        for v in sorted(g.neighbours(u) & n3):
            if v <= u or not (_deletable(inst, u) and _deletable(inst, v)):
                continue
            if _pair_extends(inst, u, v):
                inst.delete([u, v])
                return RuleResult(CHANGED)
    return RuleResult(UNCHANGED)


def _k4_through(g: Graph, w: int) -> bool:
    nb = sorted(g.neighbours(w))
    for a, b, c in combinations(nb, 3):
        if g.has_edge(a, b) and g.has_edge(a, c) and g.has_edge(b, c):
            return True
    return False


def _r12(inst: Instance, once: bool = True) -> RuleResult:
    g = inst.graph
    fixed = inst.protected | inst.n0set
    for v in g.vertices():
        if len(inst.lists[v]) != 3 or v in fixed:
            continue
        Nv = g.neighbours(v)
        for u in sorted(Nv):
            if not Nv <= g.neighbours(u) | {u}:
                continue
            s = Nv - {u}
            if not s or s & fixed:
                continue
            if any(g.has_edge(a, b) for a, b in combinations(s, 2)):
                return RuleResult(NO)
            w = inst.identify(s)
            inst.delete([v])
            if _k4_through(inst.graph, w):
                return RuleResult(NO)
            return RuleResult(CHANGED)
    return RuleResult(UNCHANGED)


def _r13(inst: Instance, once: bool = True) -> RuleResult:
    if inst.n0 is None:
        return RuleResult(UNCHANGED)
    g = inst.graph
    c3 = inst.perm[2]
    n2 = inst.layer(2)
    for u in sorted(n2):
        if len(inst.lists[u]) != 3:
            continue
        Nu = g.neighbours(u)
        for v in sorted(Nu):
            Lv = inst.lists[v]
            if c3 not in Lv or len(Lv) != 2:
                continue
            if not g.neighbours(v) <= Nu | {u}:
                continue
            # the recolouring argument needs colour 3 absent from u's private neighbours
            private = Nu - g.neighbours(v) - {v}
            if any(c3 in inst.lists[x] for x in private):
                continue
            (q,) = Lv - {c3}
            inst.lists[u] = inst.lists[u] - {q}
            return RuleResult(CHANGED)
    return RuleResult(UNCHANGED)


_RULES = {1: _r1, 2: _r2, 3: _r3, 4: _r4, 5: _r5, 6: _r6, 7: _r7, 8: _r8, 9: _r9, 10: _r10,
          11: _r11, 12: _r12, 13: _r13}

RULE_NAMES = {
    1: "no empty lists",
    2: "no lists of size 3",
    3: "connected graph",
    4: "no coloured vertices",
    5: "single colour propagation",
    6: "diamond colour propagation",
    7: "twin colour propagation",
    8: "triangle colour propagation",
    9: "no free colours",
    10: "no small degrees",
    11: "N3-reduction",
    12: "neighbourhood identification",
    13: "A2 list-reduction",
}


def _check_gating(r: int, inst: Instance) -> None:
    if r not in _RULES:
        raise UsageError(f"no rule {r}")
    if r >= 3 and inst.k != 3:
        raise UsageError("propagation rules are only defined for 3-list instances")
    if r in (11, 13) and inst.n0 is None:
        raise UsageError(f"rule {r} needs an anchored N0")
    if r in (12, 13) and not inst.phase4:
        raise UsageError(f"rule {r} is only enabled in phase 4")


def apply_rule(r: int, inst: Instance) -> RuleResult:
    """Apply rule ``r`` once, at the first site in vertex-id order.

    YES results carry a colouring of the current graph (not lifted).
    """
    _check_gating(r, inst)
    res = _RULES[r](inst, True)
    res.rule = r
    return res


# hook for test harnesses: called as observer(rule, before, after_result)
observer = None


def _run(r: int, inst: Instance, once: bool) -> RuleResult:
    if observer is None:
        res = _RULES[r](inst, once)
    else:
        before = inst.copy()
        res = _RULES[r](inst, once)
        if res.status != UNCHANGED:
            observer(r, before, inst, res)
    res.rule = r
    return res


def propagate(inst: Instance, ruleset=BASIC_RULES) -> RuleResult:
    """Apply the rules in ``ruleset`` until none applies.

    Rules 1-10 run round-robin to a fixpoint; then Rule 11 is tried once,
    then 12, then 13, restarting the basic loop after any change. Returns
    status ``fixpoint``, ``no`` or ``yes`` (with a colouring of the current
    graph, not lifted).
    """
    rules = set(ruleset)
    basic = [r for r in BASIC_RULES if r in rules]
    if 11 in rules and not set(BASIC_RULES) <= rules:
        raise UsageError("rule 11 needs rules 1-10 in the rule set")
    if rules & {12, 13} and not set(PHASE1_RULES) <= rules:
        raise UsageError("rules 12-13 need rules 1-11 in the rule set")
    for r in rules:
        _check_gating(r, inst)
    late = [r for r in (11, 12, 13) if r in rules]
    while True:
        progress = True
        while progress:
            progress = False
            for r in basic:
                res = _run(r, inst, False)
                if res.status in (NO, YES_):
                    return res
                if res.status == CHANGED:
                    progress = True
        for r in late:
            res = _run(r, inst, True)
            if res.status in (NO, YES_):
                return res
            if res.status == CHANGED:
                break
        else:
            return RuleResult(FIXPOINT)
