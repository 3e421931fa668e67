"""List 3-colouring for (P2+P5)-free and (P3+P4)-free graphs.

Pipeline per connected component: K4 test, search for an induced P7, then
(if one exists) colour the P7 in every way and push each branch through the
four phases until every surviving instance has lists of size at most two,
where 2-SAT finishes the job. P7-free components go to the exact oracle.

Structural facts that the case analysis relies on are checked as the search
passes the point where they should hold. On a violation the solver either
raises :class:`ClaimViolation` (``strict=True``) or hands that one branch to
the exact oracle, so the answer stays correct either way.
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations, product

from . import detect
from .engine import (
    ALL_RULES,
    FIXPOINT,
    NO,
    PHASE1_RULES,
    YES_,
    Instance,
    UsageError,
    lift,
    propagate,
    two_list_solve,
    verify,
)
from .graph import Graph, is_linear_forest, path
from .oracle import EXHAUSTED, YES, OracleBudget, brute_list_colour

log = logging.getLogger(__name__)

H_MODES = ("p2p5", "p3p4")
MAX_BRANCHING_I = 3**7
PAIRS = [(i, j) for i in range(1, 8) for j in range(i + 2, 8)]
ROMAN = {1: "I", 2: "II", 3: "III", 4: "IV", 5: "V", 6: "VI", 7: "VII"}


class ClaimViolation(AssertionError):
    """A structural property the algorithm depends on failed to hold."""

    def __init__(self, claim: str, detail: str, witness=None):
        super().__init__(f"{claim}: {detail}" + (f" (witness {witness})" if witness is not None else ""))
        self.claim = claim
        self.detail = detail
        self.witness = witness

    def __reduce__(self):
        return ClaimViolation, (self.claim, self.detail, self.witness)


class InputRejected(ValueError):
    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class Exhausted(RuntimeError):
    pass


@dataclass
class SolveResult:
    answer: bool | None
    colouring: dict[int, int] | None = None
    stats: Counter = field(default_factory=Counter)
    trace: list[str] = field(default_factory=list)
    h: str | None = None

    @property
    def status(self) -> str:
        return {True: "yes", False: "no", None: "exhausted"}[self.answer]


class _Found(Exception):
    def __init__(self, colouring):
        self.colouring = colouring


def detect_h(g: Graph) -> tuple[str | None, dict]:
    """The first target class the graph belongs to, plus witnesses for the misses."""
    witnesses = {}
    for h in H_MODES:
        w = detect.find_induced(g, detect.pattern(h))
        if w is None:
            return h, witnesses
        witnesses[h] = w
    return None, witnesses


class Solver:
    """One solve call's worth of state: trace, statistics, node numbering."""

    def __init__(self, h: str | None = None, verify_freeness: bool = True, strict: bool | None = None,
                 budget: OracleBudget | None = None, check_claims: bool = True, workers: int = 1):
        if h is not None and h not in H_MODES:
            raise UsageError(f"h must be one of {H_MODES}")
        self.h = h
        self.verify_freeness = verify_freeness
        self.strict = verify_freeness if strict is None else strict
        self.budget = budget or OracleBudget()
        self.check_claims = check_claims
        self.workers = workers
        self.stats: Counter = Counter()
        self.trace: list[str] = []
        self.b1_children: list[int] = []
        self.b6_depths: list[tuple[int, int]] = []
        self._next_id = 1
        self._mode = h

    # -- entry point ----------------------------------------------------------

    def solve(self, graph: Graph, lists: dict) -> SolveResult:
        lists = {v: frozenset(lists.get(v, (1, 2, 3))) for v in graph.vertices()}
        for v, L in lists.items():
            if not L <= {1, 2, 3}:
                raise UsageError(f"list of vertex {v} is not a subset of {{1,2,3}}")
        if self.h is None:
            mode, wit = detect_h(graph)
            if mode is None:
                if self.verify_freeness:
                    raise InputRejected("graph is neither (P2+P5)-free nor (P3+P4)-free", wit.get("p3p4"))
                mode = "p3p4"
            self._mode = mode
        elif self.verify_freeness:
            w = detect.find_induced(graph, detect.pattern(self.h))
            if w is not None:
                raise InputRejected(f"graph contains an induced {self.h}", w)
        full: dict[int, int] = {}
        try:
            for comp in graph.components():
                sub = graph.induced(comp)
                col = self._solve_connected(sub, {v: lists[v] for v in comp})
                if col is None:
                    return SolveResult(False, None, self.stats, self.trace, self._mode)
                full.update({v: col[v] for v in comp})
        except Exhausted:
            return SolveResult(None, None, self.stats, self.trace, self._mode)
        if not verify(graph, lists, full):
            raise AssertionError("solver produced an invalid certificate")
        return SolveResult(True, full, self.stats, self.trace, self._mode)

    def _solve_connected(self, g: Graph, lists: dict) -> dict | None:
        k4 = detect.contains_K4(g)
        if k4 is not None:
            self.stats["k4"] += 1
            return None
        p7 = detect.find_induced_path(g, 7)
        if p7 is None:
            self.stats["oracle_fallback"] += 1
            return self._oracle(g, lists)
        self.stats["p7_anchored"] += 1
        inst = Instance(g, lists, n0=tuple(p7))
        try:
            self._branching_I(inst, 0)
        except _Found as f:
            return {v: f.colouring[v] for v in g.vertices()}
        return None

    # -- helpers ---------------------------------------------------------------

    def _oracle(self, g: Graph, lists: dict) -> dict | None:
        res = brute_list_colour(g, lists, self.budget)
        if res.status == EXHAUSTED:
            raise Exhausted("oracle budget exhausted")
        return res.colouring if res.status == YES else None

    def _oracle_node(self, inst: Instance) -> None:
        self.stats["claim_fallback"] += 1
        col = self._oracle(inst.graph, inst.lists)
        if col is not None:
            raise _Found(lift(inst, col))

    def _branch(self, tag: int, parent: int, children: list) -> list[tuple[int, object]]:
        ids = list(range(self._next_id, self._next_id + len(children)))
        self._next_id += len(children)
        self.trace.append(f"B{ROMAN[tag]} parent={parent} children={len(children)}")
        self.stats[f"B{ROMAN[tag]}"] += 1
        self.stats[f"B{ROMAN[tag]}_children"] += len(children)
        return list(zip(ids, children))

    def _claim(self, ok: bool, claim: str, detail: str = "", witness=None) -> None:
        self.stats[f"checked:{claim}"] += 1
        if not ok:
            raise ClaimViolation(claim, detail, witness)

    def _prop(self, inst: Instance, rules=PHASE1_RULES) -> bool:
        """Propagate; returns True if the instance is still open. Raises on yes."""
        res = propagate(inst, rules)
        if res.status == YES_:
            raise _Found(lift(inst, res.colouring))
        if res.status == NO:
            self.stats["pruned"] += 1
            return False
        return True

    def _guard(self, fn, inst: Instance, nid: int, *args) -> None:
        try:
            fn(inst, nid, *args)
        except ClaimViolation as e:
            if self.strict:
                raise
            log.debug("claim violated at node %d: %s", nid, e)
            self._oracle_node(inst)

    @staticmethod
    def _active(inst: Instance):
        lay, _ = inst.layer_sets()
        n1 = lay[1] if len(lay) > 1 else set()
        n2 = lay[2] if len(lay) > 2 else set()
        a2 = {u for u in n2 if len(inst.lists[u]) == 3}
        a1 = set()
        for u in a2:
            a1 |= inst.graph.neighbours(u) & n1
        return lay, a1, a2

    def _pair_sets(self, inst: Instance, a1: set, i: int, j: int):
        g = inst.graph
        vi, vj = inst.n0[i - 1], inst.n0[j - 1]
        aij = sorted(w for w in a1 if g.has_edge(w, vi) and not g.has_edge(w, vj))
        aji = sorted(w for w in a1 if g.has_edge(w, vj) and not g.has_edge(w, vi))
        return aij, aji

    # -- structural checks ---------------------------------------------------

    def _check_layers(self, inst: Instance) -> None:
        """Layer structure checks at an unprotected fixpoint of rules 1-11."""
        if not self.check_claims:
            return
        g = inst.graph
        lay, unreachable = inst.layer_sets()
        self._claim(not unreachable and len(lay) <= 4, "claim1", "vertices beyond N3",
                    sorted(unreachable) or sorted(lay[4]) if len(lay) > 4 else sorted(unreachable))
        n0 = inst.n0set
        bad = [u for u in g.vertices() if u not in n0 and u not in inst.protected and not 2 <= len(inst.lists[u]) <= 3]
        self._claim(not bad, "claim3", "non-N0 list outside 2..3", bad)
        n2 = lay[2] if len(lay) > 2 else set()
        n3 = lay[3] if len(lay) > 3 else set()
        sub = g.induced(n2 | n3)
        for comp in sub.components():
            clique = all(g.has_edge(a, b) for a, b in combinations(comp, 2))
            in3 = [x for x in comp if x in n3]
            self._claim(clique and len(comp) <= 3 and len(in3) < len(comp), "claim2",
                        "component of G[N2+N3] is not a small clique meeting N2", comp)
            ok = clique and (len(comp) <= 2 and not in3 or len(comp) == 3 and len(in3) <= 1)
            self._claim(ok, "claim6", "bad component of G[N2+N3]", comp)
        for u in sorted(n3):
            nb2 = g.neighbours(u) & n2
            self._claim(not (g.neighbours(u) & n3), "claim5", "N3 not independent", u)
            self._claim(len(inst.lists[u]) == 2 and len(nb2) == 2, "claim5", "N3 vertex shape", u)
        for u in g.vertices():
            if len(inst.lists[u]) == 3:
                self._claim(u in n2, "claim7", "size-3 list outside N2", u)

    def _check_property_p(self, inst: Instance, pairs) -> None:
        if not self.check_claims:
            return
        _, a1, _ = self._active(inst)
        for i, j in pairs:
            aij, aji = self._pair_sets(inst, a1, i, j)
            self._claim(not aij or not aji, "propertyP", f"A({i},{j}) and A({j},{i}) both non-empty", (aij, aji))

    # -- Branching I / phase 1 ---------------------------------------------

    def branching_I_colourings(self, inst: Instance) -> list[tuple[int, ...]]:
        """Proper list-respecting colourings of the anchored P7, in lexicographic order."""
        n0 = inst.n0
        out = []
        for cols in product(*(sorted(inst.lists[v]) for v in n0)):
            if all(cols[t] != cols[t + 1] for t in range(6)):
                out.append(cols)
        return out

    def _branching_I(self, inst: Instance, nid: int) -> None:
        colourings = self.branching_I_colourings(inst)
        self._claim(len(colourings) <= MAX_BRANCHING_I, "branchingI", "too many N0 colourings")
        self.b1_children.append(len(colourings))
        if self.workers > 1:
            self._branching_I_pool(inst, nid, colourings)
            return
        for cid, cols in self._branch(1, nid, colourings):
            child = inst.copy()
            child.colour(dict(zip(inst.n0, cols)))
            if self._prop(child):
                self._guard(self._phase1, child, cid)

    def _branching_I_pool(self, inst: Instance, nid: int, colourings) -> None:
        """Evaluate Branching I children in worker processes; the lowest Yes child wins.

        Each worker numbers its own nodes and keeps its own trace, so only the
        Branching I line is recorded here and statistics are summed.
        """
        from concurrent.futures import ProcessPoolExecutor

        kids = self._branch(1, nid, colourings)
        cfg = (self._mode, self.strict, self.budget, self.check_claims)
        with ProcessPoolExecutor(self.workers) as pool:
            results = pool.map(_pool_child, [(cfg, inst, cid, cols) for cid, cols in kids], chunksize=4)
            found = None
            for col, stats in results:
                self.stats.update(stats)
                if col is not None and found is None:
                    found = col
        if found is not None:
            raise _Found(found)

    def _phase1(self, inst: Instance, nid: int) -> None:
        self._check_layers(inst)
        self._phase2(inst, nid, 0)

    # -- phase 2 --------------------------------------------------------------

    def _phase2(self, inst: Instance, nid: int, k: int) -> None:
        while k < len(PAIRS):
            _, a1, _ = self._active(inst)
            i, j = PAIRS[k]
            aij, aji = self._pair_sets(inst, a1, i, j)
            if aij and aji:
                break
            k += 1
        else:
            self._check_property_p(inst, PAIRS)
            self._phase3(inst, nid)
            return
        self._branching_II(inst, nid, k)

    def _branching_II(self, inst: Instance, nid: int, k: int) -> None:
        i, j = PAIRS[k]
        _, a1, _ = self._active(inst)
        aij, _ = self._pair_sets(inst, a1, i, j)
        ci = next(iter(inst.lists[inst.n0[i - 1]]))
        cj = next(iter(inst.lists[inst.n0[j - 1]]))
        two = min({1, 2, 3} - {ci, cj})
        (one,) = {1, 2, 3} - {ci, two}
        for w in aij:
            self._claim(inst.lists[w] == {one, two}, "branchingII", "A(i,j) list", w)
        options: list[tuple[str, dict]] = [("few", {w: one for w in aij})]
        for x in aij:
            options.append(("few", {w: (two if w == x else one) for w in aij}))
        for x1, x2 in combinations(aij, 2):
            if not inst.graph.has_edge(x1, x2):
                options.append(("pair", {x1: two, x2: two}))
        for cid, (kind, assign) in self._branch(2, nid, options):
            child = inst.copy()
            if not child.colour(assign) or not self._prop(child):
                continue
            if kind == "few":
                self._guard(self._after_pair, child, cid, k)
            else:
                self._guard(self._branching_II_second, child, cid, k, cj)

    def _branching_II_second(self, inst: Instance, nid: int, k: int, cj: int) -> None:
        i, j = PAIRS[k]
        _, a1, a2 = self._active(inst)
        _, aji = self._pair_sets(inst, a1, i, j)
        if not aji:
            self._after_pair(inst, nid, k)
            return
        z = sorted(set().union(*(inst.graph.neighbours(w) for w in aji)) & a2)
        options = [{u: cj for u in z}]
        for u in z:
            for c in sorted(inst.lists[u] - {cj}):
                options.append({u: c})
        for cid, assign in self._branch(2, nid, options):
            child = inst.copy()
            if child.colour(assign) and self._prop(child):
                self._guard(self._after_pair, child, cid, k)

    def _after_pair(self, inst: Instance, nid: int, k: int) -> None:
        self._check_layers(inst)
        self._check_property_p(inst, [PAIRS[k]])
        self._phase2(inst, nid, k + 1)

    # -- phase 3 --------------------------------------------------------------

    def _a1_lists(self, inst: Instance):
        _, a1, a2 = self._active(inst)
        return sorted({inst.lists[w] for w in a1}, key=sorted), a1, a2

    def _phase3(self, inst: Instance, nid: int) -> None:
        kinds, a1, a2 = self._a1_lists(inst)
        self._claim(bool(a2), "claim7", "open instance without active vertices")
        self._claim(len(kinds) <= 2, "phase2", "three different lists on A1", kinds)
        if len(kinds) == 1:
            self._phase4(inst, nid, 0)
            return
        st = self.phase3_state(inst)
        self._branching_III(inst, nid, st)

    def phase3_state(self, inst: Instance) -> dict:
        """X12, X13, the pivot index and the colour names of Claim 9."""
        g = inst.graph
        kinds, a1, _ = self._a1_lists(inst)
        la, lb = kinds
        common = la & lb
        self._claim(len(common) == 1, "claim9", "A1 lists share no colour", kinds)
        sides = {la: sorted(w for w in a1 if inst.lists[w] == la), lb: sorted(w for w in a1 if inst.lists[w] == lb)}
        n0 = inst.n0
        touch = {L: sorted({t for t in range(7) if any(g.has_edge(w, n0[t]) for w in ws)}) for L, ws in sides.items()}
        x13_list = next((L for L in kinds if len(touch[L]) == 1), None)
        self._claim(x13_list is not None, "claim9", "no side touches a single N0 vertex", touch)
        x12_list = lb if x13_list == la else la
        (mid,) = touch[x13_list]
        self._claim(1 <= mid <= 5 and touch[x12_list] == [mid - 1, mid + 1], "claim9",
                    "N(A1) in N0 is not v(i-1), v(i), v(i+1)", touch)
        x12, x13 = sides[x12_list], sides[x13_list]
        for w in x12:
            self._claim(g.has_edge(w, n0[mid - 1]) and g.has_edge(w, n0[mid + 1]), "claim9", "X12 shape", w)
        c1 = next(iter(common))
        c2 = next(iter(inst.lists[n0[mid]]))
        c3 = next(iter(inst.lists[n0[mid - 1]]))
        self._claim(x12_list == {c1, c2} and x13_list == {c1, c3}, "claim9", "colour pattern", (c1, c2, c3))
        return {"x12": x12, "x13": x13, "pivot": mid + 1, "perm": (c1, c2, c3)}

    def _branching_III(self, inst: Instance, nid: int, st: dict) -> None:
        c1, c2, _ = st["perm"]
        options = [("all2", {w: c2 for w in st["x12"]})]
        for w in st["x12"]:
            options.append(("one1", {w: c1}))
        for cid, (kind, assign) in self._branch(3, nid, options):
            child = inst.copy()
            child.perm = st["perm"]
            if not child.colour(assign):
                continue
            if kind == "all2":
                if self._prop(child):
                    self._guard(self._phase3, child, cid)
                continue
            (w,) = assign
            child.protected = frozenset((w,))
            if self._prop(child):
                self._guard(self._phase3_with_w, child, cid, w)

    def _x_sets(self, inst: Instance):
        c1, c2, c3 = inst.perm
        _, a1, a2 = self._active(inst)
        x12 = sorted(w for w in a1 if inst.lists[w] == {c1, c2})
        x13 = sorted(w for w in a1 if inst.lists[w] == {c1, c3})
        return x12, x13, a1, a2

    def _release(self, inst: Instance, nid: int) -> None:
        inst.protected = frozenset()
        if self._prop(inst):
            self._phase1_checked_phase3(inst, nid)

    def _phase1_checked_phase3(self, inst: Instance, nid: int) -> None:
        self._check_layers(inst)
        self._phase3(inst, nid)

    def _phase3_with_w(self, inst: Instance, nid: int, w: int) -> None:
        x12, x13, _, a2 = self._x_sets(inst)
        if not x12 or not x13:
            self._release(inst, nid)
            return
        self._check_claims_10_12(inst, w, x12, x13, a2)
        self._branching_IV(inst, nid, w, x13, a2)

    def _check_claims_10_12(self, inst: Instance, w: int, x12, x13, a2) -> None:
        if not self.check_claims:
            return
        g = inst.graph
        self._claim(w in g, "claim10", "protected vertex vanished", w)
        near = g.neighbours(w) & (set(a2) | set(x12) | set(x13))
        self._claim(not near, "claim10", "w adjacent to A2 or A1", sorted(near))
        lay, _ = inst.layer_sets()
        n2 = lay[2] if len(lay) > 2 else set()
        n3 = lay[3] if len(lay) > 3 else set()
        y = set().union(*(g.neighbours(r) for r in x13)) & a2
        star_set = set(x13) | y | n3
        sub = g.induced(star_set)
        for comp in sub.components():
            clique = all(g.has_edge(a, b) for a, b in combinations(comp, 2))
            nx = [c for c in comp if c in x13]
            ok = clique and (len(comp) == 1 and comp[0] in n3 or len(nx) == 1 and len(comp) - 1 <= 2
                             and all(c in y for c in comp if c not in x13))
            self._claim(ok, "claim11", "X13/A2/N3 component shape", comp)
        for s in a2:
            for t in g.neighbours(s) & n2:
                ok = g.has_edge(t, w) or (g.neighbours(s) & set(x13)) <= g.neighbours(t)
                self._claim(ok, "claim12", "edge s-t breaks the pattern", (s, t))

    def path_s(self, inst: Instance, s: int, r: int, w: int) -> tuple[int, ...]:
        """The induced three-vertex path through ``s`` used by Branching IV."""
        g = inst.graph
        others = sorted(g.neighbours(s) - {r})
        self._claim(len(others) >= 2, "branchingIV", "s has fewer than two other neighbours", s)
        t, t2 = others[0], others[1]
        if not g.has_edge(t, t2):
            return (t, s, t2)
        if g.has_edge(t, r):
            t, t2 = t2, t
        self._claim(not g.has_edge(t, r), "branchingIV", "K4 around s", (s, t, t2, r))
        lay, _ = inst.layer_sets()
        n1, n2 = lay[1], lay[2] if len(lay) > 2 else set()
        if t in n2:
            self._claim(g.has_edge(t, w), "claim12", "t not adjacent to w", t)
            return (s, t, w)
        self._claim(t in n1 and t2 in n2 and not g.has_edge(t2, r) and g.has_edge(t2, w),
                    "branchingIV", "no path via t'", (t, t2))
        return (s, t2, w)

    def _branching_IV(self, inst: Instance, nid: int, w: int, x13, a2) -> None:
        g = inst.graph
        c1, c2, c3 = inst.perm
        x13s = set(x13)
        y = sorted(set().union(*(g.neighbours(r) for r in x13)) & a2)
        options: list[dict | None] = [None]
        for s in y:
            rs = sorted(g.neighbours(s) & x13s)
            self._claim(len(rs) == 1, "claim11", "s sees several X13 vertices", (s, rs))
            ps = self.path_s(inst, s, rs[0], w)
            free = [v for v in ps if v not in (s, w)] + rs
            for cols in product(*(sorted(inst.lists[v]) for v in free)):
                assign = {s: c2, w: next(iter(inst.lists[w]))}
                assign.update(zip(free, cols))
                options.append(assign)
        for cid, assign in self._branch(4, nid, options):
            child = inst.copy()
            if assign is None:
                for u in y:
                    child.lists[u] = child.lists[u] - {c2}
                if self._prop(child):
                    self._guard(self._release, child, cid)
                continue
            if child.colour(assign) and self._prop(child):
                self._guard(self._branching_V, child, cid)

    def _branching_V(self, inst: Instance, nid: int) -> None:
        _, x13, _, _ = self._x_sets(inst)
        self._claim(len(x13) <= 1, "branchingIV", "X13 still has two vertices", x13)
        if not x13:
            self._release(inst, nid)
            return
        (y,) = x13
        options = [{y: c} for c in sorted(inst.lists[y])]
        for cid, assign in self._branch(5, nid, options):
            child = inst.copy()
            if child.colour(assign) and self._prop(child):
                self._guard(self._release, child, cid)

    # -- phase 4 --------------------------------------------------------------

    def _phase4(self, inst: Instance, nid: int, depth: int) -> None:
        kinds, a1, a2 = self._a1_lists(inst)
        self._claim(len(kinds) == 1, "phase4", "A1 lists differ", kinds)
        a, b = sorted(kinds[0])
        (c3,) = {1, 2, 3} - {a, b}
        inst.perm = (a, b, c3)
        inst.phase4 = True
        if self._mode == "p2p5":
            self._phase4_p2p5(inst, a2)
            return
        if self._prop(inst, ALL_RULES):
            self._branching_VI(inst, nid, depth, None)

    def _phase4_p2p5(self, inst: Instance, a2) -> None:
        g = inst.graph
        lay, _ = inst.layer_sets()
        deep = set().union(*lay[2:]) if len(lay) > 2 else set()
        bad = [(u, v) for u, v in g.edges() if u in deep and v in deep]
        self._claim(not bad, "phase4", "N2 u N3 not independent", bad[:1])
        c3 = inst.perm[2]
        for u in a2:
            inst.lists[u] = frozenset((c3,))
        big = [u for u in g.vertices() if len(inst.lists[u]) > 2]
        self._claim(not big, "claim7", "size-3 list after colouring A2", big)
        self.stats["two_sat"] += 1
        col = two_list_solve(g, inst.lists)
        if col is not None:
            raise _Found(lift(inst, col))

    def q_triple(self, inst: Instance) -> dict:
        """Pivot u and the (Q, P, x) triple for Branching VI."""
        g = inst.graph
        c1, c2, c3 = inst.perm
        lay, a1, a2 = self._active(inst)
        n1 = lay[1]
        n23 = set().union(*lay[2:4])
        u = min(a2, key=lambda x: (len(g.neighbours(x) & n1), x))
        b = sorted(x for x in g.neighbours(u) if c3 in inst.lists[x])
        self._claim(bool(b) and set(b) <= n23, "claim14", "B(u) empty or reaches N1", (u, b))
        v = b[0]
        auv = sorted((g.neighbours(u) & n1) - g.neighbours(v))
        avu = sorted((g.neighbours(v) & n1) - g.neighbours(u))
        self._claim(bool(auv) and bool(avu), "phase4", "A(u,v) or A(v,u) empty", (u, v))
        pairs = [(w, t) for w in avu for t in auv if not g.has_edge(w, t)]
        first = next(((w, t) for w, t in pairs if inst.lists[w] == {c1, c2}), None)
        if first is not None:
            w, t = first
            qtype, x, p = 1, u, (t, u, v, w)
            q = [w, t, u, v]
        elif pairs:
            w, t = pairs[0]
            qtype, x, p = 2, v, (t, u, v, w)
            q = [w, t, u, v]
        else:
            common = sorted(g.neighbours(u) & g.neighbours(v))
            self._claim(bool(common), "phase4", "no common neighbour in situation 3", (u, v))
            s, w, t = common[0], avu[0], auv[0]
            qtype, x, p = 3, v, (s, u, t, w)
            q = [s, t, w, u, v]
        rest = [t2 for t2 in auv if t2 != t]
        if rest:
            q.append(rest[0])
        self._claim(detect.verify_witness(g, path(4), list(p)), "phase4", "P is not an induced P4", p)
        self._claim(len(q) <= 6, "branchingVI", "|Q| > 6", q)
        return {"u": u, "v": v, "q": q, "p": p, "x": x, "type": qtype, "a2": len(a2)}

    def _branching_VI(self, inst: Instance, nid: int, depth: int, prev_a2: int | None) -> None:
        qt = self.q_triple(inst)
        if prev_a2 is not None:
            self._claim(qt["a2"] < prev_a2, "branchingVI", "recursion did not shrink A2")
        self.b6_depths.append((depth, qt["a2"] + depth))
        self.stats["B6_max_depth"] = max(self.stats["B6_max_depth"], depth)
        c3 = inst.perm[2]
        q, x = qt["q"], qt["x"]
        others = [y for y in q if y != x]
        options: list[dict | None] = []
        for cols in product(*(sorted(inst.lists[y]) for y in others)):
            assign = dict(zip(others, cols))
            assign[x] = c3
            options.append(assign)
        options.append(None)
        for cid, assign in self._branch(6, nid, options):
            child = inst.copy()
            if assign is None:
                child.lists[x] = child.lists[x] - {c3}
                if self._prop(child, ALL_RULES):
                    self._guard(self._branching_VI, child, cid, depth + 1, qt["a2"])
                continue
            if not child.colour(assign):
                continue
            child.protected = frozenset(q)
            if self._prop(child, (1, 2, 5, 8)):
                self._guard(self._coloured_q, child, cid)

    def _coloured_q(self, inst: Instance, nid: int) -> None:
        if self.check_claims:
            _, a1, a2 = self._active(inst)
            for r in sorted(a2):
                self._claim(len(inst.graph.neighbours(r) & a1) <= 1, "claim16",
                            "A2 vertex with two A1 neighbours", r)
        if self._prop(inst, ALL_RULES):
            self._branching_VII(inst, nid)

    def _branching_VII(self, inst: Instance, nid: int) -> None:
        g = inst.graph
        c3 = inst.perm[2]
        _, a1, a2 = self._active(inst)
        options: list[dict | None] = [None]
        for r in sorted(a2):
            r1s = sorted(g.neighbours(r) & a1)
            self._claim(len(r1s) == 1, "claim16", "A2 vertex without a unique A1 neighbour", (r, r1s))
            for c in sorted(inst.lists[r1s[0]]):
                options.append({r: c3, r1s[0]: c})
        for cid, assign in self._branch(7, nid, options):
            child = inst.copy()
            if assign is None:
                for r in a2:
                    child.lists[r] = child.lists[r] - {c3}
            else:
                if not child.colour(assign):
                    continue
                (r,) = [v for v, c in assign.items() if c == c3 and v in a2]
                child.protected = child.protected | {r} | g.neighbours(r)
            if self._prop(child, ALL_RULES):
                self._guard(self._vii_leaf, child, cid)

    def _vii_leaf(self, inst: Instance, nid: int) -> None:
        big = sorted(u for u in inst.graph.vertices() if len(inst.lists[u]) == 3)
        self._claim(not big, "branchingVII", "child keeps a list of size 3", big)


def _pool_child(job):
    (mode, strict, budget, check_claims), inst, cid, cols = job
    s = Solver(mode, verify_freeness=False, strict=strict, budget=budget, check_claims=check_claims)
    s._mode = mode
    s._next_id = cid + 1
    child = inst.copy()
    child.colour(dict(zip(inst.n0, cols)))
    try:
        if s._prop(child):
            s._guard(s._phase1, child, cid)
    except _Found as f:
        return f.colouring, s.stats
    return None, s.stats


def solve(graph: Graph, lists: dict, h: str | None = None, verify_freeness: bool = True,
          budget: OracleBudget | None = None, workers: int = 1) -> SolveResult:
    """Decide list 3-colourability; see :class:`Solver` for the knobs."""
    return Solver(h=h, verify_freeness=verify_freeness, budget=budget, workers=workers).solve(graph, lists)


LINEAR_FOREST = "PolynomialLinearForest"
NP_COMPLETE = "NPCompleteExpected"
MAX_CLASSIFY = 7


def classify(h: Graph) -> str:
    """Label a small forbidden graph H by the linear-forest dichotomy for List 3-Colouring."""
    if len(h) > MAX_CLASSIFY:
        raise UsageError(f"classify takes graphs on at most {MAX_CLASSIFY} vertices, got {len(h)}")
    return LINEAR_FOREST if is_linear_forest(h) else NP_COMPLETE
