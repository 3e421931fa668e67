"""The NAE-3SAT to 5-colouring reduction and mechanical checks of its lemmas.

``build_G`` produces the list-colouring instance (G, L) for a positive
NAE-3SAT formula, ``build_G_prime`` adds the K5 of k-type vertices that turns
the lists into plain 5-colouring. The verifiers compare both sides with the
exact oracles on small formulas.

Vertex numbering is deterministic: x1, x1bar, x2, x2bar, ..., then C1, C1',
C2, C2', ..., then per clause the three a-type vertices followed by their
three primed twins, then k1..k5.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import product

from . import detect
from .graph import Graph
from .oracle import EXHAUSTED, NAEFormula, OracleBudget, brute_list_colour, nae_all, nae_brute, verify_colouring

CONFIRMED, REFUTED, INCONCLUSIVE = "confirmed", "refuted", "inconclusive"

PALETTE = frozenset(range(1, 6))
X_LIST = frozenset((4, 5))
C_LIST = frozenset((1, 2, 3))
ROLE_TYPE = {"x": "x", "xbar": "x", "C": "C", "C'": "C", "a": "a", "a'": "a", "k": "k"}


@dataclass
class Gadget:
    graph: Graph
    lists: dict[int, frozenset]
    roles: dict[int, tuple]
    prime: bool = False

    def by_role(self, *role) -> int:
        for v, r in self.roles.items():
            if r == role:
                return v
        raise KeyError(role)

    def of_type(self, kind: str) -> list[int]:
        """Vertices whose role tag starts with ``kind`` (``"x"``, ``"C"``, ``"a"``, ``"k"``)."""
        return sorted(v for v, r in self.roles.items() if ROLE_TYPE[r[0]] == kind)


def role_name(role: tuple) -> str:
    """Human-readable role: ``x(1)``, ``xbar(1)``, ``C(2)``, ``a'(3,1)`` and so on."""
    tag, *idx = role
    if tag in ("a", "a'"):
        idx = idx[:2]
    return f"{tag}({','.join(map(str, idx))})"


def build_G(f: NAEFormula) -> Gadget:
    """The graph G with its lists {4,5} / {1,2,3} / {l,4}.

    a-type roles carry the literal position as a third index, so a clause
    that repeats a variable still gets three distinct a-type vertices.
    """
    g = Graph()
    lists: dict[int, frozenset] = {}
    roles: dict[int, tuple] = {}

    def new(role, lst):
        v = len(roles)
        g.add_vertex(v)
        roles[v] = role
        lists[v] = frozenset(lst)
        return v

    x, xbar = {}, {}
    for i in range(1, f.n + 1):
        x[i] = new(("x", i), X_LIST)
        xbar[i] = new(("xbar", i), X_LIST)
        g.add_edge(x[i], xbar[i])
    cs, cps = {}, {}
    for j in range(1, f.m + 1):
        cs[j] = new(("C", j), C_LIST)
        cps[j] = new(("C'", j), C_LIST)
    for xv in list(x.values()) + list(xbar.values()):
        for c in list(cs.values()) + list(cps.values()):
            g.add_edge(xv, c)
    for j, clause in enumerate(f.clauses, start=1):
        plain = [new(("a", var, j, pos), (pos, 4)) for pos, var in enumerate(clause, start=1)]
        primed = [new(("a'", var, j, pos), (pos, 4)) for pos, var in enumerate(clause, start=1)]
        for var, a, ap in zip(clause, plain, primed):
            g.add_edge(x[var], a)
            g.add_edge(a, cs[j])
            g.add_edge(xbar[var], ap)
            g.add_edge(ap, cps[j])
    return Gadget(g, lists, roles, prime=False)


def build_G_prime(f: NAEFormula) -> Gadget:
    """G plus the k-type clique; every list becomes the full palette {1..5}."""
    base = build_G(f)
    g = base.graph.copy()
    roles = dict(base.roles)
    ks = []
    for ell in range(1, 6):
        v = len(roles)
        g.add_vertex(v)
        roles[v] = ("k", ell)
        ks.append(v)
    for a in range(5):
        for b in range(a + 1, 5):
            g.add_edge(ks[a], ks[b])
    for u, lst in base.lists.items():
        for ell in range(1, 6):
            if ell not in lst:
                g.add_edge(ks[ell - 1], u)
    return Gadget(g, {v: PALETTE for v in g.vertices()}, roles, prime=True)


def vertex_count(f: NAEFormula, prime: bool) -> int:
    return 2 * f.n + 8 * f.m + (5 if prime else 0)


def edge_count_prime(f: NAEFormula) -> int:
    return 7 * f.n + 4 * f.n * f.m + 34 * f.m + 10


def pinned_lists(gad: Gadget) -> dict[int, frozenset]:
    """Lists on G' with k_l fixed to colour l (the symmetry pin)."""
    out = {}
    for v, r in gad.roles.items():
        out[v] = frozenset((r[1],)) if r[0] == "k" else PALETTE
    return out


# -- proof translations --------------------------------------------------------


def tau_to_colouring(gad: Gadget, tau: dict[int, bool]) -> dict[int, int] | None:
    """The colouring the forward direction describes, or None if it gets stuck.

    x_i gets 4 when true and 5 when false, its bar the other one; each a-type
    vertex with list {l,4} gets l when its x-type neighbour is coloured 4 and
    4 otherwise; C-type vertices take the smallest colour left free by their
    a-type neighbours. On G' the k-type vertices get k_l = l.
    """
    col: dict[int, int] = {}
    for v, r in gad.roles.items():
        if r[0] == "x":
            col[v] = 4 if tau[r[1]] else 5
        elif r[0] == "xbar":
            col[v] = 5 if tau[r[1]] else 4
        elif r[0] == "k":
            col[v] = r[1]
    for v, r in gad.roles.items():
        if r[0] in ("a", "a'"):
            xv = gad.by_role("x" if r[0] == "a" else "xbar", r[1])
            col[v] = r[3] if col[xv] == 4 else 4
    for v, r in gad.roles.items():
        if r[0] in ("C", "C'"):
            used = {col[u] for u in gad.graph.neighbours(v) if u in col}
            free = sorted(C_LIST - used)
            if not free:
                return None
            col[v] = free[0]
    return col


def normalise_k(gad: Gadget, col: dict[int, int]) -> dict[int, int]:
    """Rename colours so that k_l has colour l (G' only)."""
    ren = {col[gad.by_role("k", ell)]: ell for ell in range(1, 6)}
    return {v: ren[c] for v, c in col.items()}


def decode(gad: Gadget, col: dict[int, int]) -> dict[int, bool]:
    """The reverse direction: x_i is true iff it is coloured 4."""
    if gad.prime:
        col = normalise_k(gad, col)
    return {r[1]: col[v] == 4 for v, r in gad.roles.items() if r[0] == "x"}


# -- verifiers -------------------------------------------------------------------


@dataclass
class LemmaResult:
    status: str
    detail: str = ""
    witness: object = None
    facts: dict = field(default_factory=dict)

    @property
    def confirmed(self) -> bool:
        return self.status == CONFIRMED


def _refuted(detail, witness=None, **facts):
    return LemmaResult(REFUTED, detail, witness, facts)


def verify_lemma11(f: NAEFormula, budget: OracleBudget | None = None, max_assignments: int = 64) -> LemmaResult:
    """NAE-satisfiable iff (G, L) is list-colourable, checked both ways.

    Besides comparing the two oracles, every satisfying assignment (up to
    ``max_assignments``) is pushed through the forward translation and the
    oracle's colouring, if any, is decoded back into an assignment.
    """
    gad = build_G(f)
    if len(gad.graph) != vertex_count(f, False):
        return _refuted("vertex count identity fails", len(gad.graph))
    sat = nae_brute(f)
    res = brute_list_colour(gad.graph, gad.lists, budget)
    if res.status == EXHAUSTED:
        return LemmaResult(INCONCLUSIVE, "oracle budget exhausted")
    facts = {"satisfiable": sat is not None, "colourable": res.answer}
    if (sat is not None) != res.answer:
        return _refuted("satisfiability and colourability disagree", sat or res.colouring, **facts)
    for t, tau in enumerate(nae_all(f)):
        if t >= max_assignments:
            break
        col = tau_to_colouring(gad, tau)
        if col is None or not verify_colouring(gad.graph, gad.lists, col):
            return _refuted("forward translation of a satisfying assignment is not a colouring", tau, **facts)
    if res.colouring is not None:
        back = decode(gad, res.colouring)
        if not f.satisfied_by(back):
            return _refuted("decoded assignment does not satisfy the formula", back, **facts)
    return LemmaResult(CONFIRMED, facts=facts)


def verify_lemma12(f: NAEFormula, budget: OracleBudget | None = None, raw: bool | None = None) -> LemmaResult:
    """NAE-satisfiable iff G' is 5-colourable.

    The main query pins k_l to colour l. With ``raw`` (default: only when
    m <= 1) an unpinned 5-colouring search of G' is also run and must agree.
    """
    gad = build_G_prime(f)
    if len(gad.graph) != vertex_count(f, True):
        return _refuted("vertex count identity fails", len(gad.graph))
    sat = nae_brute(f)
    res = brute_list_colour(gad.graph, pinned_lists(gad), budget)
    if res.status == EXHAUSTED:
        return LemmaResult(INCONCLUSIVE, "oracle budget exhausted")
    facts = {"satisfiable": sat is not None, "colourable": res.answer}
    if (sat is not None) != res.answer:
        return _refuted("satisfiability and 5-colourability disagree", sat or res.colouring, **facts)
    if res.colouring is not None:
        base = build_G(f)
        restricted = {v: res.colouring[v] for v in base.graph.vertices()}
        if not verify_colouring(base.graph, base.lists, restricted):
            return _refuted("pinned colouring does not respect L on G", restricted, **facts)
        if not f.satisfied_by(decode(gad, res.colouring)):
            return _refuted("decoded assignment does not satisfy the formula", res.colouring, **facts)
    if sat is not None:
        col = tau_to_colouring(gad, sat)
        if col is None or not verify_colouring(gad.graph, gad.lists, col):
            return _refuted("extension with k_l = l is not a 5-colouring", sat, **facts)
    if raw is None:
        raw = f.m <= 1
    if raw:
        free = brute_list_colour(gad.graph, gad.lists, budget)
        if free.status == EXHAUSTED:
            return LemmaResult(INCONCLUSIVE, "oracle budget exhausted on the unpinned search")
        facts["raw_colourable"] = free.answer
        if free.answer != res.answer:
            return _refuted("pinned and unpinned searches disagree", free.colouring, **facts)
        if free.colouring is not None and not f.satisfied_by(decode(gad, free.colouring)):
            return _refuted("decoded unpinned colouring does not satisfy the formula", free.colouring, **facts)
    return LemmaResult(CONFIRMED, facts=facts)


def verify_lemma13(f: NAEFormula) -> LemmaResult:
    """G' has no induced P3+P5."""
    gad = build_G_prime(f)
    w = detect.find_induced(gad.graph, detect.pattern("p3p5"))
    if w is not None:
        return _refuted("G' contains an induced P3+P5", w)
    return LemmaResult(CONFIRMED)


VERIFIERS = {11: verify_lemma11, 12: verify_lemma12, 13: lambda f, budget=None: verify_lemma13(f)}


# -- formula generation ----------------------------------------------------------


def random_formula(n: int, m: int, seed: int = 0) -> NAEFormula:
    """m clauses, each a sorted triple of distinct variables from 1..n."""
    if m and n < 3:
        raise ValueError("clauses without repeated variables need n >= 3")
    rng = random.Random(seed)
    return NAEFormula(n, [tuple(sorted(rng.sample(range(1, n + 1), 3))) for _ in range(m)])


def all_formulas(n: int, m: int):
    """Every formula with m ordered clauses over distinct variables of 1..n."""
    triples = [t for t in product(range(1, n + 1), repeat=3) if len(set(t)) == 3]
    for clauses in product(triples, repeat=m):
        yield NAEFormula(n, list(clauses))
