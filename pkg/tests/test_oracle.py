import random
from itertools import combinations, product

import networkx as nx
import pytest

from listcolour.graph import Graph, complete, cycle, path
from listcolour.oracle import (
    EXHAUSTED,
    NAEFormula,
    OracleBudget,
    brute_list_colour,
    nae_all,
    nae_brute,
    oracle_answer,
    verify_colouring,
)


def full(g, k=3):
    return {v: frozenset(range(1, k + 1)) for v in g.vertices()}


def petersen():
    nxg = nx.petersen_graph()
    return Graph(nxg.nodes, nxg.edges)


def test_k4_not_3_colourable():
    assert brute_list_colour(complete(4), full(complete(4))).status == "no"


def test_forest_two_colourable():
    rng = random.Random(0)
    g = Graph(range(12))
    for v in range(1, 12):
        g.add_edge(v, rng.randrange(v))
    res = brute_list_colour(g, full(g, 2))
    assert res.status == "yes"
    assert verify_colouring(g, full(g, 2), res.colouring)


def test_petersen_3_colourable_in_every_order():
    g = petersen()
    for order in ("smallest-list", "ascending", "max-degree"):
        res = brute_list_colour(g, full(g), order=order)
        assert res.status == "yes"
        assert verify_colouring(g, full(g), res.colouring)
    assert brute_list_colour(g, full(g, 2)).status == "no"


def test_budget_exhaustion_is_not_an_answer():
    g = complete(9)
    for u, v in [(0, 1), (2, 3), (4, 5), (6, 7)]:
        g.remove_edge(u, v)
    res = brute_list_colour(g, full(g, 4), OracleBudget(nodes=3))
    assert res.status == EXHAUSTED
    assert res.answer is None
    with pytest.raises(RuntimeError):
        oracle_answer(g, full(g, 4), OracleBudget(nodes=3))


def test_empty_list_and_empty_graph():
    g = path(3)
    lists = full(g)
    lists[1] = frozenset()
    assert brute_list_colour(g, lists).status == "no"
    assert brute_list_colour(Graph(), {}).status == "yes"


def test_unknown_order_rejected():
    with pytest.raises(ValueError):
        brute_list_colour(path(2), full(path(2)), order="random")


def test_orderings_agree_and_bipartite_check():
    rng = random.Random(11)
    for _ in range(1000):
        n = rng.randint(1, 9)
        g = Graph(range(n), [(u, v) for u, v in combinations(range(n), 2) if rng.random() < 0.35])
        lists = {v: frozenset(rng.sample([1, 2, 3], rng.randint(1, 3))) for v in range(n)}
        a = brute_list_colour(g, lists, order="ascending")
        b = brute_list_colour(g, lists, order="max-degree")
        assert a.status == b.status
        if a.colouring:
            assert verify_colouring(g, lists, a.colouring)
        two = brute_list_colour(g, full(g, 2)).status == "yes"
        assert two == nx.is_bipartite(nx.Graph(list(g.edges())) if g.num_edges() else nx.empty_graph(1))


def test_nae_examples():
    tau = nae_brute(NAEFormula(3, [(1, 2, 3)]))
    assert tau is not None and len(set(tau.values())) == 2
    assert nae_brute(NAEFormula(1, [(1, 1, 1)])) is None
    assert nae_brute(NAEFormula(0, [])) == {}


def test_nae_limits_and_validation():
    with pytest.raises(ValueError):
        nae_brute(NAEFormula(25, []))
    with pytest.raises(ValueError):
        NAEFormula(2, [(1, 2, 3)])
    with pytest.raises(ValueError):
        NAEFormula(3, [(1, 2)])


def test_nae_against_truth_table():
    rng = random.Random(3)
    for _ in range(200):
        clauses = [tuple(rng.randint(1, 3) for _ in range(3)) for _ in range(rng.randint(0, 4))]
        f = NAEFormula(3, clauses)
        table = [bits for bits in product((False, True), repeat=3)
                 if all(len({bits[x - 1] for x in c}) == 2 for c in clauses)]
        assert (nae_brute(f) is not None) == bool(table)
        assert len(list(nae_all(f))) == len(table)
