import pytest

from listcolour.detect import is_free, pattern
from listcolour.engine import Instance, UsageError
from listcolour.gen import random_graph, random_lists
from listcolour.graph import complete, cycle, linear_forest, path, star
from listcolour.oracle import brute_list_colour, verify_colouring
from listcolour.solver import (
    LINEAR_FOREST,
    MAX_BRANCHING_I,
    NP_COMPLETE,
    InputRejected,
    Solver,
    classify,
    detect_h,
    solve,
)

F = frozenset


def full(g):
    return {v: F((1, 2, 3)) for v in g.vertices()}


def test_k4_is_no():
    g = complete(4)
    g.add_edge(3, 4)
    assert solve(g, full(g)).answer is False


def test_c5_is_yes():
    res = solve(cycle(5), full(cycle(5)))
    assert res.answer is True
    assert verify_colouring(cycle(5), full(cycle(5)), res.colouring)


def test_disconnected_input_solved_per_component():
    g = linear_forest(3, 2)
    lists = full(g)
    lists[3] = F((1,))
    lists[4] = F((1,))
    assert solve(g, lists).answer is False
    lists[4] = F((2,))
    assert solve(g, lists).answer is True


def test_freeness_rejection_and_override():
    h, wit = detect_h(linear_forest(3, 5))
    assert h is None and "p3p4" in wit
    with pytest.raises(InputRejected):
        solve(linear_forest(3, 5), full(linear_forest(3, 5)))
    with pytest.raises(InputRejected):
        solve(linear_forest(3, 4), full(linear_forest(3, 4)), h="p3p4")
    res = solve(linear_forest(3, 5), full(linear_forest(3, 5)), verify_freeness=False)
    assert res.answer is True


def test_bad_lists_rejected():
    with pytest.raises(UsageError):
        solve(path(2), {0: F((4,)), 1: F((1,))})
    with pytest.raises(UsageError):
        Solver(h="p2p4")


def test_branching_I_counts():
    inst = Instance(path(7), {}, n0=tuple(range(7)))
    s = Solver()
    assert len(s.branching_I_colourings(inst)) == 192
    inst = Instance(path(7), {v: F((1,)) for v in range(7)}, n0=tuple(range(7)))
    assert s.branching_I_colourings(inst) == []


def test_branching_I_bound_on_generated_graphs():
    for seed in range(5):
        g = random_graph(12, 0.3, forbid=["p3p4", "k4"], require_p7=True, seed=seed)
        s = Solver(h="p3p4")
        s.solve(g, random_lists(g, seed))
        assert all(c <= MAX_BRANCHING_I for c in s.b1_children)


def test_p7_free_goes_to_oracle():
    s = Solver()
    res = s.solve(cycle(6), full(cycle(6)))
    assert res.answer is True
    assert s.stats["oracle_fallback"] == 1


def test_trace_format():
    g = random_graph(12, 0.3, forbid=["p3p4", "k4"], require_p7=True, seed=3)
    res = solve(g, full(g), h="p3p4")
    assert res.trace
    for line in res.trace:
        tag, parent, children = line.split()
        assert tag[0] == "B" and parent.startswith("parent=") and children.startswith("children=")


@pytest.mark.parametrize("h", ["p3p4", "p2p5"])
def test_matches_oracle_on_generated_graphs(h):
    for seed in range(25):
        g = random_graph(13, 0.3, forbid=[h, "k4"], require_p7=True, seed=seed, far_bias=0.5,
                         max_attempts=200000)
        lists = random_lists(g, seed, p_full=0.8)
        res = solve(g, lists, h=h)
        want = brute_list_colour(g, lists).status == "yes"
        assert res.answer == want
        if res.answer:
            assert verify_colouring(g, lists, res.colouring)


def test_strict_mode_default_follows_freeness_flag():
    assert Solver().strict is True
    assert Solver(verify_freeness=False).strict is False


def test_parallel_mode_matches_sequential():
    g = random_graph(13, 0.3, forbid=["p3p4", "k4"], require_p7=True, seed=4)
    lists = random_lists(g, 4)
    a = solve(g, lists, h="p3p4")
    b = solve(g, lists, h="p3p4", workers=2)
    assert a.answer == b.answer and a.colouring == b.colouring


def test_classify_examples():
    assert classify(linear_forest(3, 4)) == LINEAR_FOREST
    assert classify(linear_forest(2, 5)) == LINEAR_FOREST
    assert classify(star(3)) == NP_COMPLETE
    assert classify(cycle(7)) == NP_COMPLETE
    with pytest.raises(UsageError):
        classify(path(8))


def p7_with_hub(attach, extra_edges):
    """P7 on 0..6, vertices 7.. attached to the given path positions, and a hub
    adjacent to all of them."""
    g = path(7)
    ws = list(range(7, 7 + len(attach)))
    hub = ws[-1] + 1
    for w, ts in zip(ws, attach):
        for t in ts:
            g.add_edge(w, t)
        g.add_edge(w, hub)
    for a, b in extra_edges:
        g.add_edge(ws[a], ws[b])
    return g


# found by enumerating hubs over three attached vertices; answers checked with the oracle
DEEP_FIXTURES = [
    ("BIII", p7_with_hub([(3,), (3,), (2, 4)], []), 2),
    ("BIII", p7_with_hub([(3,), (2, 4), (2, 4)], [(0, 1), (0, 2)]), 3),
    ("BII", p7_with_hub([(1, 3, 5), (2, 4, 6), (2, 4, 6)], [(0, 1)]), 2),
]


@pytest.mark.parametrize("tag,g,children", DEEP_FIXTURES)
def test_deep_branching_fixtures(tag, g, children):
    assert is_free(g, pattern("p3p4"))
    s = Solver(h="p3p4")
    res = s.solve(g, full(g))
    assert res.answer is True
    assert verify_colouring(g, full(g), res.colouring)
    assert s.stats[tag] == 1 and s.stats[f"{tag}_children"] == children
    assert any(line.startswith(tag + " ") for line in res.trace)


@pytest.mark.parametrize("tag,g,children", DEEP_FIXTURES)
def test_deep_branching_fixtures_match_oracle(tag, g, children):
    reached = 0
    for seed in range(60):
        lists = random_lists(g, seed, p_full=0.85)
        s = Solver(h="p3p4")
        res = s.solve(g, lists)
        assert res.answer == (brute_list_colour(g, lists).status == "yes")
        reached += s.stats[tag] > 0
    assert reached > 10
