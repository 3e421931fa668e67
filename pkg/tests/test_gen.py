import pytest

from listcolour import detect
from listcolour.gen import SamplingExhausted, random_graph, random_lists, uniform_lists


def test_deterministic_by_seed():
    a = random_graph(14, 0.3, forbid=["k4", "p3p4"], require_p7=True, seed=1)
    b = random_graph(14, 0.3, forbid=["k4", "p3p4"], require_p7=True, seed=1)
    assert a == b
    assert random_lists(a, 1) == random_lists(b, 1)


@pytest.mark.parametrize("h", ["p3p4", "p2p5"])
def test_outputs_pass_freeness_check(h):
    for seed in range(10):
        g = random_graph(14, 0.3, forbid=["k4", h], require_p7=True, seed=seed, max_attempts=100000)
        assert g.is_connected()
        assert detect.find_induced(g, detect.pattern(h)) is None
        assert detect.contains_K4(g) is None
        assert detect.find_induced_path(g, 7) is not None


def test_forbidding_an_edge():
    g = random_graph(6, 0.5, forbid=["p2"], seed=2, connected=False)
    assert g.num_edges() == 0
    with pytest.raises(SamplingExhausted) as exc:
        random_graph(6, 0.5, forbid=["p2"], seed=2, max_attempts=30)
    assert exc.value.attempts > 30


def test_limits():
    with pytest.raises(ValueError):
        random_graph(10**4 + 1, 0.1)
    with pytest.raises(ValueError):
        random_graph(5, 0.1, require_p7=True)


def test_list_generators_nonempty():
    g = random_graph(10, 0.3, seed=0)
    for lists in (random_lists(g, 3), uniform_lists(g, 3)):
        assert all(L and L <= {1, 2, 3} for L in lists.values())
