"""
Tests for the bipartite graph path model.
"""
import json
from fractions import Fraction

import pytest

from tlfree_core.exceptions import ArgumentError, ConfigurationError, SerializationError
from tlfree_core.graph import (
    BipartiteGraph,
    LoopWord,
    MCConfig,
    alternating_word,
    lf_parameter,
    loop_vs_diagram,
    mc_estimate,
    path_graph,
    single_edge,
    wick_expectation,
    wick_moments,
)


@pytest.fixture
def k22():
    """Complete bipartite graph K_{2,2}: all weights 1, delta 2."""
    edges = [("a", "x"), ("b", "x"), ("a", "y"), ("b", "y")]
    return BipartiteGraph(["a", "b"], ["x", "y"], edges, {v: 1 for v in "abxy"}, 2)


class TestGraph:
    def test_single_edge(self):
        G = single_edge()
        assert G.exact
        assert G.vertices == ["v", "w"]
        assert G.source(0) == "v" and G.target(0) == "w"

    def test_path_graph(self):
        G = path_graph(3)
        assert not G.exact
        assert G.delta == pytest.approx(2 ** 0.5)
        assert G.mu["a2"] == pytest.approx(2 ** 0.5)
        with pytest.raises(ArgumentError):
            path_graph(1)

    @pytest.mark.parametrize("plus, minus, edges, mu, delta", [
        (["v"], ["w"], [("v", "w")], {"v": 1, "w": 1}, 2),
        (["v"], ["w"], [("w", "v")], {"v": 1, "w": 1}, 1),
        (["v"], ["w"], [("v", "w")], {"v": 1, "w": 0}, 1),
        (["v", "u"], ["w"], [("v", "w")], {"v": 1, "u": 1, "w": 1}, 1),
        (["v"], ["v"], [], {"v": 1}, 1),
    ])
    def test_validation(self, plus, minus, edges, mu, delta):
        with pytest.raises(ArgumentError):
            BipartiteGraph(plus, minus, edges, mu, delta)

    def test_json(self, k22, temp_dir):
        data = k22.to_json()
        assert data["delta"] == "2"
        again = BipartiteGraph.from_json(json.loads(json.dumps(data)))
        assert again.edges == k22.edges and again.mu == k22.mu
        path = f"{temp_dir}/k22.json"
        with open(path, "w") as f:
            json.dump(data, f)
        assert BipartiteGraph.load(path).delta == 2
        with pytest.raises(SerializationError):
            BipartiteGraph.from_json({"plus": ["v"]})


class TestLoopWords:
    def test_validation(self, k22):
        assert LoopWord(((0, 1), (1, 0))).start(k22) == "a"
        with pytest.raises(ArgumentError):
            LoopWord(((0, 1),)).start(k22)
        with pytest.raises(ArgumentError):
            LoopWord(((0, 2), (2, 0))).start(k22)
        with pytest.raises(ArgumentError):
            LoopWord(((0, 7),)).start(k22)
        with pytest.raises(ArgumentError):
            LoopWord(((0, 1), (1, 0)), base="b").start(k22)
        with pytest.raises(ArgumentError):
            LoopWord(()).start(k22)

    def test_rotate_and_json(self):
        w = LoopWord(((0, 1), (1, 0)))
        assert w.rotate() == LoopWord(((1, 0), (0, 1)))
        assert LoopWord.from_json(w.to_json()) == w
        assert LoopWord.from_json({"letters": [], "base": "a"}).base == "a"
        with pytest.raises(SerializationError):
            LoopWord.from_json({"letters": [["x", 1]]})


class TestWick:
    def test_single_edge_moments_are_catalan(self):
        assert wick_moments(single_edge(), 4) == [1, 1, 2, 5, 14]

    def test_empty_word(self):
        assert wick_expectation(LoopWord((), "v"), single_edge()) == 1

    def test_cross_term(self, k22):
        assert wick_expectation(LoopWord(((0, 1), (1, 0))), k22) == Fraction(1)

    def test_weights_enter(self):
        G = BipartiteGraph(["v"], ["w"], [("v", "w")], {"v": 2, "w": 2}, 1)
        assert wick_moments(G, 2) == [1, 2, 8]

    def test_path_graph_moments(self):
        assert wick_moments(path_graph(3), 2) == pytest.approx([1.0, 1.0, 2.0])

    def test_loop_normalization(self):
        G = BipartiteGraph(["v"], ["w"], [("v", "w")], {"v": 4, "w": 4}, 1)
        raw, value = loop_vs_diagram(alternating_word(0, 0, 1), G)
        assert raw == 4
        assert value == pytest.approx(1.0)

    @pytest.mark.parametrize("graph, words", [
        ("single_edge", [alternating_word(0, 0, 3)]),
        ("k22", [
            LoopWord(((0, 1), (1, 0), (2, 3), (3, 2))),
            LoopWord(((0, 1), (3, 2), (2, 3), (1, 0))),
            LoopWord(((0, 1), (3, 2), (0, 0))),
        ]),
        ("path_graph", [alternating_word(0, 1, 2), LoopWord(((0, 1), (1, 0), (0, 0), (0, 0)))]),
    ])
    def test_rotation_invariance(self, k22, graph, words):
        G = {"single_edge": single_edge(), "k22": k22, "path_graph": path_graph(3)}[graph]
        for w in words:
            raw, value = loop_vs_diagram(w, G)
            for clicks in range(1, len(w)):
                turned = w.rotate(clicks)
                assert float(wick_expectation(turned, G)) == pytest.approx(float(raw))
                assert loop_vs_diagram(turned, G)[1] == pytest.approx(value)

    def test_rotation_moves_the_base_weight(self):
        # A_4 has plus weights 1 and [3]_q, so only mu_base * E is cyclic
        G = path_graph(4)
        w = LoopWord(((0, 1), (1, 0)))
        turned = w.rotate()
        assert w.start(G) == "a1" and turned.start(G) == "a3"
        assert wick_expectation(w, G) == pytest.approx(G.mu["a3"])
        assert wick_expectation(turned, G) == pytest.approx(1.0)
        assert G.mu["a1"] * wick_expectation(w, G) == pytest.approx(G.mu["a3"] * wick_expectation(turned, G))


class TestMonteCarlo:
    def test_config_validation(self):
        with pytest.raises(ConfigurationError):
            MCConfig(target_dim=0)
        with pytest.raises(ConfigurationError):
            MCConfig(seed=-1)
        assert MCConfig(10).block_dims(path_graph(3)) == {"a1": 10, "a3": 10}

    def test_empty_word(self):
        assert mc_estimate(LoopWord((), "v"), single_edge(), MCConfig(4, 2)) == (1.0, 0.0)

    def test_reproducible_and_thread_independent(self):
        w = alternating_word(0, 0, 2)
        first = mc_estimate(w, single_edge(), MCConfig(40, 50, 11))
        assert mc_estimate(w, single_edge(), MCConfig(40, 50, 11)) == first
        assert mc_estimate(w, single_edge(), MCConfig(40, 50, 11, threads=3)) == first
        assert mc_estimate(w, single_edge(), MCConfig(40, 50, 12)) != first

    @pytest.mark.slow
    def test_fourth_moment(self):
        w = alternating_word(0, 0, 2)
        mean, stderr = mc_estimate(w, single_edge(), MCConfig(200, 500, 7))
        assert abs(mean - 2) <= 3 * stderr + 0.05

    @pytest.mark.slow
    def test_error_shrinks_with_dimension(self):
        w = alternating_word(0, 0, 2)
        exact = wick_expectation(w, single_edge())
        errors, stderrs = [], []
        for n in (50, 100, 200):
            runs = [mc_estimate(w, single_edge(), MCConfig(n, 40, seed)) for seed in (3, 5, 8)]
            errors.append(sum(abs(mean - exact) for mean, _ in runs) / len(runs))
            stderrs.append(sum(se for _, se in runs) / len(runs))
        assert stderrs[2] < stderrs[1] < stderrs[0]
        assert errors[1] <= errors[0] + 2 * stderrs[0]
        assert errors[2] <= errors[1] + 2 * stderrs[1]
        assert errors[2] <= errors[0] + stderrs[0]

    def test_cross_term_estimate(self, k22):
        mean, stderr = mc_estimate(LoopWord(((0, 1), (1, 0))), k22, MCConfig(60, 100, 5))
        assert abs(mean - 1) <= 4 * stderr + 0.05


def test_lf_parameter():
    assert lf_parameter(2, 1, 1) == 1.75
    assert lf_parameter(2, 1, 2) == pytest.approx(1 + 3 / 16)
    with pytest.raises(ArgumentError):
        lf_parameter(1, 1, 1)
    with pytest.raises(ArgumentError):
        lf_parameter(2, 0, 1)
