import numpy as np
import pytest

from qwspec.errors import (
    DimensionMismatch,
    DuplicateEdge,
    IsolatedVertex,
    ParseError,
    SelfLoopForbidden,
)
from qwspec.graphs import (
    Digraph,
    WeightFunction,
    cycle_graph,
    grover_weights,
    parse_edge_list,
    parse_graph,
    parse_graph_json,
    path_graph,
    random_connected_graph,
    random_tree,
    random_weights,
    star_graph,
    validate_weights,
)


def test_parse_single_edge():
    g = parse_graph("0 1")
    assert g.vertex_count == 2
    assert g.arc_count == 2
    assert (g.origins, g.termini) == ((0, 1), (1, 0))
    assert g.involution == (1, 0)


def test_parse_triangle():
    g = parse_graph("0 1\n1 2\n2 0")
    assert g.vertex_count == 3
    assert g.arc_count == 6
    assert g.edges() == [(0, 1), (0, 2), (1, 2)]


def test_parse_duplicate_edge():
    with pytest.raises(DuplicateEdge):
        parse_graph("0 1\n0 1")
    # the reversed orientation is the same undirected edge
    with pytest.raises(DuplicateEdge):
        parse_graph("0 1\n1 0")


def test_parse_self_loop_reports_line():
    with pytest.raises(SelfLoopForbidden) as err:
        parse_graph("0 1\n1 2\n3 3")
    assert err.value.line == 3
    assert "line 3" in str(err.value)


def test_parse_malformed_line():
    with pytest.raises(ParseError) as err:
        parse_graph("0 1\nnope nope")
    assert err.value.line == 2
    with pytest.raises(ParseError):
        parse_graph("0 1 0.5")  # a lone third column is not a weight pair


def test_parse_comments_blank_lines_and_sparse_ids():
    text = "# a comment\n\n10 30\n30 20\n"
    g = parse_graph(text)
    assert g.vertex_count == 3
    # compacted in first-appearance order
    assert g.vertex_labels == (10, 30, 20)
    assert g.edges() == [(0, 1), (1, 2)]


def test_parse_weight_columns():
    g, w = parse_edge_list("0 1 0.6,0.8 1.0\n")
    assert w is not None
    assert np.allclose(w.weights, [0.6 + 0.8j, 1.0])
    # orientation follows the line; compact id 0 is raw vertex 1 (first seen),
    # so the forward arc starts there and carries the third column
    g2, w2 = parse_edge_list("1 0 1.0 0.5,-0.5\n")
    assert g2.vertex_labels == (1, 0)
    assert np.allclose(w2.weights, [1.0, 0.5 - 0.5j])


def test_parse_weights_all_or_none():
    with pytest.raises(ParseError):
        parse_edge_list("0 1 1.0 1.0\n1 2\n")


def test_parse_json_roundtrip_and_errors():
    g, w = parse_graph_json('{"edges": [[0, 1], [1, 2]]}')
    assert g.vertex_count == 3 and w is None
    g2, w2 = parse_graph_json(
        '{"edges": [[0, 1]], "weights": {"0": [0.6, 0.0], "1": [1.0, 0.0]}}'
    )
    assert np.allclose(w2.weights, [0.6, 1.0])
    with pytest.raises(ParseError):
        parse_graph_json("not json")
    with pytest.raises(ParseError):
        parse_graph_json('{"edges": [[0, 1]], "weights": {"0": [1.0, 0.0]}}')
    with pytest.raises(IsolatedVertex):
        parse_graph_json('{"edges": [[0, 1]], "vertex_count": 3}')


def test_from_edges_rejects_isolated_declared_vertex():
    with pytest.raises(IsolatedVertex):
        Digraph.from_edges([(0, 1)], vertex_count=3)


def test_grover_weights_values(p2, c3, k13):
    assert np.allclose(grover_weights(p2).weights, [1.0, 1.0])
    assert np.allclose(grover_weights(c3).weights, np.full(6, 1 / np.sqrt(2)))
    w = grover_weights(k13).weights
    origins = np.asarray(k13.origins)
    assert np.allclose(w[origins == 0], 1 / np.sqrt(3))
    assert np.allclose(w[origins != 0], 1.0)


def test_validate_weights_pass(c3):
    check = validate_weights(c3, grover_weights(c3), tol_norm=1e-12)
    assert check.passed
    assert np.allclose(check.vertex_defects, 0.0)


def test_validate_weights_defect(p2):
    check = validate_weights(p2, WeightFunction(np.array([0.6, 1.0])))
    assert not check.passed
    assert check.vertex_defects[0] == pytest.approx(0.64)
    assert check.vertex_defects[1] == pytest.approx(0.0)


def test_validate_weights_zero_weight(p2):
    check = validate_weights(p2, WeightFunction(np.array([0.0, 1.0])))
    assert not check.passed
    assert check.zero_arcs == (0,)


def test_validate_weights_length_mismatch(p2):
    with pytest.raises(DimensionMismatch):
        validate_weights(p2, WeightFunction(np.array([1.0])))


def test_involution_and_arc_count_properties(rng):
    for _ in range(10):
        n = int(rng.integers(2, 15))
        g = random_connected_graph(n, rng)
        inv = np.asarray(g.involution)
        assert np.array_equal(inv[inv], np.arange(g.arc_count))
        assert np.all(inv != np.arange(g.arc_count))
        assert g.arc_count == 2 * g.edge_count
        origins = np.asarray(g.origins)
        termini = np.asarray(g.termini)
        assert np.array_equal(origins[inv], termini)


def test_grover_weights_always_validate(rng):
    for _ in range(10):
        g = random_connected_graph(int(rng.integers(2, 15)), rng)
        assert validate_weights(g, grover_weights(g), tol_norm=1e-12).passed


def test_random_weights_validate(rng):
    for _ in range(10):
        g = random_connected_graph(int(rng.integers(2, 15)), rng)
        assert validate_weights(g, random_weights(g, rng), tol_norm=1e-12).passed


def test_random_connected_graph_is_deterministic():
    g1 = random_connected_graph(9, np.random.default_rng(5))
    g2 = random_connected_graph(9, np.random.default_rng(5))
    assert g1 == g2
    assert g1.is_connected()


def test_random_tree(rng):
    for _ in range(5):
        n = int(rng.integers(2, 20))
        t = random_tree(n, rng)
        assert t.edge_count == n - 1
        assert t.is_connected()
        assert t.is_bipartite()


def test_named_builders():
    assert cycle_graph(4).edge_count == 4
    assert star_graph(3).degrees.tolist() == [3, 1, 1, 1]
    assert not cycle_graph(3).is_bipartite()
    assert cycle_graph(4).is_bipartite()
    with pytest.raises(ParseError):
        path_graph(1)


def test_content_hash_ignores_edge_order():
    # same first-appearance labeling, shuffled edge lines: identical structure
    g1 = parse_graph("0 1\n1 2\n0 2")
    g2 = parse_graph("0 1\n0 2\n1 2")
    assert g1.content_hash() == g2.content_hash()
    assert g1 == g2
