import json

import numpy as np
import pytest

from radial_mm.bundled import example_path
from radial_mm.graph import (DisconnectedGraphError, GraphFormatError, emit_graph, load_graph,
                             parse_graph, rooted_profile, shortest_paths_from)
from radial_mm.mmcore import ValidationError, cumulative_distribution

from helpers import floyd_warshall, random_connected_graph


def test_parse_example_graphs(left, right):
    assert left.n == 6 and len(left.edges) == 6
    assert left.features[:, 0].tolist() == [1, 1, 2, 2, 1, 1]
    assert right.n == 6 and len(right.edges) == 6


@pytest.mark.parametrize("name", ["sixnode_a", "sixnode_b"])
def test_json_and_tsv_agree(name):
    a = load_graph(str(example_path(name, "json")))
    b = load_graph(str(example_path(name, "tsv")))
    assert a.node_ids == b.node_ids
    assert np.array_equal(a.features, b.features)
    assert a.edges == b.edges


def test_single_node_graph():
    g = parse_graph('{"nodes":[{"id":"x","features":[1]}],"edges":[]}')
    assert g.n == 1
    assert shortest_paths_from(g, "x") == {"x": 0.0}
    assert rooted_profile(g, "x").atoms == [(0.0, 1.0)]


@pytest.mark.parametrize("text, fmt, where", [
    ('{"nodes":[{"id":"a","features":[1]},{"id":"b","features":[1]}],'
     '"edges":[{"a":"a","b":"b","len":0}]}', "json", "edges[0]"),
    ('{"nodes":[{"id":"a","features":[1]},{"id":"b","features":[1]}],'
     '"edges":[{"a":"a","b":"b","len":-2}]}', "json", "edges[0]"),
    ('{"nodes":[{"id":"a","features":[-1]}]}', "json", "nodes[0]"),
    ('{"nodes":[{"id":"a","features":[1]},{"id":"b","features":[1, 2]}]}', "json", "nodes[1]"),
    ('{"nodes":[{"id":"a","features":[1]}],"edges":[{"a":"a","b":"z","len":1}]}', "json",
     "edges[0]"),
    ('{"nodes":[{"id":"a","features":[1]},{"id":"a","features":[1]}]}', "json", "nodes[1]"),
    ('{"nodes":[{"id":"a","features":["x"]}]}', "json", "nodes[0]"),
    ('{"nodes": [', "json", "line 1"),
    ("N a 1\nN b 1\nE a b 1\nE b a 2\n", "tsv", "line 4"),
    ("N a 1\nE a a 1\n", "tsv", "line 2"),
    ("N a 1\nN b x\n", "tsv", "line 2"),
    ("N a 1\nQ b\n", "tsv", "line 2"),
    ("N a 1\nN b 1 2\n", "tsv", "line 2"),
    ("N a 1\nE a b\n", "tsv", "line 2"),
])
def test_malformed_input_reports_location(text, fmt, where):
    with pytest.raises(GraphFormatError) as exc:
        parse_graph(text, fmt)
    assert where in str(exc.value)


def test_tsv_comments_and_bytes():
    g = parse_graph(b"# header\nN a 1 2 # trailing\n\nN b 0 1\nE a b 2.5\n", "tsv")
    assert g.k == 2 and g.edges == (("a", "b", 2.5),)


def test_invalid_utf8():
    with pytest.raises(GraphFormatError):
        parse_graph(b"N \xff 1\n", "tsv")


@pytest.mark.parametrize("fmt", ["json", "tsv"])
def test_round_trip(fmt):
    rng = np.random.default_rng(3)
    g = random_connected_graph(rng, 8, lambda: float(rng.uniform(0.1, 3)))
    h = parse_graph(emit_graph(g, fmt), fmt)
    assert h.node_ids == g.node_ids
    assert np.array_equal(h.features, g.features)
    assert {frozenset(e[:2]): e[2] for e in h.edges} == {frozenset(e[:2]): e[2] for e in g.edges}


def test_example_distances(left, right):
    assert shortest_paths_from(left, "v1") == {
        "v1": 0, "v2": 1, "v3": 2, "v4": 2, "v5": 3, "v6": 3}
    assert list(shortest_paths_from(right, "u1").values()) == [0, 1, 2, 2, 3, 4]


def test_example_profiles(left, right):
    assert sorted(rooted_profile(left, "v1").atoms) == [
        (0, 1), (1, 1), (2, 2), (2, 2), (3, 1), (3, 1)]
    assert sorted(rooted_profile(right, "u1").atoms) == [
        (0, 1), (1, 1), (2, 2), (2, 2), (3, 1), (4, 1)]
    # hand-run from u3: u2 and u5 at 1, u1, u4, u6 at 2
    f = cumulative_distribution(rooted_profile(right, "u3"))
    assert f.pairs() == [(0, 2), (1, 4), (2, 8)]


def test_unknown_origin_and_feature(left):
    with pytest.raises(ValidationError):
        shortest_paths_from(left, "nope")
    with pytest.raises(ValidationError):
        rooted_profile(left, "v1", feature_index=1)


def test_disconnected_policy():
    g = parse_graph("N a 1\nN b 2\nN c 4\nE a b 1\n", "tsv")
    with pytest.raises(DisconnectedGraphError) as exc:
        shortest_paths_from(g, "a")
    assert exc.value.unreachable == ["c"]
    with pytest.raises(DisconnectedGraphError):
        rooted_profile(g, "a")
    assert shortest_paths_from(g, "a", restrict_reachable=True) == {"a": 0, "b": 1}
    p = rooted_profile(g, "a", restrict_reachable=True)
    assert p.total_mass == 3


def test_quantization_merges_rounding_noise():
    g = parse_graph("N a 1\nN b 1\nN c 1\nN d 1\nE a b 0.1\nE b c 0.2\nE a d 0.3\n", "tsv")
    raw = cumulative_distribution(rooted_profile(g, "a"))
    assert len(raw.breakpoints) == 4  # 0.1 + 0.2 != 0.3
    rounded = cumulative_distribution(rooted_profile(g, "a", decimals=9))
    assert rounded.pairs() == [(0, 1), (0.1, 2), (0.3, 4)]


def test_dijkstra_matches_floyd_warshall_float_lengths():
    rng = np.random.default_rng(11)
    for _ in range(100):
        n = int(rng.integers(1, 11))
        g = random_connected_graph(rng, n, lambda: float(rng.uniform(0.01, 10)))
        full = floyd_warshall(g)
        for i, nid in enumerate(g.node_ids):
            got = np.array(list(shortest_paths_from(g, nid).values()))
            np.testing.assert_allclose(got, full[i], rtol=1e-12)


def test_shortest_path_metric_axioms():
    rng = np.random.default_rng(5)
    for _ in range(50):
        n = int(rng.integers(2, 9))
        g = random_connected_graph(rng, n, lambda: float(rng.integers(1, 6)))
        d = np.array([list(shortest_paths_from(g, nid).values()) for nid in g.node_ids])
        assert np.array_equal(d, d.T)
        assert np.all(d[~np.eye(n, dtype=bool)] > 0)
        assert np.all(d[:, None, :] <= d[:, :, None] + d[None, :, :])


def test_profile_mass_equals_feature_sum():
    rng = np.random.default_rng(8)
    for _ in range(20):
        g = random_connected_graph(rng, 7, lambda: float(rng.uniform(0.5, 2)))
        for j in range(g.k):
            assert rooted_profile(g, "n0", j).total_mass == pytest.approx(g.features[:, j].sum())


def test_json_schema_keys():
    g = parse_graph(emit_graph(parse_graph("N a 1.5\nN b 2\nE a b 3\n", "tsv"), "json"))
    doc = json.loads(emit_graph(g, "json"))
    assert doc["nodes"][0] == {"id": "a", "features": [1.5]}
    assert doc["edges"][0] == {"a": "a", "b": "b", "len": 3.0}
