import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fgl.graphio import (GraphParseError, from_graph6, from_json_obj,
                         read_graph, to_graph6, to_json_obj, write_graph)
from fgl.graphs import Graph


def random_graph(seed, v=None, p=0.3):
    rng = np.random.default_rng(seed)
    if v is None:
        v = int(rng.integers(1, 40))
    mat = np.triu(rng.random((v, v)) < p, 1)
    return Graph.from_bool(mat | mat.T)


def test_known_graph6_values():
    # the worked example from McKay's format description
    g = Graph.from_edges(5, [(0, 2), (0, 4), (1, 3), (3, 4)])
    assert to_graph6(g) == "DQc"
    assert from_graph6("DQc") == g
    k4 = Graph.from_edges(4, [(i, j) for i in range(4) for j in range(i + 1, 4)])
    assert to_graph6(k4) == "C~"


@given(st.integers(0, 10 ** 6))
@settings(max_examples=40, deadline=None)
def test_graph6_matches_networkx(seed):
    nx = pytest.importorskip("networkx")
    g = random_graph(seed)
    ours = to_graph6(g)
    ng = nx.from_graph6_bytes(ours.encode())
    assert set(ng.nodes) == set(range(g.v))
    assert {tuple(sorted(e)) for e in ng.edges} == set(g.edges())
    theirs = nx.to_graph6_bytes(ng, header=False).decode().strip()
    assert theirs == ours


@given(st.integers(0, 10 ** 6))
@settings(max_examples=60, deadline=None)
def test_graph6_roundtrip(seed):
    g = random_graph(seed)
    assert from_graph6(to_graph6(g)) == g


def test_graph6_large_header():
    g = random_graph(5, v=100)
    s = to_graph6(g)
    assert s.startswith("~")
    assert from_graph6(s) == g


def test_graph6_header_prefix_accepted():
    g = Graph.from_edges(5, [(0, 2), (0, 4), (1, 3), (3, 4)])
    assert from_graph6(">>graph6<<DQc") == g


def test_graph6_parse_errors():
    with pytest.raises(GraphParseError):
        from_graph6("")
    with pytest.raises(GraphParseError):
        from_graph6("D")  # truncated body
    with pytest.raises(GraphParseError):
        from_graph6("D\x01\x01")


def test_json_roundtrip_and_canonical_order():
    g = random_graph(11)
    obj = to_json_obj(g)
    assert obj["edges"] == sorted(obj["edges"])
    assert all(i < j for i, j in obj["edges"])
    assert from_json_obj(obj) == g


def test_json_rejects_bad_input():
    with pytest.raises(GraphParseError):
        from_json_obj({"edges": []})
    with pytest.raises(GraphParseError):
        from_json_obj({"v": 2, "edges": [[0, 0]]})
    with pytest.raises(GraphParseError):
        from_json_obj({"v": 2, "edges": [[0, 5]]})


def test_file_roundtrip_both_formats(tmp_path):
    g = random_graph(3, v=23)
    for name in ("g.json", "g.g6"):
        path = str(tmp_path / name)
        write_graph(path, g)
        assert read_graph(path) == g


def test_write_is_deterministic(tmp_path):
    g = random_graph(9, v=17)
    p1, p2 = str(tmp_path / "a.json"), str(tmp_path / "b.json")
    write_graph(p1, g)
    write_graph(p2, g)
    assert open(p1, "rb").read() == open(p2, "rb").read()
    obj = json.loads(open(p1).read())
    assert obj["v"] == 17
