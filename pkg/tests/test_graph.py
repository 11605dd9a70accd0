import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hipermotif import (
    DuplicateEdge,
    EndpointOutOfRange,
    PatternSelfLoop,
    attribute_set,
    build_graph,
    check_edge_attrs,
    check_vertex_attrs,
)
from hipermotif.errors import GraphError


@st.composite
def digraphs(draw, max_n=8, loops=True):
    n = draw(st.integers(1, max_n))
    pairs = [(u, v) for u in range(n) for v in range(n) if loops or u != v]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs)))
    return build_graph(edges, vertex_count=n)


def test_build_small_path():
    g = build_graph([(0, 1), (1, 2)])
    assert g.vertex_count == 3
    assert g.edge_count == 2
    assert g.degrees(1)[:2] == (1, 1)


def test_build_empty_with_count():
    g = build_graph([], vertex_count=4)
    assert (g.vertex_count, g.edge_count) == (4, 0)
    assert all(g.degrees(v) == (0, 0, 0) for v in range(4))


def test_duplicate_edge_rejected():
    with pytest.raises(DuplicateEdge):
        build_graph([(0, 1), (0, 1)])


def test_endpoint_out_of_range():
    with pytest.raises(EndpointOutOfRange):
        build_graph([(0, 5)], vertex_count=3)
    with pytest.raises(EndpointOutOfRange):
        build_graph([(-1, 0)], vertex_count=3)


def test_self_loop_policy():
    g = build_graph([(0, 0)])
    assert g.degrees(0) == (1, 1, 2)
    assert g.has_self_loops and g.self_loops == {0}
    with pytest.raises(PatternSelfLoop):
        build_graph([(0, 0)], allow_self_loops=False)


def test_get_edge_id_examples():
    g = build_graph([(0, 1), (1, 2)])
    assert g.get_edge_id(0, 1) == 0
    assert g.get_edge_id(1, 0) is None
    g = build_graph([(0, 1), (0, 2), (0, 3)])
    assert g.get_edge_id(0, 3) == 2


def test_edges_sorted_regardless_of_input_order():
    g = build_graph([(2, 0), (0, 3), (0, 1)], edge_attrs=[{"k": "a"}, {"k": "b"}, {"k": "c"}])
    assert list(g.edges()) == [(0, 1), (0, 3), (2, 0)]
    assert [g.edge_attrs(e) for e in range(3)] == [(("k", "c"),), (("k", "b"),), (("k", "a"),)]


def test_degrees_example():
    g = build_graph([(0, 1), (2, 1), (1, 3)])
    assert g.degrees(1) == (2, 1, 3)


def test_neighbors_examples():
    g = build_graph([(0, 1), (1, 2), (2, 1)], vertex_count=4)
    assert g.neighbors(1, "both") == (0, 2)
    assert g.neighbors(1, "out") == (2,)
    assert g.neighbors(3, "both") == ()
    with pytest.raises(ValueError):
        g.neighbors(1, "sideways")


def test_vertex_attr_examples():
    p = build_graph([], vertex_attrs=[{"type": "A"}], vertex_count=1)
    t = build_graph([], vertex_attrs=[{"type": "A", "size": "5"}, {"type": "B"}, {}], vertex_count=3)
    assert check_vertex_attrs(p, 0, t, 0)
    assert not check_vertex_attrs(p, 0, t, 1)
    assert not check_vertex_attrs(p, 0, t, 2)
    wild = build_graph([], vertex_count=1)
    assert all(check_vertex_attrs(wild, 0, t, v) for v in range(3))


def test_edge_attr_examples():
    p = build_graph([(0, 1), (1, 0)], edge_attrs={(0, 1): {"w": "strong"}})
    t = build_graph([(0, 1), (1, 2), (2, 0)],
                    edge_attrs={(0, 1): {"w": "strong"}, (2, 0): {"w": "weak"}})
    e01 = p.get_edge_id(0, 1)
    e10 = p.get_edge_id(1, 0)
    assert check_edge_attrs(p, e01, t, t.get_edge_id(0, 1))
    assert not check_edge_attrs(p, e01, t, t.get_edge_id(1, 2))
    assert check_edge_attrs(p, e10, t, t.get_edge_id(2, 0))


def test_attribute_set_sorted_and_unique():
    assert attribute_set({"b": "1", "a": "2"}) == (("a", "2"), ("b", "1"))
    with pytest.raises(GraphError):
        attribute_set([("a", "1"), ("a", "2")])


def test_masks_match_scalar_checks():
    t = build_graph([(0, 1), (1, 2)], vertex_attrs=[{"c": "A"}, {"c": "B"}, {}],
                    edge_attrs=[{"w": "x"}, {"w": "y"}])
    assert t.vertex_mask((("c", "A"),)).tolist() == [True, False, False]
    assert t.edge_mask((("w", "y"),)).tolist() == [False, True]
    assert t.vertex_mask(()).all()
    assert not t.vertex_mask((("missing", "A"),)).any()


def test_arrays_are_read_only():
    g = build_graph([(0, 1)])
    with pytest.raises(ValueError):
        g.src[0] = 1


def test_reverse_edge_ids():
    g = build_graph([(0, 1), (1, 0), (1, 2), (2, 2)])
    assert g.reverse_edge_ids.tolist() == [1, 0, -1, 3]


@settings(max_examples=150, deadline=None)
@given(digraphs())
def test_edge_id_round_trip(g):
    for e, (u, v) in enumerate(g.edges()):
        assert g.get_edge_id(u, v) == e


@settings(max_examples=150, deadline=None)
@given(digraphs())
def test_edge_lookup_agrees_with_out_neighbors(g):
    for u in range(g.vertex_count):
        outs = set(g.neighbors(u, "out"))
        for v in range(g.vertex_count):
            assert (g.get_edge_id(u, v) is not None) == (v in outs)


@settings(max_examples=150, deadline=None)
@given(digraphs())
def test_degree_sums_and_index_consistency(g):
    assert sum(g.degrees(v)[1] for v in range(g.vertex_count)) == g.edge_count
    assert sum(g.degrees(v)[0] for v in range(g.vertex_count)) == g.edge_count
    from_in = sorted((u, v) for v in range(g.vertex_count) for u in g.in_neighbors(v))
    assert from_in == sorted(g.edges())
    for v in range(g.vertex_count):
        assert list(g.out_neighbors(v)) == sorted(g.out_neighbors(v))
        ids = g.in_edge_ids[g.in_offsets[v]:g.in_offsets[v + 1]]
        assert np.all(g.dst[ids] == v)


attr_maps = st.dictionaries(st.sampled_from("abc"), st.sampled_from("xyz"), max_size=3)


@settings(max_examples=200, deadline=None)
@given(attr_maps, attr_maps, attr_maps)
def test_attribute_checks_reflexive_and_monotone(pat, tgt, extra):
    p = build_graph([], vertex_attrs=[pat], vertex_count=1)
    same = build_graph([], vertex_attrs=[pat], vertex_count=1)
    assert check_vertex_attrs(p, 0, same, 0)
    t = build_graph([], vertex_attrs=[tgt], vertex_count=1)
    richer = build_graph([], vertex_attrs=[{**extra, **tgt}], vertex_count=1)
    if check_vertex_attrs(p, 0, t, 0):
        assert check_vertex_attrs(p, 0, richer, 0)


def test_mutual_degree():
    g = build_graph([(0, 1), (1, 0), (0, 2), (2, 0), (1, 2), (3, 3)])
    assert g.mutual_degree.tolist() == [2, 1, 1, 0]
