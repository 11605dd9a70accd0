import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hipermotif import DuplicateEdge, InvalidParameter, ParseError, PatternSelfLoop, build_graph
from hipermotif.generators import (
    AttributeSchema,
    GeneratorSpec,
    assign_attributes,
    generate,
    parse_generator_spec,
)
from hipermotif.io import dumps_edge_list, load_edge_list, parse_edge_list, save_edge_list
from hipermotif.rng import SplitMix64


def test_splitmix_reference_values():
    # First outputs for seed 0 as published with the algorithm.
    rng = SplitMix64(0)
    assert rng.next_u64(3).tolist() == [
        0xE220A8397B1DCDAF, 0x6E789E6AA1B965F4, 0x06C45D188009454F]


def test_splitmix_scalar_and_block_draws_agree():
    a, b = SplitMix64(99), SplitMix64(99)
    assert [a.random() for _ in range(10)] == b.random_array(10).tolist()
    ints = SplitMix64(5).integers_array(7, 1000)
    assert ints.min() >= 0 and ints.max() < 7


def test_er_extremes():
    assert generate(GeneratorSpec("er", 5, p=0.0)).edge_count == 0
    full = generate(GeneratorSpec("er", 5, p=1.0))
    assert sorted(full.edges()) == [(u, v) for u in range(5) for v in range(5) if u != v]


def test_er_edge_count_within_three_sigma():
    n, p = 10_000, 0.005
    pairs = n * (n - 1)
    sd = math.sqrt(pairs * p * (1 - p))
    g = generate(GeneratorSpec("er", n, seed=123, p=p))
    assert abs(g.edge_count - pairs * p) <= 3 * sd
    assert not g.has_self_loops


def test_ws_degrees():
    g = generate(GeneratorSpec("ws", 1000, seed=42, p=0.01, k=10))
    total = g.in_degree + g.out_degree
    # both directions of each undirected edge: 2k on average, near 2k everywhere
    assert total.mean() == pytest.approx(20.0)
    assert total.min() >= 14 and total.max() <= 28
    assert np.array_equal(g.in_degree, g.out_degree)
    assert all(g.has_edge(v, u) for u, v in g.edges())


def test_ws_no_rewiring_is_ring():
    g = generate(GeneratorSpec("ws", 12, seed=1, p=0.0, k=4))
    assert sorted(g.out_neighbors(0)) == [1, 2, 10, 11]


def test_scale_free_heavy_tail():
    g = generate(GeneratorSpec("scale_free", 100_000, seed=7))
    assert g.in_degree.max() > 10 * g.in_degree.mean()
    assert g.vertex_count == 100_000


def test_generators_are_seed_deterministic():
    schema = AttributeSchema({"c": ("A", "B")}, {"w": ("x", "y", "z")})
    for spec in (GeneratorSpec("er", 300, seed=4, p=0.02, schema=schema),
                 GeneratorSpec("ws", 300, seed=4, p=0.2, k=6, schema=schema),
                 GeneratorSpec("scale_free", 300, seed=4, schema=schema)):
        assert generate(spec) == generate(spec)
        assert dumps_edge_list(generate(spec)) == dumps_edge_list(generate(spec))
    assert generate(GeneratorSpec("er", 300, seed=4, p=0.02)) != generate(
        GeneratorSpec("er", 300, seed=5, p=0.02))


def test_single_value_alphabet():
    g = assign_attributes(build_graph([(0, 1), (1, 2)]), AttributeSchema({"c": ("A",)}, {"w": ("x",)}), 0)
    assert all(g.vertex_attrs(v) == (("c", "A"),) for v in range(3))
    assert all(g.edge_attrs(e) == (("w", "x"),) for e in range(2))


def test_attribute_frequencies_within_three_sigma():
    n = 10_000
    g = assign_attributes(build_graph([], vertex_count=n), AttributeSchema({"c": ("A", "B")}), 3)
    count_a = int(np.sum(g.vertex_column("c") == "A"))
    assert abs(count_a - n / 2) <= 3 * math.sqrt(n * 0.25)


def test_invalid_parameters():
    bad = [
        GeneratorSpec("er", 10),
        GeneratorSpec("er", 10, p=1.5),
        GeneratorSpec("ws", 10, p=0.1),
        GeneratorSpec("ws", 10, p=0.1, k=3),
        GeneratorSpec("ws", 10, p=0.1, k=10),
        GeneratorSpec("scale_free", 10, alpha=0.5, beta=0.5, gamma=0.5),
        GeneratorSpec("scale_free", 2),
        GeneratorSpec("lattice", 10),  # type: ignore[arg-type]
    ]
    for spec in bad:
        with pytest.raises(InvalidParameter):
            generate(spec)
    with pytest.raises(InvalidParameter):
        AttributeSchema({"c": ()})


def test_spec_file_parsing():
    spec = parse_generator_spec(
        "# ring\nfamily = ws\nn=50\nk=4\np=0.1\nseed=9\nvertex_attr.color=r,g\nedge_attr.w=x\n")
    assert (spec.family, spec.n, spec.k, spec.p, spec.seed) == ("ws", 50, 4, 0.1, 9)
    assert spec.schema.vertex == {"color": ("r", "g")}
    assert parse_generator_spec("family=er\nn=5\np=0.5", seed=3).seed == 3
    for text in ("family=er\nn=5", "family=er\nn=x\np=.1", "n=5\np=.1", "family=er\nn=5\np=.1\nbogus=1"):
        with pytest.raises(InvalidParameter):
            parse_generator_spec(text)


def test_parse_examples():
    g = parse_edge_list(["0 1", "1 2"])
    assert list(g.edges()) == [(0, 1), (1, 2)]
    g = parse_edge_list(["0 1 w=strong"])
    assert g.edge_attrs(0) == (("w", "strong"),)
    with pytest.raises(ParseError) as err:
        parse_edge_list(["# header", "0 1", "0"])
    assert err.value.lineno == 3


def test_parse_errors():
    cases = [["0 x"], ["0 1 w"], ["0 -1"], ["0 1 a=1 a=2"], ["#vertices", "0", "0"]]
    for lines in cases:
        with pytest.raises(ParseError):
            parse_edge_list(lines)
    with pytest.raises(DuplicateEdge):
        parse_edge_list(["0 1", "0 1"])
    with pytest.raises(PatternSelfLoop):
        parse_edge_list(["0 0"], allow_self_loops=False)


def test_vertex_section_and_isolated_tail(tmp_path):
    g = build_graph([(0, 1)], vertex_attrs={3: {"c": "A"}}, vertex_count=5)
    path = tmp_path / "g.el"
    save_edge_list(g, path)
    text = path.read_text()
    assert "#vertices" in text and "3 c=A" in text and "\n4\n" in text
    assert load_edge_list(path) == g


def test_load_reports_path(tmp_path):
    path = tmp_path / "bad.el"
    path.write_text("0 1\nzero one\n")
    with pytest.raises(ParseError, match="bad.el:2"):
        load_edge_list(path)


names = st.sampled_from(["a", "b", "type", "w"])
values = st.text(alphabet="xyzAB01_.-", min_size=0, max_size=4)


@st.composite
def property_graphs(draw):
    n = draw(st.integers(0, 7))
    pairs = [(u, v) for u in range(n) for v in range(n)]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs))) if pairs else []
    vattrs = {v: draw(st.dictionaries(names, values, max_size=2)) for v in range(n)}
    eattrs = {e: draw(st.dictionaries(names, values, max_size=2)) for e in edges}
    return build_graph(edges, vattrs, eattrs, vertex_count=n)


@settings(max_examples=200, deadline=None)
@given(property_graphs())
def test_save_load_round_trip(g):
    text = dumps_edge_list(g)
    assert parse_edge_list(text.splitlines()) == g
