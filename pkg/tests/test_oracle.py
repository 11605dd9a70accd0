import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hipermotif import InstanceTooLarge, brute_force, build_graph, verify_embedding


def hand_count(pattern_edges, target_edges, n1, n2):
    """Count injections that keep every pattern edge, written without the package."""
    tset = set(target_edges)
    total = 0
    for f in itertools.permutations(range(n2), n1):
        if all((f[u], f[v]) in tset for u, v in pattern_edges):
            total += 1
    return total


def test_single_edge_counts_target_edges():
    target = build_graph([(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)])
    assert len(brute_force(build_graph([(0, 1)]), target)) == 5


def test_three_cycle_into_itself():
    tri = build_graph([(0, 1), (1, 2), (2, 0)])
    assert len(brute_force(tri, tri)) == 3
    assert hand_count([(0, 1), (1, 2), (2, 0)], [(0, 1), (1, 2), (2, 0)], 3, 3) == 3


def test_edgeless_target():
    target = build_graph([], vertex_count=6)
    assert len(brute_force(build_graph([(0, 1), (1, 2)]), target)) == 0


def test_cap():
    with pytest.raises(InstanceTooLarge):
        brute_force(build_graph([(0, 1)]), build_graph([], vertex_count=13))
    assert len(brute_force(build_graph([(0, 1)]), build_graph([], vertex_count=13), cap=13)) == 0


def test_results_are_canonical_and_verified():
    target = build_graph([(u, v) for u in range(4) for v in range(4) if u != v])
    pattern = build_graph([(0, 1), (1, 2)])
    got = brute_force(pattern, target)
    assert list(got.embeddings) == sorted(set(got.embeddings))
    assert all(verify_embedding(pattern, target, f) for f in got)


@st.composite
def instances(draw):
    n2 = draw(st.integers(1, 6))
    n1 = draw(st.integers(1, min(4, n2)))
    tp = [(u, v) for u in range(n2) for v in range(n2)]
    pp = [(u, v) for u in range(n1) for v in range(n1) if u != v]
    te = draw(st.lists(st.sampled_from(tp), unique=True, max_size=len(tp)))
    pe = draw(st.lists(st.sampled_from(pp), unique=True, max_size=len(pp))) if pp else []
    return pe, te, n1, n2


@settings(max_examples=200, deadline=None)
@given(instances())
def test_iso_subset_of_mono(inst):
    pe, te, n1, n2 = inst
    pattern, target = build_graph(pe, vertex_count=n1), build_graph(te, vertex_count=n2)
    iso = set(brute_force(pattern, target, "iso"))
    mono = set(brute_force(pattern, target, "mono"))
    assert iso <= mono
    assert len(mono) == hand_count(pe, te, n1, n2)


@settings(max_examples=100, deadline=None)
@given(instances(), st.randoms(use_true_random=False))
def test_oracle_ignores_edge_input_order(inst, rnd):
    pe, te, n1, n2 = inst
    shuffled = list(te)
    rnd.shuffle(shuffled)
    a = brute_force(build_graph(pe, vertex_count=n1), build_graph(te, vertex_count=n2))
    b = brute_force(build_graph(pe, vertex_count=n1), build_graph(shuffled, vertex_count=n2))
    assert a == b
