import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from matchaug import generators as G
from matchaug.graph import (MapInstance, ValidationError, block_decomposition, check_instance, contract,
                            cut_nodes, find_bridges, induced, is_two_edge_connected,
                            two_ec_v_blocks, two_edge_disjoint_paths_exist, validate_instance)


def as_nx(inst, ids=None):
    g = nx.MultiGraph()
    g.add_nodes_from(range(inst.n))
    for e in inst.edges:
        if ids is None or e.id in ids:
            g.add_edge(e.u, e.v, key=e.id)
    return g


@st.composite
def multigraphs(draw):
    n = draw(st.integers(2, 9))
    pairs = st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(lambda p: p[0] != p[1])
    raw = draw(st.lists(pairs, max_size=3 * n))
    return MapInstance.from_edges(n, [(u, v, 1) for u, v in raw])


def test_c4_is_2ec():
    inst = G.fix_c4()
    assert is_two_edge_connected(inst)
    assert not find_bridges(inst)
    assert two_edge_disjoint_paths_exist(inst, 1, 3)


def test_path_endpoints_lack_two_paths():
    path = MapInstance.from_edges(3, [(0, 1, 1), (1, 2, 1)])
    assert not two_edge_disjoint_paths_exist(path, 0, 2)
    assert not is_two_edge_connected(path)


def test_bowtie_cut_node_and_blocks():
    inst = G.bowtie()
    assert cut_nodes(inst) == {0}
    pieces = two_ec_v_blocks(inst, 0)
    assert sorted(p.n for p, _ in pieces) == [3, 3]


def test_bowtie_bridge():
    inst = G.bowtie_bridge()
    assert find_bridges(inst) == {6}
    bd = block_decomposition(inst)
    assert len(bd.blocks) == 2 and bd.bridges == {6}
    assert all(bd.is_white(v) for v in range(6))


def test_contract_keeps_edge_ids():
    inst = G.fix_c4()
    res = contract(inst, [0, 1])
    assert res.quotient.n == 3
    assert {e.id for e in res.quotient.edges} == {1, 2, 3}


def test_induced_relabels():
    sub, labels = induced(G.bowtie(), [0, 3, 4])
    assert labels == (0, 3, 4) and sub.m == 3


def test_validation_names_failures():
    bad = MapInstance.from_edges(3, [(0, 1, 0), (1, 2, 0), (2, 0, 1)])
    assert any("matching" in f for f in validate_instance(bad))
    with pytest.raises(ValidationError):
        check_instance(bad)
    loop = MapInstance.from_edges(2, [(0, 0, 1)])
    assert any("loop" in f for f in validate_instance(loop))


@settings(max_examples=200, deadline=None)
@given(multigraphs())
def test_bridges_match_networkx(inst):
    g = as_nx(inst)
    simple = nx.Graph(g)
    expected = set()
    for u, v in nx.bridges(simple):
        if g.number_of_edges(u, v) == 1:
            expected.add(next(iter(g[u][v])))
    assert find_bridges(inst) == expected
    assert cut_nodes(inst) == set(nx.articulation_points(simple))


@settings(max_examples=200, deadline=None)
@given(multigraphs(), st.data())
def test_two_paths_match_flow(inst, data):
    v = data.draw(st.integers(0, inst.n - 1))
    w = data.draw(st.integers(0, inst.n - 1).filter(lambda x: x != v))
    g = nx.Graph()
    g.add_nodes_from(range(inst.n))
    for e in inst.edges:
        cap = g[e.u][e.v]["capacity"] + 1 if g.has_edge(e.u, e.v) else 1
        g.add_edge(e.u, e.v, capacity=cap)
    flow = nx.maximum_flow_value(g, v, w) if nx.has_path(g, v, w) else 0
    assert two_edge_disjoint_paths_exist(inst, v, w) == (flow >= 2)
