from fractions import Fraction

import pytest

from matchaug import generators as G
from matchaug.bridge_cover import bridge_cover
from matchaug.d2 import compute_d2, normalize_d2
from matchaug.errors import InvariantBreach
from matchaug.gluing import SMALL_CREDIT, Gluing, glue
from matchaug.graph import MapInstance, block_decomposition, is_two_edge_connected


def state(inst, H):
    """Gluing state with the minimum credits the invariant allows."""
    bd = block_decomposition(inst.sub(H))
    credit = {b: SMALL_CREDIT if bd.is_small(i) else Fraction(2) for i, b in enumerate(bd.blocks)}
    return Gluing(inst, H, credit, inst.cost(H) + sum(credit.values()))


def describe(g, ix):
    rev = {v: k for k, v in ix.items()}
    return {(rev[p.block], tuple(rev[x] for x in p.nodes), p.form, p.quality, rev.get(p.target))
            for k in g.blocks() if g.is_small(k) for p in g.swappable_pairs(k)}


def test_scene_swappable_pairs():
    inst, H, ix = G.scene_swappable()
    pairs = describe(state(inst, H), ix)
    assert ("u1", ("u", "v"), "edge", "bad", "b0") in pairs
    assert ("x", ("x", "y"), "diagonal", "bad", "b0") in pairs


def test_scene_good_bad_good_and_bad():
    inst, H, ix = G.scene_good_bad()
    pairs = {(nodes, q) for _, nodes, form, q, _ in describe(state(inst, H), ix) if form == "edge"}
    assert pairs == {(("u", "v"), "good"), (("v", "w"), "bad")}


def test_scene_red_cycle_daux_is_a_directed_triangle():
    inst, H, ix = G.scene_red_cycle()
    g = state(inst, H)
    d = g.build_daux()
    name = {ix["x1"]: "B1", ix["v1"]: "B2", ix["u1"]: "B3"}
    assert {(name[a], name[b]) for a, b, _ in d.arcs} == {("B1", "B2"), ("B2", "B3"), ("B3", "B1")}
    assert d.green == (ix["w1"],)


def test_scene_red_cycle_runs_a_red_chain():
    inst, H, _ = G.scene_red_cycle()
    g = state(inst, H)
    out = g.run()
    assert [r.kind for r in g.trace] == ["red-chain", "large-cycle"]
    assert g.trace[0].credit_out == 2
    assert is_two_edge_connected(inst.sub(out))


def test_scene_gluing_first_merge_drops_uv():
    inst, H, ix = G.scene_gluing()
    g = state(inst, H)
    out = g.run()
    first = g.trace[0]
    assert first.kind == "red-green"
    uv = next(e.id for e in inst.edges_between(ix["u"], ix["v"]))
    assert first.discarded == (uv,)
    assert len(g.trace) == 3 and all(r.credit_out >= 2 for r in g.trace)
    assert is_two_edge_connected(inst.sub(out))


def test_scene_swappable_diagonal_merge_nets_one():
    inst, H, ix = G.scene_swappable()
    g = state(inst, H)
    g.run()
    diag = [r for r in g.trace if len(r.discarded) == 2]
    assert diag and all(len(r.added) - len(r.discarded) == 1 for r in diag)


def test_single_block_unchanged():
    inst = G.tight_s3(1)
    H = frozenset(e.id for e in inst.edges)
    g = Gluing(inst, H, {frozenset(range(inst.n)): Fraction(5)}, inst.cost(H) + 5)
    assert g.run() == H and g.trace == []


def test_two_parallel_block_edges_give_a_two_cycle():
    # two unit 4-cycles joined by two edges
    cyc = [(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 0, 1), (4, 5, 1), (5, 6, 1), (6, 7, 1), (7, 4, 1)]
    inst = MapInstance.from_edges(8, cyc + [(0, 4, 1), (2, 6, 1)])
    g = state(inst, range(8))
    assert len(g.shortest_cycle_through(0)) == 2
    g.run()
    assert g.trace[0].kind == "large-cycle" and g.trace[0].credit_out == 2


def test_illegal_discard_is_caught():
    inst, H, ix = G.scene_gluing()
    g = state(inst, H)
    with pytest.raises(InvariantBreach):
        g._merge("bogus", [ix["u"]], [], [next(e.id for e in inst.edges_between(ix["u"], ix["a1"]))], [])


@pytest.mark.parametrize("seed", range(60))
def test_glue_on_well_structured(seed):
    inst = G.gen_well_structured(12 + seed % 6, seed, min_degree=2 + seed % 2, zero_frac=0.7)
    d2 = normalize_d2(inst, compute_d2(inst))
    H, credits = bridge_cover(inst, d2.cover.edge_ids)
    trace = []
    out = glue(inst, H, credits, trace=trace)
    assert is_two_edge_connected(inst.sub(out))
    assert Fraction(inst.cost(out)) <= Fraction(5, 3) * d2.cost - 2
    assert len(trace) < inst.n
