import pytest

from equivalence import disagreements
from matchaug import generators as G
from matchaug.obstructions import detect, find_all, is_well_structured
from matchaug.oracle import OracleBudget

WIDE = OracleBudget(max_nodes=30)


def named(result, kind):
    inst, index = result
    ob = detect(inst, WIDE)
    assert ob is not None and ob.kind == kind
    rev = {v: k for k, v in index.items()}
    return inst, ob, rev


def test_zero_s2_scene():
    inst, ob, _ = named(G.scene_zero_s2(), "zero-cost-S2")
    assert inst.by_id[ob.carrier[0]].cost == 0


def test_unit_s2_scene():
    inst, ob, _ = named(G.scene_unit_s2(), "unit-cost-S2")
    assert inst.by_id[ob.carrier[0]].cost == 1


def test_s34_scene():
    inst, ob, _ = named(G.scene_s34(), "S34")
    cyc = ob.witness["cycle"]
    assert inst.cost(cyc.edges) == 2


def test_r4_toy():
    named(G.r4_toy(), "R4")


def test_g1_is_s34():
    ob = detect(G.g1(), WIDE)
    assert (ob.kind, ob.carrier) == ("S34", (4, 5, 6, 7))


def test_g3_is_r8_only():
    inst = G.g3(1)
    assert [o.kind for o in [detect(inst, WIDE)]] == ["R8"]
    ob = find_all(inst, "R8")[0]
    w = ob.witness
    assert inst.cost(w["c1"].edges) == 2 and inst.cost(w["c2"].edges) == 2


@pytest.mark.parametrize("variant", ["left", "right"])
def test_r8_scenes_also_carry_s34(variant):
    inst, _ = G.scene_r8(variant)
    assert find_all(inst, "R8")
    assert detect(inst, WIDE).kind == "S34"


def test_tight_family_is_well_structured():
    assert is_well_structured(G.tight_s3(1))


@pytest.mark.parametrize("seed", range(40))
def test_detectors_agree_with_definitions(seed):
    inst = G.gen_random(4 + seed % 6, 0.35, seed, simple=seed % 3 != 0)
    assert disagreements(inst) == []


def test_cut_node_first():
    assert detect(G.bowtie()).kind == "cut-node"


def test_nine_node_r8():
    inst = G.r8_nine()
    assert detect(inst).kind == "R8"
    assert disagreements(inst) == []
