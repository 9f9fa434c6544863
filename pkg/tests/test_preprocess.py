from fractions import Fraction

import pytest

from matchaug import generators as G
from matchaug.errors import InvariantBreach
from matchaug.graph import is_two_edge_connected
from matchaug.obstructions import KINDS
from matchaug.oracle import OracleBudget, opt_2ecss
from matchaug.preprocess import DEFAULT_CONFIG, ApproxConfig, decompose, phi, recombine

WIDE = OracleBudget(max_nodes=40)


def solve_leaves_exactly(trace):
    return {i: opt_2ecss(trace.instances[i], WIDE)[1] for i in trace.leaves}


def run(inst):
    trace = decompose(inst, WIDE)
    return trace, recombine(trace, solve_leaves_exactly(trace))


def test_bound_arithmetic():
    assert DEFAULT_CONFIG.bound(3) == 3
    assert DEFAULT_CONFIG.bound(6) == 8
    assert DEFAULT_CONFIG.bound(7) == Fraction(29, 3)
    with pytest.raises(ValueError):
        ApproxConfig(Fraction(3, 2))


def test_well_structured_input_is_one_leaf():
    trace, sol = run(G.tight_s3(1))
    assert trace.steps == () and trace.leaves == (0,)
    assert G.tight_s3(1).cost(sol) == 11


def test_g1_goes_through_s34():
    inst = G.g1()
    trace, sol = run(inst)
    assert [s.kind for s in trace.steps] == ["S34"]
    assert sorted(trace.instances[i].n for i in trace.leaves) == [5, 5]
    assert inst.cost(sol) == 8 and DEFAULT_CONFIG.within(8, 7)


@pytest.mark.parametrize("build,kind,cost,opt", [
    (lambda: G.scene_unit_s2()[0], "unit-cost-S2", 14, 13),
    (lambda: G.scene_s34()[0], "S34", 11, 10),
    (lambda: G.scene_r8("right")[0], "S34", 10, 9),
    (lambda: G.g3(1), "R8", 10, 10),
])
def test_scenes_recombine_within_bound(build, kind, cost, opt):
    inst = build()
    trace, sol = run(inst)
    assert trace.steps[0].kind == kind
    assert is_two_edge_connected(inst.sub(sol))
    assert inst.cost(sol) == cost
    assert DEFAULT_CONFIG.within(cost, opt)


@pytest.mark.parametrize("seed", range(70))
def test_planted_soundness(seed):
    kind = KINDS[seed % 7]
    inst = G.gen_planted(kind, seed, block_size=(6, 9))
    trace = decompose(inst, WIDE)
    leaves = [trace.instances[i] for i in trace.leaves]
    seen = set()
    for leaf in leaves:
        ids = {e.id for e in leaf.edges}
        assert not (ids & seen)
        seen |= ids
    for step in trace.steps:
        assert step.phi_after < step.phi_before
        assert step.phi_before == phi(trace.instances[step.parent])
    sol = recombine(trace, solve_leaves_exactly(trace))
    assert is_two_edge_connected(inst.sub(sol))
    assert DEFAULT_CONFIG.within(inst.cost(sol), opt_2ecss(inst, WIDE)[0])


def test_recombine_rejects_bad_leaf():
    trace = decompose(G.g1(), WIDE)
    leaves = solve_leaves_exactly(trace)
    first = trace.leaves[0]
    leaves[first] = set(list(leaves[first])[1:])
    with pytest.raises(InvariantBreach):
        recombine(trace, leaves)


def test_trace_text():
    text = decompose(G.g1(), WIDE).to_text()
    assert text.startswith("S34 carrier=4,5,6,7 parent=0 children=1,2 phi=19->15")
