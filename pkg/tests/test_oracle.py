import pytest

from matchaug import generators as G
from matchaug.oracle import (BudgetExceeded, OracleBudget, min_2edge_cover, min_2edge_cover_enumerate,
                             opt_2ecss, opt_2ecss_enumerate, opt_at_least)
from matchaug.graph import is_two_edge_connected

WIDE = OracleBudget(max_nodes=30)

# values fixed by running both exact searches before the build
FROZEN_OPT = {
    "c4": (G.fix_c4, 2, 2),
    "tight-1": (lambda: G.tight_s3(1), 11, 9),
    "tight-2": (lambda: G.tight_s3(2), 16, 12),
    "g1": (G.g1, 7, 6),
    "g2-1": (lambda: G.g2(1), 10, 7),
    "g3-1": (lambda: G.g3(1), 10, 7),
    "zero-s2": (lambda: G.scene_zero_s2()[0], 10, 8),
    "unit-s2": (lambda: G.scene_unit_s2()[0], 13, 10),
    "s34": (lambda: G.scene_s34()[0], 10, 8),
    "r4": (lambda: G.r4_toy()[0], 7, 5),
}


@pytest.mark.parametrize("name", sorted(FROZEN_OPT))
def test_frozen_values(name):
    build, opt, cover = FROZEN_OPT[name]
    inst = build()
    cost, ids = opt_2ecss(inst, WIDE)
    assert cost == opt and inst.cost(ids) == opt
    assert is_two_edge_connected(inst.sub(ids))
    assert min_2edge_cover(inst, WIDE)[0] == cover


@pytest.mark.parametrize("seed", range(60))
def test_branch_and_bound_matches_enumeration(seed):
    inst = G.gen_random(4 + seed % 5, 0.3, seed)
    assert inst.m <= 16
    assert opt_2ecss(inst)[0] == opt_2ecss_enumerate(inst, max_edges=16)[0]
    assert min_2edge_cover(inst)[0] == min_2edge_cover_enumerate(inst, max_edges=16)[0]


def test_opt_at_least():
    inst = G.tight_s3(1)
    assert opt_at_least(inst, 11, WIDE)
    assert not opt_at_least(inst, 12, WIDE)


def test_budget_is_enforced():
    with pytest.raises(BudgetExceeded):
        opt_2ecss(G.tight_s3(2), OracleBudget(max_nodes=12))
