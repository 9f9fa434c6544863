import pytest

from matchaug import generators as G
from matchaug.d2 import compute_d2, gadget, is_cover, normalize_d2, satisfies_star
from matchaug.oracle import OracleBudget, min_2edge_cover


@pytest.mark.parametrize("seed", range(80))
def test_matching_backend_equals_oracle(seed):
    inst = G.gen_random(4 + seed % 9, 0.35, seed, zero_frac=0.6)
    d2 = compute_d2(inst)
    assert is_cover(inst, d2.cover.edge_ids)
    assert d2.cost == min_2edge_cover(inst, OracleBudget(max_nodes=14))[0]


@pytest.mark.parametrize("seed", range(80))
def test_normalization_keeps_cost_and_gains_star(seed):
    inst = G.gen_random(6 + seed % 9, 0.3, seed, zero_frac=0.9)
    raw = compute_d2(inst)
    norm = normalize_d2(inst, raw)
    assert norm.cost == raw.cost
    assert is_cover(inst, norm.cover.edge_ids)
    assert satisfies_star(inst, norm.cover.edge_ids)


def test_tight_family_cover():
    assert compute_d2(G.tight_s3(1)).cost == 9
    assert compute_d2(G.tight_s3(3)).cost == 6 + 3 * 3


def test_gadget_size():
    inst = G.fix_c4()
    k, adj, pq, first_pq = gadget(inst)
    # every node has degree two, so there are no capacity copies
    assert first_pq == 0 and len(pq) == 2 and k == 4


def test_degree_one_rejected():
    from matchaug.graph import MapInstance
    with pytest.raises(ValueError):
        compute_d2(MapInstance.from_edges(2, [(0, 1, 1)]))
