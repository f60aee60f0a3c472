
import pytest

from downposet.errors import SizeBoundError
from downposet.fixtures import METADATA, chain, fig1, fig1_model, fig2_v, fig3, fixture
from downposet.downmaps import constant_map, identity_map
from downposet.oracle import (
    all_posets,
    oracle_down_functions,
    oracle_recognize,
    random_poset,
    random_set_model,
)
from downposet.poset import check_poset


def _naive_poset_count(n):
    # every relation on n points (diagonal implied), filtered for antisymmetry and transitivity
    cells = [(i, j) for i in range(n) for j in range(n) if i != j]
    count = 0
    for mask in range(1 << len(cells)):
        rel = {cells[k] for k in range(len(cells)) if mask >> k & 1}
        if any((j, i) in rel for i, j in rel):
            continue
        if all((a, d) in rel for a, b in rel for c, d in rel if b == c and a != d):
            count += 1
    return count


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_all_posets_matches_naive_enumerator(n):
    posets = list(all_posets(n))
    assert len(posets) == _naive_poset_count(n)
    assert len({p.relation for p in posets}) == len(posets)


def test_all_posets_counts():
    assert [sum(1 for _ in all_posets(n)) for n in range(1, 6)] == [1, 3, 19, 219, 4231]
    with pytest.raises(SizeBoundError):
        next(all_posets(6))


def test_oracle_small(chain2, vee):
    assert len(oracle_down_functions(chain2)) == 2
    assert oracle_down_functions(vee) == {identity_map(vee)}


def test_oracle_fig1(f1, f_t, f_u):
    maps = oracle_down_functions(f1)
    assert {identity_map(f1), f_t, f_u, constant_map(f1, "c")} <= maps


def test_oracle_recognize():
    assert oracle_recognize(fig1())
    assert not oracle_recognize(fig2_v())
    assert not oracle_recognize(fig3())
    with pytest.raises(SizeBoundError):
        oracle_recognize(chain(9))


def test_random_poset():
    assert random_poset(6, 0, 3).is_antichain()
    assert random_poset(6, 1, 3) == chain(6)
    assert random_poset(5, 0.4, 7) == random_poset(5, 0.4, 7)


def test_random_set_model():
    m = random_set_model(1, 1, 5)
    m.validate()
    for seed in range(30):
        random_set_model(3, 4, seed).validate()
    assert random_set_model(3, 5, 9) == random_set_model(3, 5, 9)


def test_fixtures():
    for name in ("fig1", "fig2_v", "fig3", "bool_2", "diamond", "chain_4", "antichain_2"):
        check_poset(fixture(name))
    assert METADATA["fig3"]["reconstructed"]
    m = fig1_model()
    p = fig1()
    assert all(p.leq(x, y) == (m.states[x] <= m.states[y]) for x in p.elements for y in p.elements)


def test_fig3_shape():
    p = fig3()
    for x, y in [("d", "h"), ("e", "h"), ("d", "f"), ("e", "f"), ("g", "f"), ("h", "i"), ("g", "i")]:
        assert p.leq(x, y)
    assert not p.leq("g", "h")
    assert ("h", "i") in p.covers() and ("g", "i") in p.covers()
    above_both = [z for z in p.down_set("f") if p.leq("d", z) and p.leq("e", z)]
    assert above_both == ["f"]
