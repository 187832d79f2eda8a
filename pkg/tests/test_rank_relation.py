import random

import pytest

from threerank.errors import InvalidD
from threerank.rank_relation import Triple, check_triple, search_triples

import oracles


def test_check_triple_examples():
    assert check_triple(7, Triple(5, 1, 1)).ok
    assert 25 - 4 == 21 == 3 * 7 and 25 % 9 == 7
    assert check_triple(1, Triple(4, 1, 2)).ok
    res = check_triple(7, Triple(5, 1, 0))
    assert not res.ok and not res.k7


@pytest.mark.parametrize("d", [0, 3, 12, -7])
def test_invalid_d(d):
    with pytest.raises(InvalidD):
        check_triple(d, Triple(1, 1, 1))
    with pytest.raises(InvalidD):
        search_triples(d, 5)


def test_search_examples():
    found = set(search_triples(7, 10).found)
    assert {(5, 1, 1), (-5, 1, 1)} <= found
    assert (4, 1, 2) in search_triples(1, 5).found


@pytest.mark.parametrize("d, bound", [(1, 8), (2, 8), (5, 8), (7, 10), (13, 7), (19, 6)])
def test_search_matches_3d_scan(d, bound):
    assert set(search_triples(d, bound).found) == oracles.brute_triples(d, bound)


def test_found_triples_verify_independently():
    for d in (1, 2, 5, 7, 10, 11, 13, 17):
        for t in search_triples(d, 60).found:
            assert t.x**2 - 4 * t.y**3 == 3 * t.z**2 * d


def test_sign_symmetry_and_order():
    for d in (1, 7, 13, 31):
        res = search_triples(d, 50)
        found = set(res.found)
        assert all((-x, y, z) in found for x, y, z in found)
        assert list(res.found) == sorted(res.found, key=lambda t: (t.y, t.z, t.x))


def test_z_sign_closure():
    for d in (1, 7, 13):
        for x, y, z in search_triples(d, 30).found:
            assert check_triple(d, Triple(x, y, -z)).ok


def test_monotone_in_bound():
    rng = random.Random(4)
    squarefree = [d for d in range(1, 200) if d % 3 and all(e == 1 for e in oracles.trial_factor(d).values())]
    for d in rng.sample(squarefree, 12):
        small = set(search_triples(d, 15).found)
        large = set(search_triples(d, 40).found)
        assert small <= large


def test_even_x_and_z_when_d_is_1_mod_4():
    # x^2 = 3 z^2 (mod 4) forces both even when d = 1 (mod 4)
    seen = 0
    for d in (1, 5, 13, 17, 29, 37, 41):
        for t in search_triples(d, 60).found:
            assert t.x % 2 == 0 and t.z % 2 == 0
            seen += 1
    assert seen > 0


def test_workers_do_not_change_result():
    assert search_triples(7, 40, workers=3) == search_triples(7, 40)


def test_cell_budget():
    res = search_triples(7, 30, max_cells=50)
    assert not res.exhausted
    assert set(res.found) <= set(search_triples(7, 30).found)
    assert search_triples(7, 30).exhausted


def test_family_d_has_no_small_triples():
    res = search_triples(137 * 596789, 300)
    assert res.found == () and res.exhausted
