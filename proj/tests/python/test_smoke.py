import itertools

import pytest

import pycostas as pc


def costas_by_pairs(dots):
    seen = set()
    for a, b in itertools.permutations(dots, 2):
        d = tuple(x - y for x, y in zip(a, b))
        if d in seen:
            return False
        seen.add(d)
    return True


def test_dotset_roundtrip():
    d = pc.DotSet([3, 3], [[0, 0], [1, 2]])
    assert d.shape == [3, 3]
    assert len(d) == 2
    assert [1, 2] in d
    with pytest.raises(ValueError):
        pc.DotSet([2, 2], [[0, 2]])


def test_verify_matches_pairwise_oracle():
    diag = pc.DotSet([3, 3], [[0, 0], [1, 1], [2, 2]])
    rep = pc.verify_costas(diag)
    assert not rep["is_costas"]
    assert rep["collisions"][0]["difference"] == [1, 1]
    perm = pc.welch_w1(11, 2)
    dots = [[i, v] for i, v in enumerate(perm)]
    assert pc.verify_costas(pc.DotSet([10, 10], dots))["is_costas"] == costas_by_pairs(dots) is True


def test_constructions():
    t = pc.toeplitz_hypercube(4, 5)
    assert t.dots[0] == [0, 3, 2, 1, 0]
    assert pc.classify(t)["strict"] == "yes"
    g = pc.golomb_g2(3, 3)
    assert sorted(g) == list(range(25))
    cube = pc.reshape_even(g, [5, 5])
    assert pc.verify_costas(cube)["is_costas"]
    assert pc.classify(cube)["permutation"] == "yes"


def test_welch_and_odd_reshape():
    cube = pc.welch_cube(3, [1, 0, 2, 1], [0, 1, 0], c=1)
    assert len(cube) == 26 and pc.verify_costas(cube)["is_costas"]
    rect = pc.welch_rect(5, [1, 1, 2], [2, 0], c=1, basis=[[3, 1], [0, 2]])
    assert pc.verify_costas(rect)["is_costas"]
    perm, ok = pc.welch_perm(3, [1, 0, 2, 1], [0, 1, 0], c=1)
    assert len(perm) == 26 and not ok
    rep = pc.reshape_odd(pc.welch_w1(7, 3), 4, 1, side=8)
    assert pc.verify_costas(rep["result"])["is_costas"]
    assert 0.0 < rep["pre_repair_fraction"] <= 1.0


def test_search_and_applicability():
    res = pc.greedy_pack([4, 4, 4], restarts=20, seed=3)
    assert pc.verify_costas(res["best"])["is_costas"]
    assert sum(res["histogram"].values()) == 20
    again = pc.greedy_pack([4, 4, 4], restarts=20, seed=3, threads=2)
    assert again["best"] == res["best"]
    assert len(pc.slice_candidates(3, 5)) == 16
    assert [w[0] for w in pc.scan_solutions(1, 2, 20, 4, 4)] == [2, 4, 6, 16, 20]
    forms = pc.check_applicability(5, 2)
    assert forms[1]["witness"] == (3, 3)
    with pytest.raises(OverflowError):
        pc.check_applicability(2, 63)
