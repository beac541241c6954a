import itertools
import random

import pytest

from interfmin.errors import CapExceededError, InputError
from interfmin.model import (
    ASYM2D,
    SINKTREE1D,
    Instance1D,
    Instance2D,
    ReceiverAssignment,
    cross_edges,
    has_bst_property,
    interference,
    is_valid,
)
from interfmin.oracle import brute_force_1d, brute_force_2d, enumerate_optimal_1d


def rejection_optimum_1d(inst):
    """Independent ground truth: every receiver function, filtered by validity."""
    best = None
    n = inst.n
    for root in range(n):
        others = [p for p in range(n) if p != root]
        for recv in itertools.product(*[[q for q in range(n) if q != p] for p in others]):
            a = ReceiverAssignment(SINKTREE1D, dict(zip(others, recv)), root)
            if is_valid(inst, a):
                v = interference(inst, a)
                best = v if best is None else min(best, v)
    return best


def rejection_optimum_2d(inst):
    best = None
    n = inst.n
    for recv in itertools.product(*[[q for q in range(n) if q != p] for p in range(n)]):
        a = ReceiverAssignment(ASYM2D, dict(enumerate(recv)))
        if is_valid(inst, a):
            v = interference(inst, a)
            best = v if best is None else min(best, v)
    return best


def test_known_optima_1d():
    assert brute_force_1d(Instance1D.from_values([0, 1])).optimum == 1
    assert brute_force_1d(Instance1D.from_values([0, 1, 2])).optimum == 2
    assert brute_force_1d(Instance1D.from_values([0, 1, 3, 4])).optimum == 2


def test_witness_is_optimal():
    inst = Instance1D.from_values([0, 1, 3, 4])
    res = brute_force_1d(inst)
    assert is_valid(inst, res.witness)
    assert interference(inst, res.witness) == res.optimum


def test_singleton():
    res = brute_force_1d(Instance1D.from_values([3]))
    assert res.optimum == 0
    assert res.witness.sink == 0


def test_matches_rejection_enumeration():
    rng = random.Random(424242)
    for _ in range(12):
        n = rng.randint(2, 5)
        inst = Instance1D.from_values(rng.sample(range(0, 30), n))
        assert brute_force_1d(inst).optimum == rejection_optimum_1d(inst)


def test_enumerate_two_points():
    inst = Instance1D.from_values([0, 1])
    found = list(enumerate_optimal_1d(inst))
    assert len(found) == 2
    assert {a.sink for a in found} == {0, 1}
    assert all(interference(inst, a) == 1 for a in found)


def test_enumerate_all_optimal():
    inst = Instance1D.from_values([0, 1, 2])
    for a in enumerate_optimal_1d(inst):
        assert is_valid(inst, a)
        assert interference(inst, a) == 2


def test_enumerate_contains_cross_free():
    inst = Instance1D.from_values([0, 1, 3, 4])
    stream = list(enumerate_optimal_1d(inst))
    assert stream
    assert any(not cross_edges(inst, a) for a in stream)


def test_enumeration_complete():
    # The pruned stream must find exactly the optimal assignments that plain
    # rejection filtering finds.
    inst = Instance1D.from_values([0, 2, 3, 7])
    opt = rejection_optimum_1d(inst)
    expected = set()
    n = inst.n
    for root in range(n):
        others = [p for p in range(n) if p != root]
        for recv in itertools.product(*[[q for q in range(n) if q != p] for p in others]):
            a = ReceiverAssignment(SINKTREE1D, dict(zip(others, recv)), root)
            if is_valid(inst, a) and interference(inst, a) == opt:
                expected.add((root, tuple(sorted(a.receiver.items()))))
    got = {
        (a.sink, tuple(sorted(a.receiver.items()))) for a in enumerate_optimal_1d(inst)
    }
    assert got == expected


def test_optimal_count():
    res = brute_force_1d(Instance1D.from_values([0, 1]), count_optimal=True)
    assert res.optimal_count == 2
    assert brute_force_1d(Instance1D.from_values([0, 1])).optimal_count is None


def test_bst_existence_small():
    rng = random.Random(7)
    sizes = [rng.randint(2, 6) for _ in range(8)] + [7, 7]
    for n in sizes:
        inst = Instance1D.from_values(rng.sample(range(0, 50), n))
        assert any(
            not cross_edges(inst, a) and has_bst_property(inst, a)
            for a in enumerate_optimal_1d(inst)
        )


def test_cap_refusal():
    inst = Instance1D.from_values(range(10))
    with pytest.raises(CapExceededError):
        brute_force_1d(inst)
    with pytest.raises(CapExceededError):
        list(enumerate_optimal_1d(inst))
    # explicit override is allowed
    assert brute_force_1d(Instance1D.from_values(range(4)), cap=4).optimum == 2


def test_p_family_monotone():
    # Soft sanity check: optima of the doubling family are nondecreasing.
    from interfmin.families import gen_p

    optima = [brute_force_1d(gen_p(i).instance).optimum for i in range(1, 4)]
    assert optima == sorted(optima) == [1, 2, 3]


def test_two_points_2d():
    inst = Instance2D.from_values([(0, 0), (1, 0)])
    res = brute_force_2d(inst)
    assert res.optimum == 2
    assert is_valid(inst, res.witness)


def test_triangle_2d():
    inst = Instance2D.from_values([(0, 0), (1, 0), (0, 1)])
    res = brute_force_2d(inst)
    assert res.optimum <= 3
    assert is_valid(inst, res.witness)
    assert interference(inst, res.witness) == res.optimum
    assert res.optimum == rejection_optimum_2d(inst)


def test_collinear_2d_matches_rejection():
    inst = Instance2D.from_values([(0, 0), (1, 0), (2, 0)])
    assert brute_force_2d(inst).optimum == rejection_optimum_2d(inst)


def test_cap_refusal_2d():
    inst = Instance2D.from_values([(i, 0) for i in range(8)])
    with pytest.raises(CapExceededError):
        brute_force_2d(inst)


def test_2d_needs_two_points():
    with pytest.raises(InputError):
        brute_force_2d(Instance2D.from_values([(0, 0)]))
