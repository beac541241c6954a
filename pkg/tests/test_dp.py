import math
import random

import pytest

from interfmin.dpsolve import (
    Range,
    Subproblem,
    _solve_with_bound,
    size_bound,
    solve_exact,
    solve_opt_search,
    solve_subproblem,
)
from interfmin.errors import InputError
from interfmin.families import gen_p
from interfmin.model import Instance1D, has_bst_property, interference, is_valid
from interfmin.oracle import brute_force_1d


def test_singleton_base_cases():
    inst = Instance1D.from_values([0, 1])
    # one outgoing range centered at the root: interference |incoming| + 1
    v = solve_subproblem(inst, Subproblem(0, 0, 0, (), (Range(0, 1),)), 4)
    assert v.interference == 1
    v = solve_subproblem(inst, Subproblem(0, 0, 0, (Range(1, 0),), (Range(0, 1),)), 4)
    assert v.interference == 2
    # empty outgoing set: infeasible away from the global level
    v = solve_subproblem(inst, Subproblem(0, 0, 0, (), ()), 4)
    assert v.interference == math.inf
    # more than one range at the lone point: infeasible
    inst3 = Instance1D.from_values([0, 1, 2])
    v = solve_subproblem(inst3, Subproblem(1, 1, 1, (), (Range(1, 0), Range(1, 2))), 4)
    assert v.interference == math.inf


def test_size_cap_precondition():
    inst = Instance1D.from_values([0, 1])
    with pytest.raises(InputError):
        solve_subproblem(inst, Subproblem(0, 0, 0, (Range(1, 0),), (Range(0, 1),)), 1)


def test_two_points():
    inst = Instance1D.from_values([0, 1])
    res = solve_exact(inst)
    assert res.optimum == 1
    assert is_valid(inst, res.witness)


def test_global_subproblem_trace():
    # Root at the right point: the lone left child carries the connecting
    # edge's range, and that ball also covers the root.
    inst = Instance1D.from_values([0, 1])
    v = solve_subproblem(inst, Subproblem(0, 1, 1, (), ()), 4)
    assert v.interference == 1
    assert v.choice is not None
    left_key, right_key = v.choice
    assert right_key is None
    assert left_key == (0, 0, 0, (), (Range(0, 1),))


def test_singleton_instance():
    res = solve_exact(Instance1D.from_values([5]))
    assert res.optimum == 0


def test_known_optima():
    assert solve_exact(Instance1D.from_values([0, 1, 3, 4])).optimum == 2
    assert solve_exact(gen_p(3).instance).optimum == 3
    assert solve_opt_search(gen_p(3).instance).optimum == 3


def test_matches_oracle_random():
    rng = random.Random(20250810)
    for _ in range(40):
        n = rng.randint(2, 7)
        inst = Instance1D.from_values(rng.sample(range(0, 101), n))
        dp = solve_exact(inst)
        orc = brute_force_1d(inst)
        assert dp.optimum == orc.optimum, inst.points
        assert is_valid(inst, dp.witness)
        assert interference(inst, dp.witness) == dp.optimum


def test_witness_has_bst_property():
    rng = random.Random(31337)
    for _ in range(20):
        n = rng.randint(2, 7)
        inst = Instance1D.from_values(rng.sample(range(0, 101), n))
        res = solve_exact(inst)
        assert has_bst_property(inst, res.witness)


def test_cap_monotonicity():
    rng = random.Random(606)
    for _ in range(15):
        n = rng.randint(2, 7)
        inst = Instance1D.from_values(rng.sample(range(0, 101), n))
        b = size_bound(n)
        v1, w1, _ = _solve_with_bound(inst, b)
        v2, w2, _ = _solve_with_bound(inst, b + 1)
        assert v1 == v2
        assert w1.receiver == w2.receiver and w1.sink == w2.sink


def test_opt_search_equals_exact():
    rng = random.Random(777)
    for _ in range(15):
        n = rng.randint(2, 7)
        inst = Instance1D.from_values(rng.sample(range(0, 101), n))
        assert solve_opt_search(inst).optimum == solve_exact(inst).optimum


def test_opt_search_stops_early():
    # two points: already feasible at cap 1
    value, witness, _ = _solve_with_bound(Instance1D.from_values([0, 1]), 1)
    assert value == 1 and witness is not None
    assert solve_opt_search(Instance1D.from_values([0, 1])).optimum == 1
    assert solve_opt_search(Instance1D.from_values([0, 1, 3, 4])).optimum == 2


def test_determinism():
    inst = Instance1D.from_values([0, 3, 4, 9, 11])
    a = solve_exact(inst)
    b = solve_exact(inst)
    assert a.witness.receiver == b.witness.receiver
    assert a.witness.sink == b.witness.sink
