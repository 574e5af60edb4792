import itertools
import random

import pytest

import codes
from curvelrc import errors, linalg
from curvelrc.repairsim import encode, exhaustive_patterns, local_repair, run_campaign


def test_encode_zero_and_units():
    c = codes.code("hermitian-9-b2")
    assert encode(c, [0] * c.k) == [0] * c.n
    for i in range(c.k):
        e = [0] * c.k
        e[i] = 1
        assert encode(c, e) == c.generator[i]
    with pytest.raises(errors.LengthMismatch):
        encode(c, [1])


def test_no_holes_is_identity():
    c = codes.code("genus2-example")
    cw = encode(c, [1, 2, 3, 4, 5])
    assert local_repair(c, cw, 0, []) == {}


def test_repair_reads_only_the_group():
    c = codes.code("genus2-example")
    rng = random.Random(1)
    cw = encode(c, [rng.randrange(c.q) for _ in range(c.k)])
    g = c.groups[2]
    damaged = [None if j not in g else v for j, v in enumerate(cw)]  # everything outside lost
    erased = g[:2]
    for j in erased:
        damaged[j] = None
    filled = local_repair(c, damaged, 2, erased)
    assert all(filled[j] == cw[j] for j in erased)
    with pytest.raises(ValueError):
        local_repair(c, cw, 2, [c.groups[3][0]])


def test_example_two_erasures_all_patterns():
    c = codes.code("genus2-example")
    sc = exhaustive_patterns(c, 2, seed=5)
    assert sc.attempts == 15 * 6
    assert sc.rate == 1.0 and not sc.failures


def test_example_three_erasures_unrecoverable():
    c = codes.code("genus2-example")
    cw = encode(c, [1, 0, 2, 0, 3])
    g = c.groups[0]
    failures = 0
    for erased in itertools.combinations(g, 3):
        try:
            local_repair(c, cw, 0, erased)
        except errors.Unrecoverable:
            failures += 1
    assert failures >= 1
    sc = exhaustive_patterns(c, 3)
    assert sc.rate < 1.0


def test_inconsistent_survivors_reported():
    c = codes.code("hermitian-9-b1")  # local [4, 2, 3] blocks
    cw = encode(c, [1, 2, 3])
    g = c.groups[0]
    bad = list(cw)
    bad[g[0]] = (bad[g[0]] + 1) % c.q
    with pytest.raises(errors.Unrecoverable):
        local_repair(c, bad, 0, [g[3]])


@pytest.mark.parametrize("name", list(codes.INSTANCES))
def test_campaign_guaranteed_rate(name):
    c = codes.code(name)
    sc = run_campaign(c, c.delta - 1, trials=3, seed=11)
    assert sc.attempts == 3 * c.m and sc.rate == 1.0
    assert sc.average_reads == c.r
    if max(len(g) for g in c.groups) <= 10:
        assert exhaustive_patterns(c, c.delta - 1, seed=2).rate == 1.0


def test_campaign_stress_and_guard():
    c = codes.code("genus2-example")
    with pytest.raises(ValueError):
        run_campaign(c, 3, trials=2)
    sc = run_campaign(c, 3, trials=2, force=True)
    assert sc.rate < 1.0 and sc.failures


def test_campaign_deterministic_and_empty():
    c = codes.code("hermitian-9-b2")
    a = run_campaign(c, 1, trials=5, seed=42).to_dict()
    b = run_campaign(c, 1, trials=5, seed=42).to_dict()
    assert a == b
    empty = run_campaign(c, 1, trials=0)
    assert empty.attempts == 0 and empty.rate is None and empty.failures == []
