import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import random_linear_atomic
from infocluster.combinatorics import Partition, from_mask, to_mask
from infocluster.errors import GroundMismatch, ScaleOverflow
from infocluster.modelfile import load_fixture
from infocluster.submodular import (
    SetFunction,
    as_scalar,
    check_submodular,
    fmt_scalar,
    partition_value,
    residual,
    sfm_bruteforce,
)


def test_scalars():
    assert as_scalar("7/3") == Fraction(7, 3)
    assert as_scalar(2) == 2
    assert as_scalar("0.5") == Fraction(1, 2)
    assert fmt_scalar(Fraction(7, 3)) == "7/3"
    assert fmt_scalar(Fraction(-2)) == "-2"


def test_residual_includes_empty_set():
    h = load_fixture("example_a")[0].set_function()
    r = residual(h, "1/2")
    assert r.gamma == Fraction(1, 2)
    assert r.at(0) == Fraction(-1, 2)
    assert r.at(0b111) == Fraction(5, 2)
    assert all(r.base.at(m) == h.at(m) for m in range(8))


def test_residual_overflow_guard():
    h = SetFunction(np.array([0, 1, 1, 2], dtype=np.int64), 1)
    with pytest.raises(ScaleOverflow):
        residual(h, Fraction(1, 2**60))


def test_float_function():
    h = SetFunction(np.array([0.0, 1.0, 1.0, 1.5]))
    assert not h.exact
    assert h({0, 1}) == 1.5
    assert abs(residual(h, 0.25).at(3) - 1.25) < 1e-12


def test_restrict():
    h = load_fixture("example_a")[0].set_function()
    sub = h.restrict([2, 0])
    assert sub.n == 2
    assert sub.at(0b01) == h.at(0b100) and sub.at(0b10) == h.at(0b001) and sub.at(0b11) == h.at(0b101)


def test_check_submodular_reports_pairs():
    h = SetFunction(np.array([0, 1, 1, 3], dtype=np.int64), 1)
    assert check_submodular(h) == [(frozenset({0}), frozenset({1}))]


def test_sfm_constraints():
    h = load_fixture("example_a")[0].set_function()
    r = sfm_bruteforce(residual(h, 2), must_contain=[0])
    # h_2({0}) = 1; every superset of {0} has entropy 3 as well
    assert r.value == 1 and r.minimal == frozenset({0}) and r.maximal == frozenset({0, 1, 2})
    with pytest.raises(ValueError):
        sfm_bruteforce(h, within=[1], must_contain=[0])
    with pytest.raises(GroundMismatch):
        sfm_bruteforce(h, within=[5])


def test_partition_value_singletons():
    h = load_fixture("example_c")[0].set_function()
    g = Fraction(2, 7)
    r = residual(h, g)
    single = partition_value(r, Partition.singletons(range(h.n)))
    assert single == sum(h.at(1 << i) - g for i in range(h.n))
    with pytest.raises(GroundMismatch):
        partition_value(r, Partition.trivial(range(h.n + 1)))


seeds = st.integers(0, 2**31)
gammas = st.fractions(min_value=-3, max_value=5, max_denominator=12)


@settings(max_examples=40, deadline=None)
@given(seeds, st.integers(1, 6), gammas)
def test_residual_preserves_submodularity(seed, n, g):
    h = random_linear_atomic(random.Random(seed), n).set_function()
    assert check_submodular(h) == []
    assert check_submodular(residual(h, g)) == []


@settings(max_examples=40, deadline=None)
@given(seeds, st.integers(1, 6), gammas)
def test_sfm_minimizer_lattice(seed, n, g):
    rng = random.Random(seed)
    h = random_linear_atomic(rng, n).set_function()
    r = residual(h, g)
    within = frozenset(rng.sample(range(n), rng.randint(1, n)))
    must = frozenset(x for x in within if rng.random() < 0.3)
    res = sfm_bruteforce(r, within=within, must_contain=must)
    feasible = [m for m in range(1 << n) if (m & ~to_mask(within)) == 0 and (to_mask(must) & ~m) == 0]
    values = {m: r.at(m) for m in feasible}
    best = min(values.values())
    assert res.value == best
    minimizers = [m for m in feasible if values[m] == best]
    assert res.minimal <= res.maximal
    assert r.at(to_mask(res.minimal)) == best and r.at(to_mask(res.maximal)) == best
    for a in minimizers:
        assert res.minimal <= from_mask(a) <= res.maximal
        for b in minimizers:
            assert values[a | b] == best and values[a & b] == best
