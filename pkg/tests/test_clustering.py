import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import random_gammas, random_linear_atomic
from infocluster.clustering import (
    clusters,
    dilworth_truncation,
    dilworth_truncation_bruteforce,
    extended_clusters,
    extended_clusters_bruteforce,
    mmi,
    mmi_bruteforce,
    psp,
)
from infocluster.combinatorics import Partition, enumerate_partitions
from infocluster.errors import FloatEqualityAmbiguous, GroundTooLarge, SubsetTooSmall
from infocluster.modelfile import load_fixture
from infocluster.sources import PmfSource
from infocluster.submodular import partition_value, residual


@pytest.fixture(scope="module")
def a():
    return load_fixture("example_a")[0]


@pytest.fixture(scope="module")
def b():
    return load_fixture("example_b")[0]


def P(*blocks):
    return Partition.of(blocks)


def test_truncation_example_a(a):
    low = dilworth_truncation(a, Fraction(1, 2))
    assert low.value == Fraction(5, 2) and low.finest == P([0, 1, 2])
    mid = dilworth_truncation(a, Fraction(3, 2))
    assert mid.value == 1 and mid.finest == P([0, 1], [2])
    tie = dilworth_truncation_bruteforce(a, 1)
    assert set(tie.optimal) == {P([0, 1, 2]), P([0, 1], [2])}
    assert tie.finest == P([0, 1], [2])
    assert dilworth_truncation(a, 1).finest == tie.finest


def test_truncation_value_is_minimum_over_partitions(a):
    for g in (Fraction(-1), Fraction(0), Fraction(7, 5), Fraction(5, 2)):
        r = residual(a.set_function(), g)
        best = min(partition_value(r, p) for p in enumerate_partitions(range(3)))
        assert dilworth_truncation(a, g).value == best


def test_psp_example_b(b):
    r = psp(b)
    assert r.critical_values == (1,)
    assert r.partitions == (P([0, 1, 2]), P([0], [1], [2]))


def test_mmi_example_b(b):
    assert mmi(b, [0, 1, 2]) == 1
    assert mmi(b, ["Y", "X1"]) == 1
    assert mmi(b, ["X1", "X2"]) == 0


def test_clusters_example_b(b):
    assert len(clusters(b, 1)) == 0
    assert set(clusters(b, Fraction(1, 2))) == {frozenset({0, 1, 2})}
    ext = extended_clusters(b, 1)
    assert set(ext) == {frozenset({0, 1, 2}), frozenset({0, 1}), frozenset({0, 2})}
    assert ext.clusters == extended_clusters_bruteforce(b, 1).clusters


def test_mmi_errors(a):
    with pytest.raises(SubsetTooSmall):
        mmi(a, [0])
    with pytest.raises(SubsetTooSmall):
        mmi_bruteforce(a, [1])


def test_bruteforce_cap():
    m = random_linear_atomic(random.Random(0), 11, nbits=3, natoms=0)
    with pytest.raises(GroundTooLarge):
        dilworth_truncation_bruteforce(m, 1)
    assert dilworth_truncation(m, 1).value is not None


def test_works_on_bare_set_function(a):
    h = a.set_function()
    assert psp(h).critical_values == psp(a).critical_values
    assert mmi(h, [0, 1]) == 2


seeds = st.integers(0, 2**31)


@settings(max_examples=40, deadline=None)
@given(seeds, st.integers(2, 6))
def test_oracles_agree(seed, n):
    rng = random.Random(seed)
    m = random_linear_atomic(rng, n)
    for g in random_gammas(rng, m, 2):
        inc, bf = dilworth_truncation(m, g), dilworth_truncation_bruteforce(m, g)
        assert inc.value == bf.value and inc.finest == bf.finest
        assert extended_clusters(m, g).clusters == extended_clusters_bruteforce(m, g).clusters
    subset = rng.sample(range(n), rng.randint(2, n))
    value, arg = mmi_bruteforce(m, subset)
    assert mmi(m, subset) == value
    assert arg.ground == frozenset(subset) and len(arg) >= 2


@settings(max_examples=40, deadline=None)
@given(seeds, st.integers(2, 7))
def test_psp_structure(seed, n):
    rng = random.Random(seed)
    m = random_linear_atomic(rng, n)
    h = m.set_function()
    r = psp(m)
    cv = r.critical_values
    assert list(cv) == sorted(set(cv))
    assert len(r.partitions) == len(cv) + 1
    assert r.partitions[0] == Partition.trivial(range(n))
    assert r.partitions[-1] == Partition.singletons(range(n))
    # strictly finer as gamma grows; slopes -|P| strictly decrease
    for p, q in zip(r.partitions, r.partitions[1:]):
        assert q < p and len(q) > len(p)
    # adjacent lines meet at each critical value
    for j, g in enumerate(cv):
        hg = residual(h, g)
        assert partition_value(hg, r.partitions[j]) == partition_value(hg, r.partitions[j + 1])
    # envelope of the chain's lines reproduces the truncation everywhere
    for g in random_gammas(rng, m, 4):
        assert r.value(g) == dilworth_truncation(m, g).value
        assert r.partition_at(g) == dilworth_truncation(m, g).finest


@settings(max_examples=30, deadline=None)
@given(seeds, st.integers(2, 6))
def test_extended_contains_original(seed, n):
    rng = random.Random(seed)
    m = random_linear_atomic(rng, n)
    for g in random_gammas(rng, m, 2):
        assert clusters(m, g).clusters <= extended_clusters(m, g).clusters


def test_cluster_mmi_characterization(a):
    # every cluster has MMI above gamma
    for g in (Fraction(1, 2), Fraction(3, 2)):
        for c in clusters(a, g):
            assert mmi(a, c) > g


def _pmf_b():
    # Example B realized as an explicit distribution over two fair bits
    rows = [(Fraction(1, 4), [(x, y), x, y]) for x in (0, 1) for y in (0, 1)]
    return PmfSource(["Y", "X1", "X2"], rows)


def test_float_backend_matches_exact(b):
    f = _pmf_b()
    r = psp(f)
    assert len(r.critical_values) == 1 and abs(r.critical_values[0] - 1) < 1e-9
    assert r.partitions == psp(b).partitions
    assert abs(mmi(f, [0, 1, 2]) - 1) < 1e-9
    assert abs(dilworth_truncation(f, 0.25).value - dilworth_truncation(b, Fraction(1, 4)).value) < 1e-9


def test_float_extended_clusters_refuse_ties():
    f = _pmf_b()
    with pytest.raises(FloatEqualityAmbiguous):
        extended_clusters(f, 1.0)
    assert extended_clusters(f, 0.5).clusters == frozenset({frozenset({0, 1, 2})})


def test_residual_split_at_second_feature_entropy(a):
    # at gamma = H(X2) the split {{0,1},{2}} costs the same as keeping V whole
    g = a.entropy(["X2"])
    r = residual(a.set_function(), g)
    assert partition_value(r, P([0, 1], [2])) == partition_value(r, P([0, 1, 2])) == 2
