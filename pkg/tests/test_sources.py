import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import random_linear_atomic
from infocluster.errors import EmptySet, ModelError, OverlappingFamily, UnknownVariable
from infocluster.modelfile import load_fixture
from infocluster.sources import (
    EntropyTableSource,
    LinearAtomicSource,
    PmfSource,
    conditional_entropy,
    is_mutually_independent,
    mutual_information,
    validate,
)
from infocluster.submodular import TOL, check_submodular


def test_fixture_entropies():
    a, _ = load_fixture("example_a")
    assert a.entropy("Y") == 3
    assert a.entropy(["X1", "X2"]) == 3
    assert a.entropy([]) == 0
    c, _ = load_fixture("example_c")
    assert c.entropy("Y") == Fraction(7, 3)
    assert c.entropy(["X4"]) == Fraction(1, 3)
    d, _ = load_fixture("example_d")
    assert d.entropy("Y") == Fraction(13, 4)
    assert d.entropy(["X2", "X3"]) == 3


def test_xor_rank():
    m = LinearAtomicSource(["a", "b"], {}, {"P": {"bits": ["a"]}, "Q": {"bits": ["b"]}, "R": {"bits": ["a^b"]}})
    assert m.entropy(["P", "Q", "R"]) == 2
    assert m.entropy(["P", "R"]) == 2
    assert mutual_information(m, ["P"], ["Q"]) == 0
    assert mutual_information(m, ["P", "Q"], ["R"]) == 1


def test_linear_atomic_rejects_bad_models():
    with pytest.raises(ModelError, match="atom"):
        LinearAtomicSource(["a"], {"t": "1/2"}, {"P": {"bits": ["a^t"]}})
    with pytest.raises(ModelError, match="undeclared bit"):
        LinearAtomicSource(["a"], {}, {"P": {"bits": ["b"]}})
    with pytest.raises(ModelError, match="undeclared atom"):
        LinearAtomicSource(["a"], {}, {"P": {"atoms": ["t"]}})
    with pytest.raises(ModelError, match="non-positive"):
        LinearAtomicSource([], {"t": 0}, {"P": {"atoms": ["t"]}})
    with pytest.raises(ModelError):
        LinearAtomicSource(["a", "a"], {}, {"P": {"bits": ["a"]}})


def test_indices_and_errors():
    a, _ = load_fixture("example_a")
    assert a.indices(["X1", 2]) == frozenset({1, 2})
    with pytest.raises(UnknownVariable):
        a.entropy(["nope"])
    with pytest.raises(UnknownVariable):
        a.entropy([7])
    with pytest.raises(EmptySet):
        mutual_information(a, [], ["Y"])


def test_restrict_reorders():
    a, _ = load_fixture("example_a")
    sub = a.restrict(["X2", "Y"])
    assert sub.variables == ("X2", "Y")
    assert sub.entropy([0]) == 1 and sub.entropy([1]) == 3 and sub.entropy([0, 1]) == 3


def test_independence():
    d, _ = load_fixture("example_d")
    assert not is_mutually_independent(d, [["X1"], ["X2"], ["X3"]])
    assert is_mutually_independent(d, [["X1"], ["X2"]])
    c, _ = load_fixture("example_c")
    assert is_mutually_independent(c, [["X1"], ["X2"], ["X3"], ["X4"]])
    with pytest.raises(OverlappingFamily):
        is_mutually_independent(c, [["X1"], ["X1", "X2"]])


def test_pmf_backend():
    m = PmfSource(["A", "B"], [("1/4", [0, 0]), ("1/4", [0, 1]), ("1/2", [1, 1])])
    assert not m.exact
    assert abs(m.entropy(["A"]) - 1.0) < TOL
    assert abs(m.entropy(["A", "B"]) - 1.5) < TOL
    assert validate(m) == []
    bad = PmfSource(["A"], [("1/2", [0]), ("1/4", [1])])
    assert [v.kind for v in validate(bad)] == ["probability-sum"]
    with pytest.raises(ModelError):
        PmfSource(["A", "B"], [(1, [0])]).entropy(["A"])


def test_entropy_table_backend():
    ok = EntropyTableSource(["A", "B"], {"A": 1, "B": 1, "A,B": "3/2"})
    assert ok.entropy(["A", "B"]) == Fraction(3, 2)
    assert validate(ok) == []
    bad = EntropyTableSource(["A", "B"], {"A": 1, "B": 1, "A,B": 3})
    kinds = {v.kind for v in validate(bad)}
    assert kinds == {"submodularity"}
    assert not any(v.fatal for v in validate(bad))
    mono = EntropyTableSource(["A", "B"], {"A": 2, "B": 1, "A,B": "3/2"})
    assert "monotonicity" in {v.kind for v in validate(mono)}
    partial = EntropyTableSource(["A", "B"], {"A": 1})
    assert [v.kind for v in validate(partial)] == ["incomplete"]
    with pytest.raises(ModelError):
        partial.entropy(["A"])


seeds = st.integers(0, 2**31)


@settings(max_examples=60, deadline=None)
@given(seeds, st.integers(1, 6))
def test_polymatroid_linear_atomic(seed, n):
    m = random_linear_atomic(random.Random(seed), n)
    h = m.set_function()
    assert h.at(0) == 0
    for mask in range(1 << n):
        for b in range(n):
            assert h.at(mask | (1 << b)) >= h.at(mask)
    assert check_submodular(h) == []


def _random_pmf(rng, n):
    support = rng.randint(1, 6)
    weights = [rng.randint(1, 5) for _ in range(support)]
    total = sum(weights)
    return PmfSource(
        [f"V{i}" for i in range(n)],
        [(Fraction(w, total), [rng.randint(0, 2) for _ in range(n)]) for w in weights],
    )


@settings(max_examples=60, deadline=None)
@given(seeds, st.integers(1, 6))
def test_polymatroid_pmf(seed, n):
    m = _random_pmf(random.Random(seed), n)
    h = m.set_function()
    assert h.at(0) == 0
    for mask in range(1 << n):
        for b in range(n):
            assert h.at(mask | (1 << b)) >= h.at(mask) - TOL
    assert check_submodular(h) == []


def to_pmf(model: LinearAtomicSource) -> PmfSource | None:
    """Enumerate the distribution a linear-atomic model describes.

    Integer-weight atoms become that many extra uniform bits; any other weight
    has no finite rational realization and the model is skipped.
    """
    if any(w.denominator != 1 for w in model.atoms.values()):
        return None
    extra = {a: [f"{a}#{k}" for k in range(int(w))] for a, w in model.atoms.items()}
    primitives = list(model.bits) + [b for bs in extra.values() for b in bs]
    if len(primitives) > 12:
        return None
    p = Fraction(1, 2 ** len(primitives))
    outcomes = []
    for assignment in itertools.product((0, 1), repeat=len(primitives)):
        env = dict(zip(primitives, assignment))
        row = []
        for name in model.variables:
            xs = [sum(env[t] for t in combo) % 2 for combo in model.combos[name]]
            xs += [env[b] for a in sorted(model.var_atoms[name]) for b in extra[a]]
            row.append(tuple(xs))
        outcomes.append((p, row))
    return PmfSource(model.variables, outcomes)


@settings(max_examples=40, deadline=None)
@given(seeds, st.integers(1, 5))
def test_cross_backend_oracle(seed, n):
    rng = random.Random(seed)
    # only integer atom weights have a finite realization
    model = random_linear_atomic(rng, n, weights=[Fraction(1), Fraction(2)])
    pmf = to_pmf(model)
    if pmf is None:
        return
    for mask in range(1 << n):
        subset = [i for i in range(n) if (mask >> i) & 1]
        assert abs(float(model.entropy(subset)) - pmf.entropy(subset)) < 1e-9


def test_cross_backend_on_fixtures():
    for name in ("example_a", "example_b"):
        model, _ = load_fixture(name)
        pmf = to_pmf(model)
        for mask in range(1 << model.n):
            subset = [i for i in range(model.n) if (mask >> i) & 1]
            assert abs(float(model.entropy(subset)) - pmf.entropy(subset)) < 1e-9


@settings(max_examples=60, deadline=None)
@given(seeds, st.integers(2, 6))
def test_mutual_information_identities(seed, n):
    rng = random.Random(seed)
    m = random_linear_atomic(rng, n)
    a = frozenset(rng.sample(range(n), rng.randint(1, n)))
    b = frozenset(rng.sample(range(n), rng.randint(1, n)))
    assert mutual_information(m, a, b) == mutual_information(m, b, a)
    assert mutual_information(m, a, b) == m.entropy(a) - conditional_entropy(m, a, b)
