"""Random model builders shared by the test modules."""
from __future__ import annotations

import random
from fractions import Fraction

from infocluster.clustering import psp
from infocluster.featsel import FeatureProblem
from infocluster.sources import LinearAtomicSource

WEIGHTS = [Fraction(1, 3), Fraction(1, 2), Fraction(2, 3), Fraction(5, 4), Fraction(1), Fraction(3, 2)]


def _combo(rng: random.Random, bits: list[str]) -> str:
    k = rng.randint(1, min(3, len(bits)))
    return "^".join(rng.sample(bits, k))


def random_linear_atomic(
    rng: random.Random,
    n: int,
    nbits: int | None = None,
    natoms: int | None = None,
    weights: list[Fraction] = WEIGHTS,
) -> LinearAtomicSource:
    """``n`` variables over a few shared uniform bits and weighted atoms."""
    nbits = rng.randint(1, 5) if nbits is None else nbits
    natoms = rng.randint(0, 2) if natoms is None else natoms
    bits = [f"W{i}" for i in range(nbits)]
    atoms = {f"A{i}": rng.choice(weights) for i in range(natoms)}
    variables = {}
    for v in range(n):
        defn = {"bits": [_combo(rng, bits) for _ in range(rng.randint(0, 2))]}
        defn["atoms"] = [a for a in atoms if rng.random() < 0.3]
        if not defn["bits"] and not defn["atoms"]:
            defn["bits"] = [_combo(rng, bits)]
        variables[f"Z{v}"] = defn
    return LinearAtomicSource(bits, atoms, variables)


def random_independent_problem(rng: random.Random, m: int) -> FeatureProblem:
    """``Y`` plus ``m`` mutually independent features.

    Each feature owns private bits or atoms; ``Y`` mixes XORs across all bits
    and a random selection of atoms, so it depends on the features jointly.
    """
    bits: list[str] = []
    atoms: dict[str, Fraction] = {}
    features = {}
    for j in range(1, m + 1):
        own = [f"B{j}_{i}" for i in range(rng.randint(0, 2))]
        bits += own
        defn = {"bits": list(own), "atoms": []}
        if not own or rng.random() < 0.3:
            name = f"A{j}"
            atoms[name] = rng.choice(WEIGHTS)
            defn["atoms"].append(name)
        features[f"X{j}"] = defn
    y = {"bits": [], "atoms": [a for a in atoms if rng.random() < 0.5]}
    if bits:
        y["bits"] = [_combo(rng, bits) for _ in range(rng.randint(1, 3))]
    elif not y["atoms"]:
        y["atoms"] = [next(iter(atoms))]
    model = LinearAtomicSource(bits, atoms, {"Y": y, **features})
    return FeatureProblem(model, "Y")


def random_gammas(rng: random.Random, model, count: int = 3) -> list[Fraction]:
    """Random rationals around the interesting range, plus PSP critical values."""
    top = int(model.entropy(range(model.n))) + 2
    out = [Fraction(rng.randint(-2 * 6, top * 6), rng.randint(1, 6)) for _ in range(count)]
    out += list(psp(model).critical_values)
    return out
