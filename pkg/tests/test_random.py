"""Random generators: determinism and validity by construction."""

import random

import pytest

from doublecat.dblcat import double_cat_tables_equal, validate_double_category
from doublecat.fincat import validate_category, validate_profunctor
from doublecat.presheaf import validate_presheaf
from doublecat.randgen import (
    RandomSpec,
    generate,
    random_category,
    random_double_category,
    random_presheaf,
    random_profunctor,
)
from doublecat.util import GenerationError


def test_determinism():
    a = generate(RandomSpec(seed=7, kind="doublecat"))
    b = generate(RandomSpec(seed=7, kind="doublecat"))
    assert double_cat_tables_equal(a, b)


def test_bounds_of_one_gives_trivial_double_category():
    d = generate(RandomSpec(seed=0, kind="doublecat", max_objects=1,
                            max_parallel=1, max_value_size=1))
    assert len(d.objects) == 1
    assert len(d.hmors) == 1
    assert len(d.vmors) == 1
    assert len(d.squares) == 1


def test_invalid_bounds_rejected():
    with pytest.raises(GenerationError):
        RandomSpec(seed=0, max_objects=0)


def test_random_categories_valid():
    rng = random.Random(1)
    for _ in range(30):
        c = random_category(rng)
        assert validate_category(c).ok


def test_random_profunctors_valid():
    spec = RandomSpec(seed=0, kind="profunctor")
    rng = random.Random(3)
    for _ in range(25):
        u = random_profunctor(rng, spec)
        assert validate_profunctor(u).ok


def test_random_double_categories_valid():
    spec = RandomSpec(seed=0)
    rng = random.Random(5)
    for _ in range(40):
        d = random_double_category(rng, spec)
        report = validate_double_category(d)
        assert report.ok, str(report)


def test_random_presheaves_valid():
    spec = RandomSpec(seed=0, kind="presheaf")
    rng = random.Random(11)
    for _ in range(25):
        x = random_presheaf(rng, spec)
        report = validate_presheaf(x)
        assert report.ok, f"{x.name}: {report}"


def test_hundred_random_presheaves_at_bound_three_validate():
    spec = RandomSpec(seed=0, kind="presheaf", max_objects=3,
                      max_value_size=3)
    rng = random.Random(2024)
    for _ in range(100):
        x = random_presheaf(rng, spec)
        report = validate_presheaf(x)
        assert report.ok, f"{x.name}: {report}"
