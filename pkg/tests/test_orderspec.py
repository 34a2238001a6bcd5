"""Order specifications: prime splitting, classification, local counts."""

import json
import pathlib

from fractions import Fraction

import pytest

from ordgen.errors import (
    EmptySpec,
    ExceptionalPrimeNeedsOverride,
    IndexNotDividingDegree,
    NotMonic,
    SpecError,
    UnsupportedRank,
)
from ordgen.finalg import brute_gen_count
from ordgen.orderspec import (
    OrderSpec,
    SimpleFactorSpec,
    c_factor,
    classify,
    degree_pattern,
    gen_count_local,
    load_spec,
    local_data,
    local_quotient_algebra,
    min_k_local,
    spec_from_dict,
    spec_to_dict,
)

DATA = pathlib.Path(__file__).parent / "data"


def fixture(name):
    return load_spec(str(DATA / name))


def base_dict():
    return json.loads((DATA / "zi.json").read_text())


# ---------------------------------------------------------------- splitting


def test_degree_pattern_split_prime():
    pat = degree_pattern((1, 0, 1), 5)  # x^2 + 1 splits mod 5
    assert pat.pairs == ((1, 1), (1, 1))
    assert pat.certified


def test_degree_pattern_inert_prime():
    pat = degree_pattern((1, 0, 1), 3)
    assert pat.pairs == ((2, 1),)
    assert pat.certified


def test_degree_pattern_ramified_prime_certified_when_index_matches():
    pat = degree_pattern((1, 0, 1), 2)  # (x+1)^2 mod 2, disc = -4
    assert pat.pairs == ((1, 2),)
    assert pat.certified


def test_degree_pattern_flags_uncertifiable_prime():
    pat = degree_pattern((3, 0, 1), 2)  # x^2 + 3: mod-2 repetition hides the true shape
    assert pat.pairs == ((1, 2),)
    assert not pat.certified


def test_degree_pattern_rejects_nonmonic():
    with pytest.raises(NotMonic):
        degree_pattern((1, 2), 5)


# ---------------------------------------------------------------- validation


def test_fixture_specs_load():
    for name in (
        "z.json",
        "zi.json",
        "m2q.json",
        "m3q.json",
        "quat2.json",
        "quat2x7.json",
        "exceptional.json",
        "exceptional_override.json",
    ):
        spec = fixture(name)
        assert isinstance(spec, OrderSpec)
        assert spec.factors


def test_spec_roundtrips_through_dict():
    spec = fixture("quat2x7.json")
    assert spec_from_dict(spec_to_dict(spec)) == spec


@pytest.mark.parametrize(
    "mutate,error",
    [
        (lambda d: d.update(factors=[]), EmptySpec),
        (lambda d: d.update(factors=d["factors"] * 2), SpecError),
        (lambda d: d.update(bogus=1), SpecError),
        (lambda d: d["factors"][0].update(bogus=1), SpecError),
        (lambda d: d["factors"][0].update(center_minpoly=[1, 2]), NotMonic),
        (lambda d: d["factors"][0].update(degree=0), SpecError),
        (lambda d: d["factors"][0].update(local_indices={"3": [4]}), IndexNotDividingDegree),
        (lambda d: d["factors"][0].update(local_indices={"x": [1]}), SpecError),
        (lambda d: d["factors"][0].update(copies=0), SpecError),
        (lambda d: d.update(overrides={"2": [[1, 1, 1, 1]]}), SpecError),
    ],
)
def test_spec_dict_validation_errors(mutate, error):
    doc = base_dict()
    mutate(doc)
    with pytest.raises(error):
        spec_from_dict(doc)


def test_dimension_counts_copies():
    assert fixture("zi.json").dimension == 2
    assert fixture("m3q.json").dimension == 9
    assert fixture("quat2x7.json").dimension == 28


# ---------------------------------------------------------------- local data


def test_local_data_shapes_for_gaussian_integers():
    spec = fixture("zi.json")
    assert local_data(spec, 5).entries == ((1, 1, 1, 1), (1, 1, 1, 1))
    assert local_data(spec, 3).entries == ((1, 1, 1, 2),)
    assert local_data(spec, 2).entries == ((1, 1, 2, 1),)


def test_local_data_shapes_for_quaternion_order():
    spec = fixture("quat2.json")
    assert local_data(spec, 2).entries == ((1, 2, 1, 1),)  # listed division prime
    assert local_data(spec, 3).entries == ((2, 1, 1, 1),)  # split matrix prime


def test_exceptional_prime_demands_override():
    spec = fixture("exceptional.json")
    data = local_data(spec, 2)
    assert data.exceptional
    assert data.entries == ()
    with pytest.raises(ExceptionalPrimeNeedsOverride) as info:
        classify(data)
    assert info.value.p == 2


def test_override_supplies_local_shape():
    spec = fixture("exceptional_override.json")
    data = local_data(spec, 2)
    assert not data.exceptional
    assert data.entries == ((1, 1, 1, 2),)
    assert min_k_local(classify(data)) == 1


def test_classify_groups_by_block_shape():
    spec = fixture("zi.json")
    groups = classify(local_data(spec, 5)).groups
    assert groups == (((1, 1), ((1, Fraction(0)), (1, Fraction(0)))),)
    groups2 = classify(local_data(spec, 2)).groups
    assert groups2 == (((1, 1), ((2, Fraction(1, 2)),)),)


@pytest.mark.parametrize(
    "m,e,f,q,expected",
    [
        (1, 1, 1, 5, Fraction(0)),
        (1, 1, 3, 5, Fraction(0)),
        (1, 2, 1, 2, Fraction(1, 2)),
        (1, 3, 2, 3, Fraction(1, 9)),
        (2, 1, 1, 7, Fraction(1)),
        (3, 2, 2, 2, Fraction(1)),
    ],
)
def test_c_factor_cases(m, e, f, q, expected):
    assert c_factor(m, e, f, q) == expected


# ---------------------------------------------------------------- counts


@pytest.mark.parametrize(
    "name,p,k,expected",
    [
        ("zi.json", 2, 1, 2),
        ("zi.json", 2, 2, 12),
        ("zi.json", 3, 1, 6),
        ("zi.json", 3, 2, 72),
        ("zi.json", 5, 1, 20),
        ("zi.json", 5, 2, 600),
        ("quat2.json", 2, 1, 0),
        ("quat2.json", 2, 2, 144),
        ("quat2.json", 3, 1, 0),
        ("quat2.json", 3, 2, 3888),
    ],
)
def test_local_count_frozen_values(name, p, k, expected):
    cls = classify(local_data(fixture(name), p))
    assert gen_count_local(k, cls) == expected


def test_local_count_matches_brute_force_on_quotient():
    spec = fixture("zi.json")
    data = local_data(spec, 5)
    alg = local_quotient_algebra(data)
    assert alg.size == 25
    cls = classify(data)
    for k in (1, 2):
        assert gen_count_local(k, cls) == brute_gen_count(alg, k)


def test_local_count_refuses_large_blocks():
    spec = OrderSpec(
        factors=(
            SimpleFactorSpec(
                name="m4", center_minpoly=(0, 1), degree=4, local_indices={}, copies=1
            ),
        ),
        free_over_base=True,
        overrides={},
    )
    with pytest.raises(UnsupportedRank):
        gen_count_local(2, classify(local_data(spec, 5)))
    # the minimum-k scan still works through certified lower bounds
    assert min_k_local(classify(local_data(spec, 5))) >= 2


@pytest.mark.parametrize(
    "name,p,expected",
    [
        ("zi.json", 2, 1),
        ("zi.json", 3, 1),
        ("zi.json", 5, 1),
        ("quat2.json", 2, 2),
        ("quat2.json", 3, 2),
        ("quat2x7.json", 2, 3),
        ("quat2x7.json", 3, 2),
        ("m3q.json", 2, 2),
    ],
)
def test_min_k_local_frozen_values(name, p, expected):
    assert min_k_local(classify(local_data(fixture(name), p))) == expected


def test_min_k_local_coheres_with_local_count():
    # the local count is positive exactly from min_k_local onward
    for name in ("z.json", "zi.json", "m2q.json", "m3q.json", "quat2.json", "quat2x7.json"):
        spec = fixture(name)
        for p in (2, 3, 5, 7, 11, 13):
            cls = classify(local_data(spec, p))
            mk = min_k_local(cls)
            for k in (1, 2, 3, 4, 5):
                assert (gen_count_local(k, cls) > 0) == (mk <= k)
