"""
Tests for restriction structures, restriction functors and enumeration.

Single-entry mutations of the max-monoid structure are judged against an
independent oracle: on the max-monoid the valid structures are exactly the
"largest element of E below n" assignments for subsets E containing 0.
"""
import itertools

import pytest
from hypothesis import given, strategies as st

from restrictcat.config import WorkbenchConfig
from restrictcat.exceptions import InputError
from restrictcat.fincat import identity_functor
from restrictcat.fixtures import function_id, load_fixture, max5_category, max5_structure_b
from restrictcat.restriction import (
    RestrCat,
    RestrictionFunctor,
    check_restriction_functor,
    check_restriction_structure,
    enumerate_restriction_structures,
    leq,
    make_restriction_category,
    restriction_idempotents,
    total_subcategory,
    trivial_structure,
)


def floor_structure(E):
    """``n ↦ max{e ∈ E : e ≤ n}`` on the max-monoid."""
    return {str(n): str(max(e for e in E if e <= n)) for n in range(6)}


FLOOR_STRUCTURES = [
    floor_structure({0} | set(extra))
    for k in range(6)
    for extra in itertools.combinations(range(1, 6), k)
]


@pytest.mark.parametrize("name", ["triv3", "max5a", "max5b", "pfin2"])
def test_fixture_structures_pass(name):
    """Test R1-R4 on every fixture with a restriction structure."""
    bundle = load_fixture(name)
    report = check_restriction_structure(bundle.category, bundle.restriction)
    assert report.passed, report.to_text()


def test_restriction_idempotent_sets(max5a, max5b):
    """Test the restriction idempotents of both max-monoid structures."""
    assert restriction_idempotents(max5a, "*") == ["0", "1", "2", "3", "4", "5"]
    assert restriction_idempotents(max5b, "*") == ["0", "1", "3", "5"]
    assert [max5_structure_b(n) for n in range(6)] == [0, 1, 1, 3, 3, 5]


def test_every_mutation_matches_oracle():
    """Test each single-entry change of structure B against the floor oracle."""
    C = max5_category()
    base = {str(n): str(max5_structure_b(n)) for n in range(6)}
    accepted = []
    for f in C.morphism_ids:
        for value in C.morphism_ids:
            if value == base[f]:
                continue
            mutant = dict(base, **{f: value})
            passed = check_restriction_structure(C, mutant).passed
            assert passed == (mutant in FLOOR_STRUCTURES), (f, value)
            if passed:
                accepted.append((f, value))
    assert sorted(accepted) == [("2", "2"), ("4", "4"), ("5", "3")]


def test_collapsing_two_fails_r3():
    """Test that bar(2) = 0 is rejected by R3."""
    C = max5_category()
    mutant = {str(n): str(max5_structure_b(n)) for n in range(6)}
    mutant["2"] = "0"
    report = check_restriction_structure(C, mutant)
    assert "R3" in report.laws()
    assert any(v.mentions("2") for v in report.violations if v.law == "R3")


@given(st.sets(st.integers(min_value=1, max_value=5)))
def test_floor_structures_are_valid(extra):
    """Test the oracle itself: every floor assignment passes R1-R4."""
    structure = floor_structure({0} | extra)
    assert check_restriction_structure(max5_category(), structure).passed


def test_enumeration_counts():
    """Test that the max-monoid has 32 structures and TRIV3 exactly one."""
    C = max5_category()
    found = enumerate_restriction_structures(C)
    assert len(found) == 32
    assert sorted(map(sorted, (s.items() for s in found))) == sorted(
        map(sorted, (s.items() for s in FLOOR_STRUCTURES))
    )
    triv = load_fixture("triv3").category
    assert enumerate_restriction_structures(triv) == [trivial_structure(triv)]


def test_enumeration_limit():
    """Test that enumeration refuses categories above the morphism limit."""
    with pytest.raises(InputError):
        enumerate_restriction_structures(load_fixture("pfin2").category, WorkbenchConfig(enumeration_limit=10))


def test_ill_typed_structure_raises():
    """Test that a restriction outside the domain's endomorphisms is an input error."""
    bundle = load_fixture("pfin2")
    bar = dict(bundle.restriction)
    f = function_id((1,), (1, 2), {1: 1})
    bar[f] = bundle.category.identities["{1,2}"]
    with pytest.raises(InputError):
        check_restriction_structure(bundle.category, bar)
    del bar[f]
    with pytest.raises(InputError):
        check_restriction_structure(bundle.category, bar)


def test_make_restriction_category_rejects_invalid():
    """Test that an axiom failure is an input error when wrapping."""
    C = max5_category()
    bar = {str(n): "5" for n in range(6)}
    with pytest.raises(InputError):
        make_restriction_category(C, bar)


def test_total_maps(max5b, pfin2):
    """Test the total subcategories of MAX5/B and PFIN2."""
    total = total_subcategory(max5b)
    assert total.morphism_ids == ("0",)
    inj2 = load_fixture("inj2").category
    total = total_subcategory(pfin2)
    assert len(total.morphisms) == len(inj2.morphisms)
    assert set(total.morphism_ids) == set(inj2.morphism_ids)


def test_partial_order(pfin2):
    """Test that a partial identity lies below the identity."""
    partial = function_id((1, 2), (1, 2), {1: 1, 2: None})
    ident = pfin2.cat.identities["{1,2}"]
    assert leq(pfin2, partial, ident)
    assert not leq(pfin2, ident, partial)
    assert leq(pfin2, partial, partial)


def test_restriction_functors(max5a, max5b):
    """Test that the identity preserves restriction only between equal structures."""
    F = identity_functor(max5b.cat)
    assert RestrictionFunctor(F, max5b, max5b).check().passed
    report = check_restriction_functor(F, max5a, max5b)
    assert not report.passed
    assert {dict(v.witness)["f"] for v in report.violations} == {"2", "4"}


def test_trivial_structure_is_total(triv3):
    """Test that every map is total under the trivial structure."""
    assert isinstance(triv3, RestrCat)
    assert all(triv3.is_total(f) for f in triv3.cat.morphism_ids)
