"""
Tests for splitting restriction idempotents.
"""
import pytest

from restrictcat.exceptions import InputError
from restrictcat.fixtures import function_id
from restrictcat.restriction import check_restriction_functor, check_restriction_structure
from restrictcat.splitting import (
    is_split,
    kr,
    kr_morphism_id,
    kr_object_id,
    non_split_idempotent,
    split_restriction_idempotent,
)


def test_kr_of_max5b_objects(max5b):
    """Test that Kr(MAX5/B) has one object per restriction idempotent."""
    split = kr(max5b)
    assert split.result.cat.objects == ("*|0", "*|1", "*|3", "*|5")
    assert split.parts["*|3"] == ("*", "3")


def test_kr_of_max5b_morphisms(max5b):
    """Test hom-set sizes: ``f: (*, e) → (*, e')`` needs ``f ≥ max(e, e')``."""
    split = kr(max5b)
    C = split.result.cat
    assert len(C.morphisms) == 43
    assert C.hom("*|3", "*|1") == (kr_morphism_id("3", "*|3", "*|1"), kr_morphism_id("4", "*|3", "*|1"), kr_morphism_id("5", "*|3", "*|1"))
    assert C.identities["*|5"] == "5@*|5>*|5"


@pytest.mark.parametrize("name", ["triv3", "max5a", "max5b", "pfin2"])
def test_kr_is_split(name, request):
    """Test that Kr(X) is split, a restriction category and J preserves restriction."""
    X = request.getfixturevalue(name)
    split = kr(X)
    assert is_split(split.result)
    assert check_restriction_structure(split.result.cat, split.result.bar).passed
    assert check_restriction_functor(split.embedding, X, split.result).passed
    assert split.embedding.is_fully_faithful()


def test_max5b_is_not_split(max5b):
    """Test that the one-object monoid cannot split its proper idempotents."""
    assert not is_split(max5b)
    assert non_split_idempotent(max5b) == "1"
    assert split_restriction_idempotent(max5b, "0") == ("0", "0")


def test_pfin2_is_split(pfin2):
    """Test the canonical splitting of a partial identity through {1}."""
    assert is_split(pfin2)
    e = function_id((1, 2), (1, 2), {1: 1, 2: None})
    m, r = split_restriction_idempotent(pfin2, e)
    C = pfin2.cat
    assert C.compose(m, r) == e
    assert C.compose(r, m) == C.identities[C.dom(m)]
    assert C.dom(m) == "{1}"


def test_splitting_requires_restriction_idempotent(pfin2):
    """Test that splitting a non-idempotent is an input error."""
    with pytest.raises(InputError):
        split_restriction_idempotent(pfin2, function_id((1,), (1, 2), {1: 1}))


def test_splitting_of_kr_objects(max5b):
    """Test that the stored splitting composes to the idempotent in Kr."""
    split = kr(max5b)
    m, r = split.splitting_of(kr_object_id("*", "3"))
    C = split.result.cat
    assert C.compose(r, m) == C.identities["*|3"]
    assert C.compose(m, r) == kr_morphism_id("3", "*|0", "*|0")
    assert split.underlying[m] == "3"


def test_unknown_kr_ids_raise(max5b):
    """Test lookups of ids outside Kr."""
    split = kr(max5b)
    with pytest.raises(InputError):
        split.object_of("*", "2")
    with pytest.raises(InputError):
        split.morphism_of("1", "*|3", "*|0")
