"""
Tests for finite presheaves, M_PSh membership and the subobject classifier.
"""
import json

import pytest

from restrictcat.config import WorkbenchConfig
from restrictcat.exceptions import InputError
from restrictcat.fixtures import function_id
from restrictcat.presheaf import (
    Presheaf,
    check_presheaf,
    check_presheaf_map,
    element_map,
    generated_family,
    is_mpsh_map,
    load_presheaf,
    msub_rep_iso_check,
    natural_transformations,
    presheaf_coproduct,
    presheaf_pullback,
    sigma_classifier,
    sigma_presheaf,
    subfunctors,
    terminal_presheaf,
    yoneda,
    yoneda_map,
)


def test_representable_sizes(inj2):
    """Test that y({1,2})(B) is the set of injections B → {1,2}."""
    C, _ = inj2
    yA = yoneda(C, "{1,2}")
    assert {B: yA.size(B) for B in C.objects} == {"{}": 1, "{1}": 2, "{2}": 2, "{1,2}": 2}
    assert check_presheaf(yA).passed


def test_missing_action_raises(inj2):
    """Test that a non-identity action on a non-empty set must be given."""
    C, _ = inj2
    with pytest.raises(InputError):
        Presheaf(C, {"{}": ["x"], "{1}": ["y"]}, {})


def test_yoneda_counts_transformations(inj2):
    """Test that maps y(A) ⇒ P correspond to elements of P(A)."""
    C, _ = inj2
    target = yoneda(C, "{1,2}")
    maps = natural_transformations(yoneda(C, "{1}"), target)
    assert len(maps) == target.size("{1}")
    assert all(check_presheaf_map(alpha).passed for alpha in maps)
    assert len(natural_transformations(target, terminal_presheaf(C))) == 1


def test_element_map_is_natural(inj2):
    """Test the Yoneda map of an element."""
    C, _ = inj2
    P = yoneda(C, "{1,2}")
    x = P.elements("{1}")[0]
    alpha = element_map(P, "{1}", x)
    assert check_presheaf_map(alpha).passed
    assert alpha.apply("{1}", C.identities["{1}"]) == x


def test_coproduct_and_pullback(inj2):
    """Test disjoint unions and the pullback of two disjoint representables."""
    C, _ = inj2
    y1 = yoneda(C, "{1}")
    total, injections = presheaf_coproduct([y1, y1])
    assert total.size("{1}") == 2
    assert all(check_presheaf_map(i).passed for i in injections)
    i1 = function_id((1,), (1, 2), {1: 1})
    i2 = function_id((2,), (1, 2), {2: 2})
    apex, p, q = presheaf_pullback(yoneda_map(C, i1), yoneda_map(C, i2))
    assert {B: apex.size(B) for B in C.objects} == {"{}": 1, "{1}": 0, "{2}": 0, "{1,2}": 0}
    assert check_presheaf_map(p).passed and check_presheaf_map(q).passed


def test_subfunctors_of_a_point(inj2):
    """Test that y({1}) has the empty, the bottom and the full subfunctor."""
    C, _ = inj2
    subs = subfunctors(yoneda(C, "{1}"))
    assert [sub.total_size() for sub, _ in subs] == [0, 1, 3]
    assert all(check_presheaf_map(inclusion).passed for _, inclusion in subs)


def test_mpsh_membership(inj2):
    """Test that representable monics are in M_PSh and the empty subfunctor is not."""
    C, M = inj2
    i1 = function_id((1,), (1, 2), {1: 1})
    report = is_mpsh_map(C, M, yoneda_map(C, i1))
    assert report.passed
    assert report.metadata["chosen"][f"{{1}}:{i1}"] == C.identities["{1}"]
    empty, inclusion = subfunctors(yoneda(C, "{1}"))[0]
    assert empty.total_size() == 0
    assert "mpsh-pullback" in is_mpsh_map(C, M, inclusion).laws()


@pytest.mark.parametrize("obj", ["{}", "{1}", "{1,2}"])
def test_msub_rep_iso_on_inj2(inj2, obj):
    """Test M-subobjects of A against M_PSh-subfunctors of y(A)."""
    C, M = inj2
    report = msub_rep_iso_check(C, M, obj)
    assert report.passed, report.to_text()
    assert report.metadata["m_subobjects"] == report.metadata["mpsh_subfunctors"]


@pytest.mark.parametrize("obj", ["0", "Z2", "Z2+Z2"])
def test_msub_rep_iso_on_ab2(ab2, obj):
    """Test the same comparison for split monics of vector spaces."""
    C, M = ab2
    assert msub_rep_iso_check(C, M, obj).passed


def test_sigma_sizes(inj2):
    """Test that Σ(D) counts subsets of D."""
    C, M = inj2
    classifier = sigma_presheaf(C, M)
    assert {D: classifier.sigma.size(D) for D in C.objects} == {"{}": 1, "{1}": 2, "{2}": 2, "{1,2}": 4}
    assert check_presheaf_map(classifier.tau).passed


def test_sigma_classifies_generated_maps(inj2):
    """Test that τ classifies every injective M_PSh map of the family."""
    C, M = inj2
    family = generated_family(C, M, max_summands=1)
    sigma, tau, report = sigma_classifier(C, M, family.maps)
    assert report.passed, report.to_text()
    assert report.metadata["classified"] > 0
    assert report.metadata["sigma_sizes"]["{1,2}"] == 4


def test_sigma_classifier_builds_the_configured_family(inj2):
    """Test that an omitted family is generated with the configured number of summands."""
    C, M = inj2
    explicit = sigma_classifier(C, M, generated_family(C, M, max_summands=1).maps)[2]
    _, _, report = sigma_classifier(C, M, config=WorkbenchConfig(max_summands=1))
    assert report.passed, report.to_text()
    assert report.metadata["max_summands"] == 1
    assert report.metadata["classified"] == explicit.metadata["classified"]


def test_load_presheaf_uses_fixture_base(tmp_path):
    """Test reading a presheaf whose base names a bundled fixture."""
    path = tmp_path / "point.json"
    path.write_text(json.dumps({"base": "inj2.json", "sets": {"{}": ["x"]}, "actions": []}))
    P, restriction = load_presheaf(path)
    assert restriction is None
    assert P.total_size() == 1
    assert P.name == "point"


def test_load_presheaf_rejects_conflicts(tmp_path):
    """Test that two different values for one action are an input error."""
    path = tmp_path / "bad.json"
    ident = function_id((), (), {})
    path.write_text(json.dumps({
        "base": "inj2.json",
        "sets": {"{}": ["x", "y"]},
        "actions": [[ident, "x", "x"], [ident, "x", "y"]],
    }))
    with pytest.raises(InputError):
        load_presheaf(path)
