"""
Tests for the bounded cocompleteness, extensivity and colimit checks.
"""
import pytest

from restrictcat import cocheck
from restrictcat.cocheck import (
    FiniteDiagram,
    check_cocompleteness_conditions,
    check_m_extensive,
    generate_diagrams,
    lemma_suite,
)
from restrictcat.config import WorkbenchConfig
from restrictcat.exceptions import InputError
from restrictcat.fincat import Cocone, diagram, discrete_shape
from restrictcat.fixtures import function_id, load_fixture
from restrictcat.mcat import msystem


def test_inj2_is_cocomplete(inj2, small_config):
    """Test that finite sets with injections meet all three conditions."""
    C, M = inj2
    report = check_cocompleteness_conditions(C, M, small_config)
    assert report.passed, report.to_text()
    assert report.metadata["verdict"] == "cocomplete-at-finite-scale"
    assert report.metadata["coproducts"]["coproducts_checked"] > 0
    assert report.metadata["shape_bound"] == 2


def test_ab2_fails_stability(ab2, small_config):
    """Test that pulling Z2+Z2 back along the diagonal loses the coproduct."""
    C, M = ab2
    report = check_cocompleteness_conditions(C, M, small_config)
    assert not report.passed
    assert report.metadata["verdict"] == "not-cocomplete"
    assert "stability:colimit-stability" in report.laws()
    assert any(v.mentions("delta") for v in report.violations)


def test_triv3_conditions(small_config):
    """Test the discrete category, where only trivial coequalizers exist."""
    bundle = load_fixture("triv3")
    C = bundle.category
    report = check_cocompleteness_conditions(C, msystem(C, bundle.msystem), small_config)
    assert report.passed


def test_invalid_system_raises(inj2, small_config):
    """Test that the checks require a stable system of monics."""
    C, M = inj2
    broken = msystem(C, [m for m in M.members if not C.is_iso(m)])
    with pytest.raises(InputError):
        check_cocompleteness_conditions(C, broken, small_config)


def test_extensivity(inj2, ab2, small_config):
    """Test that INJ2 is M-extensive and AB2 fails at the diagonal."""
    C, M = inj2
    report = check_m_extensive(C, M, small_config)
    assert report.passed, report.to_text()
    assert report.metadata["configurations"] > 0
    A, N = ab2
    report = check_m_extensive(A, N, small_config)
    assert report.laws() == ["extensive"]
    assert {dict(v.witness)["member"] for v in report.violations} == {"delta"}


def test_extensivity_without_coproducts(small_config):
    """Test that the discrete category has nothing to check."""
    bundle = load_fixture("triv3")
    C = bundle.category
    report = check_m_extensive(C, msystem(C, bundle.msystem), small_config)
    assert report.status.value == "not-applicable"


def test_generated_diagrams_are_truncated(inj2):
    """Test seeded sampling above the diagram cap."""
    C, M = inj2
    config = WorkbenchConfig(seed=3, shape_bound=2, max_arrows=0, max_diagrams=1)
    diagrams, metadata = generate_diagrams(C, M, config)
    assert len(diagrams) == 2
    assert set(metadata["truncated"]) == {"discrete1", "discrete2"}
    again, _ = generate_diagrams(C, M, config)
    assert [d.name for d in again] == [d.name for d in diagrams]
    for d in diagrams:
        d.validate()


def test_lemma_suite_on_inj2(inj2, par_inj2, small_config):
    """Test the colimit lemmas on every bounded diagram over INJ2."""
    C, M = inj2
    diagrams, _ = generate_diagrams(C, M, small_config)
    report = lemma_suite(C, M, diagrams, par_inj2)
    assert report.passed, report.to_text()
    checked = report.metadata["checked"]
    assert checked["colimit-in-m"] > 0
    assert checked["outer-pullback-right-square"] >= checked["right-square-pullback"]
    assert report.metadata["diagrams"] == len(diagrams)


def _collapsed_pair(C):
    """Two copies of {1} with a cocone sending both into the same point of {1,2}."""
    one = "{1}"
    i1 = function_id((1,), (1, 2), {1: 1})
    shape = discrete_shape(2)
    H = diagram(shape, C, {"i0": one, "i1": one})
    alpha = {"i0": C.identities[one], "i1": C.identities[one]}
    cocone = Cocone("{1,2}", (("i0", i1), ("i1", i1)))
    return FiniteDiagram(shape, H, H, alpha, upper_cocone=cocone, name="collapsed")


def test_lemma_suite_catches_a_non_colimit(inj2, par_inj2):
    """Test that a cocone that is not a colimit breaks the conclusions."""
    C, M = inj2
    report = lemma_suite(C, M, [_collapsed_pair(C)], par_inj2)
    assert not report.passed
    assert "colimit-in-m" in report.laws()
    assert "pullback-stable" in report.laws()
    assert all(v.mentions("collapsed") for v in report.violations)


def test_outer_pullback_right_square_on_partial_inclusion(inj2, par_inj2):
    """Test the right-square conclusion when one summand is included from the empty set."""
    C, M = inj2
    shape = discrete_shape(2)
    H = diagram(shape, C, {"i0": "{1}", "i1": "{1}"})
    K = diagram(shape, C, {"i0": "{1}", "i1": "{}"})
    alpha = {"i0": C.identities["{1}"], "i1": function_id((), (1,), {})}
    report = lemma_suite(C, M, [FiniteDiagram(shape, K, H, alpha, name="half")], par_inj2)
    assert report.passed, report.to_text()
    assert report.metadata["checked"]["colimit-in-m"] == 1
    assert report.metadata["checked"]["outer-pullback-right-square"] > 0


def test_partial_coprojections_skip_the_idempotent_lemma(inj2, par_inj2, monkeypatch):
    """Test that a Par colimit with a partial leg does not qualify."""
    C, M = inj2
    shape = discrete_shape(1)
    H = diagram(shape, C, {"i0": "{1,2}"})
    d = FiniteDiagram(shape, H, H, {"i0": C.identities["{1,2}"]}, name="single")
    partial_leg = par_inj2.inverse_class(function_id((1,), (1, 2), {1: 1}))
    real_colimit = cocheck.colimit

    def colimit_with_partial_leg(cat, K):
        if cat is par_inj2.cat:
            return Cocone("{1}", (("i0", partial_leg),))
        return real_colimit(cat, K)

    assert lemma_suite(C, M, [d], par_inj2).metadata["checked"]["restriction-idempotent-colimit"] == 1
    monkeypatch.setattr(cocheck, "colimit", colimit_with_partial_leg)
    report = lemma_suite(C, M, [d], par_inj2)
    assert "restriction-idempotent-colimit" not in report.metadata["checked"]
    assert report.metadata["skipped"]["restriction-idempotent-colimit"] == 1
