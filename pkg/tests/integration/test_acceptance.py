"""
End-to-end runs over the bundled fixtures at the default search bounds.

These are exhaustive and take longer than the unit tests; run them with
``pytest -m slow``.
"""
import io

import pytest

from restrictcat.cli import run
from restrictcat.cocheck import check_cocompleteness_conditions, check_m_extensive, generate_diagrams, lemma_suite
from restrictcat.equiv import cockett_lack_check, compare_representables, kr_round_trip, verify_equivalence
from restrictcat.fixtures import FIXTURES, load_fixture
from restrictcat.mcat import mtotal, par, phi, psi
from restrictcat.presheaf import generated_family, msub_rep_iso_check, sigma_classifier
from restrictcat.restriction import check_restriction_functor, check_restriction_structure
from restrictcat.rpsh import check_family, restriction_family
from restrictcat.splitting import is_split, kr

pytestmark = pytest.mark.slow


def _output(*argv):
    out = io.StringIO()
    code = run(list(argv), stdout=out)
    return code, out.getvalue()


@pytest.mark.parametrize("name", ["triv3", "max5a", "max5b", "pfin2"])
def test_restriction_fixtures(name, request):
    """Test axioms, Kr and the partial map comparison on each restriction fixture."""
    X = request.getfixturevalue(name)
    assert check_restriction_structure(X.cat, X.bar).passed
    split = kr(X)
    assert is_split(split.result)
    assert check_restriction_functor(split.embedding, X, split.result).passed
    F = phi(split.result)
    assert F.functor.is_fully_faithful()
    assert set(F.functor.omap.values()) == set(split.result.cat.objects)


def test_par_round_trip_on_pfin2(pfin2):
    """Test that Ψ∘Φ is the identity on PFIN2's total maps."""
    F = phi(pfin2)
    total, M = mtotal(pfin2)
    P = F.target
    G = psi(total, M, P)
    for f in total.morphism_ids:
        assert G.mmap[P.total_class(f)] == f


def test_par_of_inj2_is_pfin2(inj2, pfin2):
    """Test hom-set cardinalities of Par(INJ2) against PFIN2 everywhere."""
    C, M = inj2
    P = par(C, M)
    for a in C.objects:
        for b in C.objects:
            assert len(P.cat.hom(a, b)) == len(pfin2.cat.hom(a, b))


@pytest.mark.parametrize("name", ["inj2", "ab2"])
def test_subobject_bijection_everywhere(name, request):
    """Test M-subobjects against M_PSh-subfunctors at every object."""
    C, M = request.getfixturevalue(name)
    for A in C.objects:
        report = msub_rep_iso_check(C, M, A)
        assert report.passed, report.to_text()


def test_classifier_over_generated_family(inj2, small_config):
    """Test Σ/τ over the generated family with binary coproducts."""
    C, M = inj2
    _, _, report = sigma_classifier(C, M, config=small_config)
    assert report.passed, report.to_text()
    assert report.metadata["max_summands"] == 2


def test_cocompleteness_at_default_bound(inj2, ab2, test_config):
    """Test INJ2 passes and AB2 fails at the diagonal with three-object shapes."""
    C, M = inj2
    assert check_cocompleteness_conditions(C, M, test_config).passed
    assert check_m_extensive(C, M, test_config).passed
    A, N = ab2
    report = check_cocompleteness_conditions(A, N, test_config)
    assert not report.passed
    assert any(v.mentions("delta") for v in report.violations)


def test_lemma_suite_at_default_bound(inj2, test_config):
    """Test the colimit lemmas on every generated diagram over INJ2."""
    C, M = inj2
    diagrams, _ = generate_diagrams(C, M, test_config)
    report = lemma_suite(C, M, diagrams)
    assert report.passed, report.to_text()
    for lemma in ("colimit-in-m", "right-square-pullback", "outer-pullback-right-square",
                  "restriction-idempotent-colimit", "pullback-stable"):
        assert report.metadata["checked"][lemma] > 0, lemma


@pytest.mark.parametrize("name", ["triv3", "max5b", "pfin2"])
def test_restriction_presheaf_families(name, request):
    """Test uniqueness, totality, the hom-level laws and splitting."""
    X = request.getfixturevalue(name)
    report = check_family(X)
    assert report.passed, report.to_text()


@pytest.mark.parametrize("name", ["max5b", "pfin2"])
def test_kr_transport_round_trips(name, request):
    """Test transport to Kr(X) and back for every family member."""
    X = request.getfixturevalue(name)
    split = kr(X)
    for Q in restriction_family(X, with_maps=False).presheaves:
        assert kr_round_trip(X, Q, split), Q.name


def test_equivalence_over_generated_family(inj2, par_inj2):
    """Test unit and counit over the generated INJ2 family."""
    C, M = inj2
    family = generated_family(C, M)
    witness = verify_equivalence(C, M, family.presheaves, par_cat=par_inj2)
    assert witness.passed, witness.report.to_text()
    assert compare_representables(C, M, par_inj2).passed


@pytest.mark.parametrize("name", ["triv3", "max5b", "pfin2"])
def test_cockett_lack(name, request):
    """Test the comparison of y_r with the partial map embedding."""
    assert cockett_lack_check(request.getfixturevalue(name)).passed


@pytest.mark.parametrize("command", ["kr", "total"])
@pytest.mark.parametrize("name", ["triv3", "max5a", "max5b", "pfin2"])
def test_outputs_are_byte_identical(command, name):
    """Test that repeated runs give the same file."""
    first = _output(command, f"{name}.json")
    assert first[0] == 0
    assert _output(command, f"{name}.json") == first


@pytest.mark.parametrize("name", ["inj2", "ab2"])
def test_par_outputs_are_byte_identical(name):
    """Test repeated Par output for the M-category fixtures."""
    first = _output("par", f"{name}.json")
    assert first[0] == 0
    assert _output("par", f"{name}.json") == first


def test_every_fixture_checks_clean():
    """Test the check command over every bundled fixture."""
    for name in FIXTURES:
        assert _output("check", f"{name}.json")[0] == 0, name
        assert load_fixture(name).name == name
