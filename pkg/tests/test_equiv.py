"""
Tests for the functors between presheaves on an M-category and restriction
presheaves on its partial maps, and for the comparisons built on them.
"""
import pytest

from restrictcat.exceptions import InputError
from restrictcat.equiv import (
    cockett_lack_check,
    compare_representables,
    equalizer_idempotent,
    functor_F,
    functor_G,
    g_preserves_monics,
    kr_psh_transport,
    kr_round_trip,
    pb_factorization_criterion,
    verify_equivalence,
)
from restrictcat.fixtures import function_id
from restrictcat.presheaf import generated_family, presheaf_coproduct, subfunctors, yoneda, yoneda_map
from restrictcat.rpsh import q_split, yoneda_r


def test_forward_sizes(inj2, par_inj2):
    """Test F(y{1,2}) and G(F(y{1,2})) at {1}."""
    C, M = inj2
    FP = functor_F(C, M, yoneda(C, "{1,2}"), par_inj2)
    assert FP.size("{1}") == 3
    assert FP.size("{}") == 1
    GFP = functor_G(FP, C)
    assert GFP.size("{1}") == 2


def test_functor_g_needs_partial_maps(max5b):
    """Test that G only accepts presheaves over a category of partial maps."""
    with pytest.raises(InputError):
        functor_G(yoneda_r(max5b, "*"))


def test_equivalence_on_representables(inj2, par_inj2):
    """Test unit, counit and triangle on representables and a coproduct."""
    C, M = inj2
    presheaves = [yoneda(C, A) for A in C.objects]
    total, _ = presheaf_coproduct([presheaves[1], presheaves[2]])
    presheaves.append(total)
    witness = verify_equivalence(C, M, presheaves, par_cat=par_inj2)
    assert witness.passed, witness.report.to_text()
    assert set(witness.forward) == set(witness.backward)
    assert witness.to_dict()["category"] == C.name


def test_equivalence_on_subfunctors(inj2, par_inj2):
    """Test the empty subfunctor and a non-representable one."""
    C, M = inj2
    presheaves = [sub for sub, _ in subfunctors(yoneda(C, "{1,2}"))][:3]
    witness = verify_equivalence(C, M, presheaves, par_cat=par_inj2)
    assert witness.passed, witness.report.to_text()
    assert len(witness.forward) == 3


def test_compare_representables(inj2, ab2, par_inj2):
    """Test F(y A) = y_r(A) and y(A) ≅ G(y_r A)."""
    C, M = inj2
    assert compare_representables(C, M, par_inj2).passed
    A, N = ab2
    assert compare_representables(A, N).passed


@pytest.mark.parametrize("name", ["max5b", "pfin2", "triv3"])
def test_kr_round_trip_on_representables(name, request):
    """Test transporting representables to Kr(X) and back."""
    X = request.getfixturevalue(name)
    for A in X.cat.objects:
        assert kr_round_trip(X, yoneda_r(X, A))


def test_kr_transport_of_splitting(max5b):
    """Test the transport of the fixed points of y_r(3)."""
    Q = q_split(max5b, "*", "3").fixed
    moved = kr_psh_transport(max5b, Q)
    assert set(moved.elements("*|3")) == {"3", "4", "5"}
    assert set(moved.elements("*|5")) == {"5"}
    assert kr_round_trip(max5b, Q)


@pytest.mark.parametrize("name", ["triv3", "max5b", "pfin2"])
def test_cockett_lack(name, request):
    """Test y_r against F∘y after embedding into partial maps of Kr(X)."""
    X = request.getfixturevalue(name)
    report = cockett_lack_check(X)
    assert report.passed, report.to_text()
    assert report.metadata["kr_objects"] >= len(X.cat.objects)


def test_pullback_factorization(par_inj2):
    """Test that {1} factors through itself but not through {2}."""
    i1 = function_id((1,), (1, 2), {1: 1})
    i2 = function_id((2,), (1, 2), {2: 2})
    assert pb_factorization_criterion(par_inj2, i1, i1)
    assert not pb_factorization_criterion(par_inj2, i1, i2)
    collapse = function_id((1, 2), (1,), {1: 1, 2: 1})
    with pytest.raises(InputError):
        pb_factorization_criterion(par_inj2, i1, collapse)


def test_equalizer_idempotent(inj2, par_inj2):
    """Test F(y i) as the equalizer of 1 and a restriction idempotent."""
    C, M = inj2
    i1 = function_id((1,), (1, 2), {1: 1})
    report = equalizer_idempotent(C, M, yoneda_map(C, i1), par_inj2)
    assert report.passed, report.to_text()
    _, inclusion = subfunctors(yoneda(C, "{1}"))[0]
    with pytest.raises(InputError):
        equalizer_idempotent(C, M, inclusion, par_inj2)


def test_g_preserves_monics(inj2, par_inj2):
    """Test G∘F on the M_PSh maps of the generated family."""
    C, M = inj2
    family = generated_family(C, M, max_summands=1)
    report = g_preserves_monics(C, M, family.maps, par_inj2)
    assert report.passed
    assert report.metadata["checked"] > 0
