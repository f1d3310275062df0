"""
Restriction presheaves.

A restriction presheaf on a restriction category X is a presheaf ``P``
with a restriction idempotent ``x̄`` on ``A`` for every ``x ∈ PA`` such
that

    fixes-element           x·x̄ = x
    idempotent-restriction  bar(x·e) = x̄∘e       for restriction idempotents e on A
    stable-restriction      x̄∘g = g∘bar(x·g)     for every g: B → A

Natural transformations between them form a restriction category with
``ᾱ_A(x) = x·bar(α_A(x))``; its restriction idempotents split through
their fixed points.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

from restrictcat.exceptions import InputError, InvariantViolation
from restrictcat.presheaf import (
    Element,
    Presheaf,
    PresheafMap,
    check_presheaf,
    compose_maps,
    identity_map,
    load_presheaf,
    maps_equal,
    natural_transformations,
    presheaf_to_dict,
    require_natural,
    yoneda,
    yoneda_map,
)
from restrictcat.report import CheckReport
from restrictcat.restriction import RestrCat

logger = logging.getLogger(__name__)


class RestrictionPresheaf(Presheaf):
    """A presheaf on ``rcat.cat`` with the restriction of every element.

    Args:
        rcat: The restriction category
        sets: As for Presheaf
        actions: As for Presheaf
        elbar: ``(object, element)`` to a restriction idempotent on the object
        name: Optional label

    Raises:
        InputError: If an element has no restriction or it is not a
            restriction idempotent on the element's object
    """

    def __init__(
        self,
        rcat: RestrCat,
        sets: Mapping[str, Sequence[str]],
        actions: Mapping[str, Mapping[str, str]],
        elbar: Mapping[Element, str],
        name: str = "",
    ):
        super().__init__(rcat.cat, sets, actions, name=name)
        self.rcat = rcat
        self.elbar: Dict[Element, str] = {}
        C = rcat.cat
        for obj in C.objects:
            for x in self.sets[obj]:
                e = elbar.get((obj, x))
                if e is None:
                    raise InputError(f"restriction of {x} at {obj} is missing")
                if e not in C or C.dom(e) != obj or C.cod(e) != obj or not rcat.is_restriction_idempotent(e):
                    raise InputError(f"restriction of {x} at {obj} must be a restriction idempotent on {obj}, got {e}")
                self.elbar[(obj, x)] = e

    @classmethod
    def over(cls, P: Presheaf, rcat: RestrCat, elbar: Mapping[Element, str], name: str = "") -> RestrictionPresheaf:
        return cls(rcat, P.sets, P.actions, elbar, name=name or P.name)

    def restriction(self, obj: str, x: str) -> str:
        return self.elbar[(obj, x)]


def _axiom_violations(rcat: RestrCat, P: Presheaf, elbar: Mapping[Element, str], report: CheckReport) -> None:
    """Record every decidable axiom instance that fails; unassigned elements are skipped."""
    C = rcat.cat
    compose = C.compose
    for obj in C.objects:
        idempotents = rcat.restriction_idempotents(obj)
        for x in P.sets[obj]:
            xbar = elbar.get((obj, x))
            if xbar is None:
                continue
            if P.actions[xbar][x] != x:
                report.violate("fixes-element", object=obj, element=x)
            for e in idempotents:
                restricted = elbar.get((obj, P.actions[e][x]))
                if restricted is not None and restricted != compose(xbar, e):
                    report.violate("idempotent-restriction", object=obj, element=x, e=e)
            for g in C.into(obj):
                pulled = elbar.get((C.dom(g), P.actions[g][x]))
                if pulled is not None and compose(xbar, g) != compose(g, pulled):
                    report.violate("stable-restriction", object=obj, element=x, g=g)


def _derived_violations(rcat: RestrCat, P: RestrictionPresheaf) -> List[str]:
    C = rcat.cat
    failures = []
    for obj in C.objects:
        for x in P.sets[obj]:
            xbar = P.elbar[(obj, x)]
            for g in C.into(obj):
                pulled = P.elbar[(C.dom(g), P.actions[g][x])]
                if C.compose(rcat.bar[g], pulled) != pulled:
                    failures.append(f"bar({g}) does not absorb the restriction of {x}·{g}")
                if rcat.bar[C.compose(xbar, g)] != pulled:
                    failures.append(f"bar(x̄∘{g}) differs from the restriction of {x}·{g}")
    return failures


def check_restriction_presheaf(P: RestrictionPresheaf) -> CheckReport:
    """Check the three axioms for every element and map.

    The derived laws ``bar(g)∘bar(x·g) = bar(x·g)`` and ``bar(x̄∘g) =
    bar(x·g)`` are re-checked when the axioms hold; a discrepancy there is
    an internal error.

    Raises:
        InputError: If the underlying presheaf is not valid
        InvariantViolation: If the axioms pass but a derived law fails
    """
    base_report = check_presheaf(P)
    if not base_report.passed:
        raise InputError(f"{P.name or 'presheaf'} is not a presheaf: violated {', '.join(base_report.laws())}")
    report = CheckReport(check="restriction-presheaf")
    _axiom_violations(P.rcat, P, P.elbar, report)
    if report.violations:
        return report
    failures = _derived_violations(P.rcat, P)
    if failures:
        raise InvariantViolation(f"restriction presheaf axioms hold but a derived law fails: {failures[0]}")
    return report


def infer_restriction_structure(P: Presheaf, X: RestrCat) -> List[Dict[Element, str]]:
    """All restriction structures on ``P``; there is at most one.

    Candidates for ``x̄`` are the restriction idempotents fixing ``x``.

    Raises:
        InvariantViolation: If two different structures are found
    """
    C = X.cat
    elements = P.all_elements()
    candidates = {
        (obj, x): [e for e in X.restriction_idempotents(obj) if P.actions[e][x] == x]
        for obj, x in elements
    }
    elements.sort(key=lambda element: (len(candidates[element]), C.object_rank(element[0]), P.position(*element)))
    found: List[Dict[Element, str]] = []
    assignment: Dict[Element, str] = {}

    def extend(position: int) -> None:
        if position == len(elements):
            found.append(dict(assignment))
            return
        element = elements[position]
        for e in candidates[element]:
            assignment[element] = e
            partial = CheckReport(check="partial")
            _axiom_violations(X, P, assignment, partial)
            if not partial.violations:
                extend(position + 1)
            del assignment[element]

    extend(0)
    if len(found) > 1:
        first, second = found[0], found[1]
        differing = next(key for key in first if first[key] != second[key])
        raise InvariantViolation(
            "restriction presheaf structure is not unique",
            witness={"object": differing[0], "element": differing[1]},
        )
    return found


# -- maps ----------------------------------------------------------------------------


def _require_restriction_presheaf(P: Presheaf) -> RestrictionPresheaf:
    if not isinstance(P, RestrictionPresheaf):
        raise InputError(f"{P.name or 'presheaf'} carries no restriction structure")
    return P


def restriction_of_nat(alpha: PresheafMap) -> PresheafMap:
    """``ᾱ: P ⇒ P`` with ``ᾱ_A(x) = x·bar(α_A(x))``.

    Raises:
        InputError: If ``alpha`` is not natural or its ends carry no restriction
        InvariantViolation: If ``ᾱ`` is not natural
    """
    P = _require_restriction_presheaf(alpha.source)
    Q = _require_restriction_presheaf(alpha.target)
    require_natural(alpha)
    components = {
        obj: {x: P.actions[Q.elbar[(obj, y)]][x] for x, y in component.items()}
        for obj, component in alpha.components.items()
    }
    restricted = PresheafMap(P, P, components, name=f"bar({alpha.name})")
    try:
        require_natural(restricted)
    except InputError as exc:
        raise InvariantViolation(f"restriction of {alpha.name} is not natural: {exc}") from exc
    return restricted


def is_total_nat(alpha: PresheafMap) -> bool:
    """True iff ``ᾱ`` is the identity, i.e. ``bar(α_A(x)) = x̄`` for all ``x``.

    Raises:
        InvariantViolation: If the two characterisations disagree
    """
    P, Q = alpha.source, alpha.target
    by_identity = maps_equal(restriction_of_nat(alpha), identity_map(P))
    by_elements = all(
        Q.elbar[(obj, y)] == P.elbar[(obj, x)]
        for obj, component in alpha.components.items()
        for x, y in component.items()
    )
    if by_identity != by_elements:
        raise InvariantViolation("totality tests disagree", witness={"map": alpha.name})
    return by_identity


def is_restriction_idempotent_nat(alpha: PresheafMap) -> bool:
    return alpha.source is alpha.target and maps_equal(restriction_of_nat(alpha), alpha)


def check_pshr_laws(maps: Sequence[PresheafMap]) -> CheckReport:
    """R1-R4 for ``α ↦ ᾱ`` wherever the family has the composites."""
    report = CheckReport(check="pshr-laws")
    bars = [restriction_of_nat(alpha) for alpha in maps]
    report.metadata["maps"] = len(maps)
    for alpha, abar in zip(maps, bars):
        if not maps_equal(compose_maps(alpha, abar), alpha):
            report.violate("R1", alpha=alpha.name)
    for alpha, abar in zip(maps, bars):
        for beta, bbar in zip(maps, bars):
            if beta.source is alpha.source:
                if not maps_equal(compose_maps(bbar, abar), compose_maps(abar, bbar)):
                    report.violate("R2", alpha=alpha.name, beta=beta.name)
                if not maps_equal(restriction_of_nat(compose_maps(beta, abar)), compose_maps(bbar, abar)):
                    report.violate("R3", alpha=alpha.name, beta=beta.name)
            if beta.source is alpha.target:
                composite = compose_maps(beta, alpha)
                if not maps_equal(compose_maps(bbar, alpha), compose_maps(alpha, restriction_of_nat(composite))):
                    report.violate("R4", alpha=alpha.name, beta=beta.name)
    return report


# -- representables and splittings ------------------------------------------------------


def yoneda_r(X: RestrCat, A: str) -> RestrictionPresheaf:
    """``y(A)`` with ``bar(f)`` as the restriction of ``f ∈ y(A)(B)``.

    Raises:
        InputError: If ``A`` is not an object
        InvariantViolation: If the result fails the axioms
    """
    P = yoneda(X.cat, A)
    elbar = {(B, f): X.bar[f] for B in X.cat.objects for f in P.sets[B]}
    result = RestrictionPresheaf.over(P, X, elbar, name=f"y_r({A})")
    if not check_restriction_presheaf(result).passed:
        raise InvariantViolation(f"y_r({A}) fails the restriction presheaf axioms")
    return result


def yoneda_r_map(X: RestrCat, h: str, cache: Optional[Dict[str, RestrictionPresheaf]] = None) -> PresheafMap:
    """``y_r(h)``: postcomposition with ``h``."""
    cache = cache if cache is not None else {}
    C = X.cat
    for obj in (C.dom(h), C.cod(h)):
        if obj not in cache:
            cache[obj] = yoneda_r(X, obj)
    return yoneda_map(C, h, cache[C.dom(h)], cache[C.cod(h)])


def check_yoneda_r_functor(X: RestrCat) -> CheckReport:
    """``bar(y_r(h)) = y_r(bar h)`` for every morphism ``h``."""
    report = CheckReport(check="yoneda-r")
    cache: Dict[str, RestrictionPresheaf] = {}
    for h in X.cat.morphism_ids:
        if not maps_equal(restriction_of_nat(yoneda_r_map(X, h, cache)), yoneda_r_map(X, X.bar[h], cache)):
            report.violate("preserves-restriction", h=h)
    return report


@dataclass
class Splitting:
    """``ᾱ = μ∘ρ`` through the fixed points ``Q``."""
    fixed: RestrictionPresheaf
    inclusion: PresheafMap
    retraction: PresheafMap


def split_in_pshr(alpha: PresheafMap, name: str = "") -> Splitting:
    """Split a restriction idempotent through its fixed points.

    Raises:
        InputError: If ``alpha`` is not an idempotent endomap with ``ᾱ = α``
        InvariantViolation: If the splitting laws fail
    """
    P = _require_restriction_presheaf(alpha.source)
    if alpha.target is not P:
        raise InputError(f"{alpha.name} is not an endomap")
    if not maps_equal(compose_maps(alpha, alpha), alpha):
        raise InputError(f"{alpha.name} is not idempotent")
    if not is_restriction_idempotent_nat(alpha):
        raise InputError(f"{alpha.name} is not a restriction idempotent")
    C = P.base
    sets = {obj: [x for x in P.sets[obj] if alpha.components[obj][x] == x] for obj in C.objects}
    kept = {obj: set(xs) for obj, xs in sets.items()}
    actions = {
        f: {x: y for x, y in P.actions[f].items() if x in kept[C.cod(f)]}
        for f in C.morphism_ids
    }
    elbar = {(obj, x): P.elbar[(obj, x)] for obj, xs in sets.items() for x in xs}
    Q = RestrictionPresheaf(P.rcat, sets, actions, elbar, name=name or f"fix({alpha.name})")
    inclusion = PresheafMap(Q, P, {obj: {x: x for x in xs} for obj, xs in sets.items()}, name="μ")
    retraction = PresheafMap(P, Q, {obj: dict(component) for obj, component in alpha.components.items()}, name="ρ")
    if not maps_equal(compose_maps(inclusion, retraction), alpha):
        raise InvariantViolation("μ∘ρ differs from the idempotent", witness={"map": alpha.name})
    if not maps_equal(compose_maps(retraction, inclusion), identity_map(Q)):
        raise InvariantViolation("ρ∘μ is not the identity", witness={"map": alpha.name})
    if not check_restriction_presheaf(Q).passed:
        raise InvariantViolation("fixed points fail the restriction presheaf axioms", witness={"map": alpha.name})
    return Splitting(Q, inclusion, retraction)


def q_split(X: RestrCat, A: str, e: str, representable: Optional[RestrictionPresheaf] = None) -> Splitting:
    """Split ``y_r(e)`` on ``y_r(A)``: the maps ``f`` into ``A`` with ``e∘f = f``.

    Raises:
        InputError: If ``e`` is not a restriction idempotent on ``A``
    """
    C = X.cat
    if e not in C or C.dom(e) != A or C.cod(e) != A or not X.is_restriction_idempotent(e):
        raise InputError(f"{e} is not a restriction idempotent on {A}")
    yA = representable or yoneda_r(X, A)
    alpha = yoneda_map(C, e, yA, yA)
    return split_in_pshr(alpha, name=f"Q({A}|{e})")


@dataclass
class RpshFamily:
    presheaves: List[RestrictionPresheaf] = field(default_factory=list)
    maps: List[PresheafMap] = field(default_factory=list)


def restriction_family(X: RestrCat, with_maps: bool = True) -> RpshFamily:
    """Representables, the splittings of their non-identity restriction
    idempotents, and every natural transformation among these."""
    C = X.cat
    family = RpshFamily()
    for A in C.objects:
        yA = yoneda_r(X, A)
        family.presheaves.append(yA)
        for e in X.restriction_idempotents(A):
            if not C.is_identity(e):
                family.presheaves.append(q_split(X, A, e, yA).fixed)
    if with_maps:
        for P in family.presheaves:
            for Q in family.presheaves:
                for index, alpha in enumerate(natural_transformations(P, Q)):
                    alpha.name = f"{P.name}⇒{Q.name}#{index}"
                    family.maps.append(alpha)
    logger.info(f"Restriction presheaf family over {X.name}: {len(family.presheaves)} presheaves, {len(family.maps)} maps")
    return family


def check_family(X: RestrCat, family: Optional[RpshFamily] = None) -> CheckReport:
    """Uniqueness of structure, totality, hom-level laws and splitting over a family."""
    family = family or restriction_family(X)
    report = CheckReport(check="rpsh-family")
    for P in family.presheaves:
        structures = infer_restriction_structure(P, X)
        if structures != [P.elbar]:
            report.violate("structure-inferred", presheaf=P.name)
    report.merge(check_pshr_laws(family.maps))
    splits = 0
    for alpha in family.maps:
        is_total_nat(alpha)
        if alpha.source is alpha.target and is_restriction_idempotent_nat(alpha):
            split_in_pshr(alpha)
            splits += 1
    report.metadata["presheaves"] = len(family.presheaves)
    report.metadata["maps"] = len(family.maps)
    report.metadata["split_idempotents"] = splits
    return report


# -- files --------------------------------------------------------------------------------


def load_restriction_presheaf(path: Union[str, Path], X: RestrCat) -> RestrictionPresheaf:
    """Read a restriction presheaf file over ``X``.

    Raises:
        InputError: If the file has no ``restriction`` entries or its base differs from X
    """
    P, restriction = load_presheaf(path)
    if restriction is None:
        raise InputError(f"{path} has no 'restriction' entries")
    if P.base != X.cat:
        raise InputError(f"{path} is not over {X.name}")
    return RestrictionPresheaf(X, P.sets, P.actions, restriction, name=P.name)


def restriction_presheaf_to_dict(P: RestrictionPresheaf, base=None) -> Dict:
    data = presheaf_to_dict(P, base)
    data["restriction"] = {
        f"{obj}:{x}": P.elbar[(obj, x)]
        for obj in P.base.objects
        for x in P.sets[obj]
    }
    return data
