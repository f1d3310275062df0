"""
Restriction structures on finite categories.

A restriction structure assigns to every ``f: A → B`` an endomorphism
``bar(f)`` of ``A``. The axioms are checked exhaustively:

    R1  f∘bar(f) = f
    R2  bar(g)∘bar(f) = bar(f)∘bar(g)        (f, g with a common domain)
    R3  bar(g∘bar(f)) = bar(g)∘bar(f)        (f, g with a common domain)
    R4  bar(h)∘f = f∘bar(h∘f)                (h after f)
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Sequence

from restrictcat.config import DEFAULT_CONFIG, WorkbenchConfig
from restrictcat.exceptions import InputError, InvariantViolation
from restrictcat.fincat import FinCat, Functor, NatTrans, check_functor, subcategory
from restrictcat.report import CheckReport

logger = logging.getLogger(__name__)

RestrictionStructure = Mapping[str, str]


class RestrCat:
    """A finite category together with a restriction assignment ``bar``.

    Args:
        cat: The underlying category
        bar: Restriction of every morphism, keyed by morphism id
        name: Optional label used in reports
    """

    def __init__(self, cat: FinCat, bar: RestrictionStructure, name: str = ""):
        self.cat = cat
        self.bar: Dict[str, str] = dict(bar)
        self.name = name or cat.name

    def __repr__(self) -> str:
        return f"RestrCat({self.name or 'unnamed'}: {len(self.cat.objects)} objects)"

    def restrict(self, f: str) -> str:
        return self.bar[f]

    def is_restriction_idempotent(self, e: str) -> bool:
        return self.bar.get(e) == e

    def is_total(self, f: str) -> bool:
        return self.bar[f] == self.cat.identities[self.cat.dom(f)]

    def restriction_idempotents(self, obj: str) -> List[str]:
        return [e for e in self.cat.endos(self.cat.require_object(obj)) if self.bar[e] == e]

    def total_maps(self) -> List[str]:
        return [f for f in self.cat.morphism_ids if self.is_total(f)]


def trivial_structure(C: FinCat) -> Dict[str, str]:
    """The structure with every map total."""
    return {f: C.identities[C.dom(f)] for f in C.morphism_ids}


def _check_typing(C: FinCat, bar: RestrictionStructure) -> None:
    for f in C.morphism_ids:
        if f not in bar:
            raise InputError(f"restriction undefined on {f}")
        e = bar[f]
        if e not in C:
            raise InputError(f"restriction of {f} is the unknown morphism {e}")
        if C.dom(e) != C.dom(f) or C.cod(e) != C.dom(f):
            raise InputError(f"restriction of {f} must be an endomorphism of {C.dom(f)}, got {e}")


def _axiom_violations(C: FinCat, bar: RestrictionStructure, report: CheckReport, focus: Optional[str] = None) -> None:
    """Record R1-R4 failures; with ``focus``, only instances naming that map.

    Instances needing an unassigned ``bar`` value are skipped, which lets
    the enumerator call this on partial assignments.
    """
    compose = C.compose
    fs = [focus] if focus is not None else list(C.morphism_ids)
    for f in fs:
        if f not in bar:
            continue
        bf = bar[f]
        if compose(f, bf) != f:
            report.violate("R1", f=f)
        for g in C.out_of(C.dom(f)):
            if g not in bar:
                continue
            bg = bar[g]
            if compose(bg, bf) != compose(bf, bg):
                report.violate("R2", f=f, g=g)
            for first, second in ((f, g), (g, f)):
                b_first, b_second = bar[first], bar[second]
                composite = compose(second, b_first)
                if composite in bar and bar[composite] != compose(b_second, b_first):
                    report.violate("R3", f=first, g=second)
        for h in C.out_of(C.cod(f)):
            if h not in bar:
                continue
            hf = compose(h, f)
            if hf in bar and compose(bar[h], f) != compose(f, bar[hf]):
                report.violate("R4", f=f, h=h)
        if focus is not None:
            for g in C.into(C.dom(f)):
                fg = compose(f, g)
                if fg in bar and compose(bf, g) != compose(g, bar[fg]):
                    report.violate("R4", f=g, h=f)


def _derived_violations(C: FinCat, bar: RestrictionStructure) -> List[str]:
    compose = C.compose
    failures = []
    for f in C.morphism_ids:
        bf = bar[f]
        if compose(bf, bf) != bf:
            failures.append(f"restriction of {f} is not idempotent")
        if bar[bf] != bf:
            failures.append(f"restriction of the restriction of {f} differs")
        if C.is_mono(f) and bf != C.identities[C.dom(f)]:
            failures.append(f"monic {f} is not total")
        for g in C.out_of(C.cod(f)):
            gf = compose(g, f)
            if compose(bf, bar[gf]) != bar[gf]:
                failures.append(f"bar({f}) does not absorb bar({g}∘{f})")
            if bar[compose(bar[g], f)] != bar[gf]:
                failures.append(f"bar(bar({g})∘{f}) differs from bar({g}∘{f})")
    for a, b in sorted({(m.dom, m.cod) for m in C.morphisms}):
        homset = C.hom(a, b)
        for f in homset:
            for g in homset:
                f_le_g = compose(g, bar[f]) == f
                g_le_f = compose(f, bar[g]) == g
                if f_le_g and g_le_f and f != g:
                    failures.append(f"order is not antisymmetric on {f}, {g}")
                if not f_le_g:
                    continue
                for h in homset:
                    if compose(h, bar[g]) == g and compose(h, bar[f]) != f:
                        failures.append(f"order is not transitive on {f}, {g}, {h}")
    return failures


def check_restriction_structure(C: FinCat, bar: RestrictionStructure) -> CheckReport:
    """Check R1-R4 for every (pair of) morphisms.

    When the axioms hold, the derived laws (idempotence, absorption,
    ``bar(bar(g)∘f) = bar(g∘f)``, ``bar∘bar = bar``, monics total and the
    hom-set partial order) are re-checked; a discrepancy there is an
    internal error, never a report entry.

    Raises:
        InputError: If ``bar`` is not total or not typed as endomorphisms
        InvariantViolation: If the axioms pass but a derived law fails
    """
    _check_typing(C, bar)
    report = CheckReport(check="restriction-structure")
    _axiom_violations(C, bar, report)
    if report.violations:
        return report
    failures = _derived_violations(C, bar)
    if failures:
        raise InvariantViolation(
            f"restriction axioms hold but derived laws fail: {failures[0]}",
            witness={"failures": str(len(failures))},
        )
    return report


def make_restriction_category(C: FinCat, bar: RestrictionStructure, name: str = "") -> RestrCat:
    """Validate ``bar`` and wrap it as a RestrCat.

    Raises:
        InputError: If the structure is ill-typed or violates R1-R4
    """
    report = check_restriction_structure(C, bar)
    if not report.passed:
        raise InputError(f"not a restriction structure: violated {', '.join(report.laws())}")
    return RestrCat(C, bar, name=name)


def restriction_idempotents(X: RestrCat, A: str) -> List[str]:
    """All ``e: A → A`` with ``bar(e) = e``, in rank order."""
    return X.restriction_idempotents(A)


def total_subcategory(X: RestrCat) -> FinCat:
    """The wide subcategory of total maps."""
    try:
        return subcategory(X.cat, X.total_maps(), name=f"Total({X.name})")
    except InputError as exc:
        raise InvariantViolation(f"total maps are not closed under composition: {exc}") from exc


def leq(X: RestrCat, f: str, g: str) -> bool:
    """``f ≤ g`` iff ``f = g∘bar(f)``."""
    C = X.cat
    if C.dom(f) != C.dom(g) or C.cod(f) != C.cod(g):
        raise InputError(f"{f} and {g} are not parallel")
    return C.compose(g, X.bar[f]) == f


@dataclass
class RestrictionFunctor:
    """A functor between restriction categories."""
    functor: Functor
    source: RestrCat
    target: RestrCat

    def __call__(self, ident: str) -> str:
        return self.functor(ident)

    def check(self) -> CheckReport:
        return check_restriction_functor(self.functor, self.source, self.target)


def check_restriction_functor(
    F: Functor,
    X: RestrCat,
    Y: RestrCat,
    transformations: Sequence[NatTrans] = (),
) -> CheckReport:
    """Check ``F(bar f) = bar(F f)`` for every ``f``.

    Supplied natural transformations are checked to have total components,
    which makes them restriction transformations.

    Raises:
        InputError: If ``F`` is not a functor
    """
    functor_report = check_functor(F)
    if not functor_report.passed:
        raise InputError(
            f"{F.name or 'functor'} fails the functor laws: {', '.join(functor_report.laws())}"
        )
    report = CheckReport(check="restriction-functor")
    for f in X.cat.morphism_ids:
        if F.mmap[X.bar[f]] != Y.bar[F.mmap[f]]:
            report.violate("preserves-restriction", f=f)
    for alpha in transformations:
        for obj, component in sorted(alpha.components.items()):
            if not Y.is_total(component):
                report.violate("total-component", transformation=alpha.name, object=obj)
    return report


def enumerate_restriction_structures(C: FinCat, config: WorkbenchConfig = DEFAULT_CONFIG) -> List[Dict[str, str]]:
    """All restriction structures on ``C`` by backtracking.

    Candidates for ``bar(f)`` are idempotent endomorphisms ``e`` of the
    domain with ``f∘e = f``. R1-R4 are pruned as soon as an instance is
    decidable and every complete assignment is checked in full.

    Raises:
        InputError: If ``C`` has more than ``config.enumeration_limit`` morphisms
    """
    limit = config.enumeration_limit
    if len(C.morphisms) > limit:
        raise InputError(f"enumeration is limited to {limit} morphisms, got {len(C.morphisms)}")
    order = list(C.morphism_ids)
    candidates = {
        f: [
            e for e in C.endos(C.dom(f))
            if C.compose(e, e) == e and C.compose(f, e) == f
        ]
        for f in order
    }
    found: List[Dict[str, str]] = []
    assignment: Dict[str, str] = {}

    def extend(position: int) -> None:
        if position == len(order):
            if check_restriction_structure(C, assignment).passed:
                found.append(dict(assignment))
            return
        f = order[position]
        for e in candidates[f]:
            assignment[f] = e
            partial = CheckReport(check="partial")
            _axiom_violations(C, assignment, partial, focus=f)
            if not partial.violations:
                extend(position + 1)
            del assignment[f]

    extend(0)
    logger.info(f"Found {len(found)} restriction structures on {C!r}")
    return found
