"""
Splitting restriction idempotents.

``kr(X)`` builds the restriction category whose objects are pairs ``(A, e)``
with ``e`` a restriction idempotent on ``A``; a morphism ``(A, e) → (B, e')``
is a map ``f: A → B`` of X with ``e'∘f∘e = f``. The unit ``J`` sends ``A``
to ``(A, 1_A)``. Kr object ids are ``"A|e"`` and morphism ids
``"f@A|e>B|e'"``.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple

from restrictcat.exceptions import InputError, InvariantViolation
from restrictcat.fincat import CategoryBuilder, Functor
from restrictcat.restriction import RestrCat, check_restriction_functor, check_restriction_structure

logger = logging.getLogger(__name__)


def kr_object_id(obj: str, e: str) -> str:
    return f"{obj}|{e}"


def kr_morphism_id(f: str, source: str, target: str) -> str:
    return f"{f}@{source}>{target}"


@dataclass
class KrCat:
    """The splitting of X together with its unit ``J: X → Kr(X)``.

    Attributes:
        base: The restriction category being split
        result: Kr(X)
        embedding: The functor J
        parts: Kr object id to ``(A, e)``
        underlying: Kr morphism id to the morphism of X it carries
    """
    base: RestrCat
    result: RestrCat
    embedding: Functor
    parts: Dict[str, Tuple[str, str]] = field(default_factory=dict)
    underlying: Dict[str, str] = field(default_factory=dict)

    def object_of(self, obj: str, e: str) -> str:
        ident = kr_object_id(obj, e)
        if ident not in self.parts:
            raise InputError(f"{e} is not a restriction idempotent on {obj}")
        return ident

    def morphism_of(self, f: str, source: str, target: str) -> str:
        ident = kr_morphism_id(f, source, target)
        if ident not in self.result.cat:
            raise InputError(f"{f} is not a morphism {source} → {target} of Kr")
        return ident

    def splitting_of(self, kr_object: str) -> Tuple[str, str]:
        """``(m, r)`` splitting ``e`` on ``(A, 1)`` through ``(A, e)``; both carry ``e``."""
        obj, e = self.parts[kr_object]
        unit = kr_object_id(obj, self.base.cat.identities[obj])
        return kr_morphism_id(e, kr_object, unit), kr_morphism_id(e, unit, kr_object)


def kr(X: RestrCat) -> KrCat:
    """Build Kr(X) and its unit J.

    The result is checked to be a restriction category, J a restriction
    functor that is injective on objects and fully faithful.

    Raises:
        InvariantViolation: If any of these checks fail
    """
    C = X.cat
    builder = CategoryBuilder()
    parts: Dict[str, Tuple[str, str]] = {}
    underlying: Dict[str, str] = {}
    for obj in C.objects:
        for e in X.restriction_idempotents(obj):
            node = kr_object_id(obj, e)
            parts[node] = (obj, e)
            identity = kr_morphism_id(e, node, node)
            builder.add_object(node, identity)
            underlying[identity] = e
    for source, (a, e) in parts.items():
        for target, (b, e2) in parts.items():
            for f in C.hom(a, b):
                if C.compose(e2, f, e) != f:
                    continue
                ident = kr_morphism_id(f, source, target)
                if ident in underlying:
                    continue
                builder.add_morphism(ident, source, target)
                underlying[ident] = f

    dom_of = {m.id: m.dom for m in builder.morphisms}
    cod_of = {m.id: m.cod for m in builder.morphisms}

    def compose(g: str, f: str) -> str:
        return kr_morphism_id(C.compose(underlying[g], underlying[f]), dom_of[f], cod_of[g])

    result_cat = builder.build(compose, name=f"Kr({X.name})")
    bar = {
        ident: kr_morphism_id(X.bar[f], dom_of[ident], dom_of[ident])
        for ident, f in underlying.items()
    }
    result = RestrCat(result_cat, bar, name=f"Kr({X.name})")
    units = {obj: kr_object_id(obj, C.identities[obj]) for obj in C.objects}
    J = Functor(
        source=C,
        target=result_cat,
        omap=units,
        mmap={f: kr_morphism_id(f, units[C.dom(f)], units[C.cod(f)]) for f in C.morphism_ids},
        name="J",
    )
    split = KrCat(X, result, J, parts, underlying)

    if not check_restriction_structure(result_cat, bar).passed:
        raise InvariantViolation(f"Kr({X.name}) fails the restriction axioms")
    if not check_restriction_functor(J, X, result).passed:
        raise InvariantViolation("J does not preserve restriction")
    if not (J.is_injective_on_objects() and J.is_fully_faithful()):
        raise InvariantViolation("J is not a full embedding")
    logger.info(
        f"Built Kr({X.name}): {len(result_cat.objects)} objects, {len(result_cat.morphisms)} morphisms"
    )
    return split


def split_restriction_idempotent(X: RestrCat, e: str) -> Optional[Tuple[str, str]]:
    """The canonical splitting ``(m, r)`` of ``e``, or None.

    ``m∘r = e`` and ``r∘m = 1``; among all splittings the least pair of
    morphism ranks is returned, and identities split as themselves.

    Raises:
        InputError: If ``e`` is not a restriction idempotent
    """
    C = X.cat
    if not X.is_restriction_idempotent(e):
        raise InputError(f"{e} is not a restriction idempotent")
    if C.is_identity(e):
        return e, e
    a = C.dom(e)
    best: Optional[Tuple[str, str]] = None
    for s in C.objects:
        for m in C.hom(s, a):
            for r in C.hom(a, s):
                if C.compose(m, r) != e or C.compose(r, m) != C.identities[s]:
                    continue
                if best is None or (C.rank(m), C.rank(r)) < (C.rank(best[0]), C.rank(best[1])):
                    best = (m, r)
    return best


def non_split_idempotent(X: RestrCat) -> Optional[str]:
    """A restriction idempotent that does not split, if any."""
    for f in X.cat.morphism_ids:
        if X.is_restriction_idempotent(f) and split_restriction_idempotent(X, f) is None:
            return f
    return None


def is_split(X: RestrCat) -> bool:
    """True iff every restriction idempotent of X splits."""
    return non_split_idempotent(X) is None
