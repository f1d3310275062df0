"""
M-categories and partial maps.

An M-system is a class of monics containing the isomorphisms, closed under
composition and stable under pullback. ``par`` builds the category of
partial maps: a morphism ``X → Y`` is a span ``X ←m− Z −f→ Y`` with
``m`` in the system, taken up to isomorphism of spans and stored by its
canonical representative. Spans compose by pullback and ``bar(m, f) =
(m, m)``. ``mtotal`` goes back from a split restriction category to its
total maps with the restriction monics; ``phi`` and ``psi`` compare the two
directions.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Set, Tuple

from restrictcat.cache import MISSING, SearchCache
from restrictcat.exceptions import InputError, InvariantViolation, PreconditionError
from restrictcat.fincat import (
    CategoryBuilder,
    FinCat,
    Functor,
    NatTrans,
    check_functor,
    is_pullback,
    pullback,
)
from restrictcat.report import CheckReport
from restrictcat.restriction import (
    RestrCat,
    RestrictionFunctor,
    check_restriction_functor,
    total_subcategory,
)
from restrictcat.splitting import non_split_idempotent, split_restriction_idempotent

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class MSystem:
    """A set of monics of ``cat``; validity is established by :func:`check_msystem`."""
    cat: FinCat
    members: FrozenSet[str]
    cache: SearchCache = field(default_factory=SearchCache, repr=False)

    def __contains__(self, f: str) -> bool:
        return f in self.members

    def into(self, obj: str) -> List[str]:
        return [m for m in self.cat.into(obj) if m in self.members]


def msystem(C: FinCat, members: Iterable[str]) -> MSystem:
    members = frozenset(members)
    for m in members:
        C.morphism(m)
    return MSystem(C, members)


def isomorphisms(C: FinCat) -> MSystem:
    return MSystem(C, frozenset(C.isos()))


def check_msystem(C: FinCat, members: Iterable[str]) -> CheckReport:
    """Check that ``members`` is a stable system of monics in ``C``.

    Raises:
        InputError: If a member id is unknown
    """
    M = msystem(C, members)
    report = CheckReport(check="msystem")
    report.metadata["members"] = len(M.members)
    for m in C.sort_morphisms(M.members):
        if not C.is_mono(m):
            report.violate("monic", m=m)
    for f in C.isos():
        if f not in M:
            report.violate("contains-isos", iso=f)
    for m in C.sort_morphisms(M.members):
        for n in C.out_of(C.cod(m)):
            if n in M and C.compose(n, m) not in M:
                report.violate("composition", m=m, n=n)
    for m in C.sort_morphisms(M.members):
        for f in C.into(C.cod(m)):
            square = pullback(C, f, m)
            if square is None:
                report.violate("pullback-exists", f=f, m=m)
            elif square.p not in M:
                report.violate("pullback-stable", f=f, m=m, pulled_back=square.p)
    return report


def require_valid(M: MSystem) -> None:
    report = check_msystem(M.cat, M.members)
    if not report.passed:
        raise InputError(f"invalid M-system: violated {', '.join(report.laws())}")


@dataclass(frozen=True)
class SpanClass:
    """Canonical representative ``src ←m− apex −f→ dst`` of a partial map."""
    src: str
    dst: str
    apex: str
    m: str
    f: str

    @property
    def id(self) -> str:
        return f"{self.m}|{self.f}"


def canonical_span(C: FinCat, m: str, f: str) -> SpanClass:
    """The least ``(apex, m∘φ, f∘φ)`` over isomorphisms ``φ`` into the apex."""
    key = ("span", m, f)
    cached = C.cache.lookup(key)
    if cached is not MISSING:
        return cached
    best = None
    best_key = None
    for apex, phi in C.isos_into(C.dom(m)):
        mp, fp = C.compose(m, phi), C.compose(f, phi)
        candidate_key = (C.object_rank(apex), C.rank(mp), C.rank(fp))
        if best_key is None or candidate_key < best_key:
            best, best_key = (apex, mp, fp), candidate_key
    apex, mp, fp = best
    result = SpanClass(C.cod(m), C.cod(f), apex, mp, fp)
    C.cache.set(key, result)
    return result


class ParCat(RestrCat):
    """Par(C, M) as a restriction category with span-level helpers.

    Args:
        base: The underlying M-category's category
        msys: The stable system of monics
        cat: The category of canonical spans
        bar: ``(m, f) ↦ (m, m)``
        spans: Span id to its canonical representative
    """

    def __init__(self, base: FinCat, msys: MSystem, cat: FinCat, bar: Dict[str, str], spans: Dict[str, SpanClass]):
        super().__init__(cat, bar, name=f"Par({base.name})")
        self.base = base
        self.msystem = msys
        self.spans = spans

    def span(self, ident: str) -> SpanClass:
        return self.spans[ident]

    def classify(self, m: str, f: str) -> str:
        """Span id of the class of ``(m, f)``."""
        if m not in self.msystem:
            raise InputError(f"{m} is not in the M-system")
        return canonical_span(self.base, m, f).id

    def total_class(self, f: str) -> str:
        """The class of ``(1, f)``."""
        return self.classify(self.base.identities[self.base.dom(f)], f)

    def inverse_class(self, m: str) -> str:
        """The class of ``(m, 1)``: a partial map ``cod m → dom m``."""
        return self.classify(m, self.base.identities[self.base.dom(m)])

    def compose_spans(self, second: str, first: str) -> str:
        return _compose_spans(self.base, self.spans[second], self.spans[first]).id


def _compose_spans(C: FinCat, second: SpanClass, first: SpanClass) -> SpanClass:
    square = pullback(C, first.f, second.m)
    if square is None:
        raise InvariantViolation(
            "pullback of a member does not exist",
            witness={"f": first.f, "m": second.m},
        )
    return canonical_span(C, C.compose(first.m, square.p), C.compose(second.f, square.q))


def par(C: FinCat, M: MSystem) -> ParCat:
    """Build Par(C, M).

    Raises:
        InputError: If M is not a stable system of monics
    """
    require_valid(M)
    spans: Dict[str, SpanClass] = {}
    builder = CategoryBuilder()
    identity_ids = {}
    for obj in C.objects:
        ident = canonical_span(C, C.identities[obj], C.identities[obj])
        spans[ident.id] = ident
        identity_ids[obj] = ident.id
        builder.add_object(obj, ident.id)
    for x in C.objects:
        for m in M.into(x):
            for f in C.out_of(C.dom(m)):
                span = canonical_span(C, m, f)
                if span.id not in spans:
                    spans[span.id] = span
                    builder.add_morphism(span.id, span.src, span.dst)

    def compose(g: str, f: str) -> str:
        return _compose_spans(C, spans[g], spans[f]).id

    cat = builder.build(compose, name=f"Par({C.name})")
    bar = {ident: canonical_span(C, span.m, span.m).id for ident, span in spans.items()}
    logger.info(f"Built Par({C.name}): {len(cat.objects)} objects, {len(cat.morphisms)} partial maps")
    return ParCat(C, M, cat, bar, spans)


def restriction_monics(X: RestrCat) -> Set[str]:
    """Maps ``m`` with some ``r`` such that ``r∘m = 1`` and ``m∘r`` is a restriction idempotent."""
    C = X.cat
    found = set()
    for m in C.morphism_ids:
        a, b = C.dom(m), C.cod(m)
        for r in C.hom(b, a):
            if C.compose(r, m) == C.identities[a] and X.is_restriction_idempotent(C.compose(m, r)):
                found.add(m)
                break
    return found


def _require_split(X: RestrCat) -> None:
    witness = non_split_idempotent(X)
    if witness is not None:
        raise PreconditionError(
            f"{X.name} is not split: {witness} does not split",
            witness={"idempotent": witness},
        )


def mtotal(X: RestrCat) -> Tuple[FinCat, MSystem]:
    """Total maps of a split X with the restriction monics.

    Raises:
        PreconditionError: If X is not split
    """
    _require_split(X)
    total = total_subcategory(X)
    M = MSystem(total, frozenset(restriction_monics(X)))
    report = check_msystem(total, M.members)
    if not report.passed:
        raise InvariantViolation(
            f"restriction monics of {X.name} are not a stable system: {', '.join(report.laws())}"
        )
    return total, M


def phi(X: RestrCat) -> RestrictionFunctor:
    """``Φ: X → Par(MTotal(X))``, ``f ↦ (m, f∘m)`` where ``bar(f) = m∘r``.

    Raises:
        PreconditionError: If X is not split
        InvariantViolation: If Φ is not a restriction functor bijective on hom-sets
    """
    _require_split(X)
    C = X.cat
    total, M = mtotal(X)
    P = par(total, M)
    mmap = {}
    for f in C.morphism_ids:
        m, _ = split_restriction_idempotent(X, X.bar[f])
        mmap[f] = P.classify(m, C.compose(f, m))
    F = Functor(C, P.cat, {a: a for a in C.objects}, mmap, name="Φ")
    for a in C.objects:
        for b in C.objects:
            images = {mmap[f] for f in C.hom(a, b)}
            if len(images) != len(C.hom(a, b)) or images != set(P.cat.hom(a, b)):
                raise InvariantViolation("Φ is not bijective on a hom-set", witness={"dom": a, "cod": b})
    report = check_restriction_functor(F, X, P)
    if not report.passed:
        raise InvariantViolation(f"Φ does not preserve restriction: {', '.join(report.laws())}")
    return RestrictionFunctor(F, X, P)


def psi(C: FinCat, M: MSystem, P: Optional[ParCat] = None) -> Functor:
    """``Ψ: MTotal(Par(C, M)) → C``, ``(m, f) ↦ f∘m⁻¹`` on total classes.

    Raises:
        InvariantViolation: If a total class has a non-invertible leg, or Ψ
            is not a functor bijective on hom-sets preserving the systems
    """
    P = P or par(C, M)
    total, RM = mtotal(P)
    mmap = {}
    for ident in total.morphism_ids:
        span = P.span(ident)
        inverse = C.inverse(span.m)
        if inverse is None:
            raise InvariantViolation("total partial map with a non-invertible leg", witness={"span": ident})
        mmap[ident] = C.compose(span.f, inverse)
    F = Functor(total, C, {a: a for a in C.objects}, mmap, name="Ψ")
    report = check_functor(F)
    if not report.passed:
        raise InvariantViolation(f"Ψ is not a functor: {', '.join(report.laws())}")
    for a in C.objects:
        for b in C.objects:
            images = {mmap[s] for s in total.hom(a, b)}
            if len(images) != len(total.hom(a, b)) or images != set(C.hom(a, b)):
                raise InvariantViolation("Ψ is not bijective on a hom-set", witness={"dom": a, "cod": b})
    if {mmap[s] for s in RM.members} != set(M.members):
        raise InvariantViolation("Ψ does not match restriction monics with the M-system")
    return F


def check_mcartesian(alpha: NatTrans, M_source: MSystem) -> CheckReport:
    """Check that the naturality square of ``alpha`` at every member is a pullback."""
    report = CheckReport(check="m-cartesian")
    F, G = alpha.source, alpha.target
    D = F.target
    for m in M_source.cat.sort_morphisms(M_source.members):
        a, b = M_source.cat.dom(m), M_source.cat.cod(m)
        if not is_pullback(D, G.mmap[m], alpha.components[b], F.omap[a], alpha.components[a], F.mmap[m]):
            report.violate("cartesian-square", m=m, component=alpha.components[a])
    return report


@dataclass(frozen=True)
class CommutingSquare:
    """``top: A → B``, ``left: A → C``, ``right: B → D``, ``bottom: C → D``."""
    top: str
    left: str
    right: str
    bottom: str


def lemma0_check(C: FinCat, M: MSystem, square: CommutingSquare, P: Optional[ParCat] = None) -> bool:
    """Decide whether a square with member legs is a pullback, two ways.

    The square is a pullback in C iff ``(m,1)∘(1,f) = (1,g)∘(n,1)`` in
    Par(C, M), with ``n`` the left and ``m`` the right leg.

    Raises:
        InputError: If a vertical leg is not a member or the square does not commute
        InvariantViolation: If the two answers differ
    """
    g, n, m, f = square.top, square.left, square.right, square.bottom
    if n not in M or m not in M:
        raise InputError("vertical legs of the square must be members")
    if C.compose(m, g) != C.compose(f, n):
        raise InputError("square does not commute")
    P = P or par(C, M)
    in_c = is_pullback(C, f, m, C.dom(g), n, g)
    lhs = P.compose_spans(P.inverse_class(m), P.total_class(f))
    rhs = P.compose_spans(P.total_class(g), P.inverse_class(n))
    in_par = lhs == rhs
    if in_c != in_par:
        raise InvariantViolation(
            "pullback test and partial-map test disagree",
            witness={"top": g, "left": n, "right": m, "bottom": f},
        )
    return in_c


def subobject_rep(C: FinCat, m: str) -> str:
    """Canonical member representing the subobject of ``m``."""
    key = ("subobject", m)
    cached = C.cache.lookup(key)
    if cached is not MISSING:
        return cached
    best = min(
        (C.compose(m, phi) for _, phi in C.isos_into(C.dom(m))),
        key=lambda mp: (C.object_rank(C.dom(mp)), C.rank(mp)),
    )
    C.cache.set(key, best)
    return best


def m_subobjects(C: FinCat, M: MSystem, D: str) -> List[str]:
    """Canonical representatives of the M-subobjects of ``D``, in rank order."""
    C.require_object(D)
    key = ("m_subobjects", D)
    cached = M.cache.lookup(key)
    if cached is not MISSING:
        return cached
    reps = C.sort_morphisms({subobject_rep(C, m) for m in M.into(D)})
    M.cache.set(key, reps)
    return reps


def factors_through(C: FinCat, n: str, m: str) -> bool:
    """True iff ``n = m∘k`` for some ``k``."""
    return any(C.compose(m, k) == n for k in C.hom(C.dom(n), C.dom(m)))


def subobject_order(C: FinCat, M: MSystem, D: str) -> Set[Tuple[str, str]]:
    """Pairs ``(n, m)`` of representatives with ``n ≤ m``."""
    reps = m_subobjects(C, M, D)
    return {(n, m) for n in reps for m in reps if factors_through(C, n, m)}


def pullback_subobject(C: FinCat, m: str, f: str) -> str:
    """Representative of the pullback of the subobject ``m`` along ``f``."""
    square = pullback(C, f, m)
    if square is None:
        raise InvariantViolation("pullback of a member does not exist", witness={"f": f, "m": m})
    return subobject_rep(C, square.p)


def par_functor(P: ParCat, Q: ParCat, F: Functor) -> Functor:
    """Par on an M-functor: ``(m, f) ↦ (F m, F f)``."""
    mmap = {
        ident: Q.classify(F.mmap[span.m], F.mmap[span.f])
        for ident, span in P.spans.items()
    }
    return Functor(P.cat, Q.cat, dict(F.omap), mmap, name=f"Par({F.name})")


def par_transformation(Q: ParCat, alpha: NatTrans) -> Dict[str, str]:
    """Components ``(1, α_A)`` of Par(α) for an M-cartesian ``α``."""
    return {obj: Q.total_class(component) for obj, component in alpha.components.items()}
