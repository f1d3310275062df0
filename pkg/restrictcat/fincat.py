"""
Finite-category kernel.

A FinCat is an explicit finite category: object ids, morphism ids with
domain and codomain, chosen identities and a composition table. Everything
else in the package is built on the brute-force searches defined here:
monos and isos, pullbacks, colimits of finite diagrams (coproducts and
coequalizers among them), functors and natural transformations.

Canonical choices: objects are ranked by declaration order, morphisms with
identities first and then by declaration order. A (co)limit search returns
the valid apex of least rank and, at that apex, the lexicographically least
tuple of legs. Degenerate cases (an identity leg in a cospan, equal maps in
a coequalizer, a one-object coproduct) return the identity-form answer.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

from restrictcat.cache import MISSING, SearchCache
from restrictcat.exceptions import InputError
from restrictcat.report import CheckReport

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Morphism:
    """A morphism id together with its domain and codomain."""
    id: str
    dom: str
    cod: str


class FinCat:
    """A finite category given by a composition table.

    The table maps ``(g, f)`` to the id of ``g∘f``. Construction checks
    referential integrity only; the category laws are checked by
    :func:`check_category` so that broken tables can still be reported on.

    Args:
        objects: Object ids in declaration order
        morphisms: Morphisms in declaration order
        identities: Object id to identity morphism id
        table: Composite ids keyed by ``(g, f)``
        name: Optional label used in log messages
    """

    def __init__(
        self,
        objects: Iterable[str],
        morphisms: Iterable[Morphism],
        identities: Mapping[str, str],
        table: Mapping[Tuple[str, str], str],
        name: str = "",
    ):
        self.objects: Tuple[str, ...] = tuple(objects)
        self.morphisms: Tuple[Morphism, ...] = tuple(morphisms)
        self.identities: Dict[str, str] = dict(identities)
        self.table: Dict[Tuple[str, str], str] = dict(table)
        self.name = name
        self.cache = SearchCache()
        self._validate_references()
        self._index()

    def _validate_references(self) -> None:
        if len(set(self.objects)) != len(self.objects):
            raise InputError(f"duplicate object ids in {self.name or 'category'}")
        ids = [m.id for m in self.morphisms]
        if len(set(ids)) != len(ids):
            dupes = sorted({i for i in ids if ids.count(i) > 1})
            raise InputError(f"duplicate morphism ids: {dupes}")
        known_objects = set(self.objects)
        self._by_id: Dict[str, Morphism] = {m.id: m for m in self.morphisms}
        for m in self.morphisms:
            if m.dom not in known_objects or m.cod not in known_objects:
                raise InputError(f"morphism {m.id} refers to an unknown object")
        if set(self.identities) != known_objects:
            raise InputError("identities must be given for exactly the objects")
        for obj, ident in self.identities.items():
            m = self._by_id.get(ident)
            if m is None or m.dom != obj or m.cod != obj:
                raise InputError(f"identity {ident} of {obj} is not an endomorphism of {obj}")
        for (g, f), gf in self.table.items():
            for ident in (g, f, gf):
                if ident not in self._by_id:
                    raise InputError(f"composition entry ({g}, {f}) refers to unknown morphism {ident}")

    def _index(self) -> None:
        self._object_rank = {obj: i for i, obj in enumerate(self.objects)}
        identity_ids = set(self.identities.values())
        ordered = [m for m in self.morphisms if m.id in identity_ids]
        ordered += [m for m in self.morphisms if m.id not in identity_ids]
        self._rank = {m.id: i for i, m in enumerate(ordered)}
        self._identity_ids = identity_ids
        hom: Dict[Tuple[str, str], List[str]] = {}
        into: Dict[str, List[str]] = {obj: [] for obj in self.objects}
        out_of: Dict[str, List[str]] = {obj: [] for obj in self.objects}
        for m in ordered:
            hom.setdefault((m.dom, m.cod), []).append(m.id)
            into[m.cod].append(m.id)
            out_of[m.dom].append(m.id)
        self._hom = {key: tuple(value) for key, value in hom.items()}
        self._into = {key: tuple(value) for key, value in into.items()}
        self._out_of = {key: tuple(value) for key, value in out_of.items()}
        self._ordered_ids = tuple(m.id for m in ordered)

    # -- lookups -----------------------------------------------------------

    def __contains__(self, ident: str) -> bool:
        return ident in self._by_id

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FinCat):
            return NotImplemented
        return (
            self.objects == other.objects
            and self.morphisms == other.morphisms
            and self.identities == other.identities
            and self.table == other.table
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return (
            f"FinCat({self.name or 'unnamed'}: {len(self.objects)} objects, "
            f"{len(self.morphisms)} morphisms)"
        )

    def morphism(self, ident: str) -> Morphism:
        try:
            return self._by_id[ident]
        except KeyError:
            raise InputError(f"unknown morphism id: {ident}") from None

    def require_object(self, obj: str) -> str:
        if obj not in self._object_rank:
            raise InputError(f"unknown object id: {obj}")
        return obj

    def dom(self, f: str) -> str:
        return self.morphism(f).dom

    def cod(self, f: str) -> str:
        return self.morphism(f).cod

    def identity(self, obj: str) -> str:
        return self.identities[self.require_object(obj)]

    def is_identity(self, f: str) -> bool:
        return f in self._identity_ids

    def rank(self, f: str) -> int:
        return self._rank[f]

    def object_rank(self, obj: str) -> int:
        return self._object_rank[obj]

    @property
    def morphism_ids(self) -> Tuple[str, ...]:
        """Morphism ids in rank order."""
        return self._ordered_ids

    def hom(self, a: str, b: str) -> Tuple[str, ...]:
        return self._hom.get((a, b), ())

    def into(self, b: str) -> Tuple[str, ...]:
        return self._into[b]

    def out_of(self, a: str) -> Tuple[str, ...]:
        return self._out_of[a]

    def endos(self, a: str) -> Tuple[str, ...]:
        return self.hom(a, a)

    def compose(self, *fs: str) -> str:
        """Compose right to left: ``compose(h, g, f)`` is ``h∘g∘f``."""
        if not fs:
            raise InputError("compose needs at least one morphism")
        result = fs[-1]
        for g in reversed(fs[:-1]):
            try:
                result = self.table[(g, result)]
            except KeyError:
                raise InputError(f"{g} and {result} are not composable") from None
        return result

    def composable(self, g: str, f: str) -> bool:
        return self.cod(f) == self.dom(g)

    def sort_morphisms(self, ids: Iterable[str]) -> List[str]:
        return sorted(ids, key=self.rank)

    def parallel_pairs(self) -> Iterator[Tuple[str, str]]:
        for (a, b), homset in self._hom.items():
            for f in homset:
                for g in homset:
                    yield f, g

    # -- monos and isos ------------------------------------------------------

    def is_mono(self, f: str) -> bool:
        key = ("mono", f)
        cached = self.cache.lookup(key)
        if cached is not MISSING:
            return cached
        a = self.dom(f)
        result = True
        for x in self.objects:
            images = {self.compose(f, g) for g in self.hom(x, a)}
            if len(images) != len(self.hom(x, a)):
                result = False
                break
        self.cache.set(key, result)
        return result

    def inverse(self, f: str) -> Optional[str]:
        """The two-sided inverse of ``f`` if it is an isomorphism."""
        key = ("inverse", f)
        cached = self.cache.lookup(key)
        if cached is not MISSING:
            return cached
        m = self.morphism(f)
        result = None
        for g in self.hom(m.cod, m.dom):
            if self.compose(g, f) == self.identities[m.dom] and self.compose(f, g) == self.identities[m.cod]:
                result = g
                break
        self.cache.set(key, result)
        return result

    def is_iso(self, f: str) -> bool:
        return self.inverse(f) is not None

    def isos(self) -> List[str]:
        return [f for f in self.morphism_ids if self.is_iso(f)]

    def isos_into(self, b: str) -> List[Tuple[str, str]]:
        """All ``(apex, φ)`` with ``φ: apex → b`` an isomorphism, in rank order."""
        key = ("isos_into", b)
        cached = self.cache.lookup(key)
        if cached is not MISSING:
            return cached
        result = [(self.dom(phi), phi) for phi in self.into(b) if self.is_iso(phi)]
        result.sort(key=lambda pair: (self.object_rank(pair[0]), self.rank(pair[1])))
        self.cache.set(key, result)
        return result

    def isomorphic(self, a: str, b: str) -> bool:
        return any(self.is_iso(f) for f in self.hom(a, b))


def is_mono(C: FinCat, f: str) -> bool:
    """True iff ``f`` is left-cancellable, checked against every parallel pair."""
    return C.is_mono(f)


def is_iso(C: FinCat, f: str) -> bool:
    return C.is_iso(f)


def check_category(C: FinCat) -> CheckReport:
    """Check the category laws of a composition table exhaustively.

    Violations carry the law tag and the offending pair or triple:
    ``missing-composite``, ``extra-composite``, ``composite-typing``,
    ``left-identity``, ``right-identity`` and ``associativity``.
    """
    report = CheckReport(check="category")
    report.metadata["objects"] = len(C.objects)
    report.metadata["morphisms"] = len(C.morphisms)
    for (g, f), gf in sorted(C.table.items()):
        if C.cod(f) != C.dom(g):
            report.violate("extra-composite", g=g, f=f)
        elif C.dom(gf) != C.dom(f) or C.cod(gf) != C.cod(g):
            report.violate("composite-typing", g=g, f=f, gf=gf)
    for f in C.morphism_ids:
        for g in C.out_of(C.cod(f)):
            if (g, f) not in C.table:
                report.violate("missing-composite", g=g, f=f)
    if report.violations:
        return report
    for f in C.morphism_ids:
        m = C.morphism(f)
        if C.table[(f, C.identities[m.dom])] != f:
            report.violate("right-identity", f=f)
        if C.table[(C.identities[m.cod], f)] != f:
            report.violate("left-identity", f=f)
    for f in C.morphism_ids:
        for g in C.out_of(C.cod(f)):
            gf = C.table[(g, f)]
            for h in C.out_of(C.cod(g)):
                if C.table[(h, gf)] != C.table[(C.table[(h, g)], f)]:
                    report.violate("associativity", h=h, g=g, f=f)
    return report


# -- functors and natural transformations ------------------------------------


@dataclass
class Functor:
    """A functor between finite categories, given on objects and morphisms."""
    source: FinCat
    target: FinCat
    omap: Dict[str, str]
    mmap: Dict[str, str]
    name: str = ""

    def __call__(self, ident: str) -> str:
        if ident in self.mmap:
            return self.mmap[ident]
        if ident in self.omap:
            return self.omap[ident]
        raise InputError(f"{self.name or 'functor'} is undefined on {ident}")

    def then(self, other: Functor) -> Functor:
        """The composite ``other ∘ self``."""
        return Functor(
            source=self.source,
            target=other.target,
            omap={a: other.omap[b] for a, b in self.omap.items()},
            mmap={f: other.mmap[g] for f, g in self.mmap.items()},
            name=f"{other.name}∘{self.name}",
        )

    def is_injective_on_objects(self) -> bool:
        return len(set(self.omap.values())) == len(self.omap)

    def is_fully_faithful(self) -> bool:
        for a in self.source.objects:
            for b in self.source.objects:
                images = [self.mmap[f] for f in self.source.hom(a, b)]
                target_hom = self.target.hom(self.omap[a], self.omap[b])
                if len(set(images)) != len(images) or set(images) != set(target_hom):
                    return False
        return True


def identity_functor(C: FinCat) -> Functor:
    return Functor(C, C, {a: a for a in C.objects}, {f: f for f in C.morphism_ids}, name="id")


def check_functor(F: Functor) -> CheckReport:
    """Check that ``F`` is total, preserves typing, identities and composition."""
    report = CheckReport(check="functor")
    S, T = F.source, F.target
    for a in S.objects:
        if F.omap.get(a) not in T.objects:
            report.violate("object-map", object=a)
    for f in S.morphism_ids:
        if F.mmap.get(f) not in T:
            report.violate("morphism-map", f=f)
    if report.violations:
        return report
    for f in S.morphism_ids:
        m, image = S.morphism(f), T.morphism(F.mmap[f])
        if image.dom != F.omap[m.dom] or image.cod != F.omap[m.cod]:
            report.violate("typing", f=f, image=image.id)
    for a in S.objects:
        if F.mmap[S.identities[a]] != T.identities[F.omap[a]]:
            report.violate("identity", object=a)
    if report.violations:
        return report
    for f in S.morphism_ids:
        for g in S.out_of(S.cod(f)):
            if F.mmap[S.compose(g, f)] != T.compose(F.mmap[g], F.mmap[f]):
                report.violate("composition", g=g, f=f)
    return report


@dataclass
class NatTrans:
    """A natural transformation ``source ⇒ target`` between parallel functors."""
    source: Functor
    target: Functor
    components: Dict[str, str]
    name: str = ""


def check_natural(alpha: NatTrans) -> CheckReport:
    """Check component typing and every naturality square."""
    report = CheckReport(check="naturality")
    F, G = alpha.source, alpha.target
    D = F.target
    for a in F.source.objects:
        component = alpha.components.get(a)
        if component not in D or D.dom(component) != F.omap[a] or D.cod(component) != G.omap[a]:
            report.violate("component", object=a)
    if report.violations:
        return report
    for f in F.source.morphism_ids:
        a, b = F.source.dom(f), F.source.cod(f)
        left = D.compose(G.mmap[f], alpha.components[a])
        right = D.compose(alpha.components[b], F.mmap[f])
        if left != right:
            report.violate("naturality", f=f)
    return report


# -- pullbacks ---------------------------------------------------------------


@dataclass(frozen=True)
class PullbackSquare:
    """A pullback of the cospan ``f: A → C ← B: m``.

    ``p: apex → A`` and ``q: apex → B`` with ``f∘p = m∘q``.
    """
    f: str
    m: str
    apex: str
    p: str
    q: str


def _cones(C: FinCat, f: str, m: str, x: str) -> List[Tuple[str, str]]:
    a, b = C.dom(f), C.dom(m)
    return [
        (p, q)
        for p in C.hom(x, a)
        for q in C.hom(x, b)
        if C.compose(f, p) == C.compose(m, q)
    ]


def _cospan(C: FinCat, f: str, m: str) -> None:
    if C.cod(f) != C.cod(m):
        raise InputError(f"{f} and {m} do not form a cospan")


def is_pullback(C: FinCat, f: str, m: str, apex: str, p: str, q: str) -> bool:
    """True iff ``(apex, p, q)`` is a pullback of ``f`` and ``m``.

    Universality is checked as a bijection between ``hom(X, apex)`` and the
    cones at ``X`` for every object ``X``.
    """
    _cospan(C, f, m)
    key = ("is_pullback", f, m, apex, p, q)
    cached = C.cache.lookup(key)
    if cached is not MISSING:
        return cached
    result = _is_pullback(C, f, m, apex, p, q)
    C.cache.set(key, result)
    return result


def _is_pullback(C: FinCat, f: str, m: str, apex: str, p: str, q: str) -> bool:
    if C.dom(p) != apex or C.dom(q) != apex or C.cod(p) != C.dom(f) or C.cod(q) != C.dom(m):
        return False
    if C.compose(f, p) != C.compose(m, q):
        return False
    for x in C.objects:
        maps = C.hom(x, apex)
        images = {(C.compose(p, u), C.compose(q, u)) for u in maps}
        if len(images) != len(maps):
            return False
        if len(images) != len(_cones(C, f, m, x)):
            return False
    return True


def pullback(C: FinCat, f: str, m: str) -> Optional[PullbackSquare]:
    """The canonical pullback of ``f: A → C`` and ``m: B → C``, or None."""
    _cospan(C, f, m)
    key = ("pullback", f, m)
    cached = C.cache.lookup(key)
    if cached is not MISSING:
        return cached
    result = _search_pullback(C, f, m)
    C.cache.set(key, result)
    return result


def _search_pullback(C: FinCat, f: str, m: str) -> Optional[PullbackSquare]:
    a, b = C.dom(f), C.dom(m)
    if C.is_identity(f):
        return PullbackSquare(f, m, b, m, C.identities[b])
    if C.is_identity(m):
        return PullbackSquare(f, m, a, C.identities[a], f)
    for apex in C.objects:
        for p, q in _cones(C, f, m, apex):
            if _is_pullback(C, f, m, apex, p, q):
                return PullbackSquare(f, m, apex, p, q)
    return None


def mediate_pullback(C: FinCat, square: PullbackSquare, a: str, b: str) -> Optional[str]:
    """The unique ``u`` with ``p∘u = a`` and ``q∘u = b``, if the cone commutes."""
    x = C.dom(a)
    for u in C.hom(x, square.apex):
        if C.compose(square.p, u) == a and C.compose(square.q, u) == b:
            return u
    return None


# -- diagrams and colimits -----------------------------------------------------


def discrete_shape(n: int) -> FinCat:
    objects = [f"i{k}" for k in range(n)]
    morphisms = [Morphism(f"1_{o}", o, o) for o in objects]
    identities = {o: f"1_{o}" for o in objects}
    table = {(f"1_{o}", f"1_{o}"): f"1_{o}" for o in objects}
    return FinCat(objects, morphisms, identities, table, name=f"discrete{n}")


def parallel_shape() -> FinCat:
    """Two objects ``s``, ``t`` and two arrows ``u, v: s → t``."""
    morphisms = [
        Morphism("1_s", "s", "s"), Morphism("1_t", "t", "t"),
        Morphism("u", "s", "t"), Morphism("v", "s", "t"),
    ]
    table = {("1_s", "1_s"): "1_s", ("1_t", "1_t"): "1_t"}
    for arrow in ("u", "v"):
        table[(arrow, "1_s")] = arrow
        table[("1_t", arrow)] = arrow
    return FinCat(["s", "t"], morphisms, {"s": "1_s", "t": "1_t"}, table, name="parallel")


def span_shape() -> FinCat:
    """Three objects with ``l ← c → r`` (arrows ``a: c → l`` and ``b: c → r``)."""
    morphisms = [
        Morphism("1_c", "c", "c"), Morphism("1_l", "l", "l"), Morphism("1_r", "r", "r"),
        Morphism("a", "c", "l"), Morphism("b", "c", "r"),
    ]
    table = {(f"1_{o}", f"1_{o}"): f"1_{o}" for o in "clr"}
    table.update({
        ("a", "1_c"): "a", ("1_l", "a"): "a",
        ("b", "1_c"): "b", ("1_r", "b"): "b",
    })
    return FinCat(["c", "l", "r"], morphisms, {o: f"1_{o}" for o in "clr"}, table, name="span")


def diagram(shape: FinCat, target: FinCat, omap: Mapping[str, str], arrows: Mapping[str, str] = ()) -> Functor:
    """A diagram ``shape → target``; identities of the shape are filled in."""
    mmap = {shape.identities[o]: target.identities[omap[o]] for o in shape.objects}
    mmap.update(dict(arrows))
    return Functor(shape, target, dict(omap), mmap, name="diagram")


@dataclass(frozen=True)
class Cocone:
    """Apex and legs ``legs[I]: K(I) → apex`` of a cocone over a diagram."""
    apex: str
    legs: Tuple[Tuple[str, str], ...]

    def leg(self, shape_object: str) -> str:
        return dict(self.legs)[shape_object]

    def leg_list(self) -> List[str]:
        return [leg for _, leg in self.legs]


def _cocones(C: FinCat, K: Functor, x: str) -> Iterator[Tuple[str, ...]]:
    shape = K.source
    homs = [C.hom(K.omap[i], x) for i in shape.objects]
    arrows = [f for f in shape.morphism_ids if not shape.is_identity(f)]
    index = {i: k for k, i in enumerate(shape.objects)}
    for legs in itertools.product(*homs):
        if all(
            C.compose(legs[index[shape.cod(u)]], K.mmap[u]) == legs[index[shape.dom(u)]]
            for u in arrows
        ):
            yield legs


def _count_cocones(C: FinCat, K: Functor, x: str) -> int:
    shape = K.source
    if all(shape.is_identity(f) for f in shape.morphism_ids):
        count = 1
        for i in shape.objects:
            count *= len(C.hom(K.omap[i], x))
        return count
    key = ("cocones", _diagram_key(K), x)
    cached = C.cache.lookup(key)
    if cached is not MISSING:
        return cached
    count = sum(1 for _ in _cocones(C, K, x))
    C.cache.set(key, count)
    return count


def is_cocone(C: FinCat, K: Functor, apex: str, legs: Sequence[str]) -> bool:
    shape = K.source
    if len(legs) != len(shape.objects):
        return False
    index = {i: k for k, i in enumerate(shape.objects)}
    for i, leg in zip(shape.objects, legs):
        if C.dom(leg) != K.omap[i] or C.cod(leg) != apex:
            return False
    return all(
        C.compose(legs[index[shape.cod(u)]], K.mmap[u]) == legs[index[shape.dom(u)]]
        for u in shape.morphism_ids
        if not shape.is_identity(u)
    )


def is_colimit(C: FinCat, K: Functor, apex: str, legs: Sequence[str]) -> bool:
    """True iff the cocone is initial: ``hom(apex, X)`` is in bijection with cocones at ``X``."""
    legs = tuple(legs)
    if not is_cocone(C, K, apex, legs):
        return False
    for x in C.objects:
        maps = C.hom(apex, x)
        images = {tuple(C.compose(u, leg) for leg in legs) for u in maps}
        if len(images) != len(maps) or len(images) != _count_cocones(C, K, x):
            return False
    return True


def _diagram_key(K: Functor) -> Tuple:
    return (
        K.source.name,
        tuple(sorted(K.omap.items())),
        tuple(sorted(K.mmap.items())),
    )


def colimit(C: FinCat, K: Functor) -> Optional[Cocone]:
    """The canonical colimit of a finite diagram, or None if none exists."""
    key = ("colimit", _diagram_key(K))
    cached = C.cache.lookup(key)
    if cached is not MISSING:
        return cached
    result = None
    for apex in C.objects:
        for legs in _cocones(C, K, apex):
            if is_colimit(C, K, apex, legs):
                result = Cocone(apex, tuple(zip(K.source.objects, legs)))
                break
        if result is not None:
            break
    C.cache.set(key, result)
    return result


def mediate_colimit(C: FinCat, colim: Cocone, apex: str, legs: Sequence[str]) -> Optional[str]:
    """The unique ``u: colim.apex → apex`` with ``u∘colim_I = legs_I``."""
    for u in C.hom(colim.apex, apex):
        if all(C.compose(u, c) == leg for c, leg in zip(colim.leg_list(), legs)):
            return u
    return None


def coproduct(C: FinCat, objects: Sequence[str]) -> Optional[Tuple[str, List[str]]]:
    """The canonical coproduct of ``objects`` with its coprojections, or None."""
    for obj in objects:
        C.require_object(obj)
    if len(objects) == 1:
        return objects[0], [C.identities[objects[0]]]
    shape = discrete_shape(len(objects))
    K = diagram(shape, C, dict(zip(shape.objects, objects)))
    colim = colimit(C, K)
    if colim is None:
        return None
    return colim.apex, colim.leg_list()


def coequalizer(C: FinCat, f: str, g: str) -> Optional[Tuple[str, str]]:
    """The canonical coequalizer ``(Q, c: B → Q)`` of parallel ``f, g: A → B``."""
    if C.dom(f) != C.dom(g) or C.cod(f) != C.cod(g):
        raise InputError(f"{f} and {g} are not parallel")
    b = C.cod(f)
    if f == g:
        return b, C.identities[b]
    K = parallel_diagram(C, f, g)
    colim = colimit(C, K)
    if colim is None:
        return None
    return colim.apex, colim.leg("t")


def parallel_diagram(C: FinCat, f: str, g: str) -> Functor:
    return diagram(parallel_shape(), C, {"s": C.dom(f), "t": C.cod(f)}, {"u": f, "v": g})


def span_diagram(C: FinCat, a: str, b: str) -> Functor:
    """The span ``cod a ← dom a → cod b`` for maps with a common domain."""
    if C.dom(a) != C.dom(b):
        raise InputError(f"{a} and {b} do not form a span")
    return diagram(span_shape(), C, {"c": C.dom(a), "l": C.cod(a), "r": C.cod(b)}, {"a": a, "b": b})


@dataclass
class CategoryBuilder:
    """Incremental construction of a FinCat from a composition function.

    Fixtures and derived categories (Kr, Par, Total) describe their
    morphisms and a ``compose(g, f)`` callback; the builder fills the table
    for every composable pair.
    """
    objects: List[str] = field(default_factory=list)
    morphisms: List[Morphism] = field(default_factory=list)
    identities: Dict[str, str] = field(default_factory=dict)

    def add_object(self, obj: str, identity: str) -> None:
        self.objects.append(obj)
        self.identities[obj] = identity
        self.morphisms.append(Morphism(identity, obj, obj))

    def add_morphism(self, ident: str, dom: str, cod: str) -> None:
        self.morphisms.append(Morphism(ident, dom, cod))

    def build(self, compose, name: str = "") -> FinCat:
        by_cod: Dict[str, List[Morphism]] = {}
        by_dom: Dict[str, List[Morphism]] = {}
        for m in self.morphisms:
            by_cod.setdefault(m.cod, []).append(m)
            by_dom.setdefault(m.dom, []).append(m)
        table = {}
        for obj in self.objects:
            for f in by_cod.get(obj, []):
                for g in by_dom.get(obj, []):
                    table[(g.id, f.id)] = compose(g.id, f.id)
        category = FinCat(self.objects, self.morphisms, self.identities, table, name=name)
        logger.debug(f"Built {category!r}")
        return category


def subcategory(C: FinCat, keep: Iterable[str], name: str = "") -> FinCat:
    """The wide subcategory on the given morphisms (identities are always kept)."""
    kept = set(keep) | set(C.identities.values())
    morphisms = [m for m in C.morphisms if m.id in kept]
    table = {
        (g, f): gf for (g, f), gf in C.table.items()
        if g in kept and f in kept
    }
    for (g, f), gf in table.items():
        if gf not in kept:
            raise InputError(f"{g}∘{f} = {gf} leaves the subcategory")
    return FinCat(C.objects, morphisms, C.identities, table, name=name or C.name)
