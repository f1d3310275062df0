"""
Finite presheaves on a finite category.

A presheaf ``P`` assigns a finite set of element ids to every object and,
to every ``f: B → A``, an action ``PA → PB`` written ``x·f``. Presheaf
maps are families of functions natural in every action. On top of the
basic constructions (Yoneda, terminal presheaf, coproducts, pointwise
pullbacks, subfunctors, enumeration of natural transformations) this
module decides membership in the induced system of monics ``M_PSh``,
compares M-subobjects of ``A`` with those of ``y(A)`` and builds the
classifier ``τ: 1 ⇒ Σ`` of M-subobjects.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Set, Tuple, Union

from restrictcat.config import DEFAULT_CONFIG, WorkbenchConfig
from restrictcat.exceptions import InputError, InvariantViolation
from restrictcat.fincat import FinCat, Functor
from restrictcat.formats import load_presheaf_parts, map_components_from_dict, read_json
from restrictcat.mcat import MSystem, m_subobjects, pullback_subobject, require_valid, subobject_rep
from restrictcat.report import CheckReport

logger = logging.getLogger(__name__)

Element = Tuple[str, str]


class Presheaf:
    """A finite-set-valued presheaf on ``base``.

    Args:
        base: The category the presheaf lives on
        sets: Object id to its element ids; missing objects get no elements
        actions: Morphism ``f: B → A`` to the function ``PA → PB``.
            Missing identity actions and actions on
            empty sets are filled in.
        name: Optional label used in reports

    Raises:
        InputError: On unknown objects, duplicate elements or actions that
            are not total functions between the right sets
    """

    def __init__(
        self,
        base: FinCat,
        sets: Mapping[str, Sequence[str]],
        actions: Mapping[str, Mapping[str, str]],
        name: str = "",
    ):
        self.base = base
        self.name = name
        for obj in sets:
            base.require_object(obj)
        self.sets: Dict[str, Tuple[str, ...]] = {obj: tuple(sets.get(obj, ())) for obj in base.objects}
        self._position: Dict[str, Dict[str, int]] = {}
        for obj, elements in self.sets.items():
            if len(set(elements)) != len(elements):
                raise InputError(f"duplicate elements at {obj} in {name or 'presheaf'}")
            self._position[obj] = {x: i for i, x in enumerate(elements)}
        self.actions: Dict[str, Dict[str, str]] = {}
        for f in base.morphism_ids:
            given = actions.get(f)
            if given is None and (base.is_identity(f) or not self.sets[base.cod(f)]):
                given = {x: x for x in self.sets[base.cod(f)]}
            if given is None:
                raise InputError(f"action of {f} is missing")
            source, target = self._position[base.cod(f)], self._position[base.dom(f)]
            if set(given) != set(source):
                raise InputError(f"action of {f} must be defined on exactly the elements at {base.cod(f)}")
            for x, y in given.items():
                if y not in target:
                    raise InputError(f"action of {f} sends {x} outside the elements at {base.dom(f)}")
            self.actions[f] = dict(given)
        for f in actions:
            base.morphism(f)

    def __repr__(self) -> str:
        return f"Presheaf({self.name or 'unnamed'}: {self.total_size()} elements)"

    def act(self, x: str, f: str) -> str:
        """``x·f`` for ``x`` at ``cod f``."""
        return self.actions[f][x]

    def elements(self, obj: str) -> Tuple[str, ...]:
        return self.sets[obj]

    def contains(self, obj: str, x: str) -> bool:
        return x in self._position[obj]

    def position(self, obj: str, x: str) -> int:
        return self._position[obj][x]

    def size(self, obj: str) -> int:
        return len(self.sets[obj])

    def total_size(self) -> int:
        return sum(len(elements) for elements in self.sets.values())

    def all_elements(self) -> List[Element]:
        return [(obj, x) for obj in self.base.objects for x in self.sets[obj]]

    def orbit(self, obj: str, x: str) -> Set[Element]:
        """Every ``x·f``, as ``(dom f, x·f)``."""
        return {(self.base.dom(f), self.actions[f][x]) for f in self.base.into(obj)}

    def same_as(self, other: Presheaf) -> bool:
        """Equality on the nose: same base, same element sets and same actions."""
        return (
            (self.base is other.base or self.base == other.base)
            and all(set(self.sets[obj]) == set(other.sets[obj]) for obj in self.base.objects)
            and self.actions == other.actions
        )


def check_presheaf(P: Presheaf) -> CheckReport:
    """Check ``x·1 = x`` and ``(x·f)·g = x·(f∘g)`` exhaustively."""
    C = P.base
    report = CheckReport(check="presheaf")
    report.metadata["elements"] = P.total_size()
    for obj in C.objects:
        ident = C.identities[obj]
        for x in P.sets[obj]:
            if P.actions[ident][x] != x:
                report.violate("identity-action", object=obj, element=x)
    for f in C.morphism_ids:
        for g in C.into(C.dom(f)):
            fg = C.compose(f, g)
            for x in P.sets[C.cod(f)]:
                if P.actions[g][P.actions[f][x]] != P.actions[fg][x]:
                    report.violate("composition-action", f=f, g=g, element=x)
    return report


def require_presheaf(P: Presheaf) -> None:
    report = check_presheaf(P)
    if not report.passed:
        raise InputError(f"{P.name or 'presheaf'} is not a presheaf: violated {', '.join(report.laws())}")


@dataclass
class PresheafMap:
    """A family of functions ``components[A]: PA → QA``."""
    source: Presheaf
    target: Presheaf
    components: Dict[str, Dict[str, str]]
    name: str = ""

    def apply(self, obj: str, x: str) -> str:
        return self.components[obj][x]

    def is_injective(self) -> bool:
        return all(len(set(c.values())) == len(c) for c in self.components.values())

    def is_bijective(self) -> bool:
        return self.is_injective() and all(
            len(self.components[obj]) == self.target.size(obj) for obj in self.target.base.objects
        )

    def image(self, obj: str) -> Set[str]:
        return set(self.components[obj].values())


def _check_map_typing(alpha: PresheafMap) -> None:
    P, Q = alpha.source, alpha.target
    if P.base is not Q.base and P.base != Q.base:
        raise InputError("presheaf map between presheaves on different categories")
    for obj in P.base.objects:
        component = alpha.components.get(obj)
        if component is None or set(component) != set(P.sets[obj]):
            raise InputError(f"component of {alpha.name or 'map'} at {obj} is not defined on every element")
        for x, y in component.items():
            if not Q.contains(obj, y):
                raise InputError(f"component at {obj} sends {x} to the unknown element {y}")


def check_presheaf_map(alpha: PresheafMap) -> CheckReport:
    """Naturality ``α_B(x·f) = α_A(x)·f`` for every ``f: B → A`` and ``x``.

    Raises:
        InputError: If a component is missing or leaves the target sets
    """
    _check_map_typing(alpha)
    P, Q = alpha.source, alpha.target
    C = P.base
    report = CheckReport(check="presheaf-map")
    for f in C.morphism_ids:
        a, b = C.cod(f), C.dom(f)
        for x in P.sets[a]:
            if alpha.components[b][P.actions[f][x]] != Q.actions[f][alpha.components[a][x]]:
                report.violate("naturality", f=f, element=x)
    return report


def require_natural(alpha: PresheafMap) -> None:
    report = check_presheaf_map(alpha)
    if not report.passed:
        first = report.violations[0]
        raise InputError(f"{alpha.name or 'presheaf map'} is not natural at {dict(first.witness)}")


def identity_map(P: Presheaf) -> PresheafMap:
    return PresheafMap(P, P, {obj: {x: x for x in xs} for obj, xs in P.sets.items()}, name=f"1_{P.name}")


def compose_maps(beta: PresheafMap, alpha: PresheafMap) -> PresheafMap:
    """``β∘α``."""
    return PresheafMap(
        alpha.source,
        beta.target,
        {obj: {x: beta.components[obj][y] for x, y in component.items()} for obj, component in alpha.components.items()},
        name=f"{beta.name}∘{alpha.name}",
    )


def inverse_map(alpha: PresheafMap) -> Optional[PresheafMap]:
    if not alpha.is_bijective():
        return None
    return PresheafMap(
        alpha.target,
        alpha.source,
        {obj: {y: x for x, y in component.items()} for obj, component in alpha.components.items()},
        name=f"{alpha.name}⁻¹",
    )


def maps_equal(first: PresheafMap, second: PresheafMap) -> bool:
    return first.components == second.components


# -- constructions -------------------------------------------------------------


def yoneda(C: FinCat, A: str) -> Presheaf:
    """``y(A)``: ``y(A)(B) = hom(B, A)``, acting by precomposition.

    Raises:
        InputError: If ``A`` is not an object of ``C``
    """
    C.require_object(A)
    sets = {B: C.hom(B, A) for B in C.objects}
    actions = {
        f: {g: C.compose(g, f) for g in sets[C.cod(f)]}
        for f in C.morphism_ids
    }
    return Presheaf(C, sets, actions, name=f"y({A})")


def yoneda_map(C: FinCat, h: str, source: Optional[Presheaf] = None, target: Optional[Presheaf] = None) -> PresheafMap:
    """``y(h): y(A) ⇒ y(A')`` for ``h: A → A'``, by postcomposition."""
    source = source or yoneda(C, C.dom(h))
    target = target or yoneda(C, C.cod(h))
    return PresheafMap(
        source,
        target,
        {B: {g: C.compose(h, g) for g in source.sets[B]} for B in C.objects},
        name=f"y({h})",
    )


def element_map(P: Presheaf, obj: str, x: str, representable: Optional[Presheaf] = None) -> PresheafMap:
    """The map ``y(obj) ⇒ P`` corresponding to ``x`` under Yoneda: ``g ↦ x·g``."""
    C = P.base
    representable = representable or yoneda(C, obj)
    return PresheafMap(
        representable,
        P,
        {B: {g: P.actions[g][x] for g in representable.sets[B]} for B in C.objects},
        name=f"⟨{x}⟩",
    )


def terminal_presheaf(C: FinCat) -> Presheaf:
    return Presheaf(
        C,
        {obj: ("*",) for obj in C.objects},
        {f: {"*": "*"} for f in C.morphism_ids},
        name="1",
    )


def to_terminal(P: Presheaf, terminal: Optional[Presheaf] = None) -> PresheafMap:
    terminal = terminal or terminal_presheaf(P.base)
    return PresheafMap(P, terminal, {obj: {x: "*" for x in xs} for obj, xs in P.sets.items()}, name="!")


def presheaf_coproduct(summands: Sequence[Presheaf]) -> Tuple[Presheaf, List[PresheafMap]]:
    """Disjoint union with elements tagged ``"i#x"``, and its injections.

    Raises:
        InputError: If there are no summands or they live on different categories
    """
    if not summands:
        raise InputError("a coproduct needs at least one summand")
    C = summands[0].base
    for P in summands:
        if P.base is not C and P.base != C:
            raise InputError("coproduct summands live on different categories")
    sets = {
        obj: [f"{i}#{x}" for i, P in enumerate(summands) for x in P.sets[obj]]
        for obj in C.objects
    }
    actions = {
        f: {f"{i}#{x}": f"{i}#{y}" for i, P in enumerate(summands) for x, y in P.actions[f].items()}
        for f in C.morphism_ids
    }
    coproduct = Presheaf(C, sets, actions, name="+".join(P.name for P in summands))
    injections = [
        PresheafMap(P, coproduct, {obj: {x: f"{i}#{x}" for x in P.sets[obj]} for obj in C.objects}, name=f"in{i}")
        for i, P in enumerate(summands)
    ]
    return coproduct, injections


def _pair_id(x: str, y: str) -> str:
    def wrap(part: str) -> str:
        return f"({part})" if "⊗" in part else part
    return f"{wrap(x)}⊗{wrap(y)}"


def presheaf_pullback(alpha: PresheafMap, beta: PresheafMap) -> Tuple[Presheaf, PresheafMap, PresheafMap]:
    """Pointwise pullback of ``α: P ⇒ R`` and ``β: Q ⇒ R`` with its projections.

    Elements are the pairs ``x⊗y`` with ``α(x) = β(y)``.
    """
    P, Q = alpha.source, beta.source
    C = P.base
    pairs: Dict[str, List[Tuple[str, str]]] = {}
    for obj in C.objects:
        pairs[obj] = [
            (x, y)
            for x in P.sets[obj]
            for y in Q.sets[obj]
            if alpha.components[obj][x] == beta.components[obj][y]
        ]
    sets = {obj: [_pair_id(x, y) for x, y in found] for obj, found in pairs.items()}
    actions = {
        f: {
            _pair_id(x, y): _pair_id(P.actions[f][x], Q.actions[f][y])
            for x, y in pairs[C.cod(f)]
        }
        for f in C.morphism_ids
    }
    apex = Presheaf(C, sets, actions, name=f"{P.name}×{Q.name}")
    p = PresheafMap(apex, P, {obj: {_pair_id(x, y): x for x, y in found} for obj, found in pairs.items()}, name="p")
    q = PresheafMap(apex, Q, {obj: {_pair_id(x, y): y for x, y in found} for obj, found in pairs.items()}, name="q")
    return apex, p, q


def subpresheaf(P: Presheaf, keep: Mapping[str, Iterable[str]], name: str = "") -> Tuple[Presheaf, PresheafMap]:
    """The subfunctor on ``keep`` (which must be closed) with its inclusion.

    Raises:
        InputError: If ``keep`` is not closed under the actions
    """
    C = P.base
    chosen = {obj: set(keep.get(obj, ())) for obj in C.objects}
    sets = {obj: [x for x in P.sets[obj] if x in chosen[obj]] for obj in C.objects}
    actions = {}
    for f in C.morphism_ids:
        action = {}
        for x in sets[C.cod(f)]:
            y = P.actions[f][x]
            if y not in chosen[C.dom(f)]:
                raise InputError(f"{x}·{f} = {y} leaves the subfunctor")
            action[x] = y
        actions[f] = action
    sub = Presheaf(C, sets, actions, name=name or f"sub({P.name})")
    inclusion = PresheafMap(sub, P, {obj: {x: x for x in xs} for obj, xs in sets.items()}, name="incl")
    return sub, inclusion


def _closure(P: Presheaf, seed: Iterable[Element]) -> frozenset:
    closed: Set[Element] = set()
    for obj, x in seed:
        closed.add((obj, x))
        closed |= P.orbit(obj, x)
    return frozenset(closed)


def subfunctors(P: Presheaf) -> List[Tuple[Presheaf, PresheafMap]]:
    """Every subfunctor of ``P`` with its inclusion.

    Closed sets are reached from the empty one by adding one element and
    closing; the result is sorted by size and then by element positions.
    """
    C = P.base
    elements = P.all_elements()
    start = frozenset()
    seen = {start}
    frontier = [start]
    while frontier:
        following = []
        for closed in frontier:
            for element in elements:
                if element in closed:
                    continue
                grown = closed | _closure(P, [element])
                if grown not in seen:
                    seen.add(grown)
                    following.append(grown)
        frontier = following

    def sort_key(closed: frozenset) -> Tuple:
        return (
            len(closed),
            sorted((C.object_rank(obj), P.position(obj, x)) for obj, x in closed),
        )

    result = []
    for closed in sorted(seen, key=sort_key):
        keep: Dict[str, Set[str]] = {}
        for obj, x in closed:
            keep.setdefault(obj, set()).add(x)
        result.append(subpresheaf(P, keep, name=f"{P.name}|{len(closed)}"))
    logger.debug(f"{P!r} has {len(result)} subfunctors")
    return result


def natural_transformations(P: Presheaf, Q: Presheaf, limit: Optional[int] = None) -> List[PresheafMap]:
    """Every natural ``P ⇒ Q``.

    Backtracking over elements of ``P``, largest orbits first: choosing
    ``x ↦ y`` fixes ``x·f ↦ y·f`` for every ``f``, and a clash prunes.
    """
    C = P.base
    elements = P.all_elements()
    elements.sort(key=lambda e: (-len(P.orbit(*e)), C.object_rank(e[0]), P.position(*e)))
    assignment: Dict[Element, str] = {}
    found: List[PresheafMap] = []

    def assign(obj: str, x: str, y: str) -> Optional[List[Element]]:
        added = []
        for f in C.into(obj):
            b = C.dom(f)
            key = (b, P.actions[f][x])
            value = Q.actions[f][y]
            current = assignment.get(key)
            if current is None:
                assignment[key] = value
                added.append(key)
            elif current != value:
                for k in added:
                    del assignment[k]
                return None
        return added

    def extend(position: int) -> bool:
        while position < len(elements) and elements[position] in assignment:
            position += 1
        if position == len(elements):
            components = {obj: {} for obj in C.objects}
            for (obj, x), y in assignment.items():
                components[obj][x] = y
            found.append(PresheafMap(P, Q, components, name=f"{P.name}⇒{Q.name}#{len(found)}"))
            return limit is not None and len(found) >= limit
        obj, x = elements[position]
        for y in Q.sets[obj]:
            added = assign(obj, x, y)
            if added is None:
                continue
            stop = extend(position + 1)
            for k in added:
                del assignment[k]
            if stop:
                return True
        return False

    extend(0)
    return found


def precompose(P: Presheaf, F: Functor, name: str = "") -> Presheaf:
    """``P∘F^op`` for ``F: D → base``."""
    D = F.source
    return Presheaf(
        D,
        {obj: P.sets[F.omap[obj]] for obj in D.objects},
        {f: P.actions[F.mmap[f]] for f in D.morphism_ids},
        name=name or f"{P.name}∘{F.name}",
    )


# -- the system M_PSh ------------------------------------------------------------


@dataclass
class MpshWitness:
    """For one ``(D, q)``: the member ``m`` of the pullback of μ along ``q``, and ``δ`` over it."""
    obj: str
    element: str
    m: Optional[str]
    delta: Optional[str]


def _is_pullback_along(C: FinCat, mu: PresheafMap, D: str, q: str, m: str, delta: str) -> bool:
    """Does ``(y(m), δ)`` present the pullback of μ along ``⟨q⟩: y(D) ⇒ Q``?"""
    P, Q = mu.source, mu.target
    for X in C.objects:
        cone = {
            (u, p)
            for u in C.hom(X, D)
            for p in P.sets[X]
            if Q.actions[u][q] == mu.components[X][p]
        }
        maps = C.hom(X, C.dom(m))
        images = {(C.compose(m, v), P.actions[v][delta]) for v in maps}
        if len(images) != len(maps) or images != cone:
            return False
    return True


def mpsh_witnesses(C: FinCat, M: MSystem, mu: PresheafMap) -> List[MpshWitness]:
    """Search, for every ``D`` and ``q ∈ Q(D)``, a member representing the pullback.

    Raises:
        InputError: If ``mu`` is not natural
    """
    require_natural(mu)
    P, Q = mu.source, mu.target
    witnesses = []
    for D in C.objects:
        reps = m_subobjects(C, M, D)
        identity = C.identities[D]
        candidates = [identity] + [m for m in reps if m != identity] if identity in M else reps
        for q in Q.sets[D]:
            chosen = MpshWitness(D, q, None, None)
            for m in candidates:
                target = Q.actions[m][q]
                for delta in P.sets[C.dom(m)]:
                    if mu.components[C.dom(m)][delta] != target:
                        continue
                    if _is_pullback_along(C, mu, D, q, m, delta):
                        chosen = MpshWitness(D, q, m, delta)
                        break
                if chosen.m is not None:
                    break
            witnesses.append(chosen)
    return witnesses


def is_mpsh_map(C: FinCat, M: MSystem, mu: PresheafMap) -> CheckReport:
    """Decide whether ``mu`` belongs to ``M_PSh``.

    For every ``q ∈ Q(D)`` the pullback of ``mu`` along ``⟨q⟩: y(D) ⇒ Q``
    must be ``y(m)`` for a member ``m: D' → D``. The chosen member per
    ``(D, q)`` is recorded in the report metadata under ``"D:q"``.

    Raises:
        InputError: If ``mu`` is not natural
    """
    report = CheckReport(check="mpsh-map")
    chosen = {}
    for witness in mpsh_witnesses(C, M, mu):
        if witness.m is None:
            report.violate("mpsh-pullback", object=witness.obj, element=witness.element)
        else:
            chosen[f"{witness.obj}:{witness.element}"] = witness.m
    report.metadata["chosen"] = chosen
    return report


def representable_image(C: FinCat, m: str) -> Dict[str, Set[str]]:
    """The subfunctor of ``y(cod m)`` given by ``y(m)``: the maps factoring through ``m``."""
    return {X: {C.compose(m, v) for v in C.hom(X, C.dom(m))} for X in C.objects}


def msub_rep_iso_check(C: FinCat, M: MSystem, A: str) -> CheckReport:
    """Compare M-subobjects of ``A`` with the M_PSh-subfunctors of ``y(A)``.

    ``m ↦ y(m)`` must be a bijection onto the subfunctors whose inclusion
    is in M_PSh, inverted by the member chosen at ``1_A``, and both
    directions must preserve the order.
    """
    C.require_object(A)
    report = CheckReport(check="msub-rep")
    yA = yoneda(C, A)
    reps = m_subobjects(C, M, A)
    msubs = []
    for sub, inclusion in subfunctors(yA):
        verdict = is_mpsh_map(C, M, inclusion)
        if verdict.passed:
            msubs.append((sub, verdict))
    report.metadata["m_subobjects"] = len(reps)
    report.metadata["mpsh_subfunctors"] = len(msubs)
    if len(reps) != len(msubs):
        report.violate("cardinality", object=A, subobjects=len(reps), subfunctors=len(msubs))

    as_sets = {m: representable_image(C, m) for m in reps}
    sub_sets = [{X: set(sub.sets[X]) for X in C.objects} for sub, _ in msubs]
    identity = C.identities[A]
    for m in reps:
        if as_sets[m] not in sub_sets:
            report.violate("image-missing", subobject=m)
    for (sub, verdict), sets in zip(msubs, sub_sets):
        chosen = verdict.metadata["chosen"].get(f"{A}:{identity}")
        if chosen is None or subobject_rep(C, chosen) not in as_sets or as_sets[subobject_rep(C, chosen)] != sets:
            report.violate("inverse", subfunctor=sub.name)
    for n in reps:
        for m in reps:
            below_c = any(C.compose(m, k) == n for k in C.hom(C.dom(n), C.dom(m)))
            below_psh = all(as_sets[n][X] <= as_sets[m][X] for X in C.objects)
            if below_c != below_psh:
                report.violate("order", lower=n, upper=m)
    return report


# -- the classifier ---------------------------------------------------------------


@dataclass
class Classifier:
    """``τ: 1 ⇒ Σ`` where ``Σ(D)`` is the set of M-subobjects of ``D``."""
    sigma: Presheaf
    tau: PresheafMap
    terminal: Presheaf


def sigma_presheaf(C: FinCat, M: MSystem) -> Classifier:
    """Σ acts by pulling back subobjects; τ picks the top subobject.

    Raises:
        InputError: If M is not a stable system of monics
    """
    require_valid(M)
    sets = {D: m_subobjects(C, M, D) for D in C.objects}
    actions = {
        f: {m: pullback_subobject(C, m, f) for m in sets[C.cod(f)]}
        for f in C.morphism_ids
    }
    sigma = Presheaf(C, sets, actions, name="Σ")
    if not check_presheaf(sigma).passed:
        raise InvariantViolation("pulling back subobjects is not functorial")
    terminal = terminal_presheaf(C)
    tau = PresheafMap(
        terminal,
        sigma,
        {D: {"*": subobject_rep(C, C.identities[D])} for D in C.objects},
        name="τ",
    )
    return Classifier(sigma, tau, terminal)


def characteristic_map(C: FinCat, M: MSystem, mu: PresheafMap, classifier: Classifier) -> Optional[PresheafMap]:
    """``χ_D(q)`` is the subobject along which ``q`` pulls ``mu`` back; None if ``mu`` is not in M_PSh."""
    components: Dict[str, Dict[str, str]] = {D: {} for D in C.objects}
    for witness in mpsh_witnesses(C, M, mu):
        if witness.m is None:
            return None
        components[witness.obj][witness.element] = subobject_rep(C, witness.m)
    return PresheafMap(mu.target, classifier.sigma, components, name=f"χ({mu.name})")


def _classified_by(mu: PresheafMap, chi: PresheafMap, classifier: Classifier) -> bool:
    top = classifier.tau.components
    for D in mu.target.base.objects:
        pulled = {q for q, s in chi.components[D].items() if s == top[D]["*"]}
        if pulled != mu.image(D):
            return False
    return True


def sigma_classifier(
    C: FinCat,
    M: MSystem,
    maps: Optional[Sequence[PresheafMap]] = None,
    config: WorkbenchConfig = DEFAULT_CONFIG,
) -> Tuple[Presheaf, PresheafMap, CheckReport]:
    """Build ``τ: 1 ⇒ Σ`` and check that it classifies M_PSh-maps.

    Every map in ``maps`` (the family generated with ``config.max_summands``
    summands when omitted) that passes :func:`is_mpsh_map` and is injective
    must be recovered as the pullback of τ along exactly one map into Σ.
    """
    classifier = sigma_presheaf(C, M)
    sigma, tau = classifier.sigma, classifier.tau
    report = CheckReport(check="classifier")
    tau_report = is_mpsh_map(C, M, tau)
    if not tau_report.passed:
        report.merge(tau_report, prefix="tau")
    if maps is None:
        maps = generated_family(C, M, max_summands=config.max_summands).maps
        report.metadata["max_summands"] = config.max_summands
    classified = 0
    for mu in maps:
        if not mu.is_injective() or not is_mpsh_map(C, M, mu).passed:
            continue
        chi = characteristic_map(C, M, mu, classifier)
        if not check_presheaf_map(chi).passed:
            report.violate("characteristic-natural", map=mu.name)
            continue
        if not _classified_by(mu, chi, classifier):
            report.violate("reconstruction", map=mu.name)
            continue
        alternatives = [
            candidate for candidate in natural_transformations(mu.target, sigma)
            if _classified_by(mu, candidate, classifier)
        ]
        if len(alternatives) != 1 or not maps_equal(alternatives[0], chi):
            report.violate("unique-characteristic", map=mu.name, candidates=len(alternatives))
        classified += 1
    report.metadata["classified"] = classified
    report.metadata["sigma_sizes"] = {D: sigma.size(D) for D in C.objects}
    logger.info(f"Σ over {C.name}: {classified} maps classified")
    return sigma, tau, report


# -- generated families --------------------------------------------------------------


@dataclass
class PresheafFamily:
    """Finitely many presheaves and maps between them, for property checks."""
    presheaves: List[Presheaf] = field(default_factory=list)
    maps: List[PresheafMap] = field(default_factory=list)


def generated_family(C: FinCat, M: MSystem, max_summands: int = 2, subfunctors_of: Optional[Sequence[str]] = None) -> PresheafFamily:
    """Representables, their subfunctors and coproducts of representables.

    Maps are the subfunctor inclusions, the coproduct injections and the
    identities of every presheaf in the family.
    """
    family = PresheafFamily()
    representables = {A: yoneda(C, A) for A in C.objects}
    for A, yA in representables.items():
        family.presheaves.append(yA)
        family.maps.append(identity_map(yA))
        if subfunctors_of is None or A in subfunctors_of:
            for sub, inclusion in subfunctors(yA):
                if sub.sets == yA.sets:
                    continue
                inclusion.name = f"{sub.name}↪{yA.name}"
                family.presheaves.append(sub)
                family.maps.append(inclusion)
    for width in range(2, max_summands + 1):
        for objs in itertools.combinations_with_replacement(C.objects, width):
            coproduct, injections = presheaf_coproduct([representables[A] for A in objs])
            family.presheaves.append(coproduct)
            family.maps.append(identity_map(coproduct))
            family.maps.extend(injections)
    logger.info(f"Generated {len(family.presheaves)} presheaves and {len(family.maps)} maps over {C.name}")
    return family


# -- files ----------------------------------------------------------------------------


def presheaf_from_parts(base: FinCat, sets: Mapping[str, Sequence[str]], actions: Iterable[Tuple[str, str, str]], name: str = "") -> Presheaf:
    """Assemble a presheaf from ``[f, x, y]`` triples meaning ``x·f = y``.

    Raises:
        InputError: On repeated or conflicting triples
    """
    table: Dict[str, Dict[str, str]] = {}
    for f, x, y in actions:
        base.morphism(f)
        row = table.setdefault(f, {})
        if x in row and row[x] != y:
            raise InputError(f"conflicting actions of {f} on {x}")
        row[x] = y
    return Presheaf(base, sets, table, name=name)


def load_presheaf(path: Union[str, Path]) -> Tuple[Presheaf, Optional[Dict[Element, str]]]:
    """Read a presheaf file; returns the presheaf and its restriction entries if present."""
    path = Path(path)
    bundle, sets, actions, restriction = load_presheaf_parts(path)
    return presheaf_from_parts(bundle.category, sets, actions, name=path.stem), restriction


def load_presheaf_map(path: Union[str, Path], source: Presheaf, target: Presheaf) -> PresheafMap:
    components = map_components_from_dict(read_json(path))
    alpha = PresheafMap(source, target, components, name=Path(path).stem)
    _check_map_typing(alpha)
    return alpha


def presheaf_to_dict(P: Presheaf, base: Union[str, Dict, None] = None) -> Dict:
    """Serialise ``P``; ``base`` is a path or an inline category dict."""
    C = P.base
    data: Dict = {
        "sets": {obj: list(P.sets[obj]) for obj in C.objects},
        "actions": [
            [f, x, P.actions[f][x]]
            for f in C.morphism_ids
            for x in P.sets[C.cod(f)]
        ],
    }
    if base is not None:
        data["base"] = base
    return data
