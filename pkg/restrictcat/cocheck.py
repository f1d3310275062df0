"""
Cocompleteness diagnostics at finite scale.

Only diagrams over small shapes are quantified: discrete shapes with up to
``shape_bound`` objects, the parallel pair and the span (each with at most
``max_arrows`` non-identity arrows). Missing (co)limits make an instance
not applicable rather than failing it. Reports carry the bounds used in
their metadata.
"""
from __future__ import annotations

import itertools
import logging
import random
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from restrictcat.config import DEFAULT_CONFIG, WorkbenchConfig
from restrictcat.fincat import (
    Cocone,
    FinCat,
    Functor,
    NatTrans,
    check_functor,
    check_natural,
    coequalizer,
    colimit,
    coproduct,
    diagram,
    discrete_shape,
    is_colimit,
    is_pullback,
    mediate_colimit,
    mediate_pullback,
    parallel_shape,
    pullback,
    span_shape,
)
from restrictcat.exceptions import InputError
from restrictcat.mcat import MSystem, ParCat, m_subobjects, par, require_valid
from restrictcat.report import CheckReport

logger = logging.getLogger(__name__)

FINITE_SCALE = "colimits quantified over discrete shapes, the parallel pair and the span only"


@dataclass
class FiniteDiagram:
    """Functors ``lower, upper: shape → C`` with ``alpha: lower ⇒ upper``.

    Attributes:
        shape: The index category
        lower: The diagram K
        upper: The diagram H
        alpha: Shape object to ``α_I: K(I) → H(I)``
        lower_cocone: Colimit of K once computed (legs ``q_I``)
        upper_cocone: Colimit of H once computed (legs ``p_I``)
    """
    shape: FinCat
    lower: Functor
    upper: Functor
    alpha: Dict[str, str]
    lower_cocone: Optional[Cocone] = None
    upper_cocone: Optional[Cocone] = None
    name: str = ""

    def transformation(self) -> NatTrans:
        return NatTrans(self.lower, self.upper, self.alpha, name="α")

    def validate(self) -> None:
        """Raises InputError unless K and H are functors and α is natural."""
        for label, F in (("lower", self.lower), ("upper", self.upper)):
            report = check_functor(F)
            if not report.passed:
                raise InputError(f"{label} diagram of {self.name} is not a functor: {', '.join(report.laws())}")
        if not check_natural(self.transformation()).passed:
            raise InputError(f"α of {self.name} is not natural")


def _arrows(shape: FinCat) -> List[str]:
    return [u for u in shape.morphism_ids if not shape.is_identity(u)]


def _upper_diagrams(C: FinCat, shape: FinCat) -> List[Functor]:
    """Every diagram of the shape in C, discrete ones up to reordering."""
    found = []
    if not _arrows(shape):
        for objs in itertools.combinations_with_replacement(C.objects, len(shape.objects)):
            found.append(diagram(shape, C, dict(zip(shape.objects, objs))))
    elif shape.name == "parallel":
        for f, g in C.parallel_pairs():
            found.append(diagram(shape, C, {"s": C.dom(f), "t": C.cod(f)}, {"u": f, "v": g}))
    else:
        for c in C.objects:
            for a in C.out_of(c):
                for b in C.out_of(c):
                    found.append(diagram(shape, C, {"c": c, "l": C.cod(a), "r": C.cod(b)}, {"a": a, "b": b}))
    return found


def _shapes(config: WorkbenchConfig) -> List[FinCat]:
    shapes = [discrete_shape(n) for n in range(1, config.shape_bound + 1)]
    if config.max_arrows >= 2:
        if config.shape_bound >= 2:
            shapes.append(parallel_shape())
        if config.shape_bound >= 3:
            shapes.append(span_shape())
    return shapes


def _lower_diagram(C: FinCat, H: Functor, alpha: Dict[str, str]) -> Optional[Functor]:
    """K with ``α_J∘K(u) = H(u)∘α_I``; None if some K(u) does not exist."""
    shape = H.source
    omap = {i: C.dom(alpha[i]) for i in shape.objects}
    arrows = {}
    for u in _arrows(shape):
        i, j = shape.dom(u), shape.cod(u)
        target = C.compose(H.mmap[u], alpha[i])
        found = [k for k in C.hom(omap[i], omap[j]) if C.compose(alpha[j], k) == target]
        if not found:
            return None
        arrows[u] = found[0]
    return diagram(shape, C, omap, arrows)


def generate_diagrams(C: FinCat, M: MSystem, config: WorkbenchConfig = DEFAULT_CONFIG) -> Tuple[List[FiniteDiagram], Dict[str, object]]:
    """All diagrams ``K ⇒ H`` with member components over the bounded shapes.

    Components range over the canonical M-subobjects of each ``H(I)``.
    When a shape yields more than ``max_diagrams`` diagrams a seeded sample
    is taken and the truncation is recorded in the returned metadata.
    """
    rng = random.Random(config.seed)
    diagrams: List[FiniteDiagram] = []
    metadata: Dict[str, object] = {"shape_bound": config.shape_bound, "max_arrows": config.max_arrows, "truncated": {}}
    for shape in _shapes(config):
        found = []
        for H in _upper_diagrams(C, shape):
            choices = [m_subobjects(C, M, H.omap[i]) for i in shape.objects]
            for components in itertools.product(*choices):
                alpha = dict(zip(shape.objects, components))
                K = _lower_diagram(C, H, alpha)
                if K is None:
                    continue
                name = f"{shape.name}:" + ",".join(f"{H.mmap.get(u, '')}" for u in _arrows(shape)) + ":" + ",".join(components)
                if not _arrows(shape):
                    name = f"{shape.name}:" + ",".join(components)
                found.append(FiniteDiagram(shape, K, H, alpha, name=name))
        if len(found) > config.max_diagrams:
            metadata["truncated"][shape.name] = len(found)
            keep = sorted(rng.sample(range(len(found)), config.max_diagrams))
            found = [found[k] for k in keep]
        diagrams.extend(found)
    metadata["diagrams"] = len(diagrams)
    logger.info(f"Generated {len(diagrams)} diagrams over {C.name}")
    return diagrams, metadata


# -- pulled-back cocones ------------------------------------------------------------


def pullback_cocone(C: FinCat, K: Functor, cocone: Cocone, m: str) -> Optional[Tuple[Functor, List[str]]]:
    """Pull every leg of the cocone back along ``m: D → apex``.

    Returns the pulled-back diagram and its legs into ``D``, or None when
    a pullback is missing.
    """
    shape = K.source
    squares = {}
    for i in shape.objects:
        square = pullback(C, cocone.leg(i), m)
        if square is None:
            return None
        squares[i] = square
    arrows = {}
    for u in _arrows(shape):
        i, j = shape.dom(u), shape.cod(u)
        mediated = mediate_pullback(C, squares[j], C.compose(K.mmap[u], squares[i].p), squares[i].q)
        if mediated is None:
            return None
        arrows[u] = mediated
    pulled = diagram(shape, C, {i: squares[i].apex for i in shape.objects}, arrows)
    return pulled, [squares[i].q for i in shape.objects]


def _coproduct_cocones(C: FinCat, width: int) -> List[Tuple[Functor, Cocone]]:
    found = []
    shape = discrete_shape(width)
    for objs in itertools.combinations_with_replacement(C.objects, width):
        K = diagram(shape, C, dict(zip(shape.objects, objs)))
        colim = colimit(C, K)
        if colim is not None:
            found.append((K, colim))
    return found


# -- the three conditions -----------------------------------------------------------


def _check_coproducts_of_members(C: FinCat, M: MSystem, config: WorkbenchConfig, report: CheckReport) -> None:
    members = C.sort_morphisms(M.members)
    checked = missing = 0
    for width in range(2, config.shape_bound + 1):
        for ms in itertools.combinations_with_replacement(members, width):
            lower = coproduct(C, [C.dom(m) for m in ms])
            upper = coproduct(C, [C.cod(m) for m in ms])
            if lower is None or upper is None:
                missing += 1
                continue
            (lower_apex, lower_legs), (upper_apex, upper_legs) = lower, upper
            u = mediate_colimit(
                C,
                Cocone(lower_apex, tuple(enumerate(lower_legs))),
                upper_apex,
                [C.compose(leg, m) for leg, m in zip(upper_legs, ms)],
            )
            checked += 1
            if u not in M:
                report.violate("coproduct-of-members", members=",".join(ms), sum=u)
                continue
            for m, q, p in zip(ms, lower_legs, upper_legs):
                if not is_pullback(C, p, u, C.dom(m), m, q):
                    report.violate("coprojection-pullback", members=",".join(ms), member=m)
    report.metadata["coproducts_checked"] = checked
    if missing:
        report.note(f"not-applicable: {missing} families of members lack coproducts")


def _check_coequalizers_of_members(C: FinCat, M: MSystem, report: CheckReport) -> None:
    checked = missing = 0
    for f, g in C.parallel_pairs():
        X, Y = C.dom(f), C.cod(f)
        for m in m_subobjects(C, M, Y):
            along_f, along_g = pullback(C, f, m), pullback(C, g, m)
            if along_f is None or along_g is None:
                continue
            m_x = along_f.p
            g_lifted = [k for k in C.hom(C.dom(m_x), C.dom(m)) if C.compose(m, k) == C.compose(g, m_x)]
            if not g_lifted or not is_pullback(C, g, m, C.dom(m_x), m_x, g_lifted[0]):
                continue
            f_lifted = along_f.q
            upper = coequalizer(C, f, g)
            lower = coequalizer(C, f_lifted, g_lifted[0])
            if upper is None or lower is None:
                missing += 1
                continue
            (Q, q), (Q_lower, q_lower) = upper, lower
            n = next((u for u in C.hom(Q_lower, Q) if C.compose(u, q_lower) == C.compose(q, m)), None)
            checked += 1
            if n is None or n not in M:
                report.violate("coequalizer-member", f=f, g=g, m=m)
            elif not is_pullback(C, q, n, C.dom(m), m, q_lower):
                report.violate("coequalizer-pullback", f=f, g=g, m=m)
    report.metadata["coequalizers_checked"] = checked
    if missing:
        report.note(f"not-applicable: {missing} configurations lack coequalizers")


def _colimit_cocones(C: FinCat, config: WorkbenchConfig) -> List[Tuple[Functor, Cocone]]:
    cocones = []
    for width in range(2, config.shape_bound + 1):
        cocones.extend(_coproduct_cocones(C, width))
    if config.shape_bound >= 2:
        for f, g in C.parallel_pairs():
            if f == g:
                continue
            K = diagram(parallel_shape(), C, {"s": C.dom(f), "t": C.cod(f)}, {"u": f, "v": g})
            colim = colimit(C, K)
            if colim is not None:
                cocones.append((K, colim))
    return cocones


def _check_pullback_stability(C: FinCat, M: MSystem, config: WorkbenchConfig, report: CheckReport) -> None:
    checked = 0
    for K, colim in _colimit_cocones(C, config):
        for m in m_subobjects(C, M, colim.apex):
            pulled = pullback_cocone(C, K, colim, m)
            if pulled is None:
                continue
            checked += 1
            pulled_diagram, legs = pulled
            if not is_colimit(C, pulled_diagram, C.dom(m), legs):
                report.violate("colimit-stability", legs=",".join(colim.leg_list()), member=m)
    report.metadata["stability_checked"] = checked


def check_cocompleteness_conditions(C: FinCat, M: MSystem, config: WorkbenchConfig = DEFAULT_CONFIG) -> CheckReport:
    """Coproducts of members, coequalizers over members and pullback stability.

    Sub-reports are named ``coproducts``, ``coequalizers`` and ``stability``;
    the verdict ``cocomplete-at-finite-scale`` is recorded when all pass.

    Raises:
        InputError: If M is not a stable system of monics
    """
    require_valid(M)
    parts = []
    for name, run in (
        ("coproducts", lambda r: _check_coproducts_of_members(C, M, config, r)),
        ("coequalizers", lambda r: _check_coequalizers_of_members(C, M, r)),
        ("stability", lambda r: _check_pullback_stability(C, M, config, r)),
    ):
        part = CheckReport(check=name)
        run(part)
        parts.append(part)
    report = CheckReport(check="cocompleteness")
    for part in parts:
        report.merge(part, prefix=part.check)
        report.metadata[part.check] = {"status": part.status.value, **part.metadata}
    report.metadata["finite_scale"] = FINITE_SCALE
    report.metadata["shape_bound"] = config.shape_bound
    report.metadata["verdict"] = "cocomplete-at-finite-scale" if report.passed else "not-cocomplete"
    logger.info(f"Cocompleteness of {C.name}: {report.metadata['verdict']}")
    return report


def check_m_extensive(C: FinCat, M: MSystem, config: WorkbenchConfig = DEFAULT_CONFIG) -> CheckReport:
    """Over every coproduct, a row of members is a coproduct iff its squares are pullbacks.

    Raises:
        InputError: If M is not a stable system of monics
    """
    require_valid(M)
    report = CheckReport(check="m-extensive")
    checked = 0
    for width in range(2, config.shape_bound + 1):
        for K, colim in _coproduct_cocones(C, width):
            summands = [K.omap[i] for i in K.source.objects]
            injections = colim.leg_list()
            for m in m_subobjects(C, M, colim.apex):
                D = C.dom(m)
                for ms in itertools.product(*(m_subobjects(C, M, B) for B in summands)):
                    legs = []
                    for m_i, inj in zip(ms, injections):
                        target = C.compose(inj, m_i)
                        leg = next((j for j in C.hom(C.dom(m_i), D) if C.compose(m, j) == target), None)
                        if leg is None:
                            break
                        legs.append(leg)
                    if len(legs) != len(ms):
                        continue
                    checked += 1
                    top = diagram(K.source, C, {i: C.dom(m_i) for i, m_i in zip(K.source.objects, ms)})
                    is_coproduct = is_colimit(C, top, D, legs)
                    all_pullbacks = all(
                        is_pullback(C, inj, m, C.dom(m_i), m_i, leg)
                        for m_i, inj, leg in zip(ms, injections, legs)
                    )
                    if is_coproduct != all_pullbacks:
                        report.violate(
                            "extensive",
                            member=m,
                            members=",".join(ms),
                            legs=",".join(legs),
                            coproduct=str(is_coproduct).lower(),
                            pullbacks=str(all_pullbacks).lower(),
                        )
    report.metadata["configurations"] = checked
    report.metadata["finite_scale"] = FINITE_SCALE
    if not checked:
        report.applicable = False
        report.note("not-applicable: no coproducts within the shape bound")
    return report


# -- lemma suite -------------------------------------------------------------------------


@dataclass
class _Tally:
    checked: Dict[str, int] = field(default_factory=dict)
    skipped: Dict[str, int] = field(default_factory=dict)

    def check(self, lemma: str) -> None:
        self.checked[lemma] = self.checked.get(lemma, 0) + 1

    def skip(self, lemma: str) -> None:
        self.skipped[lemma] = self.skipped.get(lemma, 0) + 1


def _squares_are_pullbacks(C: FinCat, d: FiniteDiagram) -> bool:
    for u in _arrows(d.shape):
        i, j = d.shape.dom(u), d.shape.cod(u)
        if not is_pullback(C, d.upper.mmap[u], d.alpha[j], d.lower.omap[i], d.alpha[i], d.lower.mmap[u]):
            return False
    return True


def _colimit_of_restriction_idempotents(Par: ParCat, d: FiniteDiagram, report: CheckReport, tally: _Tally) -> None:
    """In Par: ``ε_I = (α_I, α_I)`` on the total image of H; ``colim ε`` is a restriction idempotent."""
    lemma = "restriction-idempotent-colimit"
    shape = d.shape
    arrows = {u: Par.total_class(d.upper.mmap[u]) for u in _arrows(shape)}
    H_par = diagram(shape, Par.cat, dict(d.upper.omap), arrows)
    epsilon = {i: Par.classify(d.alpha[i], d.alpha[i]) for i in shape.objects}
    natural = all(
        Par.cat.compose(arrows[u], epsilon[shape.dom(u)]) == Par.cat.compose(epsilon[shape.cod(u)], arrows[u])
        for u in arrows
    )
    colim = colimit(Par.cat, H_par) if natural else None
    if colim is None or not all(Par.is_total(leg) for leg in colim.leg_list()):
        tally.skip(lemma)
        return
    tally.check(lemma)
    legs = [Par.cat.compose(colim.leg(i), epsilon[i]) for i in shape.objects]
    u = mediate_colimit(Par.cat, colim, colim.apex, legs)
    if u is None or Par.bar[u] != u:
        report.violate(lemma, diagram=d.name, mediating=u)


def _outer_pullback_right_square(
    C: FinCat,
    M: MSystem,
    d: FiniteDiagram,
    colim_alpha: str,
    report: CheckReport,
    tally: _Tally,
) -> None:
    """For ``n`` in M with ``n∘x = y∘colim α``: pullback outer rectangles make the right square one."""
    lemma = "outer-pullback-right-square"
    upper, lower = d.upper_cocone, d.lower_cocone
    qualifying = 0
    for n in C.sort_morphisms(M.members):
        X, Y = C.dom(n), C.cod(n)
        for x in C.hom(lower.apex, X):
            for y in C.hom(upper.apex, Y):
                if C.compose(n, x) != C.compose(y, colim_alpha):
                    continue
                outer = all(
                    is_pullback(
                        C,
                        C.compose(y, upper.leg(i)),
                        n,
                        d.lower.omap[i],
                        d.alpha[i],
                        C.compose(x, lower.leg(i)),
                    )
                    for i in d.shape.objects
                )
                if not outer:
                    continue
                qualifying += 1
                tally.check(lemma)
                if not is_pullback(C, y, n, lower.apex, colim_alpha, x):
                    report.violate(lemma, diagram=d.name, member=n, x=x, y=y)
    if not qualifying:
        tally.skip(lemma)


def lemma_suite(
    C: FinCat,
    M: MSystem,
    diagrams: Sequence[FiniteDiagram],
    par_cat: Optional[ParCat] = None,
) -> CheckReport:
    """Check the colimit lemmas on every diagram meeting their hypotheses.

    - ``colimit-in-m``: with member components and pullback naturality
      squares, the induced map ``colim K → colim H`` is a member
    - ``right-square-pullback``: each square ``K(I) → colim K`` over
      ``H(I) → colim H`` is a pullback
    - ``outer-pullback-right-square``: for a member ``n: X → Y`` and maps
      ``x: colim K → X``, ``y: colim H → Y`` with ``n∘x = y∘colim α``
      whose outer rectangles are pullbacks, the square
      ``(colim α, x; y, n)`` is a pullback
    - ``restriction-idempotent-colimit``: in Par, the colimit of the
      restriction idempotents ``(α_I, α_I)`` is a restriction idempotent,
      provided its coprojections are total
    - ``pullback-stable``: pulling the colimit of H back along a member
      gives a colimit

    Diagrams missing a hypothesis or a colimit are counted under
    ``skipped`` and tagged ``hypothesis-unmet``; a failed conclusion is a
    violation.
    """
    Par = par_cat or par(C, M)
    report = CheckReport(check="lemma-suite")
    tally = _Tally()
    stability_seen = set()
    for d in diagrams:
        members_ok = all(a in M for a in d.alpha.values())
        squares_ok = _squares_are_pullbacks(C, d)
        d.upper_cocone = d.upper_cocone or colimit(C, d.upper)
        d.lower_cocone = d.lower_cocone or colimit(C, d.lower)
        upper, lower = d.upper_cocone, d.lower_cocone

        if members_ok and squares_ok and upper is not None and lower is not None:
            tally.check("colimit-in-m")
            legs = [C.compose(upper.leg(i), d.alpha[i]) for i in d.shape.objects]
            colim_alpha = mediate_colimit(C, lower, upper.apex, legs)
            if colim_alpha is None or colim_alpha not in M:
                report.violate("colimit-in-m", diagram=d.name, mediating=colim_alpha)
            else:
                tally.check("right-square-pullback")
                for i in d.shape.objects:
                    if not is_pullback(C, upper.leg(i), colim_alpha, d.lower.omap[i], d.alpha[i], lower.leg(i)):
                        report.violate("right-square-pullback", diagram=d.name, object=i)
                _outer_pullback_right_square(C, M, d, colim_alpha, report, tally)
        else:
            tally.skip("colimit-in-m")
            tally.skip("outer-pullback-right-square")

        if members_ok and squares_ok:
            _colimit_of_restriction_idempotents(Par, d, report, tally)
        else:
            tally.skip("restriction-idempotent-colimit")

        stability_key = (d.shape.name, tuple(sorted(d.upper.omap.items())), tuple(sorted(d.upper.mmap.items())))
        if upper is not None and len(d.shape.objects) > 1 and stability_key not in stability_seen:
            stability_seen.add(stability_key)
            for m in m_subobjects(C, M, upper.apex):
                pulled = pullback_cocone(C, d.upper, upper, m)
                if pulled is None:
                    tally.skip("pullback-stable")
                    continue
                tally.check("pullback-stable")
                pulled_diagram, legs = pulled
                if not is_colimit(C, pulled_diagram, C.dom(m), legs):
                    report.violate("pullback-stable", diagram=d.name, member=m)
    if tally.skipped:
        report.note("hypothesis-unmet")
    report.metadata["checked"] = dict(sorted(tally.checked.items()))
    report.metadata["skipped"] = dict(sorted(tally.skipped.items()))
    report.metadata["diagrams"] = len(diagrams)
    report.metadata["finite_scale"] = FINITE_SCALE
    logger.info(f"Lemma suite over {C.name}: {len(diagrams)} diagrams, {len(report.violations)} failures")
    return report
