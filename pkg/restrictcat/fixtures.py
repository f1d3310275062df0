"""
Bundled fixture categories.

- ``triv3``: three objects, identities only
- ``max5a``/``max5b``: the monoid ``{0..5}`` under ``max`` with ``bar(n) = n``,
  respectively ``bar(n) = n`` for ``n`` zero or odd and ``n - 1`` otherwise
- ``pfin2``: subsets of ``{1, 2}`` and partial functions
- ``inj2``: subsets of ``{1, 2}`` and total functions, injections as M-system
- ``ab2``: the groups ``0``, ``Z2``, ``Z2+Z2`` and their homomorphisms,
  injective homomorphisms as M-system
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from restrictcat.fincat import CategoryBuilder, FinCat, Functor, NatTrans
from restrictcat.formats import CategoryBundle, dump_category
from restrictcat.restriction import trivial_structure

logger = logging.getLogger(__name__)

SUBSETS: Tuple[Tuple[int, ...], ...] = ((), (1,), (2,), (1, 2))


def subset_id(subset: Sequence[int]) -> str:
    return "{" + ",".join(str(x) for x in subset) + "}"


def function_id(source: Sequence[int], target: Sequence[int], mapping: Dict[int, Optional[int]]) -> str:
    """``{1,2}>{1}[1=1,2=-]``: ``-`` marks an undefined point."""
    body = ",".join(
        f"{a}={'-' if mapping.get(a) is None else mapping[a]}" for a in source
    )
    return f"{subset_id(source)}>{subset_id(target)}[{body}]"


def _function_category(partial: bool, name: str) -> Tuple[FinCat, Dict[str, Tuple]]:
    builder = CategoryBuilder()
    data: Dict[str, Tuple] = {}
    for s in SUBSETS:
        ident = function_id(s, s, {a: a for a in s})
        builder.add_object(subset_id(s), ident)
        data[ident] = (s, s, {a: a for a in s})
    for s in SUBSETS:
        for t in SUBSETS:
            values: List[Optional[int]] = ([None] if partial else []) + list(t)
            for images in itertools.product(values, repeat=len(s)):
                mapping = dict(zip(s, images))
                ident = function_id(s, t, mapping)
                if ident in data:
                    continue
                data[ident] = (s, t, mapping)
                builder.add_morphism(ident, subset_id(s), subset_id(t))

    def compose(g: str, f: str) -> str:
        s, _, f_map = data[f]
        _, u, g_map = data[g]
        mapping = {
            a: (None if f_map.get(a) is None else g_map.get(f_map[a]))
            for a in s
        }
        return function_id(s, u, mapping)

    return builder.build(compose, name=name), data


def triv3() -> CategoryBundle:
    builder = CategoryBuilder()
    for obj in ("A", "B", "C"):
        builder.add_object(obj, f"id{obj}")
    category = builder.build(lambda g, f: f, name="triv3")
    return CategoryBundle(
        category,
        restriction=trivial_structure(category),
        msystem=tuple(category.identities.values()),
        name="triv3",
        provenance="trivial",
    )


def max5_category() -> FinCat:
    builder = CategoryBuilder()
    builder.add_object("*", "0")
    for n in range(1, 6):
        builder.add_morphism(str(n), "*", "*")
    return builder.build(lambda g, f: str(max(int(g), int(f))), name="max5")


def max5_structure_b(n: int) -> int:
    return n if n == 0 or n % 2 == 1 else n - 1


def max5a() -> CategoryBundle:
    category = max5_category()
    return CategoryBundle(
        category,
        restriction={str(n): str(n) for n in range(6)},
        name="max5a",
        provenance="max-monoid, every element a restriction idempotent",
    )


def max5b() -> CategoryBundle:
    category = max5_category()
    return CategoryBundle(
        category,
        restriction={str(n): str(max5_structure_b(n)) for n in range(6)},
        name="max5b",
        provenance="max-monoid, odd restriction idempotents",
    )


def pfin2() -> CategoryBundle:
    category, data = _function_category(partial=True, name="pfin2")
    restriction = {}
    for ident, (s, _, mapping) in data.items():
        restriction[ident] = function_id(s, s, {a: (a if mapping[a] is not None else None) for a in s})
    return CategoryBundle(category, restriction=restriction, name="pfin2", provenance="sets and partial functions")


def inj2() -> CategoryBundle:
    category, data = _function_category(partial=False, name="inj2")
    injections = tuple(
        ident for ident, (s, _, mapping) in data.items()
        if len(set(mapping.values())) == len(s)
    )
    return CategoryBundle(category, msystem=injections, name="inj2", provenance="finite sets with injections")


AB2_DIMENSIONS = {"0": 0, "Z2": 1, "Z2+Z2": 2}
AB2_NAMES = {("Z2", "Z2+Z2", (1,)): "iota1", ("Z2", "Z2+Z2", (2,)): "iota2", ("Z2", "Z2+Z2", (3,)): "delta"}


def _vector(bits: int, dimension: int) -> str:
    return "".join(str((bits >> i) & 1) for i in range(dimension))


def homomorphism_id(source: str, target: str, columns: Tuple[int, ...]) -> str:
    """Matrices over GF(2) by columns, each column as coordinate bits."""
    named = AB2_NAMES.get((source, target, columns))
    if named is not None:
        return named
    body = ",".join(_vector(c, AB2_DIMENSIONS[target]) for c in columns)
    return f"{source}>{target}[{body}]"


def ab2() -> CategoryBundle:
    builder = CategoryBuilder()
    data: Dict[str, Tuple[str, str, Tuple[int, ...]]] = {}
    for obj, dim in AB2_DIMENSIONS.items():
        columns = tuple(1 << i for i in range(dim))
        ident = homomorphism_id(obj, obj, columns)
        builder.add_object(obj, ident)
        data[ident] = (obj, obj, columns)
    for source, n in AB2_DIMENSIONS.items():
        for target, k in AB2_DIMENSIONS.items():
            for columns in itertools.product(range(2 ** k), repeat=n):
                ident = homomorphism_id(source, target, columns)
                if ident in data:
                    continue
                data[ident] = (source, target, columns)
                builder.add_morphism(ident, source, target)

    def apply(columns: Tuple[int, ...], vector: int) -> int:
        result = 0
        for i, column in enumerate(columns):
            if (vector >> i) & 1:
                result ^= column
        return result

    def compose(g: str, f: str) -> str:
        source, _, f_cols = data[f]
        _, target, g_cols = data[g]
        return homomorphism_id(source, target, tuple(apply(g_cols, c) for c in f_cols))

    category = builder.build(compose, name="ab2")
    injective = tuple(
        ident for ident, (source, _, columns) in data.items()
        if all(apply(columns, v) != 0 for v in range(1, 2 ** AB2_DIMENSIONS[source]))
    )
    return CategoryBundle(category, msystem=injective, name="ab2", provenance="finite abelian groups with monomorphisms")


@dataclass(frozen=True)
class FixtureEntry:
    name: str
    path: str
    provenance: str
    build: Callable[[], CategoryBundle]


FIXTURES: Dict[str, FixtureEntry] = {
    entry.name: entry
    for entry in (
        FixtureEntry("triv3", "fixtures/triv3.json", "trivial", triv3),
        FixtureEntry("max5a", "fixtures/max5a.json", "max-monoid, every element a restriction idempotent", max5a),
        FixtureEntry("max5b", "fixtures/max5b.json", "max-monoid, odd restriction idempotents", max5b),
        FixtureEntry("pfin2", "fixtures/pfin2.json", "sets and partial functions", pfin2),
        FixtureEntry("inj2", "fixtures/inj2.json", "finite sets with injections", inj2),
        FixtureEntry("ab2", "fixtures/ab2.json", "finite abelian groups with monomorphisms", ab2),
    )
}


def fixtures_list() -> List[Dict[str, str]]:
    """Manifest of bundled fixtures: name, path and provenance."""
    return [
        {"name": entry.name, "path": entry.path, "provenance": entry.provenance}
        for entry in FIXTURES.values()
    ]


def load_fixture(name: str) -> CategoryBundle:
    try:
        return FIXTURES[name].build()
    except KeyError:
        from restrictcat.exceptions import InputError
        raise InputError(f"unknown fixture: {name}") from None


def export_fixtures(directory: Path) -> List[Path]:
    directory.mkdir(parents=True, exist_ok=True)
    written = []
    for entry in FIXTURES.values():
        path = directory / f"{entry.name}.json"
        dump_category(entry.build(), path)
        written.append(path)
    return written


def inj2_swap() -> Tuple[Functor, NatTrans]:
    """The automorphism of INJ2 exchanging 1 and 2, with the iso ``id ⇒ swap``."""
    bundle = inj2()
    C = bundle.category
    swap = {1: 2, 2: 1}

    def relabel(subset: Sequence[int]) -> Tuple[int, ...]:
        return tuple(sorted(swap[a] for a in subset))

    parsed: Dict[str, Tuple[Tuple[int, ...], Tuple[int, ...], Dict[int, int]]] = {}
    for s in SUBSETS:
        for t in SUBSETS:
            for images in itertools.product(t, repeat=len(s)):
                mapping = dict(zip(s, images))
                parsed[function_id(s, t, mapping)] = (s, t, mapping)
    omap = {subset_id(s): subset_id(relabel(s)) for s in SUBSETS}
    mmap = {}
    for ident, (s, t, mapping) in parsed.items():
        mmap[ident] = function_id(relabel(s), relabel(t), {swap[a]: swap[b] for a, b in mapping.items()})
    identity = Functor(C, C, {o: o for o in C.objects}, {f: f for f in C.morphism_ids}, name="id")
    F = Functor(C, C, omap, mmap, name="swap")
    components = {
        subset_id(s): function_id(s, relabel(s), {a: swap[a] for a in s})
        for s in SUBSETS
    }
    return F, NatTrans(identity, F, components, name="swap")
