"""
JSON file formats.

Category files carry ``objects``, ``morphisms`` (``id``/``dom``/``cod``),
``identities``, ``composition`` (triples ``[g, f, gf]``) and optionally
``restriction`` and ``msystem``. Presheaf files carry ``base`` (a path,
relative to the presheaf file, or an inline category), ``sets`` and
``actions`` (triples ``[f, x, y]`` meaning ``x·f = y``); restriction
presheaf files add ``restriction`` keyed by ``"object:element"``.
Unknown keys are rejected. Output is deterministic: declaration order for
objects and morphisms, rank order for composition and actions.
"""
from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Tuple, Union

from restrictcat.exceptions import InputError
from restrictcat.fincat import FinCat, Morphism

logger = logging.getLogger(__name__)

CATEGORY_KEYS = {"objects", "morphisms", "identities", "composition", "restriction", "msystem"}
PRESHEAF_KEYS = {"base", "sets", "actions", "restriction"}
MAP_KEYS = {"components"}


@dataclass
class CategoryBundle:
    """A category with its optional restriction structure and M-system."""
    category: FinCat
    restriction: Optional[Dict[str, str]] = None
    msystem: Optional[Tuple[str, ...]] = None
    name: str = ""
    provenance: str = ""


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise InputError(message)


def _require_strings(values: Any, message: str) -> None:
    _require(isinstance(values, list) and all(isinstance(v, str) for v in values), message)


def _require_string_map(data: Any, message: str) -> None:
    _require(isinstance(data, dict) and all(isinstance(v, str) for v in data.values()), message)


def _reject_unknown(data: Mapping[str, Any], allowed: set, what: str) -> None:
    _require(isinstance(data, dict), f"{what} must be a JSON object")
    unknown = sorted(set(data) - allowed)
    _require(not unknown, f"unknown keys in {what}: {unknown}")


def read_json(path: Union[str, Path]) -> Any:
    try:
        with open(path, encoding="utf-8") as handle:
            return json.load(handle)
    except FileNotFoundError:
        raise InputError(f"no such file: {path}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from None


def write_json(data: Any, path: Union[str, Path, None] = None) -> str:
    text = json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
    if path is not None:
        Path(path).write_text(text, encoding="utf-8")
        logger.info(f"Wrote {path}")
    return text


def category_from_dict(data: Mapping[str, Any], name: str = "") -> CategoryBundle:
    """Parse a category file already loaded as a dict.

    Raises:
        InputError: On unknown keys, wrong shapes or dangling ids
    """
    _reject_unknown(data, CATEGORY_KEYS, "category file")
    for key in ("objects", "morphisms", "identities", "composition"):
        _require(key in data, f"category file is missing '{key}'")
    objects = data["objects"]
    _require_strings(objects, "'objects' must be an array of strings")
    _require(isinstance(data["morphisms"], list), "'morphisms' must be an array")
    morphisms = []
    for entry in data["morphisms"]:
        _require(isinstance(entry, dict) and set(entry) == {"id", "dom", "cod"},
                 f"morphism entries need exactly id, dom, cod: {entry!r}")
        _require_strings(list(entry.values()), f"morphism fields must be strings: {entry!r}")
        morphisms.append(Morphism(entry["id"], entry["dom"], entry["cod"]))
    identities = data["identities"]
    _require_string_map(identities, "'identities' must map objects to morphism ids")
    _require(isinstance(data["composition"], list), "'composition' must be an array")
    table = {}
    for triple in data["composition"]:
        _require(isinstance(triple, list) and len(triple) == 3, f"composition entries are [g, f, gf]: {triple!r}")
        _require_strings(triple, f"composition entries are morphism ids: {triple!r}")
        g, f, gf = triple
        _require((g, f) not in table, f"composite ({g}, {f}) given twice")
        table[(g, f)] = gf
    category = FinCat(objects, morphisms, identities, table, name=name)
    restriction = data.get("restriction")
    if restriction is not None:
        _require_string_map(restriction, "'restriction' must map morphism ids to morphism ids")
        for f, e in restriction.items():
            _require(f in category and e in category, f"restriction entry {f} ↦ {e} refers to unknown ids")
        restriction = dict(restriction)
    members = data.get("msystem")
    if members is not None:
        _require_strings(members, "'msystem' must be an array of morphism ids")
        for m in members:
            _require(m in category, f"msystem member {m} is unknown")
        members = tuple(members)
    return CategoryBundle(category, restriction, members, name=name)


def category_to_dict(
    category: FinCat,
    restriction: Optional[Mapping[str, str]] = None,
    msystem: Optional[Any] = None,
) -> Dict[str, Any]:
    data: Dict[str, Any] = {
        "objects": list(category.objects),
        "morphisms": [{"id": m.id, "dom": m.dom, "cod": m.cod} for m in category.morphisms],
        "identities": {obj: category.identities[obj] for obj in category.objects},
        "composition": [
            [g, f, gf]
            for (g, f), gf in sorted(
                category.table.items(),
                key=lambda item: (category.rank(item[0][0]), category.rank(item[0][1])),
            )
        ],
    }
    if restriction is not None:
        data["restriction"] = {f: restriction[f] for f in category.morphism_ids}
    if msystem is not None:
        data["msystem"] = category.sort_morphisms(msystem)
    return data


def bundle_to_dict(bundle: CategoryBundle) -> Dict[str, Any]:
    return category_to_dict(bundle.category, bundle.restriction, bundle.msystem)


def load_category(path: Union[str, Path]) -> CategoryBundle:
    path = Path(path)
    return category_from_dict(read_json(path), name=path.stem)


def resolve_category(path: Union[str, Path]) -> CategoryBundle:
    """Load a category file, falling back to the bundled fixture named by its stem.

    Raises:
        InputError: If the file is missing and no fixture has that name
    """
    path = Path(path)
    if path.exists():
        return load_category(path)
    from restrictcat.fixtures import FIXTURES, load_fixture

    if path.stem in FIXTURES:
        logger.debug(f"{path} not on disk, using bundled fixture {path.stem}")
        return load_fixture(path.stem)
    raise InputError(f"no such file: {path}")


def dump_category(bundle: CategoryBundle, path: Union[str, Path, None] = None) -> str:
    return write_json(bundle_to_dict(bundle), path)


def presheaf_parts_from_dict(
    data: Mapping[str, Any],
    relative_to: Optional[Path] = None,
) -> Tuple[CategoryBundle, Dict[str, List[str]], List[Tuple[str, str, str]], Optional[Dict[Tuple[str, str], str]]]:
    """Split a presheaf file into its base, sets, actions and restriction.

    The presheaf module turns these parts into a Presheaf; keeping the
    parsing here leaves that module free of file handling.
    """
    _reject_unknown(data, PRESHEAF_KEYS, "presheaf file")
    for key in ("base", "sets", "actions"):
        _require(key in data, f"presheaf file is missing '{key}'")
    base = data["base"]
    if isinstance(base, str):
        base_path = Path(base)
        if relative_to is not None and not base_path.is_absolute():
            base_path = relative_to / base_path
        bundle = resolve_category(base_path)
    else:
        bundle = category_from_dict(base)
    sets = data["sets"]
    _require(isinstance(sets, dict), "'sets' must be an object")
    for obj, elements in sets.items():
        _require(isinstance(elements, list), f"the set over {obj} must be an array")
    sets = {str(obj): [str(x) for x in elements] for obj, elements in sets.items()}
    _require(isinstance(data["actions"], list), "'actions' must be an array")
    actions = []
    for triple in data["actions"]:
        _require(isinstance(triple, list) and len(triple) == 3, f"action entries are [f, x, y]: {triple!r}")
        actions.append(tuple(str(part) for part in triple))
    restriction = None
    if "restriction" in data:
        _require(isinstance(data["restriction"], dict), "'restriction' must be an object")
        restriction = {}
        for key, value in data["restriction"].items():
            _require(":" in key, f"restriction keys are 'object:element', got {key!r}")
            _require(isinstance(value, str), f"restriction of {key} must be a morphism id")
            obj, element = key.split(":", 1)
            restriction[(obj, element)] = value
    return bundle, sets, actions, restriction


def load_presheaf_parts(path: Union[str, Path]):
    path = Path(path)
    return presheaf_parts_from_dict(read_json(path), relative_to=path.parent)


def map_components_from_dict(data: Mapping[str, Any]) -> Dict[str, Dict[str, str]]:
    _reject_unknown(data, MAP_KEYS, "presheaf map file")
    _require(isinstance(data.get("components"), dict), "presheaf map file needs a 'components' object")
    components = {}
    for obj, pairs in data["components"].items():
        _require(
            isinstance(pairs, list) and all(isinstance(p, list) and len(p) == 2 for p in pairs),
            "components are arrays of [x, y]",
        )
        components[str(obj)] = {str(x): str(y) for x, y in pairs}
    return components
