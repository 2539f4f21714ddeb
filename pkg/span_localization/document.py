import hashlib
import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Self

from span_localization.exceptions import DocumentError
from span_localization.fincat import FinCategory, identity_name
from span_localization.relcat import RelativeCategory
from span_localization.types import Mor, Morphism, Obj

logger = logging.getLogger(__name__)

KEYS = {"objects", "morphisms", "composition", "hypercovers", "metadata"}


@dataclass(frozen=True)
class CategoryDocument:
    """
    Input document: objects, morphisms {name, dom, cod}, composition {after, then, equals} with
    equals = after∘then, hypercover names and optional metadata {name, description}.
    Identity names id_<object> are implied and may only appear as a composite.
    """
    objects: tuple[Obj, ...]
    morphisms: tuple[Morphism, ...]
    composition: tuple[tuple[Mor, Mor, Mor], ...]
    hypercovers: tuple[Mor, ...]
    name: str = ""
    description: str = ""

    def category(self) -> FinCategory:
        return FinCategory(self.objects,
                           self.morphisms,
                           {(after, then): equals for after, then, equals in self.composition},
                           name=self.name)

    def relative(self) -> RelativeCategory:
        return RelativeCategory(self.category(), self.hypercovers)

    def normalized(self) -> Self:
        """
        Composition entries sorted by (then, after) in morphism order; hypercovers deduplicated and sorted.
        """
        position = {m.name: k for k, m in enumerate(self.morphisms)}

        def key(name: Mor) -> tuple[int, str]:
            return position.get(name, len(position)), name

        return type(self)(self.objects,
                          self.morphisms,
                          tuple(sorted(set(self.composition), key=lambda e: (key(e[1]), key(e[0])))),
                          tuple(sorted(set(self.hypercovers), key=key)),
                          self.name,
                          self.description)

    def as_dict(self) -> dict[str, Any]:
        result: dict[str, Any] = {
            "objects": list(self.objects),
            "morphisms": [{"name": m.name, "dom": m.dom, "cod": m.cod} for m in self.morphisms],
            "composition": [{"after": a, "then": t, "equals": e} for a, t, e in self.composition],
            "hypercovers": list(self.hypercovers),
        }
        if self.name or self.description:
            result["metadata"] = {"name": self.name, "description": self.description}
        return result

    @classmethod
    def from_relative(cls, relative: RelativeCategory, name: str = "", description: str = "") -> Self:
        """
        Document of a relative category; composites with an identity factor are left implicit.
        """
        category = relative.base
        composition = tuple((g, f, category.compose(g, f)) for g, f in category.composable_pairs()
                            if not category.is_identity(g) and not category.is_identity(f))
        return cls(category.objects,
                   tuple(category.non_identities()),
                   composition,
                   tuple(w for w in relative.ordered_hypercovers() if not category.is_identity(w)),
                   name or category.name,
                   description).normalized()


def _strings(value: Any, where: str) -> list[str]:
    if not isinstance(value, list) or not all(isinstance(x, str) for x in value):
        raise DocumentError(f"{where} must be a list of strings.")
    return value


def _record(value: Any, keys: tuple[str, ...], where: str) -> tuple[str, ...]:
    if not isinstance(value, dict) or set(value) != set(keys):
        raise DocumentError(f"{where} must have exactly the keys {', '.join(keys)}.")
    if not all(isinstance(value[k], str) for k in keys):
        raise DocumentError(f"{where} values must be strings.")
    return tuple(value[k] for k in keys)


def from_dict(data: Any) -> CategoryDocument:
    if not isinstance(data, dict):
        raise DocumentError("Document must be an object.")
    unknown = set(data) - KEYS
    if unknown:
        raise DocumentError(f"Unknown keys {', '.join(sorted(unknown))}.")
    missing = {"objects", "morphisms"} - set(data)
    if missing:
        raise DocumentError(f"Missing keys {', '.join(sorted(missing))}.")
    objects = _strings(data["objects"], "objects")
    reserved = {identity_name(o) for o in objects}
    if not isinstance(data["morphisms"], list):
        raise DocumentError("morphisms must be a list.")
    morphisms = [Morphism(*_record(m, ("name", "dom", "cod"), f"morphism {k}"))
                 for k, m in enumerate(data["morphisms"])]
    composition_data = data.get("composition", [])
    if not isinstance(composition_data, list):
        raise DocumentError("composition must be a list.")
    composition = [_record(e, ("after", "then", "equals"), f"composition entry {k}")
                   for k, e in enumerate(composition_data)]
    hypercovers = _strings(data.get("hypercovers", []), "hypercovers")
    for m in morphisms:
        if m.name in reserved:
            raise DocumentError(f"Morphism name {m.name} is reserved for an identity.")
    for after, then, _ in composition:
        for name in (after, then):
            if name in reserved:
                raise DocumentError(f"Composition entry uses the identity {name} as a factor.")
    for w in hypercovers:
        if w in reserved:
            raise DocumentError(f"Identity {w} is listed as a hypercover; identities are implied.")
    metadata = data.get("metadata", {})
    if not isinstance(metadata, dict) or not set(metadata) <= {"name", "description"} or not all(
            isinstance(v, str) for v in metadata.values()):
        raise DocumentError("metadata must be an object with string name and description.")
    return CategoryDocument(tuple(objects), tuple(morphisms), tuple(composition), tuple(hypercovers),
                            metadata.get("name", ""), metadata.get("description", ""))


def parse(text: str) -> CategoryDocument:
    """
    :raises DocumentError: on malformed JSON or schema violations.
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise DocumentError(f"Not a JSON document: {e}") from None
    return from_dict(data)


def load(path: str | Path) -> CategoryDocument:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise DocumentError(f"Cannot read {path}: {e.strerror}") from None
    logger.debug("loaded document %s", path)
    return parse(text)


def serialize(document: CategoryDocument) -> str:
    """
    Normalized JSON; serialize(parse(serialize(d))) == serialize(d).
    """
    return json.dumps(document.normalized().as_dict(), indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def digest(document: CategoryDocument) -> str:
    return hashlib.sha256(serialize(document).encode("utf-8")).hexdigest()
