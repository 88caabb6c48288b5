"""Knowledge base: entity records, surface indices and relation queries.

The KB is a flat entity inventory loaded from JSONL, one object per line:

    {"id": str, "canonical_name": str, "nicknames": [str],
     "gender": "male|female|neutral|unknown", "entity_type": str,
     "relations": [str], "description": str?}

Two inverted indices are maintained: canonical names and aliases
(declared nicknames plus any aliases harvested later from training data).
Surface keys are normalized (NFC, ASCII case-folded) and matched exactly;
fuzzy matching belongs to the feature extractors, not the index.
"""

from dataclasses import dataclass, field

from .util import JsonlError, normalize_surface, read_jsonl, write_jsonl

NIL = "NIL"

GENDERS = ("male", "female", "neutral", "unknown")


class KbError(ValueError):
    pass


@dataclass
class Entity:
    id: str
    canonical_name: str
    nicknames: list = field(default_factory=list)
    gender: str = "unknown"
    entity_type: str = ""
    relations: list = field(default_factory=list)
    description: str | None = None

    def validate(self):
        if not self.id:
            raise KbError("entity id must be non-empty")
        if not self.canonical_name:
            raise KbError(f"entity {self.id!r}: canonical_name must be non-empty")
        if self.gender not in GENDERS:
            raise KbError(f"entity {self.id!r}: unknown gender {self.gender!r}")
        if self.id in self.relations:
            raise KbError(f"entity {self.id!r}: relation to itself")

    def to_json(self):
        obj = {
            "id": self.id,
            "canonical_name": self.canonical_name,
            "nicknames": list(self.nicknames),
            "gender": self.gender,
            "entity_type": self.entity_type,
            "relations": list(self.relations),
        }
        if self.description is not None:
            obj["description"] = self.description
        return obj


class KnowledgeBase:
    """Entity store with exact surface lookup and relation queries.

    Immutable after loading except for :meth:`add_alias`, which only ever
    grows the alias index (used by candidate alias harvesting before any
    training happens).
    """

    def __init__(self, entities=()):
        self.entities: dict[str, Entity] = {}
        self.canonical_index: dict[str, set] = {}
        self.alias_index: dict[str, set] = {}
        self._in_relations: dict[str, set] = {}
        for ent in entities:
            self._add_entity(ent)
        self._validate_relations()

    def _add_entity(self, ent: Entity):
        ent.validate()
        if ent.id == NIL:
            raise KbError(f"entity id {NIL!r} is reserved")
        if ent.id in self.entities:
            raise KbError(f"duplicate entity id {ent.id!r}")
        self.entities[ent.id] = ent
        self.canonical_index.setdefault(normalize_surface(ent.canonical_name), set()).add(ent.id)
        for nick in ent.nicknames:
            self.alias_index.setdefault(normalize_surface(nick), set()).add(ent.id)

    def _validate_relations(self):
        for ent in self.entities.values():
            for rel in ent.relations:
                if rel not in self.entities:
                    raise KbError(f"entity {ent.id!r}: relation to unknown id {rel!r}")
                self._in_relations.setdefault(rel, set()).add(ent.id)

    def __len__(self):
        return len(self.entities)

    def __contains__(self, entity_id):
        return entity_id in self.entities

    def entity(self, entity_id: str) -> Entity:
        try:
            return self.entities[entity_id]
        except KeyError:
            raise KbError(f"unknown entity id {entity_id!r}") from None

    def add_alias(self, entity_id: str, alias: str):
        self.entity(entity_id)
        self.alias_index.setdefault(normalize_surface(alias), set()).add(entity_id)

    def lookup_surface(self, surface: str, use_nicknames: bool = False) -> set:
        """Entity ids whose canonical name (or alias, if asked) equals the surface."""
        if not surface:
            raise KbError("surface must be non-empty")
        key = normalize_surface(surface)
        hits = set(self.canonical_index.get(key, ()))
        if use_nicknames:
            hits |= self.alias_index.get(key, set())
        return hits

    def related_entities(self, entity_id: str) -> set:
        """Out-neighbors as declared in the entity record (directed)."""
        return set(self.entity(entity_id).relations)

    def neighbors_symmetric(self, entity_id: str) -> set:
        """Out- plus in-neighbors; candidate expansion treats edges symmetrically."""
        self.entity(entity_id)
        return set(self.entities[entity_id].relations) | self._in_relations.get(entity_id, set())

    def is_ambiguous(self, surface: str) -> bool:
        """True iff the surface names at least two entities (nicknames included)."""
        if not surface:
            return False
        key = normalize_surface(surface)
        hits = self.canonical_index.get(key, set()) | self.alias_index.get(key, set())
        return len(hits) >= 2

    def searchable_surfaces(self, include_aliases: bool = False) -> dict:
        """surface -> set(ids) map used by the text scanners."""
        surfaces = {s: set(ids) for s, ids in self.canonical_index.items()}
        if include_aliases:
            for s, ids in self.alias_index.items():
                surfaces.setdefault(s, set()).update(ids)
        return surfaces


def load_kb(path) -> KnowledgeBase:
    """Load and validate a KB from JSONL; errors carry the line number."""
    entities = []
    seen = set()
    for lineno, obj in read_jsonl(path):
        try:
            ent = Entity(
                id=obj["id"],
                canonical_name=obj["canonical_name"],
                nicknames=list(obj.get("nicknames", [])),
                gender=obj.get("gender", "unknown"),
                entity_type=obj.get("entity_type", ""),
                relations=list(obj.get("relations", [])),
                description=obj.get("description"),
            )
            ent.validate()
        except (KeyError, TypeError, KbError) as exc:
            raise JsonlError(path, lineno, f"bad entity record: {exc}") from exc
        if ent.id in seen:
            raise JsonlError(path, lineno, f"duplicate entity id {ent.id!r}")
        seen.add(ent.id)
        entities.append(ent)
    return KnowledgeBase(entities)


def save_kb(kb: KnowledgeBase, path, meta=None):
    write_jsonl(path, (kb.entities[eid].to_json() for eid in sorted(kb.entities)), meta=meta)


def lookup_surface(kb: KnowledgeBase, surface: str, use_nicknames: bool = False) -> set:
    return kb.lookup_surface(surface, use_nicknames)


def related_entities(kb: KnowledgeBase, entity_id: str) -> set:
    return kb.related_entities(entity_id)


def is_ambiguous(kb: KnowledgeBase, surface: str) -> bool:
    return kb.is_ambiguous(surface)
