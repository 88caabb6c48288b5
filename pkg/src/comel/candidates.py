"""Two-step candidate construction with relation expansion and alias harvesting.

Step 1 collects every entity whose canonical name (or harvested alias, when
enabled) appears in the comment or in the parent article. Step 2 adds every
entity related to a step-1 entity, treating relation edges symmetrically.
NIL closes every candidate set.
"""

from dataclasses import dataclass

from .corpus import SurfaceScanner
from .kb import NIL, KnowledgeBase

PROVENANCES = ("comment_match", "article_match", "alias_match", "relation_expansion", "nil")


@dataclass(frozen=True)
class Candidate:
    entity_id: str  # entity id, or NIL
    provenance: str


class CandidateSet:
    def __init__(self, candidates):
        self.candidates = list(candidates)
        ids = [c.entity_id for c in self.candidates]
        if len(set(ids)) != len(ids):
            raise ValueError(f"duplicate candidate ids: {ids}")
        if ids.count(NIL) != 1 or ids[-1] != NIL:
            raise ValueError("candidate set must contain NIL exactly once, in last position")

    def ids(self) -> list:
        return [c.entity_id for c in self.candidates]

    def __len__(self):
        return len(self.candidates)

    def __contains__(self, entity_id):
        return any(c.entity_id == entity_id for c in self.candidates)

    def to_json(self):
        return [{"id": c.entity_id, "provenance": c.provenance} for c in self.candidates]


def harvest_aliases(train_pairs, kb: KnowledgeBase, pronouns=()) -> list:
    """Unambiguous (surface, entity) aliases mined from training gold links.

    ``train_pairs`` iterates (surface, gold id list). A surface qualifies if
    it is not a pronoun and, across all of training plus the existing KB
    indices, it maps to exactly one entity. Returns sorted (entity id,
    alias) additions; the caller applies them with ``kb.add_alias``.
    """
    pronouns = {p.lower() for p in pronouns}
    linked = {}
    for surface, gold in train_pairs:
        if not gold:
            continue
        linked.setdefault(surface, set()).update(gold)
    additions = []
    for surface, ents in linked.items():
        if surface.lower() in pronouns or len(ents) != 1:
            continue
        (eid,) = ents
        holders = kb.lookup_surface(surface, use_nicknames=True)
        if holders - {eid}:
            continue  # some other entity already carries this surface
        additions.append((eid, surface))
    return sorted(additions)


def candidate_scanner(kb: KnowledgeBase, use_aliases: bool) -> SurfaceScanner:
    return SurfaceScanner(kb.searchable_surfaces(include_aliases=use_aliases))


def build_candidates(mention, comment, article, kb: KnowledgeBase,
                     use_aliases: bool = False, scanner: SurfaceScanner = None) -> CandidateSet:
    """Candidate set for one mention: comment matches, article matches,
    one-hop relation expansion (sorted by id), then NIL.

    Pass a prebuilt ``scanner`` (from :func:`candidate_scanner`) when calling
    in a loop; it must reflect the same ``use_aliases`` choice.
    """
    if scanner is None:
        scanner = candidate_scanner(kb, use_aliases)
    ordered = []
    seen = set()

    def collect(text, where):
        for _s, _e, surf, ids in scanner.matches(text):
            canonical_ids = kb.canonical_index.get(surf, set())
            for eid in sorted(ids):
                if eid in seen:
                    continue
                seen.add(eid)
                prov = where if eid in canonical_ids else "alias_match"
                ordered.append(Candidate(eid, prov))

    collect(comment.text, "comment_match")
    for line in article.lines():
        collect(line, "article_match")
    expansions = set()
    for cand in ordered:
        expansions |= kb.neighbors_symmetric(cand.entity_id)
    for rel in sorted(expansions - seen):
        ordered.append(Candidate(rel, "relation_expansion"))
    ordered.append(Candidate(NIL, "nil"))
    return CandidateSet(ordered)


def build_all_candidates(corpus, kb: KnowledgeBase, use_aliases: bool = False) -> dict:
    """(comment id, span) -> CandidateSet for every mention in the corpus."""
    scanner = candidate_scanner(kb, use_aliases)
    out = {}
    for com in corpus.comments:
        art = corpus.article_of(com)
        for m in com.mentions:
            out[(com.id, m.span())] = build_candidates(m, com, art, kb, use_aliases, scanner)
    return out


def gold_coverage(mention_candidates) -> float:
    """Fraction of gold entity occurrences present in their candidate set.

    ``mention_candidates`` iterates (gold id list, CandidateSet). Plural
    mentions count each gold separately; with no non-NIL golds at all the
    coverage is vacuously 1.0.
    """
    hit = total = 0
    for gold, cands in mention_candidates:
        ids = set(cands.ids())
        for g in gold:
            total += 1
            hit += g in ids
    return hit / total if total else 1.0
