"""Co-occurrence counting over a title stream.

Entity occurrences are unambiguous canonical-name matches found by the
shared surface scanner. Two modes:

* entity-entity: +1 per unordered pair of distinct entities in a title
  (symmetric, zero diagonal);
* entity-word: +1 per (entity, non-entity token occurrence) in a title.
"""

import numpy as np

from ..corpus import SurfaceScanner
from ..kb import KnowledgeBase

MODES = ("entity-entity", "entity-word")


class CooccurrenceMatrix:
    def __init__(self, row_labels, col_labels, mode):
        if mode not in MODES:
            raise ValueError(f"unknown mode {mode!r}")
        self.row_labels = list(row_labels)
        self.col_labels = list(col_labels)
        self.mode = mode
        self.row_index = {r: i for i, r in enumerate(self.row_labels)}
        self.col_index = {c: i for i, c in enumerate(self.col_labels)}
        self.counts: dict = {}

    def add(self, row, col, amount=1.0):
        i, j = self.row_index[row], self.col_index[col]
        self.counts[(i, j)] = self.counts.get((i, j), 0.0) + amount
        if self.mode == "entity-entity":
            if i == j:
                raise ValueError("entity-entity diagonal must stay zero")
            self.counts[(j, i)] = self.counts.get((j, i), 0.0) + amount

    def count(self, row, col) -> float:
        return self.counts.get((self.row_index[row], self.col_index[col]), 0.0)

    def to_dense(self) -> np.ndarray:
        dense = np.zeros((len(self.row_labels), len(self.col_labels)))
        for (i, j), c in self.counts.items():
            dense[i, j] = c
        return dense

    def nnz(self) -> int:
        return len(self.counts)


def _title_entities(scanner, kb, title):
    """Distinct unambiguous canonical entities of one title, in scan order."""
    seen, out = set(), []
    for _s, _e, surf, _ids in scanner.matches(title):
        ids = kb.canonical_index.get(surf, set())
        if len(ids) == 1:
            (eid,) = ids
            if eid not in seen:
                seen.add(eid)
                out.append(eid)
    return out


def build_cooccurrence(titles, kb: KnowledgeBase, mode: str) -> CooccurrenceMatrix:
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    scanner = SurfaceScanner(kb.searchable_surfaces(include_aliases=False))
    entity_ids = sorted(kb.entities)
    if mode == "entity-entity":
        matrix = CooccurrenceMatrix(entity_ids, entity_ids, mode)
        for title in titles:
            ents = _title_entities(scanner, kb, title)
            for i in range(len(ents)):
                for j in range(i + 1, len(ents)):
                    matrix.add(ents[i], ents[j])
        return matrix
    # entity-word: column vocabulary is discovered from the titles, sorted
    # for determinism
    per_title = []
    vocab = set()
    for title in titles:
        ents = _title_entities(scanner, kb, title)
        words = [tok for tok in scanner.tokenize(title) if tok not in kb.canonical_index]
        per_title.append((ents, words))
        vocab.update(words)
    matrix = CooccurrenceMatrix(entity_ids, sorted(vocab), mode)
    for ents, words in per_title:
        for eid in ents:
            for w in words:
                matrix.add(eid, w)
    return matrix
