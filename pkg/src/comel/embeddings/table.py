"""Label -> vector tables with an exact-round-trip text format.

File layout: a JSON header line {"dim": d, "labels": [...]} followed by one
whitespace-separated vector per line, written with repr() floats so that
save/load reproduces every value bit for bit.
"""

import json
import logging

import numpy as np

log = logging.getLogger(__name__)

UNK_LABEL = "<unk>"


class EmbeddingTable:
    def __init__(self, labels, vectors):
        self.labels = list(labels)
        self.vectors = np.asarray(vectors, dtype=np.float64)
        if self.vectors.ndim != 2 or self.vectors.shape[0] != len(self.labels):
            raise ValueError("vectors must be a (len(labels), dim) matrix")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("duplicate labels")
        if not np.all(np.isfinite(self.vectors)):
            raise ValueError("non-finite embedding values")
        self.index = {lab: i for i, lab in enumerate(self.labels)}

    @property
    def dim(self) -> int:
        return self.vectors.shape[1]

    def __len__(self):
        return len(self.labels)

    def __contains__(self, label):
        return label in self.index

    def vector(self, label) -> np.ndarray:
        return self.vectors[self.index[label]]

    def vector_or_zero(self, label) -> np.ndarray:
        i = self.index.get(label)
        if i is None:
            return np.zeros(self.dim)
        return self.vectors[i]

    def save(self, path):
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(json.dumps({"dim": self.dim, "labels": self.labels}) + "\n")
            for row in self.vectors:
                fh.write(" ".join(repr(float(x)) for x in row) + "\n")

    @classmethod
    def load(cls, path) -> "EmbeddingTable":
        with open(path, encoding="utf-8") as fh:
            header = json.loads(fh.readline())
            vectors = np.loadtxt(fh, dtype=np.float64, ndmin=2)
        if vectors.size == 0:
            vectors = np.zeros((0, header["dim"]))
        if vectors.shape != (len(header["labels"]), header["dim"]):
            raise ValueError(f"{path}: vector block does not match header")
        return cls(header["labels"], vectors)


def entity_input_repr(table_nod: EmbeddingTable, table_wrd: EmbeddingTable, entity_id: str) -> np.ndarray:
    """Concatenated graph + word-SVD input vector for one entity.

    A missing half falls back to zeros (and is logged), matching the
    zero-vector convention of the absent padding entity.
    """
    if entity_id not in table_nod:
        log.debug("entity %s missing from graph embeddings; using zeros", entity_id)
    if entity_id not in table_wrd:
        log.debug("entity %s missing from SVD embeddings; using zeros", entity_id)
    return np.concatenate([table_nod.vector_or_zero(entity_id), table_wrd.vector_or_zero(entity_id)])


def entity_input_matrix(table_nod, table_wrd, entity_ids) -> np.ndarray:
    return np.stack([entity_input_repr(table_nod, table_wrd, eid) for eid in entity_ids]) \
        if entity_ids else np.zeros((0, table_nod.dim + table_wrd.dim))
