"""Graph embeddings: biased second-order random walks + SGNS.

Walks over the entity co-occurrence graph with edge weights equal to
counts. Transition weights follow the return parameter p and in-out
parameter q: going from t to v, the next edge (v, x) is reweighted by 1/p
if x == t, by 1 if x neighbors t, else by 1/q. p = q = 1 gives plain
weighted walks.
"""

from dataclasses import dataclass

import numpy as np

from .cooccur import CooccurrenceMatrix
from .sgns import train_sgns
from .table import EmbeddingTable


@dataclass
class Node2VecParams:
    dim: int = 32
    walks_per_node: int = 10
    walk_length: int = 20
    window: int = 3
    negatives: int = 5
    epochs: int = 3
    lr: float = 0.05
    p: float = 1.0
    q: float = 1.0


def _adjacency(matrix: CooccurrenceMatrix):
    nodes = list(matrix.row_labels)
    neighbors = {i: [] for i in range(len(nodes))}
    for (i, j), c in sorted(matrix.counts.items()):
        if c > 0:
            neighbors[i].append((j, float(c)))
    return nodes, neighbors


def _walk(rng, neighbors, start, length, p, q):
    walk = [start]
    while len(walk) < length:
        cur = walk[-1]
        nbrs = neighbors[cur]
        if not nbrs:
            break
        if len(walk) == 1:
            weights = np.array([w for _x, w in nbrs])
        else:
            prev = walk[-2]
            prev_nbrs = {x for x, _w in neighbors[prev]}
            weights = np.array([
                w / p if x == prev else (w if x in prev_nbrs else w / q)
                for x, w in nbrs
            ])
        probs = weights / weights.sum()
        walk.append(nbrs[int(rng.choice(len(nbrs), p=probs))][0])
    return walk


def node2vec_embed(matrix: CooccurrenceMatrix, d: int = None,
                   params: Node2VecParams = None, seed: int = 0) -> EmbeddingTable:
    """Embed the entity-entity co-occurrence graph; deterministic per seed.

    Isolated nodes produce no walks and keep their (finite) random
    initialization, trained only as negative-sampling targets.
    """
    if matrix.mode != "entity-entity":
        raise ValueError("node2vec_embed expects an entity-entity matrix")
    params = params or Node2VecParams()
    if d is not None:
        params.dim = d
    if params.dim < 1:
        raise ValueError("embedding dimension must be >= 1")
    nodes, neighbors = _adjacency(matrix)
    if not nodes:
        return EmbeddingTable([], np.zeros((0, params.dim)))
    rng = np.random.Generator(np.random.PCG64(seed))
    walks = []
    for _ in range(params.walks_per_node):
        for start in rng.permutation(len(nodes)):
            walk = _walk(rng, neighbors, int(start), params.walk_length, params.p, params.q)
            if len(walk) > 1:
                walks.append([nodes[i] for i in walk])
    return train_sgns(walks, params.dim, window=params.window,
                      negatives=params.negatives, epochs=params.epochs,
                      lr=params.lr, seed=seed + 1, vocab=nodes)
