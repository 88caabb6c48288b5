"""Entity and character embedding construction.

Three families: graph embeddings from entity-entity co-occurrence (biased
random walks + skip-gram negative sampling), SVD embeddings from
entity-word co-occurrence, and character embeddings trained on comment
text. The entity input representation is the concatenation of the graph
and SVD vectors.
"""

from .cooccur import CooccurrenceMatrix, build_cooccurrence
from .node2vec import node2vec_embed
from .sgns import train_char_embeddings
from .svd import svd_embed, truncated_svd
from .table import EmbeddingTable, UNK_LABEL, entity_input_repr

__all__ = [
    "CooccurrenceMatrix",
    "EmbeddingTable",
    "UNK_LABEL",
    "build_cooccurrence",
    "entity_input_repr",
    "node2vec_embed",
    "svd_embed",
    "train_char_embeddings",
    "truncated_svd",
]
