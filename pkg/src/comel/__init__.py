"""comel: entity linking for short user comments.

Links mention spans in user comments to a knowledge base (or NIL), using
the comment text, the parent article's entities, co-occurrence-based
entity embeddings and a character-level mention encoder. Ships rule-based
baselines, ranking metrics, a significance test and a seeded synthetic
corpus generator so the whole pipeline can be exercised at desk scale.
"""

__version__ = "0.1.0"

NIL = "NIL"
