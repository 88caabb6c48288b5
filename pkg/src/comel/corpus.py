"""Corpus data model: articles, comments, mention annotations, splits.

File formats (JSONL, one object per line):

    articles:  {"id": str, "title": str, "sentences": [str]}
    comments:  {"id": str, "article_id": str, "text": str,
                "mentions": [{"start": int, "end": int, "type": str?,
                              "gold": [str]}]}
    split:     JSON {"train": [article ids], "valid": [...], "test": [...]}

Mention spans are half-open character intervals into the comment text.
Input text is expected to be NFC-normalized; matching against KB surfaces
additionally case-folds ASCII characters (offset-preserving).
"""

from dataclasses import dataclass, field

import numpy as np

from .kb import KnowledgeBase
from .util import JsonlError, read_json, read_jsonl, write_json, write_jsonl

MENTION_TYPES = ("canonical", "nickname", "pronominal", "plural", "other", "nil")


class CorpusError(ValueError):
    pass


@dataclass
class Article:
    id: str
    title: str
    sentences: list

    def lines(self):
        """Title plus sentences, the searchable text units of the article."""
        return [self.title, *self.sentences]

    def to_json(self):
        return {"id": self.id, "title": self.title, "sentences": list(self.sentences)}


@dataclass
class Mention:
    start: int
    end: int
    gold: list
    mention_type: str | None = None

    def surface(self, text: str) -> str:
        return text[self.start : self.end]

    def span(self):
        return (self.start, self.end)

    def is_nil(self) -> bool:
        return len(self.gold) == 0

    def validate(self, text: str, where: str = ""):
        if not (0 <= self.start < self.end <= len(text)):
            raise CorpusError(f"{where}: span [{self.start},{self.end}) out of bounds for text of length {len(text)}")
        if self.mention_type is not None and self.mention_type not in MENTION_TYPES:
            raise CorpusError(f"{where}: unknown mention type {self.mention_type!r}")
        if self.mention_type == "plural" and len(self.gold) < 2:
            raise CorpusError(f"{where}: plural mention needs >= 2 gold entities")
        if self.mention_type == "nil" and self.gold:
            raise CorpusError(f"{where}: nil mention must have empty gold")

    def to_json(self):
        obj = {"start": self.start, "end": self.end, "gold": list(self.gold)}
        if self.mention_type is not None:
            obj["type"] = self.mention_type
        return obj


@dataclass
class Comment:
    id: str
    article_id: str
    text: str
    mentions: list = field(default_factory=list)

    def validate(self):
        seen = set()
        for m in self.mentions:
            m.validate(self.text, where=f"comment {self.id!r}")
            if m.span() in seen:
                raise CorpusError(f"comment {self.id!r}: duplicate mention span {m.span()}")
            seen.add(m.span())

    def to_json(self):
        return {
            "id": self.id,
            "article_id": self.article_id,
            "text": self.text,
            "mentions": [m.to_json() for m in self.mentions],
        }


class Corpus:
    def __init__(self, articles, comments):
        self.articles: dict[str, Article] = {}
        for art in articles:
            if art.id in self.articles:
                raise CorpusError(f"duplicate article id {art.id!r}")
            self.articles[art.id] = art
        self.comments: list[Comment] = []
        for com in comments:
            if com.article_id not in self.articles:
                raise CorpusError(f"comment {com.id!r}: unknown article_id {com.article_id!r}")
            com.validate()
            self.comments.append(com)

    def article_of(self, comment: Comment) -> Article:
        return self.articles[comment.article_id]

    def comments_for_articles(self, article_ids) -> list:
        wanted = set(article_ids)
        return [c for c in self.comments if c.article_id in wanted]

    def n_mentions(self) -> int:
        return sum(len(c.mentions) for c in self.comments)


@dataclass
class DatasetSplit:
    train: list
    valid: list
    test: list

    def validate(self):
        sets = [set(self.train), set(self.valid), set(self.test)]
        if sum(len(s) for s in sets) != len(set().union(*sets)):
            raise CorpusError("split parts are not disjoint")

    def to_json(self):
        return {"train": list(self.train), "valid": list(self.valid), "test": list(self.test)}


def load_corpus(articles_path, comments_path) -> Corpus:
    articles = []
    for lineno, obj in read_jsonl(articles_path):
        try:
            articles.append(Article(id=obj["id"], title=obj.get("title", ""), sentences=list(obj["sentences"])))
        except (KeyError, TypeError) as exc:
            raise JsonlError(articles_path, lineno, f"bad article record: {exc}") from exc
    comments = []
    for lineno, obj in read_jsonl(comments_path):
        try:
            mentions = [
                Mention(start=m["start"], end=m["end"], gold=list(m.get("gold", [])), mention_type=m.get("type"))
                for m in obj.get("mentions", [])
            ]
            comments.append(Comment(id=obj["id"], article_id=obj["article_id"], text=obj["text"], mentions=mentions))
        except (KeyError, TypeError) as exc:
            raise JsonlError(comments_path, lineno, f"bad comment record: {exc}") from exc
    try:
        return Corpus(articles, comments)
    except CorpusError as exc:
        raise CorpusError(f"{comments_path}: {exc}") from exc


def save_corpus(corpus: Corpus, articles_path, comments_path, meta=None):
    write_jsonl(articles_path, (a.to_json() for a in corpus.articles.values()), meta=meta)
    write_jsonl(comments_path, (c.to_json() for c in corpus.comments), meta=meta)


def load_split(path) -> DatasetSplit:
    obj = read_json(path)
    split = DatasetSplit(train=list(obj["train"]), valid=list(obj["valid"]), test=list(obj["test"]))
    split.validate()
    return split


def save_split(split: DatasetSplit, path, meta=None):
    obj = split.to_json()
    if meta is not None:
        obj["_provenance"] = meta
    write_json(path, obj)


def _fold(text: str) -> str:
    # offset-preserving ASCII case fold, mirrors util.normalize_surface on
    # NFC input
    return "".join(c.lower() if c.isascii() else c for c in text)


class SurfaceScanner:
    """Longest-match, left-to-right, non-overlapping scan for known surfaces.

    The one matching primitive shared by candidate construction, article
    entity extraction and weak labeling, so all three agree on what
    "appears in the text" means.
    """

    def __init__(self, surface_to_ids: dict):
        self.surface_to_ids = {s: frozenset(ids) for s, ids in surface_to_ids.items()}
        self._by_first: dict[str, list] = {}
        for surf in self.surface_to_ids:
            if surf:
                self._by_first.setdefault(surf[0], []).append(surf)
        for group in self._by_first.values():
            group.sort(key=len, reverse=True)

    def matches(self, text: str):
        """Yield (start, end, surface, ids); greedy longest match per position."""
        folded = _fold(text)
        i, n = 0, len(folded)
        while i < n:
            hit = None
            for surf in self._by_first.get(folded[i], ()):
                if folded.startswith(surf, i):
                    hit = surf
                    break
            if hit is None:
                i += 1
            else:
                yield (i, i + len(hit), hit, self.surface_to_ids[hit])
                i += len(hit)

    def tokenize(self, text: str) -> list:
        """Segment into surface tokens plus whitespace-split remainder."""
        tokens = []
        last = 0
        folded = _fold(text)
        for start, end, _surf, _ids in self.matches(text):
            tokens.extend(folded[last:start].split())
            tokens.append(folded[start:end])
            last = end
        tokens.extend(folded[last:].split())
        return tokens


def whitespace_tokenizer(text: str) -> list:
    return _fold(text).split()


def kb_tokenizer(kb: KnowledgeBase):
    """Default segmenter: longest match against KB canonical names, falling
    back to whitespace for everything in between."""
    scanner = SurfaceScanner(kb.searchable_surfaces(include_aliases=False))
    return scanner.tokenize


def article_entity_set(article: Article, kb: KnowledgeBase, tokenizer=None) -> list:
    """Unambiguous canonical-name entities of the article, first-occurrence order.

    A token contributes iff it equals the canonical name of exactly one
    entity; surfaces shared by several entities contribute nothing. The
    absent padding entity is not part of this list (the model appends it).
    """
    tokenize = tokenizer if tokenizer is not None else kb_tokenizer(kb)
    out, seen = [], set()
    for line in article.lines():
        for token in tokenize(line):
            ids = kb.canonical_index.get(token)
            if ids is not None and len(ids) == 1:
                (eid,) = ids
                if eid not in seen:
                    seen.add(eid)
                    out.append(eid)
    return out


def weak_label(comments, kb: KnowledgeBase) -> list:
    """Distant supervision: auto-annotate unambiguous name matches.

    A maximal (longest-first, left-to-right, non-overlapping) match of a
    canonical name or nickname becomes a mention iff exactly one entity
    carries that surface; comments with no auto-mention are dropped.
    """
    scanner = SurfaceScanner(kb.searchable_surfaces(include_aliases=True))
    out = []
    for com in comments:
        mentions = []
        for start, end, surf, _ids in scanner.matches(com.text):
            holders = kb.lookup_surface(surf, use_nicknames=True)
            if len(holders) != 1:
                continue
            (eid,) = holders
            mtype = "canonical" if surf in kb.canonical_index and eid in kb.canonical_index[surf] else "nickname"
            mentions.append(Mention(start=start, end=end, gold=[eid], mention_type=mtype))
        if mentions:
            out.append(Comment(id=com.id, article_id=com.article_id, text=com.text, mentions=mentions))
    return out


def split_by_article(corpus: Corpus, ratios=(0.8, 0.1, 0.1), seed: int = 0) -> DatasetSplit:
    """Disjoint article partition; sizes floor(ratio*n) with the remainder
    going to train. Deterministic given the seed."""
    if abs(sum(ratios) - 1.0) > 1e-9:
        raise CorpusError(f"split ratios must sum to 1, got {ratios}")
    ids = sorted(corpus.articles)
    rng = np.random.Generator(np.random.PCG64(seed))
    order = [ids[i] for i in rng.permutation(len(ids))]
    n = len(order)
    n_valid = int(n * ratios[1])
    n_test = int(n * ratios[2])
    n_train = n - n_valid - n_test
    split = DatasetSplit(
        train=sorted(order[:n_train]),
        valid=sorted(order[n_train : n_train + n_valid]),
        test=sorted(order[n_train + n_valid :]),
    )
    split.validate()
    return split
