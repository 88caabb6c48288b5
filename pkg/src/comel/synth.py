"""Seeded synthetic corpus generator for desk-scale experiments.

Produces a KB, an annotated comment corpus, an article-level split and an
unlabeled comment pool, all deterministically from one seed. The generated
language is designed so the linking task is solvable and the sources of
evidence are controlled:

* Entity names are built from syllables over the consonants ``bdgkpt``;
  filler vocabulary uses only ``fhlmnrsw``; NIL surfaces contain ``z``.
  Disjoint alphabets guarantee that no filler word ever contains an entity
  surface, so exact-match scanning is collision-free.
* Every non-NIL mention's gold entity is reachable by candidate
  construction: the surface itself is the canonical name, or the canonical
  name is planted in the parent article. Mentions using unlisted aliases
  (``frac_unlisted_alias``) are the deliberate exception: their gold is
  kept out of the article, so they become reachable only after alias
  harvesting, which is what the harvesting coverage experiment needs.
* Ambiguous mentions use a nickname shared by exactly two same-type
  entities; the article names exactly one of them, so the mention is
  resolvable only through the article entity set.
* Pronominal (and NIL) comments attach to single-entity articles and carry
  no informative context words, so they too are article-only cases.

Comment and article text embeds type cue words so a character-level
encoder has context signal to pick up where context is informative.
"""

from dataclasses import dataclass, field, fields

import numpy as np

from .corpus import Article, Comment, Corpus, DatasetSplit, Mention
from .kb import Entity, KnowledgeBase

ENTITY_CONSONANTS = "bdgkpt"
VOWELS = "aeiou"

# filler vocabulary avoids the entity consonants entirely; see module docstring
FILLER_WORDS = [
    "we", "so", "all", "one", "win", "fun", "half", "mass", "rose", "lane",
    "firm", "wish", "hull", "moss", "seam", "worn", "less", "more",
]

TYPE_CUES = {
    "show": ["fame", "reel"],
    "wheel": ["miles", "wheels"],
    "meal": ["flour", "meals"],
}

PRONOUNS = {"male": "he", "female": "she", "neutral": "it"}
PLURAL_PRONOUN = "they"

NIL_PREFIX = "z"

MENTION_KINDS = ("canonical", "nickname", "ambiguous", "pronominal", "unlisted", "plural", "nil")


class SynthConfigError(ValueError):
    pass


@dataclass
class SynthConfig:
    n_entities: int = 50
    n_articles: int = 120
    comments_per_article: int = 6
    n_unlabeled_comments: int = 0
    sentences_per_article: int = 3
    aliases_per_entity: int = 1
    shared_alias_pairs: int = 12
    relations_per_entity: float = 1.5
    frac_pronominal: float = 0.30
    frac_ambiguous: float = 0.35
    frac_nil: float = 0.10
    frac_unlisted_alias: float = 0.0
    frac_plural: float = 0.0
    frac_nickname: float = 0.10
    distractor_entities: int = 2
    canonical_in_article_prob: float = 0.8
    split_ratios: tuple = (0.7, 0.15, 0.15)

    def validate(self):
        if self.n_entities < 1:
            raise SynthConfigError("need at least one entity")
        if self.n_articles < 1 or self.comments_per_article < 1:
            raise SynthConfigError("need at least one article and one comment per article")
        fracs = [self.frac_pronominal, self.frac_ambiguous, self.frac_nil,
                 self.frac_unlisted_alias, self.frac_plural, self.frac_nickname]
        if any(f < 0 for f in fracs):
            raise SynthConfigError("mention fractions must be nonnegative")
        if sum(fracs) > 1.0 + 1e-9:
            raise SynthConfigError("mention fractions sum to more than 1")
        if self.frac_ambiguous > 0 and (self.n_entities < 2 or self.shared_alias_pairs < 1):
            raise SynthConfigError("ambiguous mentions need >= 2 entities and >= 1 shared alias pair")
        if self.frac_plural > 0 and self.n_entities < 2:
            raise SynthConfigError("plural mentions need >= 2 entities")
        if self.frac_unlisted_alias > 0 and self.n_entities < 2:
            raise SynthConfigError("unlisted-alias mentions need >= 2 entities")
        if 2 * self.shared_alias_pairs > self.n_entities:
            raise SynthConfigError("too many shared alias pairs for the entity count")
        if abs(sum(self.split_ratios) - 1.0) > 1e-9:
            raise SynthConfigError("split ratios must sum to 1")

    def to_dict(self):
        d = {f.name: getattr(self, f.name) for f in fields(self)}
        d["split_ratios"] = list(self.split_ratios)
        return d

    @classmethod
    def from_dict(cls, d):
        known = {f.name for f in fields(cls)}
        unknown = set(d) - known
        if unknown:
            raise SynthConfigError(f"unknown synth config keys: {sorted(unknown)}")
        cfg = cls(**d)
        cfg.split_ratios = tuple(cfg.split_ratios)
        return cfg


@dataclass
class SynthResult:
    kb: KnowledgeBase
    corpus: Corpus
    split: DatasetSplit
    unlabeled: list = field(default_factory=list)

    def __iter__(self):  # allows kb, corpus, split = gen_synthetic(...)
        return iter((self.kb, self.corpus, self.split))


def _syllables():
    return [c + v for c in ENTITY_CONSONANTS for v in VOWELS]


class _Names:
    """Draws unique syllabic surfaces, never reusing one across pools."""

    def __init__(self, rng):
        self.rng = rng
        self.syll = _syllables()
        self.used = set()

    def fresh(self, n_syllables, prefix=""):
        for _ in range(10000):
            name = prefix + "".join(self.rng.choice(self.syll) for _ in range(n_syllables))
            if name not in self.used:
                self.used.add(name)
                return name
        raise SynthConfigError("surface pool exhausted; lower the entity/alias counts")


def _choice(rng, seq):
    return seq[int(rng.integers(len(seq)))]


def _make_kb(cfg: SynthConfig, rng, names: _Names):
    types = sorted(TYPE_CUES)
    entities = []
    for i in range(cfg.n_entities):
        ent_type = types[i % len(types)]
        gender = ("male", "female", "neutral")[int(rng.integers(3))]
        nicknames = [names.fresh(2) for _ in range(cfg.aliases_per_entity)]
        entities.append(
            Entity(
                id=f"E{i + 1:04d}",
                canonical_name=names.fresh(2),
                nicknames=nicknames,
                gender=gender,
                entity_type=ent_type,
            )
        )
    # shared nicknames: pairs of same-type entities, so the shared surface
    # cannot be resolved from comment context alone
    shared_pairs = []
    by_type = {}
    for ent in entities:
        by_type.setdefault(ent.entity_type, []).append(ent)
    pool = [grp for grp in by_type.values() if len(grp) >= 2]
    if cfg.shared_alias_pairs > 0 and not pool:
        raise SynthConfigError("no type group large enough for shared aliases")
    for k in range(cfg.shared_alias_pairs):
        grp = pool[k % len(pool)]
        idx = rng.permutation(len(grp))[:2]
        a, b = grp[int(idx[0])], grp[int(idx[1])]
        alias = names.fresh(2)
        a.nicknames.append(alias)
        b.nicknames.append(alias)
        shared_pairs.append((alias, a.id, b.id))
    # directed relations
    ids = [e.id for e in entities]
    if cfg.n_entities > 1:
        for ent in entities:
            n_rel = int(rng.poisson(cfg.relations_per_entity))
            targets = [i for i in ids if i != ent.id]
            take = min(n_rel, len(targets))
            if take:
                picked = rng.permutation(len(targets))[:take]
                ent.relations = sorted(targets[int(j)] for j in picked)
    # descriptions carry type cues plus related canonical names, feeding the
    # description-based features
    by_id = {e.id: e for e in entities}
    for ent in entities:
        rel_names = [by_id[r].canonical_name for r in ent.relations[:2]]
        ent.description = " ".join(TYPE_CUES[ent.entity_type] + rel_names)
    return KnowledgeBase(entities), shared_pairs


def _fillers(rng, lo, hi):
    n = int(rng.integers(lo, hi + 1))
    return [_choice(rng, FILLER_WORDS) for _ in range(n)]


def _comment_text(rng, surface, cue=None):
    words = _fillers(rng, 1, 3) + [surface]
    if cue:
        words.append(cue)
    words += _fillers(rng, 1, 3)
    text = " ".join(words)
    start = text.index(surface)
    return text, start, start + len(surface)


def _draw_kinds(cfg: SynthConfig, rng, n):
    probs = {
        "pronominal": cfg.frac_pronominal,
        "ambiguous": cfg.frac_ambiguous,
        "nil": cfg.frac_nil,
        "unlisted": cfg.frac_unlisted_alias,
        "plural": cfg.frac_plural,
        "nickname": cfg.frac_nickname,
    }
    probs["canonical"] = max(0.0, 1.0 - sum(probs.values()))
    kinds = sorted(probs)
    p = np.array([probs[k] for k in kinds])
    p = p / p.sum()
    return [kinds[int(i)] for i in rng.choice(len(kinds), size=n, p=p)]


def gen_synthetic(config: SynthConfig, seed: int) -> SynthResult:
    """Deterministic synthetic (KB, corpus, split) plus an unlabeled pool.

    Every generated mention records its true gold link. For the default
    configuration (no unlisted aliases) every non-NIL gold is reachable by
    candidate construction without harvesting; unlisted-alias mentions
    become reachable once aliases are harvested from the training split
    (each alias is planted in at least one training comment when its owner
    hosts a training article).
    """
    config.validate()
    rng = np.random.Generator(np.random.PCG64(seed))
    names = _Names(rng)
    kb, shared_pairs = _make_kb(config, rng, names)
    ids = sorted(kb.entities)
    by_id = kb.entities

    nil_surfaces = [names.fresh(2, prefix=NIL_PREFIX) for _ in range(8)]
    unlisted_alias = {}
    if config.frac_unlisted_alias > 0:
        for eid in ids:
            unlisted_alias[eid] = names.fresh(3)

    # split over article ids up front so training-occurrence guarantees can
    # be enforced during generation
    art_ids = [f"A{i + 1:04d}" for i in range(config.n_articles)]
    perm = [art_ids[int(i)] for i in rng.permutation(len(art_ids))]
    n_valid = int(len(perm) * config.split_ratios[1])
    n_test = int(len(perm) * config.split_ratios[2])
    n_train = len(perm) - n_valid - n_test
    split = DatasetSplit(
        train=sorted(perm[:n_train]),
        valid=sorted(perm[n_train:n_train + n_valid]),
        test=sorted(perm[n_train + n_valid:]),
    )
    train_ids = set(split.train)

    # plan comment kinds per article; single-entity articles host the
    # pronominal comments, so a pronoun's target is always recoverable
    plans = []
    focus_cycle = [ids[int(i)] for i in rng.permutation(len(ids))]
    state = {"pending_unlisted": set(unlisted_alias)}
    for a_idx, art_id in enumerate(art_ids):
        kinds = _draw_kinds(config, rng, config.comments_per_article)
        single_focus = "pronominal" in kinds
        if single_focus:
            kinds = ["canonical" if k == "plural" else k for k in kinds]
        if unlisted_alias and state["pending_unlisted"] and art_id in train_ids:
            kinds[-1] = "unlisted"
        if "ambiguous" in kinds and shared_pairs:
            pair = shared_pairs[a_idx % len(shared_pairs)]
            gold = pair[1] if rng.integers(2) == 0 else pair[2]
            other = pair[2] if gold == pair[1] else pair[1]
        else:
            pair, other = None, None
            gold = focus_cycle[a_idx % len(focus_cycle)]
        focus = [gold]
        if not single_focus:
            quota = int(rng.integers(1, config.distractor_entities + 1))
            for i in rng.permutation(len(ids)):
                cand = ids[int(i)]
                if cand != gold and cand != other and cand not in focus:
                    focus.append(cand)
                if len(focus) >= 1 + quota:
                    break
        plans.append({"article_id": art_id, "kinds": kinds, "gold": gold,
                      "pair": pair, "focus": focus, "in_train": art_id in train_ids})

    articles, comments = [], []
    c_counter = 0
    for plan in plans:
        art_id, gold, focus = plan["article_id"], plan["gold"], plan["focus"]
        order = [focus[int(i)] for i in rng.permutation(len(focus))]
        title_words = []
        for eid in order:
            title_words.append(by_id[eid].canonical_name)
            title_words.extend(_fillers(rng, 0, 1))
        title = " ".join(title_words + [TYPE_CUES[by_id[gold].entity_type][0]])
        sentences = []
        for _ in range(config.sentences_per_article):
            eid = _choice(rng, order)
            words = _fillers(rng, 1, 2) + [by_id[eid].canonical_name,
                                           _choice(rng, TYPE_CUES[by_id[eid].entity_type])]
            sentences.append(" ".join(words + _fillers(rng, 0, 2)))
        articles.append(Article(id=art_id, title=title, sentences=sentences))

        for kind in plan["kinds"]:
            c_counter += 1
            com = _gen_comment(f"C{c_counter:05d}", plan, kind, config, kb, rng,
                               nil_surfaces, unlisted_alias, ids, state)
            comments.append(com)

    corpus = Corpus(articles, comments)
    unlabeled = _gen_unlabeled(config, rng, kb, plans, shared_pairs)
    return SynthResult(kb=kb, corpus=corpus, split=split, unlabeled=unlabeled)


def _pick_unlisted_target(plan, rng, unlisted_alias, ids, state):
    """Gold for an unlisted-alias mention: outside the article focus, and
    while building training articles prefer aliases not yet planted there."""
    focus = set(plan["focus"])
    if plan["in_train"]:
        pending = sorted(state["pending_unlisted"] - focus)
        if pending:
            target = _choice(rng, pending)
            state["pending_unlisted"].discard(target)
            return target
    candidates = [e for e in ids if e not in focus]
    return _choice(rng, candidates) if candidates else plan["gold"]


def _gen_comment(cid, plan, kind, cfg, kb, rng, nil_surfaces, unlisted_alias, ids, state):
    art_id, gold = plan["article_id"], plan["gold"]
    by_id = kb.entities
    gold_ent = by_id[gold]
    cue = _choice(rng, TYPE_CUES[gold_ent.entity_type])
    if kind == "plural" and len(plan["focus"]) < 2:
        kind = "canonical"
    if kind == "canonical":
        # part of the time the target is someone other than the article
        # focus; the mention is then resolvable from the surface alone
        target = gold if rng.random() < cfg.canonical_in_article_prob else _choice(rng, ids)
        ent = by_id[target]
        text, s, e = _comment_text(rng, ent.canonical_name, _choice(rng, TYPE_CUES[ent.entity_type]))
        mention = Mention(s, e, gold=[target], mention_type="canonical")
    elif kind == "nickname":
        own = [n for n in gold_ent.nicknames if len(kb.lookup_surface(n, use_nicknames=True)) == 1]
        surface = _choice(rng, own) if own else gold_ent.canonical_name
        text, s, e = _comment_text(rng, surface, cue)
        mention = Mention(s, e, gold=[gold], mention_type="nickname")
    elif kind == "ambiguous":
        if plan["pair"] is None:
            return _gen_comment(cid, plan, "nickname", cfg, kb, rng, nil_surfaces,
                                unlisted_alias, ids, state)
        text, s, e = _comment_text(rng, plan["pair"][0], cue)
        mention = Mention(s, e, gold=[gold], mention_type="nickname")
    elif kind == "pronominal":
        pronoun = PRONOUNS.get(gold_ent.gender, PRONOUNS["neutral"])
        text, s, e = _comment_text(rng, pronoun, None)
        mention = Mention(s, e, gold=[gold], mention_type="pronominal")
    elif kind == "plural":
        golds = plan["focus"][:2]
        text, s, e = _comment_text(rng, PLURAL_PRONOUN, None)
        mention = Mention(s, e, gold=list(golds), mention_type="plural")
    elif kind == "unlisted":
        target = _pick_unlisted_target(plan, rng, unlisted_alias, ids, state)
        text, s, e = _comment_text(rng, unlisted_alias[target],
                                   _choice(rng, TYPE_CUES[by_id[target].entity_type]))
        mention = Mention(s, e, gold=[target], mention_type="other")
    elif kind == "nil":
        text, s, e = _comment_text(rng, _choice(rng, nil_surfaces), None)
        mention = Mention(s, e, gold=[], mention_type="nil")
    else:
        raise SynthConfigError(f"unknown mention kind {kind!r}")
    return Comment(id=cid, article_id=art_id, text=text, mentions=[mention])


def _gen_unlabeled(config, rng, kb, plans, shared_pairs):
    """Mention-free comments containing one unambiguous entity surface each,
    the raw material for weak labeling. Attached to training articles only."""
    shared = {alias for alias, _a, _b in shared_pairs}
    train_plans = [p for p in plans if p["in_train"]] or plans
    ids = sorted(kb.entities)
    out = []
    for i in range(config.n_unlabeled_comments):
        plan = _choice(rng, train_plans)
        eid = plan["gold"] if rng.random() < 0.5 else _choice(rng, ids)
        ent = kb.entities[eid]
        own_aliases = [n for n in ent.nicknames if n not in shared]
        surface = ent.canonical_name if (rng.random() < 0.6 or not own_aliases) else _choice(rng, own_aliases)
        text, _s, _e = _comment_text(rng, surface, _choice(rng, TYPE_CUES[ent.entity_type]))
        out.append(Comment(id=f"U{i + 1:05d}", article_id=plan["article_id"], text=text, mentions=[]))
    return out
