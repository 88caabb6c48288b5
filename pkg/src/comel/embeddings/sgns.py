"""Skip-gram with negative sampling over token sequences.

Plain SGD on the classic objective: for a (center, context) pair, push
sigmoid(u_ctx . v_cen) toward 1 and sigmoid(u_neg . v_cen) toward 0 for k
sampled negatives. Negatives come from the unigram distribution raised to
0.75. Used for both random-walk node embeddings and character embeddings.
"""

import numpy as np

from .table import EmbeddingTable, UNK_LABEL


def _sigmoid(x):
    return 1.0 / (1.0 + np.exp(-x))


class SgnsModel:
    """Input/output vector pairs plus the negative-sampling table."""

    def __init__(self, vocab, dim, rng, unigram_counts=None):
        self.vocab = list(vocab)
        self.index = {w: i for i, w in enumerate(self.vocab)}
        n = len(self.vocab)
        bound = 0.5 / dim
        self.w_in = rng.uniform(-bound, bound, size=(n, dim))
        self.w_out = np.zeros((n, dim))
        counts = np.ones(n) if unigram_counts is None else np.asarray(unigram_counts, dtype=np.float64)
        weights = np.power(np.maximum(counts, 0.0), 0.75)
        if weights.sum() <= 0:
            weights = np.ones(n)
        self.neg_probs = weights / weights.sum()

    def pair_loss(self, center, context, negatives):
        v = self.w_in[center]
        pos = _sigmoid(self.w_out[context] @ v)
        negs = _sigmoid(-(self.w_out[negatives] @ v))
        eps = 1e-12
        return -np.log(pos + eps) - np.sum(np.log(negs + eps))

    def train_pair(self, center, context, negatives, lr):
        v = self.w_in[center]
        grad_v = np.zeros_like(v)
        # positive term
        g = _sigmoid(self.w_out[context] @ v) - 1.0
        grad_v += g * self.w_out[context]
        self.w_out[context] -= lr * g * v
        # negatives
        u_neg = self.w_out[negatives]
        gn = _sigmoid(u_neg @ v)
        grad_v += gn @ u_neg
        self.w_out[negatives] -= lr * np.outer(gn, v)
        self.w_in[center] -= lr * grad_v

    def sample_negatives(self, rng, k, exclude):
        negs = rng.choice(len(self.vocab), size=k, p=self.neg_probs)
        # resample collisions with the positive target a few times; leftovers
        # are rare and harmless
        for _ in range(3):
            bad = negs == exclude
            if not bad.any():
                break
            negs[bad] = rng.choice(len(self.vocab), size=int(bad.sum()), p=self.neg_probs)
        return negs


def train_sgns(sequences, dim, window=3, negatives=5, epochs=3, lr=0.05,
               seed=0, vocab=None, extra_labels=(), loss_trace=None) -> EmbeddingTable:
    """Train SGNS over token sequences; returns the input-vector table.

    ``extra_labels`` are appended to the vocabulary (e.g. an OOV sentinel)
    and only ever trained as negative-sampling targets. When ``loss_trace``
    is a list, the mean pair loss of each epoch is appended to it.
    """
    rng = np.random.Generator(np.random.PCG64(seed))
    if vocab is None:
        vocab = sorted({tok for seq in sequences for tok in seq})
    vocab = list(vocab) + [lab for lab in extra_labels if lab not in vocab]
    model = SgnsModel(vocab, dim, rng, unigram_counts=_counts(sequences, vocab))
    pairs = _window_pairs(sequences, model.index, window)
    if not pairs:
        return EmbeddingTable(vocab, model.w_in)
    pairs = np.asarray(pairs, dtype=np.int64)
    for epoch in range(epochs):
        order = rng.permutation(len(pairs))
        epoch_lr = lr * (1.0 - epoch / max(epochs, 1)) + 1e-4
        total = 0.0
        for idx in order:
            center, context = pairs[idx]
            negs = model.sample_negatives(rng, negatives, context)
            if loss_trace is not None:
                total += model.pair_loss(center, context, negs)
            model.train_pair(center, context, negs, epoch_lr)
        if loss_trace is not None:
            loss_trace.append(total / len(pairs))
    return EmbeddingTable(vocab, model.w_in)


def _counts(sequences, vocab):
    index = {w: i for i, w in enumerate(vocab)}
    counts = np.zeros(len(vocab))
    for seq in sequences:
        for tok in seq:
            i = index.get(tok)
            if i is not None:
                counts[i] += 1
    return counts


def _window_pairs(sequences, index, window):
    pairs = []
    for seq in sequences:
        ids = [index[tok] for tok in seq if tok in index]
        for i, center in enumerate(ids):
            lo = max(0, i - window)
            hi = min(len(ids), i + window + 1)
            for j in range(lo, hi):
                if j != i:
                    pairs.append((center, ids[j]))
    return pairs


def train_char_embeddings(texts, dim, window=3, negatives=5, epochs=3,
                          lr=0.05, seed=0, loss_trace=None) -> EmbeddingTable:
    """Character embeddings from raw comment strings.

    The table carries a shared UNK row for out-of-vocabulary characters;
    UNK is only trained as a negative-sampling target, so it stays near its
    initialization but is always finite and deterministic.
    """
    sequences = [list(t) for t in texts if t]
    if not sequences:
        raise ValueError("character embedding corpus is empty")
    return train_sgns(sequences, dim, window=window, negatives=negatives,
                      epochs=epochs, lr=lr, seed=seed, extra_labels=(UNK_LABEL,),
                      loss_trace=loss_trace)
