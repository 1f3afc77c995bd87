"""LDA topic modeling by collapsed Gibbs sampling, plus fold-in inference.

Training integrates out the multinomial parameters and resamples one token's
topic at a time from the count tables.  The sampling weight for token w in
document d and topic k is

    (n_dk + alpha) * (n_wk + beta) / (n_k + V * beta)

with all counts excluding the token being resampled.  Sweeps are sequential
over documents and tokens and all randomness comes from one SplitMix64
stream, so a (docs, K, alpha, beta, iterations, seed) tuple always yields
identical count tables.

Defaults: alpha = 5.0 / K, beta = 0.01, 1000 training sweeps, 20 fold-in
sweeps.  Priors are fixed and symmetric; there is no hyperparameter
optimization.  At full scale the topic count is 200; desk-scale work uses
far fewer.
"""

from __future__ import annotations

import hashlib
import json
import struct
import warnings
from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Sequence

import numpy as np

from .rng import SplitMix64
from .text import TokenizedTweet, Vocabulary

DEFAULT_TOPICS = 200
DEFAULT_BETA = 0.01
DEFAULT_ITERATIONS = 1000
DEFAULT_FOLD_IN_ITERATIONS = 20


@dataclass(frozen=True)
class TopicModel:
    K: int
    alpha: float
    beta: float
    word_topic_counts: np.ndarray  # |V| x K
    topic_totals: np.ndarray       # K
    vocab: Vocabulary
    rng_seed: int

    def vocab_hash(self) -> str:
        return hashlib.sha256("\n".join(self.vocab.tokens).encode("utf-8")).hexdigest()


@dataclass(frozen=True)
class TopicAssignment:
    tweet_id: str
    topic: int


def _doc_ids(docs: Sequence[Sequence[str]], vocab: Vocabulary) -> list[np.ndarray]:
    id_of = vocab.id_of
    return [
        np.array([id_of[t] for t in doc if t in id_of], dtype=np.int64)
        for doc in docs
    ]


def train_lda(
    docs: Sequence[Sequence[str]],
    K: int = DEFAULT_TOPICS,
    alpha: Optional[float] = None,
    beta: float = DEFAULT_BETA,
    iterations: int = DEFAULT_ITERATIONS,
    seed: int = 0,
    vocab: Optional[Vocabulary] = None,
    on_sweep: Optional[Callable[[int, np.ndarray], None]] = None,
) -> TopicModel:
    """Fit a K-topic model on token lists; deterministic for a fixed seed.

    Documents with no usable tokens are dropped.  ``on_sweep`` is invoked
    after every full sweep with (sweep index, copy of the per-topic totals);
    it exists so callers can audit count conservation during training.
    """
    if K < 1:
        raise ValueError("K must be >= 1")
    if iterations < 1:
        raise ValueError("iterations must be >= 1")
    if alpha is None:
        alpha = 5.0 / K
    if vocab is None:
        tokens = sorted({t for doc in docs for t in doc})
        if not tokens:
            raise ValueError("no documents with tokens")
        vocab = Vocabulary(mode="all_words", id_of={t: i for i, t in enumerate(tokens)}, tokens=tuple(tokens))
    doc_tokens = [d for d in _doc_ids(docs, vocab) if len(d) > 0]
    if not doc_tokens:
        raise ValueError("no documents with tokens")
    V = len(vocab)
    total_tokens = sum(len(d) for d in doc_tokens)
    if K > total_tokens:
        warnings.warn(f"K={K} exceeds total token count {total_tokens}; proceeding")

    # Counts live in plain lists: the sampler touches single cells and whole
    # K-rows hundreds of thousands of times per run, and at desk-scale K the
    # list arithmetic beats numpy's per-call overhead several times over.
    rng = SplitMix64(seed)
    n_wk = [[0] * K for _ in range(V)]
    n_k = [0] * K
    n_dk = [[0] * K for _ in doc_tokens]
    assignments = []
    for d, tok in enumerate(doc_tokens):
        z = []
        for w in tok:
            k = rng.randint(K)
            z.append(k)
            n_wk[w][k] += 1
            n_k[k] += 1
            n_dk[d][k] += 1
        assignments.append(z)

    beta_sum = V * beta
    topic_range = range(K)
    for sweep in range(iterations):
        for d, tok in enumerate(doc_tokens):
            nd = n_dk[d]
            z = assignments[d]
            for pos, w in enumerate(tok):
                k_old = z[pos]
                nd[k_old] -= 1
                row = n_wk[w]
                row[k_old] -= 1
                n_k[k_old] -= 1
                total = 0.0
                weights = [0.0] * K
                for k in topic_range:
                    total += (nd[k] + alpha) * (row[k] + beta) / (n_k[k] + beta_sum)
                    weights[k] = total
                r = rng.uniform() * total
                k_new = 0
                while k_new < K - 1 and weights[k_new] <= r:
                    k_new += 1
                z[pos] = k_new
                nd[k_new] += 1
                row[k_new] += 1
                n_k[k_new] += 1
        if on_sweep is not None:
            on_sweep(sweep, np.array(n_k, dtype=np.int64))

    return TopicModel(
        K=K, alpha=alpha, beta=beta,
        word_topic_counts=np.array(n_wk, dtype=np.int64),
        topic_totals=np.array(n_k, dtype=np.int64),
        vocab=vocab, rng_seed=seed,
    )


def infer_top_topic(
    model: TopicModel,
    doc: Sequence[str],
    fold_in_iterations: int = DEFAULT_FOLD_IN_ITERATIONS,
    seed: int = 0,
) -> int:
    """Most probable topic for a new document under frozen word-topic counts.

    Fold-in Gibbs: only the document's own topic counts move; the model's
    tables are read-only.  Returns argmax_k(n_dk + alpha); ties break to the
    lowest topic id.  A document with no in-vocabulary tokens falls back to
    the globally largest topic.
    """
    ids = [model.vocab.id_of[t] for t in doc if t in model.vocab.id_of]
    if not ids:
        return int(np.argmax(model.topic_totals))
    K = model.K
    alpha = model.alpha
    rng = SplitMix64(seed)
    nd = [0] * K
    z = []
    for _w in ids:
        k = rng.randint(K)
        z.append(k)
        nd[k] += 1
    beta_sum = len(model.vocab) * model.beta
    denom = [float(t) + beta_sum for t in model.topic_totals]
    rows = {w: [c + model.beta for c in model.word_topic_counts[w]] for w in set(ids)}
    for _ in range(fold_in_iterations):
        for pos, w in enumerate(ids):
            nd[z[pos]] -= 1
            row = rows[w]
            total = 0.0
            weights = [0.0] * K
            for k in range(K):
                total += (nd[k] + alpha) * row[k] / denom[k]
                weights[k] = total
            r = rng.uniform() * total
            k_new = 0
            while k_new < K - 1 and weights[k_new] <= r:
                k_new += 1
            z[pos] = k_new
            nd[k_new] += 1
    # argmax of nd + alpha with ties to the lowest topic id
    best = 0
    for k in range(1, K):
        if nd[k] > nd[best]:
            best = k
    return best


def assign_topics(
    model: TopicModel,
    docs: Iterable[TokenizedTweet],
    fold_in_iterations: int = DEFAULT_FOLD_IN_ITERATIONS,
    seed: int = 0,
) -> dict[str, int]:
    """Top topic per tweet; one seed stream drives the whole pass."""
    stream = SplitMix64(seed)
    out = {}
    for doc in docs:
        out[doc.tweet_id] = infer_top_topic(
            model, doc.tokens, fold_in_iterations, seed=stream.next_u64()
        )
    return out


def top_words(model: TopicModel, topic: int, n: int) -> list[tuple[str, int]]:
    """The n highest-count words for a topic; ties in lexicographic order."""
    if not 0 <= topic < model.K:
        raise ValueError(f"topic {topic} out of range for K={model.K}")
    counts = model.word_topic_counts[:, topic]
    nz = np.nonzero(counts)[0]
    pairs = sorted(((model.vocab.tokens[i], int(counts[i])) for i in nz),
                   key=lambda p: (-p[1], p[0]))
    return pairs[: max(n, 0)]


# ----------------------------------------------------------------------------
# Persistence: binary count tables plus a JSON sidecar of top-20 words per
# topic for human labeling.
# ----------------------------------------------------------------------------

MODEL_MAGIC = b"T4FT"
MODEL_VERSION = 1


def save_model(model: TopicModel, path: str) -> None:
    vocab_blob = json.dumps(list(model.vocab.tokens), ensure_ascii=False).encode("utf-8")
    counts_blob = model.word_topic_counts.astype("<i8").tobytes()
    totals_blob = model.topic_totals.astype("<i8").tobytes()
    with open(path, "wb") as fh:
        fh.write(MODEL_MAGIC)
        fh.write(struct.pack("<HIIddQ", MODEL_VERSION, model.K, len(model.vocab),
                             model.alpha, model.beta, model.rng_seed))
        fh.write(bytes.fromhex(model.vocab_hash()))
        fh.write(struct.pack("<Q", len(vocab_blob)))
        fh.write(vocab_blob)
        fh.write(counts_blob)
        fh.write(totals_blob)
    sidecar = {
        str(k): [w for w, _c in top_words(model, k, 20)] for k in range(model.K)
    }
    with open(path + ".topics.json", "w", encoding="utf-8") as fh:
        json.dump(sidecar, fh, ensure_ascii=False, indent=1, sort_keys=True)


def load_model(path: str) -> TopicModel:
    with open(path, "rb") as fh:
        blob = fh.read()
    if blob[:4] != MODEL_MAGIC:
        raise ValueError("not a topic model file (bad magic)")
    version, K, V, alpha, beta, seed = struct.unpack_from("<HIIddQ", blob, 4)
    if version != MODEL_VERSION:
        raise ValueError(f"unsupported model version {version}")
    pos = 4 + struct.calcsize("<HIIddQ")
    stored_hash = blob[pos : pos + 32].hex()
    pos += 32
    (vocab_len,) = struct.unpack_from("<Q", blob, pos)
    pos += 8
    tokens = json.loads(blob[pos : pos + vocab_len])
    pos += vocab_len
    vocab = Vocabulary(mode="all_words", id_of={t: i for i, t in enumerate(tokens)}, tokens=tuple(tokens))
    n_wk = np.frombuffer(blob, dtype="<i8", count=V * K, offset=pos).reshape(V, K).copy()
    pos += V * K * 8
    n_k = np.frombuffer(blob, dtype="<i8", count=K, offset=pos).copy()
    model = TopicModel(K=K, alpha=alpha, beta=beta, word_topic_counts=n_wk,
                       topic_totals=n_k, vocab=vocab, rng_seed=seed)
    if model.vocab_hash() != stored_hash:
        raise ValueError("vocabulary hash mismatch in model file")
    return model
