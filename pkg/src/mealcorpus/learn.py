"""Sparse group features and linear SVM training by dual coordinate descent.

The trainer solves the L2-regularized L1-hinge primal

    min_w  0.5 * ||w||^2  +  C * sum_i max(0, 1 - y_i * w . x_i)

with the bias folded in as an always-1 augmented feature (so the bias is
penalized like any other weight).  Optimization runs in the dual: one pass
updates each dual variable in fixed instance order, which keeps training
fully deterministic; convergence is declared when the largest projected
gradient violation in a sweep drops below 1e-4, or after 1000 sweeps.  The
tight default matters: per-tweet scaling makes feature values small, and a
loose tolerance stops the sweep while the weights are still dominated by
the bias fit.  C defaults to 1 and is deliberately not tuned.
"""

from __future__ import annotations

import hashlib
import json
from collections import Counter
from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence

import numpy as np

from .text import TokenizedTweet, Vocabulary

DEFAULT_C = 1.0
CONVERGENCE_TOL = 1e-4
MAX_EPOCHS = 1000
DECISION_EPS = 1e-9


@dataclass(frozen=True)
class SparseVector:
    """feature id -> value for the nonzero entries of one instance."""

    entries: Mapping[int, float]
    dimension: int

    def __post_init__(self):
        for fid, value in self.entries.items():
            if not 0 <= fid < self.dimension:
                raise ValueError(f"feature id {fid} outside dimension {self.dimension}")
            if value == 0:
                raise ValueError(f"stored zero at feature id {fid}")

    def dense(self) -> np.ndarray:
        out = np.zeros(self.dimension)
        for fid, value in self.entries.items():
            out[fid] = value
        return out


@dataclass(frozen=True)
class LinearModel:
    weights: np.ndarray
    bias: float
    C: float
    feature_space_hash: str = ""
    diagnostics: dict = field(default_factory=dict, compare=False)

    def decision(self, x: SparseVector) -> float:
        return float(sum(self.weights[fid] * v for fid, v in x.entries.items()) + self.bias)

    def predict(self, x: SparseVector) -> int:
        # A decision within DECISION_EPS of zero is an exact tie that only
        # looks nonzero through float cancellation; the tie rule (f >= 0 is
        # positive) applies to it, not the dust's arbitrary sign.
        d = self.decision(x)
        return 1 if d >= -DECISION_EPS else -1


@dataclass(frozen=True)
class MultiClassModel:
    classes: tuple
    models: tuple[LinearModel, ...]

    def decisions(self, x: SparseVector) -> list[float]:
        return [m.decision(x) for m in self.models]

    def predict(self, x: SparseVector):
        scores = self.decisions(x)
        return self.classes[int(np.argmax(scores))]  # tie -> first class in order


def feature_space_hash(vocab: Vocabulary, topic_count: int = 0) -> str:
    payload = json.dumps([list(vocab.tokens), topic_count]).encode("utf-8")
    return hashlib.sha256(payload).hexdigest()


def featurize_group(
    tweets: Sequence[TokenizedTweet],
    vocab: Vocabulary,
    topic_assignments: Optional[Mapping[str, int]] = None,
    topic_count: int = 0,
) -> SparseVector:
    """Pool a group of tweets into one scaled sparse vector.

    Word features count token occurrences across the group; each topic id
    gets one extra feature counting the tweets assigned that topic.  Every
    value is then divided by the group's tweet count, so duplicating the
    whole group leaves the vector unchanged.
    """
    if not tweets:
        raise ValueError("empty group")
    counts: Counter = Counter()
    for tweet in tweets:
        for token in tweet.tokens:
            fid = vocab.id_of.get(token)
            if fid is not None:
                counts[fid] += 1
    if topic_assignments is not None:
        for tweet in tweets:
            topic = topic_assignments.get(tweet.tweet_id)
            if topic is None:
                raise ValueError(f"no topic assignment for tweet {tweet.tweet_id}")
            if not 0 <= topic < topic_count:
                raise ValueError(f"topic {topic} outside topic_count {topic_count}")
            counts[len(vocab) + topic] += 1
    n = len(tweets)
    dimension = len(vocab) + (topic_count if topic_assignments is not None else 0)
    return SparseVector(
        entries={fid: c / n for fid, c in counts.items()},
        dimension=dimension,
    )


def _dense_matrix(vectors: Sequence[SparseVector]) -> np.ndarray:
    dim = vectors[0].dimension
    for v in vectors:
        if v.dimension != dim:
            raise ValueError("instances disagree on feature dimension")
    X = np.zeros((len(vectors), dim + 1))
    for i, v in enumerate(vectors):
        for fid, value in v.entries.items():
            X[i, fid] = value
        X[i, dim] = 1.0  # augmented bias feature
    return X


def train_binary_svm(
    instances: Sequence[tuple[SparseVector, int]],
    C: float = DEFAULT_C,
    feature_hash: str = "",
    tol: float = CONVERGENCE_TOL,
) -> LinearModel:
    """Dual coordinate descent for the binary hinge-loss SVM."""
    if C <= 0:
        raise ValueError("C must be positive")
    labels = {y for _, y in instances}
    if labels != {-1, 1}:
        raise ValueError(f"degenerate labels: need both -1 and +1, got {sorted(labels)}")
    X = _dense_matrix([x for x, _ in instances])
    y = np.array([float(lbl) for _, lbl in instances])
    n = len(instances)
    q_diag = np.einsum("ij,ij->i", X, X)
    alpha = np.zeros(n)
    w = np.zeros(X.shape[1])
    epochs = 0
    max_violation = np.inf
    for epoch in range(MAX_EPOCHS):
        epochs = epoch + 1
        max_violation = 0.0
        for i in range(n):
            g = y[i] * X[i].dot(w) - 1.0
            if alpha[i] == 0.0:
                pg = min(g, 0.0)
            elif alpha[i] == C:
                pg = max(g, 0.0)
            else:
                pg = g
            max_violation = max(max_violation, abs(pg))
            if pg != 0.0:
                new_alpha = min(max(alpha[i] - g / q_diag[i], 0.0), C)
                if new_alpha != alpha[i]:
                    w += (new_alpha - alpha[i]) * y[i] * X[i]
                    alpha[i] = new_alpha
        if max_violation < tol:
            break
    return LinearModel(
        weights=w[:-1].copy(),
        bias=float(w[-1]),
        C=C,
        feature_space_hash=feature_hash,
        diagnostics={
            "alphas": alpha.copy(),
            "epochs": epochs,
            "max_violation": float(max_violation),
            "converged": bool(max_violation < tol),
        },
    )


def primal_objective(model: LinearModel, instances: Sequence[tuple[SparseVector, int]]) -> float:
    """0.5 * ||[w; b]||^2 + C * total hinge loss (the trained formulation)."""
    reg = 0.5 * (float(model.weights.dot(model.weights)) + model.bias ** 2)
    hinge = sum(max(0.0, 1.0 - y * model.decision(x)) for x, y in instances)
    return reg + model.C * hinge


def train_ovr_svm(
    instances: Sequence[SparseVector],
    labels: Sequence,
    C: float = DEFAULT_C,
    feature_hash: str = "",
    tol: float = CONVERGENCE_TOL,
) -> MultiClassModel:
    """One-against-many: one binary model per class, prediction by argmax.

    Classes are ordered by sorted label value; prediction ties break to the
    first class in that order.
    """
    if len(instances) != len(labels):
        raise ValueError("instances and labels differ in length")
    classes = tuple(sorted(set(labels)))
    if len(classes) < 2:
        raise ValueError("need at least 2 distinct classes")
    for cls in classes:
        if not any(lbl == cls for lbl in labels):
            raise ValueError(f"class {cls!r} has zero instances")
    models = []
    for cls in classes:
        binary = [(x, 1 if lbl == cls else -1) for x, lbl in zip(instances, labels)]
        models.append(train_binary_svm(binary, C=C, feature_hash=feature_hash, tol=tol))
    return MultiClassModel(classes=classes, models=tuple(models))


@dataclass(frozen=True)
class FeatureWeight:
    feature_id: int
    name: str
    weight: float


def describe_feature(
    fid: int,
    vocab: Vocabulary,
    topic_names: Optional[Mapping[int, Sequence[str]]] = None,
) -> str:
    if fid < len(vocab):
        return vocab.tokens[fid]
    topic = fid - len(vocab)
    words = (topic_names or {}).get(topic)
    if words:
        return f"topic_{topic} ({', '.join(list(words)[:3])})"
    return f"topic_{topic}"


def top_weighted_features(
    model: LinearModel,
    sign: str,
    k: int,
    vocab: Vocabulary,
    topic_names: Optional[Mapping[int, Sequence[str]]] = None,
) -> list[FeatureWeight]:
    """The k largest positive (sign '+') or most negative (sign '-') weights,
    in descending order of magnitude; truncated if fewer qualify."""
    if sign not in ("+", "-"):
        raise ValueError("sign must be '+' or '-'")
    w = model.weights
    if sign == "+":
        ids = [i for i in np.argsort(-w) if w[i] > 0][:k]
    else:
        ids = [i for i in np.argsort(w) if w[i] < 0][:k]
    return [FeatureWeight(int(i), describe_feature(int(i), vocab, topic_names), float(w[i])) for i in ids]


def export_model(model: MultiClassModel | LinearModel) -> dict:
    """JSON-ready model dump: classes, per-class sparse weights, bias, C, hash."""
    if isinstance(model, LinearModel):
        classes = ["positive"]
        submodels = [model]
    else:
        classes = [str(c) for c in model.classes]
        submodels = list(model.models)
    per_class = {}
    for cls, sub in zip(classes, submodels):
        nonzero = {str(i): float(v) for i, v in enumerate(sub.weights) if v != 0.0}
        per_class[cls] = {"weights": nonzero, "bias": sub.bias}
    return {
        "classes": classes,
        "models": per_class,
        "C": submodels[0].C,
        "feature_space_hash": submodels[0].feature_space_hash,
    }
