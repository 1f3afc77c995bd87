"""End-to-end prediction protocols and the synthetic-corpus generator.

Two experiment families run over a normalized snapshot:

* State characteristics -- each of the 51 states is one instance built by
  pooling its tweets; evaluation is leave-one-out cross-validation against a
  binary label file (above/below a national median, or D/R), compared to the
  majority baseline with a bootstrap p-value.

* Locales -- tweets pooled per city/state/region, split 80/20 within each
  locale so every training tweet precedes every test tweet, classified with
  a one-against-many SVM, compared to the random baseline.

Because the original multi-million-tweet corpus is not reproducible, the
generator plants known locale and class marker tokens into a synthetic
corpus so recovery can be verified end to end at desk scale.

Full-scale reference points, for orientation only (the collection behind
them is private and none of this is asserted by tests): characteristic
prediction lands around 60-80% against the 50.98% majority baseline (about
76.5% on overweight with open vocabulary, 80.4% adding topics), city
identification reaches 86.67% at best, state 66.67%, region 75%.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field, replace
from typing import Mapping, Optional, Sequence

import numpy as np

from . import geonorm, learn, text, topics
from .corpus import DEFAULT_HASHTAG_FILTER, CorpusSnapshot
from .rng import SplitMix64

THRESHOLD_DOCS = {"overweight": 64.2, "diabetes": 9.7, "political": 51.6}

LOCALE_LEVELS = ("city15", "state51", "region4")

_LEVEL_ALIASES = {"city": "city15", "state": "state51", "region": "region4"}


@dataclass(frozen=True)
class StateLabelSet:
    name: str
    labels: Mapping[str, str]   # state code -> binary label
    threshold_doc: float        # the national median behind the split

    def __post_init__(self):
        if len(self.labels) != 51:
            raise ValueError(f"label set must cover 51 states, got {len(self.labels)}")
        values = sorted(set(self.labels.values()))
        if len(values) != 2:
            raise ValueError(f"label domain must be binary, got {values}")
        counts = sorted(sum(1 for v in self.labels.values() if v == val) for val in values)
        if counts not in ([25, 26],):
            raise ValueError(f"class split must be 25/26, got {counts}")

    @property
    def classes(self) -> tuple[str, str]:
        return tuple(sorted(set(self.labels.values())))

    def majority_label(self) -> str:
        a, b = self.classes
        na = sum(1 for v in self.labels.values() if v == a)
        return a if na >= 51 - na else b


def load_labelset(name: str, data_dir: Optional[str] = None) -> StateLabelSet:
    """Load one of the shipped label files (overweight, diabetes, political)."""
    import csv
    import os

    if name not in THRESHOLD_DOCS:
        raise ValueError(f"unknown label set {name!r}; shipped: {sorted(THRESHOLD_DOCS)}")
    base = data_dir or os.environ.get("T4F_DATA_DIR") or os.path.join(
        os.path.dirname(__file__), "data"
    )
    labels = {}
    with open(os.path.join(base, f"labels_{name}.csv"), newline="", encoding="utf-8") as fh:
        for row in csv.DictReader(fh):
            labels[row["state"]] = row["label"]
    return StateLabelSet(name=name, labels=labels, threshold_doc=THRESHOLD_DOCS[name])


@dataclass(frozen=True)
class TaskConfig:
    feature_mode: str = "all_words"
    use_lda: bool = False
    lda_params: Mapping = field(default_factory=dict)
    svm_C: float = 1.0
    train_fraction: float = 1.0
    test_fraction: float = 1.0
    seed: int = 7
    bootstrap_iterations: int = 10000
    top_k_features: int = 20

    def __post_init__(self):
        for frac in (self.train_fraction, self.test_fraction):
            if not 0.0 < frac <= 1.0:
                raise ValueError(f"fractions must lie in (0, 1], got {frac}")
        if self.feature_mode not in text.FEATURE_MODES:
            raise ValueError(f"unknown feature mode {self.feature_mode!r}")

    def as_dict(self) -> dict:
        return {
            "feature_mode": self.feature_mode,
            "use_lda": self.use_lda,
            "lda_params": dict(self.lda_params),
            "svm_C": self.svm_C,
            "train_fraction": self.train_fraction,
            "test_fraction": self.test_fraction,
            "seed": self.seed,
        }


@dataclass
class TaskResult:
    task: str
    config: dict
    accuracy: float
    baseline_accuracy: float
    per_instance: list[dict]
    p_value: Optional[float]
    top_features: dict[str, list[dict]]
    runtime_seconds: float
    audit: dict

    def to_json(self) -> dict:
        """The external result schema; audit and runtime stay out of it."""
        return {
            "task": self.task,
            "config": self.config,
            "accuracy": self.accuracy,
            "baseline": self.baseline_accuracy,
            "p_value": self.p_value,
            "per_instance": self.per_instance,
            "top_features": self.top_features,
        }


# ---------------------------------------------------------------------------
# Shared feature pipeline
# ---------------------------------------------------------------------------

# Desk-scale LDA defaults for task runs; the topics module itself defaults to
# the full-scale settings (K=200, 1000 sweeps), which are far too slow to
# retrain inside every experiment here.
TASK_LDA_DEFAULTS = {"K": 20, "iterations": 50, "fold_in_iterations": 10, "beta": 0.01}


@dataclass
class FeaturePipeline:
    docs_by_id: dict[str, text.TokenizedTweet]
    vocab: text.Vocabulary
    topic_model: Optional[topics.TopicModel]
    assignments: Optional[dict[str, int]]
    feature_hash: str

    @property
    def topic_count(self) -> int:
        return self.topic_model.K if self.topic_model is not None else 0

    def featurize(self, tweet_ids: Sequence[str]) -> learn.SparseVector:
        group = [self.docs_by_id[tid] for tid in tweet_ids]
        return learn.featurize_group(group, self.vocab, self.assignments, self.topic_count)

    def topic_names(self) -> Optional[dict[int, list[str]]]:
        if self.topic_model is None:
            return None
        return {
            k: [w for w, _ in topics.top_words(self.topic_model, k, 3)]
            for k in range(self.topic_model.K)
        }


def build_pipeline(snapshot: CorpusSnapshot, config: TaskConfig,
                   gaz: Optional[geonorm.Gazetteer] = None) -> FeaturePipeline:
    """Tokenize, filter, build the vocabulary, and (optionally) fit LDA.

    The topic model trains on the whole snapshot before any train/test
    split, with documents reduced to the configured vocabulary mode, and
    then labels every tweet by fold-in inference.
    """
    gaz = gaz or geonorm.load_gazetteer()
    docs = text.filtered_corpus(snapshot, gaz)
    food = text.load_food_lexicon() if config.feature_mode in ("food", "food_hashtags") else set()
    vocab = text.build_vocabulary(docs, config.feature_mode, food)
    topic_model = None
    assignments = None
    if config.use_lda:
        params = {**TASK_LDA_DEFAULTS, **dict(config.lda_params)}
        mode_docs = [
            text.TokenizedTweet(d.tweet_id, tuple(text.mode_filter(d.tokens, config.feature_mode, food)))
            for d in docs
        ]
        topic_model = topics.train_lda(
            [d.tokens for d in mode_docs if d.tokens],
            K=params["K"],
            alpha=params.get("alpha"),
            beta=params.get("beta", 0.01),
            iterations=params["iterations"],
            seed=config.seed,
            vocab=vocab,
        )
        assignments = topics.assign_topics(
            topic_model, mode_docs, params["fold_in_iterations"], seed=config.seed
        )
    return FeaturePipeline(
        docs_by_id={d.tweet_id: d for d in docs},
        vocab=vocab,
        topic_model=topic_model,
        assignments=assignments,
        feature_hash=learn.feature_space_hash(
            vocab, topic_model.K if topic_model else 0
        ),
    )


def _feature_dicts(weights: list[learn.FeatureWeight]) -> list[dict]:
    return [{"feature": fw.name, "weight": fw.weight} for fw in weights]


# ---------------------------------------------------------------------------
# State-characteristic prediction (leave-one-out over the 51 states)
# ---------------------------------------------------------------------------

def run_state_characteristic_task(
    snapshot: CorpusSnapshot,
    labelset: StateLabelSet,
    config: TaskConfig = TaskConfig(),
    gaz: Optional[geonorm.Gazetteer] = None,
) -> TaskResult:
    started = time.perf_counter()
    gaz = gaz or geonorm.load_gazetteer()
    pipeline = build_pipeline(snapshot, config, gaz)

    states = sorted(labelset.labels)
    pools: dict[str, list[str]] = {s: [] for s in states}
    for t in snapshot.tweets:
        loc = snapshot.normalized.get(t.id)
        if loc is not None and loc.state in pools:
            pools[loc.state].append(t.id)
    missing = [s for s in states if not pools[s]]
    if missing:
        raise ValueError(f"states with zero tweets: {missing}")

    vectors = {s: pipeline.featurize(pools[s]) for s in states}
    pos_label, neg_label = labelset.classes
    y = {s: 1 if labelset.labels[s] == pos_label else -1 for s in states}

    preds = []
    fold_audit = []
    for held_out in states:
        train_states = [s for s in states if s != held_out]
        instances = [(vectors[s], y[s]) for s in train_states]
        model = learn.train_binary_svm(instances, C=config.svm_C,
                                       feature_hash=pipeline.feature_hash)
        pred = pos_label if model.predict(vectors[held_out]) == 1 else neg_label
        preds.append(pred)
        fold_audit.append({"held_out": held_out, "train_states": train_states})

    gold = [labelset.labels[s] for s in states]
    correct = sum(1 for g, p in zip(gold, preds) if g == p)
    accuracy = correct / len(states)
    majority = labelset.majority_label()
    baseline_preds = [majority] * len(states)
    baseline_accuracy = sum(1 for g in gold if g == majority) / len(states)
    p_value = bootstrap_significance(
        gold, preds, baseline_preds, config.bootstrap_iterations, config.seed
    )

    full_model = learn.train_binary_svm(
        [(vectors[s], y[s]) for s in states], C=config.svm_C,
        feature_hash=pipeline.feature_hash,
    )
    names = pipeline.topic_names()
    top_features = {
        pos_label: _feature_dicts(learn.top_weighted_features(
            full_model, "+", config.top_k_features, pipeline.vocab, names)),
        neg_label: _feature_dicts(learn.top_weighted_features(
            full_model, "-", config.top_k_features, pipeline.vocab, names)),
    }

    return TaskResult(
        task=f"state_characteristics:{labelset.name}",
        config=config.as_dict(),
        accuracy=accuracy,
        baseline_accuracy=baseline_accuracy,
        per_instance=[
            {"instance": s, "gold": g, "predicted": p}
            for s, g, p in zip(states, gold, preds)
        ],
        p_value=p_value,
        top_features=top_features,
        runtime_seconds=time.perf_counter() - started,
        audit={"loocv_folds": fold_audit},
    )


# ---------------------------------------------------------------------------
# Locale prediction (chronological 80/20 per locale, one-vs-rest SVM)
# ---------------------------------------------------------------------------

def _locale_of(loc, level: str, top_city_names: set[str]) -> Optional[str]:
    if level == "city15":
        return loc.city if loc.city in top_city_names else None
    if level == "state51":
        return loc.state
    if level == "region4":
        return loc.region
    raise ValueError(f"unknown locale level {level!r}")


def _expected_locales(level: str, gaz: geonorm.Gazetteer) -> list[str]:
    if level == "city15":
        return sorted(name for name, _state in gaz.top_cities(15))
    if level == "state51":
        return sorted(gaz.state_regions)
    if level == "region4":
        return sorted(geonorm.REGIONS)
    raise ValueError(f"unknown locale level {level!r}")


@dataclass
class _LocaleContext:
    pipeline: FeaturePipeline
    locales: list[str]
    train_side: dict[str, list[str]]   # locale -> tweet ids, chronological
    test_side: dict[str, list[str]]
    timestamps: dict[str, int]


def _prepare_locale_task(snapshot, level, config, gaz) -> _LocaleContext:
    level = _LEVEL_ALIASES.get(level, level)
    if level not in LOCALE_LEVELS:
        raise ValueError(f"unknown locale level {level!r}")
    gaz = gaz or geonorm.load_gazetteer()
    pipeline = build_pipeline(snapshot, config, gaz)
    locales = _expected_locales(level, gaz)
    top_city_names = {name for name, _state in gaz.top_cities(15)}

    pools: dict[str, list[str]] = {loc: [] for loc in locales}
    for t in snapshot.tweets:  # snapshot order is chronological
        norm = snapshot.normalized.get(t.id)
        if norm is None:
            continue
        locale = _locale_of(norm, level, top_city_names)
        if locale in pools:
            pools[locale].append(t.id)

    too_small = [loc for loc in locales if len(pools[loc]) < 5]
    if too_small:
        raise ValueError(f"locales below the 5-tweet minimum: {too_small}")

    train_side = {}
    test_side = {}
    for loc in locales:
        cut = int(len(pools[loc]) * 0.8)
        train_side[loc] = pools[loc][:cut]
        test_side[loc] = pools[loc][cut:]
    timestamps = {t.id: t.created_at for t in snapshot.tweets}
    return _LocaleContext(pipeline, locales, train_side, test_side, timestamps)


def _run_locale_from_context(ctx: _LocaleContext, config: TaskConfig, level: str) -> TaskResult:
    started = time.perf_counter()
    train_ids = {}
    test_ids = {}
    for loc in ctx.locales:
        n_train = max(1, int(len(ctx.train_side[loc]) * config.train_fraction))
        n_test = max(1, int(len(ctx.test_side[loc]) * config.test_fraction))
        train_ids[loc] = ctx.train_side[loc][:n_train]
        test_ids[loc] = ctx.test_side[loc][:n_test]

    split_audit = {
        loc: {
            "max_train_ts": max(ctx.timestamps[t] for t in train_ids[loc]),
            "min_test_ts": min(ctx.timestamps[t] for t in test_ids[loc]),
        }
        for loc in ctx.locales
    }

    train_vectors = [ctx.pipeline.featurize(train_ids[loc]) for loc in ctx.locales]
    test_vectors = [ctx.pipeline.featurize(test_ids[loc]) for loc in ctx.locales]
    model = learn.train_ovr_svm(train_vectors, ctx.locales, C=config.svm_C,
                                feature_hash=ctx.pipeline.feature_hash)
    preds = [model.predict(v) for v in test_vectors]
    correct = sum(1 for loc, p in zip(ctx.locales, preds) if loc == p)
    accuracy = correct / len(ctx.locales)
    baseline_accuracy = 1.0 / len(ctx.locales)

    rng = np.random.default_rng(config.seed)
    baseline_preds = [ctx.locales[i] for i in rng.integers(0, len(ctx.locales), len(ctx.locales))]
    p_value = bootstrap_significance(
        list(ctx.locales), preds, baseline_preds, config.bootstrap_iterations, config.seed
    )

    names = ctx.pipeline.topic_names()
    top_features = {
        loc: _feature_dicts(learn.top_weighted_features(
            sub, "+", min(config.top_k_features, 10), ctx.pipeline.vocab, names))
        for loc, sub in zip(model.classes, model.models)
    }

    return TaskResult(
        task=f"locale:{level}",
        config=config.as_dict(),
        accuracy=accuracy,
        baseline_accuracy=baseline_accuracy,
        per_instance=[
            {"instance": loc, "gold": loc, "predicted": p}
            for loc, p in zip(ctx.locales, preds)
        ],
        p_value=p_value,
        top_features=top_features,
        runtime_seconds=time.perf_counter() - started,
        audit={"chronological_split": split_audit},
    )


def run_locale_task(
    snapshot: CorpusSnapshot,
    level: str,
    config: TaskConfig = TaskConfig(),
    gaz: Optional[geonorm.Gazetteer] = None,
) -> TaskResult:
    level = _LEVEL_ALIASES.get(level, level)
    ctx = _prepare_locale_task(snapshot, level, config, gaz)
    return _run_locale_from_context(ctx, config, level)


def learning_curve(
    snapshot: CorpusSnapshot,
    level: str,
    config: TaskConfig,
    fractions: Sequence[float],
    gaz: Optional[geonorm.Gazetteer] = None,
) -> list[list[float]]:
    """accuracy[i][j] for train fraction i x test fraction j.

    Sub-fractions are chronological prefixes of each locale's train/test
    side, so smaller cells use strictly earlier tweets.
    """
    for f in fractions:
        if not 0.0 < f <= 1.0:
            raise ValueError(f"fractions must lie in (0, 1], got {f}")
    level = _LEVEL_ALIASES.get(level, level)
    ctx = _prepare_locale_task(snapshot, level, config, gaz)
    grid = []
    for tf in fractions:
        row = []
        for sf in fractions:
            cell_config = replace(config, train_fraction=tf, test_fraction=sf)
            row.append(_run_locale_from_context(ctx, cell_config, level).accuracy)
        grid.append(row)
    return grid


# ---------------------------------------------------------------------------
# Bootstrap significance
# ---------------------------------------------------------------------------

def bootstrap_significance(
    gold: Sequence,
    model_preds: Sequence,
    baseline_preds: Sequence,
    iterations: int = 10000,
    seed: int = 0,
) -> float:
    """One-tailed non-parametric bootstrap over paired predictions.

    Resamples the instances with replacement (n out of n) and reports the
    fraction of resamples in which the baseline's accuracy is >= the
    model's.  Ties count against the model (the conservative reading).
    """
    n = len(gold)
    if not (len(model_preds) == len(baseline_preds) == n):
        raise ValueError("gold, model, and baseline sequences must share one length")
    if n < 2:
        raise ValueError("need at least 2 instances")
    gold_arr = np.asarray(gold, dtype=object)
    model_ok = (np.asarray(model_preds, dtype=object) == gold_arr).astype(np.float64)
    base_ok = (np.asarray(baseline_preds, dtype=object) == gold_arr).astype(np.float64)
    rng = np.random.default_rng(seed)
    wins = 0
    chunk = 2000  # bound the index-matrix memory
    done = 0
    while done < iterations:
        m = min(chunk, iterations - done)
        idx = rng.integers(0, n, size=(m, n))
        wins += int(np.sum(base_ok[idx].mean(axis=1) >= model_ok[idx].mean(axis=1)))
        done += m
    return wins / iterations


# ---------------------------------------------------------------------------
# Synthetic corpus generator
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LocaleSpec:
    code: str            # manifest key and planted label key
    location_raw: str    # what goes in the author-location field
    timezone: str        # legacy timezone name


@dataclass(frozen=True)
class SynthSpec:
    locales: tuple[LocaleSpec, ...]
    tweets_per_locale: int = 1000
    tokens_per_tweet: int = 8
    marker_rate: float = 0.3
    marker_vocab_per_class: int = 20
    noise_vocab: int = 500
    timezone_mix: float = 0.8
    geo_mix: float = 0.3
    label_plant: Optional[Mapping[str, str]] = None
    decoy_rate: float = 0.0
    malformed_lines: int = 0
    weekend_token: Optional[str] = None
    weekday_token: Optional[str] = None

    def __post_init__(self):
        for name in ("marker_rate", "timezone_mix", "geo_mix", "decoy_rate"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {value}")
        if not self.locales:
            raise ValueError("need at least one locale")


def default_state_spec(gaz: Optional[geonorm.Gazetteer] = None, **overrides) -> SynthSpec:
    """51 state locales with a balanced above/below label plant."""
    gaz = gaz or geonorm.load_gazetteer()
    code_to_name = {}
    for phrase, code in gaz.state_names.items():
        if phrase not in gaz.abbrev_phrases:
            # keep the shortest full name (drops the "washington dc" style aliases)
            current = code_to_name.get(code)
            if current is None or len(phrase) < len(current):
                code_to_name[code] = phrase
    codes = sorted(gaz.state_regions)
    locales = tuple(
        LocaleSpec(
            code=code,
            location_raw=code_to_name[code].title(),
            timezone=gaz.state_default_tz.get(code, "Eastern Time (US & Canada)"),
        )
        for code in codes
    )
    labels = {code: ("above" if i % 2 == 0 else "below") for i, code in enumerate(codes)}
    params = {"locales": locales, "label_plant": labels}
    params.update(overrides)
    return SynthSpec(**params)


def default_city_spec(gaz: Optional[geonorm.Gazetteer] = None, **overrides) -> SynthSpec:
    """The 15 most populous cities, located as "City, ST"."""
    gaz = gaz or geonorm.load_gazetteer()
    locales = tuple(
        LocaleSpec(
            code=name,
            location_raw=f"{name}, {state}",
            timezone=gaz.city_tz_name[(name, state)],
        )
        for name, state in gaz.top_cities(15)
    )
    labels = {loc.code: ("above" if i % 2 == 0 else "below") for i, loc in enumerate(locales)}
    params = {"locales": locales, "label_plant": labels}
    params.update(overrides)
    return SynthSpec(**params)


def generate_synthetic_corpus(spec: SynthSpec, seed: int, out_path: str) -> dict:
    """Write a JSONL corpus with planted ground truth; returns the manifest.

    Every emitted record is also mirrored in the manifest: locale markers,
    class markers, noise vocabulary, geo boxes, planted labels, and the
    expected ingest accept count.
    """
    gaz = geonorm.load_gazetteer()
    rng = SplitMix64(seed)
    hashtags = sorted(DEFAULT_HASHTAG_FILTER)
    labels = dict(spec.label_plant or {})
    if not labels:
        labels = {loc.code: ("above" if i % 2 == 0 else "below")
                  for i, loc in enumerate(spec.locales)}

    locale_markers = {
        loc.code: [f"mkr_{i}_{j}" for j in range(spec.marker_vocab_per_class)]
        for i, loc in enumerate(spec.locales)
    }
    class_markers = {
        label: [f"cls_{label}_{j}" for j in range(spec.marker_vocab_per_class)]
        for label in sorted(set(labels.values()))
    }
    noise_tokens = [f"noise_{j}" for j in range(spec.noise_vocab)]

    geo_boxes = {}
    for i, loc in enumerate(spec.locales):
        lat0 = -55.0 + (i * 9) % 110
        lon0 = -170.0 + (i * 23) % 330
        geo_boxes[loc.code] = [lat0, lat0 + 2.0, lon0, lon0 + 2.0]

    base_ts = 1380672000  # corpus epoch; spacing walks through hours and weekdays
    step = 10007

    lines = 0
    accepts = 0
    decoys = 0
    with open(out_path, "w", encoding="utf-8") as fh:
        for i, loc in enumerate(spec.locales):
            markers = locale_markers[loc.code]
            cls_markers = class_markers[labels[loc.code]]
            # Noise tokens cycle round-robin per locale rather than being
            # sampled: shared "background" text is then exactly balanced
            # across locales, so a zero-marker corpus carries zero locale or
            # class signal (not merely low signal) and the no-signal controls
            # sit exactly at their baselines.
            noise_cursor = 0
            for j in range(spec.tweets_per_locale):
                created = base_ts + j * step + i
                tokens = []
                is_decoy = rng.uniform() < spec.decoy_rate
                if not is_decoy:
                    tokens.append(hashtags[j % len(hashtags)])
                for _slot in range(spec.tokens_per_tweet):
                    if rng.uniform() < spec.marker_rate:
                        pool = markers if rng.uniform() < 0.5 else cls_markers
                        tokens.append(pool[rng.randint(len(pool))])
                    else:
                        tokens.append(noise_tokens[noise_cursor % len(noise_tokens)])
                        noise_cursor += 1
                has_tz = rng.uniform() < spec.timezone_mix
                tz = loc.timezone if has_tz else None
                if has_tz and (spec.weekend_token or spec.weekday_token):
                    lt = geonorm.local_time(created, tz, gaz)
                    if lt is not None:
                        if lt.weekday >= 5 and spec.weekend_token:
                            tokens.append(spec.weekend_token)
                        elif lt.weekday < 5 and spec.weekday_token:
                            tokens.append(spec.weekday_token)
                geo = None
                if rng.uniform() < spec.geo_mix:
                    lat0, lat1, lon0, lon1 = geo_boxes[loc.code]
                    geo = [
                        round(lat0 + rng.uniform() * (lat1 - lat0), 6),
                        round(lon0 + rng.uniform() * (lon1 - lon0), 6),
                    ]
                record = {
                    "id": f"{i:02d}-{j:06d}",
                    "text": " ".join(tokens),
                    "created_at": created,
                    "user": {"location": loc.location_raw, "time_zone": tz},
                    "coordinates": geo,
                }
                fh.write(json.dumps(record, ensure_ascii=False) + "\n")
                lines += 1
                if is_decoy:
                    decoys += 1
                else:
                    accepts += 1
        for _ in range(spec.malformed_lines):
            fh.write("{this line is not json\n")
            lines += 1

    manifest = {
        "seed": seed,
        "tweets_per_locale": spec.tweets_per_locale,
        "tokens_per_tweet": spec.tokens_per_tweet,
        "marker_rate": spec.marker_rate,
        "locales": [
            {
                "code": loc.code,
                "location": loc.location_raw,
                "timezone": loc.timezone,
                "label": labels[loc.code],
                "geo_box": geo_boxes[loc.code],
            }
            for loc in spec.locales
        ],
        "labels": labels,
        "locale_markers": locale_markers,
        "class_markers": class_markers,
        "noise_tokens": noise_tokens,
        "hashtags": hashtags,
        "weekend_token": spec.weekend_token,
        "weekday_token": spec.weekday_token,
        "expected": {
            "lines": lines,
            "accepts": accepts,
            "decoys": decoys,
            "malformed": spec.malformed_lines,
        },
    }
    with open(out_path + ".manifest.json", "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, ensure_ascii=False, indent=1, sort_keys=True)
    return manifest


def labelset_from_manifest(manifest: Mapping, name: str = "synthetic") -> StateLabelSet:
    return StateLabelSet(name=name, labels=dict(manifest["labels"]), threshold_doc=0.0)
