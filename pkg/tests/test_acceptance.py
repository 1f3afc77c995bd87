"""Acceptance suite: one test per release criterion, tolerances pinned.

Run with `pytest tests/test_acceptance.py -v -s` to get one PASS line per
criterion.  Everything here exercises the library and the HTTP service only;
no frontend build is required.
"""

import itertools
import json
import math
import threading
import time
import urllib.error
import urllib.request
from collections import Counter

import numpy as np
import pytest
from scipy.optimize import minimize

from mealcorpus import (analytics, corpus, gateway, geonorm, learn, tasks,
                        text, topics)
from mealcorpus.rng import SplitMix64


def report(name, detail):
    print(f"\nACCEPTANCE {name}: PASS ({detail})")


@pytest.fixture(scope="module")
def default_corpus(gaz, tmp_path_factory):
    """The pinned planted corpus: 51 locales x 1000 tweets, marker 0.3, seed 7."""
    path = str(tmp_path_factory.mktemp("acc") / "default.jsonl")
    spec = tasks.default_state_spec(gaz)
    manifest = tasks.generate_synthetic_corpus(spec, seed=7, out_path=path)
    snapshot = geonorm.annotate_snapshot(corpus.ingest_jsonl(path), gaz)
    return snapshot, manifest


@pytest.fixture(scope="module")
def zero_marker_corpus(gaz, tmp_path_factory):
    path = str(tmp_path_factory.mktemp("acc0") / "zero.jsonl")
    spec = tasks.default_state_spec(gaz, marker_rate=0.0)
    manifest = tasks.generate_synthetic_corpus(spec, seed=7, out_path=path)
    snapshot = geonorm.annotate_snapshot(corpus.ingest_jsonl(path), gaz)
    return snapshot, manifest


@pytest.fixture(scope="module")
def medium_corpus(gaz, tmp_path_factory):
    """51 x 100 corpus for the conservation sweeps."""
    path = str(tmp_path_factory.mktemp("accm") / "medium.jsonl")
    spec = tasks.default_state_spec(
        gaz, tweets_per_locale=100, weekend_token="familytime", weekday_token="worktime"
    )
    manifest = tasks.generate_synthetic_corpus(spec, seed=7, out_path=path)
    snapshot = geonorm.annotate_snapshot(corpus.ingest_jsonl(path), gaz)
    return snapshot, manifest


def test_criterion_1_baseline_arithmetic(gaz):
    started = time.perf_counter()
    for name in ("overweight", "diabetes", "political"):
        labelset = tasks.load_labelset(name)
        majority = labelset.majority_label()
        share = sum(1 for v in labelset.labels.values() if v == majority) / 51
        assert share == 26 / 51
        assert abs(100 * share - 50.98) <= 0.01
    randoms = {"state51": 1 / 51, "city15": 1 / 15, "region4": 1 / 4}
    display = {"state51": 1.96, "city15": 6.67, "region4": 25.0}
    for level, expected in randoms.items():
        locales = tasks._expected_locales(level, gaz)
        assert 1 / len(locales) == expected
        assert round(100 / len(locales), 2) == display[level]
    elapsed = time.perf_counter() - started
    assert elapsed < 1.0
    report("1 baseline-arithmetic",
           f"majority 26/51 = 50.98%, randoms 1.96/6.67/25.00, {elapsed:.3f}s")


def test_criterion_2_planted_signal_recovery(gaz, default_corpus, zero_marker_corpus):
    started = time.perf_counter()
    snapshot, manifest = default_corpus
    labelset = tasks.labelset_from_manifest(manifest)
    config = tasks.TaskConfig(seed=7)

    locale_result = tasks.run_locale_task(snapshot, "state51", config, gaz)
    char_result = tasks.run_state_characteristic_task(snapshot, labelset, config, gaz)
    assert locale_result.accuracy >= 0.90
    assert char_result.accuracy >= 0.90
    assert locale_result.baseline_accuracy == 1 / 51
    assert char_result.baseline_accuracy == 26 / 51

    zero_snapshot, _ = zero_marker_corpus
    zero_locale = tasks.run_locale_task(zero_snapshot, "state51", config, gaz)
    zero_char = tasks.run_state_characteristic_task(zero_snapshot, labelset, config, gaz)
    assert abs(zero_locale.accuracy - zero_locale.baseline_accuracy) <= 0.10
    assert abs(zero_char.accuracy - zero_char.baseline_accuracy) <= 0.10

    elapsed = time.perf_counter() - started
    assert elapsed < 120.0
    report("2 planted-signal-recovery",
           f"locale {locale_result.accuracy:.2f} loocv {char_result.accuracy:.2f}; "
           f"zero-marker {zero_locale.accuracy:.4f}/{zero_char.accuracy:.4f} "
           f"vs baselines {zero_locale.baseline_accuracy:.4f}/{zero_char.baseline_accuracy:.4f}; "
           f"{elapsed:.1f}s")


def test_criterion_3_lda_recovery():
    started = time.perf_counter()
    vocab_a = [f"alpha{i}" for i in range(20)]
    vocab_b = [f"bravo{i}" for i in range(20)]
    rng = SplitMix64(5)
    docs = []
    for d in range(200):
        pool = vocab_a if d % 2 == 0 else vocab_b
        docs.append([pool[rng.randint(20)] for _ in range(12)])
    total_tokens = sum(len(d) for d in docs)

    conserved = []

    def audit(_sweep, totals):
        conserved.append(int(totals.sum()) == total_tokens)

    model = topics.train_lda(docs, K=2, iterations=200, seed=7, on_sweep=audit)
    assert len(conserved) == 200 and all(conserved)

    tops = [{w for w, _ in topics.top_words(model, k, 10)} for k in range(2)]
    a, b = set(vocab_a), set(vocab_b)
    purity = max(
        (len(tops[0] & a) / 10 + len(tops[1] & b) / 10) / 2,
        (len(tops[0] & b) / 10 + len(tops[1] & a) / 10) / 2,
    )
    assert purity >= 0.9

    degenerate = topics.train_lda(docs[:50], K=1, iterations=5, seed=7)
    assert degenerate.topic_totals.tolist() == [sum(len(d) for d in docs[:50])]
    assert (degenerate.word_topic_counts[:, 0] >= 0).all()

    elapsed = time.perf_counter() - started
    assert elapsed < 30.0
    report("3 lda-recovery",
           f"purity {purity:.2f}, conservation 200/200 sweeps, K=1 degenerate ok, {elapsed:.1f}s")


def _qp_oracle_objective(X, y, C):
    n, d = X.shape
    Xa = np.hstack([X, np.ones((n, 1))])
    obj = lambda z: 0.5 * z[: d + 1] @ z[: d + 1] + C * z[d + 1:].sum()
    jac = lambda z: np.concatenate([z[: d + 1], C * np.ones(n)])
    cons = [
        {"type": "ineq", "fun": lambda z: z[d + 1:]},
        {"type": "ineq", "fun": lambda z: y * (Xa @ z[: d + 1]) - 1 + z[d + 1:]},
    ]
    z0 = np.zeros(d + 1 + n)
    z0[d + 1:] = 1.0
    res = minimize(obj, z0, jac=jac, constraints=cons, method="SLSQP",
                   options={"maxiter": 500, "ftol": 1e-12})
    assert res.status == 0, res.message
    return res.fun


def test_criterion_4_svm_oracle():
    rng = np.random.default_rng(42)
    worst = 0.0
    for _ in range(10):
        X = rng.normal(size=(6, 3))
        y = np.where(rng.random(6) < 0.5, 1.0, -1.0)
        if len(set(y)) < 2:
            y[0] = -y[0]
        inst = [
            (learn.SparseVector({j: X[i, j] for j in range(3) if X[i, j] != 0}, 3), int(y[i]))
            for i in range(6)
        ]
        model = learn.train_binary_svm(inst, C=1.0)
        gap = abs(learn.primal_objective(model, inst) - _qp_oracle_objective(X, y, 1.0))
        worst = max(worst, gap)
        assert gap < 1e-4

    two_point = [
        (learn.SparseVector({0: 1.0}, 1), 1),
        (learn.SparseVector({0: -1.0}, 1), -1),
    ]
    model = learn.train_binary_svm(two_point, C=1.0)
    assert abs(model.weights[0] - 1.0) < 1e-6
    assert abs(model.bias) < 1e-6
    report("4 svm-oracle", f"worst objective gap {worst:.2e}, 2-point w=1 b=0")


def test_criterion_5_protocol_invariants(gaz, default_corpus):
    snapshot, manifest = default_corpus
    labelset = tasks.labelset_from_manifest(manifest)
    config = tasks.TaskConfig(seed=7)

    char_result = tasks.run_state_characteristic_task(snapshot, labelset, config, gaz)
    folds = char_result.audit["loocv_folds"]
    assert len(folds) == 51
    for fold in folds:
        assert fold["held_out"] not in fold["train_states"]
        assert len(fold["train_states"]) == 50

    locale_result = tasks.run_locale_task(snapshot, "state51", config, gaz)
    for locale, stamps in locale_result.audit["chronological_split"].items():
        assert stamps["max_train_ts"] <= stamps["min_test_ts"], locale

    pipeline = tasks.build_pipeline(snapshot, config, gaz)
    states = sorted(labelset.labels)
    for state in states[:5]:
        ids = [t.id for t in snapshot.tweets if snapshot.normalized[t.id].state == state]
        single = pipeline.featurize(ids)
        doubled = learn.featurize_group(
            [pipeline.docs_by_id[i] for i in ids] * 2, pipeline.vocab
        )
        assert single.entries == doubled.entries

    report("5 protocol-invariants",
           "51 LOOCV folds audited, chronological split holds, duplication-invariant features")


def test_criterion_6_bootstrap_calibration():
    gold = [f"s{i}" for i in range(51)]
    same = gold[:30] + ["x"] * 21
    assert tasks.bootstrap_significance(gold, same, list(same), 10000, 7) == 1.0
    assert tasks.bootstrap_significance(gold, list(gold), ["x"] * 51, 10000, 7) == 0.0
    p1 = tasks.bootstrap_significance(gold, gold[:40] + ["x"] * 11, gold[:26] + ["x"] * 25, 10000, 7)
    p2 = tasks.bootstrap_significance(gold, gold[:40] + ["x"] * 11, gold[:26] + ["x"] * 25, 10000, 7)
    assert p1 == p2
    assert (p1 * 10000) == int(p1 * 10000)
    report("6 bootstrap-calibration",
           f"identical p=1.0, dominance p=0.0, deterministic 10k-iteration p={p1:.4f}")


def test_criterion_7_tfidf_oracle_and_conservation(gaz, city_corpus, medium_corpus):
    # tf-idf against a from-scratch recount on a <= 1000 tweet corpus
    snapshot, _, _ = city_corpus
    assert len(snapshot) <= 1000
    lexicon = text.load_food_lexicon()
    cleaned = {t.id: text.standard_cleanup(t.text) for t in snapshot.tweets}
    pools: dict[str, list] = {}
    for t in snapshot.tweets:
        loc = snapshot.normalized.get(t.id)
        if loc is not None and cleaned[t.id]:
            pools.setdefault(loc.state, []).extend(cleaned[t.id])
    term_states: dict[str, set] = {}
    for state, toks in pools.items():
        for tok in set(toks):
            term_states.setdefault(tok, set()).add(state)
    mine = analytics.rank_terms_tfidf(snapshot, "all_words", lexicon)
    assert set(mine) == set(pools)
    for state, ts in mine.items():
        counts = Counter(pools[state])
        scored = sorted(
            ((tf * math.log(51 / len(term_states[term])), term, tf)
             for term, tf in counts.items()),
            key=lambda s: (-s[0], s[1]),
        )
        score, term, tf = scored[0]
        assert ts.term == term and ts.tf == tf
        assert ts.score == pytest.approx(score, rel=1e-12)

    # conservation sums for 100 random phrases on the synthetic corpus
    msnapshot, manifest = medium_corpus
    vocab_pool = (
        [tok for toks in manifest["locale_markers"].values() for tok in toks]
        + [tok for toks in manifest["class_markers"].values() for tok in toks]
        + manifest["noise_tokens"] + manifest["hashtags"]
        + [manifest["weekend_token"], manifest["weekday_token"]]
    )
    rng = SplitMix64(77)
    phrases = [vocab_pool[rng.randint(len(vocab_pool))] for _ in range(100)]
    mcleaned = {t.id: text.standard_cleanup(t.text) for t in msnapshot.tweets}
    tz_known = {
        t.id: geonorm.local_time(t.created_at, t.user_timezone, gaz) is not None
        for t in msnapshot.tweets
    }
    for phrase in phrases:
        hist = analytics.temporal_histogram(msnapshot, phrase, "hour", gaz)
        expected_hist = sum(
            1 for t in msnapshot.tweets if tz_known[t.id] and phrase in mcleaned[t.id]
        )
        assert sum(hist.bins) == hist.total == expected_hist
        grid = analytics.heatmap_bins(msnapshot, 1.0, phrase=phrase)
        expected_geo = sum(
            1 for t in msnapshot.tweets if t.geo is not None and phrase in mcleaned[t.id]
        )
        assert sum(grid.cells.values()) == expected_geo
    report("7 tfidf-oracle-and-conservation",
           f"exact tf-idf match on {len(snapshot)} tweets; 100-phrase conservation holds")


def test_criterion_8_wordcloud_layout():
    rng = SplitMix64(21)
    vocab = [f"word{i}" for i in range(80)]

    def overlap(a, b):
        return abs(a.x - b.x) < (a.width + b.width) / 2 and \
               abs(a.y - b.y) < (a.height + b.height) / 2

    checked = 0
    for trial in range(20):
        group_a = [[vocab[rng.randint(80)] for _ in range(10)] for _ in range(25)]
        group_b = [[vocab[rng.randint(80)] for _ in range(10)] for _ in range(25)]
        la, lb = analytics.parallel_wordclouds(group_a, group_b, max_words=30, seed=trial)
        for layout in (la, lb):
            words = layout.words
            for i in range(len(words)):
                for j in range(i + 1, len(words)):
                    assert not overlap(words[i], words[j])
        shared_a = {w.word: (w.x, w.y) for w in la.words if w.color_class == "shared"}
        shared_b = {w.word: (w.x, w.y) for w in lb.words if w.color_class == "shared"}
        assert shared_a == shared_b
        checked += 1
    report("8 wordcloud-layout", f"{checked} random pairs: no overlap, shared coords equal")


def test_criterion_9_gateway_contract(gaz, city_corpus, tmp_path):
    snapshot, manifest, _ = city_corpus
    docs = text.filtered_corpus(snapshot, gaz)
    model = topics.train_lda(
        [d.tokens for d in docs if d.tokens], K=3, iterations=10, seed=5,
        vocab=text.build_vocabulary(docs, "all_words"),
    )
    result = tasks.run_locale_task(snapshot, "city15", tasks.TaskConfig(seed=7), gaz)
    runs_dir = tmp_path / "runs"
    runs_dir.mkdir()
    (runs_dir / "r1.json").write_text(json.dumps(result.to_json()))

    state = gateway.build_service_state(
        snapshot, gaz=gaz, model=model, runs_dir=str(runs_dir), seed=7
    )
    server = gateway.create_server(state, port=0)
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    base = f"http://127.0.0.1:{server.server_address[1]}"

    def fetch(path):
        try:
            with urllib.request.urlopen(base + path) as resp:
                return resp.status, resp.read()
        except urllib.error.HTTPError as err:
            return err.code, err.read()

    try:
        marker = manifest["locale_markers"][manifest["locales"][0]["code"]][0]
        group_a, group_b = gateway.weekday_weekend_groups(state)
        wa, wb = analytics.parallel_wordclouds(group_a, group_b, 25, seed=7)
        expectations = {
            "/api/stats": corpus.corpus_stats(snapshot).as_dict(),
            "/api/terms/top?vocab=all_words": analytics.term_map_json(
                analytics.rank_terms_tfidf(snapshot, "all_words")),
            f"/api/histogram?phrase={marker}&granularity=weekday": analytics.histogram_json(
                analytics.temporal_histogram(snapshot, marker, "weekday", gaz)),
            f"/api/heatmap?phrase={marker}&cell=0.5": analytics.grid_json(
                analytics.heatmap_bins(snapshot, 0.5, phrase=marker)),
            "/api/heatmap?topic=0&cell=1.0": analytics.grid_json(
                analytics.heatmap_bins(snapshot, 1.0, topic=0,
                                       topic_assignments=state.topic_assignments,
                                       topic_count=3)),
            "/api/wordclouds?split=weekday_weekend&max_words=25":
                analytics.layouts_json(wa, wb),
            "/api/topics/0/top_words?n=5": {
                "topic": 0,
                "words": [[w, c] for w, c in topics.top_words(model, 0, 5)],
            },
            "/api/runs": {"runs": ["r1"]},
            "/api/runs/r1": result.to_json(),
        }
        matched = 0
        for path, expected in expectations.items():
            status, body = fetch(path)
            assert status == 200, path
            assert body == gateway.canonical_json(expected), path
            matched += 1
        for path in [
            "/api/heatmap?phrase=x&cell=2.0",
            "/api/histogram?phrase=x&granularity=eternity",
            "/api/terms/top?vocab=nope",
            "/api/wordclouds?max_words=-3",
        ]:
            status, _ = fetch(path)
            assert status == 400, path
    finally:
        server.shutdown()
        server.server_close()
        thread.join(timeout=5)
    report("9 gateway-contract", f"{matched} endpoints byte-equal, invalid params 400")
