import numpy as np
import pytest

from mealcorpus import topics
from mealcorpus.rng import SplitMix64


def planted_docs(n_docs=200, tokens_per_doc=12, seed=5):
    """Two disjoint 20-word vocabularies; each doc draws from exactly one."""
    vocab_a = [f"alpha{i}" for i in range(20)]
    vocab_b = [f"bravo{i}" for i in range(20)]
    rng = SplitMix64(seed)
    docs, sides = [], []
    for d in range(n_docs):
        side = d % 2
        pool = vocab_a if side == 0 else vocab_b
        docs.append([pool[rng.randint(len(pool))] for _ in range(tokens_per_doc)])
        sides.append(side)
    return docs, sides, vocab_a, vocab_b


def topic_purity(model, vocab_a, vocab_b, n=10):
    """Best-match purity of each topic's top-n words against the planted split."""
    tops = [
        [w for w, _ in topics.top_words(model, k, n)]
        for k in range(model.K)
    ]
    a, b = set(vocab_a), set(vocab_b)

    def frac(words, side):
        return sum(1 for w in words if w in side) / max(len(words), 1)

    direct = (frac(tops[0], a) + frac(tops[1], b)) / 2
    swapped = (frac(tops[0], b) + frac(tops[1], a)) / 2
    return max(direct, swapped)


class TestTrainLda:
    def test_single_topic_degenerate(self):
        docs = [["a", "b"], ["b", "c", "c"]]
        model = topics.train_lda(docs, K=1, iterations=3, seed=1)
        assert model.topic_totals.tolist() == [5]
        assert model.word_topic_counts[:, 0].sum() == 5

    def test_count_conservation_every_sweep(self):
        docs, _, _, _ = planted_docs(n_docs=40)
        total = sum(len(d) for d in docs)
        seen = []

        def audit(sweep, totals):
            seen.append(sweep)
            assert totals.sum() == total
            assert (totals >= 0).all()

        topics.train_lda(docs, K=3, iterations=8, seed=2, on_sweep=audit)
        assert seen == list(range(8))

    def test_word_distribution_normalizes(self):
        docs, _, _, _ = planted_docs(n_docs=60)
        model = topics.train_lda(docs, K=4, iterations=10, seed=3)
        V = len(model.vocab)
        for k in range(model.K):
            dist = (model.word_topic_counts[:, k] + model.beta) / (
                model.topic_totals[k] + V * model.beta
            )
            assert abs(dist.sum() - 1.0) < 1e-9

    def test_deterministic_given_seed(self):
        docs, _, _, _ = planted_docs(n_docs=50)
        m1 = topics.train_lda(docs, K=3, iterations=15, seed=9)
        m2 = topics.train_lda(docs, K=3, iterations=15, seed=9)
        assert np.array_equal(m1.word_topic_counts, m2.word_topic_counts)
        assert np.array_equal(m1.topic_totals, m2.topic_totals)

    def test_planted_topics_recovered(self):
        docs, _, vocab_a, vocab_b = planted_docs()
        model = topics.train_lda(docs, K=2, iterations=200, seed=7)
        assert topic_purity(model, vocab_a, vocab_b) >= 0.9

    def test_seed_permutes_labels_but_not_purity(self):
        docs, _, vocab_a, vocab_b = planted_docs()
        p1 = topic_purity(topics.train_lda(docs, K=2, iterations=200, seed=1), vocab_a, vocab_b)
        p2 = topic_purity(topics.train_lda(docs, K=2, iterations=200, seed=2), vocab_a, vocab_b)
        assert abs(p1 - p2) <= 0.05

    def test_empty_docs_error(self):
        with pytest.raises(ValueError):
            topics.train_lda([], K=2, iterations=1, seed=0)
        with pytest.raises(ValueError):
            topics.train_lda([[], []], K=2, iterations=1, seed=0)

    def test_k_above_token_count_warns(self):
        with pytest.warns(UserWarning, match="exceeds total token count"):
            topics.train_lda([["a", "b"]], K=5, iterations=2, seed=0)

    def test_invalid_params(self):
        with pytest.raises(ValueError):
            topics.train_lda([["a"]], K=0, iterations=1, seed=0)
        with pytest.raises(ValueError):
            topics.train_lda([["a"]], K=1, iterations=0, seed=0)


class TestInference:
    def test_single_topic_always_zero(self):
        model = topics.train_lda([["a", "b", "b"]], K=1, iterations=2, seed=0)
        assert topics.infer_top_topic(model, ["a", "b"], seed=4) == 0

    def test_planted_docs_recovered(self):
        docs, _, vocab_a, vocab_b = planted_docs()
        model = topics.train_lda(docs, K=2, iterations=200, seed=7)
        topic_a = topics.infer_top_topic(model, vocab_a[:8], fold_in_iterations=25, seed=1)
        rng = SplitMix64(31)
        fresh = [[vocab_a[rng.randint(20)] for _ in range(12)] for _ in range(100)]
        stream = SplitMix64(17)
        hits = sum(
            1 for doc in fresh
            if topics.infer_top_topic(model, doc, 25, seed=stream.next_u64()) == topic_a
        )
        assert hits >= 95

    def test_empty_doc_falls_back_to_largest_topic(self):
        docs, _, _, _ = planted_docs(n_docs=30)
        model = topics.train_lda(docs, K=3, iterations=10, seed=5)
        expected = int(np.argmax(model.topic_totals))
        assert topics.infer_top_topic(model, [], seed=8) == expected
        assert topics.infer_top_topic(model, ["notinvocab"], seed=8) == expected

    def test_assign_topics_covers_all(self):
        from mealcorpus.text import TokenizedTweet

        docs, _, _, _ = planted_docs(n_docs=20)
        model = topics.train_lda(docs, K=2, iterations=20, seed=1)
        tweets = [TokenizedTweet(str(i), tuple(d)) for i, d in enumerate(docs)]
        assigned = topics.assign_topics(model, tweets, seed=2)
        assert set(assigned) == {str(i) for i in range(20)}
        assert all(0 <= t < 2 for t in assigned.values())


class TestTopWords:
    def test_planted_top_words_from_planted_vocab(self):
        docs, _, vocab_a, vocab_b = planted_docs()
        model = topics.train_lda(docs, K=2, iterations=200, seed=7)
        union = set(vocab_a) | set(vocab_b)
        for k in range(2):
            for w, c in topics.top_words(model, k, 10):
                assert w in union
                assert c > 0

    def test_zero_and_overlong_n(self):
        model = topics.train_lda([["a", "a", "b"]], K=1, iterations=2, seed=0)
        assert topics.top_words(model, 0, 0) == []
        allw = topics.top_words(model, 0, 99)
        assert allw == [("a", 2), ("b", 1)]

    def test_tie_breaks_lexicographic(self):
        model = topics.train_lda([["zz", "aa"]], K=1, iterations=2, seed=0)
        assert topics.top_words(model, 0, 2) == [("aa", 1), ("zz", 1)]

    def test_out_of_range_topic(self):
        model = topics.train_lda([["a"]], K=1, iterations=1, seed=0)
        with pytest.raises(ValueError, match="out of range"):
            topics.top_words(model, 5, 3)


class TestPersistence:
    def test_roundtrip(self, tmp_path):
        docs, _, _, _ = planted_docs(n_docs=40)
        model = topics.train_lda(docs, K=3, iterations=10, seed=6)
        path = str(tmp_path / "model.bin")
        topics.save_model(model, path)
        loaded = topics.load_model(path)
        assert loaded.K == model.K
        assert loaded.alpha == model.alpha and loaded.beta == model.beta
        assert np.array_equal(loaded.word_topic_counts, model.word_topic_counts)
        assert np.array_equal(loaded.topic_totals, model.topic_totals)
        assert loaded.vocab.tokens == model.vocab.tokens
        sidecar = (tmp_path / "model.bin.topics.json")
        assert sidecar.exists()

    def test_bad_magic(self, tmp_path):
        path = tmp_path / "bad.bin"
        path.write_bytes(b"XXXX" + b"\x00" * 80)
        with pytest.raises(ValueError, match="magic"):
            topics.load_model(str(path))
