import numpy as np
import pytest
from scipy.optimize import minimize

from mealcorpus import learn
from mealcorpus.text import TokenizedTweet, Vocabulary


def sv(entries, dim):
    return learn.SparseVector(entries=entries, dimension=dim)


def qp_oracle_objective(X, y, C):
    """Primal slack-variable QP solved by SLSQP.

    Independent of the trainer's dual coordinate descent: same formulation
    (bias penalized via an always-1 feature), different optimizer and
    parameterization.
    """
    n, d = X.shape
    Xa = np.hstack([X, np.ones((n, 1))])

    def obj(z):
        wb, xi = z[: d + 1], z[d + 1:]
        return 0.5 * wb @ wb + C * xi.sum()

    def jac(z):
        return np.concatenate([z[: d + 1], C * np.ones(n)])

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


class TestFeaturize:
    VOCAB = Vocabulary(mode="all_words", id_of={"night": 0, "pizza": 1}, tokens=("night", "pizza"))

    def test_counts_scaled_by_group_size(self):
        tweets = [
            TokenizedTweet("a", ("pizza", "pizza")),
            TokenizedTweet("b", ("pizza",)),
        ]
        vec = learn.featurize_group(tweets, self.VOCAB)
        assert vec.entries == {1: 1.5}
        assert vec.dimension == 2

    def test_duplicating_group_leaves_vector_unchanged(self):
        tweets = [
            TokenizedTweet("a", ("pizza", "night")),
            TokenizedTweet("b", ("pizza",)),
        ]
        once = learn.featurize_group(tweets, self.VOCAB)
        doubled = learn.featurize_group(
            tweets + [TokenizedTweet(t.tweet_id + "x", t.tokens) for t in tweets], self.VOCAB
        )
        assert once.entries == doubled.entries

    def test_topic_features_counted_per_tweet(self):
        tweets = [TokenizedTweet("a", ("pizza",)), TokenizedTweet("b", ())]
        vec = learn.featurize_group(
            tweets, self.VOCAB, topic_assignments={"a": 7, "b": 7}, topic_count=10
        )
        assert vec.entries[2 + 7] == 1.0  # both tweets assigned topic 7
        assert vec.dimension == 12

    def test_empty_group_errors(self):
        with pytest.raises(ValueError, match="empty group"):
            learn.featurize_group([], self.VOCAB)

    def test_missing_assignment_errors(self):
        tweets = [TokenizedTweet("a", ("pizza",))]
        with pytest.raises(ValueError, match="no topic assignment"):
            learn.featurize_group(tweets, self.VOCAB, topic_assignments={}, topic_count=3)

    def test_oov_tokens_ignored(self):
        tweets = [TokenizedTweet("a", ("pizza", "zzz-not-in-vocab"))]
        vec = learn.featurize_group(tweets, self.VOCAB)
        assert vec.entries == {1: 1.0}


class TestSparseVector:
    def test_rejects_zero_values(self):
        with pytest.raises(ValueError, match="zero"):
            sv({0: 0.0}, 2)

    def test_rejects_out_of_range_ids(self):
        with pytest.raises(ValueError, match="outside dimension"):
            sv({5: 1.0}, 2)


class TestBinarySvm:
    def test_two_point_analytic_optimum(self):
        inst = [(sv({0: 1.0}, 1), 1), (sv({0: -1.0}, 1), -1)]
        model = learn.train_binary_svm(inst, C=1.0)
        assert abs(model.weights[0] - 1.0) < 1e-6
        assert abs(model.bias) < 1e-6
        assert model.predict(sv({0: 1.0}, 1)) == 1

    def test_label_flip_symmetry(self):
        rng = np.random.default_rng(0)
        inst = [
            (sv({j: float(rng.normal()) for j in range(3)}, 3), int(y))
            for y in [1, 1, -1, -1, 1, -1]
        ]
        flipped = [(x, -y) for x, y in inst]
        m1 = learn.train_binary_svm(inst)
        m2 = learn.train_binary_svm(flipped)
        assert np.allclose(m1.weights, -m2.weights, atol=1e-8)
        assert abs(m1.bias + m2.bias) < 1e-8

    def test_degenerate_labels_error(self):
        with pytest.raises(ValueError, match="degenerate labels"):
            learn.train_binary_svm([(sv({0: 1.0}, 1), 1), (sv({0: 2.0}, 1), 1)])

    def test_objective_matches_qp_oracle(self):
        rng = np.random.default_rng(42)
        for _ in range(10):
            X = rng.normal(size=(6, 3))
            y = np.where(rng.random(6) < 0.5, 1.0, -1.0)
            if len(set(y)) < 2:
                y[0] = -y[0]
            inst = [
                (sv({j: X[i, j] for j in range(3) if X[i, j] != 0}, 3), int(y[i]))
                for i in range(6)
            ]
            model = learn.train_binary_svm(inst, C=1.0)
            mine = learn.primal_objective(model, inst)
            oracle = qp_oracle_objective(X, y, 1.0)
            assert abs(mine - oracle) < 1e-4

    def test_dual_feasibility(self):
        rng = np.random.default_rng(3)
        X = rng.normal(size=(8, 4))
        inst = [
            (sv({j: X[i, j] for j in range(4)}, 4), 1 if i % 2 == 0 else -1)
            for i in range(8)
        ]
        model = learn.train_binary_svm(inst, C=1.0)
        alphas = model.diagnostics["alphas"]
        assert (alphas >= -1e-12).all() and (alphas <= 1.0 + 1e-12).all()

    def test_margin_on_separable_data(self):
        rng = np.random.default_rng(4)
        inst = []
        for i in range(10):
            offset = 3.0 if i % 2 == 0 else -3.0
            x = {j: float(rng.normal() + offset) for j in range(2)}
            inst.append((sv(x, 2), 1 if i % 2 == 0 else -1))
        model = learn.train_binary_svm(inst, C=1.0)
        for x, y in inst:
            assert y * model.decision(x) >= 1 - 1e-3

    def test_feature_permutation_equivariance(self):
        rng = np.random.default_rng(5)
        X = rng.normal(size=(6, 4))
        y = [1, -1, 1, -1, 1, -1]
        perm = [2, 0, 3, 1]
        inst = [(sv({j: X[i, j] for j in range(4)}, 4), y[i]) for i in range(6)]
        pinst = [
            (sv({perm[j]: X[i, j] for j in range(4)}, 4), y[i]) for i in range(6)
        ]
        m = learn.train_binary_svm(inst)
        pm = learn.train_binary_svm(pinst)
        for j in range(4):
            assert abs(m.weights[j] - pm.weights[perm[j]]) < 1e-10
        assert abs(m.bias - pm.bias) < 1e-10

    def test_deterministic(self):
        rng = np.random.default_rng(6)
        X = rng.normal(size=(6, 3))
        inst = [(sv({j: X[i, j] for j in range(3)}, 3), 1 if i < 3 else -1) for i in range(6)]
        m1 = learn.train_binary_svm(inst)
        m2 = learn.train_binary_svm(inst)
        assert np.array_equal(m1.weights, m2.weights) and m1.bias == m2.bias

    def test_invalid_c(self):
        with pytest.raises(ValueError, match="C must be positive"):
            learn.train_binary_svm([(sv({0: 1.0}, 1), 1), (sv({0: -1.0}, 1), -1)], C=0)


def separable_three_class(n_per=5, dim=6, seed=8):
    rng = np.random.default_rng(seed)
    instances, labels = [], []
    for c, cls in enumerate(["ant", "bee", "cat"]):
        for _ in range(n_per):
            x = {c * 2: 5.0 + float(rng.normal()), c * 2 + 1: 5.0 + float(rng.normal())}
            instances.append(sv(x, dim))
            labels.append(cls)
    return instances, labels


class TestOvrSvm:
    def test_separable_classes_perfect_train_accuracy(self):
        instances, labels = separable_three_class()
        model = learn.train_ovr_svm(instances, labels)
        preds = [model.predict(x) for x in instances]
        assert preds == labels

    def test_two_class_agrees_with_binary_sign(self):
        rng = np.random.default_rng(9)
        X = rng.normal(size=(10, 3))
        labels = ["pos" if i % 2 == 0 else "neg" for i in range(10)]
        instances = [sv({j: X[i, j] for j in range(3)}, 3) for i in range(10)]
        ovr = learn.train_ovr_svm(instances, labels)
        binary = learn.train_binary_svm(
            [(x, 1 if lbl == "pos" else -1) for x, lbl in zip(instances, labels)]
        )
        for x in instances:
            assert ovr.predict(x) == ("pos" if binary.predict(x) == 1 else "neg")

    def test_training_vector_recalled(self):
        instances, labels = separable_three_class()
        model = learn.train_ovr_svm(instances, labels)
        assert model.predict(instances[0]) == labels[0]

    def test_needs_two_classes(self):
        with pytest.raises(ValueError, match="2 distinct classes"):
            learn.train_ovr_svm([sv({0: 1.0}, 1)] * 3, ["same"] * 3)

    def test_shared_feature_hash(self):
        instances, labels = separable_three_class()
        model = learn.train_ovr_svm(instances, labels, feature_hash="abc123")
        assert {m.feature_space_hash for m in model.models} == {"abc123"}


class TestIntrospection:
    def make_model(self, weights):
        return learn.LinearModel(weights=np.array(weights), bias=0.0, C=1.0)

    VOCAB = Vocabulary(mode="all_words", id_of={"a": 0, "b": 1, "c": 2}, tokens=("a", "b", "c"))

    def test_top_positive(self):
        model = self.make_model([2.0, -3.0, 1.0])
        top = learn.top_weighted_features(model, "+", 2, self.VOCAB)
        assert [f.name for f in top] == ["a", "c"]
        assert [f.weight for f in top] == [2.0, 1.0]

    def test_top_negative(self):
        model = self.make_model([2.0, -3.0, 1.0])
        top = learn.top_weighted_features(model, "-", 1, self.VOCAB)
        assert [f.name for f in top] == ["b"]

    def test_truncated_when_fewer_qualify(self):
        model = self.make_model([2.0, 0.0, 0.0])
        assert len(learn.top_weighted_features(model, "+", 5, self.VOCAB)) == 1
        assert learn.top_weighted_features(model, "-", 5, self.VOCAB) == []

    def test_topic_features_rendered_with_words(self):
        vocab = Vocabulary(mode="all_words", id_of={"a": 0}, tokens=("a",))
        model = learn.LinearModel(weights=np.array([0.5, 2.0]), bias=0.0, C=1.0)
        top = learn.top_weighted_features(
            model, "+", 2, vocab, topic_names={0: ["chicken", "baked", "beans", "fried"]}
        )
        assert top[0].name == "topic_0 (chicken, baked, beans)"
        assert top[1].name == "a"

    def test_invalid_sign(self):
        with pytest.raises(ValueError, match="sign"):
            learn.top_weighted_features(self.make_model([1.0, 0, 0]), "x", 1, self.VOCAB)

    def test_export_shape(self):
        instances, labels = separable_three_class()
        model = learn.train_ovr_svm(instances, labels, feature_hash="h")
        dump = learn.export_model(model)
        assert dump["classes"] == ["ant", "bee", "cat"]
        assert dump["C"] == 1.0 and dump["feature_space_hash"] == "h"
        for cls in dump["classes"]:
            assert "weights" in dump["models"][cls] and "bias" in dump["models"][cls]
