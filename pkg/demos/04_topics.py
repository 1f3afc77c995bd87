"""Train an LDA topic model on documents with two planted themes.

Half the documents draw words from a 'bakery' vocabulary, half from a
'seafood' vocabulary.  Collapsed Gibbs sampling with K=2 should split the
vocabulary cleanly, and fold-in inference should route new documents to the
matching topic.
"""

from mealcorpus import topics
from mealcorpus.rng import SplitMix64

bakery = ["croissant", "baguette", "sourdough", "brioche", "muffin",
          "scone", "danish", "pretzel", "rye", "ciabatta"]
seafood = ["salmon", "oyster", "mussel", "scallop", "halibut",
           "crab", "lobster", "sardine", "squid", "trout"]

rng = SplitMix64(3)
docs = []
for d in range(300):
    pool = bakery if d % 2 == 0 else seafood
    docs.append([pool[rng.randint(len(pool))] for _ in range(10)])

model = topics.train_lda(docs, K=2, iterations=300, seed=1)
for k in range(model.K):
    words = ", ".join(w for w, _ in topics.top_words(model, k, 6))
    share = model.topic_totals[k] / model.topic_totals.sum()
    print(f"topic {k} ({share:.0%} of tokens): {words}")

fresh = [
    ["croissant", "muffin", "brioche", "scone"],
    ["salmon", "crab", "squid"],
    ["sourdough", "oyster", "baguette", "rye"],  # mixed leaning bakery
]
for doc in fresh:
    topic = topics.infer_top_topic(model, doc, fold_in_iterations=25, seed=9)
    print(f"{' '.join(doc):<40} -> topic {topic}")
