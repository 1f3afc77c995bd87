"""Identify which of the 15 largest US cities a pool of tweets came from.

Tweets split 80/20 chronologically inside each city (training always earlier
than test), a one-against-many SVM classifies the test pools, and a learning
curve shows accuracy collapsing toward the 1/15 random baseline as data
shrinks.
"""

import tempfile

from mealcorpus import corpus, geonorm, tasks

workdir = tempfile.mkdtemp(prefix="mealcorpus_demo_")
path = f"{workdir}/corpus.jsonl"

gaz = geonorm.load_gazetteer()
spec = tasks.default_city_spec(gaz, tweets_per_locale=80, marker_rate=0.4)
tasks.generate_synthetic_corpus(spec, seed=11, out_path=path)
snapshot = geonorm.annotate_snapshot(corpus.ingest_jsonl(path), gaz)

config = tasks.TaskConfig(seed=11)
result = tasks.run_locale_task(snapshot, "city15", config, gaz)
print(f"city accuracy {result.accuracy:.4f} vs random baseline {result.baseline_accuracy:.4f}")
for r in result.per_instance[:5]:
    print(f"  {r['gold']:<16} -> {r['predicted']}")

fractions = [0.25, 0.5, 1.0]
grid = tasks.learning_curve(snapshot, "city15", config, fractions, gaz)
print("\nlearning curve (rows: train fraction, cols: test fraction)")
print("        " + "".join(f"{f:>8.2f}" for f in fractions))
for frac, row in zip(fractions, grid):
    print(f"{frac:>8.2f}" + "".join(f"{acc:>8.3f}" for acc in row))

region = tasks.run_locale_task(snapshot, "region4", config, gaz)
print(f"\nregion accuracy {region.accuracy:.2f} vs baseline {region.baseline_accuracy:.2f}")
