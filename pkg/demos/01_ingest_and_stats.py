"""Ingest a synthetic meal-post corpus and look at what arrived.

Generates a small planted corpus (8 meal hashtags, decoys, a few malformed
lines), runs it through the hashtag filter, and prints the manifest plus
corpus statistics.
"""

import tempfile

from mealcorpus import corpus, geonorm, tasks

workdir = tempfile.mkdtemp(prefix="mealcorpus_demo_")
path = f"{workdir}/corpus.jsonl"

gaz = geonorm.load_gazetteer()
spec = tasks.default_state_spec(gaz, tweets_per_locale=50, decoy_rate=0.1, malformed_lines=5)
manifest = tasks.generate_synthetic_corpus(spec, seed=7, out_path=path)
print("generator expected:", manifest["expected"])

snapshot = corpus.ingest_jsonl(path)
print("ingest manifest:   ", dict(snapshot.ingest_manifest))

snapshot = geonorm.annotate_snapshot(snapshot, gaz)
print(f"normalized {len(snapshot.normalized)} of {len(snapshot)} tweets to a US state")

stats = corpus.corpus_stats(snapshot)
print(f"tweets: {stats.tweet_count}")
print(f"mean tokens per tweet: {stats.mean_tokens_per_tweet:.1f}")
print(f"unique tokens: {stats.unique_token_count}")
print(f"timezone coverage: {stats.timezone_fraction:.0%}, geotag coverage: {stats.geo_fraction:.0%}")

# every accepted tweet matched at least one meal hashtag
sample = snapshot.tweets[0]
print("example tweet:", sample.text[:60], "... matched:", sorted(sample.matched_hashtags))
