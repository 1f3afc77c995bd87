"""The four exploratory queries behind the visualization tools.

A synthetic corpus plants a weekend-only and a weekday-only token plus
per-locale geo boxes, then we pull: the most distinctive term per state
(tf-idf over state pools), a weekday histogram, heatmap grid cells, and the
parallel word-cloud layouts with their shared-position guarantee.
"""

import tempfile

from mealcorpus import analytics, corpus, gateway, geonorm, tasks, text

workdir = tempfile.mkdtemp(prefix="mealcorpus_demo_")
path = f"{workdir}/corpus.jsonl"

gaz = geonorm.load_gazetteer()
spec = tasks.default_state_spec(
    gaz, tweets_per_locale=40, weekend_token="familytime", weekday_token="worktime",
    geo_mix=0.5,
)
manifest = tasks.generate_synthetic_corpus(spec, seed=5, out_path=path)
snapshot = geonorm.annotate_snapshot(corpus.ingest_jsonl(path), gaz)

print("== most distinctive term per state (first 6) ==")
terms = analytics.rank_terms_tfidf(snapshot, "all_words")
for state in sorted(terms)[:6]:
    ts = terms[state]
    print(f"  {state}: {ts.term:<12} score {ts.score:7.2f} (tf {ts.tf}, in {ts.df} states)")

print("\n== weekday histogram for the weekend-planted token ==")
hist = analytics.temporal_histogram(snapshot, "familytime", "weekday", gaz)
days = ["Mon", "Tue", "Wed", "Thu", "Fri", "Sat", "Sun"]
peak = max(hist.bins) or 1
for day, count in zip(days, hist.bins):
    print(f"  {day} {count:>5}  {'#' * (40 * count // peak)}")

print("\n== heatmap cells for one locale's marker token ==")
marker = manifest["locale_markers"]["TX"][0]
grid = analytics.heatmap_bins(snapshot, 1.0, phrase=marker)
box = manifest["locales"][[l["code"] for l in manifest["locales"]].index("TX")]["geo_box"]
print(f"  planted box lat {box[0]}..{box[1]}, lon {box[2]}..{box[3]}")
for (lat, lon), count in sorted(grid.cells.items()):
    print(f"  cell ({lat:>4}, {lon:>4}): {count}")

print("\n== parallel word clouds: weekday vs weekend tweets ==")
state = gateway.build_service_state(snapshot, gaz=gaz)
group_a, group_b = gateway.weekday_weekend_groups(state)
cloud_a, cloud_b = analytics.parallel_wordclouds(group_a, group_b, max_words=12, seed=5)
pos_b = {w.word: w for w in cloud_b.words}
for w in cloud_a.words:
    note = ""
    if w.color_class == "shared":
        other = pos_b[w.word]
        note = f"(same spot in both clouds: {other.x == w.x and other.y == w.y})"
    print(f"  {w.word:<14} {w.color_class:<8} at ({w.x:7.1f}, {w.y:7.1f}) {note}")
print("  weekend-only words:",
      [w.word for w in cloud_b.words if w.color_class == "group_b"])
