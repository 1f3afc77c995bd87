import json

import pytest

from mealcorpus import corpus, geonorm, tasks


@pytest.fixture(scope="session")
def gaz():
    return geonorm.load_gazetteer()


@pytest.fixture(scope="session")
def small_state_corpus(gaz, tmp_path_factory):
    """51 states x 60 tweets, marker rate 0.3, seed 7; normalized snapshot."""
    path = str(tmp_path_factory.mktemp("synth") / "state_small.jsonl")
    spec = tasks.default_state_spec(gaz, tweets_per_locale=60)
    manifest = tasks.generate_synthetic_corpus(spec, seed=7, out_path=path)
    snapshot = geonorm.annotate_snapshot(corpus.ingest_jsonl(path), gaz)
    return snapshot, manifest, path


@pytest.fixture(scope="session")
def city_corpus(gaz, tmp_path_factory):
    """15 cities x 60 tweets with weekend/weekday plants and geo boxes."""
    path = str(tmp_path_factory.mktemp("synth") / "city_small.jsonl")
    spec = tasks.default_city_spec(
        gaz,
        tweets_per_locale=60,
        marker_rate=0.5,
        geo_mix=0.5,
        weekend_token="familytime",
        weekday_token="worktime",
    )
    manifest = tasks.generate_synthetic_corpus(spec, seed=11, out_path=path)
    snapshot = geonorm.annotate_snapshot(corpus.ingest_jsonl(path), gaz)
    return snapshot, manifest, path


def load_manifest(path):
    with open(path + ".manifest.json", encoding="utf-8") as fh:
        return json.load(fh)
