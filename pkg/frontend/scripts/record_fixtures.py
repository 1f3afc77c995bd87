"""Record API fixtures for the UI contract tests.

Builds the planted synthetic corpora with the primary package, starts the
query service in-process, captures endpoint bodies byte-for-byte, and writes
them plus the planted ground truth into tests/fixtures/.

Usage: python3 scripts/record_fixtures.py
"""

import json
import os
import tempfile
import threading
import urllib.request

from mealcorpus import corpus, gateway, geonorm, tasks

FIXTURE_DIR = os.path.join(os.path.dirname(__file__), "..", "tests", "fixtures")


def fetch(base, path):
    with urllib.request.urlopen(base + path) as resp:
        return resp.read()


def main():
    os.makedirs(FIXTURE_DIR, exist_ok=True)
    workdir = tempfile.mkdtemp(prefix="fixtures_")
    gaz = geonorm.load_gazetteer()

    # 51-state corpus: every state gets a top term; weekend/weekday plants
    # drive the histogram and cloud fixtures; geo boxes drive the heatmap.
    path = f"{workdir}/state.jsonl"
    spec = tasks.default_state_spec(
        gaz, tweets_per_locale=60, geo_mix=0.5,
        weekend_token="familytime", weekday_token="worktime",
    )
    manifest = tasks.generate_synthetic_corpus(spec, seed=7, out_path=path)
    snapshot = geonorm.annotate_snapshot(corpus.ingest_jsonl(path), gaz)

    result = tasks.run_locale_task(snapshot, "region4", tasks.TaskConfig(seed=7), gaz)
    runs_dir = f"{workdir}/runs"
    os.makedirs(runs_dir)
    with open(f"{runs_dir}/region-demo.json", "w") as fh:
        json.dump(result.to_json(), fh, sort_keys=True)

    state = gateway.build_service_state(snapshot, gaz=gaz, runs_dir=runs_dir, seed=7)
    server = gateway.create_server(state, port=0)
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    base = f"http://127.0.0.1:{server.server_address[1]}"

    heat_locale = manifest["locales"][42]  # TX
    heat_marker = manifest["locale_markers"][heat_locale["code"]][0]
    try:
        captures = {
            "terms_top.json": "/api/terms/top?vocab=all_words",
            "histogram_weekend.json":
                f"/api/histogram?phrase={manifest['weekend_token']}&granularity=weekday",
            "histogram_empty.json": "/api/histogram?phrase=zz_nomatch&granularity=hour",
            "heatmap_box.json": f"/api/heatmap?phrase={heat_marker}&cell=0.5",
            "heatmap_empty.json": "/api/heatmap?phrase=zz_nomatch&cell=1.0",
            "wordclouds.json": "/api/wordclouds?split=weekday_weekend&max_words=30",
            "runs_list.json": "/api/runs",
            "run_region.json": "/api/runs/region-demo",
        }
        for name, endpoint in captures.items():
            body = fetch(base, endpoint)
            with open(os.path.join(FIXTURE_DIR, name), "wb") as fh:
                fh.write(body)
            print(f"recorded {name} <- {endpoint}")
    finally:
        server.shutdown()
        server.server_close()
        thread.join(timeout=5)

    meta = {
        "heatmap_cell": 0.5,
        "heatmap_box": {
            "locale": heat_locale["code"],
            "lat0": heat_locale["geo_box"][0],
            "lat1": heat_locale["geo_box"][1],
            "lon0": heat_locale["geo_box"][2],
            "lon1": heat_locale["geo_box"][3],
        },
        "weekend_token": manifest["weekend_token"],
        "weekday_token": manifest["weekday_token"],
        "state_count": 51,
    }
    with open(os.path.join(FIXTURE_DIR, "meta.json"), "w") as fh:
        json.dump(meta, fh, indent=1, sort_keys=True)
    print("recorded meta.json")


if __name__ == "__main__":
    main()
