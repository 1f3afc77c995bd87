"""Command-line entry point and the read-only HTTP query service.

The CLI owns everything that writes artifacts (ingest, normalize, synth,
LDA training, task runs); the HTTP service only reads a loaded snapshot, so
any number of concurrent requests can be served from the same immutable
state.  Every API response is the canonical JSON (sorted keys, compact
separators) of the corresponding library call, byte for byte.
"""

from __future__ import annotations

import argparse
import json
import mimetypes
import os
import sys
import threading
from dataclasses import dataclass, field
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from typing import Optional
from urllib.parse import parse_qs, urlparse

from . import analytics, corpus, geonorm, tasks, text, topics

MAX_RESPONSE_BYTES = 10 * 1024 * 1024

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2


def canonical_json(obj) -> bytes:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False).encode("utf-8")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# ---------------------------------------------------------------------------
# Service state and HTTP handler
# ---------------------------------------------------------------------------

@dataclass
class ServiceState:
    snapshot: corpus.CorpusSnapshot
    gaz: geonorm.Gazetteer
    topic_model: Optional[topics.TopicModel] = None
    topic_assignments: Optional[dict[str, int]] = None
    task_results: dict[str, dict] = field(default_factory=dict)
    filtered_docs: list = field(default_factory=list)
    cors: bool = False
    ui_dir: Optional[str] = None
    seed: int = 7


def build_service_state(
    snapshot: corpus.CorpusSnapshot,
    gaz: Optional[geonorm.Gazetteer] = None,
    model: Optional[topics.TopicModel] = None,
    runs_dir: Optional[str] = None,
    cors: bool = False,
    ui_dir: Optional[str] = None,
    seed: int = 7,
) -> ServiceState:
    gaz = gaz or geonorm.load_gazetteer()
    filtered = text.filtered_corpus(snapshot, gaz)
    assignments = None
    if model is not None:
        assignments = topics.assign_topics(model, filtered, seed=seed)
    results = {}
    if runs_dir and os.path.isdir(runs_dir):
        for name in sorted(os.listdir(runs_dir)):
            if name.endswith(".json"):
                with open(os.path.join(runs_dir, name), encoding="utf-8") as fh:
                    results[name[: -len(".json")]] = json.load(fh)
    return ServiceState(
        snapshot=snapshot, gaz=gaz, topic_model=model,
        topic_assignments=assignments, task_results=results,
        filtered_docs=filtered, cors=cors, ui_dir=ui_dir, seed=seed,
    )


class _BadRequest(Exception):
    pass


def _one(params: dict, key: str, default=None):
    values = params.get(key)
    if not values:
        return default
    return values[0]


def _api_response(state: ServiceState, path: str, params: dict):
    """Dispatch an /api path to the library; returns a JSON-able object."""
    if path == "/api/stats":
        return corpus.corpus_stats(state.snapshot).as_dict()

    if path == "/api/terms/top":
        vocab = _one(params, "vocab", "food")
        if vocab not in text.FEATURE_MODES:
            raise _BadRequest(f"vocab must be one of {list(text.FEATURE_MODES)}")
        return analytics.term_map_json(analytics.rank_terms_tfidf(state.snapshot, vocab))

    if path == "/api/histogram":
        phrase = _one(params, "phrase")
        granularity = _one(params, "granularity", "hour")
        if not phrase:
            raise _BadRequest("phrase is required")
        if granularity not in analytics.GRANULARITIES:
            raise _BadRequest(f"granularity must be one of {sorted(analytics.GRANULARITIES)}")
        try:
            hist = analytics.temporal_histogram(state.snapshot, phrase, granularity, state.gaz)
        except ValueError as exc:
            raise _BadRequest(str(exc)) from None
        return analytics.histogram_json(hist)

    if path == "/api/heatmap":
        phrase = _one(params, "phrase")
        topic_raw = _one(params, "topic")
        cell_raw = _one(params, "cell", "1.0")
        try:
            cell = float(cell_raw)
        except ValueError:
            raise _BadRequest("cell must be a number") from None
        topic = None
        if topic_raw is not None:
            try:
                topic = int(topic_raw)
            except ValueError:
                raise _BadRequest("topic must be an integer") from None
            if state.topic_model is None:
                raise _BadRequest("no topic model loaded")
        try:
            grid = analytics.heatmap_bins(
                state.snapshot, cell, phrase=phrase, topic=topic,
                topic_assignments=state.topic_assignments,
                topic_count=state.topic_model.K if state.topic_model else None,
            )
        except ValueError as exc:
            raise _BadRequest(str(exc)) from None
        return analytics.grid_json(grid)

    if path == "/api/wordclouds":
        split = _one(params, "split", "weekday_weekend")
        if split != "weekday_weekend":
            raise _BadRequest("split must be weekday_weekend")
        try:
            max_words = int(_one(params, "max_words", "50"))
        except ValueError:
            raise _BadRequest("max_words must be an integer") from None
        if not 1 <= max_words <= 200:
            raise _BadRequest("max_words must lie in [1, 200]")
        group_a, group_b = weekday_weekend_groups(state)
        try:
            layout_a, layout_b = analytics.parallel_wordclouds(
                group_a, group_b, max_words, seed=state.seed
            )
        except ValueError as exc:
            raise _BadRequest(str(exc)) from None
        return analytics.layouts_json(layout_a, layout_b)

    if path == "/api/runs":
        return {"runs": sorted(state.task_results)}

    if path.startswith("/api/runs/"):
        run_id = path[len("/api/runs/"):]
        if run_id not in state.task_results:
            return None
        return state.task_results[run_id]

    if path.startswith("/api/topics/") and path.endswith("/top_words"):
        if state.topic_model is None:
            return None
        raw = path[len("/api/topics/"): -len("/top_words")]
        try:
            topic = int(raw)
        except ValueError:
            raise _BadRequest("topic id must be an integer") from None
        if not 0 <= topic < state.topic_model.K:
            return None
        try:
            n = int(_one(params, "n", "20"))
        except ValueError:
            raise _BadRequest("n must be an integer") from None
        words = topics.top_words(state.topic_model, topic, n)
        return {"topic": topic, "words": [[w, c] for w, c in words]}

    return None


def weekday_weekend_groups(state: ServiceState):
    """Filtered token lists split by author-local weekday vs weekend."""
    weekday, weekend = [], []
    by_id = {d.tweet_id: d for d in state.filtered_docs}
    for t in state.snapshot.tweets:
        local = geonorm.local_time(t.created_at, t.user_timezone, state.gaz)
        if local is None:
            continue
        tokens = by_id[t.id].tokens
        if not tokens:
            continue
        (weekend if local.weekday >= 5 else weekday).append(list(tokens))
    return weekday, weekend


class _Handler(BaseHTTPRequestHandler):
    state: ServiceState = None  # set by create_server

    def log_message(self, fmt, *args):  # tests and scripted runs stay quiet
        pass

    def _send(self, status: int, body: bytes, content_type: str = "application/json"):
        self.send_response(status)
        self.send_header("Content-Type", content_type)
        self.send_header("Content-Length", str(len(body)))
        if self.state.cors:
            self.send_header("Access-Control-Allow-Origin", "*")
        self.end_headers()
        self.wfile.write(body)

    def _send_json(self, status: int, obj):
        body = canonical_json(obj)
        if len(body) > MAX_RESPONSE_BYTES:
            self._send(413, canonical_json({"error": "response exceeds 10 MB"}))
            return
        self._send(status, body)

    def do_GET(self):
        parsed = urlparse(self.path)
        path = parsed.path.rstrip("/") if parsed.path != "/" else "/"
        params = parse_qs(parsed.query)
        if path.startswith("/api"):
            try:
                result = _api_response(self.state, path, params)
            except _BadRequest as exc:
                self._send_json(400, {"error": str(exc)})
                return
            if result is None:
                self._send_json(404, {"error": "not found"})
                return
            self._send_json(200, result)
            return
        self._serve_static(path)

    def _serve_static(self, path: str):
        if self.state.ui_dir is None:
            self._send_json(404, {"error": "not found"})
            return
        rel = "index.html" if path == "/" else path.lstrip("/")
        full = os.path.realpath(os.path.join(self.state.ui_dir, rel))
        root = os.path.realpath(self.state.ui_dir)
        if not full.startswith(root + os.sep) and full != root:
            self._send_json(404, {"error": "not found"})
            return
        if not os.path.isfile(full):
            self._send_json(404, {"error": "not found"})
            return
        ctype = mimetypes.guess_type(full)[0] or "application/octet-stream"
        with open(full, "rb") as fh:
            self._send(200, fh.read(), ctype)


def create_server(state: ServiceState, port: int, host: str = "127.0.0.1") -> ThreadingHTTPServer:
    handler = type("BoundHandler", (_Handler,), {"state": state})
    server = ThreadingHTTPServer((host, port), handler)
    server.daemon_threads = True
    return server


def serve(state: ServiceState, port: int, host: str = "127.0.0.1") -> None:
    """Run until interrupted; in-flight requests finish before shutdown."""
    server = create_server(state, port, host)
    print(f"serving on http://{host}:{server.server_address[1]}/", file=sys.stderr)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.shutdown()
        server.server_close()


# ---------------------------------------------------------------------------
# CLI
# ---------------------------------------------------------------------------

def _build_parser() -> _Parser:
    parser = _Parser(prog="mealcorpus", description="Meal-post corpus analytics toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="ingest a JSONL file into a snapshot")
    p.add_argument("--input", required=True)
    p.add_argument("--filter", default=",".join(sorted(corpus.DEFAULT_HASHTAG_FILTER)),
                   help="comma-separated hashtag filter")
    p.add_argument("--schema", default=None,
                   help="JSON file remapping source fields (dotted paths) onto "
                        "id/text/created_at/user_location/user_timezone/geo")
    p.add_argument("--out", required=True)

    p = sub.add_parser("normalize", help="resolve author locations into a snapshot")
    p.add_argument("--snapshot", required=True)
    p.add_argument("--out", required=True)

    p = sub.add_parser("synth", help="generate a synthetic corpus with planted ground truth")
    p.add_argument("--spec", choices=["default", "city"], default="default")
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--out", required=True)
    p.add_argument("--tweets-per-locale", type=int, default=None)
    p.add_argument("--marker-rate", type=float, default=None)
    p.add_argument("--decoy-rate", type=float, default=None)
    p.add_argument("--malformed", type=int, default=None)
    p.add_argument("--weekend-token", default=None)
    p.add_argument("--weekday-token", default=None)
    p.add_argument("--labels", default=None, choices=sorted(tasks.THRESHOLD_DOCS),
                   help="plant class markers along a shipped label file instead of "
                        "the synthetic alternating labels")

    p = sub.add_parser("lda", help="train a topic model on a snapshot")
    p.add_argument("--snapshot", required=True)
    p.add_argument("--features", choices=list(text.FEATURE_MODES), default="all_words")
    p.add_argument("--k", type=int, default=20)
    p.add_argument("--iterations", type=int, default=200)
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--out", required=True)

    p = sub.add_parser("task", help="run a prediction task")
    tsub = p.add_subparsers(dest="task_kind", required=True)

    pc = tsub.add_parser("state-chars", help="LOOCV state-characteristic prediction")
    pc.add_argument("--snapshot", required=True)
    pc.add_argument("--dataset", required=True,
                    help="overweight | diabetes | political | path to a manifest JSON")
    pc.add_argument("--features", choices=list(text.FEATURE_MODES), default="all_words")
    pc.add_argument("--lda", action="store_true")
    pc.add_argument("--lda-k", type=int, default=20)
    pc.add_argument("--lda-iterations", type=int, default=50)
    pc.add_argument("--seed", type=int, default=7)
    pc.add_argument("--out", default=None)
    pc.add_argument("--runs-dir", default=None)

    pl = tsub.add_parser("locale", help="locale prediction with chronological split")
    pl.add_argument("--snapshot", required=True)
    pl.add_argument("--level", choices=["city", "state", "region"], required=True)
    pl.add_argument("--features", choices=list(text.FEATURE_MODES), default="all_words")
    pl.add_argument("--lda", action="store_true")
    pl.add_argument("--lda-k", type=int, default=20)
    pl.add_argument("--lda-iterations", type=int, default=50)
    pl.add_argument("--train-frac", type=float, default=1.0)
    pl.add_argument("--test-frac", type=float, default=1.0)
    pl.add_argument("--seed", type=int, default=7)
    pl.add_argument("--out", default=None)
    pl.add_argument("--runs-dir", default=None)

    p = sub.add_parser("curve", help="learning-curve grid over train/test fractions")
    p.add_argument("--snapshot", required=True)
    p.add_argument("--level", choices=["city", "state", "region"], required=True)
    p.add_argument("--fractions", default="0.2,0.4,0.6,0.8,1.0")
    p.add_argument("--features", choices=list(text.FEATURE_MODES), default="all_words")
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--out", default=None)

    p = sub.add_parser("rank-terms", help="most distinctive term per state")
    p.add_argument("--snapshot", required=True)
    p.add_argument("--vocab", choices=list(text.FEATURE_MODES), default="food")
    p.add_argument("--out", default=None)

    p = sub.add_parser("serve", help="start the read-only HTTP query service")
    p.add_argument("--snapshot", required=True)
    p.add_argument("--port", type=int, default=8750)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--model", default=None)
    p.add_argument("--runs-dir", default=None)
    p.add_argument("--ui-dir", default=None)
    p.add_argument("--cors", action="store_true")
    p.add_argument("--seed", type=int, default=7)

    return parser


def _emit(obj, out: Optional[str]):
    blob = json.dumps(obj, indent=1, sort_keys=True, ensure_ascii=False)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(blob + "\n")
    else:
        print(blob)


def _store_run(result: tasks.TaskResult, args) -> None:
    payload = result.to_json()
    if args.out:
        _emit(payload, args.out)
    else:
        _emit(payload, None)
    if getattr(args, "runs_dir", None):
        os.makedirs(args.runs_dir, exist_ok=True)
        run_id = f"{result.task.replace(':', '-')}-seed{args.seed}"
        with open(os.path.join(args.runs_dir, run_id + ".json"), "w", encoding="utf-8") as fh:
            fh.write(json.dumps(payload, sort_keys=True, ensure_ascii=False) + "\n")


def _task_config(args) -> tasks.TaskConfig:
    lda_params = {"K": args.lda_k, "iterations": args.lda_iterations}
    return tasks.TaskConfig(
        feature_mode=args.features,
        use_lda=args.lda,
        lda_params=lda_params if args.lda else {},
        train_fraction=getattr(args, "train_frac", 1.0),
        test_fraction=getattr(args, "test_frac", 1.0),
        seed=args.seed,
    )


def _run_command(args) -> int:
    if args.command == "ingest":
        filter_set = {h.strip() for h in args.filter.split(",") if h.strip()}
        schema = dict(corpus.DEFAULT_SCHEMA)
        if args.schema:
            with open(args.schema, encoding="utf-8") as fh:
                schema.update(json.load(fh))
        snapshot = corpus.ingest_jsonl(args.input, filter_set, schema)
        corpus.save_snapshot(snapshot, args.out)
        print(json.dumps(dict(snapshot.ingest_manifest), sort_keys=True))
        return EXIT_OK

    if args.command == "normalize":
        snapshot = corpus.load_snapshot(args.snapshot)
        annotated = geonorm.annotate_snapshot(snapshot, geonorm.load_gazetteer())
        corpus.save_snapshot(annotated, args.out)
        print(json.dumps({"normalized": len(annotated.normalized),
                          "tweets": len(annotated)}, sort_keys=True))
        return EXIT_OK

    if args.command == "synth":
        overrides = {}
        if args.tweets_per_locale is not None:
            overrides["tweets_per_locale"] = args.tweets_per_locale
        if args.marker_rate is not None:
            overrides["marker_rate"] = args.marker_rate
        if args.decoy_rate is not None:
            overrides["decoy_rate"] = args.decoy_rate
        if args.malformed is not None:
            overrides["malformed_lines"] = args.malformed
        if args.weekend_token is not None:
            overrides["weekend_token"] = args.weekend_token
        if args.weekday_token is not None:
            overrides["weekday_token"] = args.weekday_token
        if args.labels is not None:
            if args.spec != "default":
                raise UsageError("--labels applies to the 51-state spec only")
            overrides["label_plant"] = dict(tasks.load_labelset(args.labels).labels)
        builder = tasks.default_city_spec if args.spec == "city" else tasks.default_state_spec
        manifest = tasks.generate_synthetic_corpus(builder(**overrides), args.seed, args.out)
        print(json.dumps(manifest["expected"], sort_keys=True))
        return EXIT_OK

    if args.command == "lda":
        snapshot = corpus.load_snapshot(args.snapshot)
        gaz = geonorm.load_gazetteer()
        docs = text.filtered_corpus(snapshot, gaz)
        food = text.load_food_lexicon() if args.features in ("food", "food_hashtags") else set()
        vocab = text.build_vocabulary(docs, args.features, food)
        mode_docs = [text.mode_filter(d.tokens, args.features, food) for d in docs]
        model = topics.train_lda(
            [d for d in mode_docs if d], K=args.k,
            iterations=args.iterations, seed=args.seed, vocab=vocab,
        )
        topics.save_model(model, args.out)
        print(json.dumps({"K": model.K, "vocab": len(model.vocab),
                          "tokens": int(model.topic_totals.sum())}, sort_keys=True))
        return EXIT_OK

    if args.command == "task":
        snapshot = corpus.load_snapshot(args.snapshot)
        config = _task_config(args)
        if args.task_kind == "state-chars":
            if args.dataset in tasks.THRESHOLD_DOCS:
                labelset = tasks.load_labelset(args.dataset)
            else:
                with open(args.dataset, encoding="utf-8") as fh:
                    labelset = tasks.labelset_from_manifest(json.load(fh))
            result = tasks.run_state_characteristic_task(snapshot, labelset, config)
        else:
            result = tasks.run_locale_task(snapshot, args.level, config)
        _store_run(result, args)
        return EXIT_OK

    if args.command == "curve":
        snapshot = corpus.load_snapshot(args.snapshot)
        fractions = [float(f) for f in args.fractions.split(",") if f.strip()]
        config = tasks.TaskConfig(feature_mode=args.features, seed=args.seed)
        grid = tasks.learning_curve(snapshot, args.level, config, fractions)
        _emit({"fractions": fractions, "accuracy": grid}, args.out)
        return EXIT_OK

    if args.command == "rank-terms":
        snapshot = corpus.load_snapshot(args.snapshot)
        term_map = analytics.rank_terms_tfidf(snapshot, args.vocab)
        _emit(analytics.term_map_json(term_map), args.out)
        return EXIT_OK

    if args.command == "serve":
        snapshot = corpus.load_snapshot(args.snapshot)
        model = topics.load_model(args.model) if args.model else None
        state = build_service_state(
            snapshot, model=model, runs_dir=args.runs_dir,
            cors=args.cors, ui_dir=args.ui_dir, seed=args.seed,
        )
        serve(state, args.port, args.host)
        return EXIT_OK

    raise UsageError(f"unknown command {args.command!r}")


def cli_dispatch(argv) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return _run_command(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


def main() -> None:
    sys.exit(cli_dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
