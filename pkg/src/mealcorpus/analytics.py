"""Aggregations behind the exploratory visualization tools.

Four pure queries over a sealed snapshot: per-state distinctive terms
(tf-idf over 51 state-pools-as-documents), temporal histograms binned by
author-local time, geographic grid binning of geotagged tweets, and parallel
word-cloud layouts where words shared by both groups occupy identical
positions in both clouds.

Phrase matching is token-sequence equality after the standard cleanup, not
substring search, so it agrees with the feature pipeline's view of a tweet.
"""

from __future__ import annotations

import math
import warnings
from collections import Counter
from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

from . import geonorm, text
from .corpus import CorpusSnapshot
from .rng import SplitMix64

STATE_DOC_COUNT = 51
GRANULARITIES = {"hour": 24, "weekday": 7, "month": 12}
HEATMAP_CELL_SIZES = (0.1, 0.25, 0.5, 1.0)


@dataclass(frozen=True)
class TermScore:
    term: str
    state: str
    tf: int
    df: int
    score: float  # tf * ln(51 / df); zero exactly when the term is in all states


@dataclass(frozen=True)
class HistogramBins:
    granularity: str
    bins: tuple[int, ...]
    total: int
    phrase: str


@dataclass(frozen=True)
class GeoGrid:
    cell_size: float
    cells: Mapping[tuple[int, int], int]  # (lat_idx, lon_idx) -> count >= 1
    query: str


@dataclass(frozen=True)
class PlacedWord:
    word: str
    x: float
    y: float
    font_scale: float
    color_class: str  # shared | group_a | group_b
    width: float
    height: float


@dataclass(frozen=True)
class CloudLayout:
    words: tuple[PlacedWord, ...]


def _cleaned(snapshot: CorpusSnapshot) -> dict[str, list[str]]:
    return {t.id: text.standard_cleanup(t.text) for t in snapshot.tweets}


def rank_terms_tfidf(
    snapshot: CorpusSnapshot,
    vocab_mode: str = "food",
    food_lexicon: Optional[set[str]] = None,
) -> dict[str, TermScore]:
    """The most distinctive term per state.

    All tweets normalized to a state form one document; a term scores
    tf * ln(51 / df) there, where df counts the states containing it.  Ties
    break lexicographically.  States with empty pools are omitted with a
    warning.
    """
    if vocab_mode in ("food", "food_hashtags") and food_lexicon is None:
        food_lexicon = text.load_food_lexicon()
    food_lexicon = food_lexicon or set()
    pools: dict[str, Counter] = {}
    for t in snapshot.tweets:
        loc = snapshot.normalized.get(t.id)
        if loc is None:
            continue
        tokens = text.mode_filter(text.standard_cleanup(t.text), vocab_mode, food_lexicon)
        if tokens:
            pools.setdefault(loc.state, Counter()).update(tokens)
    df: Counter = Counter()
    for counter in pools.values():
        df.update(set(counter))
    out = {}
    for state in sorted(snapshot_states(snapshot)):
        counter = pools.get(state)
        if not counter:
            warnings.warn(f"state {state} has no tokens in mode {vocab_mode!r}; omitted")
            continue
        best = None
        for term, tf in counter.items():
            score = tf * math.log(STATE_DOC_COUNT / df[term])
            key = (-score, term)
            if best is None or key < best[0]:
                best = (key, TermScore(term=term, state=state, tf=tf, df=df[term], score=score))
        out[state] = best[1]
    return out


def snapshot_states(snapshot: CorpusSnapshot) -> set[str]:
    return {loc.state for loc in snapshot.normalized.values()}


def _phrase_tokens(phrase: str) -> list[str]:
    tokens = text.standard_cleanup(phrase)
    if not tokens:
        raise ValueError("phrase is empty after cleanup")
    return tokens


def _contains_phrase(tokens: Sequence[str], phrase: Sequence[str]) -> bool:
    if len(phrase) == 1:
        return phrase[0] in tokens
    k = len(phrase)
    return any(list(tokens[i : i + k]) == list(phrase) for i in range(len(tokens) - k + 1))


def temporal_histogram(
    snapshot: CorpusSnapshot,
    phrase: str,
    granularity: str,
    gaz: Optional[geonorm.Gazetteer] = None,
) -> HistogramBins:
    """Counts of phrase-matching tweets binned by author-local time.

    Only tweets whose timezone resolves in the fixed-offset table
    participate; the bin sum always equals the matching-tweet count.
    """
    if granularity not in GRANULARITIES:
        raise ValueError(f"granularity must be one of {sorted(GRANULARITIES)}")
    gaz = gaz or geonorm.load_gazetteer()
    needle = _phrase_tokens(phrase)
    size = GRANULARITIES[granularity]
    bins = [0] * size
    for t in snapshot.tweets:
        local = geonorm.local_time(t.created_at, t.user_timezone, gaz)
        if local is None:
            continue
        if not _contains_phrase(text.standard_cleanup(t.text), needle):
            continue
        if granularity == "hour":
            bins[local.hour] += 1
        elif granularity == "weekday":
            bins[local.weekday] += 1
        else:
            bins[local.month - 1] += 1
    return HistogramBins(granularity=granularity, bins=tuple(bins), total=sum(bins), phrase=phrase)


def heatmap_bins(
    snapshot: CorpusSnapshot,
    cell_size: float,
    phrase: Optional[str] = None,
    topic: Optional[int] = None,
    topic_assignments: Optional[Mapping[str, int]] = None,
    topic_count: Optional[int] = None,
) -> GeoGrid:
    """Geotagged matches binned into floor(lat/cell), floor(lon/cell) cells."""
    if cell_size not in HEATMAP_CELL_SIZES:
        raise ValueError(f"cell size must be one of {HEATMAP_CELL_SIZES}")
    if (phrase is None) == (topic is None):
        raise ValueError("query with exactly one of phrase or topic")
    if topic is not None:
        if topic_assignments is None or topic_count is None:
            raise ValueError("topic queries need topic_assignments and topic_count")
        if not 0 <= topic < topic_count:
            raise ValueError(f"unknown topic id {topic}")
        query = f"topic:{topic}"
    else:
        needle = _phrase_tokens(phrase)
        query = phrase
    cells: dict[tuple[int, int], int] = {}
    for t in snapshot.tweets:
        if t.geo is None:
            continue
        if topic is not None:
            if topic_assignments.get(t.id) != topic:
                continue
        else:
            if not _contains_phrase(text.standard_cleanup(t.text), needle):
                continue
        lat, lon = t.geo
        cell = (math.floor(lat / cell_size), math.floor(lon / cell_size))
        cells[cell] = cells.get(cell, 0) + 1
    return GeoGrid(cell_size=cell_size, cells=cells, query=query)


# ---------------------------------------------------------------------------
# Parallel word clouds
# ---------------------------------------------------------------------------

_CHAR_W = 10.0
_LINE_H = 18.0
_SPIRAL_STEP = 0.28       # radians per probe
_SPIRAL_GROWTH = 2.2      # radius units per radian


def _box(word: str, font_scale: float) -> tuple[float, float]:
    return (_CHAR_W * len(word) * font_scale, _LINE_H * font_scale)


def _overlaps(x, y, w, h, placed) -> bool:
    for p in placed:
        if abs(x - p.x) < (w + p.width) / 2 and abs(y - p.y) < (h + p.height) / 2:
            return True
    return False


def _spiral_place(word, font_scale, color_class, placed, cx, cy, theta0):
    w, h = _box(word, font_scale)
    theta = theta0
    while True:
        r = _SPIRAL_GROWTH * (theta - theta0)
        x = cx + r * math.cos(theta)
        y = cy + r * math.sin(theta)
        if not _overlaps(x, y, w, h, placed):
            return PlacedWord(word=word, x=round(x, 4), y=round(y, 4),
                              font_scale=round(font_scale, 4),
                              color_class=color_class, width=round(w, 4), height=round(h, 4))
        theta += _SPIRAL_STEP


def _font_scale(freq: int, max_freq: int) -> float:
    return 0.4 + 0.6 * math.sqrt(freq / max_freq)


def parallel_wordclouds(
    group_a: Sequence[Sequence[str]],
    group_b: Sequence[Sequence[str]],
    max_words: int = 50,
    seed: int = 0,
) -> tuple[CloudLayout, CloudLayout]:
    """Two comparable clouds for two groups of token lists.

    Importance is within-group token frequency.  Words appearing in both
    groups' top-``max_words`` lists are "shared": they are placed first on a
    deterministic spiral and occupy exactly the same coordinates in both
    clouds.  Remaining words are placed greedily near the already-placed
    word they co-occur with most inside their own group.  Boxes within one
    cloud never overlap.
    """
    if max_words < 1:
        raise ValueError("max_words must be >= 1")
    if not group_a or not group_b:
        raise ValueError("both groups must be nonempty")
    freq_a = Counter(t for doc in group_a for t in doc)
    freq_b = Counter(t for doc in group_b for t in doc)
    if not freq_a or not freq_b:
        raise ValueError("both groups must contain tokens")
    top_a = [w for w, _ in sorted(freq_a.items(), key=lambda p: (-p[1], p[0]))[:max_words]]
    top_b = [w for w, _ in sorted(freq_b.items(), key=lambda p: (-p[1], p[0]))[:max_words]]
    shared = set(top_a) & set(top_b)

    max_a = max(freq_a[w] for w in top_a)
    max_b = max(freq_b[w] for w in top_b)
    base = SplitMix64(seed)
    angle_of = {}
    for w in sorted(shared | set(top_a) | set(top_b)):
        angle_of[w] = base.uniform() * 2 * math.pi

    # Shared words first, ordered by combined importance: identical inputs on
    # both sides, so the resulting coordinates agree exactly.
    shared_placed: list[PlacedWord] = []
    for w in sorted(shared, key=lambda w: (-(freq_a[w] + freq_b[w]), w)):
        scale = _font_scale(freq_a[w] + freq_b[w], max_a + max_b)
        shared_placed.append(
            _spiral_place(w, scale, "shared", shared_placed, 0.0, 0.0, angle_of[w])
        )

    def build(top, freq, max_freq, docs, color):
        placed = list(shared_placed)
        own: list[PlacedWord] = []
        cooc: dict[str, Counter] = {}
        doc_sets = [set(d) for d in docs]
        for w in top:
            if w in shared:
                continue
            counter = Counter()
            for ds in doc_sets:
                if w in ds:
                    counter.update(ds - {w})
            cooc[w] = counter
        for w in [w for w in top if w not in shared]:
            anchor_x = anchor_y = 0.0
            best = None
            for p in placed:
                c = cooc[w].get(p.word, 0)
                if c > 0 and (best is None or c > best[0]):
                    best = (c, p)
            if best is not None:
                anchor_x, anchor_y = best[1].x, best[1].y
            scale = _font_scale(freq[w], max_freq)
            word = _spiral_place(w, scale, color, placed, anchor_x, anchor_y, angle_of[w])
            placed.append(word)
            own.append(word)
        return CloudLayout(words=tuple(shared_placed + own))

    layout_a = build(top_a, freq_a, max_a, group_a, "group_a")
    layout_b = build(top_b, freq_b, max_b, group_b, "group_b")
    return layout_a, layout_b


# ---------------------------------------------------------------------------
# JSON views (field names are the UI contract)
# ---------------------------------------------------------------------------

def term_map_json(term_map: Mapping[str, TermScore]) -> dict:
    return {
        state: {"term": ts.term, "score": ts.score, "tf": ts.tf, "df": ts.df}
        for state, ts in term_map.items()
    }


def histogram_json(hist: HistogramBins) -> dict:
    return {"granularity": hist.granularity, "bins": list(hist.bins), "total": hist.total}


def grid_json(grid: GeoGrid) -> dict:
    rows = [[lat, lon, count] for (lat, lon), count in sorted(grid.cells.items())]
    return {"cell": grid.cell_size, "rows": rows}


def layouts_json(layout_a: CloudLayout, layout_b: CloudLayout) -> dict:
    def words(layout):
        return [
            {
                "word": p.word, "x": p.x, "y": p.y, "font_scale": p.font_scale,
                "color_class": p.color_class, "width": p.width, "height": p.height,
            }
            for p in layout.words
        ]

    return {"a": words(layout_a), "b": words(layout_b)}
