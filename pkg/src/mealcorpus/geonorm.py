"""Free-text location normalization against a shipped US gazetteer.

Self-reported profile locations ("Austin, TX", "nyc", "somewhere fun") are
matched against state names, postal abbreviations, the 250 most populous US
cities, and common nicknames.  Matching is word-boundary, case-insensitive,
longest-match-wins.  Tokens claimed by both a state abbreviation and a city
(the classic one: "LA" is Louisiana and Los Angeles) are resolved with the
author's timezone; without a timezone they stay unresolved.

Timezones use a fixed-offset table of legacy timezone display names.  No DST
modeling: downstream consumers bin at hour granularity, where a one-hour
seasonal error is acceptable, and a full tz database would be a heavyweight
dependency for what this needs.
"""

from __future__ import annotations

import csv
import os
import re
import unicodedata
from dataclasses import dataclass
from datetime import datetime, timedelta, timezone
from typing import Optional

REGIONS = ("Midwest", "West", "Northeast", "South")

_WORD_RE = re.compile(r"[a-z0-9]+")

# Resolution entries for ambiguous tokens.
_CITY = "city"
_STATE = "state"


@dataclass(frozen=True)
class NormalizedLocation:
    state: str                 # 2-letter USPS code, 50 states + DC
    city: Optional[str]        # canonical gazetteer city name
    region: str                # Census region of the state


@dataclass(frozen=True)
class LocalTime:
    hour: int      # 0-23
    weekday: int   # 0=Monday .. 6=Sunday
    month: int     # 1-12


class Gazetteer:
    """Immutable lookup tables loaded from the four shipped CSV files."""

    def __init__(self, state_names, abbrev_phrases, city_names, city_display,
                 ambiguous_tokens, tz_offsets, state_regions, cities_by_population,
                 city_tz_name, state_default_tz):
        self.state_names = state_names            # phrase -> state code
        self.abbrev_phrases = abbrev_phrases      # phrases that are postal abbreviations
        self.city_names = city_names              # phrase -> [(canonical city, state), ...]
        self.city_display = city_display          # (city, state) -> canonical display name
        self.ambiguous_tokens = ambiguous_tokens  # phrase -> {tz name -> resolution}
        self.tz_offsets = tz_offsets              # tz name -> minutes east of UTC
        self.state_regions = state_regions        # state code -> region
        self.cities_by_population = cities_by_population  # [(city, state), ...] most populous first
        self.city_tz_name = city_tz_name          # (city, state) -> legacy tz name
        self.state_default_tz = state_default_tz  # state -> tz name of its largest city
        self._max_phrase_len = max(
            len(p.split()) for p in list(state_names) + list(city_names)
        )

    def top_cities(self, n: int) -> list[tuple[str, str]]:
        return self.cities_by_population[:n]


def _data_dir() -> str:
    override = os.environ.get("T4F_DATA_DIR")
    if override:
        return override
    return os.path.join(os.path.dirname(__file__), "data")


def _phrase(text: str) -> str:
    """Normalized matching key: NFC, lowercase, alphanumeric runs joined by spaces."""
    return " ".join(_WORD_RE.findall(unicodedata.normalize("NFC", text).lower()))


def load_gazetteer(data_dir: Optional[str] = None) -> Gazetteer:
    data_dir = data_dir or _data_dir()

    state_names: dict[str, str] = {}
    abbrev_phrases: set[str] = set()
    with open(os.path.join(data_dir, "states.csv"), newline="", encoding="utf-8") as fh:
        for row in csv.DictReader(fh):
            name_key = _phrase(row["name"])
            abbr_key = _phrase(row["abbrev"])
            state_names[name_key] = row["abbrev"]
            state_names[abbr_key] = row["abbrev"]
            abbrev_phrases.add(abbr_key)

    state_regions: dict[str, str] = {}
    with open(os.path.join(data_dir, "regions.csv"), newline="", encoding="utf-8") as fh:
        for row in csv.DictReader(fh):
            if row["region"] not in REGIONS:
                raise ValueError(f"unknown region {row['region']!r} in regions.csv")
            state_regions[row["state"]] = row["region"]
    missing = set(state_names.values()) - set(state_regions)
    if missing:
        raise ValueError(f"states missing a region assignment: {sorted(missing)}")

    tz_offsets: dict[str, int] = {}
    with open(os.path.join(data_dir, "timezones.csv"), newline="", encoding="utf-8") as fh:
        for row in csv.DictReader(fh):
            off = int(row["offset_minutes"])
            if not -720 <= off <= 840:
                raise ValueError(f"offset out of range for {row['name']}")
            tz_offsets[row["name"]] = off

    city_names: dict[str, list[tuple[str, str]]] = {}
    city_display: dict[tuple[str, str], str] = {}
    cities_by_population: list[tuple[str, str]] = []
    city_tz_hint: dict[tuple[str, str], int] = {}
    city_tz_name: dict[tuple[str, str], str] = {}
    with open(os.path.join(data_dir, "cities.csv"), newline="", encoding="utf-8") as fh:
        for row in csv.DictReader(fh):
            city, state = row["name"], row["state"]
            key = (city, state)
            cities_by_population.append(key)
            city_display[key] = city
            city_tz_hint[key] = tz_offsets[row["tz_hint"]]
            city_tz_name[key] = row["tz_hint"]
            keys = [_phrase(city)]
            keys += [_phrase(n) for n in row["nicknames"].split("|") if n.strip()]
            for k in keys:
                city_names.setdefault(k, [])
                if key not in city_names[k]:
                    city_names[k].append(key)

    # A state's representative offset (for ambiguity resolution) is the tz
    # hint of its most populous shipped city.
    state_offset: dict[str, int] = {}
    state_default_tz: dict[str, str] = {}
    for (city, state) in cities_by_population:
        state_offset.setdefault(state, city_tz_hint[(city, state)])
        state_default_tz.setdefault(state, city_tz_name[(city, state)])

    ambiguous_tokens = _build_ambiguity_table(
        state_names, abbrev_phrases, city_names, city_tz_hint, state_offset, tz_offsets
    )
    return Gazetteer(
        state_names=state_names,
        abbrev_phrases=abbrev_phrases,
        city_names=city_names,
        city_display=city_display,
        ambiguous_tokens=ambiguous_tokens,
        tz_offsets=tz_offsets,
        state_regions=state_regions,
        cities_by_population=cities_by_population,
        city_tz_name=city_tz_name,
        state_default_tz=state_default_tz,
    )


def _build_ambiguity_table(state_names, abbrev_phrases, city_names,
                           city_tz_hint, state_offset, tz_offsets):
    """Precompute, per ambiguous phrase, the resolution under every known timezone.

    A phrase is ambiguous when a postal abbreviation collides with a city
    name/nickname of another state, or when one city name occurs in several
    states.  Full state names always beat city readings, so they never enter
    this table.  Resolution picks the candidate whose home offset is nearest
    the user's offset; ties go to the earlier candidate (state reading first,
    then city population order).
    """
    table: dict[str, dict[str, tuple]] = {}
    for phrase, candidates in city_names.items():
        state_side = None
        if phrase in abbrev_phrases:
            code = state_names[phrase]
            if any(st != code for _, st in candidates):
                state_side = code
        multi_state = len({st for _, st in candidates}) > 1
        if state_side is None and not multi_state:
            continue
        entrants: list[tuple[int, tuple]] = []
        if state_side is not None:
            entrants.append((state_offset.get(state_side, 0), (_STATE, state_side)))
        for (city, st) in candidates:
            entrants.append((city_tz_hint[(city, st)], (_CITY, city, st)))
        resolution = {}
        for tz_name, user_off in tz_offsets.items():
            best = min(enumerate(entrants), key=lambda e: (abs(e[1][0] - user_off), e[0]))
            resolution[tz_name] = best[1][1]
        table[phrase] = resolution
    return table


def _spans(tokens: list[str], max_len: int):
    """All (start, length, phrase) windows, longest first at each start."""
    n = len(tokens)
    for i in range(n):
        for length in range(min(max_len, n - i), 0, -1):
            yield i, length, " ".join(tokens[i : i + length])


def normalize_location(raw: Optional[str], tz_name: Optional[str],
                       gaz: Gazetteer) -> Optional[NormalizedLocation]:
    """Resolve a free-text location to (state, city, region), or None.

    Precedence: longest match wins across state and city readings; among
    equal-length matches a full state name beats everything, then
    timezone-resolved ambiguous tokens, then unambiguous cities.  A city
    match from a state other than an established state match is dropped.
    """
    if not raw:
        return None
    tokens = _WORD_RE.findall(unicodedata.normalize("NFC", raw).lower())
    if not tokens:
        return None

    state_hits = []      # (length, start, phrase, state, is_abbrev)
    city_hits = []       # (length, start, phrase, candidates)
    for i, length, phrase in _spans(tokens, gaz._max_phrase_len):
        in_states = phrase in gaz.state_names
        in_cities = phrase in gaz.city_names
        if in_states:
            state_hits.append((length, i, phrase, gaz.state_names[phrase],
                               phrase in gaz.abbrev_phrases))
        if in_cities:
            city_hits.append((length, i, phrase, gaz.city_names[phrase]))

    if not state_hits and not city_hits:
        return None

    state: Optional[str] = None
    city: Optional[str] = None

    # Rank every reading: longer first; at equal length state names beat
    # ambiguous tokens beat plain city readings; leftmost breaks remaining ties.
    candidates = []
    for (length, i, phrase, code, is_abbrev) in state_hits:
        ambiguous = phrase in gaz.ambiguous_tokens and is_abbrev
        kind = 1 if ambiguous else 0
        candidates.append((length, kind, i, "state", phrase, code))
    for (length, i, phrase, cands) in city_hits:
        if phrase in gaz.ambiguous_tokens and phrase in gaz.abbrev_phrases:
            continue  # handled via the state-side ambiguous entry
        ambiguous = phrase in gaz.ambiguous_tokens
        kind = 1 if ambiguous else 2
        candidates.append((length, kind, i, "city", phrase, cands))
    candidates.sort(key=lambda c: (-c[0], c[1], c[2]))

    def _pin_by_state_evidence(span_start, span_len, cands):
        # "Kansas City Missouri": an explicit state match outside the city
        # span settles which candidate is meant, ahead of timezone guessing.
        for (lh, ih, _phr, code, _ab) in sorted(state_hits, key=lambda h: (-h[0], h[1])):
            if ih + lh <= span_start or ih >= span_start + span_len:
                match = [c for c in cands if c[1] == code]
                if match:
                    return match[0]
        return None

    for (length, kind, i, side, phrase, payload) in candidates:
        if kind == 1:  # ambiguous: state evidence first, then the timezone table
            if side == "city":
                pinned = _pin_by_state_evidence(i, length, payload)
                if pinned is not None:
                    city, state = pinned
                    break
            resolution = gaz.ambiguous_tokens[phrase].get(tz_name) if tz_name else None
            if resolution is None:
                continue
            if resolution[0] == _STATE:
                state = resolution[1]
            else:
                city, state = resolution[1], resolution[2]
            break
        if side == "state":
            state = payload
            break
        states = {st for _, st in payload}
        if len(states) == 1:
            city, state = payload[0]
            break
        continue  # multi-state city with no usable timezone: try next reading

    if state is None:
        return None

    if city is None:
        # Attach the longest city reading consistent with the established state.
        for (length, i, phrase, cands) in sorted(city_hits, key=lambda h: (-h[0], h[1])):
            match = [c for c in cands if c[1] == state]
            if match:
                city = match[0][0]
                break

    return NormalizedLocation(state=state, city=city, region=gaz.state_regions[state])


def region_of(state: str, gaz: Gazetteer) -> str:
    try:
        return gaz.state_regions[state]
    except KeyError:
        raise ValueError(f"unknown state: {state!r}") from None


def local_time(created_at: int, tz_name: Optional[str], gaz: Gazetteer) -> Optional[LocalTime]:
    """Author-local wall clock from the fixed-offset table; None when unknown."""
    if tz_name is None or tz_name not in gaz.tz_offsets:
        return None
    offset = gaz.tz_offsets[tz_name]
    local = datetime.fromtimestamp(created_at, tz=timezone.utc) + timedelta(minutes=offset)
    return LocalTime(hour=local.hour, weekday=local.weekday(), month=local.month)


def annotate_snapshot(snapshot, gaz: Gazetteer):
    """Fill a snapshot's normalized-location map from each tweet's raw location."""
    normalized = {}
    for t in snapshot.tweets:
        loc = normalize_location(t.user_location_raw, t.user_timezone, gaz)
        if loc is not None:
            normalized[t.id] = loc
    return snapshot.with_normalized(normalized)


def location_token_set(gaz: Gazetteer) -> set[str]:
    """Tokens naming states/cities, plus squashed and hashtag forms.

    Used by the token filter to strip trivially location-revealing words
    ("texas", "#tx", "sanfran") before feature extraction.
    """
    out: set[str] = set()
    phrases = set(gaz.state_names) | set(gaz.city_names)
    for phrase in phrases:
        parts = phrase.split()
        squashed = "".join(parts)
        for form in parts + [squashed]:
            out.add(form)
            out.add("#" + form)
    return out
