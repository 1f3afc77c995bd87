"""Tweet tokenization, token filtering, and vocabulary construction.

The tokenizer is rule-based: whitespace plus punctuation splitting with
protection for hashtags, @-mentions, and URLs, which stay whole so the
filter can treat them as units.  Everything is lowercased; trailing and
surrounding punctuation is stripped from plain words, apostrophes inside a
word survive ("don't").
"""

from __future__ import annotations

import os
import re
import unicodedata
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

FEATURE_MODES = ("all_words", "hashtags", "food", "food_hashtags")

_TOKEN_RE = re.compile(
    r"""
    https?://\S+ | www\.\S+      # URLs, kept whole
    | @\w+                       # mentions
    | \#\w+                      # hashtags keep their '#'
    | \w+(?:['’]\w+)*       # words, internal apostrophes allowed
    """,
    re.VERBOSE,
)

_HAS_ALNUM = re.compile(r"[a-z0-9]")


def tokenize(text: str) -> list[str]:
    """Lowercased tokens; empty text gives an empty list."""
    if not text:
        return []
    return _TOKEN_RE.findall(unicodedata.normalize("NFC", text).lower())


def _is_url(token: str) -> bool:
    return token.startswith(("http://", "https://", "www."))


def standard_cleanup(text: str) -> list[str]:
    """Tokenize and drop URLs, @-usernames, and tokens with no alphanumerics.

    This is the cleanup behind corpus statistics and analytics phrase
    matching; the heavier feature filter (stopwords, singletons, location
    words) layers on top via :func:`filter_tokens`.
    """
    return [
        t for t in tokenize(text)
        if not _is_url(t) and not t.startswith("@") and _HAS_ALNUM.search(t)
    ]


def filter_tokens(
    tokens: Iterable[str],
    location_lexicon: set[str],
    stopwords: set[str],
    singleton_set: set[str],
) -> list[str]:
    """Apply the feature-extraction removal rules.

    Removes tokens with no alphanumeric character, stopwords, corpus
    singletons, URLs, @-usernames, and state/city names, abbreviations,
    nicknames, and their hashtag forms (so that a location tag can never
    leak the locale into the features).
    """
    out = []
    for t in tokens:
        if _is_url(t) or t.startswith("@") or not _HAS_ALNUM.search(t):
            continue
        if t in stopwords or t in singleton_set or t in location_lexicon:
            continue
        out.append(t)
    return out


@dataclass(frozen=True)
class TokenizedTweet:
    tweet_id: str
    tokens: tuple[str, ...]


@dataclass(frozen=True)
class Vocabulary:
    mode: str
    id_of: dict[str, int]
    tokens: tuple[str, ...]

    def __len__(self) -> int:
        return len(self.tokens)


def _mode_keep(token: str, mode: str, food_lexicon: set[str]) -> bool:
    if mode == "all_words":
        return True
    if mode == "hashtags":
        return token.startswith("#")
    if mode == "food":
        return token in food_lexicon
    if mode == "food_hashtags":
        return token.startswith("#") or token in food_lexicon
    raise ValueError(f"unknown feature mode: {mode!r}")


def mode_filter(tokens: Sequence[str], mode: str, food_lexicon: set[str]) -> list[str]:
    """Keep only the tokens admissible under a vocabulary mode."""
    return [t for t in tokens if _mode_keep(t, mode, food_lexicon)]


def build_vocabulary(
    docs: Sequence[TokenizedTweet],
    mode: str = "all_words",
    food_lexicon: Optional[set[str]] = None,
) -> Vocabulary:
    """Dense ids for the surviving tokens, assigned in lexicographic order."""
    if mode in ("food", "food_hashtags") and food_lexicon is None:
        food_lexicon = load_food_lexicon()
    food_lexicon = food_lexicon or set()
    terms = sorted(
        {t for doc in docs for t in doc.tokens if _mode_keep(t, mode, food_lexicon)}
    )
    if not terms:
        raise ValueError("empty vocabulary")
    return Vocabulary(mode=mode, id_of={t: i for i, t in enumerate(terms)}, tokens=tuple(terms))


def singleton_tokens(token_lists: Iterable[Sequence[str]]) -> set[str]:
    """Tokens whose corpus-wide frequency is exactly 1."""
    freq = Counter(t for tokens in token_lists for t in tokens)
    return {t for t, c in freq.items() if c == 1}


def filtered_corpus(snapshot, gaz=None, stopwords: Optional[set[str]] = None) -> list[TokenizedTweet]:
    """Tokenize a snapshot and apply the full feature filter.

    Singleton status is measured on this snapshot's raw token stream, so the
    result is recomputed whenever the snapshot changes.
    """
    from .geonorm import location_token_set

    stopwords = stopwords if stopwords is not None else load_stopwords()
    location_lexicon = location_token_set(gaz) if gaz is not None else set()
    raw = [(t.id, tokenize(t.text)) for t in snapshot.tweets]
    singletons = singleton_tokens(tokens for _, tokens in raw)
    return [
        TokenizedTweet(tweet_id, tuple(filter_tokens(tokens, location_lexicon, stopwords, singletons)))
        for tweet_id, tokens in raw
    ]


def _data_path(filename: str) -> str:
    override = os.environ.get("T4F_DATA_DIR")
    base = override if override else os.path.join(os.path.dirname(__file__), "data")
    return os.path.join(base, filename)


def load_stopwords() -> set[str]:
    with open(_data_path("stopwords.txt"), encoding="utf-8") as fh:
        return {line.strip() for line in fh if line.strip()}


def load_food_lexicon() -> set[str]:
    with open(_data_path("food_lexicon.txt"), encoding="utf-8") as fh:
        return {line.strip() for line in fh if line.strip()}
