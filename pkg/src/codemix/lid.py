"""Rule and lexicon based token-level language identification.

Tokens are first matched against shape rules (mentions, hashtags, URLs,
numbers, punctuation, emoji, gazetteer named entities), which tag them
Universal. Anything left is looked up, case-folded, in per-language
lexicons; unknown tokens get the configured fallback tag.

Tag sequences produced by external LID systems enter only as recorded
sequences, see :func:`compare_taggers` and :func:`metric_divergence`.
"""

from __future__ import annotations

import re
import string
import unicodedata
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Callable, Iterable, Mapping, NamedTuple, Sequence

from .core import UNIVERSAL, Tag, TaggedUtterance, format_tag, validate_language_code
from .metrics import DEFAULT_CONFIG, MetricConfig, MetricReport, metric_report

__all__ = [
    "tokenize",
    "Lexicon",
    "load_lexicon",
    "load_gazetteer",
    "TagRuleSet",
    "LanguageIdentifier",
    "tag_tokens",
    "AgreementMatrix",
    "compare_taggers",
    "metric_divergence",
]

_TOKEN_RE = re.compile(
    r"""
    (?:https?:?//|www\.)\S+          # urls, including the mangled "https//t.co/x"
    | [@\#][\w\-]+                   # mentions and hashtags
    | [:;=][\-']?[()\[\]DPpO/\\|*]+(?!\w)    # ascii emoticons
    | \d+(?:[.,:/]\d+)*              # numbers
    | \w+(?:['’]\w+)*           # words, with inner apostrophes
    | [^\w\s]+                       # runs of punctuation / symbols / emoji
    """,
    re.VERBOSE | re.UNICODE,
)


def tokenize(text: str) -> list[str]:
    """Split raw text into tokens on whitespace and punctuation."""
    return _TOKEN_RE.findall(text)


@dataclass(frozen=True)
class Lexicon:
    language: str
    entries: Mapping[str, float]

    def __post_init__(self):
        validate_language_code(self.language)
        folded: dict[str, float] = {}
        for surface, weight in self.entries.items():
            key = surface.strip().casefold()
            if not key:
                raise ValueError(f"lexicon {self.language!r} has an empty surface form")
            if not weight > 0:
                raise ValueError(f"lexicon {self.language!r}: weight for {surface!r} must be > 0")
            folded[key] = max(weight, folded.get(key, 0.0))
        object.__setattr__(self, "entries", folded)

    @classmethod
    def from_words(cls, language: str, words: Iterable[str], weight: float = 1.0) -> "Lexicon":
        return cls(language, {w: weight for w in words})

    def __contains__(self, surface: str) -> bool:
        return surface.casefold() in self.entries

    def __len__(self) -> int:
        return len(self.entries)


def load_lexicon(path: str | Path) -> Lexicon:
    """Read a lexicon file.

    The file is UTF-8 with a ``#lang: <code>`` header and one
    ``surface<TAB>weight`` entry per line. A missing weight counts as 1.
    """
    path = Path(path)
    language = None
    entries: dict[str, float] = {}
    with path.open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.rstrip("\n")
            if not line.strip():
                continue
            if line.startswith("#"):
                key, _, value = line[1:].partition(":")
                if key.strip() == "lang":
                    language = value.strip()
                continue
            surface, _, weight = line.partition("\t")
            try:
                w = float(weight) if weight.strip() else 1.0
            except ValueError:
                raise ValueError(f"{path}:{lineno}: bad weight {weight!r}") from None
            entries[surface] = max(w, entries.get(surface, 0.0))
    if language is None:
        raise ValueError(f"{path}: missing '#lang: <code>' header")
    return Lexicon(language, entries)


def load_gazetteer(path: str | Path) -> frozenset[str]:
    """Named entities, one per line. Multi-word entries contribute each word."""
    names = set()
    with Path(path).open(encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line and not line.startswith("#"):
                names.update(w.casefold() for w in line.split())
    return frozenset(names)


_EMOTICON_RE = re.compile(r"^[:;=][\-']?[()\[\]DPpO/\\|*]+$")
_NUMERIC_RE = re.compile(r"^[+\-]?\d+(?:[.,:/]\d+)*(?:%|st|nd|rd|th|s)?$")
_URL_RE = re.compile(r"^(?:https?:?//|www\.)\S*$", re.IGNORECASE)


def _is_punct(tok: str) -> bool:
    return all(unicodedata.category(c)[0] == "P" or unicodedata.category(c) in ("Sm", "Sc", "Sk") for c in tok)


def _is_emoji(tok: str) -> bool:
    if _EMOTICON_RE.match(tok):
        return True
    return any(unicodedata.category(c) == "So" for c in tok) and not any(c.isalnum() for c in tok)


SHAPES: dict[str, Callable[[str], bool]] = {
    "mention": lambda t: len(t) > 1 and t[0] == "@",
    "hashtag": lambda t: len(t) > 1 and t[0] == "#",
    "url": lambda t: bool(_URL_RE.match(t)),
    "numeric": lambda t: bool(_NUMERIC_RE.match(t)),
    "punctuation": _is_punct,
    "emoji": _is_emoji,
}
DEFAULT_RULE_ORDER = ("mention", "hashtag", "url", "numeric", "punctuation", "emoji", "gazetteer")


@dataclass(frozen=True)
class TagRuleSet:
    """Ordered shape rules; the first matching rule decides the tag.

    ``rules`` is a sequence of ``(shape, tag)`` pairs. Shapes are the keys of
    :data:`SHAPES` plus ``"gazetteer"``, which matches case-folded entries of
    ``gazetteer``.
    """

    rules: tuple[tuple[str, Tag], ...] = tuple((name, UNIVERSAL) for name in DEFAULT_RULE_ORDER)
    gazetteer: frozenset[str] = frozenset()

    def __post_init__(self):
        for name, _ in self.rules:
            if name != "gazetteer" and name not in SHAPES:
                raise ValueError(f"unknown rule shape {name!r}")

    @classmethod
    def default(cls, gazetteer: Iterable[str] = ()) -> "TagRuleSet":
        return cls(gazetteer=frozenset(g.casefold() for g in gazetteer))

    def match(self, surface: str) -> tuple[str, Tag] | None:
        for name, tag in self.rules:
            if name == "gazetteer":
                if surface.casefold() in self.gazetteer:
                    return name, tag
            elif SHAPES[name](surface):
                return name, tag
        return None


class Decision(NamedTuple):
    tag: Tag
    source: str  # "rule:<shape>", "lexicon", "fuzzy" or "oov"


_ALPHABET = string.ascii_lowercase


def _edits1(word: str, alphabet: str) -> set[str]:
    splits = [(word[:i], word[i:]) for i in range(len(word) + 1)]
    deletes = {a + b[1:] for a, b in splits if b}
    transposes = {a + b[1] + b[0] + b[2:] for a, b in splits if len(b) > 1}
    replaces = {a + c + b[1:] for a, b in splits if b for c in alphabet}
    inserts = {a + c + b for a, b in splits for c in alphabet}
    return (deletes | transposes | replaces | inserts) - {word}


@dataclass
class LanguageIdentifier:
    """Deterministic tagger over a set of lexicons and shape rules.

    Lexicon ties go to the higher weight, then to the earlier language in
    ``priority`` (defaults to lexicon order). Tokens unknown to every lexicon
    get ``fallback``. With ``fuzzy`` on, an unknown token may match a lexicon
    entry one edit away.
    """

    lexicons: Sequence[Lexicon]
    rules: TagRuleSet = field(default_factory=TagRuleSet.default)
    fallback: Tag = UNIVERSAL
    priority: Sequence[str] | None = None
    fuzzy: bool = False

    def __post_init__(self):
        if not self.lexicons:
            raise ValueError("at least one lexicon is required")
        order = list(self.priority) if self.priority else []
        for lex in self.lexicons:
            if lex.language not in order:
                order.append(lex.language)
        self.priority = tuple(order)
        rank = {lang: i for i, lang in enumerate(order)}
        best: dict[str, tuple[float, int, str]] = {}
        for lex in self.lexicons:
            for surface, weight in lex.entries.items():
                cand = (weight, -rank[lex.language], lex.language)
                if surface not in best or cand[:2] > best[surface][:2]:
                    best[surface] = cand
        self._best = best
        self._alphabet = "".join(sorted(set("".join(best)) | set(_ALPHABET)))
        if self.fallback is not UNIVERSAL:
            validate_language_code(self.fallback)

    @property
    def languages(self) -> tuple[str, ...]:
        return tuple(self.priority)

    def classify(self, surface: str) -> Decision:
        hit = self.rules.match(surface)
        if hit is not None:
            return Decision(hit[1], "rule:" + hit[0])
        key = surface.casefold()
        entry = self._best.get(key)
        if entry is not None:
            return Decision(entry[2], "lexicon")
        if self.fuzzy:
            cands = [(self._best[w][:2], w) for w in _edits1(key, self._alphabet) if w in self._best]
            if cands:
                # highest weight, then priority, then alphabetical surface
                cands.sort(key=lambda c: (-c[0][0], -c[0][1], c[1]))
                return Decision(self._best[cands[0][1]][2], "fuzzy")
        return Decision(self.fallback, "oov")

    def tag(self, tokens: Sequence[str], id: str = "0") -> TaggedUtterance:
        if not tokens:
            raise ValueError("cannot tag an empty token sequence")
        return TaggedUtterance(id, tuple(tokens), tuple(self.classify(t).tag for t in tokens))

    def tag_text(self, text: str, id: str = "0") -> TaggedUtterance:
        return self.tag(tokenize(text), id)

    def oov_fraction(self, tokens: Sequence[str]) -> float:
        """Fraction of tokens matching no rule and no lexicon entry."""
        if not tokens:
            return 0.0
        return sum(1 for t in tokens if self.classify(t).source == "oov") / len(tokens)


def tag_tokens(
    tokens: Sequence[str],
    lexicons: Sequence[Lexicon],
    rules: TagRuleSet | None = None,
    **options,
) -> TaggedUtterance:
    """One-shot tagging; see :class:`LanguageIdentifier` for ``options``."""
    lid = LanguageIdentifier(lexicons, rules or TagRuleSet.default(), **options)
    return lid.tag(tokens)


@dataclass(frozen=True)
class AgreementMatrix:
    sources: tuple[str, ...]
    tokens: tuple[str, ...]
    tags: dict[str, tuple[Tag, ...]]
    pairwise: dict[str, dict[str, float]]
    # agreement restricted to positions where either source assigns a language
    language_bearing: dict[str, dict[str, float | None]]
    gold: str | None = None
    accuracy: dict[str, float] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "sources": list(self.sources),
            "tokens": list(self.tokens),
            "tags": {s: [format_tag(t) for t in self.tags[s]] for s in self.sources},
            "pairwise": self.pairwise,
            "language_bearing_pairwise": self.language_bearing,
            "gold": self.gold,
            "accuracy": self.accuracy,
        }


def _check_lengths(tokens: Sequence[str], tag_sequences: Mapping[str, Sequence[Tag]]) -> None:
    if not tag_sequences:
        raise ValueError("no tag sources given")
    for name, seq in tag_sequences.items():
        if len(seq) != len(tokens):
            raise ValueError(f"source {name!r} has {len(seq)} tags for {len(tokens)} tokens")


def compare_taggers(
    tokens: Sequence[str],
    tag_sequences: Mapping[str, Sequence[Tag]],
    gold: str | None = None,
) -> AgreementMatrix:
    _check_lengths(tokens, tag_sequences)
    if gold is not None and gold not in tag_sequences:
        raise ValueError(f"gold source {gold!r} not among the tag sources")
    sources = tuple(tag_sequences)
    tags = {s: tuple(tag_sequences[s]) for s in sources}
    n = len(tokens)
    pairwise = {s: {s: 1.0} for s in sources}
    lb = {s: {s: 1.0} for s in sources}
    for a, b in combinations(sources, 2):
        ta, tb = tags[a], tags[b]
        same = sum(1 for x, y in zip(ta, tb) if x == y)
        pairwise[a][b] = pairwise[b][a] = same / n if n else 1.0
        positions = [(x, y) for x, y in zip(ta, tb) if x is not UNIVERSAL or y is not UNIVERSAL]
        frac = sum(1 for x, y in positions if x == y) / len(positions) if positions else None
        lb[a][b] = lb[b][a] = frac
    # rows in source order for stable output
    pairwise = {s: {t: pairwise[s][t] for t in sources} for s in sources}
    lb = {s: {t: lb[s][t] for t in sources} for s in sources}
    accuracy = {s: pairwise[gold][s] for s in sources} if gold is not None else {}
    return AgreementMatrix(sources, tuple(tokens), tags, pairwise, lb, gold, accuracy)


def metric_divergence(
    tokens: Sequence[str],
    tag_sequences: Mapping[str, Sequence[Tag]],
    cfg: MetricConfig = DEFAULT_CONFIG,
) -> dict[str, MetricReport]:
    """One metric report per tag source over the same tokens."""
    _check_lengths(tokens, tag_sequences)
    return {
        name: metric_report(TaggedUtterance(name, tuple(tokens), tuple(seq)), cfg)
        for name, seq in tag_sequences.items()
    }
