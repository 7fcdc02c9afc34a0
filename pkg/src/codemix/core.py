"""Domain types shared by every part of the package.

A tag is either a language code (a short lowercase string such as ``"hi"``)
or the :data:`UNIVERSAL` sentinel, which marks language-independent tokens:
named entities, mentions, hashtags, numbers, punctuation and the like.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Literal, NamedTuple, Sequence, Union

__all__ = [
    "UNIVERSAL",
    "Tag",
    "UniversalMode",
    "Token",
    "TaggedUtterance",
    "TagHistogram",
    "SpanProfile",
    "is_language",
    "validate_language_code",
    "tag_histogram",
    "extract_spans",
    "count_switch_points",
    "normalize_tag",
    "format_tag",
    "DEFAULT_UNIVERSAL_ALIASES",
]

LANGUAGE_CODE_RE = re.compile(r"^[a-z][a-z0-9_-]*$")


class _UniversalTag:
    """Singleton marking a language-independent token."""

    __slots__ = ()
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "UNIVERSAL"

    def __reduce__(self):
        # keeps identity across pickling (process pools)
        return "UNIVERSAL"


UNIVERSAL = _UniversalTag()

Tag = Union[str, _UniversalTag]
UniversalMode = Literal["transparent", "literal"]


def is_language(tag: Tag) -> bool:
    return tag is not UNIVERSAL


def validate_language_code(code: str) -> str:
    if not isinstance(code, str) or not LANGUAGE_CODE_RE.match(code):
        raise ValueError(f"invalid language code {code!r}; expected a short lowercase identifier")
    return code


class Token(NamedTuple):
    surface: str
    tag: Tag | None = None


@dataclass(frozen=True)
class TaggedUtterance:
    """An ordered, fully tagged token sequence.

    Surfaces and tags are stored as parallel tuples; :attr:`tokens` gives the
    paired view.
    """

    id: str
    surfaces: tuple[str, ...]
    tags: tuple[Tag, ...]

    def __post_init__(self):
        if not isinstance(self.surfaces, tuple):
            object.__setattr__(self, "surfaces", tuple(self.surfaces))
        if not isinstance(self.tags, tuple):
            object.__setattr__(self, "tags", tuple(self.tags))
        if not self.surfaces:
            raise ValueError(f"utterance {self.id!r} has no tokens")
        if len(self.surfaces) != len(self.tags):
            raise ValueError(
                f"utterance {self.id!r}: {len(self.surfaces)} tokens but {len(self.tags)} tags"
            )
        try:
            if not all(map(str.strip, self.surfaces)):
                raise ValueError(f"utterance {self.id!r} contains an empty token surface")
            distinct = set(self.tags)
        except TypeError:
            raise ValueError(f"utterance {self.id!r} has a non-string surface or unhashable tag") from None
        for t in distinct:
            if t is not UNIVERSAL and (t.__class__ is not str or not t):
                raise ValueError(f"utterance {self.id!r} has an invalid tag {t!r}")

    @classmethod
    def from_tokens(cls, id: str, tokens: Iterable[Token]) -> "TaggedUtterance":
        tokens = list(tokens)
        if any(t.tag is None for t in tokens):
            raise ValueError(f"utterance {id!r} has untagged tokens")
        return cls(id, tuple(t.surface for t in tokens), tuple(t.tag for t in tokens))

    @classmethod
    def from_tags(cls, tags: Sequence[Tag], id: str = "0") -> "TaggedUtterance":
        """Build an utterance with placeholder surfaces; handy when only tags matter."""
        return cls(id, tuple(f"w{i}" for i in range(len(tags))), tuple(tags))

    @property
    def tokens(self) -> tuple[Token, ...]:
        return tuple(Token(s, t) for s, t in zip(self.surfaces, self.tags))

    def __len__(self) -> int:
        return len(self.surfaces)

    def permuted(self, order: Sequence[int]) -> "TaggedUtterance":
        """Return the utterance with tokens reordered by ``order`` (a permutation of indices)."""
        return TaggedUtterance(
            self.id,
            tuple(self.surfaces[i] for i in order),
            tuple(self.tags[i] for i in order),
        )


@dataclass(frozen=True)
class TagHistogram:
    per_language: dict[str, int]
    universal_count: int
    total: int

    def __post_init__(self):
        if self.universal_count < 0 or any(v < 0 for v in self.per_language.values()):
            raise ValueError("histogram counts must be non-negative")
        if sum(self.per_language.values()) + self.universal_count != self.total:
            raise ValueError("histogram counts do not sum to the total")

    @property
    def language_bearing(self) -> int:
        """Number of tokens carrying a language tag (n - u)."""
        return self.total - self.universal_count

    @property
    def max_language_count(self) -> int:
        return max(self.per_language.values(), default=0)

    @property
    def languages(self) -> tuple[str, ...]:
        return tuple(sorted(code for code, c in self.per_language.items() if c > 0))

    def to_dict(self) -> dict:
        return {
            "per_language": dict(sorted(self.per_language.items())),
            "universal": self.universal_count,
            "total": self.total,
        }


@dataclass(frozen=True)
class SpanProfile:
    """Run-length encoding of language spans over the language-bearing tokens.

    In transparent mode adjacent spans always differ in language. In literal
    mode a Universal token closes the current span, so neighbouring spans can
    share a language; such a boundary is not a switch point.
    """

    spans: tuple[tuple[str, int], ...] = ()
    language_bearing_count: int = 0
    lengths: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "lengths", tuple(n for _, n in self.spans))
        if sum(self.lengths) != self.language_bearing_count:
            raise ValueError("span lengths must sum to the language-bearing token count")

    def __len__(self) -> int:
        return len(self.spans)

    @property
    def switch_points(self) -> int:
        spans = self.spans
        return sum(1 for i in range(1, len(spans)) if spans[i][0] != spans[i - 1][0])

    def to_list(self) -> list[list]:
        return [[code, n] for code, n in self.spans]


def tag_histogram(utterance: TaggedUtterance) -> TagHistogram:
    counts = Counter(utterance.tags)
    u = counts.pop(UNIVERSAL, 0)
    return TagHistogram(dict(counts), u, len(utterance.tags))


def _spans_from_tags(tags: Sequence[Tag], universal_mode: str) -> list[tuple[str, int]]:
    if universal_mode not in ("transparent", "literal"):
        raise ValueError(f"unknown universal mode {universal_mode!r}")
    literal = universal_mode == "literal"
    spans: list[tuple[str, int]] = []
    cur = None
    run = 0
    for t in tags:
        if t is UNIVERSAL:
            if literal and run:
                spans.append((cur, run))
                cur, run = None, 0
            continue
        if t == cur:
            run += 1
        else:
            if run:
                spans.append((cur, run))
            cur, run = t, 1
    if run:
        spans.append((cur, run))
    return spans


def extract_spans(utterance: TaggedUtterance, universal_mode: UniversalMode = "transparent") -> SpanProfile:
    """Language spans of ``utterance``; empty when no token carries a language."""
    spans = _spans_from_tags(utterance.tags, universal_mode)
    return SpanProfile(tuple(spans), sum(n for _, n in spans))


def count_switch_points(utterance: TaggedUtterance, universal_mode: UniversalMode = "transparent") -> int:
    return extract_spans(utterance, universal_mode).switch_points


# Raw tag strings read as Universal. Gold annotations in the wild use several
# spellings for "no language"; LID tools emit their own unknown markers.
DEFAULT_UNIVERSAL_ALIASES = frozenset({"univ", "universal", "u", "o", "other", "ne", "acro", "unk", "un", "x"})
UNIVERSAL_OUTPUT = "univ"


def normalize_tag(
    raw: str,
    universal_aliases: Iterable[str] = DEFAULT_UNIVERSAL_ALIASES,
    language_aliases: dict[str, str] | None = None,
) -> Tag:
    """Map a raw tag string to a :data:`Tag`.

    Matching is case-insensitive. ``language_aliases`` renames codes, e.g.
    ``{"hin": "hi", "eng": "en"}``. Raises ``ValueError`` for strings that are
    neither an alias nor a well-formed language code.
    """
    key = raw.strip().lower()
    if key in universal_aliases:
        return UNIVERSAL
    if language_aliases:
        key = language_aliases.get(key, key)
    return validate_language_code(key)


def format_tag(tag: Tag) -> str:
    return UNIVERSAL_OUTPUT if tag is UNIVERSAL else tag
