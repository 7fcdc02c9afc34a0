"""Random tagged utterances for tests, benchmarks and demos.

Nothing here resembles real code-mixed text; the generators only produce
tag sequences with controllable length, language count and Universal rate.
"""

from __future__ import annotations

import random
from typing import Iterator, Sequence

from .core import UNIVERSAL, TaggedUtterance

DEFAULT_LANGUAGES = ("hi", "en", "bn", "ta")


def random_tags(
    rng: random.Random,
    length: int,
    languages: Sequence[str] = DEFAULT_LANGUAGES[:2],
    universal_rate: float = 0.15,
    stickiness: float = 0.0,
) -> list:
    """Tag sequence where each token repeats the previous language with
    probability ``stickiness`` and otherwise draws uniformly."""
    tags = []
    prev = None
    for _ in range(length):
        if rng.random() < universal_rate:
            tags.append(UNIVERSAL)
            continue
        if prev is not None and rng.random() < stickiness:
            tag = prev
        else:
            tag = languages[rng.randrange(len(languages))]
        tags.append(tag)
        prev = tag
    return tags


def random_utterance(
    rng: random.Random,
    length: int,
    languages: Sequence[str] = DEFAULT_LANGUAGES[:2],
    universal_rate: float = 0.15,
    stickiness: float = 0.0,
    id: str = "0",
) -> TaggedUtterance:
    tags = random_tags(rng, length, languages, universal_rate, stickiness)
    surfaces = tuple(
        ("@u%d" % i) if t is UNIVERSAL else f"{t}{i}" for i, t in enumerate(tags)
    )
    return TaggedUtterance(id, surfaces, tuple(tags))


def random_corpus(
    count: int,
    seed: int = 0,
    mean_length: int = 20,
    max_languages: int = 2,
    universal_rate: float = 0.15,
) -> Iterator[TaggedUtterance]:
    """``count`` utterances with lengths uniform on [1, 2 * mean_length - 1].

    Each utterance uses between one and ``max_languages`` languages and a
    random stickiness, so the corpus mixes monolingual, bursty and
    alternating cases.
    """
    rng = random.Random(seed)
    pool = DEFAULT_LANGUAGES[:max_languages]
    for i in range(count):
        k = rng.randint(1, len(pool))
        langs = rng.sample(pool, k)
        length = rng.randint(1, 2 * mean_length - 1)
        yield random_utterance(rng, length, langs, universal_rate, rng.random(), id=str(i + 1))
