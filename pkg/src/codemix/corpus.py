"""Corpus ingestion, serialization, corpus-level statistics and filtering.

The canonical interchange format is *tsv-tagged*::

    # registry: en,hi
    # source: gold
    # id: tweet-17
    kal<TAB>hi
    movie<TAB>en
    !<TAB>univ

    # id: tweet-18
    ...

File-level ``# key: value`` header lines come first. Each utterance is a
block of ``token<TAB>tag`` lines, blocks are separated by a blank line, and
an optional ``# id:`` line opens a block. Blocks without an id get their
1-based ordinal, and :func:`dump_tsv` omits ids equal to that ordinal, so
``dump_tsv(load(x)) == x`` for files in this normal form.
"""

from __future__ import annotations

import io
import json
import math
import statistics
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import islice, repeat
from pathlib import Path
from typing import IO, Iterable, Iterator, Literal, Sequence

from .core import (
    DEFAULT_UNIVERSAL_ALIASES,
    UNIVERSAL,
    Tag,
    TaggedUtterance,
    format_tag,
    normalize_tag,
)
from .lid import LanguageIdentifier, tokenize
from .metrics import DEFAULT_CONFIG, METRIC_NAMES, MetricConfig, MetricReport, metric_report

__all__ = [
    "CorpusFormatError",
    "Corpus",
    "CorpusReader",
    "load_corpus",
    "dump_tsv",
    "save_tsv",
    "dump_jsonl",
    "StatsAccumulator",
    "CorpusStats",
    "corpus_stats",
    "FilterPolicy",
    "FilterResult",
    "classify_utterance",
    "filter_corpus",
]

Format = Literal["tsv", "jsonl", "raw"]
FORMATS = ("tsv", "jsonl", "raw")


class CorpusFormatError(ValueError):
    def __init__(self, message: str, path: str | None = None, lineno: int | None = None):
        self.path = path
        self.lineno = lineno
        where = path or "<input>"
        if lineno is not None:
            where = f"{where}:{lineno}"
        super().__init__(f"{where}: {message}")


@dataclass
class Corpus:
    utterances: list[TaggedUtterance]
    registry: frozenset[str]
    provenance: str = ""
    metadata: dict[str, str] = field(default_factory=dict)
    # raw tag string -> number of tokens it was read as Universal
    alias_hits: dict[str, int] = field(default_factory=dict)

    def __post_init__(self):
        for utt in self.utterances:
            for t in utt.tags:
                if t is not UNIVERSAL and t not in self.registry:
                    raise ValueError(f"utterance {utt.id!r}: tag {t!r} not in registry {sorted(self.registry)}")

    def __len__(self) -> int:
        return len(self.utterances)

    def __iter__(self) -> Iterator[TaggedUtterance]:
        return iter(self.utterances)

    @classmethod
    def from_utterances(cls, utterances: Iterable[TaggedUtterance], provenance: str = "") -> "Corpus":
        utterances = list(utterances)
        registry = frozenset(t for u in utterances for t in u.tags if t is not UNIVERSAL)
        return cls(utterances, registry, provenance)

    def by_id(self) -> dict[str, TaggedUtterance]:
        return {u.id: u for u in self.utterances}


class _TagMapper:
    """Raw tag string to Tag, with a cache and per-raw-string counts.

    Hot loops read :attr:`cache` directly, call :meth:`resolve` on a miss and
    feed the raw strings of each utterance to :meth:`count`.
    """

    def __init__(self, registry, universal_aliases, language_aliases):
        self.registry = frozenset(registry) if registry is not None else None
        self.universal_aliases = frozenset(a.lower() for a in universal_aliases)
        self.language_aliases = dict(language_aliases or {})
        self.raw_counts: Counter[str] = Counter()
        self.cache: dict[str, Tag] = {}

    def resolve(self, raw: str) -> Tag:
        tag = self.cache.get(raw)
        if tag is None:
            try:
                tag = normalize_tag(raw, self.universal_aliases, self.language_aliases)
            except ValueError:
                raise ValueError(f"unknown tag {raw!r} (not a language code or Universal alias)") from None
            if tag is not UNIVERSAL and self.registry is not None and tag not in self.registry:
                raise ValueError(f"tag {raw!r} not in declared registry {sorted(self.registry)}")
            self.cache[raw] = tag
        return tag

    def count(self, raws) -> None:
        self.raw_counts.update(raws)

    @property
    def alias_hits(self) -> dict[str, int]:
        return {r: c for r, c in sorted(self.raw_counts.items()) if self.cache[r] is UNIVERSAL}

    @property
    def seen(self) -> set[str]:
        return {self.cache[r] for r in self.raw_counts if self.cache[r] is not UNIVERSAL}


class CorpusReader:
    """Streaming reader over one corpus file.

    Iterating yields :class:`TaggedUtterance` objects in file order. Header
    metadata is available in :attr:`metadata` once iteration has started.
    ``identifier`` is required for the raw-text format.
    """

    def __init__(
        self,
        source: str | Path | IO[str],
        format: Format = "tsv",
        identifier: LanguageIdentifier | None = None,
        registry: Iterable[str] | None = None,
        universal_aliases: Iterable[str] = DEFAULT_UNIVERSAL_ALIASES,
        language_aliases: dict[str, str] | None = None,
    ):
        if format not in FORMATS:
            raise ValueError(f"unknown format {format!r}; expected one of {FORMATS}")
        if format == "raw" and identifier is None:
            raise ValueError("raw-text input needs a language identifier (lexicons)")
        self.source = source
        self.format = format
        self.identifier = identifier
        self.declared_registry = frozenset(registry) if registry is not None else None
        self._universal_aliases = universal_aliases
        self._language_aliases = language_aliases
        self.metadata: dict[str, str] = {}
        self.mapper = None
        self.count = 0

    @property
    def name(self) -> str:
        if isinstance(self.source, (str, Path)):
            return str(self.source)
        return getattr(self.source, "name", "<stream>")

    @property
    def registry(self) -> frozenset[str]:
        if self.mapper is not None and self.mapper.registry is not None:
            return self.mapper.registry
        if self.mapper is not None:
            return frozenset(self.mapper.seen)
        return frozenset()

    @property
    def alias_hits(self) -> dict[str, int]:
        return self.mapper.alias_hits if self.mapper else {}

    def __iter__(self) -> Iterator[TaggedUtterance]:
        if isinstance(self.source, (str, Path)):
            with open(self.source, encoding="utf-8") as fh:
                yield from self._read(fh)
        else:
            yield from self._read(self.source)

    def _error(self, message, lineno=None):
        return CorpusFormatError(message, self.name, lineno)

    def _read(self, fh: IO[str]) -> Iterator[TaggedUtterance]:
        reader = {"tsv": self._read_tsv, "jsonl": self._read_jsonl, "raw": self._read_raw}[self.format]
        self.count = 0
        for utt in reader(fh):
            self.count += 1
            yield utt
        if self.count == 0:
            raise self._error("no utterances found (empty input)")

    def _make_mapper(self, registry):
        self.mapper = _TagMapper(registry, self._universal_aliases, self._language_aliases)
        return self.mapper

    def _read_tsv(self, fh):
        mapper = None
        cache: dict[str, Tag] = {}
        registry = self.declared_registry
        surfaces: list[str] = []
        raws: list[str] = []
        utt_id = None
        start = 0
        in_header = True
        ordinal = 0
        for lineno, line in enumerate(fh, 1):
            line = line.rstrip("\r\n")
            if not line:
                if surfaces:
                    ordinal += 1
                    yield self._build_raw(mapper, utt_id, ordinal, surfaces, raws, start)
                    surfaces, raws, utt_id, start = [], [], None, 0
                elif utt_id is not None:
                    raise self._error("'# id:' line not followed by tokens", lineno)
                continue
            if line[0] == "#" and "\t" not in line:
                key, sep, value = line[1:].partition(":")
                key, value = key.strip(), value.strip()
                if in_header and key != "id":
                    if sep:
                        self.metadata[key] = value
                        if key == "registry" and registry is None:
                            registry = frozenset(c.strip() for c in value.split(",") if c.strip())
                    continue
                if key == "id" and sep:
                    if surfaces:
                        raise self._error("'# id:' line inside an utterance block", lineno)
                    utt_id = value
                    start = lineno
                # other comments inside the body are dropped
                continue
            if mapper is None:
                in_header = False
                mapper = self._make_mapper(registry)
                cache = mapper.cache
            surface, sep, raw_tag = line.partition("\t")
            if not sep or "\t" in raw_tag:
                raise self._error(f"expected 'token<TAB>tag', got {line.count(chr(9)) + 1} column(s)", lineno)
            if raw_tag not in cache:
                try:
                    mapper.resolve(raw_tag)
                except ValueError as exc:
                    raise self._error(str(exc), lineno) from None
            if not surfaces and utt_id is None:
                start = lineno
            surfaces.append(surface)
            raws.append(raw_tag)
        if surfaces:
            ordinal += 1
            yield self._build_raw(mapper, utt_id, ordinal, surfaces, raws, start)
        elif utt_id is not None:
            raise self._error("'# id:' line not followed by tokens")
        if mapper is None:
            self._make_mapper(registry)

    def _build_raw(self, mapper, utt_id, ordinal, surfaces, raws, lineno):
        mapper.count(raws)
        cache = mapper.cache
        return self._build(utt_id, ordinal, surfaces, [cache[r] for r in raws], lineno)

    def _build(self, utt_id, ordinal, surfaces, tags, lineno):
        try:
            return TaggedUtterance(utt_id if utt_id is not None else str(ordinal), tuple(surfaces), tuple(tags))
        except ValueError as exc:
            raise self._error(str(exc), lineno) from None

    def _read_jsonl(self, fh):
        mapper = self._make_mapper(self.declared_registry)
        ordinal = 0
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                rec = json.loads(line)
            except json.JSONDecodeError as exc:
                raise self._error(f"invalid JSON: {exc.msg}", lineno) from None
            if not isinstance(rec, dict) or "tokens" not in rec or "tags" not in rec:
                raise self._error("record needs 'tokens' and 'tags'", lineno)
            tokens, raw_tags = rec["tokens"], rec["tags"]
            if len(tokens) != len(raw_tags):
                raise self._error(f"{len(tokens)} tokens but {len(raw_tags)} tags", lineno)
            if not all(isinstance(t, str) for t in raw_tags):
                raise self._error("tags must be strings", lineno)
            try:
                for t in raw_tags:
                    mapper.resolve(t)
            except ValueError as exc:
                raise self._error(str(exc), lineno) from None
            ordinal += 1
            utt_id = str(rec["id"]) if rec.get("id") is not None else str(ordinal)
            yield self._build_raw(mapper, utt_id, ordinal, tokens, raw_tags, lineno)

    def _read_raw(self, fh):
        mapper = self._make_mapper(self.declared_registry)
        ordinal = 0
        for lineno, line in enumerate(fh, 1):
            if "\t" in line:
                raise self._error(
                    "input contains TAB characters; it looks like tsv-tagged data, not raw text "
                    "(use --format tsv)",
                    lineno,
                )
            tokens = tokenize(line)
            if not tokens:
                continue
            ordinal += 1
            utt = self.identifier.tag(tokens, str(ordinal))
            raws = [format_tag(t) for t in utt.tags]
            for r, t in zip(raws, utt.tags):
                mapper.cache[r] = t
            mapper.count(raws)
            yield utt


def load_corpus(
    path: str | Path | IO[str],
    format: Format = "tsv",
    identifier: LanguageIdentifier | None = None,
    **reader_options,
) -> Corpus:
    reader = CorpusReader(path, format, identifier, **reader_options)
    utterances = list(reader)
    registry = reader.registry
    if format == "raw":
        registry = registry | frozenset(identifier.languages)
    return Corpus(
        utterances,
        registry,
        provenance=reader.metadata.get("source", reader.name),
        metadata=reader.metadata,
        alias_hits=reader.alias_hits,
    )


def _check_field(value: str, what: str) -> str:
    if "\t" in value or "\n" in value or "\r" in value:
        raise ValueError(f"{what} {value!r} contains a tab or newline")
    return value


def dump_tsv(corpus: Corpus, out: IO[str] | None = None) -> str | None:
    """Serialize ``corpus`` in tsv-tagged normal form.

    Writes to ``out`` when given, otherwise returns the text.
    """
    buf = out if out is not None else io.StringIO()
    meta = dict(corpus.metadata)
    meta["registry"] = ",".join(sorted(corpus.registry))
    # a loaded corpus keeps its own headers; provenance only fills in for
    # corpora built in code
    if corpus.provenance and not corpus.metadata:
        meta["source"] = corpus.provenance
    header = ["registry"] + ([k for k in ("source",) if k in meta]) + [
        k for k in meta if k not in ("registry", "source")
    ]
    for key in header:
        buf.write(f"# {_check_field(key, 'header key')}: {_check_field(meta[key], 'header value')}\n")
    for i, utt in enumerate(corpus.utterances, 1):
        buf.write("\n")
        write_utterance_tsv(utt, buf, ordinal=i)
    if out is None:
        return buf.getvalue()
    return None


def write_utterance_tsv(utt: TaggedUtterance, out: IO[str], ordinal: int | None = None) -> None:
    if ordinal is None or utt.id != str(ordinal):
        out.write(f"# id: {_check_field(utt.id, 'utterance id')}\n")
    for s, t in zip(utt.surfaces, utt.tags):
        out.write(f"{_check_field(s, 'token')}\t{format_tag(t)}\n")


def save_tsv(corpus: Corpus, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        dump_tsv(corpus, fh)


def utterance_to_json(utt: TaggedUtterance) -> dict:
    return {"id": utt.id, "tokens": list(utt.surfaces), "tags": [format_tag(t) for t in utt.tags]}


def dump_jsonl(corpus: Iterable[TaggedUtterance], out: IO[str]) -> None:
    for utt in corpus:
        out.write(json.dumps(utterance_to_json(utt), ensure_ascii=False) + "\n")


# ---------------------------------------------------------------------------
# statistics


@dataclass
class StatsAccumulator:
    """Partial corpus aggregate; :meth:`merge` is associative and commutative.

    Raw metric values are kept so that the final mean, median and standard
    deviation are exact and independent of how the corpus was partitioned.
    """

    utterances: int = 0
    tokens: int = 0
    monolingual: int = 0
    values: dict[str, list[float]] = field(default_factory=lambda: {m: [] for m in METRIC_NAMES})

    def add(self, report: MetricReport) -> None:
        self.utterances += 1
        self.tokens += report.n
        if report.cmi_new == 0.0:
            self.monolingual += 1
        for name in METRIC_NAMES:
            v = getattr(report, name)
            if v is not None:
                self.values[name].append(v)

    def merge(self, other: "StatsAccumulator") -> "StatsAccumulator":
        out = StatsAccumulator(
            self.utterances + other.utterances,
            self.tokens + other.tokens,
            self.monolingual + other.monolingual,
        )
        for name in METRIC_NAMES:
            out.values[name] = self.values[name] + other.values[name]
        return out

    def finalize(self, bin_width: float = 10.0, config: dict | None = None) -> "CorpusStats":
        if self.utterances == 0:
            raise ValueError("cannot summarize an empty corpus")
        summaries = {name: _summary(self.values[name]) for name in METRIC_NAMES}
        return CorpusStats(
            utterances=self.utterances,
            tokens=self.tokens,
            metrics=summaries,
            cmi_histogram=_histogram(self.values["cmi_new"], bin_width),
            bin_width=bin_width,
            monolingual_fraction=self.monolingual / self.utterances,
            config=dict(config or {}),
        )


def _summary(values: list[float]) -> dict:
    if not values:
        return {"count": 0, "mean": None, "median": None, "std": None, "min": None, "max": None}
    xs = sorted(values)
    n = len(xs)
    mean = math.fsum(xs) / n
    std = math.sqrt(math.fsum((x - mean) ** 2 for x in xs) / n)
    return {"count": n, "mean": mean, "median": statistics.median(xs), "std": std, "min": xs[0], "max": xs[-1]}


def _histogram(values: list[float], width: float) -> list[dict]:
    if not width > 0:
        raise ValueError("histogram bin width must be positive")
    nbins = max(1, math.ceil(100.0 / width))
    counts = [0] * nbins
    for v in values:
        counts[min(nbins - 1, max(0, int(v // width)))] += 1
    return [
        {"lo": i * width, "hi": min(100.0, (i + 1) * width), "count": c} for i, c in enumerate(counts)
    ]


@dataclass(frozen=True)
class CorpusStats:
    utterances: int
    tokens: int
    metrics: dict[str, dict]
    cmi_histogram: list[dict]
    bin_width: float
    monolingual_fraction: float
    config: dict

    def to_dict(self) -> dict:
        return {
            "config": self.config,
            "utterances": self.utterances,
            "tokens": self.tokens,
            "monolingual_fraction": self.monolingual_fraction,
            "metrics": self.metrics,
            "cmi_histogram": {"metric": "cmi_new", "bin_width": self.bin_width, "bins": self.cmi_histogram},
        }


def _accumulate(utterances: Sequence[TaggedUtterance], cfg: MetricConfig) -> StatsAccumulator:
    acc = StatsAccumulator()
    for utt in utterances:
        acc.add(metric_report(utt, cfg))
    return acc


def _chunks(items: Iterable, size: int) -> Iterator[list]:
    it = iter(items)
    while True:
        chunk = list(islice(it, size))
        if not chunk:
            return
        yield chunk


def corpus_stats(
    corpus: Iterable[TaggedUtterance],
    cfg: MetricConfig = DEFAULT_CONFIG,
    bin_width: float = 10.0,
    workers: int = 1,
    chunk_size: int = 5000,
) -> CorpusStats:
    """Aggregate metric statistics over a corpus or any utterance iterable."""
    if workers <= 1:
        acc = _accumulate(corpus, cfg)
    else:
        acc = StatsAccumulator()
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = pool.map(_accumulate, _chunks(corpus, chunk_size), repeat(cfg))
            for part in parts:
                acc = acc.merge(part)
    return acc.finalize(bin_width, cfg.to_dict())


# ---------------------------------------------------------------------------
# filtering


@dataclass(frozen=True)
class FilterPolicy:
    """Thresholds for splitting a corpus into code-mixed, monolingual and noisy.

    An utterance is noisy when its language-bearing fraction falls below
    ``min_language_bearing_fraction`` or, if a language identifier is
    available, when its out-of-vocabulary fraction exceeds
    ``max_oov_fraction``. Non-noisy utterances with ``cmi_new == 0`` are
    monolingual; the rest are code-mixed when ``cmi_new >= min_cmi_new`` and
    otherwise go to ``below_threshold``.
    """

    min_cmi_new: float = 0.0
    min_language_bearing_fraction: float = 0.0
    max_oov_fraction: float = 1.0
    below_threshold: Literal["monolingual", "noisy"] = "monolingual"

    def __post_init__(self):
        if self.min_cmi_new < 0:
            raise ValueError("min_cmi_new must be >= 0")
        for name in ("min_language_bearing_fraction", "max_oov_fraction"):
            if not 0.0 <= getattr(self, name) <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1]")
        if self.below_threshold not in ("monolingual", "noisy"):
            raise ValueError("below_threshold must be 'monolingual' or 'noisy'")

    def to_dict(self) -> dict:
        return {
            "min_cmi_new": self.min_cmi_new,
            "min_language_bearing_fraction": self.min_language_bearing_fraction,
            "max_oov_fraction": self.max_oov_fraction,
            "below_threshold": self.below_threshold,
        }


BUCKETS = ("code_mixed", "monolingual", "noisy")


def classify_utterance(
    utt: TaggedUtterance,
    policy: FilterPolicy,
    cfg: MetricConfig = DEFAULT_CONFIG,
    identifier: LanguageIdentifier | None = None,
    report: MetricReport | None = None,
) -> tuple[str, str]:
    """Bucket name and a short reason for one utterance."""
    report = report or metric_report(utt, cfg)
    lb_frac = report.histogram.language_bearing / report.n
    if lb_frac < policy.min_language_bearing_fraction:
        return "noisy", f"language_bearing_fraction={lb_frac:.4g}<{policy.min_language_bearing_fraction:g}"
    if identifier is not None:
        oov = identifier.oov_fraction(utt.surfaces)
        if oov > policy.max_oov_fraction:
            return "noisy", f"oov_fraction={oov:.4g}>{policy.max_oov_fraction:g}"
    if report.cmi_new == 0.0:
        return "monolingual", "cmi_new=0"
    if report.cmi_new >= policy.min_cmi_new:
        return "code_mixed", f"cmi_new={report.cmi_new:.4g}>={policy.min_cmi_new:g}"
    return policy.below_threshold, f"cmi_new={report.cmi_new:.4g}<{policy.min_cmi_new:g}"


@dataclass
class FilterResult:
    code_mixed: list[TaggedUtterance] = field(default_factory=list)
    monolingual: list[TaggedUtterance] = field(default_factory=list)
    noisy: list[TaggedUtterance] = field(default_factory=list)
    # (utterance id, bucket, reason) in input order
    assignments: list[tuple[str, str, str]] = field(default_factory=list)
    policy: FilterPolicy = field(default_factory=FilterPolicy)
    noise_proxy: str = ""

    def bucket(self, name: str) -> list[TaggedUtterance]:
        return getattr(self, name)

    def counts(self) -> dict[str, int]:
        return {b: len(self.bucket(b)) for b in BUCKETS}

    def to_dict(self) -> dict:
        return {
            "policy": self.policy.to_dict(),
            "noise_proxy": self.noise_proxy,
            "counts": self.counts(),
            "assignments": [
                {"id": uid, "bucket": bucket, "reason": reason} for uid, bucket, reason in self.assignments
            ],
        }


def noise_proxy_description(identifier: LanguageIdentifier | None) -> str:
    if identifier is None:
        return "language-bearing fraction only (no lexicons given, oov fraction not computed)"
    return "language-bearing fraction and out-of-vocabulary fraction (tokens matching no rule and no lexicon)"


def filter_corpus(
    corpus: Iterable[TaggedUtterance],
    policy: FilterPolicy = FilterPolicy(),
    cfg: MetricConfig = DEFAULT_CONFIG,
    identifier: LanguageIdentifier | None = None,
) -> FilterResult:
    result = FilterResult(policy=policy, noise_proxy=noise_proxy_description(identifier))
    for utt in corpus:
        bucket, reason = classify_utterance(utt, policy, cfg, identifier)
        result.bucket(bucket).append(utt)
        result.assignments.append((utt.id, bucket, reason))
    return result
