"""Code-mixing complexity metrics.

Five scores over a tagged utterance:

* CMI, the code-mixing index, in its original form and extended with the
  switch-point rate ``f_p = P / n``;
* M-index, inequality of the language distribution;
* I-index, the fraction of adjacent token pairs that switch language;
* burstiness of the language-span lengths;
* memory, the lag-1 correlation of consecutive span lengths.

Burstiness and memory return ``None`` when they are undefined for the input
(too few spans, or zero variance for memory).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Literal

from .core import (
    SpanProfile,
    TaggedUtterance,
    TagHistogram,
    UniversalMode,
    extract_spans,
    tag_histogram,
)

__all__ = [
    "MetricConfig",
    "MetricReport",
    "cmi_old",
    "switch_rate",
    "cmi_new",
    "m_index",
    "i_index",
    "burstiness",
    "memory",
    "metric_report",
    "scale_to_ten",
    "natural_range",
    "METRIC_NAMES",
]

CmiMode = Literal["literal", "normalized"]
IIndexMode = Literal["language-bearing", "all-token"]

METRIC_NAMES = ("cmi_old", "cmi_new", "m_index", "i_index", "burstiness", "memory")


@dataclass(frozen=True)
class MetricConfig:
    """Weights and interpretation modes shared by all metric computations.

    ``cmi_mode="literal"`` combines CMI (on its 0-100 scale) with the switch
    rate as printed, ``a * cmi + b * f_p``; ``"normalized"`` rescales CMI to
    [0, 1] first and multiplies the blend by 100.
    """

    a: float = 0.5
    b: float = 0.5
    cmi_mode: CmiMode = "literal"
    universal_mode: UniversalMode = "transparent"
    i_index_mode: IIndexMode = "language-bearing"

    def __post_init__(self):
        for name in ("a", "b"):
            w = getattr(self, name)
            if not 0.0 <= w <= 1.0:
                raise ValueError(f"weight {name}={w} outside [0, 1]")
        if abs(self.a + self.b - 1.0) > 1e-12:
            raise ValueError(f"weights must sum to 1, got a={self.a}, b={self.b}")
        if self.cmi_mode not in ("literal", "normalized"):
            raise ValueError(f"unknown cmi_mode {self.cmi_mode!r}")
        if self.universal_mode not in ("transparent", "literal"):
            raise ValueError(f"unknown universal_mode {self.universal_mode!r}")
        if self.i_index_mode not in ("language-bearing", "all-token"):
            raise ValueError(f"unknown i_index_mode {self.i_index_mode!r}")

    def to_dict(self) -> dict:
        return {
            "a": self.a,
            "b": self.b,
            "cmi_mode": self.cmi_mode,
            "universal_mode": self.universal_mode,
            "i_index_mode": self.i_index_mode,
        }


DEFAULT_CONFIG = MetricConfig()


@dataclass(frozen=True)
class MetricReport:
    id: str
    cmi_old: float
    f_p: float
    cmi_new: float
    m_index: float
    i_index: float
    burstiness: float | None
    memory: float | None
    histogram: TagHistogram
    spans: SpanProfile
    P: int
    n: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "n", self.histogram.total)

    def scores(self) -> dict[str, float | None]:
        return {name: getattr(self, name) for name in METRIC_NAMES}

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "n": self.n,
            "u": self.histogram.universal_count,
            "P": self.P,
            "f_p": self.f_p,
            **self.scores(),
            "histogram": self.histogram.to_dict()["per_language"],
            "spans": self.spans.to_list(),
        }


def cmi_old(hist: TagHistogram) -> float:
    lb = hist.language_bearing
    if lb == 0:
        return 0.0
    return 100.0 * (1.0 - hist.max_language_count / lb)


def switch_rate(P: int, n: int) -> float:
    """f_p: switch points per token."""
    return P / n if n else 0.0


def _cmi_new(cmi: float, f_p: float, cfg: MetricConfig) -> float:
    if cfg.cmi_mode == "literal":
        return cfg.a * cmi + cfg.b * f_p
    return 100.0 * (cfg.a * (cmi / 100.0) + cfg.b * f_p)


def cmi_new(utterance: TaggedUtterance, cfg: MetricConfig = DEFAULT_CONFIG) -> float:
    hist = tag_histogram(utterance)
    P = extract_spans(utterance, cfg.universal_mode).switch_points
    return _cmi_new(cmi_old(hist), switch_rate(P, hist.total), cfg)


def m_index(hist: TagHistogram) -> float:
    """M-index over language-bearing tokens; 0 with fewer than two languages."""
    # sorted so the float sum does not depend on token order
    counts = sorted(c for c in hist.per_language.values() if c > 0)
    k = len(counts)
    if k <= 1:
        return 0.0
    total = sum(counts)
    sq = sum((c / total) ** 2 for c in counts)
    # sq >= 1/k; the clamp only removes rounding overshoot
    return min(1.0, (1.0 - sq) / ((k - 1) * sq))


def _i_index(P: int, hist: TagHistogram, mode: str) -> float:
    n_eff = hist.language_bearing if mode == "language-bearing" else hist.total
    if n_eff <= 1:
        return 0.0
    return P / (n_eff - 1)


def i_index(utterance: TaggedUtterance, cfg: MetricConfig = DEFAULT_CONFIG) -> float:
    hist = tag_histogram(utterance)
    P = extract_spans(utterance, cfg.universal_mode).switch_points
    return _i_index(P, hist, cfg.i_index_mode)


def _moments(xs) -> tuple[float, float]:
    """Population mean and standard deviation."""
    m = sum(xs) / len(xs)
    var = sum((x - m) ** 2 for x in xs) / len(xs)
    return m, math.sqrt(var)


def burstiness(spans: SpanProfile) -> float | None:
    lengths = spans.lengths
    if len(lengths) < 2:
        return None
    m, s = _moments(lengths)
    return (s - m) / (s + m)


def memory(spans: SpanProfile) -> float | None:
    lengths = spans.lengths
    nr = len(lengths)
    if nr < 3:
        return None
    head, tail = lengths[:-1], lengths[1:]
    mu1, s1 = _moments(head)
    mu2, s2 = _moments(tail)
    if s1 == 0.0 or s2 == 0.0:
        return None
    total = sum((x - mu1) * (y - mu2) for x, y in zip(head, tail))
    value = total / ((nr - 1) * s1 * s2)
    return max(-1.0, min(1.0, value))


def metric_report(utterance: TaggedUtterance, cfg: MetricConfig = DEFAULT_CONFIG) -> MetricReport:
    hist = tag_histogram(utterance)
    spans = extract_spans(utterance, cfg.universal_mode)
    P = spans.switch_points
    cmi = cmi_old(hist)
    f_p = switch_rate(P, hist.total)
    return MetricReport(
        id=utterance.id,
        cmi_old=cmi,
        f_p=f_p,
        cmi_new=_cmi_new(cmi, f_p, cfg),
        m_index=m_index(hist),
        i_index=_i_index(P, hist, cfg.i_index_mode),
        burstiness=burstiness(spans),
        memory=memory(spans),
        histogram=hist,
        spans=spans,
        P=P,
    )


def natural_range(metric: str, cfg: MetricConfig = DEFAULT_CONFIG) -> tuple[float, float]:
    """Closed interval a metric can take under ``cfg``."""
    if metric == "cmi_old":
        return (0.0, 100.0)
    if metric == "cmi_new":
        if cfg.cmi_mode == "literal":
            return (0.0, 100.0 * cfg.a + cfg.b)
        return (0.0, 100.0)
    if metric in ("m_index", "i_index", "f_p"):
        return (0.0, 1.0)
    if metric in ("burstiness", "memory"):
        return (-1.0, 1.0)
    raise KeyError(metric)


def scale_to_ten(score: float, natural_range: tuple[float, float]) -> float:
    """Affinely map ``score`` from ``natural_range`` onto [0, 10]."""
    lo, hi = natural_range
    if not hi > lo:
        raise ValueError(f"range {natural_range} has no positive width")
    if not lo <= score <= hi:
        raise ValueError(f"score {score} outside range [{lo}, {hi}]")
    return 10.0 * (score - lo) / (hi - lo)
