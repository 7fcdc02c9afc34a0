"""Probes for what code-mixing metrics do and do not capture.

* :func:`shuffle_probe` scores random token permutations of an utterance.
  Histogram-only scores (CMI, M-index) cannot move; the order-sensitive ones
  report how far they spread.
* :func:`correlate_annotations` rank-correlates metric scores with human
  degree-of-code-mixing (DCM) and readability (RA) ratings.
* :func:`annotator_agreement` compares annotators pairwise.

Rank correlations are Spearman coefficients with average ranks for ties.
A coefficient is ``None`` when either side is constant.
"""

from __future__ import annotations

import csv
import random
from collections import defaultdict
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Iterable, Sequence

from scipy.stats import spearmanr

from .core import TaggedUtterance
from .metrics import DEFAULT_CONFIG, METRIC_NAMES, MetricConfig, metric_report

__all__ = [
    "AnnotationRecord",
    "load_annotations",
    "write_annotations",
    "ProbeReport",
    "shuffle_probe",
    "rank_correlation",
    "CorrelationTable",
    "correlate_annotations",
    "AgreementTable",
    "annotator_agreement",
    "UnresolvedIdsError",
]

EXACT_METRICS = ("cmi_old", "m_index")
PROBE_TOLERANCE = 1e-12
TIE_HANDLING = "average ranks"
ANNOTATION_HEADER = ("utterance_id", "annotator_id", "dcm", "ra")


@dataclass(frozen=True)
class AnnotationRecord:
    utterance_id: str
    annotator_id: str
    dcm: int
    ra: int

    def __post_init__(self):
        for name in ("dcm", "ra"):
            v = getattr(self, name)
            if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v <= 10:
                raise ValueError(f"{name} must be an integer in 0..10, got {v!r}")


def load_annotations(path: str | Path) -> list[AnnotationRecord]:
    """Read an annotation CSV with header ``utterance_id,annotator_id,dcm,ra``."""
    records = []
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or tuple(h.strip() for h in header) != ANNOTATION_HEADER:
            raise ValueError(f"{path}: expected header {','.join(ANNOTATION_HEADER)}")
        for lineno, row in enumerate(reader, 2):
            if not row or not any(cell.strip() for cell in row):
                continue
            if len(row) != 4:
                raise ValueError(f"{path}:{lineno}: expected 4 columns, got {len(row)}")
            uid, aid, dcm, ra = (cell.strip() for cell in row)
            try:
                records.append(AnnotationRecord(uid, aid, int(dcm), int(ra)))
            except ValueError as exc:
                raise ValueError(f"{path}:{lineno}: {exc}") from None
    return records


def write_annotations(records: Iterable[AnnotationRecord], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(ANNOTATION_HEADER)
        for r in records:
            w.writerow((r.utterance_id, r.annotator_id, r.dcm, r.ra))


# ---------------------------------------------------------------------------
# shuffle probe


@dataclass(frozen=True)
class ProbeReport:
    utterance_id: str
    permutations: int
    seed: int
    # metric -> {"invariant", "min", "max", "spread", "defined"}
    metrics: dict[str, dict]
    # metric -> {"min": order, "max": order}, the permutations attaining the extremes
    witnesses: dict[str, dict[str, list[int]]]
    config: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "utterance_id": self.utterance_id,
            "permutations": self.permutations,
            "seed": self.seed,
            "config": self.config,
            "metrics": self.metrics,
            "witnesses": self.witnesses,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ProbeReport":
        return cls(
            utterance_id=d["utterance_id"],
            permutations=d["permutations"],
            seed=d["seed"],
            metrics=d["metrics"],
            witnesses=d["witnesses"],
            config=d.get("config", {}),
        )


def shuffle_probe(
    utterance: TaggedUtterance,
    permutations: int = 100,
    seed: int = 0,
    cfg: MetricConfig = DEFAULT_CONFIG,
) -> ProbeReport:
    """Score ``permutations`` token orders of ``utterance``, the identity first.

    The remaining orders are uniform random shuffles drawn from a generator
    seeded with ``seed``.
    """
    if permutations < 1:
        raise ValueError("permutations must be >= 1")
    n = len(utterance)
    rng = random.Random(seed)
    identity = list(range(n))
    orders = [identity]
    for _ in range(permutations - 1):
        order = identity[:]
        rng.shuffle(order)
        orders.append(order)

    values: dict[str, list] = {m: [] for m in METRIC_NAMES}
    for order in orders:
        report = metric_report(utterance.permuted(order), cfg)
        for m in METRIC_NAMES:
            values[m].append(getattr(report, m))

    stats, witnesses = {}, {}
    for m in METRIC_NAMES:
        vals = values[m]
        defined = [(v, i) for i, v in enumerate(vals) if v is not None]
        if defined:
            lo_v, lo_i = min(defined)
            hi_v, hi_i = max(defined)
            spread = hi_v - lo_v
        else:
            lo_v = hi_v = spread = None
            lo_i = hi_i = 0
        tol = 0.0 if m in EXACT_METRICS else PROBE_TOLERANCE
        invariant = len(defined) in (0, len(vals)) and (spread is None or spread <= tol)
        stats[m] = {
            "invariant": invariant,
            "min": lo_v,
            "max": hi_v,
            "spread": spread,
            "defined": len(defined),
        }
        witnesses[m] = {"min": orders[lo_i], "max": orders[hi_i]}
    return ProbeReport(utterance.id, permutations, seed, stats, witnesses, cfg.to_dict())


# ---------------------------------------------------------------------------
# annotation analysis


class UnresolvedIdsError(ValueError):
    def __init__(self, ids: Sequence[str]):
        self.ids = list(ids)
        super().__init__(f"annotation records reference unknown utterance ids: {', '.join(self.ids)}")


def rank_correlation(x: Sequence[float], y: Sequence[float]) -> float | None:
    """Spearman's rho with average ranks; ``None`` if undefined."""
    if len(x) != len(y):
        raise ValueError("rank correlation needs equal-length samples")
    if len(x) < 2 or len(set(x)) < 2 or len(set(y)) < 2:
        return None
    return float(spearmanr(x, y).statistic)


@dataclass(frozen=True)
class CorrelationTable:
    # one row per (metric, target): {"metric", "target", "rho", "n"}
    rows: list[dict]
    # utterance id -> {"mean_dcm", "mean_ra", "annotations", <metric>: value}
    utterances: dict[str, dict]
    tie_handling: str = TIE_HANDLING

    def get(self, metric: str, target: str) -> dict:
        for row in self.rows:
            if row["metric"] == metric and row["target"] == target:
                return row
        raise KeyError((metric, target))

    def to_dict(self) -> dict:
        return {"tie_handling": self.tie_handling, "correlations": self.rows, "utterances": self.utterances}


def _index_records(records: Iterable[AnnotationRecord]) -> dict[str, dict[str, AnnotationRecord]]:
    """annotator -> utterance -> record, rejecting duplicates."""
    by_annotator: dict[str, dict[str, AnnotationRecord]] = defaultdict(dict)
    for r in records:
        if r.utterance_id in by_annotator[r.annotator_id]:
            raise ValueError(f"annotator {r.annotator_id!r} rated utterance {r.utterance_id!r} twice")
        by_annotator[r.annotator_id][r.utterance_id] = r
    return by_annotator


def correlate_annotations(
    records: Iterable[AnnotationRecord],
    corpus: Iterable[TaggedUtterance],
    cfg: MetricConfig = DEFAULT_CONFIG,
    metrics: Sequence[str] = METRIC_NAMES,
) -> CorrelationTable:
    records = list(records)
    by_annotator = _index_records(records)
    utterances = {u.id: u for u in corpus}
    unresolved = sorted({r.utterance_id for r in records} - set(utterances))
    if unresolved:
        raise UnresolvedIdsError(unresolved)

    ratings: dict[str, list[AnnotationRecord]] = defaultdict(list)
    for per_utt in by_annotator.values():
        for uid, r in per_utt.items():
            ratings[uid].append(r)
    ids = sorted(ratings)
    if len(ids) < 3:
        raise ValueError(f"need annotations for at least 3 distinct utterances, got {len(ids)}")

    table: dict[str, dict] = {}
    for uid in ids:
        rs = ratings[uid]
        report = metric_report(utterances[uid], cfg)
        row = {
            "annotations": len(rs),
            "mean_dcm": sum(r.dcm for r in rs) / len(rs),
            "mean_ra": sum(r.ra for r in rs) / len(rs),
        }
        row.update({m: getattr(report, m) for m in metrics})
        table[uid] = row

    rows = []
    for m in metrics:
        for target in ("dcm", "ra"):
            pairs = [(table[u][m], table[u]["mean_" + target]) for u in ids if table[u][m] is not None]
            rho = rank_correlation([p[0] for p in pairs], [p[1] for p in pairs]) if len(pairs) >= 3 else None
            rows.append({"metric": m, "target": target, "rho": rho, "n": len(pairs)})
    return CorrelationTable(rows, table)


@dataclass(frozen=True)
class AgreementTable:
    # one row per (annotator pair, dimension)
    rows: list[dict]
    tie_handling: str = TIE_HANDLING

    def get(self, a: str, b: str, dimension: str) -> dict:
        a, b = sorted((a, b))
        for row in self.rows:
            if (row["a"], row["b"], row["dimension"]) == (a, b, dimension):
                return row
        raise KeyError((a, b, dimension))

    def to_dict(self) -> dict:
        return {"tie_handling": self.tie_handling, "pairs": self.rows}


def annotator_agreement(records: Iterable[AnnotationRecord]) -> AgreementTable:
    """Mean absolute difference and rank correlation for every annotator pair.

    Pairs sharing fewer than two utterances are listed with status
    ``"insufficient overlap"`` and no statistics.
    """
    by_annotator = _index_records(records)
    annotators = sorted(by_annotator)
    if len(annotators) < 2:
        raise ValueError("agreement needs at least two annotators")
    rows = []
    for a, b in combinations(annotators, 2):
        shared = sorted(set(by_annotator[a]) & set(by_annotator[b]))
        for dim in ("dcm", "ra"):
            row = {"a": a, "b": b, "dimension": dim, "shared": len(shared)}
            if len(shared) < 2:
                row.update(status="insufficient overlap", mean_abs_diff=None, rho=None)
            else:
                xa = [getattr(by_annotator[a][u], dim) for u in shared]
                xb = [getattr(by_annotator[b][u], dim) for u in shared]
                row.update(
                    status="ok",
                    mean_abs_diff=sum(abs(p - q) for p, q in zip(xa, xb)) / len(shared),
                    rho=rank_correlation(xa, xb),
                )
            rows.append(row)
    if all(r["status"] != "ok" for r in rows):
        raise ValueError("no annotator pair shares at least two utterances")
    return AgreementTable(rows)
