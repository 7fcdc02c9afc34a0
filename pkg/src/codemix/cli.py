"""Batch command-line frontend.

Every command writes a ``# config: {...}`` line first, holding the full
effective configuration, followed by its results as a table or as JSON
(one JSON object per line). Exit codes: 0 success, 1 when filtering leaves
the code-mixed partition empty, 2 on input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from itertools import repeat
from pathlib import Path
from typing import Iterable, Sequence

from .core import UNIVERSAL, normalize_tag
from .corpus import (
    BUCKETS,
    CorpusFormatError,
    CorpusReader,
    FilterPolicy,
    FilterResult,
    _chunks,
    classify_utterance,
    corpus_stats,
    noise_proxy_description,
    write_utterance_tsv,
)
from .diagnostics import annotator_agreement, correlate_annotations, load_annotations, shuffle_probe
from .lid import LanguageIdentifier, TagRuleSet, compare_taggers, load_gazetteer, load_lexicon, metric_divergence
from .metrics import METRIC_NAMES, MetricConfig, metric_report, natural_range, scale_to_ten

EXIT_OK, EXIT_EMPTY, EXIT_INPUT = 0, 1, 2
SCALED = ("cmi_old", "cmi_new", "m_index", "i_index")
SCORE_COLUMNS = ("id", "n", "u", "P", "f_p") + METRIC_NAMES
CHUNK = 2000


class InputError(Exception):
    pass


# ---------------------------------------------------------------------------
# argument parsing


def _common_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("metric configuration")
    g.add_argument("--a", type=float, default=0.5, help="CMI weight (default 0.5)")
    g.add_argument("--b", type=float, default=None, help="switch-rate weight (default 1 - a)")
    g.add_argument("--cmi-mode", choices=("literal", "normalized"), default="literal")
    g.add_argument("--universal-mode", choices=("transparent", "literal"), default="transparent")
    g.add_argument("--i-index-mode", choices=("language-bearing", "all-token"), default="language-bearing")
    io = p.add_argument_group("input / output")
    io.add_argument("--format", choices=("tsv", "jsonl", "raw"), default="tsv", help="input format")
    io.add_argument("--output", choices=("table", "json"), default="table")
    io.add_argument("--workers", type=int, default=1)
    io.add_argument("--seed", type=int, default=0)
    lid = p.add_argument_group("language identification")
    lid.add_argument("--lexicon", action="append", default=[], metavar="PATH", help="repeatable")
    lid.add_argument("--gazetteer", action="append", default=[], metavar="PATH")
    lid.add_argument("--fallback", default="univ", help="tag for unknown tokens (default univ)")
    lid.add_argument("--fuzzy", action="store_true", help="match lexicon entries one edit away")
    lid.add_argument("--priority", default=None, help="comma-separated language tie-break order")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common_parser()
    parser = argparse.ArgumentParser(prog="codemix", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("tag", parents=[common], help="tag raw text, one utterance per line")
    p.add_argument("input")

    p = sub.add_parser("score", parents=[common], help="per-utterance metric reports")
    p.add_argument("input")
    p.add_argument("--scale-ten", action="store_true", help="map CMI, M-index and I-index onto [0, 10]")

    p = sub.add_parser("stats", parents=[common], help="corpus-level statistics")
    p.add_argument("input")
    p.add_argument("--bin-width", type=float, default=10.0)

    p = sub.add_parser("filter", parents=[common], help="split into code-mixed / monolingual / noisy")
    p.add_argument("input")
    p.add_argument("--min-cmi-new", type=float, default=0.0)
    p.add_argument("--min-language-bearing-fraction", type=float, default=0.0)
    p.add_argument("--max-oov-fraction", type=float, default=1.0)
    p.add_argument("--below-threshold", choices=("monolingual", "noisy"), default="monolingual")
    p.add_argument("--out-dir", default=None, help="write one tsv file per partition")

    p = sub.add_parser("probe", parents=[common], help="token-shuffle invariance probe")
    p.add_argument("input")
    p.add_argument("--permutations", type=int, default=100)

    p = sub.add_parser("compare-lid", parents=[common], help="compare tag sources over the same tokens")
    p.add_argument("inputs", nargs="+", help="one tsv file per tag source ('# source:' header names it)")
    p.add_argument("--gold", default=None, help="name of the reference source")

    p = sub.add_parser("correlate", parents=[common], help="metrics vs. human DCM / RA annotations")
    p.add_argument("input")
    p.add_argument("--annotations", required=True)
    return parser


def _metric_config(args) -> MetricConfig:
    b = args.b if args.b is not None else 1.0 - args.a
    return MetricConfig(args.a, b, args.cmi_mode, args.universal_mode, args.i_index_mode)


def _identifier(args, required: bool) -> LanguageIdentifier | None:
    if not args.lexicon:
        if required:
            raise InputError("no lexicon given (use --lexicon PATH)")
        return None
    try:
        lexicons = [load_lexicon(p) for p in args.lexicon]
        gazetteer = frozenset().union(*(load_gazetteer(p) for p in args.gazetteer))
        priority = [c.strip() for c in args.priority.split(",")] if args.priority else None
        fallback = normalize_tag(args.fallback)
        return LanguageIdentifier(lexicons, TagRuleSet.default(gazetteer), fallback, priority, args.fuzzy)
    except (OSError, ValueError) as exc:
        raise InputError(str(exc)) from None


def _check_paths(paths: Iterable[str]) -> None:
    for p in paths:
        if not Path(p).is_file():
            raise InputError(f"{p}: no such file")


def _config(args, cfg: MetricConfig, **extra) -> dict:
    conf = {
        "command": args.command,
        "format": args.format,
        "metrics": cfg.to_dict(),
        "output": args.output,
        "workers": args.workers,
        "seed": args.seed,
        "lexicons": list(args.lexicon),
        "gazetteers": list(args.gazetteer),
        "fallback": args.fallback,
        "fuzzy": args.fuzzy,
        "priority": args.priority,
    }
    conf.update(extra)
    return conf


def _preamble(out, conf: dict) -> None:
    out.write("# config: " + json.dumps(conf, sort_keys=True) + "\n")


def _dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, ensure_ascii=False)


def _fmt(v) -> str:
    # repr round-trips floats exactly
    return "NA" if v is None else repr(v) if v.__class__ is float else str(v)


def _g(v) -> str:
    return "NA" if v is None else (f"{v:.6g}" if isinstance(v, float) else str(v))


# ---------------------------------------------------------------------------
# commands


def _reader(args, path, identifier=None) -> CorpusReader:
    return CorpusReader(path, args.format, identifier)


def _sniff_raw(path, size=1 << 16) -> None:
    """Reject empty or tsv-looking input before any output is written."""
    with open(path, encoding="utf-8") as fh:
        head = fh.read(size)
    if not head.strip():
        raise InputError(f"{path}: no utterances found (empty input)")
    if "\t" in head:
        lineno = head.count("\n", 0, head.index("\t")) + 1
        raise InputError(
            f"{path}:{lineno}: input contains TAB characters; it looks like tsv-tagged data, "
            "not raw text (use --format tsv)"
        )


def cmd_tag(args, out) -> int:
    if args.format != "raw":
        args.format = "raw"
    _check_paths([args.input])
    lid = _identifier(args, required=True)
    _sniff_raw(args.input)
    cfg = _metric_config(args)
    _preamble(out, _config(args, cfg, input=args.input))
    registry = set(lid.languages)
    if lid.fallback is not UNIVERSAL:
        registry.add(lid.fallback)
    out.write(f"# registry: {','.join(sorted(registry))}\n")
    out.write("# source: codemix-lid\n")
    for i, utt in enumerate(CorpusReader(args.input, "raw", lid), 1):
        out.write("\n")
        write_utterance_tsv(utt, out, ordinal=i)
    return EXIT_OK


def _score_chunk(chunk, cfg):
    return [metric_report(u, cfg) for u in chunk]


def _reports(utterances, cfg: MetricConfig, workers: int):
    """Metric reports in input order, optionally computed by a process pool."""
    chunks = _chunks(utterances, CHUNK)
    if workers <= 1:
        for chunk in chunks:
            yield from _score_chunk(chunk, cfg)
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for part in pool.map(_score_chunk, chunks, repeat(cfg)):
                yield from part


def score_row(report, cfg: MetricConfig, scale_ten: bool = False) -> dict:
    row = {
        "id": report.id,
        "n": report.n,
        "u": report.histogram.universal_count,
        "P": report.P,
        "f_p": report.f_p,
    }
    for m in METRIC_NAMES:
        v = getattr(report, m)
        if scale_ten and m in SCALED:
            v = scale_to_ten(v, natural_range(m, cfg))
        row[m] = v
    return row


def cmd_score(args, out) -> int:
    _check_paths([args.input])
    lid = _identifier(args, required=args.format == "raw")
    cfg = _metric_config(args)
    _preamble(out, _config(args, cfg, input=args.input, scale_ten=args.scale_ten))
    reader = _reader(args, args.input, lid)
    if args.output == "table":
        out.write("\t".join(SCORE_COLUMNS) + "\n")
    for report in _reports(reader, cfg, args.workers):
        row = score_row(report, cfg, args.scale_ten)
        if args.output == "table":
            out.write("\t".join([_fmt(row[c]) for c in SCORE_COLUMNS]) + "\n")
        else:
            row["histogram"] = report.histogram.to_dict()["per_language"]
            row["spans"] = report.spans.to_list()
            out.write(_dumps(row) + "\n")
    return EXIT_OK


def cmd_stats(args, out) -> int:
    _check_paths([args.input])
    lid = _identifier(args, required=args.format == "raw")
    cfg = _metric_config(args)
    conf = _config(args, cfg, input=args.input, bin_width=args.bin_width)
    _preamble(out, conf)
    reader = _reader(args, args.input, lid)
    stats = corpus_stats(reader, cfg, bin_width=args.bin_width, workers=args.workers)
    doc = stats.to_dict()
    doc["alias_hits"] = reader.alias_hits
    if args.output == "json":
        out.write(_dumps(doc) + "\n")
        return EXIT_OK
    out.write(f"utterances\t{stats.utterances}\n")
    out.write(f"tokens\t{stats.tokens}\n")
    out.write(f"monolingual_fraction\t{_g(stats.monolingual_fraction)}\n")
    out.write(f"universal_aliases_read\t{_dumps(reader.alias_hits)}\n")
    out.write("metric\tcount\tmean\tmedian\tstd\tmin\tmax\n")
    for m in METRIC_NAMES:
        s = stats.metrics[m]
        out.write("\t".join([m] + [_g(s[k]) for k in ("count", "mean", "median", "std", "min", "max")]) + "\n")
    out.write("cmi_new_bin\tcount\n")
    last = len(stats.cmi_histogram) - 1
    for i, b in enumerate(stats.cmi_histogram):
        close = "]" if i == last else ")"
        out.write(f"[{_g(b['lo'])}, {_g(b['hi'])}{close}\t{b['count']}\n")
    return EXIT_OK


def cmd_filter(args, out) -> int:
    _check_paths([args.input])
    lid = _identifier(args, required=args.format == "raw")
    cfg = _metric_config(args)
    try:
        policy = FilterPolicy(
            args.min_cmi_new, args.min_language_bearing_fraction, args.max_oov_fraction, args.below_threshold
        )
    except ValueError as exc:
        raise InputError(str(exc)) from None
    conf = _config(args, cfg, input=args.input, policy=policy.to_dict(), noise_proxy=noise_proxy_description(lid))
    _preamble(out, conf)
    reader = _reader(args, args.input, lid)
    writers = {}
    if args.out_dir:
        Path(args.out_dir).mkdir(parents=True, exist_ok=True)
    result = FilterResult(policy=policy, noise_proxy=noise_proxy_description(lid))
    counts = dict.fromkeys(BUCKETS, 0)
    try:
        for utt in reader:
            bucket, reason = classify_utterance(utt, policy, cfg, lid)
            counts[bucket] += 1
            result.assignments.append((utt.id, bucket, reason))
            if args.out_dir:
                fh = writers.get(bucket)
                if fh is None:
                    fh = writers[bucket] = open(Path(args.out_dir) / f"{bucket}.tsv", "w", encoding="utf-8")
                    fh.write(f"# source: {bucket}\n")
                fh.write("\n")
                write_utterance_tsv(utt, fh)
    finally:
        for fh in writers.values():
            fh.close()
    if args.output == "json":
        doc = result.to_dict()
        doc["counts"] = counts
        out.write(_dumps(doc) + "\n")
    else:
        out.write("bucket\tcount\n")
        for b in BUCKETS:
            out.write(f"{b}\t{counts[b]}\n")
        out.write("id\tbucket\treason\n")
        for uid, bucket, reason in result.assignments:
            out.write(f"{uid}\t{bucket}\t{reason}\n")
    if counts["code_mixed"] == 0:
        print("warning: no utterance passed into the code-mixed partition", file=sys.stderr)
        return EXIT_EMPTY
    return EXIT_OK


def cmd_probe(args, out) -> int:
    _check_paths([args.input])
    if args.permutations < 1:
        raise InputError("--permutations must be >= 1")
    lid = _identifier(args, required=args.format == "raw")
    cfg = _metric_config(args)
    _preamble(out, _config(args, cfg, input=args.input, permutations=args.permutations))
    if args.output == "table":
        out.write("id\tmetric\tinvariant\tmin\tmax\tspread\tdefined\n")
    for utt in _reader(args, args.input, lid):
        rep = shuffle_probe(utt, args.permutations, args.seed, cfg)
        if args.output == "json":
            out.write(_dumps(rep.to_dict()) + "\n")
            continue
        for m in METRIC_NAMES:
            s = rep.metrics[m]
            out.write(
                f"{utt.id}\t{m}\t{str(s['invariant']).lower()}\t{_fmt(s['min'])}\t{_fmt(s['max'])}"
                f"\t{_fmt(s['spread'])}\t{s['defined']}\n"
            )
    return EXIT_OK


def load_tag_sources(paths: Sequence[str]) -> tuple[list[str], dict[str, list]]:
    """Read one tsv file per tag source; returns (source names, utterances per source)."""
    names, per_source = [], {}
    for path in paths:
        reader = CorpusReader(path, "tsv")
        utts = list(reader)
        name = reader.metadata.get("source") or Path(path).stem
        if name in per_source:
            raise InputError(f"duplicate tag source name {name!r} ({path})")
        names.append(name)
        per_source[name] = utts
    counts = {len(v) for v in per_source.values()}
    if len(counts) != 1:
        raise InputError("tag sources hold different numbers of utterances")
    return names, per_source


def cmd_compare_lid(args, out) -> int:
    _check_paths(args.inputs)
    cfg = _metric_config(args)
    _preamble(out, _config(args, cfg, inputs=list(args.inputs), gold=args.gold))
    names, per_source = load_tag_sources(args.inputs)
    if args.gold is not None and args.gold not in per_source:
        raise InputError(f"gold source {args.gold!r} not among {names}")
    ref = names[0]
    for i, first in enumerate(per_source[ref]):
        for name in names[1:]:
            other = per_source[name][i]
            if other.surfaces != first.surfaces:
                raise InputError(f"utterance {i + 1}: tokens of source {name!r} differ from {ref!r}")
        seqs = {name: per_source[name][i].tags for name in names}
        matrix = compare_taggers(first.surfaces, seqs, gold=args.gold)
        reports = metric_divergence(first.surfaces, seqs, cfg)
        if args.output == "json":
            doc = {
                "utterance": first.id,
                "agreement": matrix.to_dict(),
                "reports": {name: reports[name].to_dict() for name in names},
            }
            out.write(_dumps(doc) + "\n")
            continue
        out.write(f"utterance\t{first.id}\n")
        out.write("agreement\t" + "\t".join(names) + "\n")
        for a in names:
            out.write(a + "\t" + "\t".join(_g(matrix.pairwise[a][b]) for b in names) + "\n")
        if matrix.gold:
            out.write("accuracy_vs_" + matrix.gold + "\t" + "\t".join(_g(matrix.accuracy[b]) for b in names) + "\n")
        out.write("source\t" + "\t".join(SCORE_COLUMNS[1:]) + "\n")
        for name in names:
            row = score_row(reports[name], cfg)
            out.write(name + "\t" + "\t".join(_g(row[c]) for c in SCORE_COLUMNS[1:]) + "\n")
    return EXIT_OK


def cmd_correlate(args, out) -> int:
    _check_paths([args.input, args.annotations])
    lid = _identifier(args, required=args.format == "raw")
    cfg = _metric_config(args)
    _preamble(out, _config(args, cfg, input=args.input, annotations=args.annotations))
    try:
        records = load_annotations(args.annotations)
        corpus = list(_reader(args, args.input, lid))
        corr = correlate_annotations(records, corpus, cfg)
        agree = annotator_agreement(records)
    except CorpusFormatError:
        raise
    except ValueError as exc:
        raise InputError(str(exc)) from None
    if args.output == "json":
        out.write(_dumps({"correlation": corr.to_dict(), "agreement": agree.to_dict()}) + "\n")
        return EXIT_OK
    out.write(f"# rank correlation: Spearman, ties by {corr.tie_handling}\n")
    out.write("metric\ttarget\trho\tn\n")
    for row in corr.rows:
        out.write(f"{row['metric']}\t{row['target']}\t{_g(row['rho'])}\t{row['n']}\n")
    out.write("annotator_a\tannotator_b\tdimension\tshared\tmean_abs_diff\trho\tstatus\n")
    for row in agree.rows:
        out.write(
            f"{row['a']}\t{row['b']}\t{row['dimension']}\t{row['shared']}\t{_g(row['mean_abs_diff'])}"
            f"\t{_g(row['rho'])}\t{row['status']}\n"
        )
    return EXIT_OK


COMMANDS = {
    "tag": cmd_tag,
    "score": cmd_score,
    "stats": cmd_stats,
    "filter": cmd_filter,
    "probe": cmd_probe,
    "compare-lid": cmd_compare_lid,
    "correlate": cmd_correlate,
}


def main(argv: Sequence[str] | None = None, out=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = out if out is not None else sys.stdout
    try:
        try:
            _metric_config(args)
        except ValueError as exc:
            raise InputError(str(exc)) from None
        return COMMANDS[args.command](args, out)
    except (InputError, CorpusFormatError) as exc:
        print(f"codemix {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except UnicodeDecodeError as exc:
        print(f"codemix {args.command}: error: input is not valid UTF-8 ({exc})", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
