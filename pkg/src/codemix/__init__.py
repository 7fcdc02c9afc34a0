"""Code-mixing complexity metrics and the tooling around them."""

from .core import (
    UNIVERSAL,
    SpanProfile,
    TaggedUtterance,
    TagHistogram,
    Token,
    count_switch_points,
    extract_spans,
    format_tag,
    normalize_tag,
    tag_histogram,
)
from .corpus import (
    Corpus,
    CorpusFormatError,
    CorpusReader,
    CorpusStats,
    FilterPolicy,
    FilterResult,
    corpus_stats,
    dump_tsv,
    filter_corpus,
    load_corpus,
    save_tsv,
)
from .diagnostics import (
    AnnotationRecord,
    ProbeReport,
    annotator_agreement,
    correlate_annotations,
    load_annotations,
    shuffle_probe,
)
from .lid import (
    AgreementMatrix,
    LanguageIdentifier,
    Lexicon,
    TagRuleSet,
    compare_taggers,
    load_gazetteer,
    load_lexicon,
    metric_divergence,
    tag_tokens,
    tokenize,
)
from .metrics import (
    MetricConfig,
    MetricReport,
    burstiness,
    cmi_new,
    cmi_old,
    i_index,
    m_index,
    memory,
    metric_report,
    scale_to_ten,
)

__version__ = "0.1.0"
