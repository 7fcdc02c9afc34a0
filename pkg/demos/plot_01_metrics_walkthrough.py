"""
Scoring a code-mixed utterance
==============================

Build one tagged utterance by hand and look at every complexity score,
together with the counts that produce it.
"""

from codemix import UNIVERSAL, TaggedUtterance, metric_report
from codemix.metrics import MetricConfig

# A Hinglish sentence with gold tags. Mentions and named entities are
# Universal: they belong to no language and never create a switch.
surfaces = ("kal", "me", "movie", "dekhne", "Priya", "ke", "saath", "ja", "raha", "hu", "how", "are", "the", "reviews")
tags = ("hi", "hi", "en", "hi", UNIVERSAL, "hi", "hi", "hi", "hi", "hi", "en", "en", "en", "en")
utt = TaggedUtterance("demo", surfaces, tags)

report = metric_report(utt)
print("tokens n =", report.n, " universal u =", report.histogram.universal_count)
print("per-language counts:", report.histogram.per_language)
print("spans:", report.spans.to_list(), " switch points P =", report.P)
for name, value in report.scores().items():
    print(f"  {name:10s} {value}")

# The blend of CMI with the switch rate can be read literally (CMI on its
# 0-100 scale plus a fraction) or with both terms on [0, 1] first.
normalized = metric_report(utt, MetricConfig(cmi_mode="normalized"))
print("cmi_new literal   :", report.cmi_new)
print("cmi_new normalized:", normalized.cmi_new)

# Universal tokens are transparent by default. In literal mode they close a
# span, which changes burstiness and memory but not the switch count.
literal = metric_report(utt, MetricConfig(universal_mode="literal"))
print("literal-mode spans:", literal.spans.to_list(), " P =", literal.P)
