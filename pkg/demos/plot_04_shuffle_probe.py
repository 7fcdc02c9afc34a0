"""
What the metrics cannot see: word order
=======================================

Shuffle the tokens of an utterance. Histogram-based scores never move,
even though the shuffled text is no longer a sentence.
"""

from codemix import TaggedUtterance, metric_report, shuffle_probe

utt = TaggedUtterance(
    "order",
    ("mujhe", "ye", "movie", "bahut", "pasand", "aayi", "because", "the", "story", "was", "great"),
    ("hi", "hi", "en", "hi", "hi", "hi", "en", "en", "en", "en", "en"),
)

probe = shuffle_probe(utt, permutations=200, seed=7)
for name, s in probe.metrics.items():
    print(f"{name:10s} invariant={s['invariant']!s:5s} min={s['min']} max={s['max']}")

# The orders that reach the extremes of the I-index are kept as witnesses.
for end in ("min", "max"):
    order = probe.witnesses["i_index"][end]
    shuffled = utt.permuted(order)
    print(end, metric_report(shuffled).i_index, " ".join(shuffled.surfaces))

# A swap that keeps the tag sequence (two Hindi words trade places) leaves
# every score unchanged, although the meaning changes.
swapped = utt.permuted([1, 0] + list(range(2, len(utt))))
print(metric_report(swapped).scores() == metric_report(utt).scores())
