"""
Tagging raw text with lexicons and shape rules
==============================================

Turn untagged social-media text into a tagged corpus, then score it.
"""

from codemix import LanguageIdentifier, TagRuleSet, load_gazetteer, load_lexicon, metric_report
from codemix.fixtures import fixture_path

lexicons = [load_lexicon(fixture_path("lexicon_en.tsv")), load_lexicon(fixture_path("lexicon_hi.tsv"))]
rules = TagRuleSet.default(load_gazetteer(fixture_path("gazetteer.txt")))
lid = LanguageIdentifier(lexicons, rules)

# Each token is decided by the first matching shape rule, else by the best
# lexicon entry, else by the fallback tag (Universal by default).
for surface in ["@user", "#TripleTalaq", "2019", "Tendulkar", "hai", "movie", "thandaa"]:
    print(f"{surface:14s} -> {lid.classify(surface)}")

# Spelling variants defeat exact lookup; the optional one-edit match helps.
fuzzy = LanguageIdentifier(lexicons, rules, fuzzy=True)
print("with fuzzy lookup: thandaa ->", fuzzy.classify("thandaa"))

for line in fixture_path("raw_sample.txt").read_text(encoding="utf-8").splitlines():
    utt = lid.tag_text(line)
    rep = metric_report(utt)
    print(f"cmi_new={rep.cmi_new:7.3f}  oov={lid.oov_fraction(utt.surfaces):.2f}  {line}")
