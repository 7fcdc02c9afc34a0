"""
One sentence, six taggers, six different scores
===============================================

The same tokens tagged by five automatic systems and one human give very
different complexity scores.
"""

from codemix import compare_taggers, load_corpus, metric_divergence
from codemix.fixtures import lid_source_paths

sources = {}
for path in lid_source_paths():
    corpus = load_corpus(path)
    sources[corpus.metadata["source"]] = corpus.utterances[0]

tokens = sources["Human"].surfaces
print(" ".join(tokens))
seqs = {name: utt.tags for name, utt in sources.items()}

matrix = compare_taggers(tokens, seqs, gold="Human")
print("accuracy against the human tags:")
for name, acc in matrix.accuracy.items():
    print(f"  {name:10s} {acc:.2f}")

reports = metric_divergence(tokens, seqs)
print(f"{'source':10s} {'cmi_new':>8s} {'m_index':>8s} {'i_index':>8s}")
for name, r in reports.items():
    print(f"{name:10s} {r.cmi_new:8.3f} {r.m_index:8.3f} {r.i_index:8.3f}")
