"""
Do the metrics agree with people?
=================================

Rank-correlate metric scores with human degree-of-code-mixing (DCM) and
readability (RA) ratings, and compare the annotators with each other.
The bundled ratings are synthetic and only illustrate the workflow.
"""

from codemix import annotator_agreement, correlate_annotations, load_annotations, load_corpus
from codemix.fixtures import fixture_path

corpus = load_corpus(fixture_path("ratings_synthetic.tsv")).utterances
records = load_annotations(fixture_path("ratings_synthetic_annotations.csv"))

corr = correlate_annotations(records, corpus)
print(f"Spearman rho, ties by {corr.tie_handling}")
for row in corr.rows:
    rho = "undefined" if row["rho"] is None else f"{row['rho']:+.3f}"
    print(f"  {row['metric']:10s} vs mean {row['target']}: {rho} (n={row['n']})")

agree = annotator_agreement(records)
for row in agree.rows:
    rho = "undefined" if row["rho"] is None else f"{row['rho']:+.3f}"
    print(f"  {row['a']}-{row['b']} {row['dimension']}: mean |diff| {row['mean_abs_diff']:.2f}, rho {rho}")
