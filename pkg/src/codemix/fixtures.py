"""Paths to the small data files shipped with the package.

``lid_*.tsv``
    One 20-token Hinglish sentence tagged by five LID systems and a human.
``synthetic50.tsv``
    50 random tagged utterances.
``ratings_synthetic.tsv`` and ``ratings_synthetic_annotations.csv``
    A synthetic 10-utterance, 3-annotator rating fixture (not real data).
``lexicon_en.tsv``, ``lexicon_hi.tsv``, ``gazetteer.txt``
    Tiny illustrative lexicons and named-entity list.
"""

from __future__ import annotations

from importlib import resources
from pathlib import Path

LID_SOURCES = ("Langdetect", "Polyglot", "CLD3", "FastText", "iNLTK", "Human")


def fixture_path(name: str) -> Path:
    path = Path(str(resources.files("codemix") / "data" / name))
    if not path.is_file():
        raise FileNotFoundError(f"no bundled fixture named {name!r}")
    return path


def lid_source_paths() -> list[Path]:
    return [fixture_path(f"lid_{s.lower()}.tsv") for s in LID_SOURCES]
