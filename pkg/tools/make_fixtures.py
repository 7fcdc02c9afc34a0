"""Regenerate the bundled fixture files under src/codemix/data/."""

from pathlib import Path

from codemix import UNIVERSAL, Corpus, TaggedUtterance, save_tsv
from codemix.diagnostics import AnnotationRecord, write_annotations
from codemix.synthetic import random_corpus

DATA = Path(__file__).resolve().parents[1] / "src" / "codemix" / "data"

EN = {
    "code": 1.0, "mixed": 1.0, "sentence": 1.0, "example": 1.0, "how": 1.0, "are": 0.9, "the": 1.0,
    "reviews": 1.0, "movie": 1.0, "scored": 1.0, "more": 1.0, "centuries": 1.0, "than": 1.0, "in": 1.0,
    "won": 1.0, "general": 1.0, "elections": 1.0, "channel": 1.0, "fund": 1.0, "case": 1.0,
    "discuss": 1.0, "accidents": 1.0, "politics": 1.0, "nice": 1.0, "one": 1.0, "but": 1.0, "logo": 1.0,
    "pic": 1.0, "is": 1.0, "good": 1.0, "joke": 1.0, "confession": 1.0, "page": 1.0, "language": 1.0,
    "while": 1.0, "i": 1.0, "reading": 1.0, "them": 1.0, "first": 1.0, "you": 1.0, "have": 1.0,
    "to": 0.6, "correct": 1.0, "english": 1.0, "ultimate": 1.0, "twist": 1.0, "brings": 1.0,
    "dieting": 1.0, "green": 1.0, "tea": 1.0, "ok": 1.0, "office": 1.0, "bus": 1.0, "point": 1.0,
    "of": 1.0, "view": 1.0, "know": 1.0, "say": 0.7, "me": 0.3, "use": 0.8, "post": 1.0, "don't": 1.0,
    "this": 1.0, "shame": 1.0, "on": 1.0, "again": 1.0, "hai": 0.001, "a": 1.0, "it": 1.0, "was": 1.0,
    "what": 1.0, "so": 1.0, "and": 1.0, "not": 1.0, "we": 1.0, "my": 1.0, "your": 1.0, "please": 1.0,
}
HI = {
    "ye": 1.0, "ek": 1.0, "ka": 1.0, "hai": 0.9, "kal": 1.0, "me": 0.6, "mein": 1.0, "dekhne": 1.0,
    "ja": 1.0, "raha": 1.0, "hu": 1.0, "hun": 1.0, "ji": 1.0, "ko": 1.0, "kitna": 1.0, "diya": 1.0,
    "ne": 1.0, "kyu": 1.0, "nahi": 1.0, "kiya": 1.0, "kabhi": 1.0, "din": 1.0, "kuch": 1.0, "to": 0.4,
    "jhol": 1.0, "shayad": 1.0, "ho": 1.0, "rahi": 1.0, "bhai": 1.0, "kasam": 1.0, "se": 1.0,
    "bata": 1.0, "do": 0.5, "ki": 1.0, "shadi": 1.0, "kab": 1.0, "rahe": 1.0, "warna": 1.0, "mai": 1.0,
    "jaunga": 1.0, "filhal": 1.0, "jaga": 1.0, "lagwa": 1.0, "abe": 1.0, "marna": 1.0, "hi": 0.5,
    "aur": 1.0, "kahi": 1.0, "maar": 1.0, "log": 1.0, "jante": 1.0, "par": 1.0, "nafrat": 1.0,
    "walo": 1.0, "ke": 1.0, "liye": 1.0, "meri": 1.0, "yehi": 1.0, "rahegi": 1.0, "mujhe": 1.0,
    "hasi": 1.0, "aa": 1.0, "thi": 1.0, "baad": 1.0, "sochna": 1.0, "dulhan": 1.0, "huye": 1.0,
    "jab": 1.0, "hota": 1.0, "toh": 1.0, "peeta": 1.0, "thora": 1.0, "thanda": 1.0, "hay": 0.8,
    "kaam": 1.0, "k": 0.6, "hn": 0.7, "ab": 1.0, "hospital": 0.01, "rahenge": 1.0, "jake": 1.0,
    "atka": 1.0, "p": 0.5, "kya": 1.0, "haan": 1.0, "yaar": 1.0, "karega": 1.0, "woh": 1.0,
    "karna": 1.0, "chahiye": 1.0, "phir": 1.0, "kaun": 1.0, "insaan": 1.0, "tum": 1.0, "hum": 1.0,
}
GAZETTEER = [
    "Tendulkar", "Kohli", "Delhi", "Bhartiya Janta Party", "Deepak", "Congress", "Pakistan", "KK",
    "Rahul", "Tajmahal", "Modi", "India", "Mariam_Jamali",
]

# One 20-token sentence as tagged by five LID systems and a human annotator.
LID_TOKENS = ("@user bus office me hn , Sat thora thanda hota hay kaam k point of view say you know :)").split()
LID_SOURCES = {
    "Langdetect": "et id en nl vi unk tl en en cs so so sw fi en af tl sw en unk",
    "Polyglot": "en en en en da un en en en to es fy en en en en en en en un",
    "CLD3": "no la ja mi sv ja sd la ko mi es et sl de en en id en en ja",
    "FastText": "en en en en en ru pt war en en es az ja en en en en en en uz",
    "iNLTK": "en en en en en en en en en en en en en en en en en en en en",
    "Human": "univ en en hi hi univ en hi hi hi hi hi hi en en en hi en en univ",
}


def write_lexicon(path, lang, entries):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"#lang: {lang}\n")
        fh.write("# small illustrative lexicon; weights are rough relative frequencies\n")
        for w, v in sorted(entries.items()):
            fh.write(f"{w}\t{v:g}\n")


def ratings_like_corpus():
    utts = []
    for j in range(10):
        tags = ["hi", "en"] * j + ["hi"] * (20 - 2 * j)
        surfaces = [f"{t}{i}" for i, t in enumerate(tags)]
        utts.append(TaggedUtterance(f"s{j + 1:02d}", tuple(surfaces), tuple(tags)))
    return Corpus(utts, frozenset({"hi", "en"}), "synthetic: annotation schema fixture, not real data")


ANNOTATIONS = {
    # annotator: (dcm per utterance, ra per utterance), utterances s01..s10
    "h1": ([0, 1, 2, 3, 4, 5, 6, 7, 8, 9], [10, 9, 8, 7, 6, 5, 4, 3, 2, 1]),
    "h2": ([9, 8, 7, 6, 5, 4, 3, 2, 1, 0], [5] * 10),
    "h3": ([1, 0, 3, 2, 5, 4, 7, 6, 9, 8], [2, 4, 1, 3, 6, 5, 8, 7, 10, 9]),
}


def main():
    DATA.mkdir(parents=True, exist_ok=True)
    write_lexicon(DATA / "lexicon_en.tsv", "en", EN)
    write_lexicon(DATA / "lexicon_hi.tsv", "hi", HI)
    (DATA / "gazetteer.txt").write_text("\n".join(GAZETTEER) + "\n", encoding="utf-8")

    for name, seq in LID_SOURCES.items():
        raw = seq.split()
        assert len(raw) == len(LID_TOKENS), name
        with open(DATA / f"lid_{name.lower()}.tsv", "w", encoding="utf-8") as fh:
            fh.write(f"# source: {name}\n\n# id: lid-disagreement-example\n")
            for tok, tag in zip(LID_TOKENS, raw):
                fh.write(f"{tok}\t{tag}\n")

    corpus = Corpus.from_utterances(random_corpus(50, seed=7), provenance="synthetic: random_corpus(50, seed=7)")
    save_tsv(corpus, DATA / "synthetic50.tsv")

    save_tsv(ratings_like_corpus(), DATA / "ratings_synthetic.tsv")
    records = [
        AnnotationRecord(f"s{i + 1:02d}", a, dcm[i], ra[i])
        for a, (dcm, ra) in ANNOTATIONS.items()
        for i in range(10)
    ]
    write_annotations(records, DATA / "ratings_synthetic_annotations.csv")

    (DATA / "raw_sample.txt").write_text(
        "ye ek code mixed sentence ka example hai\n"
        "kal me movie dekhne ja raha hu. How are the reviews?\n"
        "Tendulkar scored more centuries than Kohli in Delhi.\n"
        "#TripleTalaq Don't post this\n"
        "@user bus office me hn, thora thanda hota hay\n",
        encoding="utf-8",
    )


if __name__ == "__main__":
    main()
