import pytest
from hypothesis import given
from hypothesis import strategies as st

from codemix.core import UNIVERSAL, is_language
from codemix.fixtures import LID_SOURCES, fixture_path, lid_source_paths
from codemix.lid import (
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
from codemix.corpus import load_corpus

U = UNIVERSAL


@pytest.fixture(scope="module")
def lexicons():
    return [load_lexicon(fixture_path("lexicon_en.tsv")), load_lexicon(fixture_path("lexicon_hi.tsv"))]


@pytest.fixture(scope="module")
def lid(lexicons):
    return LanguageIdentifier(lexicons, TagRuleSet.default(load_gazetteer(fixture_path("gazetteer.txt"))))


# tokenization


def test_tokenize_social_media_shapes():
    text = "@user kal #TripleTalaq 2019, see https://t.co/x :) ok!!"
    assert tokenize(text) == ["@user", "kal", "#TripleTalaq", "2019", ",", "see", "https://t.co/x", ":)", "ok", "!!"]


def test_tokenize_keeps_contractions_and_numbers():
    assert tokenize("Don't say 83 times") == ["Don't", "say", "83", "times"]


# lexicons


def test_lexicon_validation(tmp_path):
    with pytest.raises(ValueError):
        Lexicon("en", {"a": 0})
    with pytest.raises(ValueError):
        Lexicon("en", {" ": 1})
    lex = Lexicon("en", {"Movie": 2})
    assert "MOVIE" in lex and lex.entries == {"movie": 2}
    p = tmp_path / "l.tsv"
    p.write_text("a\t1\n", encoding="utf-8")
    with pytest.raises(ValueError, match="lang"):
        load_lexicon(p)
    p.write_text("#lang: en\na\tx\n", encoding="utf-8")
    with pytest.raises(ValueError, match="weight"):
        load_lexicon(p)


def test_bundled_lexicons(lexicons):
    en, hi = lexicons
    assert en.language == "en" and hi.language == "hi"
    assert hi.entries["hai"] == 0.9 and en.entries["hai"] == 0.001


def test_multiword_gazetteer_entries_split():
    g = load_gazetteer(fixture_path("gazetteer.txt"))
    assert {"bhartiya", "janta", "party", "tendulkar"} <= g


# tagging


def test_rules_tag_mentions_hashtags_numbers_universal(lid):
    utt = lid.tag(["@user", "#TripleTalaq", "2019"])
    assert utt.tags == (U, U, U)


def test_unambiguous_lexicon_hit():
    assert tag_tokens(["movie"], [Lexicon.from_words("en", ["movie"]), Lexicon.from_words("hi", ["kal"])]).tags == ("en",)


def test_weight_tie_break():
    en = Lexicon("en", {"hai": 0.001})
    hi = Lexicon("hi", {"hai": 0.9})
    # the hi weight wins regardless of lexicon order or priority
    assert tag_tokens(["hai"], [en, hi]).tags == ("hi",)
    assert tag_tokens(["hai"], [hi, en], priority=["en", "hi"]).tags == ("hi",)


def test_priority_breaks_equal_weights():
    en = Lexicon("en", {"to": 1})
    hi = Lexicon("hi", {"to": 1})
    assert tag_tokens(["to"], [en, hi]).tags == ("en",)
    assert tag_tokens(["to"], [en, hi], priority=["hi"]).tags == ("hi",)


def test_oov_fallback():
    lex = [Lexicon.from_words("en", ["movie"])]
    assert tag_tokens(["qwzx"], lex).tags == (U,)
    assert tag_tokens(["qwzx"], lex, fallback="en").tags == ("en",)


def test_fuzzy_lookup_off_by_default():
    lex = [Lexicon.from_words("hi", ["hai"]), Lexicon.from_words("en", ["movie"])]
    assert tag_tokens(["hay"], lex).tags == (U,)
    assert tag_tokens(["hay"], lex, fuzzy=True).tags == ("hi",)
    assert tag_tokens(["moviee"], lex, fuzzy=True).tags == ("en",)


def test_gazetteer_named_entities_universal(lid):
    utt = lid.tag_text("Tendulkar scored more centuries than Kohli in Delhi.")
    tags = dict(zip(utt.surfaces, utt.tags))
    assert tags["Tendulkar"] is U and tags["Kohli"] is U and tags["Delhi"] is U
    assert tags["scored"] == "en"


def test_raw_sentence_all_en_or_universal(lid):
    utt = lid.tag_text("How are the reviews?")
    assert all(t in ("en", U) for t in utt.tags)
    assert utt.tags[-1] is U


def test_tag_rejects_empty(lid):
    with pytest.raises(ValueError):
        lid.tag([])


def test_identifier_requires_lexicon():
    with pytest.raises(ValueError):
        LanguageIdentifier([])


def test_unknown_rule_shape():
    with pytest.raises(ValueError):
        TagRuleSet(rules=(("smiley", U),))


def test_oov_fraction(lid):
    assert lid.oov_fraction(["movie", "qwzx", "@a", "zzqq"]) == 0.5


words = st.lists(
    st.one_of(
        st.sampled_from(["hai", "movie", "kal", "to", "me", "Delhi", "qq"]),
        st.from_regex(r"[@#][a-z]{1,5}", fullmatch=True),
        st.from_regex(r"[0-9]{1,4}", fullmatch=True),
        st.from_regex(r"[a-z]{1,6}", fullmatch=True),
    ),
    min_size=1,
    max_size=15,
)


@given(words)
def test_rule_precedence_and_determinism(lid, toks):
    a = lid.tag(toks)
    assert a == lid.tag(toks)
    for tok, tag in zip(toks, a.tags):
        d = lid.classify(tok)
        if d.source.startswith("rule:"):
            assert tag is U


# agreement


def test_agreement_examples():
    toks = ["a", "b", "c", "d"]
    m = compare_taggers(toks, {"A": ["hi", "en", "hi", "en"], "B": ["hi", "en", "hi", "hi"], "C": ["hi"] * 4})
    assert m.pairwise["A"]["B"] == 0.75 == m.pairwise["B"]["A"]
    assert m.pairwise["A"]["A"] == 1.0
    same = compare_taggers(toks, {"x": ["hi"] * 4, "y": ["hi"] * 4})
    assert same.pairwise["x"]["y"] == 1.0
    diff = compare_taggers(toks, {"x": ["hi"] * 4, "y": ["en"] * 4})
    assert diff.pairwise["x"]["y"] == 0.0


def test_agreement_length_mismatch_names_source():
    with pytest.raises(ValueError, match="'bad'"):
        compare_taggers(["a", "b"], {"ok": ["hi", "en"], "bad": ["hi"]})


@given(st.lists(st.lists(st.sampled_from(["hi", "en", U]), min_size=5, max_size=5), min_size=1, max_size=5))
def test_agreement_symmetric_unit_diagonal(seqs):
    m = compare_taggers(list("abcde"), {f"s{i}": s for i, s in enumerate(seqs)})
    for a in m.sources:
        assert m.pairwise[a][a] == 1.0
        for b in m.sources:
            assert m.pairwise[a][b] == m.pairwise[b][a]
            assert 0 <= m.pairwise[a][b] <= 1
            if m.pairwise[a][b] == 1.0:
                rep = metric_divergence(list("abcde"), {"a": seqs[int(a[1:])], "b": seqs[int(b[1:])]})
                assert rep["a"].scores() == rep["b"].scores()


def test_divergence_examples():
    toks = ["w1", "w2", "w3", "w4"]
    r = metric_divergence(toks, {"gold": ["hi"] * 4, "noise": ["hi", "en", "hi", "en"]})
    assert r["gold"].cmi_new == 0
    # noise: cmi_old 50, P 3, f_p 3/4 -> 0.5*50 + 0.5*0.75
    assert r["noise"].cmi_new == pytest.approx(25.375, abs=1e-12)
    r = metric_divergence(toks, {"univ": [U] * 4, "hi": ["hi"] * 4})
    assert r["univ"].cmi_old == 0 == r["hi"].cmi_old
    assert r["univ"].spans.to_list() == [] and r["hi"].spans.to_list() == [["hi", 4]]
    same = metric_divergence(toks, {"a": ["hi", "en", "hi", "hi"], "b": ["hi", "en", "hi", "hi"]})
    assert same["a"].scores() == same["b"].scores()


def test_bundled_lid_sources_disagree():
    corpora = {}
    for p in lid_source_paths():
        c = load_corpus(p)
        corpora[c.metadata["source"]] = c
    assert list(corpora) == list(LID_SOURCES)
    tokens = corpora["Human"].utterances[0].surfaces
    assert len(tokens) == 20
    seqs = {name: c.utterances[0].tags for name, c in corpora.items()}
    m = compare_taggers(tokens, seqs, gold="Human")
    assert m.accuracy["Human"] == 1.0
    assert all(m.accuracy[s] < 1.0 for s in LID_SOURCES if s != "Human")
    assert all(any(is_language(t) for t in seq) for seq in seqs.values())
