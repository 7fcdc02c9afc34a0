import pickle

import pytest
from hypothesis import given
from hypothesis import strategies as st

from codemix.core import (
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

from . import oracles

U = UNIVERSAL
tag_seqs = st.lists(st.sampled_from(["hi", "en", "bn", U]), min_size=1, max_size=40)


def utt(tags):
    return TaggedUtterance.from_tags(tags)


# histograms


def test_histogram_mixed():
    h = tag_histogram(utt(["hi", "hi", "en", U]))
    assert (h.per_language, h.universal_count, h.total) == ({"hi": 2, "en": 1}, 1, 4)


def test_histogram_all_universal():
    h = tag_histogram(utt([U, U]))
    assert h.per_language == {} and h.universal_count == 2 and h.total == 2
    assert h.language_bearing == 0 and h.max_language_count == 0


def test_histogram_matches_count_oracle():
    tags = ["hi", "en", "hi", "en", "en"]
    h = tag_histogram(utt(tags))
    counts, u, n = oracles.histogram(tags)
    assert (h.per_language, h.universal_count, h.total) == (counts, u, n) == ({"hi": 2, "en": 3}, 0, 5)


def test_histogram_rejects_bad_counts():
    with pytest.raises(ValueError):
        TagHistogram({"hi": 2}, 1, 4)
    with pytest.raises(ValueError):
        TagHistogram({"hi": -1}, 2, 1)


# spans and switch points


@pytest.mark.parametrize(
    "tags, expected",
    [
        (["hi", "hi", "en", "hi"], [("hi", 2), ("en", 1), ("hi", 1)]),
        (["hi", U, "hi", "en"], [("hi", 2), ("en", 1)]),
        ([U, U], []),
    ],
)
def test_extract_spans(tags, expected):
    prof = extract_spans(utt(tags))
    assert list(prof.spans) == expected
    assert prof.language_bearing_count == sum(n for _, n in expected)


def test_literal_mode_universal_closes_span():
    prof = extract_spans(utt(["hi", U, "hi", "en"]), "literal")
    assert list(prof.spans) == [("hi", 1), ("hi", 1), ("en", 1)]
    assert prof.switch_points == 1


@pytest.mark.parametrize(
    "tags, P",
    [(["hi", "hi", "hi"], 0), (["en", "hi", "en", "hi"], 3), (["hi", U, "en", "en"], 1)],
)
def test_count_switch_points(tags, P):
    assert count_switch_points(utt(tags)) == P == oracles.switch_points(oracles.to_oracle(tags, U))


def test_span_profile_rejects_inconsistent_total():
    with pytest.raises(ValueError):
        SpanProfile((("hi", 2),), 3)


@given(tag_seqs)
def test_histogram_partitions_tokens(tags):
    h = tag_histogram(utt(tags))
    assert sum(h.per_language.values()) + h.universal_count == h.total == len(tags)


@given(tag_seqs)
def test_span_invariants(tags):
    prof = extract_spans(utt(tags))
    for (a, _), (b, _) in zip(prof.spans, prof.spans[1:]):
        assert a != b
    assert sum(prof.lengths) == prof.language_bearing_count
    assert all(n >= 1 for n in prof.lengths)
    P = count_switch_points(utt(tags))
    assert P == max(0, len(prof.spans) - 1)
    assert 0 <= P < len(tags)


@given(tag_seqs, st.integers(0, 40), st.integers(1, 5))
def test_spans_ignore_inserted_universal(tags, pos, k):
    pos = min(pos, len(tags))
    more = tags[:pos] + [U] * k + tags[pos:]
    assert extract_spans(utt(more)) == extract_spans(utt(tags))
    stripped = [t for t in tags if t is not U] or None
    if stripped:
        assert extract_spans(utt(stripped)).spans == extract_spans(utt(tags)).spans


@given(tag_seqs, st.randoms(use_true_random=False))
def test_tag_preserving_permutation_keeps_core_outputs(tags, rnd):
    # shuffle positions within each tag class: the tag sequence is unchanged
    base = utt(tags)
    order = list(range(len(tags)))
    by_tag = {}
    for i, t in enumerate(tags):
        by_tag.setdefault(t, []).append(i)
    for idx in by_tag.values():
        shuffled = idx[:]
        rnd.shuffle(shuffled)
        for src, dst in zip(idx, shuffled):
            order[src] = dst
    perm = base.permuted(order)
    assert perm.tags == base.tags
    assert tag_histogram(perm) == tag_histogram(base)
    assert extract_spans(perm) == extract_spans(base)


# utterance validation


def test_utterance_validation():
    with pytest.raises(ValueError):
        TaggedUtterance("x", (), ())
    with pytest.raises(ValueError):
        TaggedUtterance("x", ("a", "b"), ("hi",))
    with pytest.raises(ValueError):
        TaggedUtterance("x", ("  ",), ("hi",))
    with pytest.raises(ValueError):
        TaggedUtterance("x", ("a",), ("",))
    with pytest.raises(ValueError):
        TaggedUtterance("x", ("a",), (None,))


def test_token_roundtrip():
    toks = [Token("kal", "hi"), Token("movie", "en"), Token("@x", U)]
    u = TaggedUtterance.from_tokens("7", toks)
    assert u.tokens == tuple(toks) and len(u) == 3


def test_universal_is_singleton_and_picklable():
    assert pickle.loads(pickle.dumps(U)) is U
    assert U != "univ" and "univ" != U


def test_normalize_tag():
    for raw in ("univ", "O", "Other", "NE", "unk", " U "):
        assert normalize_tag(raw) is U
    assert normalize_tag("HI") == "hi"
    assert normalize_tag("hin", language_aliases={"hin": "hi"}) == "hi"
    with pytest.raises(ValueError):
        normalize_tag("hi en")
    assert format_tag(U) == "univ" and format_tag("en") == "en"
