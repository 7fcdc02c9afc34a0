import math
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from codemix.core import UNIVERSAL, SpanProfile, TaggedUtterance, tag_histogram
from codemix.metrics import (
    METRIC_NAMES,
    MetricConfig,
    burstiness,
    cmi_new,
    cmi_old,
    i_index,
    m_index,
    memory,
    metric_report,
    natural_range,
    scale_to_ten,
)

from . import oracles

U = UNIVERSAL
NORMALIZED = MetricConfig(cmi_mode="normalized")
tag_seqs = st.lists(st.sampled_from(["hi", "en", "bn", "ta", U]), min_size=1, max_size=60)


def utt(tags):
    return TaggedUtterance.from_tags(tags)


def prof(lengths):
    langs = ["hi", "en"]
    return SpanProfile(tuple((langs[i % 2], n) for i, n in enumerate(lengths)), sum(lengths))


# --- cmi_old


def test_cmi_old_examples():
    assert cmi_old(tag_histogram(utt(["hi"] * 3))) == 0
    assert cmi_old(tag_histogram(utt([U, U]))) == 0
    v = cmi_old(tag_histogram(utt(["hi", "hi", "en", U])))
    assert v == pytest.approx(100 / 3, abs=1e-12)
    assert v == pytest.approx(oracles.cmi_old(["hi", "hi", "en", oracles.U]), abs=1e-12)


# --- cmi_new


def test_cmi_new_monolingual_zero_any_weights():
    for a in (0.0, 0.3, 0.5, 1.0):
        for mode in ("literal", "normalized"):
            cfg = MetricConfig(a=a, b=1 - a, cmi_mode=mode)
            assert cmi_new(utt(["hi"] * 4), cfg) == 0.0


def test_cmi_new_literal_and_normalized():
    u = utt(["hi", "hi", "en", U])
    assert cmi_new(u) == pytest.approx(0.5 * 100 / 3 + 0.5 * 0.25, abs=1e-12)
    assert round(cmi_new(u), 3) == 16.792
    assert cmi_new(u, NORMALIZED) == pytest.approx(100 * (0.5 / 3 + 0.5 * 0.25), abs=1e-12)
    assert round(cmi_new(u, NORMALIZED), 3) == 29.167


def test_config_validation():
    with pytest.raises(ValueError):
        MetricConfig(a=0.6, b=0.6)
    with pytest.raises(ValueError):
        MetricConfig(a=-0.1, b=1.1)
    with pytest.raises(ValueError):
        MetricConfig(cmi_mode="eq2")
    with pytest.raises(ValueError):
        MetricConfig(universal_mode="opaque")
    with pytest.raises(ValueError):
        MetricConfig(i_index_mode="tokens")
    MetricConfig(a=0.1, b=0.9)  # 0.1 + 0.9 within 1e-12 of 1


# --- m_index


def test_m_index_examples():
    assert m_index(tag_histogram(utt(["hi", "en"]))) == 1.0
    assert m_index(tag_histogram(utt(["hi", "hi", U]))) == 0.0
    v = m_index(tag_histogram(utt(["hi", "hi", "hi", "en"])))
    assert v == pytest.approx(0.6, abs=1e-12)
    assert v == pytest.approx(oracles.m_index(["hi", "hi", "hi", "en"]), abs=1e-12)


def test_m_index_ignores_universal():
    assert m_index(tag_histogram(utt(["hi", "en", U, U, U]))) == 1.0


# --- i_index


def test_i_index_examples():
    assert i_index(utt(["en", "hi", "en", "hi"])) == 1.0
    assert i_index(utt(["hi", "hi", "hi"])) == 0.0
    assert i_index(utt(["hi", "hi", "en", "hi"])) == pytest.approx(2 / 3, abs=1e-12)
    assert i_index(utt(["hi"])) == 0.0


def test_i_index_all_token_mode():
    cfg = MetricConfig(i_index_mode="all-token")
    u = utt(["hi", U, "en"])
    assert i_index(u) == 1.0
    assert i_index(u, cfg) == 0.5


# --- burstiness


def test_burstiness_examples():
    assert burstiness(prof([2, 2, 2])) == -1.0
    assert burstiness(prof([1, 3])) == pytest.approx(-1 / 3, abs=1e-12)
    assert burstiness(prof([4])) is None
    assert burstiness(prof([])) is None


# --- memory


def test_memory_examples():
    assert memory(prof([1, 2, 1, 2])) == pytest.approx(-1.0, abs=1e-12)
    assert memory(prof([2, 2, 2, 2])) is None
    v = memory(prof([1, 1, 5, 5]))
    assert 0 < v <= 1
    assert v == pytest.approx(oracles.memory([1, 1, 5, 5]), abs=1e-12)
    assert memory(prof([1, 2])) is None


def test_memory_hand_value():
    # head [1,1,5], tail [1,5,5]: deviations (-4/3,-4/3,8/3) and (-8/3,4/3,4/3),
    # cross sum 16/3, both variances 32/9, so memory = (16/3) / (3 * 32/9) = 1/2
    assert memory(prof([1, 1, 5, 5])) == pytest.approx(0.5, abs=1e-12)


# --- report and scaling


def test_report_composition():
    u = utt(["hi", "hi", "en", U])
    r = metric_report(u)
    assert r.cmi_old == cmi_old(tag_histogram(u))
    assert r.cmi_new == cmi_new(u)
    assert r.m_index == m_index(tag_histogram(u))
    assert r.i_index == i_index(u)
    assert (r.n, r.P, r.f_p) == (4, 1, 0.25)
    d = r.to_dict()
    assert d["u"] == 1 and d["spans"] == [["hi", 2], ["en", 1]]


def test_report_all_universal():
    r = metric_report(utt([U, U, U]))
    assert r.cmi_old == 0 and r.cmi_new == 0 and r.m_index == 0 and r.i_index == 0
    assert len(r.spans) == 0 and r.burstiness is None and r.memory is None


def test_report_monolingual():
    r = metric_report(utt(["en", U, "en", "en"]))
    assert (r.cmi_new, r.m_index, r.i_index, r.P) == (0.0, 0.0, 0.0, 0)


def test_scale_to_ten():
    assert scale_to_ten(50, (0, 100)) == 5
    assert scale_to_ten(0.6, (0, 1)) == pytest.approx(6)
    assert scale_to_ten(100, (0, 100)) == 10
    assert scale_to_ten(-1, (-1, 1)) == 0
    with pytest.raises(ValueError):
        scale_to_ten(101, (0, 100))
    with pytest.raises(ValueError):
        scale_to_ten(1, (1, 1))


def test_natural_range():
    assert natural_range("cmi_new") == (0.0, 50.5)
    assert natural_range("cmi_new", NORMALIZED) == (0.0, 100.0)
    with pytest.raises(KeyError):
        natural_range("entropy")


# --- oracle equivalence


CONFIGS = [
    dict(cmi_mode=c, universal_mode=um, i_index_mode=im)
    for c in ("literal", "normalized")
    for um in ("transparent", "literal")
    for im in ("language-bearing", "all-token")
]


@pytest.mark.parametrize("opts", CONFIGS, ids=lambda o: "-".join(o.values()))
def test_exhaustive_oracle(opts):
    cfg = MetricConfig(**opts)
    for length in range(1, 7):
        for tags in product(["hi", "en", U], repeat=length):
            got = metric_report(utt(list(tags)), cfg).scores()
            want = oracles.all_metrics(
                oracles.to_oracle(tags, U), 0.5, 0.5, opts["cmi_mode"], opts["universal_mode"], opts["i_index_mode"]
            )
            for m in METRIC_NAMES:
                assert oracles.close(got[m], want[m]), (tags, m, got[m], want[m])


@given(tag_seqs, st.floats(0, 1))
@settings(max_examples=300)
def test_random_oracle(tags, a):
    cfg = MetricConfig(a=a, b=1 - a)
    got = metric_report(utt(tags), cfg).scores()
    want = oracles.all_metrics(oracles.to_oracle(tags, U), a, 1 - a)
    for m in METRIC_NAMES:
        assert oracles.close(got[m], want[m]), (m, got[m], want[m])


# --- properties


@given(tag_seqs, st.sampled_from(CONFIGS))
@settings(max_examples=300)
def test_range_bounds(tags, opts):
    cfg = MetricConfig(**opts)
    r = metric_report(utt(tags), cfg)
    assert 0 <= r.cmi_old <= 100
    lo, hi = natural_range("cmi_new", cfg)
    assert lo <= r.cmi_new <= hi
    assert 0 <= r.m_index <= 1 and 0 <= r.i_index <= 1
    assert 0 <= r.f_p < 1
    for v in (r.burstiness, r.memory):
        assert v is None or -1 <= v <= 1
    assert (r.burstiness is None) == (len(r.spans) < 2)
    for v in r.scores().values():
        assert v is None or not math.isnan(v)


@given(tag_seqs, st.randoms(use_true_random=False))
def test_bag_of_words_invariance(tags, rnd):
    u = utt(tags)
    order = list(range(len(tags)))
    rnd.shuffle(order)
    a, b = metric_report(u), metric_report(u.permuted(order))
    assert a.cmi_old == b.cmi_old
    assert a.m_index == b.m_index


@given(st.sampled_from(["hi", "en"]), st.integers(1, 30), st.integers(0, 10))
def test_monolingual_zero(lang, n, k):
    r = metric_report(utt([lang] * n + [U] * k))
    assert r.cmi_new == 0 and r.m_index == 0 and r.i_index == 0 and r.P == 0


@given(st.integers(2, 12), st.integers(1, 8))
def test_equal_spans_burstiness_exactly_minus_one(count, length):
    tags = []
    for i in range(count):
        tags += [("hi", "en")[i % 2]] * length
    assert metric_report(utt(tags)).burstiness == -1.0
