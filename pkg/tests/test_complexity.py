import math
import random

import numpy as np
import pytest

from addcomb.complexity import (
    _distinct_rows,
    check_abelian_bounds,
    check_additive_bounds,
    observed_bounds,
    profile,
)
from addcomb.measures import MorphismMu, mu_additive, mu_parikh
from addcomb.words import ExplicitWord, PeriodicWord, dekking_word


def test_alternating_additive_profile():
    src = PeriodicWord([0, 1])
    prof = profile(src, mu_additive(src.alphabet), 500, 6)
    assert prof.sizes == [2, 1, 2, 1, 2, 1]
    assert prof.values(2) == [(1,)]
    assert prof.values(3) == [(1,), (2,)]
    assert prof.size(4) == 1
    with pytest.raises(ValueError):
        prof.size(7)


def test_alternating_abelian_profile():
    src = PeriodicWord([0, 1])
    prof = profile(src, mu_parikh(src.alphabet), 500, 4)
    assert prof.sizes == [2, 1, 2, 1]
    assert prof.values(1) == [(0, 1), (1, 0)]
    assert prof.values(2) == [(1, 1)]


def test_profile_argument_errors():
    src = PeriodicWord([0, 1])
    with pytest.raises(ValueError):
        profile(src, mu_additive(src.alphabet), 10, 0)
    with pytest.raises(ValueError, match="exceeds the prefix length"):
        profile(src, mu_additive(src.alphabet), 10, 11)


def test_csv_shape():
    src = PeriodicWord([0, 1])
    csv = profile(src, mu_additive(src.alphabet), 100, 3).to_csv()
    lines = csv.strip().split("\n")
    assert lines[0] == "n,size,min_value,max_value"
    assert lines[1] == "1,2,0,1"
    assert lines[2] == "2,1,1,1"
    multi = profile(src, mu_parikh(src.alphabet), 100, 2).to_csv()
    assert multi.startswith("n,size,min_value_0,min_value_1,max_value_0,max_value_1")


def test_json_shape():
    src = PeriodicWord([0, 1])
    doc = profile(src, mu_additive(src.alphabet), 100, 2).to_json_dict()
    assert doc["mode"] == "additive"
    assert doc["rows"][0] == {"n": 1, "size": 2, "values": [0, 1]}
    assert doc["rows"][1] == {"n": 2, "size": 1, "values": [1]}


def test_distinct_rows_matches_reference():
    rng = np.random.default_rng(20260817)
    W = rng.integers(-50, 50, size=(400, 3)).astype(np.int64)
    got = _distinct_rows(W)
    want = sorted({tuple(int(c) for c in row) for row in W})
    assert got == want


def test_distinct_rows_wide_span_fallback():
    # coordinate spans whose product cannot be packed into one int64
    W = np.array([[2**31, -(2**31), 7], [-(2**31), 2**31, 7], [2**31, -(2**31), 7]], dtype=np.int64)
    got = _distinct_rows(W)
    assert got == sorted({tuple(int(c) for c in row) for row in W})


def test_observed_gaps_alternating():
    src = PeriodicWord([0, 1])
    word = src.prefix(1000)
    mu = mu_additive(src.alphabet)
    prof = profile(word, mu, 1000, 128)
    report = observed_bounds(prof, word, mu)
    assert report.adjacent_gap == 1
    assert report.global_gap == 1
    assert report.max_values == 2


def test_observed_gaps_dekking():
    src = dekking_word()
    word = src.prefix(4000)
    mu = mu_additive(src.alphabet)
    prof = profile(word, mu, 4000, 128)
    report = observed_bounds(prof, word, mu)
    assert report.adjacent_gap == 11
    assert report.global_gap == 11


def test_euclidean_diameter_on_request():
    src = PeriodicWord([0, 1])
    word = src.prefix(200)
    mu = mu_parikh(src.alphabet)
    prof = profile(word, mu, 200, 4)
    silent = observed_bounds(prof, word, mu)
    assert silent.euclidean_gap is None
    loud = observed_bounds(prof, word, mu, euclidean=True)
    assert loud.euclidean_gap == pytest.approx(math.sqrt(2))


def test_additive_verdicts_pass_on_mixed_sign_letters():
    rng = random.Random(20260817)
    src = ExplicitWord([rng.randrange(-2, 4) for _ in range(800)])
    word = src.prefix(800)
    mu = mu_additive(src.alphabet)
    report = observed_bounds(profile(word, mu, 800, 64), word, mu)
    verdicts = check_additive_bounds(report)
    assert [v.name for v in verdicts] == [
        "gap_vs_adjacent_gap",
        "count_vs_range_box",
        "range_vs_count_steps",
    ]
    assert all(v.passed for v in verdicts)


def test_abelian_verdicts_and_small_gap_note():
    src = PeriodicWord([0, 1])
    word = src.prefix(400)
    mu = mu_parikh(src.alphabet)
    report = observed_bounds(profile(word, mu, 400, 32), word, mu)
    verdicts = check_abelian_bounds(report)
    assert all(v.passed for v in verdicts)
    # two Parikh values at n = 1 already exceed the (2g - 1)^dim variant
    assert any("(2g-1)^dim" in note for note in report.notes)


def test_abelian_checks_reject_other_measures():
    src = PeriodicWord([0, 1])
    word = src.prefix(100)
    mu = mu_additive(src.alphabet)
    report = observed_bounds(profile(word, mu, 100, 8), word, mu)
    with pytest.raises(ValueError, match="Parikh"):
        check_abelian_bounds(report)


def test_additive_checks_catch_planted_violations():
    src = PeriodicWord([0, 1])
    word = src.prefix(100)
    mu = mu_additive(src.alphabet)
    report = observed_bounds(profile(word, mu, 100, 8), word, mu)
    report.sizes[2] = 99
    names = {v.name: v.passed for v in check_additive_bounds(report)}
    assert names["count_vs_range_box"] is False


def test_custom_measure_mode_label():
    src = PeriodicWord([0, 1])
    mu = MorphismMu(src.alphabet, {0: (1, 1), 1: (2, 0)}, name="weights")
    prof = profile(src, mu, 50, 3)
    assert prof.mode == "custom"
    assert prof.dimension == 2
