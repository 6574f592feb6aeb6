"""Full-scale acceptance slate, one test per criterion, plus teeth checks.

The teeth checks feed deliberately wrong inputs to criterion functions and
expect failure, so a silently weakened check cannot pass unnoticed.
"""

import pytest

from addcomb.acceptance import (
    CRITERIA,
    coded_sum_spread,
    coded_value_count,
    dekking_no_fourth_parikh_power,
    run_all,
)
from addcomb.words import MorphicWord, dekking_word


@pytest.mark.parametrize("name", list(CRITERIA))
def test_criterion(name):
    result = CRITERIA[name]()
    assert result.passed, f"{result.name}: {result.detail}"


def test_corrupted_morphism_fails_the_fourth_power_criterion():
    # shortening one image reintroduces abelian fourth powers
    broken = MorphicWord({0: [0, 1], 1: [0, 0, 0, 1]}, 0)
    result = dekking_no_fourth_parikh_power(source=broken, prefix_length=2000, budget=None)
    assert not result.passed


def test_uncoded_word_fails_the_band_criterion():
    result = coded_sum_spread(source=dekking_word(), prefix_length=2000, max_window=64, budget=None)
    assert not result.passed


def test_time_budget_failures_are_reported():
    result = coded_value_count(prefix_length=2000, max_window=16, budget=1e-9)
    assert not result.passed
    assert "budget" in result.detail


def test_quick_slate():
    results = run_all(quick=True)
    assert [r.name for r in results] == list(CRITERIA)
    failed = [f"{r.name}: {r.detail}" for r in results if not r.passed]
    assert not failed, failed
