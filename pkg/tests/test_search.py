import json

import pytest

from addcomb.search import (
    AvoidanceProblem,
    backtrack,
    suffix_is_power_end,
    word_contains_additive_power,
)


def test_problem_validation():
    with pytest.raises(ValueError):
        AvoidanceProblem([], 2, 5)
    with pytest.raises(ValueError):
        AvoidanceProblem([0, 0], 2, 5)
    with pytest.raises(ValueError):
        AvoidanceProblem([0, True], 2, 5)
    with pytest.raises(ValueError):
        AvoidanceProblem([0, 1], 1, 5)
    with pytest.raises(ValueError):
        AvoidanceProblem([0, 1], 2, 0)
    with pytest.raises(ValueError):
        AvoidanceProblem([0, 1], 2, 5, node_budget=0)


def test_letters_are_sorted():
    assert AvoidanceProblem([2, 0, 1], 2, 3).letters == [0, 1, 2]


def test_validator_examples():
    assert not word_contains_additive_power([0, 1, 0], 2)
    assert word_contains_additive_power([0, 1, 0, 1], 2)
    assert word_contains_additive_power([1, 3, 2, 2], 2)
    assert not word_contains_additive_power([1, 2, 3], 2)
    assert word_contains_additive_power([5, 5, 5], 3)
    assert not word_contains_additive_power([5, 5, 4], 3)
    assert not word_contains_additive_power([], 2)


def test_suffix_check_matches_validator():
    # on a power-free word, appending a letter creates a power iff one ends
    # at the new position; checked exhaustively on small alphabets
    from itertools import product

    for k, letters, max_len in [(2, (0, 1), 6), (3, (0, 1), 8), (2, (0, 1, 2), 5)]:
        for length in range(1, max_len + 1):
            for word in product(letters, repeat=length):
                if word_contains_additive_power(list(word[:-1]), k):
                    continue
                sums = [0]
                for a in word:
                    sums.append(sums[-1] + a)
                got = suffix_is_power_end(sums, length, k)
                assert got == word_contains_additive_power(list(word), k), (k, word)


def test_single_letter_alphabet():
    out = backtrack(AvoidanceProblem([0], 2, 10))
    assert out.longest == [0]
    assert out.length == 1
    assert out.completed and out.exhausted
    assert out.nodes == 1


def test_binary_squares():
    out = backtrack(AvoidanceProblem([0, 1], 2, 10))
    assert out.longest == [0, 1, 0]
    assert out.nodes == 6
    assert out.completed and out.exhausted
    assert out.to_json_dict() == {
        "alphabet": [0, 1],
        "k": 2,
        "longest": [0, 1, 0],
        "length": 3,
        "exhausted": True,
        "completed": True,
        "nodes": 6,
    }


def test_binary_cubes():
    out = backtrack(AvoidanceProblem([0, 1], 3, 20))
    assert out.longest == [0, 0, 1, 1, 0, 1, 1, 0, 0]
    assert out.exhausted


def test_ternary_squares():
    out = backtrack(AvoidanceProblem([0, 1, 2], 2, 20))
    assert out.longest == [0, 1, 0, 2, 0, 1, 0]
    assert out.exhausted


def test_length_cap_is_not_exhaustion():
    out = backtrack(AvoidanceProblem([0, 1], 3, 5))
    assert out.length == 5
    assert out.completed
    assert not out.exhausted


def test_node_budget_stops_early():
    out = backtrack(AvoidanceProblem([0, 1], 3, 20, node_budget=3))
    assert out.nodes == 3
    assert not out.completed
    assert not out.exhausted


def test_outcome_word_round_trip():
    out = backtrack(AvoidanceProblem([0, 1, 2], 2, 20))
    assert [a[0] for a in out.to_word().letters] == out.longest


def test_checkpoint_resume_reaches_the_same_outcome(tmp_path):
    ckpt = tmp_path / "state.json"

    def problem(budget):
        return AvoidanceProblem([0, 1, 2], 2, 7, node_budget=budget)

    uninterrupted = backtrack(problem(None))

    stopped = backtrack(problem(5), checkpoint_path=ckpt, checkpoint_interval=1)
    assert not stopped.completed
    saved = json.loads(ckpt.read_text())
    assert saved["nodes"] == 5
    assert not word_contains_additive_power(saved["path"], 2)

    resumed = backtrack(problem(None), checkpoint_path=ckpt, resume=True)
    assert resumed.to_json_dict() == uninterrupted.to_json_dict()


def test_resume_without_checkpoint_errors(tmp_path):
    with pytest.raises(ValueError, match="no checkpoint"):
        backtrack(AvoidanceProblem([0, 1], 2, 5), checkpoint_path=tmp_path / "nope.json", resume=True)
    with pytest.raises(ValueError, match="no checkpoint"):
        backtrack(AvoidanceProblem([0, 1], 2, 5), resume=True)


def test_resume_rejects_foreign_letters(tmp_path):
    ckpt = tmp_path / "state.json"
    ckpt.write_text(json.dumps({"path": [0, 7], "longest": [0], "nodes": 2}))
    with pytest.raises(ValueError, match="outside the alphabet"):
        backtrack(AvoidanceProblem([0, 1], 2, 5), checkpoint_path=ckpt, resume=True)
