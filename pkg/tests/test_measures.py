import random

import pytest

from addcomb.measures import (
    MorphismMu,
    accumulate,
    factor_value,
    mu_additive,
    mu_from_description,
    mu_parikh,
    mu_to_description,
)
from addcomb.words import Alphabet, FiniteWord


def test_additive_is_identity_on_letter_values():
    ab = Alphabet.from_values([-2, 0, 3])
    mu = mu_additive(ab)
    assert mu.name == "additive"
    assert mu.of_letter(-2) == (-2,)
    assert mu.of_letters([3, -2, 3]) == (4,)


def test_parikh_counts_occurrences():
    ab = Alphabet.from_values([0, 1, 5])
    mu = mu_parikh(ab)
    assert mu.of_letter(5) == (0, 0, 1)
    assert mu.of_letters([0, 5, 0, 0]) == (3, 0, 1)


def test_custom_images_from_dict_and_rows():
    ab = Alphabet.from_values([0, 1])
    by_dict = MorphismMu(ab, {0: (2, -1), 1: (0, 4)}, name="pair")
    by_rows = MorphismMu(ab, [(2, -1), (0, 4)], name="pair")
    assert by_dict.of_letters([0, 1, 1]) == by_rows.of_letters([0, 1, 1]) == (2, 7)
    assert by_dict.target_dim == 2


def test_image_validation():
    ab = Alphabet.from_values([0, 1])
    with pytest.raises(ValueError, match="no image"):
        MorphismMu(ab, {0: (1,)})
    with pytest.raises(ValueError, match="align"):
        MorphismMu(ab, [(1,)])
    with pytest.raises(ValueError, match="mix dimensions"):
        MorphismMu(ab, {0: (1,), 1: (1, 2)})
    with pytest.raises(OverflowError):
        MorphismMu(ab, {0: (2**62 + 1,), 1: (0,)})


def test_accumulate_small_table():
    word = FiniteWord.from_letters([1, 0, 1, 1])
    table = accumulate(mu_parikh(word.alphabet), word)
    assert table.length == 4
    assert table.dimension == 2
    assert table.prefix.tolist() == [[0, 0], [0, 1], [1, 1], [1, 2], [1, 3]]


def test_factor_value_matches_direct_sums():
    rng = random.Random(20260817)
    letters = [rng.randrange(-3, 4) for _ in range(60)]
    word = FiniteWord.from_letters(letters)
    mu = mu_additive(word.alphabet)
    table = accumulate(mu, word)
    for _ in range(50):
        start = rng.randrange(1, 61)
        end = rng.randrange(start, 61)
        assert factor_value(table, start, end) == mu.of_letters(word.factor(start, end))


def test_factor_value_range_errors():
    word = FiniteWord.from_letters([0, 1])
    table = accumulate(mu_additive(word.alphabet), word)
    for start, end in [(0, 1), (1, 3), (2, 1)]:
        with pytest.raises(ValueError):
            factor_value(table, start, end)


def test_accumulate_overflow_is_checked():
    word = FiniteWord.from_letters([1, 1, 1, 1])
    big = MorphismMu(word.alphabet, {1: (2**61,)})
    with pytest.raises(OverflowError, match="beyond the checked limit"):
        accumulate(big, word)


def test_measure_over_larger_alphabet_remaps():
    mu = mu_additive(Alphabet.from_values([0, 1, 2]))
    word = FiniteWord.from_letters([0, 2, 2])
    assert accumulate(mu, word).prefix[:, 0].tolist() == [0, 0, 2, 4]
    stranger = FiniteWord.from_letters([0, 3])
    with pytest.raises(ValueError, match="without a mu image"):
        accumulate(mu, stranger)


def test_mu_description_round_trip():
    ab = Alphabet.from_values([0, 1])
    mu = MorphismMu(ab, {0: (1, 2), 1: (3, 4)}, name="zig")
    doc = mu_to_description(mu)
    back = mu_from_description(doc, ab)
    assert back.name == "zig"
    assert back.images.tolist() == mu.images.tolist()
    pairs = mu_from_description({"images": [[0, [1, 2]], [1, [3, 4]]]}, ab)
    assert pairs.images.tolist() == mu.images.tolist()
    with pytest.raises(ValueError, match="images"):
        mu_from_description({"name": "nothing"}, ab)
