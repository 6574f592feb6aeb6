import pytest

from addcomb.words import (
    Alphabet,
    BlockCodedWord,
    ChampernowneWord,
    ExplicitWord,
    FiniteWord,
    MorphicWord,
    PeriodicWord,
    as_letter,
    block_code,
    coded_dekking_word,
    dekking_word,
    drop_lift,
    lift,
    named_word,
    word_from_description,
)

DEKKING_20 = [0, 1, 1, 0, 0, 0, 1, 0, 0, 0, 1, 0, 1, 1, 0, 1, 1, 0, 1, 1]
CODED_16 = [0, 3, 1, 2, 1, 2, 0, 3, 0, 3, 0, 3, 1, 2, 0, 3]
CHAMPERNOWNE_26 = "01101110010111011110001001"


def values(word):
    return [a[0] for a in word.letters]


def test_as_letter_normalization():
    assert as_letter(3) == (3,)
    assert as_letter((1, -2)) == (1, -2)
    assert as_letter([5]) == (5,)
    with pytest.raises(ValueError):
        as_letter(True)
    with pytest.raises(ValueError):
        as_letter("ab")
    with pytest.raises(ValueError):
        as_letter(())
    with pytest.raises(ValueError):
        as_letter((1, 2), dimension=3)
    with pytest.raises(ValueError):
        as_letter(2**31 + 1)


def test_alphabet_basics():
    ab = Alphabet.from_values([3, 1, 2, 1])
    assert ab.letters == ((1,), (2,), (3,))
    assert ab.index(2) == 1
    assert 3 in ab and 7 not in ab
    assert ab.as_array().tolist() == [[1], [2], [3]]
    with pytest.raises(ValueError):
        Alphabet([])
    with pytest.raises(ValueError):
        Alphabet([(1,), (1, 2)])
    with pytest.raises(ValueError):
        Alphabet([1, 1])


def test_finite_word_factor_is_one_based_inclusive():
    ab = Alphabet.from_values([0, 1])
    w = FiniteWord.from_letters([0, 1, 1, 0], ab)
    assert w.factor(2, 3) == [(1,), (1,)]
    assert w.factor(1, 4) == [(0,), (1,), (1,), (0,)]
    assert w[0] == (0,)
    with pytest.raises(ValueError):
        w.factor(0, 2)
    with pytest.raises(ValueError):
        w.factor(3, 5)
    with pytest.raises(ValueError):
        w.factor(3, 2)


def test_periodic_word():
    src = PeriodicWord([0, 0, 1])
    assert values(src.prefix(8)) == [0, 0, 1, 0, 0, 1, 0, 0]
    with pytest.raises(ValueError):
        src.prefix(0)
    with pytest.raises(ValueError):
        PeriodicWord([])


def test_explicit_word_is_bounded():
    src = ExplicitWord([4, -1, 4])
    assert values(src.prefix(3)) == [4, -1, 4]
    with pytest.raises(ValueError):
        src.prefix(4)


def test_dekking_prefix():
    assert values(dekking_word().prefix(20)) == DEKKING_20


def test_morphic_fixed_point_property():
    src = dekking_word()
    long = values(src.prefix(400))
    expanded = []
    for a in values(src.prefix(150)):
        expanded.extend(src.rules[(a,)][i][0] for i in range(len(src.rules[(a,)])))
        if len(expanded) >= 400:
            break
    assert expanded[:400] == long


def test_morphic_validation():
    with pytest.raises(ValueError, match="prolongable"):
        MorphicWord({0: [1, 0], 1: [0]}, 0)
    with pytest.raises(ValueError, match="prolongable"):
        MorphicWord({0: [0], 1: [1, 0]}, 0)
    with pytest.raises(ValueError, match="foreign"):
        MorphicWord({0: [0, 2], 1: [1, 0]}, 0)
    with pytest.raises(ValueError, match="empty"):
        MorphicWord({0: [0, 1], 1: []}, 0)
    with pytest.raises(ValueError, match="seed"):
        MorphicWord({0: [0, 1], 1: [1, 0]}, 2)


def test_coded_dekking_prefix_and_pair_sums():
    src = coded_dekking_word()
    assert values(src.prefix(16)) == CODED_16
    v = values(src.prefix(1000))
    assert all(v[2 * i] + v[2 * i + 1] == 3 for i in range(500))


def test_block_code_requires_full_coverage():
    base = PeriodicWord([0, 1])
    with pytest.raises(ValueError, match="no image"):
        block_code(base, {0: [5]})
    coded = block_code(base, {0: [5], 1: [7, 7]})
    assert values(coded.prefix(6)) == [5, 7, 7, 5, 7, 7]


def test_champernowne_prefix():
    got = "".join(str(v) for v in values(ChampernowneWord().prefix(26)))
    assert got == CHAMPERNOWNE_26


def test_lift_shapes_and_round_trip():
    base = ExplicitWord([1, 3, 2, 1])
    lifted = lift(base)
    assert lifted.alphabet.letters == ((1, 0, 0), (0, 2, 0), (0, 0, 3))
    word = lifted.prefix(4)
    assert word.letters == [(1, 0, 0), (0, 0, 3), (0, 2, 0), (1, 0, 0)]
    assert drop_lift(word) == [(1,), (3,), (2,), (1,)]


def test_lift_rejections():
    with pytest.raises(ValueError, match="0 is a letter"):
        lift(ExplicitWord([0, 1]))
    with pytest.raises(ValueError, match="over Z"):
        lift(ExplicitWord([(1, 2), (2, 1)]))
    with pytest.raises(ValueError, match="not a lifted letter"):
        drop_lift(FiniteWord.from_letters([(1, 1)]))


@pytest.mark.parametrize(
    "src, n",
    [
        (PeriodicWord([0, 1, 1]), 50),
        (ExplicitWord([-2, 0, 5, 5]), 4),
        (dekking_word(), 50),
        (coded_dekking_word(), 50),
        (ChampernowneWord(), 50),
        (lift(ExplicitWord([1, 2, 1, 2])), 4),
    ],
    ids=["periodic", "explicit", "morphic", "block_coded", "champernowne", "lifted"],
)
def test_description_round_trip(src, n):
    rebuilt = word_from_description(src.describe())
    assert rebuilt.prefix(n).letters == src.prefix(n).letters


def test_word_from_description_errors():
    with pytest.raises(ValueError, match="unknown word kind"):
        word_from_description({"kind": "sturmian"})
    with pytest.raises(ValueError, match="missing"):
        word_from_description({"kind": "periodic"})
    with pytest.raises(ValueError, match="malformed"):
        word_from_description("{not json")


def test_named_word():
    assert values(named_word("dekking").prefix(3)) == [0, 1, 1]
    with pytest.raises(ValueError, match="unknown word name"):
        named_word("thue-morse")
