"""Additive measures on factors: letter-to-vector morphisms and prefix tables.

A measure is a map mu from letters into Z^t extended additively over
factors. Two stock measures cover the classical cases: the identity on
letter values (sums) and the Parikh embedding (occurrence counts).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .words import Alphabet, FiniteWord, as_letter, letter_to_json

# prefix sums must stay comfortably inside int64
VALUE_LIMIT = 2**62


class MorphismMu:
    """A letter -> Z^t map, extended additively to factors."""

    def __init__(self, alphabet: Alphabet, images, name: str = "custom"):
        self.alphabet = alphabet
        self.name = name
        if isinstance(images, Mapping):
            rows = []
            imgs = {as_letter(a): tuple(int(c) for c in np.atleast_1d(v)) for a, v in images.items()}
            for a in alphabet:
                if a not in imgs:
                    raise ValueError(f"mu has no image for letter {a!r}")
                rows.append(imgs[a])
        else:
            rows = [tuple(int(c) for c in row) for row in images]
            if len(rows) != len(alphabet):
                raise ValueError("mu images must align with the alphabet")
        dims = {len(r) for r in rows}
        if len(dims) != 1:
            raise ValueError("mu images mix dimensions")
        self.target_dim = dims.pop()
        if self.target_dim < 1:
            raise ValueError("mu images must have at least one coordinate")
        self.images = np.array(rows, dtype=np.int64)
        if np.abs(self.images).max(initial=0) > VALUE_LIMIT:
            raise OverflowError("mu image coordinate exceeds the checked value range")

    def of_letter(self, letter) -> tuple:
        return tuple(int(c) for c in self.images[self.alphabet.index(letter)])

    def of_letters(self, letters) -> tuple:
        """Direct sum over a letter sequence. Deliberately table-free, for cross-checks."""
        total = [0] * self.target_dim
        for a in letters:
            row = self.images[self.alphabet.index(a)]
            for j in range(self.target_dim):
                total[j] += int(row[j])
        return tuple(total)

    def __repr__(self) -> str:
        return f"MorphismMu({self.name}, dim {self.target_dim} on {self.alphabet!r})"


def mu_additive(alphabet: Alphabet) -> MorphismMu:
    """Sums of letter values: mu is the identity embedding of Z^m letters."""
    return MorphismMu(alphabet, alphabet.as_array(), name="additive")


def mu_parikh(alphabet: Alphabet) -> MorphismMu:
    """Occurrence counts: letter i maps to the i-th unit vector (alphabet order)."""
    return MorphismMu(alphabet, np.eye(len(alphabet), dtype=np.int64), name="parikh")


def mu_from_description(doc, alphabet: Alphabet) -> MorphismMu:
    """Read a measure from {"images": {...} or [[letter, vector], ...], "name": ...}."""
    if not isinstance(doc, Mapping) or "images" not in doc:
        raise ValueError('a measure description needs an "images" field')
    raw = doc["images"]
    if isinstance(raw, Mapping):
        images = {as_letter(int(k)): v for k, v in raw.items()}
    else:
        images = {as_letter(pair[0]): pair[1] for pair in raw}
    return MorphismMu(alphabet, images, name=str(doc.get("name", "custom")))


@dataclass
class CumulativeTable:
    """Un-reduced prefix values P(0..n) of a word under a measure.

    P(0) = 0 and P(i) = P(i-1) + mu(x_i); any residues are computed on
    demand by the consumers, never stored here.
    """

    mu: MorphismMu
    prefix: np.ndarray  # shape (n+1, target_dim), int64

    @property
    def length(self) -> int:
        return int(self.prefix.shape[0] - 1)

    @property
    def dimension(self) -> int:
        return int(self.prefix.shape[1])


def accumulate(mu: MorphismMu, word: FiniteWord, limit: int = VALUE_LIMIT) -> CumulativeTable:
    """Build the prefix-value table of word under mu.

    Overflow is a checked error: the worst-case prefix magnitude is bounded
    before summing so int64 arithmetic can never wrap silently.
    """
    rows = _image_rows(mu, word)
    n = len(word)
    worst = int(np.abs(rows).max(initial=0)) * n
    if worst > limit:
        raise OverflowError(f"prefix values may reach {worst}, beyond the checked limit {limit}")
    table = np.zeros((n + 1, mu.target_dim), dtype=np.int64)
    if n:
        np.cumsum(rows[word.indices], axis=0, out=table[1:])
    return CumulativeTable(mu=mu, prefix=table)


def _image_rows(mu: MorphismMu, word: FiniteWord) -> np.ndarray:
    if mu.alphabet == word.alphabet:
        return mu.images
    # word letters must each have an image; mu may know a larger alphabet
    try:
        sel = [mu.alphabet.index(a) for a in word.alphabet]
    except ValueError:
        raise ValueError("word uses a letter without a mu image") from None
    return mu.images[sel]


def factor_value(table: CumulativeTable, start: int, end: int) -> tuple:
    """Value of the factor x_start .. x_end (1-based, inclusive), in O(1)."""
    if not (1 <= start <= end <= table.length):
        raise ValueError(f"factor [{start}, {end}] out of range 1..{table.length}")
    diff = table.prefix[end] - table.prefix[start - 1]
    return tuple(int(c) for c in diff)


def mu_json_name(mu: MorphismMu) -> str:
    return mu.name if mu.name in ("additive", "parikh") else "custom"


def mu_to_description(mu: MorphismMu) -> dict:
    return {
        "name": mu.name,
        "images": {
            str(letter_to_json(a)): [int(c) for c in mu.images[i]]
            for i, a in enumerate(mu.alphabet)
        },
    }
