"""Backtracking search for long words avoiding additive k-powers.

Depth-first, smallest letter first, over a finite set of integer letters.
Each extension is vetted by an incremental suffix check: appending a letter
can only create a power whose last block ends at the new position, so only
block lengths up to n // k need a look. Outcomes carry enough state to
certify what the search proved (exhaustion vs. a budget stop).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .words import Alphabet, FiniteWord


@dataclass
class AvoidanceProblem:
    letters: list[int]
    count: int
    max_length: int
    node_budget: int | None = None

    def __post_init__(self):
        if len(set(self.letters)) != len(self.letters) or not self.letters:
            raise ValueError("letters must be a nonempty list of distinct integers")
        if any(isinstance(a, bool) or not isinstance(a, int) for a in self.letters):
            raise ValueError("letters must be integers")
        self.letters = sorted(self.letters)
        if self.count < 2:
            raise ValueError("power count k must be >= 2")
        if self.max_length < 1:
            raise ValueError("max_length must be >= 1")
        if self.node_budget is not None and self.node_budget < 1:
            raise ValueError("node_budget must be >= 1")


@dataclass
class SearchOutcome:
    letters: list[int]
    count: int
    longest: list[int]
    completed: bool
    nodes: int
    max_length: int

    @property
    def length(self) -> int:
        return len(self.longest)

    @property
    def exhausted(self) -> bool:
        """True when the whole tree was searched and the length cap never bound.

        In that case no word over these letters, of any length, avoids
        k-powers beyond the reported longest.
        """
        return self.completed and self.length < self.max_length

    def to_word(self) -> FiniteWord:
        return FiniteWord.from_letters(self.longest, Alphabet.from_values(self.letters))

    def to_json_dict(self) -> dict:
        return {
            "alphabet": list(self.letters),
            "k": self.count,
            "longest": list(self.longest),
            "length": self.length,
            "exhausted": self.exhausted,
            "completed": self.completed,
            "nodes": self.nodes,
        }


def suffix_is_power_end(sums: list[int], n: int, count: int) -> bool:
    """Does some additive count-power end exactly at position n?

    sums is the running prefix-sum list with sums[0] = 0.
    """
    for block in range(1, n // count + 1):
        v = sums[n] - sums[n - block]
        if all(sums[n - j * block] - sums[n - (j + 1) * block] == v for j in range(1, count)):
            return True
    return False


def word_contains_additive_power(values: list[int], count: int) -> bool:
    """Full quadratic check over all (offset, block length) pairs.

    Independent of the search: builds its own sums and scans everything.
    """
    n = len(values)
    sums = [0]
    for v in values:
        sums.append(sums[-1] + int(v))
    for block in range(1, n // count + 1):
        for t in range(0, n - count * block + 1):
            v = sums[t + block] - sums[t]
            if all(sums[t + (j + 1) * block] - sums[t + j * block] == v for j in range(1, count)):
                return True
    return False


def _load_checkpoint(path: Path, letters: list[int]):
    doc = json.loads(path.read_text())
    saved = [int(v) for v in doc["path"]]
    index = {a: i for i, a in enumerate(letters)}
    bad = [a for a in saved if a not in index]
    if bad:
        raise ValueError(f"checkpoint path uses letters outside the alphabet: {bad}")
    sums = [0]
    for a in saved:
        sums.append(sums[-1] + a)
    # interior depths are mid-subtree; the leaf starts its children from scratch
    next_try = [index[a] for a in saved] + [0]
    return saved, sums, next_try, [int(v) for v in doc["longest"]], int(doc["nodes"])


def backtrack(
    problem: AvoidanceProblem,
    checkpoint_path: str | Path | None = None,
    checkpoint_interval: int = 100_000,
    resume: bool = False,
) -> SearchOutcome:
    """Run the search to completion or until the node budget runs out.

    Every checkpoint_interval accepted nodes the current state is written to
    checkpoint_path as JSON; resume=True restarts from that file. The
    returned longest word is re-validated with the quadratic checker.
    """
    letters = problem.letters
    k = problem.count
    path: list[int] = []
    sums = [0]
    next_try = [0]
    longest: list[int] = []
    nodes = 0
    completed = False
    ckpt = Path(checkpoint_path) if checkpoint_path is not None else None
    if resume:
        if ckpt is None or not ckpt.exists():
            raise ValueError("resume requested but there is no checkpoint file")
        path, sums, next_try, longest, nodes = _load_checkpoint(ckpt, letters)
    since_ckpt = 0

    while True:
        depth = len(path)
        if depth >= problem.max_length or next_try[depth] >= len(letters):
            if depth == 0:
                completed = True
                break
            path.pop()
            sums.pop()
            next_try.pop()
            next_try[-1] += 1
            continue
        a = letters[next_try[depth]]
        path.append(a)
        sums.append(sums[-1] + a)
        if suffix_is_power_end(sums, len(path), k):
            path.pop()
            sums.pop()
            next_try[depth] += 1
            continue
        nodes += 1
        since_ckpt += 1
        if len(path) > len(longest):
            longest = list(path)
        next_try.append(0)
        if ckpt is not None and since_ckpt >= checkpoint_interval:
            ckpt.write_text(
                json.dumps({"path": path, "longest": longest, "nodes": nodes}, sort_keys=True)
            )
            since_ckpt = 0
        if problem.node_budget is not None and nodes >= problem.node_budget:
            break

    if word_contains_additive_power(longest, k):
        raise RuntimeError("internal error: search produced a word containing a power")
    return SearchOutcome(
        letters=letters,
        count=k,
        longest=longest,
        completed=completed,
        nodes=nodes,
        max_length=problem.max_length,
    )
