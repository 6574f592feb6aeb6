"""Finding k adjacent equal-length blocks with equal measure values.

Two strategies share one vectorized kernel. The scan enumerates every
(offset, block length) pair. The progression-guided search colors prefix
values by their residues, looks for monochromatic (k+1)-term arithmetic
progressions of positions, and verifies exact equality on each hit; a
modulus one larger than the observed value gap makes congruence force
equality, and doubling retries recover from an underestimated gap.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np

from .measures import CumulativeTable, MorphismMu, accumulate, mu_additive
from .words import FiniteWord, WordSource

# residue arithmetic stays in int64; a saturated modulus makes coloring injective anyway
MODULUS_CAP = 2**62


class RetryCapExhausted(RuntimeError):
    """Every retry modulus produced only progressions that fail the exact check."""


@dataclass
class SearchLimits:
    """Bounds for a power search; nothing outside them is ever claimed."""

    prefix_length: int
    max_block: int | None = None
    max_offset: int | None = None
    min_offset: int = 0
    modulus: int | None = None  # None: one more than the observed value gap
    modulus_window: int = 512
    retry_cap: int = 8
    exhaustive_fallback: bool = True

    def __post_init__(self):
        if self.prefix_length < 1:
            raise ValueError("prefix_length must be >= 1")
        if self.max_block is not None and self.max_block < 1:
            raise ValueError("max_block must be >= 1")
        if self.max_offset is not None and self.max_offset < 0:
            raise ValueError("max_offset must be >= 0")
        if self.min_offset < 0:
            raise ValueError("min_offset must be >= 0")
        if self.modulus is not None and self.modulus < 1:
            raise ValueError("modulus must be >= 1")
        if self.retry_cap < 0:
            raise ValueError("retry_cap must be >= 0")
        if self.modulus_window < 1:
            raise ValueError("modulus_window must be >= 1")

    def to_json_dict(self) -> dict:
        return {
            "n": self.prefix_length,
            "s_max": self.max_block,
            "t_max": self.max_offset,
            "t_min": self.min_offset,
            "modulus": self.modulus if self.modulus is not None else "auto",
            "modulus_window": self.modulus_window,
            "retry_cap": self.retry_cap,
            "exhaustive_fallback": self.exhaustive_fallback,
        }

    @classmethod
    def from_json_dict(cls, doc: dict, prefix_length: int | None = None) -> "SearchLimits":
        known = {"n", "s_max", "t_max", "t_min", "modulus", "modulus_window", "retry_cap", "exhaustive_fallback"}
        unknown = set(doc) - known
        if unknown:
            raise ValueError(f"unknown limit fields: {sorted(unknown)}")
        n = doc.get("n", prefix_length)
        if n is None:
            raise ValueError('limits need "n" (prefix length)')
        modulus = doc.get("modulus")
        if modulus == "auto":
            modulus = None
        return cls(
            prefix_length=int(n),
            max_block=None if doc.get("s_max") is None else int(doc["s_max"]),
            max_offset=None if doc.get("t_max") is None else int(doc["t_max"]),
            min_offset=int(doc.get("t_min", 0)),
            modulus=None if modulus is None else int(modulus),
            modulus_window=int(doc.get("modulus_window", 512)),
            retry_cap=int(doc.get("retry_cap", 8)),
            exhaustive_fallback=bool(doc.get("exhaustive_fallback", True)),
        )


@dataclass(frozen=True)
class PowerWitness:
    """k adjacent blocks of one length sharing one measure value.

    Blocks are x_{t + (i-1)s + 1} .. x_{t + i s} for i = 1..k; offset t may
    be 0, anchoring the first block at the start of the word.
    """

    offset: int
    block_length: int
    count: int
    value: tuple
    mu_name: str = "custom"
    method: str = "scan"
    modulus: tuple | None = None
    via_fallback: bool = False

    def blocks(self) -> list[tuple[int, int]]:
        """1-based inclusive (start, end) positions of the k blocks."""
        return [
            (self.offset + i * self.block_length + 1, self.offset + (i + 1) * self.block_length)
            for i in range(self.count)
        ]

    def to_json_dict(self) -> dict:
        value = list(self.value) if len(self.value) > 1 else int(self.value[0])
        out = {
            "t": self.offset,
            "s": self.block_length,
            "k": self.count,
            "value": value,
            "mu": self.mu_name,
            "verified": True,
            "method": self.method,
            "origin_anchored": self.offset == 0,
        }
        if self.method != "scan":
            out["modulus"] = None if self.modulus is None else list(self.modulus)
            out["via_fallback"] = self.via_fallback
        return out


def validate_witness(word: FiniteWord, mu: MorphismMu, witness: PowerWitness) -> bool:
    """Re-check a witness by direct letter-wise sums (no prefix table involved)."""
    if witness.count < 2 or witness.block_length < 1 or witness.offset < 0:
        raise ValueError("witness shape is invalid")
    if witness.offset + witness.count * witness.block_length > len(word):
        raise ValueError("witness blocks run past the end of the word")
    expected = tuple(int(c) for c in witness.value)
    return all(mu.of_letters(word.factor(a, b)) == expected for a, b in witness.blocks())


def validate_simultaneous(words: Sequence[FiniteWord], witness: PowerWitness) -> bool:
    """Per-word re-check: coordinate j of the value is word j's common block sum."""
    if len(witness.value) != len(words):
        raise ValueError("witness value dimension does not match the word count")
    for j, word in enumerate(words):
        mu = mu_additive(word.alphabet)
        single = replace(witness, value=(witness.value[j],))
        if not validate_witness(word, mu, single):
            return False
    return True


def _pass(P: np.ndarray, k: int, lim: SearchLimits, colors: np.ndarray | None):
    """One sweep over block lengths; returns (best key or None, saw mono, saw spurious).

    The key is (t + k*s, s, t): earliest end, then shortest block, then
    smallest offset, matching the scan's deterministic order.
    """
    N = P.shape[0] - 1
    s_cap = N // k if lim.max_block is None else min(lim.max_block, N // k)
    best = None
    any_mono = False
    any_spur = False
    for s in range(1, s_cap + 1):
        L = N - k * s + 1
        if L <= 0:
            break
        t_hi = L - 1 if lim.max_offset is None else min(lim.max_offset, L - 1)
        if lim.min_offset > t_hi:
            continue
        D = P[s:] - P[:-s]
        eq_exact = (D[:-s] == D[s:]).all(axis=1)
        exact = eq_exact[0:L].copy()
        for j in range(1, k - 1):
            exact &= eq_exact[j * s : j * s + L]
        if colors is None:
            cand = exact[lim.min_offset : t_hi + 1]
        else:
            eq_color = (colors[:-s] == colors[s:]).all(axis=1)
            mono = eq_color[0:L].copy()
            for j in range(1, k):
                mono &= eq_color[j * s : j * s + L]
            mono_w = mono[lim.min_offset : t_hi + 1]
            exact_w = exact[lim.min_offset : t_hi + 1]
            if mono_w.any():
                any_mono = True
                if (mono_w & ~exact_w).any():
                    any_spur = True
            cand = mono_w & exact_w
        ts = np.flatnonzero(cand)
        if ts.size:
            t0 = int(ts[0]) + lim.min_offset
            key = (t0 + k * s, s, t0)
            if best is None or key < best:
                best = key
    return best, any_mono, any_spur


def _observed_gap_by_coord(P: np.ndarray, window_cap: int) -> list[int]:
    N = P.shape[0] - 1
    g = np.zeros(P.shape[1], dtype=np.int64)
    for n in range(1, min(N, window_cap) + 1):
        W = P[n:] - P[:-n]
        g = np.maximum(g, W.max(axis=0) - W.min(axis=0))
    return [int(v) for v in g]


def _colored_search(P: np.ndarray, k: int, lim: SearchLimits, start_moduli: list[int]):
    """Retry loop of the progression-guided search on a prefix table.

    Returns (key, moduli, via_fallback) or None. Doubling only refines the
    coloring, so once no monochromatic progression is left there is nothing
    to retry toward; the optional fallback pass runs the exact kernel with
    no coloring at all, which is exhaustive within the limits.
    """
    moduli = [max(1, min(int(v), MODULUS_CAP)) for v in start_moduli]
    tried = list(moduli)
    last_mono = False
    for _ in range(lim.retry_cap + 1):
        colors = np.remainder(P, np.array(moduli, dtype=np.int64))
        key, any_mono, _ = _pass(P, k, lim, colors)
        tried = list(moduli)
        if key is not None:
            return key, tried, False
        last_mono = any_mono
        if not any_mono:
            break
        doubled = [min(v * 2, MODULUS_CAP) for v in moduli]
        if doubled == moduli:
            break
        moduli = doubled
    if lim.exhaustive_fallback:
        key, _, _ = _pass(P, k, lim, None)
        return (key, None, True) if key is not None else None
    if last_mono:
        raise RetryCapExhausted(
            f"monochromatic progressions kept failing the exact check up to moduli {tried}"
        )
    return None


def _build_witness(P: np.ndarray, key, count, mu_name, method, moduli, via_fallback) -> PowerWitness:
    _, s, t0 = key
    value = tuple(int(c) for c in P[t0 + s] - P[t0])
    return PowerWitness(
        offset=t0,
        block_length=s,
        count=count,
        value=value,
        mu_name=mu_name,
        method=method,
        modulus=None if moduli is None else tuple(moduli),
        via_fallback=via_fallback,
    )


def _check_count(count: int) -> None:
    if count < 2:
        raise ValueError("power count k must be >= 2")


def find_power_scan(source: WordSource, mu: MorphismMu, count: int, limits: SearchLimits) -> PowerWitness | None:
    """Exhaustive search; returns the witness minimizing (t + k*s, s, t), or None."""
    _check_count(count)
    word = source.prefix(limits.prefix_length)
    table = accumulate(mu, word)
    key, _, _ = _pass(table.prefix, count, limits, None)
    if key is None:
        return None
    w = _build_witness(table.prefix, key, count, mu.name, "scan", None, False)
    if not validate_witness(word, mu, w):
        raise RuntimeError("internal error: scan witness failed independent validation")
    return w


def find_power_mod_mu(source: WordSource, mu: MorphismMu, count: int, limits: SearchLimits) -> PowerWitness | None:
    """Progression-guided search for k adjacent blocks with equal mu-values.

    Positions 0..N are colored by P(n) mod m. A monochromatic progression
    t, t+s, ..., t+ks makes the k block values pairwise congruent; the
    exact check then accepts or rejects, and rejections double m.
    """
    _check_count(count)
    word = source.prefix(limits.prefix_length)
    table = accumulate(mu, word)
    P = table.prefix
    if limits.modulus is not None:
        start = [limits.modulus] * table.dimension
    else:
        start = [max(_observed_gap_by_coord(P, limits.modulus_window)) + 1] * table.dimension
    hit = _colored_search(P, count, limits, start)
    if hit is None:
        return None
    key, moduli, via_fallback = hit
    w = _build_witness(P, key, count, mu.name, "vdw", moduli, via_fallback)
    if not validate_witness(word, mu, w):
        raise RuntimeError("internal error: progression witness failed independent validation")
    return w


def find_power_vdw(source: WordSource, mu: MorphismMu, count: int, limits: SearchLimits) -> PowerWitness | None:
    """The progression-guided finder; see find_power_mod_mu, of which this is the stock use."""
    return find_power_mod_mu(source, mu, count, limits)


def find_simultaneous(sources: Sequence[WordSource], count: int, limits: SearchLimits) -> PowerWitness | None:
    """One (t, s) making k adjacent blocks sum-constant in every word at once.

    Equivalent to the single-word search over Z^m after stacking the words
    coordinate-wise; each coordinate gets its own modulus, derived from
    that word's observed gap.
    """
    _check_count(count)
    if not sources:
        raise ValueError("need at least one word")
    words = []
    columns = []
    for src in sources:
        if src.alphabet.dimension != 1:
            raise ValueError("simultaneous search expects words over Z")
        word = src.prefix(limits.prefix_length)
        words.append(word)
        columns.append(accumulate(mu_additive(word.alphabet), word).prefix[:, 0])
    P = np.stack(columns, axis=1)
    if limits.modulus is not None:
        start = [limits.modulus] * len(sources)
    else:
        start = [g + 1 for g in _observed_gap_by_coord(P, limits.modulus_window)]
    hit = _colored_search(P, count, limits, start)
    if hit is None:
        return None
    key, moduli, via_fallback = hit
    w = _build_witness(P, key, count, "additive", "vdw", moduli, via_fallback)
    if not validate_simultaneous(words, w):
        raise RuntimeError("internal error: simultaneous witness failed independent validation")
    return w
