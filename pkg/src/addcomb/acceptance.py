"""End-to-end acceptance checks exercising every part of the toolkit.

Each criterion is a self-contained function returning a CriterionResult;
run_all executes the full slate. Sources are injectable so a deliberately
corrupted word can demonstrate that a check has teeth. Scales and time
budgets are the full-size defaults; quick mode shrinks them for smoke runs.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from itertools import product

from .complexity import check_abelian_bounds, check_additive_bounds, observed_bounds, profile
from .measures import mu_additive, mu_parikh
from .powers import (
    SearchLimits,
    find_power_mod_mu,
    find_power_scan,
    find_power_vdw,
    find_simultaneous,
    validate_simultaneous,
    validate_witness,
)
from .search import AvoidanceProblem, backtrack, word_contains_additive_power
from .words import (
    ChampernowneWord,
    ExplicitWord,
    PeriodicWord,
    WordSource,
    coded_dekking_word,
    dekking_word,
    lift,
)

CORPUS_SEED = 20260817


@dataclass
class CriterionResult:
    name: str
    passed: bool
    detail: str
    elapsed: float

    def to_json_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "detail": self.detail,
            "elapsed": round(self.elapsed, 3),
        }


def _finish(name: str, started: float, budget: float | None, passed: bool, detail: str) -> CriterionResult:
    elapsed = time.perf_counter() - started
    if budget is not None and elapsed > budget:
        passed = False
        detail = f"{detail}; exceeded the {budget:g}s budget"
    return CriterionResult(name=name, passed=passed, detail=detail, elapsed=elapsed)


def _witness_key(w, count: int) -> tuple:
    return (w.offset + count * w.block_length, w.block_length, w.offset)


def coded_value_count(
    source: WordSource | None = None,
    prefix_length: int = 100_000,
    max_window: int = 512,
    budget: float | None = 10.0,
) -> CriterionResult:
    """Window sums of the coded word take at most four values at every length."""
    started = time.perf_counter()
    src = source if source is not None else coded_dekking_word()
    prof = profile(src, mu_additive(src.alphabet), prefix_length, max_window)
    worst = max(prof.sizes)
    return _finish(
        "coded-dekking-value-count",
        started,
        budget,
        worst <= 4,
        f"max distinct window sums {worst} over n <= {max_window} at N = {prefix_length}",
    )


def coded_sum_spread(
    source: WordSource | None = None,
    prefix_length: int = 100_000,
    max_window: int = 512,
    budget: float | None = 10.0,
) -> CriterionResult:
    """Window sums of the coded word stay in the predicted 3- or 4-value band.

    Pairs of coded letters sum to 3, so an even window of length n sums to
    3n/2 up to one boundary letter and an odd one to 3(n-1)/2 plus at most 3.
    """
    started = time.perf_counter()
    src = source if source is not None else coded_dekking_word()
    prof = profile(src, mu_additive(src.alphabet), prefix_length, max_window)
    violation = None
    for n in range(1, max_window + 1):
        if n % 2 == 0:
            base = 3 * (n // 2)
            allowed = {base - 1, base, base + 1}
        else:
            base = 3 * ((n - 1) // 2)
            allowed = {base, base + 1, base + 2, base + 3}
        got = {v[0] for v in prof.values(n)}
        if not got <= allowed:
            violation = f"n = {n}: sums {sorted(got - allowed)} fall outside the band"
            break
    return _finish(
        "coded-dekking-sum-spread",
        started,
        budget,
        violation is None,
        violation or f"all window sums in band over n <= {max_window} at N = {prefix_length}",
    )


def dekking_no_fourth_parikh_power(
    source: WordSource | None = None,
    prefix_length: int = 10_000,
    budget: float | None = 60.0,
) -> CriterionResult:
    """An exhaustive scan finds no abelian fourth power in the binary word."""
    started = time.perf_counter()
    src = source if source is not None else dekking_word()
    witness = find_power_scan(src, mu_parikh(src.alphabet), 4, SearchLimits(prefix_length=prefix_length))
    return _finish(
        "dekking-no-fourth-parikh-power",
        started,
        budget,
        witness is None,
        "no abelian fourth power in the first "
        f"{prefix_length} letters" if witness is None else f"unexpected witness {witness.to_json_dict()}",
    )


def champernowne_abelian_growth(
    prefix_length: int = 65_536,
    max_window: int = 10,
    budget: float | None = 30.0,
) -> CriterionResult:
    """The concatenated-binary word has exactly n + 1 Parikh values at length n."""
    started = time.perf_counter()
    src = ChampernowneWord()
    prof = profile(src, mu_parikh(src.alphabet), prefix_length, max_window)
    bad = [(n, prof.size(n)) for n in range(1, max_window + 1) if prof.size(n) != n + 1]
    return _finish(
        "champernowne-abelian-growth",
        started,
        budget,
        not bad,
        f"sizes follow n + 1 for n <= {max_window} at N = {prefix_length}" if not bad else f"off values: {bad}",
    )


def champernowne_fourth_parikh_power(
    prefix_length: int = 10_000,
    budget: float | None = 60.0,
) -> CriterionResult:
    """Unbounded abelian growth does not stop fourth powers: one is found and re-checked."""
    started = time.perf_counter()
    src = ChampernowneWord()
    mu = mu_parikh(src.alphabet)
    witness = find_power_scan(src, mu, 4, SearchLimits(prefix_length=prefix_length))
    if witness is None:
        return _finish("champernowne-fourth-parikh-power", started, budget, False, "no witness found")
    ok = validate_witness(src.prefix(prefix_length), mu, witness)
    return _finish(
        "champernowne-fourth-parikh-power",
        started,
        budget,
        ok,
        f"witness t = {witness.offset}, s = {witness.block_length} re-validated",
    )


def _bound_suite(random_words: int, random_length: int, seed: int = CORPUS_SEED):
    rng = random.Random(seed)
    suite: list[tuple[str, WordSource, int]] = [
        ("alternating", PeriodicWord([0, 1]), 2000),
        ("double-alternating", PeriodicWord([0, 0, 1, 1]), 2000),
        ("coded-dekking", coded_dekking_word(), 4000),
        ("dekking", dekking_word(), 4000),
        ("champernowne", ChampernowneWord(), 4096),
    ]
    for i in range(random_words):
        values = [rng.randrange(-2, 4) for _ in range(random_length)]
        suite.append((f"random-{i}", ExplicitWord(values), random_length))
    return suite


def bound_inequality_suite(
    max_window: int = 128,
    random_words: int = 20,
    random_length: int = 2000,
    budget: float | None = 30.0,
) -> CriterionResult:
    """Every gap inequality holds on named words and a seeded random corpus."""
    started = time.perf_counter()
    failures = []
    checked = 0
    for name, src, n in _bound_suite(random_words, random_length):
        word = src.prefix(n)
        for mu in (mu_additive(src.alphabet), mu_parikh(src.alphabet)):
            prof = profile(word, mu, n, min(max_window, n))
            report = observed_bounds(prof, word, mu)
            verdicts = check_additive_bounds(report) if mu.name == "additive" else check_abelian_bounds(report)
            checked += len(verdicts)
            failures.extend(f"{name}/{mu.name}/{v.name}" for v in verdicts if not v.passed)
    return _finish(
        "bound-inequality-suite",
        started,
        budget,
        not failures,
        f"{checked} verdicts on {5 + random_words} words, all passed" if not failures else f"failed: {failures}",
    )


def plateau_words(prefix_length: int = 1000, max_window: int = 128, ceiling: int = 8):
    """Candidates whose observed additive complexity stops growing well inside the window."""
    candidates: list[tuple[str, WordSource]] = [
        ("alternating", PeriodicWord([0, 1])),
        ("double-alternating", PeriodicWord([0, 0, 1, 1])),
        ("coded-dekking", coded_dekking_word()),
        ("dekking", dekking_word()),
        ("champernowne", ChampernowneWord()),
    ]
    selected = []
    for name, src in candidates:
        prof = profile(src, mu_additive(src.alphabet), prefix_length, max_window)
        half = max(prof.sizes[: max_window // 2])
        full = max(prof.sizes)
        if half == full and full <= ceiling:
            selected.append((name, src))
    return selected


def progression_search_on_plateau_words(
    prefix_length: int = 1000,
    counts: tuple = (2, 3, 4, 5),
    budget: float | None = 60.0,
) -> CriterionResult:
    """On plateau words the colored search needs no fallback and the scan confirms it.

    The scan minimizes over all candidates while the colored search only
    sees residue-aligned ones, so agreement means: both find a witness,
    both witnesses re-validate, and the scan's key is never worse.
    """
    started = time.perf_counter()
    selected = plateau_words(prefix_length)
    failures = []
    names = [name for name, _ in selected]
    if names != ["alternating", "double-alternating", "coded-dekking"]:
        failures.append(f"plateau selection changed: {names}")
    for name, src in selected:
        mu = mu_additive(src.alphabet)
        word = src.prefix(prefix_length)
        for k in counts:
            limits = SearchLimits(prefix_length=prefix_length)
            colored = find_power_vdw(src, mu, k, limits)
            scanned = find_power_scan(src, mu, k, limits)
            if colored is None or scanned is None:
                failures.append(f"{name} k={k}: missing witness")
                continue
            if colored.via_fallback:
                failures.append(f"{name} k={k}: fallback engaged")
            if not validate_witness(word, mu, colored) or not validate_witness(word, mu, scanned):
                failures.append(f"{name} k={k}: validation failed")
            if _witness_key(scanned, k) > _witness_key(colored, k):
                failures.append(f"{name} k={k}: scan key worse than colored key")
    return _finish(
        "progression-search-on-plateau-words",
        started,
        budget,
        not failures,
        f"{len(selected)} words x k in {counts} agreed without fallback" if not failures else f"failed: {failures}",
    )


def simultaneous_periodic_pair(
    prefix_length: int = 10_000,
    counts: tuple = (2, 3),
    budget: float | None = 30.0,
) -> CriterionResult:
    """One offset and block length works for two periodic words at once."""
    started = time.perf_counter()
    sources = [PeriodicWord([0, 1]), PeriodicWord([0, 0, 1])]
    words = [src.prefix(prefix_length) for src in sources]
    failures = []
    found = []
    for k in counts:
        witness = find_simultaneous(sources, k, SearchLimits(prefix_length=prefix_length))
        if witness is None:
            failures.append(f"k={k}: nothing found")
            continue
        if not validate_simultaneous(words, witness):
            failures.append(f"k={k}: validation failed")
        found.append(f"k={k}: t={witness.offset}, s={witness.block_length}")
    return _finish(
        "simultaneous-periodic-pair",
        started,
        budget,
        not failures,
        "; ".join(found) if not failures else f"failed: {failures}",
    )


def measure_engine_agreement(
    prefix_length: int = 1000,
    counts: tuple = (2, 3, 4),
    budget: float | None = 60.0,
) -> CriterionResult:
    """The generic-measure finder matches its specializations.

    With the additive measure it returns the colored search's witness
    verbatim; with the Parikh measure it finds a power exactly when the
    exhaustive scan does.
    """
    started = time.perf_counter()
    suite: list[tuple[str, WordSource]] = [
        ("alternating", PeriodicWord([0, 1])),
        ("double-alternating", PeriodicWord([0, 0, 1, 1])),
        ("coded-dekking", coded_dekking_word()),
        ("dekking", dekking_word()),
    ]
    failures = []
    for name, src in suite:
        word = src.prefix(prefix_length)
        for k in counts:
            limits = SearchLimits(prefix_length=prefix_length)
            additive = mu_additive(src.alphabet)
            a = find_power_mod_mu(src, additive, k, limits)
            b = find_power_vdw(src, additive, k, limits)
            if a != b:
                failures.append(f"{name} k={k}: additive engines disagree")
            parikh = mu_parikh(src.alphabet)
            c = find_power_mod_mu(src, parikh, k, limits)
            d = find_power_scan(src, parikh, k, limits)
            if (c is None) != (d is None):
                failures.append(f"{name} k={k}: parikh existence disagrees")
            if c is not None and not validate_witness(word, parikh, c):
                failures.append(f"{name} k={k}: parikh witness invalid")
    return _finish(
        "measure-engine-agreement",
        started,
        budget,
        not failures,
        f"{len(suite)} words x k in {counts} consistent" if not failures else f"failed: {failures}",
    )


def lift_correspondence(
    words: int = 100,
    length: int = 200,
    counts: tuple = (2, 3),
    seed: int = CORPUS_SEED,
    budget: float | None = 60.0,
) -> CriterionResult:
    """Parikh powers downstairs are additive powers upstairs, witness for witness.

    Lifting a_j to a_j * e_j turns block Parikh vectors into coordinate
    sums scaled by the (nonzero) letters, so both scans minimize over the
    same candidate set and must return the same offset and block length.
    """
    started = time.perf_counter()
    rng = random.Random(seed)
    failures = []
    for i in range(words):
        base = ExplicitWord([rng.choice([1, 2, 3]) for _ in range(length)])
        lifted = lift(base)
        scale = [a[0] for a in base.alphabet]
        for k in counts:
            limits = SearchLimits(prefix_length=length)
            down = find_power_scan(base, mu_parikh(base.alphabet), k, limits)
            up = find_power_scan(lifted, mu_additive(lifted.alphabet), k, limits)
            if (down is None) != (up is None):
                failures.append(f"word {i} k={k}: existence differs")
                continue
            if down is None:
                continue
            if (down.offset, down.block_length) != (up.offset, up.block_length):
                failures.append(f"word {i} k={k}: witnesses differ")
            if tuple(c * s for c, s in zip(down.value, scale)) != up.value:
                failures.append(f"word {i} k={k}: values do not correspond")
    return _finish(
        "lift-correspondence",
        started,
        budget,
        not failures,
        f"{words} random words x k in {counts} matched" if not failures else f"failed: {failures}",
    )


def binary_square_avoidance(
    max_length: int = 10,
    budget: float | None = 10.0,
) -> CriterionResult:
    """The backtracker proves the longest additive-square-free word over {0, 1} has length 3."""
    started = time.perf_counter()
    failures = []
    first = backtrack(AvoidanceProblem([0, 1], 2, max_length))
    second = backtrack(AvoidanceProblem([0, 1], 2, max_length))
    if first.to_json_dict() != second.to_json_dict():
        failures.append("two runs disagree")
    if not (first.completed and first.exhausted):
        failures.append("search did not exhaust the tree")
    if first.longest != [0, 1, 0]:
        failures.append(f"unexpected longest word {first.longest}")
    if word_contains_additive_power(first.longest, 2):
        failures.append("reported word contains an additive square")
    longer = first.length + 1
    if not all(word_contains_additive_power(list(w), 2) for w in product([0, 1], repeat=longer)):
        failures.append(f"some length-{longer} word avoids additive squares")
    return _finish(
        "binary-square-avoidance",
        started,
        budget,
        not failures,
        f"longest {first.longest} certified by exhaustion and brute force" if not failures else f"failed: {failures}",
    )


CRITERIA = {
    "coded-dekking-value-count": coded_value_count,
    "coded-dekking-sum-spread": coded_sum_spread,
    "dekking-no-fourth-parikh-power": dekking_no_fourth_parikh_power,
    "champernowne-abelian-growth": champernowne_abelian_growth,
    "champernowne-fourth-parikh-power": champernowne_fourth_parikh_power,
    "bound-inequality-suite": bound_inequality_suite,
    "progression-search-on-plateau-words": progression_search_on_plateau_words,
    "simultaneous-periodic-pair": simultaneous_periodic_pair,
    "measure-engine-agreement": measure_engine_agreement,
    "lift-correspondence": lift_correspondence,
    "binary-square-avoidance": binary_square_avoidance,
}


def run_all(quick: bool = False) -> list[CriterionResult]:
    """Run every criterion; quick mode shrinks scales and drops time budgets."""
    if quick:
        plan = [
            lambda: coded_value_count(prefix_length=2000, max_window=64, budget=None),
            lambda: coded_sum_spread(prefix_length=2000, max_window=64, budget=None),
            lambda: dekking_no_fourth_parikh_power(prefix_length=1000, budget=None),
            # short prefixes genuinely miss late Parikh values; this one is cheap at full scale
            lambda: champernowne_abelian_growth(budget=None),
            lambda: champernowne_fourth_parikh_power(prefix_length=2000, budget=None),
            lambda: bound_inequality_suite(max_window=64, random_words=5, random_length=500, budget=None),
            lambda: progression_search_on_plateau_words(prefix_length=1000, counts=(2, 3), budget=None),
            lambda: simultaneous_periodic_pair(prefix_length=1000, budget=None),
            lambda: measure_engine_agreement(prefix_length=500, counts=(2, 3), budget=None),
            lambda: lift_correspondence(words=10, length=60, budget=None),
            lambda: binary_square_avoidance(budget=None),
        ]
    else:
        plan = [
            coded_value_count,
            coded_sum_spread,
            dekking_no_fourth_parikh_power,
            champernowne_abelian_growth,
            champernowne_fourth_parikh_power,
            bound_inequality_suite,
            progression_search_on_plateau_words,
            simultaneous_periodic_pair,
            measure_engine_agreement,
            lift_correspondence,
            binary_square_avoidance,
        ]
    results = []
    for step in plan:
        try:
            results.append(step())
        except Exception as e:  # a crashed criterion is a failed criterion
            name = getattr(step, "__name__", "criterion")
            results.append(CriterionResult(name=name, passed=False, detail=f"raised {e!r}", elapsed=0.0))
    return results
