"""Oracle sweeps: every structured prediction recomputed by brute force.

Each sweep walks all elements of a group up to a length bound, computes the
structured prediction and the independent recount, and reports mismatches.
These back the `verify` CLI command and the acceptance suite.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .analysis import (
    Budget,
    DEFAULT_BUDGET,
    ReducedWordOracle,
    commutation_classes,
    contractible_long_sets,
    deletion_length,
    deletion_length_oracle,
    elements_up_to_length,
    is_fully_covering,
    reduced_words_bfs,
    state_map_image,
)
from .coxeter import CoxeterSystem, Word
from .errors import InternalInvariantError
from .labelings import enumerate_all
from .roots import RootCache, inversion_set, length_and_reducedness
from .segment import build_structure


@dataclass
class SweepReport:
    name: str
    checked: int = 0
    mismatches: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.mismatches

    def line(self) -> str:
        status = "pass" if self.passed else "FAIL"
        detail = f"{self.checked} checks"
        if self.mismatches:
            detail += f", {len(self.mismatches)} mismatches"
        return f"{status}  {self.name} ({detail})"


def _words_per_element(system: CoxeterSystem, max_length: int, cache: RootCache,
                       budget: Budget):
    """(word, element, all reduced words) per element, via the descent oracle."""
    oracle = ReducedWordOracle(system, cache, budget)
    for element, word in elements_up_to_length(system, max_length, cache):
        yield word, element, oracle.words(element)


def sweep_deletion(system: CoxeterSystem, max_length: int,
                   budget: Budget = DEFAULT_BUDGET,
                   label: str = "deletion-length sweep") -> SweepReport:
    """Formula value vs direct recount, for every position of every reduced word."""
    report = SweepReport(label)
    cache = RootCache(system)
    for word, _element, all_words in _words_per_element(system, max_length, cache, budget):
        if not word:
            continue
        structure = build_structure(inversion_set(system, word, cache), cache)
        for w in sorted(all_words):
            for j in range(1, len(w) + 1):
                predicted = deletion_length(system, w, j, cache, structure)
                recounted = deletion_length_oracle(system, w, j, cache)
                report.checked += 1
                if predicted != recounted:
                    report.mismatches.append(
                        f"word {w} position {j}: predicted {predicted} != oracle {recounted}"
                    )
    return report


def sweep_bijection(system: CoxeterSystem, max_length: int,
                    budget: Budget = DEFAULT_BUDGET,
                    label: str = "five-set bijection sweep") -> SweepReport:
    """|R(w)| = #labelings = #tournaments for every element in range."""
    report = SweepReport(label)
    cache = RootCache(system)
    for word, _element, all_words in _words_per_element(system, max_length, cache, budget):
        families = enumerate_all(system, word, budget, cache)
        counts = families.counts
        report.checked += 1
        if not (counts[0] == counts[1] == counts[2] == len(all_words)):
            report.mismatches.append(f"word {word}: counts {counts} vs |R| {len(all_words)}")
    return report


def sweep_covering(system: CoxeterSystem, max_length: int,
                   budget: Budget = DEFAULT_BUDGET,
                   label: str = "covering equivalence sweep") -> SweepReport:
    """Two-point-lines test vs the all-deletions-reduced oracle."""
    report = SweepReport(label)
    cache = RootCache(system)
    for word, _element, all_words in _words_per_element(system, max_length, cache, budget):
        structure = build_structure(inversion_set(system, word, cache), cache)
        structural = all(len(line.members) == 2 for line in structure.lines)
        by_oracle = all(
            length_and_reducedness(system, w[: j - 1] + w[j:], cache)[1]
            for w in all_words
            for j in range(1, len(w) + 1)
        )
        report.checked += 1
        if structural != by_oracle:
            report.mismatches.append(
                f"word {word}: structural {structural} vs oracle {by_oracle}"
            )
    return report


def sweep_freely_braided(system: CoxeterSystem, max_length: int,
                         budget: Budget = DEFAULT_BUDGET,
                         label: str = "freely-braided equivalence sweep") -> SweepReport:
    """Disjoint CInv(w) <=> 2^N commutation classes; state-map image = class count."""
    report = SweepReport(label)
    cache = RootCache(system)
    for word, _element, all_words in _words_per_element(system, max_length, cache, budget):
        structure = build_structure(inversion_set(system, word, cache), cache)
        contractible, n_w = contractible_long_sets(
            system, word, budget, cache, words=all_words, structure=structure
        )
        sets = [line.member_set for line in contractible]
        disjoint = all(
            not (sets[i] & sets[j])
            for i in range(len(sets))
            for j in range(i + 1, len(sets))
        )
        classes = commutation_classes(system, all_words)
        image = state_map_image(system, all_words, contractible, cache)
        report.checked += 1
        if disjoint != (len(classes) == 2 ** n_w):
            report.mismatches.append(
                f"word {word}: disjoint {disjoint}, classes {len(classes)}, N {n_w}"
            )
        if image != len(classes):
            report.mismatches.append(
                f"word {word}: state-map image {image} != classes {len(classes)}"
            )
    return report


def run_all_sweeps(system: CoxeterSystem, max_length: int,
                   budget: Budget = DEFAULT_BUDGET) -> list[SweepReport]:
    return [
        sweep_deletion(system, max_length, budget),
        sweep_bijection(system, max_length, budget),
        sweep_covering(system, max_length, budget),
        sweep_freely_braided(system, max_length, budget),
    ]
