"""Braid-move combinatorics, deletion lengths, and element classification.

Two independent reduced-expression engines (braid-move closure on letters,
descent recursion on exact matrices) cross-check each other; classification
predicates each pair a structural test with a brute-force oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .coxeter import CoxeterSystem, GroupElement, Word, evaluate_word, identity_element
from .errors import (
    BudgetExceededError,
    InternalInvariantError,
    InvalidInputError,
    NotReducedError,
)
from .roots import (
    Root,
    RootCache,
    inversion_set,
    length_and_reducedness,
    root_sequence,
)
from .segment import SegmentStructure, build_structure, deletion_statistic


@dataclass(frozen=True)
class Budget:
    max_words: int = 10**6
    max_word_length: int = 20

    def check_length(self, word: Word) -> None:
        if len(word) > self.max_word_length:
            raise BudgetExceededError(
                f"word length {len(word)} exceeds budget {self.max_word_length}"
            )

    def check_words(self, count: int) -> None:
        if count > self.max_words:
            raise BudgetExceededError(
                f"reduced-expression count exceeds budget {self.max_words}"
            )


DEFAULT_BUDGET = Budget()


@dataclass(frozen=True)
class BraidMove:
    """An (s,t)_m alternating factor at positions start..end (1-based, inclusive)."""

    start: int
    end: int
    generators: tuple[int, int]
    m: int

    def apply(self, word: Word) -> Word:
        s, t = self.generators
        replacement = tuple(t if k % 2 == 0 else s for k in range(self.m))
        return word[: self.start - 1] + replacement + word[self.end:]


def find_braid_moves(system: CoxeterSystem, word: Word) -> tuple[BraidMove, ...]:
    """All maximal alternating factors of exact length m_{s,t}, finite m only."""
    moves = []
    n = len(word)
    i = 0
    while i < n - 1:
        s, t = word[i], word[i + 1]
        if s == t:
            i += 1
            continue
        j = i + 2
        while j < n and word[j] == word[j - 2]:
            j += 1
        run = j - i  # maximal alternating run on {s, t} starting at i
        m = system.matrix[s][t]
        if m >= 2 and run == m:
            moves.append(BraidMove(start=i + 1, end=j, generators=(s, t), m=m))
        i = j - 1
    return tuple(moves)


def reduced_words_bfs(system: CoxeterSystem, word: Word,
                      budget: Budget = DEFAULT_BUDGET) -> frozenset[Word]:
    """Closure of a reduced word under braid moves; dedupes on letter sequences."""
    budget.check_length(word)
    seen = {word}
    frontier = [word]
    while frontier:
        current = frontier.pop()
        for move in find_braid_moves(system, current):
            neighbor = move.apply(current)
            if neighbor not in seen:
                budget.check_words(len(seen) + 1)
                seen.add(neighbor)
                frontier.append(neighbor)
    return frozenset(seen)


class ReducedWordOracle:
    """Descent-recursion enumeration, memoized on exact group elements."""

    def __init__(self, system: CoxeterSystem, cache: RootCache | None = None,
                 budget: Budget = DEFAULT_BUDGET):
        self.system = system
        self.cache = cache or RootCache(system)
        self.budget = budget
        self._memo: dict[GroupElement, frozenset[Word]] = {
            identity_element(system): frozenset({()})
        }

    def _descents(self, element: GroupElement) -> list[int]:
        out = []
        for s in range(self.system.rank):
            column = self.cache.intern(Root(element.column(s)))
            if column.is_negative():
                out.append(s)
        return out

    def words(self, element: GroupElement) -> frozenset[Word]:
        found = self._memo.get(element)
        if found is not None:
            return found
        collected = set()
        for s in self._descents(element):
            shorter = element.right_multiply(s)
            for prefix in self.words(shorter):
                collected.add(prefix + (s,))
                self.budget.check_words(len(collected))
        result = frozenset(collected)
        self._memo[element] = result
        return result


def enumerate_reduced(system: CoxeterSystem, word: Word,
                      budget: Budget = DEFAULT_BUDGET,
                      cache: RootCache | None = None) -> frozenset[Word]:
    """All reduced expressions, verified identical across both engines."""
    cache = cache or RootCache(system)
    _, reduced = length_and_reducedness(system, word, cache)
    if not reduced:
        raise NotReducedError("reduced expression required")
    via_moves = reduced_words_bfs(system, word, budget)
    oracle = ReducedWordOracle(system, cache, budget)
    via_descents = oracle.words(evaluate_word(system, word))
    if via_moves != via_descents:
        raise InternalInvariantError(
            "braid-move closure and descent recursion disagree"
        )
    return via_moves


def commutation_classes(system: CoxeterSystem,
                        words: Iterable[Word]) -> tuple[tuple[Word, ...], ...]:
    """Partition of reduced words under 2-braid moves; classes sorted by representative."""
    words = sorted(set(words))
    index = {w: i for i, w in enumerate(words)}
    parent = list(range(len(words)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for w in words:
        for move in find_braid_moves(system, w):
            if move.m != 2:
                continue
            neighbor = move.apply(w)
            a, b = find(index[w]), find(index[neighbor])
            if a != b:
                parent[max(a, b)] = min(a, b)
    groups: dict[int, list[Word]] = {}
    for w in words:
        groups.setdefault(find(index[w]), []).append(w)
    classes = [tuple(sorted(members)) for members in groups.values()]
    classes.sort(key=lambda cls: cls[0])
    return tuple(classes)


def commutation_order(system: CoxeterSystem, word: Word,
                      cache: RootCache | None = None) -> frozenset[tuple[Root, Root]]:
    """Heap-style partial order on Phi(w): closure of precedence between
    non-orthogonal root-sequence entries.  Equal orders <=> same commutation class.
    """
    cache = cache or RootCache(system)
    seq = root_sequence(system, word, cache)
    if any(theta.is_negative() for theta in seq):
        raise NotReducedError("reduced expression required")
    n = len(seq)
    succ: list[set[int]] = [set() for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if not cache.orthogonal(seq[i], seq[j]):
                succ[i].add(j)
    # transitive closure, processed in reverse topological (index) order
    for i in range(n - 1, -1, -1):
        extra: set[int] = set()
        for j in succ[i]:
            extra |= succ[j]
        succ[i] |= extra
    return frozenset(
        (seq[i], seq[j]) for i in range(n) for j in succ[i]
    )


def _occurrence_order(seq: tuple[Root, ...], members: tuple[Root, ...]) -> tuple[int, ...]:
    positions = {theta: k for k, theta in enumerate(seq)}
    ranked = sorted(range(len(members)), key=lambda idx: positions[members[idx]])
    return tuple(ranked)


def contractible_long_sets(system: CoxeterSystem, word: Word,
                           budget: Budget = DEFAULT_BUDGET,
                           cache: RootCache | None = None,
                           words: frozenset[Word] | None = None,
                           structure: SegmentStructure | None = None):
    """Contractible long inversion sets of w and their count N(w).

    A candidate is a full line with at least three members; it is
    contractible iff its members appear consecutively in the root sequence
    of some reduced expression.
    """
    cache = cache or RootCache(system)
    if words is None:
        words = reduced_words_bfs(system, word, budget)
    if structure is None:
        structure = build_structure(inversion_set(system, word, cache), cache)
    candidates = [line for line in structure.full_lines() if len(line.members) >= 3]
    if not candidates:
        return (), 0
    sequences = [root_sequence(system, w, cache) for w in sorted(words)]
    contractible = []
    for line in candidates:
        member_set = line.member_set
        size = len(member_set)
        for seq in sequences:
            positions = [k for k, theta in enumerate(seq) if theta in member_set]
            if positions[-1] - positions[0] == size - 1:
                contractible.append(line)
                break
    return tuple(contractible), len(contractible)


def deletion_length(system: CoxeterSystem, word: Word, j: int,
                    cache: RootCache | None = None,
                    structure: SegmentStructure | None = None) -> int:
    """Predicted length after deleting letter j (1-based) from a reduced word,
    computed purely from endpoint distances in the segment structure.
    """
    if not 1 <= j <= len(word):
        raise InvalidInputError(f"deletion index {j} out of range 1..{len(word)}")
    cache = cache or RootCache(system)
    seq = root_sequence(system, word, cache)
    if any(theta.is_negative() for theta in seq):
        raise NotReducedError("reduced expression required")
    if structure is None:
        structure = build_structure(inversion_set(system, word, cache), cache)
    d_stat = deletion_statistic(structure, seq[j - 1])
    return len(word) - 1 - 2 * d_stat


def deletion_length_oracle(system: CoxeterSystem, word: Word, j: int,
                           cache: RootCache | None = None) -> int:
    """Independent recount: delete the letter, recount negative entries."""
    shorter = word[: j - 1] + word[j:]
    length, _ = length_and_reducedness(system, shorter, cache)
    return length


def is_fully_covering(system: CoxeterSystem, word: Word,
                      budget: Budget = DEFAULT_BUDGET,
                      cache: RootCache | None = None,
                      words: frozenset[Word] | None = None,
                      structure: SegmentStructure | None = None) -> tuple[bool, int]:
    """(fully covering?, number of elements covered).

    The structural test (every line has exactly two points) is checked
    against the deletion oracle (every single deletion of every reduced
    expression stays reduced); disagreement is an internal failure.
    """
    cache = cache or RootCache(system)
    if structure is None:
        structure = build_structure(inversion_set(system, word, cache), cache)
    structural = all(len(line.members) == 2 for line in structure.lines)
    if words is None:
        words = reduced_words_bfs(system, word, budget)
    by_oracle = True
    for w in sorted(words):
        for j in range(1, len(w) + 1):
            shorter = w[: j - 1] + w[j:]
            _, reduced = length_and_reducedness(system, shorter, cache)
            if not reduced:
                by_oracle = False
                break
        if not by_oracle:
            break
    if structural != by_oracle:
        raise InternalInvariantError(
            "structural covering test disagrees with the deletion oracle"
        )
    seq = root_sequence(system, word, cache)
    covered = sum(1 for theta in seq if deletion_statistic(structure, theta) == 0)
    return structural, covered


def state_map_image(system: CoxeterSystem, words: frozenset[Word],
                    contractible: tuple, cache: RootCache) -> int:
    """Size of the image of the 0/1 state map over CInv(w).

    The base expression is the lexicographically least reduced word; image
    size is base-independent.
    """
    ordered_words = sorted(words)
    base_seq = root_sequence(system, ordered_words[0], cache)
    base_orders = [_occurrence_order(base_seq, line.members) for line in contractible]
    image = set()
    for w in ordered_words:
        seq = root_sequence(system, w, cache)
        bits = tuple(
            0 if _occurrence_order(seq, line.members) == base_orders[i] else 1
            for i, line in enumerate(contractible)
        )
        image.add(bits)
    return len(image)


def is_freely_braided(system: CoxeterSystem, word: Word,
                      budget: Budget = DEFAULT_BUDGET,
                      cache: RootCache | None = None,
                      words: frozenset[Word] | None = None,
                      structure: SegmentStructure | None = None) -> tuple[bool, int]:
    """(freely braided?, size of the state-map image).

    Verifies the class-count characterization and the image-size law along
    the way; either failing is an internal error, not a user error.
    """
    cache = cache or RootCache(system)
    if words is None:
        words = reduced_words_bfs(system, word, budget)
    contractible, n_w = contractible_long_sets(
        system, word, budget, cache, words=words, structure=structure
    )
    sets = [line.member_set for line in contractible]
    disjoint = True
    for i in range(len(sets)):
        for j in range(i + 1, len(sets)):
            if sets[i] & sets[j]:
                disjoint = False
    classes = commutation_classes(system, words)
    image_size = state_map_image(system, words, contractible, cache)
    if image_size != len(classes):
        raise InternalInvariantError("state-map image size differs from class count")
    if disjoint != (len(classes) == 2 ** n_w):
        raise InternalInvariantError(
            "freely-braided disjointness disagrees with the 2^N class count"
        )
    return disjoint, image_size


def is_short_braid_avoiding(system: CoxeterSystem, word: Word,
                            budget: Budget = DEFAULT_BUDGET,
                            words: frozenset[Word] | None = None) -> bool:
    """No reduced expression contains a factor (s,t,s) with non-commuting s, t."""
    if words is None:
        words = reduced_words_bfs(system, word, budget)
    for w in words:
        for i in range(len(w) - 2):
            s, t = w[i], w[i + 1]
            if s != t and w[i + 2] == s and system.matrix[s][t] != 2:
                return False
    return True


def contracted_reduced_expression(system: CoxeterSystem, word: Word,
                                  budget: Budget = DEFAULT_BUDGET,
                                  cache: RootCache | None = None) -> Word:
    """A reduced word, commutation-equivalent to the input, in which every
    contractible long inversion set is consecutive in the root sequence.
    """
    cache = cache or RootCache(system)
    words = reduced_words_bfs(system, word, budget)
    structure = build_structure(inversion_set(system, word, cache), cache)
    free, _ = is_freely_braided(system, word, budget, cache, words=words,
                                structure=structure)
    if not free:
        raise InvalidInputError("element is not freely braided")
    contractible, _ = contractible_long_sets(
        system, word, budget, cache, words=words, structure=structure
    )
    letters = list(word)
    seq = list(root_sequence(system, word, cache))

    def swap_left(pos: int) -> None:
        # moving the letter at pos one step left is a 2-braid move exactly
        # when the adjacent root-sequence entries are orthogonal
        if not cache.orthogonal(seq[pos - 1], seq[pos]):
            raise InternalInvariantError("orthogonal shift expected during contraction")
        letters[pos - 1], letters[pos] = letters[pos], letters[pos - 1]
        seq[pos - 1], seq[pos] = seq[pos], seq[pos - 1]

    for line in contractible:
        member_set = line.member_set
        positions = [k for k, theta in enumerate(seq) if theta in member_set]
        # make entries 2..m consecutive by left shifts, then close the gap
        # between the first two by shifting the first entry right
        for idx in range(1, len(positions) - 1):
            target = positions[idx] + 1
            mover = positions[idx + 1]
            while mover > target:
                swap_left(mover)
                mover -= 1
            positions[idx + 1] = target
        first, second = positions[0], positions[1]
        while second - first > 1:
            swap_left(first + 1)  # pulls the first entry one step right
            first += 1
        positions[0] = first
    result = tuple(letters)
    final_seq = root_sequence(system, result, cache)
    for line in contractible:
        member_set = line.member_set
        positions = [k for k, theta in enumerate(final_seq) if theta in member_set]
        if positions[-1] - positions[0] != len(member_set) - 1:
            raise InternalInvariantError("contraction procedure failed to contract a line")
    return result


@dataclass(frozen=True)
class ClassificationReport:
    length: int
    reduced_count: int
    commutation_class_count: int
    contractible_long_sets: tuple
    n_contractible: int
    freely_braided: bool
    fully_covering: bool
    short_braid_avoiding: bool
    covered_count: int

    def to_json(self) -> dict:
        return {
            "length": self.length,
            "reduced_count": self.reduced_count,
            "commutation_class_count": self.commutation_class_count,
            "contractible_long_sets": [line.to_json() for line in self.contractible_long_sets],
            "N": self.n_contractible,
            "freely_braided": self.freely_braided,
            "fully_covering": self.fully_covering,
            "short_braid_avoiding": self.short_braid_avoiding,
            "covered_count": self.covered_count,
        }


def classify(system: CoxeterSystem, word: Word,
             budget: Budget = DEFAULT_BUDGET,
             cache: RootCache | None = None) -> ClassificationReport:
    cache = cache or RootCache(system)
    length, reduced = length_and_reducedness(system, word, cache)
    if not reduced:
        raise NotReducedError("reduced expression required")
    words = enumerate_reduced(system, word, budget, cache)
    structure = build_structure(inversion_set(system, word, cache), cache)
    contractible, n_w = contractible_long_sets(
        system, word, budget, cache, words=words, structure=structure
    )
    classes = commutation_classes(system, words)
    free, _ = is_freely_braided(system, word, budget, cache, words=words,
                                structure=structure)
    covering, covered = is_fully_covering(system, word, budget, cache,
                                          words=words, structure=structure)
    return ClassificationReport(
        length=length,
        reduced_count=len(words),
        commutation_class_count=len(classes),
        contractible_long_sets=contractible,
        n_contractible=n_w,
        freely_braided=free,
        fully_covering=covering,
        short_braid_avoiding=is_short_braid_avoiding(system, word, budget, words=words),
        covered_count=covered,
    )


def elements_up_to_length(system: CoxeterSystem, max_length: int,
                          cache: RootCache | None = None
                          ) -> Iterator[tuple[GroupElement, Word]]:
    """All elements with length <= max_length, each with one reduced word,
    in breadth-first deterministic order.
    """
    cache = cache or RootCache(system)
    identity = identity_element(system)
    seen = {identity}
    level: list[tuple[GroupElement, Word]] = [(identity, ())]
    yield identity, ()
    for _ in range(max_length):
        nxt: list[tuple[GroupElement, Word]] = []
        for element, word in level:
            for s in range(system.rank):
                column = cache.intern(Root(element.column(s)))
                if column.is_positive():
                    longer = element.right_multiply(s)
                    if longer not in seen:
                        seen.add(longer)
                        pair = (longer, word + (s,))
                        nxt.append(pair)
                        yield pair
        level = nxt
        if not level:
            break
