"""Standard encodings, labelings, tournaments, and the correspondence stack.

A reduced expression, its position labeling of Phi(w), and the transitive
tournament it induces carry the same information; enumerate_all generates
each of the three families independently and insists the counts agree.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .analysis import Budget, DEFAULT_BUDGET, reduced_words_bfs
from .coxeter import CoxeterSystem, Word
from .errors import InternalInvariantError, InvalidInputError, NotReducedError
from .roots import Root, RootCache, inversion_set, root_sequence
from .segment import SegmentStructure, build_structure


class Labeling:
    """A finite root -> positive-integer map; roots off the support read 0."""

    __slots__ = ("_items", "_map", "_hash")

    def __init__(self, items: Iterable[tuple[Root, int]]):
        mapping = {}
        for root, label in items:
            if label <= 0:
                raise InvalidInputError("labels must be positive integers")
            if root in mapping:
                raise InvalidInputError("repeated root in labeling")
            mapping[root] = label
        self._map = mapping
        self._items = tuple(sorted(mapping.items(), key=lambda kv: kv[1]))
        self._hash = hash(self._items)

    def get(self, root: Root) -> int:
        return self._map.get(root, 0)

    @property
    def support(self) -> frozenset[Root]:
        return frozenset(self._map)

    def items_by_label(self) -> tuple[tuple[Root, int], ...]:
        return self._items

    def is_sequential(self) -> bool:
        labels = sorted(self._map.values())
        return labels == list(range(1, len(labels) + 1))

    def __len__(self) -> int:
        return len(self._items)

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other) -> bool:
        if not isinstance(other, Labeling):
            return NotImplemented
        return self._items == other._items

    def __repr__(self) -> str:
        return f"Labeling({len(self._items)} roots)"

    def to_json(self) -> list:
        return [{"root": root.to_json(), "label": label} for root, label in self._items]


@dataclass(frozen=True)
class Tournament:
    """A transitive tournament on Phi(w), stored as its unique topological sort."""

    order: tuple[Root, ...]  # ascending: order[k] beats nothing among order[>k]

    def __len__(self) -> int:
        return len(self.order)

    def to_json(self) -> list:
        return [root.to_json() for root in self.order]


def encode(system: CoxeterSystem, word: Word,
           cache: RootCache | None = None) -> Labeling:
    """The standard encoding: the k-th root-sequence entry gets label k."""
    seq = root_sequence(system, word, cache)
    if any(theta.is_negative() for theta in seq):
        raise NotReducedError("reduced expression required")
    return Labeling((theta, k + 1) for k, theta in enumerate(seq))


def decode(system: CoxeterSystem, labeling: Labeling,
           cache: RootCache | None = None) -> Word:
    """The reduced expression a sequential standard labeling encodes.

    Peels the top-labeled root, which must be simple, reflects the rest and
    keeps their labels; any failure certifies the labeling is not standard.
    """
    if not labeling.is_sequential():
        raise InvalidInputError("not a standard labeling: labels are not sequential")
    cache = cache or RootCache(system)
    current = {root: label for root, label in labeling.items_by_label()}
    suffix: list[int] = []
    while current:
        top = max(current, key=current.get)
        for s in range(system.rank):
            if cache.simple[s] == top:
                break
        else:
            raise InvalidInputError("not a standard labeling: top root is not simple")
        del current[top]
        peeled = {}
        for root, label in current.items():
            image = cache.reflect_simple(s, root)
            if not image.is_positive():
                raise InvalidInputError(
                    "not a standard labeling: peeled image left the positive system"
                )
            peeled[image] = label
        current = peeled
        suffix.append(s)
    word = tuple(reversed(suffix))
    if encode(system, word, cache) != labeling:
        raise InternalInvariantError("decode produced a word with a different encoding")
    return word


def is_standard(labeling: Labeling, structure: SegmentStructure) -> bool:
    """Betweenness monotonicity over every collinear triple of the structure."""
    for line in structure.lines:
        labels = [labeling.get(root) for root in line.members]
        k = len(labels)
        for i in range(k):
            for j in range(i + 1, k):
                for l in range(j + 1, k):
                    a, b, c = labels[i], labels[j], labels[l]
                    if not (a <= b <= c or a >= b >= c):
                        return False
    return True


def satisfies_restrictions(labeling: Labeling, structure: SegmentStructure) -> bool:
    """Labels strictly decrease along every partial line away from its canonical end."""
    for line in structure.partial_lines():
        labels = [labeling.get(root) for root in line.members]
        if any(x <= y for x, y in zip(labels, labels[1:])):
            return False
    return True


def tournament_from_labeling(labeling: Labeling) -> Tournament:
    if not labeling.is_sequential():
        raise InvalidInputError("tournament conversion requires a sequential labeling")
    return Tournament(order=tuple(root for root, _ in labeling.items_by_label()))


def labeling_from_tournament(tournament: Tournament) -> Labeling:
    return Labeling((root, k + 1) for k, root in enumerate(tournament.order))


# -- the three independent enumeration routes -------------------------------


def _line_indices(structure: SegmentStructure) -> list[tuple[tuple[int, ...], str]]:
    position = {root: i for i, root in enumerate(structure.points)}
    return [
        (tuple(position[r] for r in line.members), line.kind)
        for line in structure.lines
    ]


def _labelings_by_backtracking(structure: SegmentStructure) -> list[tuple[int, ...]]:
    """All sequential standard labelings satisfying the restrictions.

    Returns, for each labeling, the tuple of point indices in ascending
    label order.  Assigning labels upward forces each line's labeled
    members to stay a prefix or a suffix of its sorted member list;
    partial lines may only grow from the non-canonical end.
    """
    n = len(structure.points)
    lines = _line_indices(structure)
    member_pos = [{p: i for i, p in enumerate(members)} for members, _ in lines]
    # per line: (labeled count, prefix still possible, suffix still possible)
    state: list[tuple[int, bool, bool]] = [(0, True, True) for _ in lines]
    out: list[tuple[int, ...]] = []
    order: list[int] = []
    used = [False] * n

    def place(point: int):
        touched: list[tuple[int, tuple[int, bool, bool]]] = []
        for li, (members, kind) in enumerate(lines):
            pos = member_pos[li].get(point)
            if pos is None:
                continue
            count, pref, suf = state[li]
            new_pref = pref and pos == count
            new_suf = suf and pos == len(members) - 1 - count
            if kind == "partial":
                new_pref = False
            if not (new_pref or new_suf):
                for undo_li, old in touched:
                    state[undo_li] = old
                return None
            touched.append((li, state[li]))
            state[li] = (count + 1, new_pref, new_suf)
        return touched

    def recurse() -> None:
        if len(order) == n:
            out.append(tuple(order))
            return
        for point in range(n):
            if used[point]:
                continue
            touched = place(point)
            if touched is None:
                continue
            used[point] = True
            order.append(point)
            recurse()
            order.pop()
            used[point] = False
            for li, old in touched:
                state[li] = old

    recurse()
    out.sort()
    return out


def _tournaments_by_orientation(structure: SegmentStructure) -> list[tuple[int, ...]]:
    """Linear extensions of every orientation of the full lines, partial
    lines forced; cyclic orientations contribute nothing.
    """
    n = len(structure.points)
    lines = _line_indices(structure)
    full = [members for members, kind in lines if kind == "full"]
    partial = [members for members, kind in lines if kind == "partial"]
    base_edges: list[tuple[int, int]] = []
    for members in partial:
        chain = tuple(reversed(members))  # labels grow toward the canonical end
        base_edges.extend(zip(chain, chain[1:]))
    out: list[tuple[int, ...]] = []
    for mask in range(1 << len(full)):
        edges = set(base_edges)
        for i, members in enumerate(full):
            chain = members if mask >> i & 1 == 0 else tuple(reversed(members))
            edges.update(zip(chain, chain[1:]))
        succ: list[set[int]] = [set() for _ in range(n)]
        indeg = [0] * n
        for a, b in edges:
            succ[a].add(b)
            indeg[b] += 1
        # a cyclic orientation simply yields no complete extension
        order: list[int] = []
        placed = [False] * n

        def extend() -> None:
            if len(order) == n:
                out.append(tuple(order))
                return
            for point in range(n):
                if placed[point] or indeg[point] != 0:
                    continue
                placed[point] = True
                order.append(point)
                for b in succ[point]:
                    indeg[b] -= 1
                extend()
                for b in succ[point]:
                    indeg[b] += 1
                order.pop()
                placed[point] = False

        extend()
    out.sort()
    return out


@dataclass(frozen=True)
class CorrespondenceFamilies:
    reduced_words: tuple[Word, ...]
    labelings: tuple[Labeling, ...]
    tournaments: tuple[Tournament, ...]

    @property
    def counts(self) -> tuple[int, int, int]:
        return (len(self.reduced_words), len(self.labelings), len(self.tournaments))


def enumerate_all(system: CoxeterSystem, word: Word,
                  budget: Budget = DEFAULT_BUDGET,
                  cache: RootCache | None = None) -> CorrespondenceFamilies:
    """Reduced words, labelings, and tournaments by three independent routes.

    Route counts must agree (the five-set bijection); a mismatch is an
    internal failure.
    """
    cache = cache or RootCache(system)
    words = tuple(sorted(reduced_words_bfs(system, word, budget)))
    phi_w = inversion_set(system, word, cache)
    structure = build_structure(phi_w, cache)
    points = structure.points
    labelings = tuple(
        Labeling((points[p], k + 1) for k, p in enumerate(asc))
        for asc in _labelings_by_backtracking(structure)
    )
    tournaments = tuple(
        Tournament(order=tuple(points[p] for p in asc))
        for asc in _tournaments_by_orientation(structure)
    )
    if not len(words) == len(labelings) == len(tournaments):
        raise InternalInvariantError(
            f"correspondence counts disagree: {len(words)} words, "
            f"{len(labelings)} labelings, {len(tournaments)} tournaments"
        )
    return CorrespondenceFamilies(words, labelings, tournaments)
