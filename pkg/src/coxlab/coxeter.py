"""Coxeter systems, words, the bilinear form, and the geometric representation.

Element identity is exact matrix equality under the faithful geometric
representation, which works uniformly for infinite groups.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

from .errors import InvalidInputError
from .exact import ExactScalar, RingSpec, build_ring, cos_entry

Word = tuple[int, ...]


@dataclass(frozen=True)
class CoxeterSystem:
    generator_names: tuple[str, ...]
    matrix: tuple[tuple[int, ...], ...]  # 0 encodes infinity
    ring: RingSpec
    form: tuple[tuple[ExactScalar, ...], ...]

    @property
    def rank(self) -> int:
        return len(self.generator_names)

    def b(self, i: int, j: int) -> ExactScalar:
        return self.form[i][j]

    def generator_index(self, name: str) -> int:
        try:
            return self.generator_names.index(name)
        except ValueError:
            raise InvalidInputError(f"unknown generator {name!r}") from None

    def word_from_names(self, names: Sequence[str]) -> Word:
        return tuple(self.generator_index(n) for n in names)

    def parse_word(self, text: str) -> Word:
        """Whitespace-separated generator names, or a JSON array of names."""
        text = text.strip()
        if text.startswith("["):
            try:
                names = json.loads(text)
            except json.JSONDecodeError as exc:
                raise InvalidInputError(f"bad word JSON: {exc}") from exc
            if not isinstance(names, list) or not all(isinstance(n, str) for n in names):
                raise InvalidInputError("word JSON must be an array of generator names")
            return self.word_from_names(names)
        return self.word_from_names(text.split())

    def word_names(self, word: Word) -> tuple[str, ...]:
        return tuple(self.generator_names[i] for i in word)

    def to_json(self) -> dict:
        return {
            "generators": list(self.generator_names),
            "coxeter_matrix": [list(row) for row in self.matrix],
        }

    def __hash__(self) -> int:
        return hash((self.generator_names, self.matrix))


def validate_system(names: Sequence[str], matrix: Sequence[Sequence[int]]) -> CoxeterSystem:
    names = tuple(names)
    n = len(names)
    if n == 0:
        raise InvalidInputError("empty generator list")
    if len(set(names)) != n:
        raise InvalidInputError("generator names must be distinct")
    if len(matrix) != n or any(len(row) != n for row in matrix):
        raise InvalidInputError(f"Coxeter matrix must be {n}x{n}")
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            m = matrix[i][j]
            if not isinstance(m, int):
                raise InvalidInputError(f"matrix entry ({names[i]},{names[j]}) is not an integer")
            if i == j:
                if m != 1:
                    raise InvalidInputError(
                        f"diagonal entry ({names[i]},{names[j]}) must be 1, got {m}"
                    )
            else:
                if m != matrix[j][i]:
                    raise InvalidInputError(
                        f"matrix not symmetric at ({names[i]},{names[j]}): {m} vs {matrix[j][i]}"
                    )
                if m == 1 or m < 0:
                    raise InvalidInputError(
                        f"off-diagonal entry ({names[i]},{names[j]}) must be 0 (infinity) "
                        f"or an integer >= 2, got {m}"
                    )
            row.append(m)
        rows.append(tuple(row))
    matrix_t = tuple(rows)
    ring = build_ring(matrix_t)
    one = ring.from_rational(1)
    form = tuple(
        tuple(one if i == j else cos_entry(matrix_t[i][j], ring) for j in range(n))
        for i in range(n)
    )
    return CoxeterSystem(names, matrix_t, ring, form)


def system_from_json(data: dict) -> CoxeterSystem:
    try:
        names = data["generators"]
        matrix = data["coxeter_matrix"]
    except (KeyError, TypeError) as exc:
        raise InvalidInputError(
            'system JSON must have "generators" and "coxeter_matrix" fields'
        ) from exc
    return validate_system(names, matrix)


class GroupElement:
    """Exact matrix of a group element acting on V in the simple-root basis."""

    __slots__ = ("system", "rows", "cached_length", "_hash")

    def __init__(self, system: CoxeterSystem, rows: tuple[tuple[ExactScalar, ...], ...],
                 cached_length: int | None = None):
        self.system = system
        self.rows = rows
        self.cached_length = cached_length
        self._hash = hash(rows)

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroupElement):
            return NotImplemented
        return self.rows == other.rows

    def __repr__(self) -> str:
        return f"GroupElement(rank={self.system.rank}, hash={self._hash & 0xFFFF:04x})"

    def column(self, j: int) -> tuple[ExactScalar, ...]:
        """Image of the simple root alpha_j as a coordinate vector."""
        return tuple(row[j] for row in self.rows)

    def act(self, vector: Sequence[ExactScalar]) -> tuple[ExactScalar, ...]:
        n = self.system.rank
        if len(vector) != n:
            raise InvalidInputError("vector dimension does not match system rank")
        return tuple(
            sum((self.rows[i][j] * vector[j] for j in range(n)), self.system.ring.zero())
            for i in range(n)
        )

    def right_multiply(self, s: int) -> "GroupElement":
        """self * (generator s), via a rank-one column update."""
        n = self.system.rank
        form_s = self.system.form[s]
        two = 2
        coeffs = [two * form_s[j] for j in range(n)]
        rows = tuple(
            tuple(row[j] - coeffs[j] * row[s] for j in range(n))
            for row in self.rows
        )
        return GroupElement(self.system, rows)


def identity_element(system: CoxeterSystem) -> GroupElement:
    ring = system.ring
    one, zero = ring.one(), ring.zero()
    n = system.rank
    rows = tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n))
    return GroupElement(system, rows, cached_length=0)


def simple_reflection(system: CoxeterSystem, s: int) -> GroupElement:
    if not 0 <= s < system.rank:
        raise InvalidInputError(f"generator index {s} out of range")
    return identity_element(system).right_multiply(s)


def evaluate_word(system: CoxeterSystem, word: Word) -> GroupElement:
    element = identity_element(system)
    for s in word:
        if not 0 <= s < system.rank:
            raise InvalidInputError(f"generator index {s} out of range")
        element = element.right_multiply(s)
    return element


def act(element: GroupElement, vector: Sequence[ExactScalar]) -> tuple[ExactScalar, ...]:
    return element.act(vector)


def form_value(system: CoxeterSystem, v: Sequence[ExactScalar],
               w: Sequence[ExactScalar]) -> ExactScalar:
    """B(v, w) for coordinate vectors over the simple-root basis."""
    n = system.rank
    total = system.ring.zero()
    for i in range(n):
        vi = v[i]
        if vi.is_zero():
            continue
        for j in range(n):
            if not w[j].is_zero():
                total = total + vi * system.form[i][j] * w[j]
    return total
