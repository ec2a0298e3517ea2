"""Roots as exact coordinate vectors, root sequences, and inversion sets.

The positive system is never materialized; positivity is a predicate on
exact coordinates, so everything here works for infinite groups.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .coxeter import CoxeterSystem, GroupElement, Word, evaluate_word, form_value
from .errors import InternalInvariantError, InvalidInputError, NotReducedError
from .exact import ExactScalar, scalar_from_json


class Root:
    """A root, stored as exact coordinates over the simple-root basis."""

    __slots__ = ("coords", "_hash", "_sign")

    def __init__(self, coords: tuple[ExactScalar, ...], _sign: int | None = None):
        self.coords = coords
        self._hash = hash(coords)
        self._sign = _sign

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other) -> bool:
        if not isinstance(other, Root):
            return NotImplemented
        return self.coords == other.coords

    def __repr__(self) -> str:
        return "Root(" + ", ".join(c.approx(4) for c in self.coords) + ")"

    def sign(self) -> int:
        """+1 for a positive root, -1 for a negative root."""
        if self._sign is None:
            signs = [c.sign() for c in self.coords]
            if all(s >= 0 for s in signs) and any(s > 0 for s in signs):
                self._sign = 1
            elif all(s <= 0 for s in signs) and any(s < 0 for s in signs):
                self._sign = -1
            else:
                raise InternalInvariantError(
                    "sign-incoherent root produced (arithmetic bug)"
                )
        return self._sign

    def is_positive(self) -> bool:
        return self.sign() > 0

    def is_negative(self) -> bool:
        return self.sign() < 0

    def __neg__(self) -> "Root":
        flipped = None if self._sign is None else -self._sign
        return Root(tuple(-c for c in self.coords), flipped)

    def sort_key(self) -> tuple:
        return tuple(c.coeffs for c in self.coords)

    def to_json(self) -> dict:
        return {"coords": [c.to_json() for c in self.coords]}


def root_from_json(system: CoxeterSystem, data: dict) -> Root:
    """Deserialize and validate a root: sign-coherent with unit B-norm."""
    try:
        coords = tuple(scalar_from_json(system.ring, entry) for entry in data["coords"])
    except (KeyError, TypeError) as exc:
        raise InvalidInputError(f"bad root serialization: {data!r}") from exc
    if len(coords) != system.rank:
        raise InvalidInputError("root coordinate vector has wrong length")
    root = Root(coords)
    try:
        root.sign()
    except InternalInvariantError:
        raise InvalidInputError("vector is not sign-coherent, so not a root") from None
    if not (form_value(system, coords, coords) - system.ring.one()).is_zero():
        raise InvalidInputError("vector does not have unit B-norm, so not a root")
    return root


def simple_root(system: CoxeterSystem, s: int) -> Root:
    ring = system.ring
    coords = tuple(
        ring.one() if j == s else ring.zero() for j in range(system.rank)
    )
    return Root(coords, _sign=1)


def root_b(system: CoxeterSystem, a: Root, b: Root) -> ExactScalar:
    return form_value(system, a.coords, b.coords)


def reflect(system: CoxeterSystem, lam: Root, alpha: Root) -> Root:
    """s_alpha(lam) = lam - 2 B(lam, alpha) alpha."""
    c = root_b(system, lam, alpha)
    if c.is_zero():
        return lam
    two_c = c + c
    coords = tuple(l - two_c * a for l, a in zip(lam.coords, alpha.coords))
    out = Root(coords)
    out.sign()  # enforce sign coherence on every root produced
    return out


class RootCache:
    """Interns roots and memoizes simple-generator reflections and B-values.

    Owned by whoever runs an enumeration; systems themselves stay immutable.
    """

    def __init__(self, system: CoxeterSystem):
        self.system = system
        self.simple = tuple(simple_root(system, s) for s in range(system.rank))
        self._interned: dict[Root, Root] = {r: r for r in self.simple}
        self._reflect: dict[tuple[int, Root], Root] = {}
        self._b: dict[tuple[Root, Root], ExactScalar] = {}

    def intern(self, root: Root) -> Root:
        found = self._interned.get(root)
        if found is None:
            self._interned[root] = root
            return root
        return found

    def reflect_simple(self, s: int, root: Root) -> Root:
        key = (s, root)
        found = self._reflect.get(key)
        if found is None:
            found = self.intern(reflect(self.system, root, self.simple[s]))
            self._reflect[key] = found
        return found

    def b_value(self, a: Root, b: Root) -> ExactScalar:
        key = (a, b)
        found = self._b.get(key)
        if found is None:
            found = root_b(self.system, a, b)
            self._b[key] = found
            self._b[(b, a)] = found
        return found

    def orthogonal(self, a: Root, b: Root) -> bool:
        return self.b_value(a, b).is_zero()


def root_sequence(system: CoxeterSystem, word: Word,
                  cache: RootCache | None = None) -> tuple[Root, ...]:
    """The sequence theta_k = s_n ... s_{k+1}(alpha_{s_k}); word need not be reduced."""
    cache = cache or RootCache(system)
    n = len(word)
    out: list[Root] = [None] * n  # type: ignore[list-item]
    for k in range(n - 1, -1, -1):
        v = cache.simple[word[k]]
        for i in range(k + 1, n):
            v = cache.reflect_simple(word[i], v)
        out[k] = v
    return tuple(out)


def length_and_reducedness(system: CoxeterSystem, word: Word,
                           cache: RootCache | None = None) -> tuple[int, bool]:
    """Length of the represented element and whether the word is reduced."""
    seq = root_sequence(system, word, cache)
    d = sum(1 for theta in seq if theta.is_negative())
    return len(word) - 2 * d, d == 0


@dataclass(frozen=True)
class InversionOfElement:
    system: CoxeterSystem
    roots: frozenset[Root]
    sorted_roots: tuple[Root, ...]  # canonical order for deterministic output
    owner: GroupElement

    def __len__(self) -> int:
        return len(self.roots)


def inversion_set(system: CoxeterSystem, word: Word,
                  cache: RootCache | None = None) -> InversionOfElement:
    cache = cache or RootCache(system)
    seq = root_sequence(system, word, cache)
    if any(theta.is_negative() for theta in seq):
        raise NotReducedError("reduced expression required")
    roots = frozenset(seq)
    if len(roots) != len(seq):
        raise InternalInvariantError("repeated root in a reduced root sequence")
    return InversionOfElement(
        system=system,
        roots=roots,
        sorted_roots=tuple(sorted(roots, key=Root.sort_key)),
        owner=evaluate_word(system, word),
    )


def delete_generator(system: CoxeterSystem, word: Word, j: int,
                     cache: RootCache | None = None) -> tuple[Word, tuple[Root, ...]]:
    """Delete the j-th letter (1-based) from a reduced word.

    Returns the shorter word together with the predicted root sequence
    s_{theta_j}[theta_1 .. theta_{j-1}] followed by theta_{j+1} ...
    """
    if not 1 <= j <= len(word):
        raise InvalidInputError(f"deletion index {j} out of range 1..{len(word)}")
    cache = cache or RootCache(system)
    seq = root_sequence(system, word, cache)
    if any(theta.is_negative() for theta in seq):
        raise NotReducedError("reduced expression required")
    pivot = seq[j - 1]
    predicted = tuple(
        cache.intern(reflect(system, theta, pivot)) for theta in seq[: j - 1]
    ) + seq[j:]
    shorter = word[: j - 1] + word[j:]
    return shorter, predicted


def element_from_biconvex(system: CoxeterSystem, roots: Iterable[Root],
                          cache: RootCache | None = None) -> Word:
    """Reduced word whose inversion set equals the given finite biconvex set.

    Peels a simple root (lowest generator index on ties), reflects the rest,
    and recurses; a failed peel or a non-positive image certifies that the
    input is not biconvex.
    """
    cache = cache or RootCache(system)
    remaining = {cache.intern(r) for r in roots}
    for r in remaining:
        if not r.is_positive():
            raise InvalidInputError("biconvex input must consist of positive roots")
    target = frozenset(remaining)
    suffix: list[int] = []
    while remaining:
        for s in range(system.rank):
            if cache.simple[s] in remaining:
                break
        else:
            raise InvalidInputError("not biconvex: no simple root available to peel")
        remaining.discard(cache.simple[s])
        peeled = set()
        for r in remaining:
            image = cache.reflect_simple(s, r)
            if not image.is_positive():
                raise InvalidInputError("not biconvex: peeled image left the positive system")
            peeled.add(image)
        remaining = peeled
        suffix.append(s)
    word = tuple(reversed(suffix))
    check = root_sequence(system, word, cache)
    if frozenset(check) != target or len(check) != len(target):
        raise InvalidInputError("not biconvex: reconstruction does not close")
    return word
