"""Chebyshev machinery and rank-2 (dihedral) plane analysis inside Phi(w).

A Line is the intersection of a dihedral positive system with an inversion
set Phi(w): a sorted run of coplanar roots whose endpoints carry certified
canonical-simple-root flags.  Canonical ends are detected by a single exact
reflection test, never by materializing the (possibly infinite) plane.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cmp_to_key

from .coxeter import CoxeterSystem
from .errors import InternalInvariantError, InvalidInputError
from .exact import ExactScalar
from .roots import InversionOfElement, Root, RootCache, reflect


def chebyshev_u(n: int, a: ExactScalar) -> ExactScalar:
    """U_n evaluated at a, for any integer n, via the recurrence from U_0, U_1."""
    ring = a.ring
    if n < 0:
        return -chebyshev_u(-n, a)
    prev, cur = ring.zero(), ring.one()  # U_0, U_1
    if n == 0:
        return prev
    two_a = a + a
    for _ in range(n - 1):
        prev, cur = cur, two_a * cur - prev
    return cur


def local_sequence(system: CoxeterSystem, gamma: Root, delta: Root,
                   lo: int, hi: int) -> tuple[Root, ...]:
    """Entries gamma_i of the gamma-sequence for lo <= i <= hi (inclusive).

    gamma_1 = gamma and the recurrences alternate reflections in gamma and
    delta; the delta-sequence is obtained by swapping the two arguments.
    """
    if gamma == delta or gamma == -delta:
        raise InvalidInputError("local sequence requires two independent roots")
    if lo > hi:
        return ()
    gammas: dict[int, Root] = {1: gamma}
    deltas: dict[int, Root] = {1: delta}
    i = 1
    while i < hi:  # forward: gamma_{i+1} = s_gamma(delta_i), delta_{i+1} = s_delta(gamma_i)
        gammas[i + 1] = reflect(system, deltas[i], gamma)
        deltas[i + 1] = reflect(system, gammas[i], delta)
        i += 1
    i = 1
    while i > lo:  # backward: gamma_i = s_delta(delta_{i+1}), delta_i = s_gamma(gamma_{i+1})
        gammas[i - 1] = reflect(system, deltas[i], delta)
        deltas[i - 1] = reflect(system, gammas[i], gamma)
        i -= 1
    return tuple(gammas[i] for i in range(lo, hi + 1))


def coplanar(system: CoxeterSystem, a: Root, b: Root, rho: Root) -> bool:
    """Whether rho lies in span{a, b}: all 3x3 minors of the stacked coords vanish."""
    n = system.rank
    av, bv, rv = a.coords, b.coords, rho.coords
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                det = (
                    av[i] * (bv[j] * rv[k] - bv[k] * rv[j])
                    - av[j] * (bv[i] * rv[k] - bv[k] * rv[i])
                    + av[k] * (bv[i] * rv[j] - bv[j] * rv[i])
                )
                if not det.is_zero():
                    return False
    return True


def _pivot_columns(a: Root, b: Root) -> tuple[int, int]:
    """Coordinate pair on which {a, b} projects to an invertible 2x2 matrix."""
    n = len(a.coords)
    for p in range(n):
        for q in range(p + 1, n):
            det = a.coords[p] * b.coords[q] - a.coords[q] * b.coords[p]
            if not det.is_zero():
                return p, q
    raise InternalInvariantError("dependent roots passed where a plane was expected")


def cone_between(system: CoxeterSystem, lam: Root, mu: Root, nu: Root) -> bool:
    """Whether mu = a*lam + b*nu with a, b > 0, decided by Cramer sign tests."""
    if lam == mu or mu == nu or lam == nu:
        return False
    if not coplanar(system, lam, nu, mu):
        return False
    p, q = _pivot_columns(lam, nu)
    det = lam.coords[p] * nu.coords[q] - lam.coords[q] * nu.coords[p]
    det_a = mu.coords[p] * nu.coords[q] - mu.coords[q] * nu.coords[p]
    det_b = lam.coords[p] * mu.coords[q] - lam.coords[q] * mu.coords[p]
    s = det.sign()
    return det_a.sign() == s and det_b.sign() == s


@dataclass(frozen=True)
class Line:
    """Roots of Phi(w) lying in one dihedral plane, in angular order."""

    basis: tuple[Root, Root]
    members: tuple[Root, ...]
    canonical_flags: tuple[bool, bool]
    kind: str  # "full" | "partial"

    def __len__(self) -> int:
        return len(self.members)

    @property
    def member_set(self) -> frozenset[Root]:
        return frozenset(self.members)

    def index_of(self, theta: Root) -> int | None:
        try:
            return self.members.index(theta)
        except ValueError:
            return None

    def to_json(self) -> dict:
        return {
            "members": [r.to_json() for r in self.members],
            "kind": self.kind,
            "canonical_ends": list(self.canonical_flags),
        }


def canonical_endpoint_test(system: CoxeterSystem, end: Root, neighbor: Root) -> bool:
    """Whether a sorted line endpoint is a canonical simple root of its plane.

    Reflecting the adjacent member across a canonical end stays positive;
    across the non-canonical end of a partial run it lands on a negative
    root.  Finite planes wrap around so both ends of a full run pass.
    """
    if end == neighbor:
        raise InvalidInputError("endpoint test needs two distinct roots")
    if not (end.is_positive() and neighbor.is_positive()):
        raise InvalidInputError("endpoint test needs positive roots")
    return reflect(system, neighbor, end).is_positive()


def _sort_members(system: CoxeterSystem, members: list[Root]) -> tuple[Root, ...]:
    """Angular order inside the plane's salient cone, deterministically oriented."""
    origin = min(members, key=Root.sort_key)
    other = next(r for r in members if r != origin)
    p, q = _pivot_columns(origin, other)

    def cross_sign(u: Root, v: Root) -> int:
        return (u.coords[p] * v.coords[q] - u.coords[q] * v.coords[p]).sign()

    ordered = sorted(members, key=cmp_to_key(lambda u, v: cross_sign(u, v)))
    if ordered[-1].sort_key() < ordered[0].sort_key():
        ordered.reverse()
    return tuple(ordered)


def line_through(phi_w: InversionOfElement, alpha: Root, beta: Root,
                 cache: RootCache | None = None) -> Line:
    system = phi_w.system
    if alpha == beta:
        raise InvalidInputError("line_through needs two distinct roots")
    if alpha not in phi_w.roots or beta not in phi_w.roots:
        raise InvalidInputError("line_through arguments must lie in the inversion set")
    members = [r for r in phi_w.sorted_roots if coplanar(system, alpha, beta, r)]
    ordered = _sort_members(system, members)
    flag_lo = canonical_endpoint_test(system, ordered[0], ordered[1])
    flag_hi = canonical_endpoint_test(system, ordered[-1], ordered[-2])
    if not (flag_lo or flag_hi):
        raise InternalInvariantError("line with no canonical end (arithmetic bug)")
    kind = "full" if (flag_lo and flag_hi) else "partial"
    if kind == "partial" and flag_hi:
        ordered = tuple(reversed(ordered))
        flag_lo, flag_hi = flag_hi, flag_lo
    return Line(
        basis=(alpha, beta),
        members=ordered,
        canonical_flags=(flag_lo, flag_hi),
        kind=kind,
    )
