"""Exact arithmetic in the real cyclotomic field Q(2cos(pi/N)).

Every scalar produced from a Coxeter matrix (bilinear-form entries, root
coordinates, Chebyshev values) lives in the single field generated by
c0 = 2cos(pi/N), where N is the lcm of the finite off-diagonal matrix
entries.  Elements are stored in polynomial normal form modulo the minimal
polynomial of c0, so equality and the zero test are syntactic.  Sign
determination falls back to certified interval arithmetic with adaptive
precision; it terminates on every nonzero element because the zero test is
complete.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Sequence

from mpmath.ctx_iv import MPIntervalContext

from .errors import InternalInvariantError, InvalidInputError

DEFAULT_PRECISION_START = 64
_PRECISION_ENV = "COXLAB_PRECISION_START"


def _precision_start() -> int:
    raw = os.environ.get(_PRECISION_ENV, "")
    if raw:
        try:
            value = int(raw)
            if value >= 2:
                return value
        except ValueError:
            pass
    return DEFAULT_PRECISION_START


def _poly_divmod(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    """Exact division of integer polynomials; requires an exact quotient caller-side."""
    num = list(num)
    deg_d = len(den) - 1
    lead = den[-1]
    quot = [0] * max(len(num) - deg_d, 1)
    while len(num) - 1 >= deg_d and any(num):
        shift = len(num) - 1 - deg_d
        coeff, rem = divmod(num[-1], lead)
        if rem:
            raise InternalInvariantError("non-exact polynomial division")
        quot[shift] = coeff
        for i, d in enumerate(den):
            num[shift + i] -= coeff * d
        while len(num) > 1 and num[-1] == 0:
            num.pop()
    return quot, num


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Integer coefficients of the n-th cyclotomic polynomial, constant term first."""
    if n == 1:
        return (-1, 1)
    poly = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            poly, _ = _poly_divmod(poly, list(cyclotomic_poly(d)))
    return tuple(poly)


def _fold_palindromic(poly: Sequence[int]) -> tuple[int, ...]:
    """Rewrite a palindromic even-degree polynomial p(x) as g(x + 1/x).

    Uses the basis q_k(y) = x^k + x^-k with q_0 = 2, q_1 = y and
    q_{k+1} = y*q_k - q_{k-1}.
    """
    deg = len(poly) - 1
    if deg % 2 != 0 or list(poly) != list(reversed(poly)):
        raise InternalInvariantError("cyclotomic polynomial not palindromic")
    half = deg // 2
    # q[k] as coefficient lists in y
    q: list[list[int]] = [[2], [0, 1]]
    for _ in range(2, half + 1):
        prev, last = q[-2], q[-1]
        nxt = [0] + last  # y * q_k
        for i, c in enumerate(prev):
            nxt[i] -= c
        q.append(nxt)
    out = [0] * (half + 1)
    out[0] += poly[half]
    for k in range(1, half + 1):
        for i, c in enumerate(q[k]):
            out[i] += poly[half - k] * c
    if out[-1] != 1:
        raise InternalInvariantError("folded polynomial is not monic")
    return tuple(out)


@lru_cache(maxsize=None)
def minimal_poly_2cos(n: int) -> tuple[int, ...]:
    """Minimal polynomial of 2cos(pi/n) over Q, constant term first, monic."""
    if n < 1:
        raise InvalidInputError(f"conductor must be positive, got {n}")
    if n == 1:
        return (2, 1)  # 2cos(pi) = -2, poly x + 2
    return _fold_palindromic(cyclotomic_poly(2 * n))


@dataclass(frozen=True)
class RingSpec:
    """The field Q(2cos(pi/N)) in which all scalars of one system live."""

    conductor: int
    defining_poly: tuple[int, ...]  # monic, constant term first

    def __post_init__(self) -> None:
        # reduction table: x^(degree + i) mod defining_poly as Fraction rows
        deg = self.degree
        table = []
        if deg >= 1:
            row = [Fraction(-c) for c in self.defining_poly[:-1]]
            table.append(tuple(row))
            for _ in range(deg - 2):
                shifted = [Fraction(0)] + list(table[-1][:-1])
                top = table[-1][-1]
                for i in range(deg):
                    shifted[i] += top * table[0][i]
                table.append(tuple(shifted))
        object.__setattr__(self, "_reduction", tuple(table))

    @property
    def degree(self) -> int:
        return len(self.defining_poly) - 1

    def zero(self) -> "ExactScalar":
        return ExactScalar(self, (Fraction(0),) * self.degree)

    def one(self) -> "ExactScalar":
        return self.from_rational(1)

    def from_rational(self, value) -> "ExactScalar":
        coeffs = [Fraction(value)] + [Fraction(0)] * (self.degree - 1)
        return ExactScalar(self, tuple(coeffs))

    def generator(self) -> "ExactScalar":
        """The designated root c0 = 2cos(pi/N) as a field element."""
        if self.degree == 1:
            # c0 is rational: the root of the linear defining polynomial
            return self.from_rational(Fraction(-self.defining_poly[0], self.defining_poly[1]))
        coeffs = [Fraction(0)] * self.degree
        coeffs[1] = Fraction(1)
        return ExactScalar(self, tuple(coeffs))

    def generator_enclosure(self, prec: int):
        """Fresh certified interval around 2cos(pi/N) at `prec` bits."""
        ctx = MPIntervalContext()
        ctx.prec = prec
        return ctx, 2 * ctx.cos(ctx.pi / self.conductor)

    def __hash__(self) -> int:
        return hash((self.conductor, self.defining_poly))


def build_ring(coxeter_matrix: Sequence[Sequence[int]]) -> RingSpec:
    """Ring for a validated Coxeter matrix; infinity entries are encoded as 0."""
    n = 2
    rank = len(coxeter_matrix)
    for i in range(rank):
        for j in range(i + 1, rank):
            m = coxeter_matrix[i][j]
            if m >= 2:
                n = n * m // gcd(n, m)
    return RingSpec(conductor=n, defining_poly=minimal_poly_2cos(n))


class ExactScalar:
    """An element of Q(2cos(pi/N)) in canonical polynomial normal form."""

    __slots__ = ("ring", "coeffs", "_hash")

    def __init__(self, ring: RingSpec, coeffs: tuple[Fraction, ...]):
        self.ring = ring
        self.coeffs = coeffs
        self._hash = hash(coeffs)

    # -- basic protocol ------------------------------------------------

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other) -> bool:
        if isinstance(other, ExactScalar):
            return self.coeffs == other.coeffs and self.ring.conductor == other.ring.conductor
        if isinstance(other, (int, Fraction)):
            return self == self.ring.from_rational(other)
        return NotImplemented

    def __repr__(self) -> str:
        return f"ExactScalar({list(map(str, self.coeffs))} @ N={self.ring.conductor})"

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    # -- field operations ----------------------------------------------

    def _coerce(self, other) -> "ExactScalar":
        if isinstance(other, ExactScalar):
            if other.ring.conductor != self.ring.conductor:
                raise InvalidInputError("scalars from different rings")
            return other
        return self.ring.from_rational(other)

    def __add__(self, other) -> "ExactScalar":
        other = self._coerce(other)
        return ExactScalar(self.ring, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __sub__(self, other) -> "ExactScalar":
        other = self._coerce(other)
        return ExactScalar(self.ring, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __rsub__(self, other) -> "ExactScalar":
        return self._coerce(other) - self

    def __neg__(self) -> "ExactScalar":
        return ExactScalar(self.ring, tuple(-a for a in self.coeffs))

    def __mul__(self, other) -> "ExactScalar":
        other = self._coerce(other)
        deg = self.ring.degree
        if deg == 1:
            return ExactScalar(self.ring, (self.coeffs[0] * other.coeffs[0],))
        prod = [Fraction(0)] * (2 * deg - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        prod[i + j] += a * b
        reduction = self.ring._reduction
        out = prod[:deg]
        for i in range(deg, 2 * deg - 1):
            c = prod[i]
            if c:
                row = reduction[i - deg]
                for k in range(deg):
                    out[k] += c * row[k]
        return ExactScalar(self.ring, tuple(out))

    __rmul__ = __mul__

    def inverse(self) -> "ExactScalar":
        if self.is_zero():
            raise ZeroDivisionError("division by zero scalar")
        # extended Euclid in Q[x] against the defining polynomial
        g = [Fraction(c) for c in self.ring.defining_poly]
        a = list(self.coeffs)
        while len(a) > 1 and a[-1] == 0:
            a.pop()
        r0, r1 = g, a
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while len(r1) > 1 or r1[0] != 0:
            q, rem = _qpoly_divmod(r0, r1)
            r0, r1 = r1, rem
            s0, s1 = s1, _qpoly_sub(s0, _qpoly_mul(q, s1))
        if len(r0) != 1:
            raise InternalInvariantError("defining polynomial is not irreducible")
        unit = r0[0]
        inv = [c / unit for c in s0]
        inv += [Fraction(0)] * (self.ring.degree - len(inv))
        return ExactScalar(self.ring, tuple(inv[: self.ring.degree]))

    def __truediv__(self, other) -> "ExactScalar":
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other) -> "ExactScalar":
        return self._coerce(other) * self.inverse()

    # -- sign determination ----------------------------------------------

    def sign(self, precision_start: int | None = None) -> int:
        """-1, 0 or +1; certified by the syntactic zero test plus intervals."""
        if self.is_zero():
            return 0
        if self.is_rational():
            c = self.coeffs[0]
            return -1 if c < 0 else 1
        prec = precision_start or _precision_start()
        while True:
            ctx, x = self.ring.generator_enclosure(prec)
            acc = ctx.mpf(0)
            for c in reversed(self.coeffs):
                acc = acc * x + ctx.mpf(c.numerator) / ctx.mpf(c.denominator)
            if acc.a > 0:
                return 1
            if acc.b < 0:
                return -1
            prec *= 2

    def __lt__(self, other) -> bool:
        return (self - self._coerce(other)).sign() < 0

    def __le__(self, other) -> bool:
        return (self - self._coerce(other)).sign() <= 0

    def __gt__(self, other) -> bool:
        return (self - self._coerce(other)).sign() > 0

    def __ge__(self, other) -> bool:
        return (self - self._coerce(other)).sign() >= 0

    # -- presentation ----------------------------------------------------

    def approx(self, digits: int = 12) -> str:
        """Decimal string to `digits` significant digits, deterministic."""
        import mpmath

        with mpmath.workprec(max(4 * digits, 192)):
            x = 2 * mpmath.cos(mpmath.pi / self.ring.conductor)
            acc = mpmath.mpf(0)
            for c in reversed(self.coeffs):
                acc = acc * x + mpmath.mpf(c.numerator) / mpmath.mpf(c.denominator)
            return mpmath.nstr(acc, digits, strip_zeros=False)

    def to_json(self) -> dict:
        return {
            "poly": [f"{c.numerator}/{c.denominator}" for c in self.coeffs],
            "approx": self.approx(),
        }


def scalar_from_json(ring: RingSpec, data: dict) -> ExactScalar:
    try:
        coeffs = tuple(Fraction(part) for part in data["poly"])
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInputError(f"bad scalar serialization: {data!r}") from exc
    if len(coeffs) != ring.degree:
        raise InvalidInputError("scalar coefficient vector has wrong length")
    return ExactScalar(ring, coeffs)


# -- helpers for inverse() -------------------------------------------------


def _qpoly_trim(p: list[Fraction]) -> list[Fraction]:
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def _qpoly_sub(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * max(len(a), len(b))
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] -= c
    return _qpoly_trim(out)


def _qpoly_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _qpoly_trim(out)


def _qpoly_divmod(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    a = list(a)
    deg_b = len(b) - 1
    inv_lead = 1 / b[-1]
    quot = [Fraction(0)] * max(len(a) - deg_b, 1)
    while len(a) - 1 >= deg_b and (len(a) > 1 or a[0] != 0):
        shift = len(a) - 1 - deg_b
        c = a[-1] * inv_lead
        quot[shift] = c
        for i, d in enumerate(b):
            a[shift + i] -= c * d
        a = _qpoly_trim(a)
        if len(a) - 1 < deg_b:
            break
    return _qpoly_trim(quot), _qpoly_trim(a)


# -- half-trace (2cos multiple-angle) values --------------------------------


def halftrace(k: int, ring: RingSpec) -> ExactScalar:
    """p_k(c0) where p_k(2cos t) = 2cos(k t); p_0 = 2, p_1 = c0."""
    k = abs(k)
    prev = ring.from_rational(2)
    if k == 0:
        return prev
    cur = ring.generator()
    for _ in range(k - 1):
        prev, cur = cur, ring.generator() * cur - prev
    return cur


def cos_entry(m: int, ring: RingSpec) -> ExactScalar:
    """-cos(pi/m) exactly; m = 0 encodes infinity and yields exactly -1."""
    if m == 0:
        return ring.from_rational(-1)
    if m < 2:
        raise InvalidInputError(f"Coxeter matrix entry {m} out of range")
    if ring.conductor % m != 0:
        raise InternalInvariantError(f"entry {m} does not divide conductor {ring.conductor}")
    half = halftrace(ring.conductor // m, ring)
    return ExactScalar(ring, tuple(-c / 2 for c in half.coeffs))
