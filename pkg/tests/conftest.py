from fractions import Fraction

import pytest

from coxlab import builtin_system
from coxlab.roots import Root


@pytest.fixture(scope="session")
def a3():
    return builtin_system("A3")


@pytest.fixture(scope="session")
def b2():
    return builtin_system("B2")


@pytest.fixture(scope="session")
def b3():
    return builtin_system("B3")


@pytest.fixture(scope="session")
def h3():
    return builtin_system("H3")


@pytest.fixture(scope="session")
def atilde2():
    return builtin_system("Atilde2")


def rational_root(system, coords) -> Root:
    """Root with integer/rational coordinates over the simple-root basis."""
    ring = system.ring
    return Root(tuple(ring.from_rational(Fraction(c)) for c in coords))


def b3_chart(system):
    """The six inversion-set roots of u s t s t u under their usual names.

    A = alpha_u, B = alpha_s, C = sqrt2.alpha_s + alpha_t + alpha_u,
    D = alpha_s + sqrt2(alpha_t + alpha_u), E = alpha_t + alpha_u,
    F = sqrt2.alpha_s + 2 alpha_t + alpha_u.
    """
    ring = system.ring
    zero, one, two = ring.zero(), ring.one(), ring.from_rational(2)
    sqrt2 = -(system.b(0, 1) + system.b(0, 1))  # 2 cos(pi/4)
    return {
        "A": Root((zero, zero, one)),
        "B": Root((one, zero, zero)),
        "C": Root((sqrt2, one, one)),
        "D": Root((one, sqrt2, sqrt2)),
        "E": Root((zero, one, one)),
        "F": Root((sqrt2, two, one)),
    }


def word_of(system, text):
    return system.parse_word(text)
