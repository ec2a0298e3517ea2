"""Named built-in Coxeter systems, so the worked examples are one flag away."""

from __future__ import annotations

import re

from .coxeter import CoxeterSystem, validate_system
from .errors import InvalidInputError

_FIXED = {
    "A2": (("s", "t"), ((1, 3), (3, 1))),
    "B2": (("s", "t"), ((1, 4), (4, 1))),
    "A3": (("s", "t", "u"), ((1, 3, 2), (3, 1, 3), (2, 3, 1))),
    "B3": (("s", "t", "u"), ((1, 4, 2), (4, 1, 3), (2, 3, 1))),
    "H3": (("s", "t", "u"), ((1, 5, 2), (5, 1, 3), (2, 3, 1))),
    "Atilde2": (("s", "t", "u"), ((1, 3, 3), (3, 1, 3), (3, 3, 1))),
}

_I2_PATTERN = re.compile(r"^I2\((\d+)\)$")


def builtin_names() -> tuple[str, ...]:
    return tuple(_FIXED) + ("I2(m)",)


def builtin_system(name: str) -> CoxeterSystem:
    if name in _FIXED:
        names, matrix = _FIXED[name]
        return validate_system(names, matrix)
    match = _I2_PATTERN.match(name)
    if match:
        m = int(match.group(1))
        if m == 1 or m < 0:
            raise InvalidInputError(f"I2 parameter must be 0 (infinity) or >= 2, got {m}")
        return validate_system(("s", "t"), ((1, m), (m, 1)))
    raise InvalidInputError(
        f"unknown built-in system {name!r}; available: {', '.join(builtin_names())}"
    )
