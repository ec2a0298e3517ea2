"""Segment structures on Phi(w): lines, betweenness, endpoints, distances.

The structure feeding the deletion-length formula.  Betweenness is always
recomputed from exact cone tests; lines are deduplicated by member set,
which identifies them uniquely because two planes share at most one root.
"""

from __future__ import annotations

from dataclasses import dataclass

from .coxeter import CoxeterSystem
from .dihedral import Line, cone_between, line_through
from .errors import InvalidInputError
from .roots import InversionOfElement, Root, RootCache


@dataclass(frozen=True)
class SegmentStructure:
    system: CoxeterSystem
    points: tuple[Root, ...]  # canonically sorted
    lines: tuple[Line, ...]   # canonically sorted by member keys

    def lines_through(self, theta: Root) -> tuple[Line, ...]:
        return tuple(line for line in self.lines if theta in line.member_set)

    def full_lines(self) -> tuple[Line, ...]:
        return tuple(line for line in self.lines if line.kind == "full")

    def partial_lines(self) -> tuple[Line, ...]:
        return tuple(line for line in self.lines if line.kind == "partial")

    def to_json(self, names: dict[Root, str] | None = None) -> dict:
        def name(r: Root) -> str:
            return names[r] if names else ""

        data = {
            "points": [
                {"name": name(r), **r.to_json()} if names else r.to_json()
                for r in self.points
            ],
            "lines": [],
        }
        for line in self.lines:
            entry = line.to_json()
            if names:
                entry["member_names"] = [names[r] for r in line.members]
            data["lines"].append(entry)
        return data


def build_structure(phi_w: InversionOfElement,
                    cache: RootCache | None = None) -> SegmentStructure:
    """All lines of Phi(w) with at least two members, deduplicated."""
    roots = phi_w.sorted_roots
    seen_pairs: set[frozenset[Root]] = set()
    lines: list[Line] = []
    for i in range(len(roots)):
        for j in range(i + 1, len(roots)):
            pair = frozenset((roots[i], roots[j]))
            if pair in seen_pairs:
                continue
            line = line_through(phi_w, roots[i], roots[j], cache)
            lines.append(line)
            members = line.members
            for a in range(len(members)):
                for b in range(a + 1, len(members)):
                    seen_pairs.add(frozenset((members[a], members[b])))
    lines.sort(key=lambda line: tuple(r.sort_key() for r in line.members))
    return SegmentStructure(system=phi_w.system, points=roots, lines=tuple(lines))


def between(system: CoxeterSystem, lam: Root, mu: Root, nu: Root) -> bool:
    """Whether mu lies strictly in the positive cone of lam and nu.

    Requires three pairwise distinct positive roots; anything else is False.
    """
    if lam == mu or mu == nu or lam == nu:
        return False
    if not (lam.is_positive() and mu.is_positive() and nu.is_positive()):
        return False
    return cone_between(system, lam, mu, nu)


def endpoint_report(structure: SegmentStructure) -> dict[Root, bool]:
    """Point -> whether it is an endpoint of every line containing it."""
    report = {point: True for point in structure.points}
    for line in structure.lines:
        for interior in line.members[1:-1]:
            report[interior] = False
    return report


def theta_norm(theta: Root, line: Line) -> int:
    """Minimum distance of theta to the endpoints of the line; 0 off-line."""
    idx = line.index_of(theta)
    if idx is None:
        return 0
    return min(idx, len(line.members) - 1 - idx)


def distance(line: Line, alpha: Root, beta: Root) -> int:
    """Index distance of two member roots on the same line."""
    i, j = line.index_of(alpha), line.index_of(beta)
    if i is None or j is None:
        raise InvalidInputError("distance is defined only for members of the line")
    return abs(i - j)


def deletion_statistic(structure: SegmentStructure, theta: Root) -> int:
    """Sum over all lines of the minimum endpoint distance of theta."""
    return sum(theta_norm(theta, line) for line in structure.lines)


def to_dot(structure: SegmentStructure, names: dict[Root, str]) -> str:
    """Deterministic DOT rendering; partial lines arrow toward the canonical end."""
    out = ["graph segment_structure {"]
    for point in structure.points:
        label = f"{names[point]} ({', '.join(c.approx(4) for c in point.coords)})"
        out.append(f'  "{names[point]}" [label="{label}"];')
    for line in structure.lines:
        attrs = f'line="{line.kind}"'
        members = line.members
        if line.kind == "partial":
            # canonical end is members[0]; arrows point toward it
            for a, b in zip(members[1:], members):
                out.append(
                    f'  "{names[a]}" -- "{names[b]}" [{attrs}, dir=forward, arrowhead=normal];'
                )
        else:
            for a, b in zip(members, members[1:]):
                out.append(f'  "{names[a]}" -- "{names[b]}" [{attrs}];')
    out.append("}")
    return "\n".join(out) + "\n"
