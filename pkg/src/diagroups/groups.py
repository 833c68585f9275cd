"""Groups of reduced diagrams with fixed equal top and bottom word.

For a presentation with a chosen base word, the reduced (base, base)
diagrams form a group: stacking followed by dipole cancellation is the
product, the mirror image is the inverse, and the trivial diagram is the
identity.  `GroupElement` keeps its diagram reduced at all times, so
equality is plain code equality.

The distance between two elements is the cell count of the reduced
quotient; it is a left-invariant metric.  `cnd_form` evaluates the
associated quadratic form on zero-sum coefficient vectors, which the
cell-set embedding (see `embedding`) forces to be nonpositive.
"""

from __future__ import annotations

import random
from collections import deque
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .diagram import Diagram, DiagramError, random_site, reduced_from_chain
from .errors import ResourceCapError
from .presentation import Presentation, Word


class GroupElement:
    """A reduced (base, base) diagram, composable with ``*``, ``~``, ``**``."""

    __slots__ = ("group", "diagram")

    def __init__(self, group: "DiagramGroup", diagram: Diagram):
        if diagram.top_word != group.base or diagram.bot_word != group.base:
            raise DiagramError(
                "element diagram must start and end at the group's base word"
            )
        if not diagram.is_reduced():
            diagram = diagram.reduce()
        self.group = group
        self.diagram = diagram

    @classmethod
    def _wrap(cls, group, reduced_diagram) -> "GroupElement":
        self = object.__new__(cls)
        self.group = group
        self.diagram = reduced_diagram
        return self

    @property
    def code(self) -> str:
        return self.diagram.code

    @property
    def cell_count(self) -> int:
        return self.diagram.cell_count

    def __eq__(self, other):
        return (isinstance(other, GroupElement) and self.group == other.group
                and self.diagram.code == other.diagram.code)

    def __hash__(self):
        return hash(self.diagram.code)

    def __repr__(self):
        return f"<GroupElement {self.diagram.code}>"

    def __mul__(self, other):
        if not isinstance(other, GroupElement):
            return NotImplemented
        if self.group != other.group:
            raise DiagramError("elements of different diagram groups")
        d = reduced_from_chain(self.group.presentation, self.group.base,
                               self.diagram.factors + other.diagram.factors)
        return GroupElement._wrap(self.group, d)

    def __invert__(self):
        inv = ~self.diagram
        return GroupElement._wrap(self.group, inv if inv.is_reduced() else inv.reduce())

    def __pow__(self, n: int):
        if n == 0:
            return self.group.identity()
        base = self if n > 0 else ~self
        out = base
        for _ in range(abs(n) - 1):
            out = out * base
        return out

    def is_identity(self) -> bool:
        return self.cell_count == 0


class DiagramGroup:
    """The group of reduced diagrams over ``presentation`` at its base word."""

    __slots__ = ("presentation", "base")

    def __init__(self, presentation: Presentation, base: Word | None = None):
        base = tuple(base) if base is not None else presentation.base
        if not base:
            raise DiagramError("a diagram group needs a base word")
        self.presentation = presentation
        self.base = base

    def __eq__(self, other):
        return (isinstance(other, DiagramGroup)
                and self.presentation == other.presentation
                and self.base == other.base)

    def __hash__(self):
        return hash((self.presentation, self.base))

    def identity(self) -> GroupElement:
        return GroupElement(self, Diagram.trivial(self.presentation, self.base))

    def element(self, diagram: Diagram) -> GroupElement:
        return GroupElement(self, diagram)

    def from_factors(self, factors) -> GroupElement:
        d = reduced_from_chain(self.presentation, self.base, tuple(factors))
        if d.bot_word != self.base:
            raise DiagramError("factor chain does not return to the base word")
        return GroupElement._wrap(self, d)

    def random_element(self, n_steps: int, rng: random.Random) -> GroupElement:
        """Random spherical walk: ``n_steps`` rewriting steps away from the
        base word, mirrored back.  The reduced result can be shorter, or
        trivial, once dipoles cancel."""
        pres = self.presentation
        current = list(self.base)
        down = []
        for _ in range(n_steps):
            f = random_site(pres, current, rng)
            consumed, produced = pres.sides(f.rel, f.direction)
            current[f.offset:f.offset + len(consumed)] = produced
            down.append(f)
        up = [f._replace(direction=-f.direction) for f in reversed(down)]
        return self.from_factors(down + up)


def distance(g1: GroupElement, g2: GroupElement) -> int:
    """Cell count of the reduced ``~g1 * g2``; a left-invariant metric."""
    if g1.group != g2.group:
        raise DiagramError("elements of different diagram groups")
    return (~g1 * g2).cell_count


def cnd_form(elements: Sequence[GroupElement], coefficients: Sequence,
             dist: Callable[[GroupElement, GroupElement], int] = distance) -> Fraction:
    """The quadratic form sum_{i,j} c_i c_j d(g_i, g_j) over exact rationals.

    Requires the coefficients to sum to zero.  The cell-set embedding turns
    the value into -2 * ||sum_i c_i phi(g_i)||^2, so it is never positive.
    ``dist`` may be swapped for a cached distance function when the same
    elements appear in many evaluations.
    """
    if len(elements) != len(coefficients):
        raise ValueError("need one coefficient per element")
    cs = [Fraction(c) for c in coefficients]
    if sum(cs) != 0:
        raise ValueError("coefficients must sum to zero")
    total = Fraction(0)
    for i in range(len(elements)):
        for j in range(i + 1, len(elements)):
            total += 2 * cs[i] * cs[j] * dist(elements[i], elements[j])
    return total


def element_ball(group: DiagramGroup, generators: Sequence[GroupElement], radius: int,
                 max_elements: int | None = None):
    """Breadth-first ball of ``radius`` in the word metric of ``generators``.

    Yields ``(element, length)`` in breadth-first order starting from the
    identity.  Generators and their inverses are both used.  Raises
    `ResourceCapError` when ``max_elements`` would be exceeded.
    """
    steps = []
    seen_steps = set()
    for g in generators:
        for h in (g, ~g):
            if h.code not in seen_steps and not h.is_identity():
                seen_steps.add(h.code)
                steps.append(h)
    start = group.identity()
    seen = {start.code}
    queue = deque([(start, 0)])
    while queue:
        g, dist = queue.popleft()
        yield g, dist
        if dist == radius:
            continue
        for s in steps:
            n = g * s
            if n.code in seen:
                continue
            seen.add(n.code)
            if max_elements is not None and len(seen) > max_elements:
                raise ResourceCapError(
                    f"ball exceeded the cap of {max_elements} elements"
                )
            queue.append((n, dist + 1))


def word_length(g: GroupElement, generators: Sequence[GroupElement],
                max_radius: int = 32, max_elements: int | None = 2_000_000) -> int:
    """Word length of ``g`` by breadth-first search from the identity."""
    for h, dist in element_ball(g.group, generators, max_radius, max_elements):
        if h == g:
            return dist
    raise ResourceCapError(f"element not found within radius {max_radius}")
