"""Z wr Z as a diagram group over a five-relation presentation.

Over ``W = <a,b,b1,b2,c | ab=a, bc=c, b=b1, b1=b2, b2=b>`` with base ac,
the reduced (ac,ac)-diagrams form a group isomorphic to the restricted
wreath product Z wr Z.  The dictionary, fixed here once and validated by
round trips:

* An integer v is a (b,b)-diagram: the three-step renaming cycle
  b -> b1 -> b2 -> b raised to the v-th power, 3|v| cells, always reduced.
* A wreath element (d, phi) opens a window of b-edges between chains of
  a-side cells (a -> ab) and c-side cells (c -> bc), hangs one integer
  diagram per window slot, and closes the window with the mirror chains,
  one a-side pair wider at the bottom than at the top when d = 0.  The
  imbalance of the two c-side chains equals d.
* Window slots are indexed from the bottom a-side chain: with p bottom
  a-cells the leftmost slot is p-1, decreasing rightwards; the slot j
  carries the lamp value at position -j.  (The sign flip makes the
  assignment a homomorphism for the product convention of `wreath`.)
"""

from __future__ import annotations

import random

from .diagram import AtomicFactor, Diagram, DiagramError
from .groups import DiagramGroup, GroupElement
from .presentation import CYCLIC_Z, WREATH_W
from .wreath import WreathElement, _norm_lamps

ZWRZ_GROUP = DiagramGroup(WREATH_W)

_AB = 0  # (ab, a)
_BC = 1  # (bc, c)
_RENAME = (2, 3, 4)  # (b, b1), (b1, b2), (b2, b)


def _cycle_factors(value: int, at: int, first_rel: int) -> list[AtomicFactor]:
    """The renaming cycle to the given power, acting at a fixed offset."""
    r0, r1, r2 = first_rel, first_rel + 1, first_rel + 2
    out = []
    if value >= 0:
        for _ in range(value):
            out += [AtomicFactor(at, r0, 1), AtomicFactor(at, r1, 1),
                    AtomicFactor(at, r2, 1)]
    else:
        for _ in range(-value):
            out += [AtomicFactor(at, r2, -1), AtomicFactor(at, r1, -1),
                    AtomicFactor(at, r0, -1)]
    return out


def z_power_diagram(value: int) -> Diagram:
    """An integer as a reduced (b,b)-diagram over the three-letter cycle
    presentation; 3|value| cells."""
    return Diagram(CYCLIC_Z, ("b",), _cycle_factors(value, 0, 0))


def z_power_value(d: Diagram) -> int:
    """Signed count of first-relation cells; inverts `z_power_diagram`."""
    return sum(f.direction for f in d.factors if f.rel == 0)


def zwrz_to_diagram(e: WreathElement) -> GroupElement:
    """The (ac,ac)-diagram of a wreath element with integer positions."""
    d = e.shift
    values = dict(e.lamps)
    negated = [-p for p in values]
    k = max([0, d] + negated)
    m = -min([0, d] + negated)
    top_a = k + 1 - d
    top_c = m + d
    chain = [AtomicFactor(0, _AB, -1)] * top_a
    chain += [AtomicFactor(top_a + 1 + i, _BC, -1) for i in range(top_c)]
    for slot in range(k + m + 1):
        chain += _cycle_factors(values.get(slot - k, 0), 1 + slot, _RENAME[0])
    chain += [AtomicFactor(0, _AB, 1)] * (k + 1)
    chain += [AtomicFactor(m - j, _BC, 1) for j in range(m)]
    return ZWRZ_GROUP.element(Diagram(WREATH_W, ("a", "c"), chain))


def diagram_to_zwrz(g: GroupElement) -> WreathElement:
    """Read a wreath element back off a reduced (ac,ac)-diagram.

    Peels the four boundary chains, checks their cell counts balance,
    walks the renaming chain below each window b-edge for its value, and
    places values by window slot.  Inverse of `zwrz_to_diagram`.
    """
    dia = g.diagram
    if dia.presentation != WREATH_W:
        raise DiagramError("expected a diagram over the five-relation presentation")
    if dia.top_word != ("a", "c") or dia.bot_word != ("a", "c"):
        raise DiagramError("expected an (ac,ac)-diagram")
    if dia.cell_count == 0:
        return WreathElement(0, ())
    cx = dia.complex()
    cells = cx.cells
    by_top = {c.top_edges: j for j, c in enumerate(cells)}
    by_bot = {c.bot_edges: j for j, c in enumerate(cells)}

    a_side_bs = []
    e = cx.top_path[0]
    while (j := by_top.get((e,))) is not None \
            and cells[j].rel == _AB and cells[j].direction == -1:
        a_side_bs.append(cells[j].bot_edges[1])
        e = cells[j].bot_edges[0]
    c_side_bs = []
    e = cx.top_path[1]
    while (j := by_top.get((e,))) is not None \
            and cells[j].rel == _BC and cells[j].direction == -1:
        c_side_bs.append(cells[j].bot_edges[0])
        e = cells[j].bot_edges[1]
    p = 0
    f = cx.bot_path[0]
    while (j := by_bot.get((f,))) is not None \
            and cells[j].rel == _AB and cells[j].direction == 1:
        f = cells[j].top_edges[0]
        p += 1
    q = 0
    f = cx.bot_path[-1]
    while (j := by_bot.get((f,))) is not None \
            and cells[j].rel == _BC and cells[j].direction == 1:
        f = cells[j].top_edges[1]
        q += 1

    s, t = len(a_side_bs), len(c_side_bs)
    if p - s != t - q:
        raise DiagramError("boundary chains break the shift balance")
    d = p - s
    if sum(1 for c in cells if c.rel == _AB) != s + p \
            or sum(1 for c in cells if c.rel == _BC) != t + q:
        raise DiagramError("cells outside the boundary chains")
    window = list(reversed(a_side_bs)) + c_side_bs
    if len(window) != p + q:
        raise DiagramError("window width does not match the bottom chains")

    leftmost_slot = p - 1
    lamps = []
    walked = 0
    for i, b_edge in enumerate(window):
        value = 0
        e = b_edge
        while (j := by_top.get((e,))) is not None and cells[j].rel in _RENAME:
            if cells[j].rel == _RENAME[0]:
                value += cells[j].direction
            e = cells[j].bot_edges[0]
            walked += 1
        if value:
            lamps.append((-(leftmost_slot - i), value))
    if walked != sum(1 for c in cells if c.rel in _RENAME):
        raise DiagramError("renaming cells outside the window chains")
    return WreathElement(d, _norm_lamps(lamps))


def random_zwrz_element(rng: random.Random, max_shift: int = 4,
                        max_positions: int = 4, max_value: int = 3) -> WreathElement:
    """A small random wreath element for randomized suites."""
    d = rng.randrange(-max_shift, max_shift + 1)
    lamps = []
    for _ in range(rng.randrange(0, max_positions + 1)):
        pos = rng.randrange(-max_shift - 1, max_shift + 2)
        val = rng.randrange(-max_value, max_value + 1)
        lamps.append((pos, val))
    return WreathElement(d, _norm_lamps(lamps))


def propb_rows(radius: int, max_elements: int | None = None):
    """(element, BFS length, walk-formula length, image cell count) for the
    whole ball of the given radius."""
    from .wreath import Z_ORACLE, parr_length, wreath_oracle
    rows = []
    for e, bfs_len in wreath_oracle(Z_ORACLE).ball_with_lengths(radius, max_elements):
        rows.append((e, bfs_len, parr_length(Z_ORACLE, e),
                     zwrz_to_diagram(e).cell_count))
    return rows
