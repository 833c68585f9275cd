"""Cell-set embedding of a diagram group into a Hilbert space.

Every cell of a reduced diagram gets an *address*: the canonical code of
the sub-diagram formed by the cell together with everything above it (its
ancestor closure).  Addresses are intrinsic — they do not depend on how
the diagram was built, and no two cells of one diagram share an address —
so a reduced diagram maps to the finite *set* of its cell addresses.

The map ``phi`` sends a group element to that set.  Its key property is
that for two elements the symmetric difference of their address sets has
exactly ``distance(g1, g2)`` members: the common addresses form the
greatest common prefix of the two diagrams, and the leftover cells of each
side survive in the reduced quotient.  That makes ``phi`` (viewed inside
the real Hilbert space with orthonormal basis indexed by all addresses) an
isometry up to the square: ``|phi(g1) ^ phi(g2)| == distance(g1, g2)``.

`gcd_decomposition` realizes the common part concretely: it returns the
prefix diagram and the two reduced tails.
"""

from __future__ import annotations

from typing import FrozenSet

from .diagram import Diagram, DiagramError, encode, replay_cells
from .groups import GroupElement, distance


class EmbeddingError(ValueError):
    """Raised when address bookkeeping meets an impossible configuration."""


def _ancestor_closure(cx, j: int) -> list[int]:
    """Ids of cell ``j`` and every cell lying (transitively) above it."""
    producer = {}
    for t, cell in enumerate(cx.cells):
        for e in cell.bot_edges:
            producer[e] = t
    todo = [j]
    seen = {j}
    while todo:
        t = todo.pop()
        for e in cx.cells[t].top_edges:
            p = producer.get(e)
            if p is not None and p not in seen:
                seen.add(p)
                todo.append(p)
    return sorted(seen)


def cell_address(diagram: Diagram, j: int) -> str:
    """Address of cell ``j``: the code of its ancestor-closure sub-diagram."""
    cx = diagram.complex()
    if not 0 <= j < len(cx.cells):
        raise EmbeddingError(f"no cell with id {j}")
    subset = _ancestor_closure(cx, j)
    factors, _ = replay_cells(cx.cells, subset, list(cx.top_path))
    return encode(diagram.top_word, factors)


def cell_addresses(diagram: Diagram) -> dict[int, str]:
    """Addresses of all cells.  Cached on the diagram's complex is not
    worth it here; callers that need speed keep the dict themselves."""
    cx = diagram.complex()
    producer = {}
    for t, cell in enumerate(cx.cells):
        for e in cell.bot_edges:
            producer[e] = t
    out = {}
    for j in range(len(cx.cells)):
        todo = [j]
        seen = {j}
        while todo:
            t = todo.pop()
            for e in cx.cells[t].top_edges:
                p = producer.get(e)
                if p is not None and p not in seen:
                    seen.add(p)
                    todo.append(p)
        factors, _ = replay_cells(cx.cells, sorted(seen), list(cx.top_path))
        out[j] = encode(diagram.top_word, factors)
    if len(set(out.values())) != len(out):
        raise EmbeddingError("two cells of one diagram produced the same address")
    return out


def phi(g: GroupElement) -> FrozenSet[str]:
    """The element's point in the Hilbert space: its set of cell addresses."""
    return frozenset(cell_addresses(g.diagram).values())


def sq_dist(g1: GroupElement, g2: GroupElement) -> int:
    """Squared Hilbert distance, i.e. the size of the symmetric difference
    of the two address sets.  Always equals ``distance(g1, g2)``."""
    return len(phi(g1) ^ phi(g2))


def gcd_prefix(g1: GroupElement, g2: GroupElement) -> Diagram:
    """The largest common prefix diagram of ``g1`` and ``g2``."""
    return gcd_decomposition(g1, g2)[0]


def gcd_decomposition(g1: GroupElement, g2: GroupElement):
    """Split both elements over their common part.

    Returns ``(psi, tail1, tail2)`` with ``psi * tail_i == g_i.diagram``
    and ``distance(g1, g2) == tail1.cell_count + tail2.cell_count``; the
    quotient ``~tail1 * tail2`` has no dipoles.
    """
    if g1.group != g2.group:
        raise DiagramError("elements of different diagram groups")
    pres = g1.group.presentation
    a1 = cell_addresses(g1.diagram)
    a2 = cell_addresses(g2.diagram)
    common = set(a1.values()) & set(a2.values())

    def split(diagram, addr):
        cx = diagram.complex()
        keep = sorted(j for j, a in addr.items() if a in common)
        rest = sorted(j for j in range(len(cx.cells)) if addr[j] not in common)
        pre_factors, frontier = replay_cells(cx.cells, keep, list(cx.top_path))
        tail_factors, end = replay_cells(cx.cells, rest, frontier)
        if end != list(cx.bot_path):
            raise EmbeddingError("prefix/tail replay did not reach the bottom path")
        mid = tuple(cx.edge_labels[e] for e in frontier)
        psi = Diagram(pres, diagram.top_word, pre_factors)
        tail = Diagram(pres, mid, tail_factors)
        return psi, tail

    psi1, tail1 = split(g1.diagram, a1)
    psi2, tail2 = split(g2.diagram, a2)
    if psi1.code != psi2.code:
        raise EmbeddingError("common addresses produced different prefixes")
    return psi1, tail1, tail2
