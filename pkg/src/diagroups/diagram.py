"""Plane rewriting diagrams over a semigroup presentation.

A diagram records, cell by cell, how a top word is rewritten into a bottom
word.  Each cell applies one oriented rewriting pair of the presentation to
a subword; an :class:`AtomicFactor` stores the offset of that subword, the
pair index and the direction.  A chain of factors therefore determines a
plane cell complex: a planar digraph whose edges are letters and whose
2-cells are the rewriting steps.

Two factor chains describe the same plane complex exactly when they differ
by swapping steps that touch disjoint subwords.  To get a canonical
representative we always store the *rightmost decomposition*: repeatedly
remove, among the cells whose whole top path lies on the current frontier,
the one whose top path ends furthest to the right.  This greedy order is a
geometric invariant of the complex, so two diagrams are equal (isotopic) if
and only if their canonical factor chains, hence their :attr:`Diagram.code`
strings, coincide.

A *dipole* is a pair of cells that apply the same pair in opposite
directions and share their entire middle path.  Cancelling a dipole deletes
both cells and glues the surviving boundary paths.  Cancellation is
confluent: however dipoles are chosen, the fully cancelled diagram is the
same, which the test suite checks by randomizing removal orders.
"""

from __future__ import annotations

import random
from typing import Iterable, NamedTuple, Sequence

from .presentation import Presentation, Word, word, word_str


class DiagramError(ValueError):
    """Invalid factor chains, mismatched compositions or malformed files."""


class AtomicFactor(NamedTuple):
    offset: int     # letters to the left of the rewritten subword
    rel: int        # index into the presentation's rewriting pairs
    direction: int  # +1 rewrites u -> v, -1 rewrites v -> u


class Cell(NamedTuple):
    rel: int
    direction: int
    top_edges: tuple  # edge ids consumed, left to right
    bot_edges: tuple  # edge ids produced, left to right


class PlaneComplex:
    """Cell complex of a diagram, produced by replaying its factors.

    Edges are numbered in creation order and the first ``len(top_word)``
    ids form the top path, so a path coincidence test is an exact edge-id
    comparison.  Instances are derived data; treat them as read only.
    """

    __slots__ = ("edge_labels", "edge_src", "edge_dst", "top_path", "bot_path",
                 "cells", "n_vertices")

    def __init__(self, edge_labels, edge_src, edge_dst, top_path, bot_path, cells, n_vertices):
        self.edge_labels = edge_labels
        self.edge_src = edge_src
        self.edge_dst = edge_dst
        self.top_path = top_path
        self.bot_path = bot_path
        self.cells = cells
        self.n_vertices = n_vertices


def build_complex(pres: Presentation, top_word: Word, factors) -> PlaneComplex:
    """Replay ``factors`` from ``top_word``, validating every step."""
    labels = list(top_word)
    src = list(range(len(top_word)))
    dst = list(range(1, len(top_word) + 1))
    n_vertices = len(top_word) + 1
    frontier = list(range(len(top_word)))
    cells = []
    relations = pres.relations
    n_rel = len(relations)
    for index, (offset, rel, direction) in enumerate(factors):
        if not 0 <= rel < n_rel:
            raise DiagramError(f"factor {index}: no rewriting pair with index {rel}")
        if direction == 1:
            consumed, produced = relations[rel]
        elif direction == -1:
            produced, consumed = relations[rel]
        else:
            raise DiagramError(f"factor {index}: direction must be +1 or -1, got {direction}")
        c = len(consumed)
        if not 0 <= offset <= len(frontier) - c:
            raise DiagramError(
                f"factor {index}: offset {offset} does not fit a length-{c} subword "
                f"of a length-{len(frontier)} word"
            )
        seg = frontier[offset:offset + c]
        if tuple(labels[e] for e in seg) != consumed:
            here = word_str(tuple(labels[e] for e in frontier))
            raise DiagramError(
                f"factor {index}: {word_str(consumed)!r} does not occur at offset "
                f"{offset} of {here!r}"
            )
        v0 = src[seg[0]]
        v1 = dst[seg[-1]]
        first = len(labels)
        left = v0
        last = len(produced) - 1
        for i, letter in enumerate(produced):
            labels.append(letter)
            src.append(left)
            right = v1 if i == last else n_vertices
            if i != last:
                n_vertices += 1
            dst.append(right)
            left = right
        new = tuple(range(first, first + len(produced)))
        cells.append(Cell(rel, direction, tuple(seg), new))
        frontier[offset:offset + c] = new
    return PlaneComplex(labels, src, dst, tuple(range(len(top_word))), frontier,
                        cells, n_vertices)


def rightmost_factors(top_path, cells) -> list[AtomicFactor]:
    """Canonical factor chain of a complex.

    Greedily removes top cells, rightmost first.  A cell is a top cell once
    all of its top edges lie on the frontier; planarity then forces them to
    be consecutive and ordered, so positions come straight from a frontier
    index map.
    """
    consumer = {}
    for j, cell in enumerate(cells):
        for e in cell.top_edges:
            consumer[e] = j
    need = [len(cell.top_edges) for cell in cells]
    have = [0] * len(cells)
    frontier = list(top_path)
    pos: dict[int, int] = {}
    ready: set[int] = set()
    for i, e in enumerate(frontier):
        pos[e] = i
        j = consumer.get(e)
        if j is not None:
            have[j] += 1
            if have[j] == need[j]:
                ready.add(j)
    out = []
    while ready:
        j = max(ready, key=lambda t: pos[cells[t].top_edges[-1]])
        ready.remove(j)
        cell = cells[j]
        top = cell.top_edges
        p = pos[top[0]]
        out.append(AtomicFactor(p, cell.rel, cell.direction))
        frontier[p:p + len(top)] = cell.bot_edges
        for i in range(p, len(frontier)):
            pos[frontier[i]] = i
        for e in cell.bot_edges:
            t = consumer.get(e)
            if t is not None:
                have[t] += 1
                if have[t] == need[t]:
                    ready.add(t)
    if len(out) != len(cells):
        raise DiagramError("decomposition stalled: cell complex is not a diagram")
    return out


def replay_cells(cells, subset: Iterable[int], frontier: list[int]):
    """Apply the cells in ``subset`` (ascending ids) on ``frontier``.

    Returns the recorded factors and the final frontier.  Fails if some
    cell's top path is not fully and contiguously on the frontier when its
    turn comes, i.e. if the subset is not closed under "lies above".
    """
    frontier = list(frontier)
    pos = {e: i for i, e in enumerate(frontier)}
    out = []
    for j in subset:
        cell = cells[j]
        top = cell.top_edges
        p = pos.get(top[0])
        if p is None or frontier[p:p + len(top)] != list(top):
            raise DiagramError("cell subset is not closed under the above-relation")
        out.append(AtomicFactor(p, cell.rel, cell.direction))
        frontier[p:p + len(top)] = cell.bot_edges
        for i in range(p, len(frontier)):
            pos[frontier[i]] = i
    return out, frontier


def dipole_pairs(relations, cells) -> list[tuple[int, int]]:
    """All dipoles, as (upper cell id, lower cell id) pairs.

    The shared-path test is tuple equality of edge ids; the label test
    compares the upper cell's consumed word with the lower cell's produced
    word, which is what gluing the survivors requires.
    """
    by_top = {}
    for j, cell in enumerate(cells):
        by_top[cell.top_edges] = j
    pairs = []
    for i, cell in enumerate(cells):
        j = by_top.get(cell.bot_edges)
        if j is None:
            continue
        u, v = relations[cell.rel]
        upper_consumed = u if cell.direction == 1 else v
        other = cells[j]
        u2, v2 = relations[other.rel]
        lower_produced = v2 if other.direction == 1 else u2
        if upper_consumed == lower_produced:
            pairs.append((i, j))
    return pairs


def _cancel_dipoles(relations, cells, bot_path, rng: random.Random | None):
    """Cancel dipoles until none remain; order is deterministic or drawn
    from ``rng``.  Gluing renames the lower cell's produced edges to the
    upper cell's consumed edges everywhere they are still referenced."""
    cells = list(cells)
    bot_path = list(bot_path)
    while True:
        pairs = dipole_pairs(relations, cells)
        if not pairs:
            return cells, bot_path
        i, j = pairs[0] if rng is None else pairs[rng.randrange(len(pairs))]
        upper = cells[i]
        lower = cells[j]
        rename = dict(zip(lower.bot_edges, upper.top_edges))
        survivors = []
        for t, cell in enumerate(cells):
            if t == i or t == j:
                continue
            if any(e in rename for e in cell.top_edges):
                cell = cell._replace(top_edges=tuple(rename.get(e, e) for e in cell.top_edges))
            survivors.append(cell)
        cells = survivors
        bot_path = [rename.get(e, e) for e in bot_path]


def encode(top_word: Word, factors) -> str:
    return word_str(top_word) + "|" + ";".join(f"{o},{r},{d}" for o, r, d in factors)


def decode(code: str) -> tuple[Word, tuple[AtomicFactor, ...]]:
    top_text, sep, rest = code.partition("|")
    if not sep:
        raise DiagramError(f"bad diagram code {code!r}")
    factors = []
    if rest:
        for chunk in rest.split(";"):
            o, r, d = chunk.split(",")
            factors.append(AtomicFactor(int(o), int(r), int(d)))
    return word(top_text), tuple(factors)


class Diagram:
    """An immutable diagram, stored as its canonical factor chain.

    Any valid chain may be passed in; the constructor canonicalizes.  The
    operators mirror the three compositions: ``*`` stacks vertically
    (bottom word must equal the next top word), ``+`` places side by side,
    ``~`` is the top-bottom mirror image.
    """

    __slots__ = ("presentation", "top_word", "factors", "bot_word", "_cx", "_code")

    def __init__(self, presentation: Presentation, top_word: Sequence[str], factors=()):
        top_word = tuple(top_word)
        if not top_word:
            raise DiagramError("top word must be nonempty")
        known = set(presentation.letters)
        for letter in top_word:
            if letter not in known:
                raise DiagramError(f"unknown letter {letter!r} in top word")
        factors = tuple(AtomicFactor(*f) for f in factors)
        cx = build_complex(presentation, top_word, factors)
        canonical = tuple(rightmost_factors(cx.top_path, cx.cells))
        self.presentation = presentation
        self.top_word = top_word
        self.factors = canonical
        self.bot_word = tuple(cx.edge_labels[e] for e in cx.bot_path)
        self._cx = cx if canonical == factors else None
        self._code = None

    @classmethod
    def _trusted(cls, presentation, top_word, canonical_factors, bot_word) -> "Diagram":
        """Wrap an already-canonical chain without re-deriving it."""
        self = object.__new__(cls)
        self.presentation = presentation
        self.top_word = top_word
        self.factors = canonical_factors
        self.bot_word = bot_word
        self._cx = None
        self._code = None
        return self

    @classmethod
    def trivial(cls, presentation: Presentation, w: Sequence[str]) -> "Diagram":
        return cls(presentation, w, ())

    @classmethod
    def atomic(cls, presentation: Presentation, top_word: Sequence[str], factor) -> "Diagram":
        return cls(presentation, top_word, (factor,))

    @classmethod
    def from_factors(cls, presentation, top_word, factors) -> "Diagram":
        return cls(presentation, top_word, factors)

    @classmethod
    def from_code(cls, presentation: Presentation, code: str) -> "Diagram":
        top_word, factors = decode(code)
        return cls(presentation, top_word, factors)

    def complex(self) -> PlaneComplex:
        """The derived cell complex (cached; cell ids = factor positions)."""
        if self._cx is None:
            self._cx = build_complex(self.presentation, self.top_word, self.factors)
        return self._cx

    @property
    def cell_count(self) -> int:
        return len(self.factors)

    @property
    def code(self) -> str:
        if self._code is None:
            self._code = encode(self.top_word, self.factors)
        return self._code

    def __eq__(self, other):
        return (isinstance(other, Diagram)
                and self.presentation == other.presentation
                and self.code == other.code)

    def __hash__(self):
        return hash(self.code)

    def __repr__(self):
        return (f"<Diagram {word_str(self.top_word)} => {word_str(self.bot_word)}, "
                f"{self.cell_count} cells>")

    def _check_same_presentation(self, other):
        if not isinstance(other, Diagram):
            return NotImplemented
        if self.presentation != other.presentation:
            raise DiagramError("diagrams are over different presentations")
        return other

    def __mul__(self, other):
        other = self._check_same_presentation(other)
        if other is NotImplemented:
            return NotImplemented
        if self.bot_word != other.top_word:
            raise DiagramError(
                f"cannot stack: bottom word {word_str(self.bot_word)!r} differs from "
                f"top word {word_str(other.top_word)!r}"
            )
        return Diagram(self.presentation, self.top_word, self.factors + other.factors)

    def __add__(self, other):
        other = self._check_same_presentation(other)
        if other is NotImplemented:
            return NotImplemented
        shift = len(self.bot_word)
        moved = tuple(AtomicFactor(f.offset + shift, f.rel, f.direction)
                      for f in other.factors)
        return Diagram(self.presentation, self.top_word + other.top_word,
                       self.factors + moved)

    def __invert__(self):
        rev = tuple(AtomicFactor(f.offset, f.rel, -f.direction)
                    for f in reversed(self.factors))
        return Diagram(self.presentation, self.bot_word, rev)

    def find_dipoles(self) -> list[tuple[int, int]]:
        """Dipoles of the canonical complex as cell-id pairs."""
        return dipole_pairs(self.presentation.relations, self.complex().cells)

    def is_reduced(self) -> bool:
        return not self.find_dipoles()

    def reduce(self, rng: random.Random | None = None) -> "Diagram":
        """Fully cancelled form of this diagram.

        With ``rng`` the dipole picked at each step is randomized, which is
        only useful for exercising confluence; the result is the same.
        """
        return reduced_from_chain(self.presentation, self.top_word, self.factors, rng)

    def to_text(self) -> str:
        """Serialize: the top word, then one ``offset rel direction`` line
        per canonical factor."""
        lines = [word_str(self.top_word)]
        lines += [f"{f.offset} {f.rel} {f.direction}" for f in self.factors]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, presentation: Presentation, text: str) -> "Diagram":
        rows = [ln for ln in (raw.strip() for raw in text.splitlines())
                if ln and not ln.startswith("#")]
        if not rows:
            raise DiagramError("empty diagram file")
        top = word(rows[0])
        factors = []
        for lineno, row in enumerate(rows[1:], start=2):
            parts = row.split()
            if len(parts) != 3:
                raise DiagramError(f"line {lineno}: expected 'offset rel direction'")
            try:
                factors.append(AtomicFactor(int(parts[0]), int(parts[1]), int(parts[2])))
            except ValueError as exc:
                raise DiagramError(f"line {lineno}: {exc}") from None
        return cls(presentation, top, factors)

    def to_dot(self) -> str:
        """Graphviz rendering: vertices, labelled edges, one cluster per
        cell holding the interior vertices of its bottom path."""
        cx = self.complex()
        lines = ["digraph diagram {", "  rankdir=LR;", '  node [shape=point];']
        for v in range(cx.n_vertices):
            lines.append(f"  v{v};")
        for e in range(len(cx.edge_labels)):
            lines.append(
                f'  v{cx.edge_src[e]} -> v{cx.edge_dst[e]} [label="{cx.edge_labels[e]}"];'
            )
        for j, cell in enumerate(cx.cells):
            consumed, produced = self.presentation.sides(cell.rel, cell.direction)
            label = f"cell {j}: {word_str(consumed)} -> {word_str(produced)}"
            inner = [f"v{cx.edge_src[e]};" for e in cell.bot_edges[1:]]
            lines.append(f'  subgraph cluster_{j} {{ label="{label}"; ' + " ".join(inner) + " }")
        lines.append("}")
        return "\n".join(lines) + "\n"


def reduced_from_chain(pres: Presentation, top_word, factors,
                       rng: random.Random | None = None) -> Diagram:
    """Build, cancel all dipoles, and wrap the canonical result.

    This is the one write path every reduced diagram goes through: the
    product engine feeds it concatenated chains directly so intermediate
    diagrams are never materialized.
    """
    cx = build_complex(pres, tuple(top_word), factors)
    cells, bot_path = _cancel_dipoles(pres.relations, cx.cells, cx.bot_path, rng)
    canonical = tuple(rightmost_factors(cx.top_path, cells))
    bot_word = tuple(cx.edge_labels[e] for e in bot_path)
    return Diagram._trusted(pres, tuple(top_word), canonical, bot_word)


def applicable_sites(pres: Presentation, current: Sequence[str]) -> list[AtomicFactor]:
    """Every factor applicable to ``current``, in scan order."""
    out = []
    n = len(current)
    for r, (u, v) in enumerate(pres.relations):
        for side, direction in ((u, 1), (v, -1)):
            c = len(side)
            for p in range(n - c + 1):
                if tuple(current[p:p + c]) == side:
                    out.append(AtomicFactor(p, r, direction))
    return out


def random_site(pres: Presentation, current: Sequence[str], rng: random.Random) -> AtomicFactor:
    """Draw an applicable factor for ``current``.

    Tries uniformly random (pair, direction, offset) triples with rejection
    and falls back to enumerating every site, so some applicable factor is
    always returned if one exists.
    """
    n_rel = len(pres.relations)
    n = len(current)
    for _ in range(64):
        r = rng.randrange(n_rel)
        direction = 1 if rng.random() < 0.5 else -1
        side = pres.sides(r, direction)[0]
        c = len(side)
        if c > n:
            continue
        p = rng.randrange(n - c + 1)
        if tuple(current[p:p + c]) == side:
            return AtomicFactor(p, r, direction)
    sites = applicable_sites(pres, current)
    if not sites:
        raise DiagramError(f"no rewriting step applies to {word_str(tuple(current))!r}")
    return sites[rng.randrange(len(sites))]


def random_diagram(pres: Presentation, start: Sequence[str], n_cells: int,
                   rng: random.Random) -> Diagram:
    """A diagram obtained by ``n_cells`` random rewriting steps from ``start``."""
    current = list(start)
    factors = []
    for _ in range(n_cells):
        f = random_site(pres, current, rng)
        consumed, produced = pres.sides(f.rel, f.direction)
        current[f.offset:f.offset + len(consumed)] = produced
        factors.append(f)
    return Diagram(pres, tuple(start), factors)
