"""The diagram group over ``<x,a | xxx = xx, ax = a>`` at base a.

Every (a,a)-diagram here splits into three layers: a chain of k cells
a -> ax opening the top, an x-only diagram acting one step right of the
leading a, and a chain of m cells ax -> a closing the bottom.  Reading the
x-layer in canonical order yields a word in the infinite generator family
x_0, x_1, x_2, ..., and `u_rewrite_3gen` turns that word into one over just
{x0, x1, x2} whose length stays below five times the cell count.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache

from .diagram import AtomicFactor, Diagram, DiagramError, random_site, replay_cells
from .groups import DiagramGroup, GroupElement
from .presentation import Presentation, UNIVERSAL_U
from .thompson import XWord, parse_xword, xword_str  # shared word grammar

X_PRESENTATION = Presentation(("x",), ((("x", "x", "x"), ("x", "x")),), base=("x",))

U_GROUP = DiagramGroup(UNIVERSAL_U)

_X_REL = 0  # (xxx, xx), same index in X_PRESENTATION and UNIVERSAL_U
_A_REL = 1  # (ax, a)


@dataclass(frozen=True)
class UDecomposition:
    """Three-layer form of an (a,a)-diagram.

    ``delta_prime`` is the middle x-only diagram over `X_PRESENTATION`,
    with k top letters and m bottom letters; it is None exactly when
    k = m = 0 (zero-width middle).
    """

    k: int
    m: int
    delta_prime: Diagram | None

    @property
    def delta1(self) -> Diagram:
        return Diagram(UNIVERSAL_U, ("a",), (AtomicFactor(0, _A_REL, -1),) * self.k)

    @property
    def delta2(self) -> Diagram:
        return Diagram(UNIVERSAL_U, ("a",) + ("x",) * self.m,
                       (AtomicFactor(0, _A_REL, 1),) * self.m)

    def reassemble(self) -> Diagram:
        chain = [AtomicFactor(0, _A_REL, -1)] * self.k
        if self.delta_prime is not None:
            chain += [AtomicFactor(f.offset + 1, _X_REL, f.direction)
                      for f in self.delta_prime.factors]
        chain += [AtomicFactor(0, _A_REL, 1)] * self.m
        return Diagram(UNIVERSAL_U, ("a",), chain)


def u_lift(xi: Diagram) -> Diagram:
    """Widen an x-only diagram into an (a,a)-diagram.

    k cells a -> ax open the top, the input acts shifted one step right,
    m cells ax -> a close the bottom; `u_decompose` recovers (k, m, xi).
    """
    if xi.presentation != X_PRESENTATION:
        raise DiagramError("lift input must be over the x-only presentation")
    k = len(xi.top_word)
    m = len(xi.bot_word)
    chain = [AtomicFactor(0, _A_REL, -1)] * k
    chain += [AtomicFactor(f.offset + 1, _X_REL, f.direction) for f in xi.factors]
    chain += [AtomicFactor(0, _A_REL, 1)] * m
    return Diagram(UNIVERSAL_U, ("a",), chain)


def u_decompose(delta: Diagram) -> UDecomposition:
    """Split an (a,a)-diagram into its three layers.

    Follows the chain of a -> ax cells down from the top edge and the
    chain of ax -> a cells up from the bottom edge; they must meet, with
    no a-cells left over.  Reduced (a,a)-diagrams always have this shape:
    an a-chain cell of one kind directly above one of the other kind is a
    dipole.
    """
    if delta.presentation != UNIVERSAL_U:
        raise DiagramError("expected a diagram over the x,a presentation")
    if delta.top_word != ("a",) or delta.bot_word != ("a",):
        raise DiagramError("expected an (a,a)-diagram")
    cx = delta.complex()
    cells = cx.cells
    by_top = {c.top_edges: j for j, c in enumerate(cells)}
    by_bot = {c.bot_edges: j for j, c in enumerate(cells)}

    e_cells = []
    e = cx.top_path[0]
    while (j := by_top.get((e,))) is not None \
            and cells[j].rel == _A_REL and cells[j].direction == -1:
        e_cells.append(j)
        e = cells[j].bot_edges[0]
    f_cells = []
    f = cx.bot_path[0]
    while (j := by_bot.get((f,))) is not None \
            and cells[j].rel == _A_REL and cells[j].direction == 1:
        f_cells.append(j)
        f = cells[j].top_edges[0]
    if e != f:
        raise DiagramError("a-cell chains do not meet: no three-layer form")
    k = len(e_cells)
    m = len(f_cells)
    if sum(1 for c in cells if c.rel == _A_REL) != k + m:
        raise DiagramError("a-cells outside the two chains: no three-layer form")

    x_cells = sorted(j for j, c in enumerate(cells) if c.rel == _X_REL)
    _, frontier = replay_cells(cells, e_cells, list(cx.top_path))
    mid_factors, frontier = replay_cells(cells, x_cells, frontier)
    _, end = replay_cells(cells, list(reversed(f_cells)), frontier)
    if end != list(cx.bot_path):
        raise DiagramError("layer replay did not reach the bottom path")

    if k == 0:
        return UDecomposition(0, 0, None)
    prime = Diagram(X_PRESENTATION, ("x",) * k,
                    tuple(AtomicFactor(f.offset - 1, _X_REL, f.direction)
                          for f in mid_factors))
    return UDecomposition(k, m, prime)


def u_extract_word(delta: Diagram) -> XWord:
    """Letters x_j^s read off the canonical order of the middle layer.

    A cell with q letters of padding to its right contributes x_q, signed
    opposite to the cell's direction (the positive generator widens xx to
    xxx).
    """
    dec = u_decompose(delta)
    if dec.delta_prime is None:
        return ()
    letters = []
    width = dec.k
    for p, _, d in dec.delta_prime.factors:
        if d == 1:
            letters.append((width - p - 3, -1))
            width -= 1
        else:
            letters.append((width - p - 2, 1))
            width += 1
    return tuple(letters)


@lru_cache(maxsize=None)
def u_generator(j: int) -> GroupElement:
    """x_j: the lifted single widening cell with j letters of right padding."""
    if j < 0:
        raise ValueError("generator index must be nonnegative")
    xi = Diagram(X_PRESENTATION, ("x",) * (j + 2), (AtomicFactor(0, _X_REL, -1),))
    return U_GROUP.element(u_lift(xi))


@lru_cache(maxsize=None)
def _generator_factors(j: int, sign: int):
    d = u_generator(j).diagram
    return (d if sign == 1 else ~d).factors


def u_word_to_element(letters) -> GroupElement:
    """Product of the generators named by ``letters``, reduced once."""
    chain = []
    for j, sign in letters:
        chain.extend(_generator_factors(j, sign))
    return U_GROUP.from_factors(chain)


def u_rewrite_3gen(letters) -> XWord:
    """Rewrite a word over the infinite family into one over {x0, x1, x2}.

    Each x_j with j >= 2 becomes x0^-(j-2) x2 x0^(j-2); the x0 runs of
    consecutive conjugators are merged (freely reduced), never the runs
    against the x1/x2 letters between them.
    """
    letters = tuple(letters)
    r = len(letters)
    if r == 0:
        return ()
    shifts = [max(j - 2, 0) for j, _ in letters]
    out: list[tuple[int, int]] = []

    def x0_run(exp: int) -> None:
        if exp:
            out.extend([(0, 1 if exp > 0 else -1)] * abs(exp))

    x0_run(-shifts[0])
    for i, (j, sign) in enumerate(letters):
        out.append((j if j < 2 else 2, sign))
        x0_run(shifts[i] - (shifts[i + 1] if i + 1 < r else 0))
    return tuple(out)


@dataclass(frozen=True)
class URewriteReport:
    """One diagram run through extraction and rewriting, with the exact
    quantities the length bound is made of."""

    n_cells: int
    k: int
    m: int
    letters: XWord     # word over the infinite family
    rewritten: XWord   # word over {x0, x1, x2}
    s_down: int        # total downward jump between consecutive indices
    s_up: int          # total upward jump between consecutive indices

    @property
    def length(self) -> int:
        return len(self.rewritten)

    @property
    def bound(self) -> int:
        return 5 * self.n_cells


def u_rewrite_report(delta: Diagram) -> URewriteReport:
    dec = u_decompose(delta)
    letters = u_extract_word(delta)
    rewritten = u_rewrite_3gen(letters)
    idx = [j for j, _ in letters]
    s_down = sum(max(a - b, 0) for a, b in zip(idx, idx[1:]))
    s_up = sum(max(b - a, 0) for a, b in zip(idx, idx[1:]))
    return URewriteReport(delta.cell_count, dec.k, dec.m, letters, rewritten,
                          s_down, s_up)


def random_u_element(rng: random.Random, min_cells: int = 1, max_cells: int = 60,
                     max_steps: int = 24) -> GroupElement:
    """A random reduced element with cell count in [min_cells, max_cells].

    Walks away from the base word by random rewriting steps (the word stays
    of the form a x^s), closes with s cells ax -> a, reduces, and resamples
    until the cell count lands in range.
    """
    while True:
        steps = rng.randrange(1, max_steps + 1)
        current = ["a"]
        down = []
        for _ in range(steps):
            f = random_site(UNIVERSAL_U, current, rng)
            consumed, produced = UNIVERSAL_U.sides(f.rel, f.direction)
            current[f.offset:f.offset + len(consumed)] = produced
            down.append(f)
        down += [AtomicFactor(0, _A_REL, 1)] * (len(current) - 1)
        g = U_GROUP.from_factors(down)
        if min_cells <= g.cell_count <= max_cells:
            return g
