"""Thompson's group F as the diagram group over ``<x | xx = x>`` at base x.

Generators, word/element conversion, a BFS word-length oracle, and the
commuting skew-cube families with their exact cell counts: level n gives
2**n pairwise commuting elements of 2n+4 cells each, and every signed
product of the whole family has exactly 3*2**(n+1) - 2 cells.
"""

from __future__ import annotations

import re
from functools import lru_cache
from typing import Iterable, NamedTuple, Sequence

from .diagram import Diagram
from .errors import ResourceCapError
from .groups import DiagramGroup, GroupElement, element_ball
from .presentation import THOMPSON_F

F_GROUP = DiagramGroup(THOMPSON_F)

XWord = tuple[tuple[int, int], ...]  # letters (generator index, sign)


def pi_diagram() -> Diagram:
    """The one-cell diagram splitting x into xx."""
    return Diagram.atomic(THOMPSON_F, ("x",), (0, 0, -1))


@lru_cache(maxsize=None)
def f_generator(i: int) -> GroupElement:
    """The generator x_i.

    x0 is the classical 4-cell diagram; x1 conjugates a shifted copy of it
    under one split; higher generators come from x_n = x0^-(n-1) x1 x0^(n-1).
    """
    if i < 0:
        raise ValueError("generator index must be nonnegative")
    pi = pi_diagram()
    e = Diagram.trivial(THOMPSON_F, ("x",))
    if i == 0:
        return F_GROUP.element(pi * (e + pi) * ~(pi + e) * ~pi)
    if i == 1:
        return F_GROUP.element(pi * (e + f_generator(0).diagram) * ~pi)
    x0 = f_generator(0)
    return (x0 ** -(i - 1)) * f_generator(1) * (x0 ** (i - 1))


@lru_cache(maxsize=None)
def _generator_factors(i: int, sign: int):
    d = f_generator(i).diagram
    return (d if sign == 1 else ~d).factors


_TOKEN = re.compile(r"x(\d+)(?:\^(-?\d+))?\Z")


def parse_xword(text: str) -> XWord:
    """Parse words like ``"x0 x1^-1 x2^3"`` into (index, sign) letters.

    ``"1"`` (or an empty string) is the empty word; a power ``x2^3``
    expands into three letters.
    """
    letters = []
    for token in text.split():
        if token == "1":
            continue
        m = _TOKEN.match(token)
        if not m:
            raise ValueError(f"bad generator token {token!r}")
        index = int(m.group(1))
        exp = int(m.group(2)) if m.group(2) else 1
        if exp == 0:
            continue
        sign = 1 if exp > 0 else -1
        letters.extend((index, sign) for _ in range(abs(exp)))
    return tuple(letters)


def xword_str(letters: Iterable[tuple[int, int]]) -> str:
    """Render (index, sign) letters, collapsing runs into powers."""
    letters = tuple(letters)
    if not letters:
        return "1"
    parts = []
    i = 0
    while i < len(letters):
        index, sign = letters[i]
        j = i
        while j < len(letters) and letters[j] == (index, sign):
            j += 1
        exp = sign * (j - i)
        parts.append(f"x{index}" if exp == 1 else f"x{index}^{exp}")
        i = j
    return " ".join(parts)


def word_to_element(letters: Iterable[tuple[int, int]]) -> GroupElement:
    """Product of the generators named by ``letters``, reduced once."""
    chain = []
    for index, sign in letters:
        chain.extend(_generator_factors(index, sign))
    return F_GROUP.from_factors(chain)


def bfs_length(g: GroupElement, generators: Sequence[GroupElement] | None = None,
               max_radius: int = 12, max_elements: int | None = None) -> int | None:
    """Word length of ``g`` by breadth-first search; None if out of reach."""
    if generators is None:
        generators = (f_generator(0), f_generator(1))
    for h, dist in element_ball(g.group, generators, max_radius, max_elements):
        if h == g:
            return dist
    return None


def ball_rows(radius: int, generators: Sequence[GroupElement] | None = None,
              max_elements: int | None = None) -> list[tuple[str, int, int]]:
    """(code, word length, cell count) per ball element, BFS order."""
    if generators is None:
        generators = (f_generator(0), f_generator(1))
    return [(g.code, dist, g.cell_count)
            for g, dist in element_ball(F_GROUP, generators, radius, max_elements)]


def gamma_diagram(n: int) -> Diagram:
    """Iterated splitting: one split, then glue two copies of the previous
    stage below it; 2**(n+1) - 1 cells, taking x to x**(2**(n+1))."""
    if n < 0:
        raise ValueError("stage must be nonnegative")
    g = pi_diagram()
    for _ in range(n):
        g = pi_diagram() * (g + g)
    return g


def gamma_for_level(n: int) -> Diagram:
    """The splitting tree paired with the level-n cube family: 2**n - 1
    cells, with the trivial diagram at level 0."""
    if n == 0:
        return Diagram.trivial(THOMPSON_F, ("x",))
    return gamma_diagram(n - 1)


class SkewFamily(NamedTuple):
    n: int
    members: tuple[GroupElement, ...]


def skew_family(n: int, max_members: int | None = None) -> SkewFamily:
    """2**n commuting elements with 2n+4 cells each.

    Level 0 is [x0]; each next level wraps every member D into the two
    conjugates split-(pad+D)-merge and split-(D+pad)-merge.
    """
    if n < 0:
        raise ValueError("level must be nonnegative")
    if max_members is not None and 2 ** n > max_members:
        raise ResourceCapError(f"family of 2^{n} members exceeds the cap {max_members}")
    pi = pi_diagram()
    e = Diagram.trivial(THOMPSON_F, ("x",))
    diagrams = [f_generator(0).diagram]
    for _ in range(n):
        diagrams = [d for old in diagrams
                    for d in (pi * (e + old) * ~pi, pi * (old + e) * ~pi)]
    return SkewFamily(n, tuple(F_GROUP.element(d) for d in diagrams))


def signed_product(family: SkewFamily | Sequence[GroupElement],
                   signs: Sequence[int]) -> GroupElement:
    """The product of all members raised to the given +-1 powers."""
    members = family.members if isinstance(family, SkewFamily) else tuple(family)
    if len(signs) != len(members):
        raise ValueError("need one sign per family member")
    chain = []
    for g, s in zip(members, signs):
        if s == 1:
            chain.extend(g.diagram.factors)
        elif s == -1:
            chain.extend((~g.diagram).factors)
        else:
            raise ValueError("signs must be +1 or -1")
    return F_GROUP.from_factors(chain)
