"""Alphabets, words and semigroup rewriting presentations.

Words are tuples of letter identifiers, so multi-character letters such as
``b1`` are ordinary values.  A presentation couples an ordered alphabet with
an ordered list of rewriting pairs ``(u, v)`` of nonempty words, plus an
optional base word.  Pairs are oriented: at most one of ``(u, v)`` and
``(v, u)`` may be declared, so "apply pair ``r`` forwards" and "apply pair
``r`` backwards" name distinct, unambiguous moves.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

Word = tuple[str, ...]

_IDENTIFIER = re.compile(r"[A-Za-z0-9_]+\Z")


class PresentationError(ValueError):
    """Malformed presentation text or inconsistent relation data."""

    def __init__(self, message: str, line: int | None = None):
        super().__init__(f"line {line}: {message}" if line is not None else message)
        self.line = line


def word(text: str) -> Word:
    """Split a space-separated word into a letter tuple."""
    return tuple(text.split())


def word_str(w: Word) -> str:
    return " ".join(w)


def _check_letters(letters, where: str, known: set[str], line: int | None = None) -> None:
    for letter in letters:
        if letter not in known:
            raise PresentationError(f"unknown letter {letter!r} in {where}", line)


@dataclass(frozen=True)
class Presentation:
    """An alphabet, oriented rewriting pairs, and an optional base word."""

    letters: tuple[str, ...]
    relations: tuple[tuple[Word, Word], ...]
    base: Word | None = None

    def __post_init__(self):
        known: set[str] = set()
        for letter in self.letters:
            if not _IDENTIFIER.match(letter):
                raise PresentationError(f"bad letter identifier {letter!r}")
            if letter in known:
                raise PresentationError(f"duplicate letter {letter!r}")
            known.add(letter)
        if not known:
            raise PresentationError("alphabet is empty")
        pairs: set[tuple[Word, Word]] = set()
        for u, v in self.relations:
            if not u or not v:
                raise PresentationError("relation sides must be nonempty")
            _check_letters(u + v, "relation", known)
            if u == v:
                raise PresentationError(
                    f"relation {word_str(u)} = {word_str(v)} has equal sides, "
                    "so it would coincide with its own reverse"
                )
            if (v, u) in pairs:
                raise PresentationError(
                    f"relation {word_str(u)} = {word_str(v)} reverses an earlier pair"
                )
            if (u, v) in pairs:
                raise PresentationError(f"duplicate relation {word_str(u)} = {word_str(v)}")
            pairs.add((u, v))
        if self.base is not None:
            if not self.base:
                raise PresentationError("base word must be nonempty")
            _check_letters(self.base, "base word", known)

    def sides(self, rel: int, direction: int) -> tuple[Word, Word]:
        """Return ``(consumed, produced)`` for applying pair ``rel``.

        ``direction`` +1 rewrites u into v, -1 rewrites v into u.
        """
        if direction not in (1, -1):
            raise ValueError(f"direction must be +1 or -1, got {direction}")
        u, v = self.relations[rel]
        return (u, v) if direction == 1 else (v, u)


def parse_presentation(text: str) -> Presentation:
    """Parse the three-section text format.

    Grammar (blank lines and ``#`` comments are skipped)::

        letters: <id>(, <id>)*
        relations: <word> = <word>(, <word> = <word>)*
        base: <word>

    Words are space-separated identifiers.  Errors carry line numbers.
    """
    letters: tuple[str, ...] | None = None
    relations: list[tuple[Word, Word]] | None = None
    base: Word | None = None
    relations_line = base_line = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, rest = line.partition(":")
        key = key.strip()
        if not sep:
            raise PresentationError("expected '<section>: <content>'", lineno)
        if key == "letters":
            if letters is not None:
                raise PresentationError("duplicate 'letters' section", lineno)
            letters = tuple(tok.strip() for tok in rest.split(","))
            known: set[str] = set()
            for letter in letters:
                if not _IDENTIFIER.match(letter):
                    raise PresentationError(f"bad letter identifier {letter!r}", lineno)
                if letter in known:
                    raise PresentationError(f"duplicate letter {letter!r}", lineno)
                known.add(letter)
        elif key == "relations":
            if relations is not None:
                raise PresentationError("duplicate 'relations' section", lineno)
            relations, relations_line = [], lineno
            for chunk in rest.split(","):
                lhs, eq, rhs = chunk.partition("=")
                if not eq:
                    raise PresentationError(f"relation {chunk.strip()!r} is missing '='", lineno)
                u, v = word(lhs), word(rhs)
                if not u or not v:
                    raise PresentationError("relation sides must be nonempty", lineno)
                if u == v:
                    raise PresentationError(
                        f"relation {word_str(u)} = {word_str(v)} has equal sides, "
                        "so it would coincide with its own reverse",
                        lineno,
                    )
                if (v, u) in {(a, b) for a, b in relations}:
                    raise PresentationError(
                        f"relation {word_str(u)} = {word_str(v)} reverses an earlier pair", lineno
                    )
                if (u, v) in {(a, b) for a, b in relations}:
                    raise PresentationError(
                        f"duplicate relation {word_str(u)} = {word_str(v)}", lineno
                    )
                relations.append((u, v))
        elif key == "base":
            if base is not None:
                raise PresentationError("duplicate 'base' section", lineno)
            base, base_line = word(rest), lineno
            if not base:
                raise PresentationError("base word must be nonempty", lineno)
        else:
            raise PresentationError(f"unknown section {key!r}", lineno)
    if letters is None:
        raise PresentationError("missing 'letters' section")
    if relations is None:
        raise PresentationError("missing 'relations' section")
    known = set(letters)
    for u, v in relations:
        _check_letters(u + v, "relation", known, relations_line)
    if base is not None:
        _check_letters(base, "base word", known, base_line)
    return Presentation(letters, tuple(relations), base)


def render_presentation(p: Presentation) -> str:
    """Inverse of :func:`parse_presentation` up to whitespace."""
    lines = [
        "letters: " + ", ".join(p.letters),
        "relations: " + ", ".join(f"{word_str(u)} = {word_str(v)}" for u, v in p.relations),
    ]
    if p.base is not None:
        lines.append("base: " + word_str(p.base))
    return "\n".join(lines) + "\n"


# Shipped presentations.  The rewriting-pair orientations below are load
# bearing: relation indices and directions appear in serialized diagrams,
# so changing them would silently re-label every stored factor.

#: One letter, one pair x x = x; spherical diagrams over base x form
#: Thompson's group F.
THOMPSON_F = Presentation(("x",), ((("x", "x"), ("x",)),), base=("x",))

#: Two letters with x x x = x x and a x = a; spherical diagrams over base a
#: form a group containing every countable diagram group.
UNIVERSAL_U = Presentation(
    ("x", "a"),
    ((("x", "x", "x"), ("x", "x")), (("a", "x"), ("a",))),
    base=("a",),
)

#: Five letters; spherical diagrams over base "a c" form the restricted
#: wreath product of the integers with the integers.
WREATH_W = Presentation(
    ("a", "b", "b1", "b2", "c"),
    (
        (("a", "b"), ("a",)),
        (("b", "c"), ("c",)),
        (("b",), ("b1",)),
        (("b1",), ("b2",)),
        (("b2",), ("b",)),
    ),
    base=("a", "c"),
)

#: Three-letter cycle b -> b1 -> b2 -> b; spherical diagrams over base b
#: form an infinite cyclic group.
CYCLIC_Z = Presentation(
    ("b", "b1", "b2"),
    ((("b",), ("b1",)), (("b1",), ("b2",)), (("b2",), ("b",))),
    base=("b",),
)

PRESETS: dict[str, Presentation] = {
    "f": THOMPSON_F,
    "u": UNIVERSAL_U,
    "w": WREATH_W,
    "z3": CYCLIC_Z,
}
