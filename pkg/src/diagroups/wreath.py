"""Restricted wreath products Z wr H with exact word lengths.

An element is a pair (shift, lamps): a base-group element together with a
finite-support assignment of integers to base-group positions.  Products
follow (b1, f1)(b2, f2) = (b1 b2, f1^b2 f2) with f^beta(p) = f(p beta).

Word length over the canonical generating set (base generators plus one
lamp at the identity) equals the total lamp mass plus the length of the
shortest Cayley walk from the identity to the shift that tends every lamp.
Under the product convention above, a lamp toggled while the walker's
prefix shift was c is recorded at position b^-1 c in the final pair, so
the walk for (b, phi) must visit b*p for every lamp position p.  The walk
term has a closed form over Z (sweep the covering interval the cheaper way
round) and a subset-DP evaluation for any base group; a BFS oracle gives a
third, assumption-free value for cross checks.
"""

from __future__ import annotations

import math
import statistics
from typing import Callable, Hashable, Iterable, NamedTuple, Sequence

from .errors import ResourceCapError


class GroupOracle:
    """A group presented as identity, generators, multiplication, inversion.

    Elements must be hashable values.  Breadth-first search over the Cayley
    graph supplies ball enumeration and exact word lengths, guarded by an
    optional element-count cap.
    """

    def __init__(self, identity, generators: Sequence, op: Callable, inv: Callable):
        self.identity = identity
        self.generators = list(generators)
        self.op = op
        self.inv = inv

    def steps(self) -> list:
        """Generators and their inverses, deduplicated, identity dropped."""
        out, seen = [], set()
        for g in self.generators:
            for h in (g, self.inv(g)):
                if h != self.identity and h not in seen:
                    seen.add(h)
                    out.append(h)
        return out

    def ball_with_lengths(self, radius: int, max_elements: int | None = None):
        """All (element, word length) pairs with length <= radius, BFS order."""
        steps = self.steps()
        seen = {self.identity}
        out = [(self.identity, 0)]
        frontier = [self.identity]
        for dist in range(1, radius + 1):
            new = []
            for g in frontier:
                for s in steps:
                    h = self.op(g, s)
                    if h in seen:
                        continue
                    seen.add(h)
                    if max_elements is not None and len(seen) > max_elements:
                        raise ResourceCapError(
                            f"ball exceeded the cap of {max_elements} elements")
                    out.append((h, dist))
                    new.append(h)
            frontier = new
        return out

    def ball(self, radius: int, max_elements: int | None = None) -> list:
        return [g for g, _ in self.ball_with_lengths(radius, max_elements)]

    def length(self, e, max_radius: int = 64, max_elements: int | None = None) -> int:
        """Word length of ``e`` by breadth-first search."""
        if e == self.identity:
            return 0
        steps = self.steps()
        seen = {self.identity}
        frontier = [self.identity]
        for dist in range(1, max_radius + 1):
            new = []
            for g in frontier:
                for s in steps:
                    h = self.op(g, s)
                    if h in seen:
                        continue
                    if h == e:
                        return dist
                    seen.add(h)
                    if max_elements is not None and len(seen) > max_elements:
                        raise ResourceCapError(
                            f"length search exceeded the cap of {max_elements} elements")
                    new.append(h)
            frontier = new
        raise ResourceCapError(f"element not found within radius {max_radius}")


class ZOracle(GroupOracle):
    """The integers under addition; lengths need no search."""

    def __init__(self):
        super().__init__(0, [1], lambda a, b: a + b, lambda a: -a)

    def length(self, e, max_radius=None, max_elements=None):
        return abs(e)


Z_ORACLE = ZOracle()


class WreathElement(NamedTuple):
    shift: Hashable
    lamps: tuple  # sorted ((position, value), ...) with nonzero values


def _norm_lamps(pairs) -> tuple:
    acc: dict = {}
    for p, v in pairs:
        acc[p] = acc.get(p, 0) + v
    return tuple(sorted((p, v) for p, v in acc.items() if v != 0))


def wreath_identity(oracle: GroupOracle) -> WreathElement:
    return WreathElement(oracle.identity, ())


def lamp(oracle: GroupOracle, value: int = 1, position=None) -> WreathElement:
    """Pure lamp state: no shift, one integer at the given position."""
    if position is None:
        position = oracle.identity
    return WreathElement(oracle.identity, _norm_lamps([(position, value)]))


def shift(oracle: GroupOracle, b) -> WreathElement:
    return WreathElement(b, ())


def w_multiply(oracle: GroupOracle, e1: WreathElement, e2: WreathElement) -> WreathElement:
    b2 = e2.shift
    inv_b2 = oracle.inv(b2)
    moved = [(oracle.op(p, inv_b2), v) for p, v in e1.lamps]
    return WreathElement(oracle.op(e1.shift, b2), _norm_lamps(moved + list(e2.lamps)))


def w_invert(oracle: GroupOracle, e: WreathElement) -> WreathElement:
    b = e.shift
    return WreathElement(oracle.inv(b),
                         _norm_lamps((oracle.op(p, b), -v) for p, v in e.lamps))


def w_power(oracle: GroupOracle, e: WreathElement, n: int) -> WreathElement:
    out = wreath_identity(oracle)
    step = e if n >= 0 else w_invert(oracle, e)
    for _ in range(abs(n)):
        out = w_multiply(oracle, out, step)
    return out


def wreath_oracle(base: GroupOracle) -> GroupOracle:
    """Cayley oracle for Z wr base over base shifts plus one lamp."""
    gens = [shift(base, g) for g in base.generators] + [lamp(base)]
    return GroupOracle(wreath_identity(base), gens,
                       lambda a, b: w_multiply(base, a, b),
                       lambda a: w_invert(base, a))


def parse_welem(text: str) -> WreathElement:
    """Parse ``b=<int>; phi=<pos>:<val>(,<pos>:<val>)*`` (integer base).

    Either part may be omitted; an empty phi list is allowed.
    """
    shift_value = 0
    lamps: list[tuple[int, int]] = []
    for part in (p.strip() for p in text.split(";")):
        if not part:
            continue
        key, sep, rest = part.partition("=")
        if not sep:
            raise ValueError(f"bad element spec part {part!r}")
        key = key.strip()
        rest = rest.strip()
        if key == "b":
            shift_value = int(rest)
        elif key == "phi":
            for item in filter(None, (s.strip() for s in rest.split(","))):
                pos, sep2, val = item.partition(":")
                if not sep2:
                    raise ValueError(f"bad lamp {item!r}, expected pos:value")
                lamps.append((int(pos), int(val)))
        else:
            raise ValueError(f"unknown element spec field {key!r}")
    return WreathElement(shift_value, _norm_lamps(lamps))


def welem_str(e: WreathElement) -> str:
    return f"b={e.shift}; phi=" + ",".join(f"{p}:{v}" for p, v in e.lamps)


def z_walk_length(points: Iterable[int], end: int) -> int:
    """Shortest walk in Z from 0 to ``end`` visiting every point: cover the
    spanned interval, turning once, whichever direction first is cheaper."""
    s = set(points) | {0, end}
    lo, hi = min(s), max(s)
    left_first = (0 - lo) + (hi - lo) + (hi - end)
    right_first = (hi - 0) + (hi - lo) + (end - lo)
    return min(left_first, right_first)


def dp_walk_length(oracle: GroupOracle, points: Iterable, end, cap: int = 18,
                   max_radius: int = 64) -> int:
    """Exact shortest visiting walk by subset DP over BFS distances."""
    pts = sorted(set(points))
    n = len(pts)
    if n > cap:
        raise ResourceCapError(f"support of size {n} exceeds the DP cap of {cap}")
    if n == 0:
        return oracle.length(end, max_radius)
    start = [oracle.length(p, max_radius) for p in pts]
    dist = [[oracle.length(oracle.op(oracle.inv(u), v), max_radius) for v in pts]
            for u in pts]
    to_end = [oracle.length(oracle.op(oracle.inv(u), end), max_radius) for u in pts]
    full = (1 << n) - 1
    dp = [[math.inf] * n for _ in range(1 << n)]
    for i in range(n):
        dp[1 << i][i] = start[i]
    for mask in range(1, full + 1):
        row = dp[mask]
        for i in range(n):
            cost = row[i]
            if cost is math.inf or not (mask >> i) & 1:
                continue
            d_i = dist[i]
            for j in range(n):
                if (mask >> j) & 1:
                    continue
                nxt = cost + d_i[j]
                if nxt < dp[mask | (1 << j)][j]:
                    dp[mask | (1 << j)][j] = nxt
    return int(min(dp[full][i] + to_end[i] for i in range(n)))


def parr_length(oracle: GroupOracle, e: WreathElement, method: str = "auto",
                dp_cap: int = 18) -> int:
    """Word length of ``e`` in Z wr H: lamp mass plus the visiting walk.

    The walk runs from the identity to the shift b and must pass through
    b*p for each lamp position p (see the module docstring).  method
    "closed" uses the interval formula (base Z only), "dp" the subset DP
    for any base group, "auto" picks whichever applies.
    """
    mass = sum(abs(v) for _, v in e.lamps)
    b = e.shift
    visit = [oracle.op(b, p) for p, _ in e.lamps]
    if method == "auto":
        method = "closed" if isinstance(oracle, ZOracle) else "dp"
    if method == "closed":
        if not isinstance(oracle, ZOracle):
            raise ValueError("the closed walk formula needs base group Z")
        return mass + z_walk_length(visit, b)
    if method == "dp":
        return mass + dp_walk_length(oracle, visit, b, cap=dp_cap)
    raise ValueError(f"unknown method {method!r}")


def growth(oracle: GroupOracle, n: int, max_elements: int | None = None) -> int:
    """Number of elements of word length at most n."""
    return len(oracle.ball(n, max_elements))


def xn_family(base: GroupOracle, n: int,
              max_elements: int | None = None) -> list[WreathElement]:
    """One lamp conjugate b^-1 lamp^(2n+1-|b|) b per ball element b.

    Supports are disjoint singletons, so the family commutes pairwise; each
    member's length is 2n+1+|b|, always between 2n+1 and 3n+1.
    """
    members = []
    for b, len_b in base.ball_with_lengths(n, max_elements):
        power = 2 * n + 1 - len_b
        w = w_multiply(base,
                       w_multiply(base, shift(base, base.inv(b)), lamp(base, power)),
                       shift(base, b))
        members.append(w)
    return members


def signed_support_product(base: GroupOracle, family: Sequence[WreathElement],
                           signs: Sequence[int]) -> WreathElement:
    """Product of the family members raised to the given +-1 powers."""
    if len(signs) != len(family):
        raise ValueError("need one sign per family member")
    out = wreath_identity(base)
    for w, s in zip(family, signs):
        if s == 1:
            out = w_multiply(base, out, w)
        elif s == -1:
            out = w_multiply(base, out, w_invert(base, w))
        else:
            raise ValueError("signs must be +1 or -1")
    return out


def euclid_sq(u: Sequence[float], v: Sequence[float]):
    return sum((a - b) ** 2 for a, b in zip(u, v))


class CubeReport(NamedTuple):
    dim: int
    edge_sq_sum: int | float
    diag_sq_sum: int | float
    max_edge_sq: int | float
    min_diag_sq: int | float

    @property
    def holds(self) -> bool:
        return self.diag_sq_sum <= self.edge_sq_sum


def skew_cube_check(points: Sequence, sq: Callable = euclid_sq) -> CubeReport:
    """Sum of squared diagonals against sum of squared edges for a skewed
    cube.

    ``points[i]`` is the image of the cube vertex with bit pattern i; ``sq``
    returns the squared distance of two images.  A D-cube has D*2^(D-1)
    edges (one bit flipped) and 2^(D-1) diagonals (all bits flipped); in
    Hilbert space the diagonal sum never exceeds the edge sum.
    """
    n = len(points)
    if n < 2 or n & (n - 1):
        raise ValueError("need 2^D points for some D >= 1")
    dim = n.bit_length() - 1
    if dim > 13:
        raise ResourceCapError(f"cube dimension {dim} above the supported 13")
    edge_sum = 0
    max_edge = 0
    for i in range(n):
        pi = points[i]
        for bit in range(dim):
            j = i | (1 << bit)
            if j != i:
                d = sq(pi, points[j])
                edge_sum += d
                if d > max_edge:
                    max_edge = d
    diag_sum = 0
    min_diag = None
    all_bits = n - 1
    for i in range(n // 2):
        d = sq(points[i], points[i ^ all_bits])
        diag_sum += d
        if min_diag is None or d < min_diag:
            min_diag = d
    return CubeReport(dim, edge_sum, diag_sum, max_edge, min_diag)


class CompressionFit(NamedTuple):
    slope: float
    intercept: float
    rms: float
    n: int


def compression_fit(samples: Iterable[tuple[float, float]]) -> CompressionFit:
    """Least-squares slope of log(distance) against log(length).

    Samples with length <= 1 or distance <= 0 are dropped; at least 10 must
    remain, with at least two distinct lengths.
    """
    pts = [(math.log(length), math.log(dist))
           for length, dist in samples if length > 1 and dist > 0]
    if len(pts) < 10:
        raise ValueError("need at least 10 samples with length > 1 and distance > 0")
    xs = [x for x, _ in pts]
    ys = [y for _, y in pts]
    if min(xs) == max(xs):
        raise ValueError("degenerate samples: all lengths equal")
    slope, intercept = statistics.linear_regression(xs, ys)
    rms = math.sqrt(sum((y - (slope * x + intercept)) ** 2
                        for x, y in pts) / len(pts))
    return CompressionFit(slope, intercept, rms, len(pts))
