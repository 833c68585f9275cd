import random

import pytest

from diagroups.diagram import (
    AtomicFactor,
    Diagram,
    DiagramError,
    applicable_sites,
    decode,
    encode,
    random_diagram,
)
from diagroups.presentation import THOMPSON_F, UNIVERSAL_U, WREATH_W

X0_CODE = "x|0,0,-1;1,0,-1;0,0,1;0,0,1"


def test_trivial_diagram():
    d = Diagram.trivial(THOMPSON_F, ("x",))
    assert d.cell_count == 0
    assert d.top_word == ("x",)
    assert d.bot_word == ("x",)
    assert d.code == "x|"
    assert d.is_reduced()


def test_atomic_diagram():
    d = Diagram.atomic(THOMPSON_F, ("x", "x"), (0, 0, 1))
    assert d.cell_count == 1
    assert d.bot_word == ("x",)
    cx = d.complex()
    assert tuple(cx.top_path) == (0, 1)
    assert tuple(cx.bot_path) == (2,)
    assert cx.cells[0].top_edges == (0, 1)
    assert cx.cells[0].bot_edges == (2,)


def test_build_errors_name_the_factor():
    with pytest.raises(DiagramError, match="factor 0"):
        Diagram(THOMPSON_F, ("x",), ((0, 0, 1),))  # xx does not fit in x
    with pytest.raises(DiagramError, match="factor 1"):
        Diagram(THOMPSON_F, ("x", "x", "x"), ((0, 0, 1), (3, 0, 1),))
    with pytest.raises(DiagramError, match="factor 0"):
        Diagram(THOMPSON_F, ("x",), ((0, 7, 1),))
    with pytest.raises(DiagramError, match="factor 0"):
        Diagram(UNIVERSAL_U, ("a",), ((0, 0, 1),))  # label mismatch
    with pytest.raises(DiagramError):
        Diagram(THOMPSON_F, ("y",), ())  # unknown top letter


def test_canonical_order_ignores_input_order():
    """Two independent cells give the same code whichever is listed first."""
    a = Diagram(THOMPSON_F, ("x", "x", "x", "x"), ((0, 0, 1), (1, 0, 1)))
    b = Diagram(THOMPSON_F, ("x", "x", "x", "x"), ((2, 0, 1), (0, 0, 1)))
    assert a.code == b.code
    assert a == b
    assert hash(a) == hash(b)
    # rightmost cell first in the canonical order
    assert a.factors[0] == AtomicFactor(2, 0, 1)


def test_code_round_trip():
    rng = random.Random(5)
    for pres, start in ((THOMPSON_F, ("x",)), (UNIVERSAL_U, ("a",)), (WREATH_W, ("a", "c"))):
        for _ in range(20):
            d = random_diagram(pres, start, rng.randrange(0, 15), rng)
            again = Diagram.from_code(pres, d.code)
            assert again == d
            assert again.factors == d.factors
    top, factors = decode(X0_CODE)
    assert top == ("x",)
    assert encode(top, factors) == X0_CODE


def test_text_round_trip():
    rng = random.Random(6)
    d = random_diagram(UNIVERSAL_U, ("a",), 9, rng)
    text = d.to_text()
    assert Diagram.from_text(UNIVERSAL_U, text) == d
    withnoise = "# header comment\n\n" + text + "\n# trailing\n"
    assert Diagram.from_text(UNIVERSAL_U, withnoise) == d
    with pytest.raises(DiagramError):
        Diagram.from_text(UNIVERSAL_U, "")
    with pytest.raises(DiagramError):
        Diagram.from_text(UNIVERSAL_U, "a\n0 0\n")


def test_multiplication_stacks():
    up = Diagram.atomic(THOMPSON_F, ("x",), (0, 0, -1))  # x -> xx
    down = Diagram.atomic(THOMPSON_F, ("x", "x"), (0, 0, 1))  # xx -> x
    prod = up * down
    assert prod.top_word == ("x",)
    assert prod.bot_word == ("x",)
    assert prod.cell_count == 2
    with pytest.raises(DiagramError, match="cannot stack"):
        down * down


def test_sum_shifts_offsets():
    up = Diagram.atomic(THOMPSON_F, ("x",), (0, 0, -1))
    eps = Diagram.trivial(THOMPSON_F, ("x",))
    left = up + eps
    right = eps + up
    assert left.top_word == ("x", "x")
    assert left.bot_word == ("x", "x", "x")
    assert right.bot_word == ("x", "x", "x")
    assert left != right
    assert left.factors[0].offset == 0
    assert right.factors[0].offset == 1


def test_inverse_is_mirror():
    rng = random.Random(7)
    for _ in range(15):
        d = random_diagram(THOMPSON_F, ("x",), rng.randrange(0, 10), rng)
        inv = ~d
        assert inv.top_word == d.bot_word
        assert inv.bot_word == d.top_word
        assert ~inv == d
        assert (d * inv).reduce().cell_count == 0


def test_inverse_of_product():
    d1 = Diagram.atomic(THOMPSON_F, ("x",), (0, 0, -1))
    d2 = Diagram(THOMPSON_F, ("x", "x"), ((0, 0, -1),))
    assert ~(d1 * d2) == (~d2) * (~d1)


def test_dipole_detection_and_reduction():
    up = Diagram.atomic(THOMPSON_F, ("x",), (0, 0, -1))
    d = up * ~up
    assert not d.is_reduced()
    assert d.find_dipoles() == [(0, 1)]
    r = d.reduce()
    assert r.cell_count == 0
    assert r == Diagram.trivial(THOMPSON_F, ("x",))
    x0 = Diagram.from_code(THOMPSON_F, X0_CODE)
    assert x0.is_reduced()
    assert x0.find_dipoles() == []


def test_mirror_cells_over_distinct_paths_are_no_dipole():
    # x -> xx by two different cells: same boundary words but distinct
    # middle edges once interleaved with another cell
    d = Diagram(THOMPSON_F, ("x",), ((0, 0, -1), (0, 0, 1), (0, 0, -1)))
    assert d.cell_count == 3
    r = d.reduce()
    assert r.cell_count == 1


def test_reduction_is_confluent():
    rng = random.Random(11)
    for pres, start in ((THOMPSON_F, ("x",)), (UNIVERSAL_U, ("a",)), (WREATH_W, ("a", "c"))):
        for _ in range(30):
            d = random_diagram(pres, start, rng.randrange(0, 18), rng)
            codes = {d.reduce(random.Random(seed)).code for seed in range(4)}
            codes.add(d.reduce().code)
            assert len(codes) == 1


def test_reduce_is_idempotent():
    rng = random.Random(13)
    for _ in range(20):
        d = random_diagram(UNIVERSAL_U, ("a",), rng.randrange(0, 16), rng)
        r = d.reduce()
        assert r.is_reduced()
        assert r.reduce() == r


def test_applicable_sites():
    sites = applicable_sites(THOMPSON_F, ("x", "x"))
    assert AtomicFactor(0, 0, 1) in sites
    assert AtomicFactor(0, 0, -1) in sites
    assert AtomicFactor(1, 0, -1) in sites
    assert len(sites) == 3
    assert applicable_sites(UNIVERSAL_U, ("a",)) == [AtomicFactor(0, 1, -1)]


def test_random_diagram_hits_requested_size():
    rng = random.Random(17)
    for n in (0, 1, 5, 12):
        d = random_diagram(THOMPSON_F, ("x",), n, rng)
        assert d.cell_count == n
        assert d.top_word == ("x",)


def test_dot_export_is_stable():
    d = Diagram.from_code(THOMPSON_F, X0_CODE)
    dot = d.to_dot()
    assert dot == d.to_dot()
    assert dot.startswith("digraph")
    cx = d.complex()
    arrows = [ln for ln in dot.splitlines() if "[label=" in ln]
    assert len(arrows) == len(cx.edge_labels)
    assert dot.count("subgraph cluster") == d.cell_count
