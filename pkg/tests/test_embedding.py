import random

import pytest

from diagroups.diagram import Diagram, random_diagram
from diagroups.embedding import (
    EmbeddingError,
    cell_address,
    cell_addresses,
    gcd_decomposition,
    gcd_prefix,
    phi,
    sq_dist,
)
from diagroups.groups import distance
from diagroups.presentation import THOMPSON_F, UNIVERSAL_U
from diagroups.thompson import F_GROUP, f_generator, word_to_element

X0 = f_generator(0)
X1 = f_generator(1)
ONE = F_GROUP.identity()


def test_identity_has_empty_image():
    assert phi(ONE) == frozenset()
    assert sq_dist(ONE, ONE) == 0


def test_addresses_are_distinct():
    rng = random.Random(2)
    for pres, start in ((THOMPSON_F, ("x",)), (UNIVERSAL_U, ("a",))):
        for _ in range(25):
            d = random_diagram(pres, start, rng.randrange(1, 14), rng).reduce()
            addrs = cell_addresses(d)
            assert len(addrs) == d.cell_count
            assert len(set(addrs.values())) == d.cell_count


def test_addresses_see_horizontal_position():
    """The same relation applied to the first or the second letter of xx
    must land on different coordinates."""
    left = Diagram(THOMPSON_F, ("x", "x"), ((0, 0, -1),))
    right = Diagram(THOMPSON_F, ("x", "x"), ((1, 0, -1),))
    assert cell_address(left, 0) != cell_address(right, 0)


def test_addresses_survive_extension():
    """Appending factors that stay reduced never rewrites old addresses."""
    rng = random.Random(3)
    for _ in range(20):
        g = F_GROUP.random_element(rng.randrange(1, 6), rng)
        h = F_GROUP.random_element(rng.randrange(1, 6), rng)
        prod = g * h
        if prod.cell_count != g.cell_count + h.cell_count:
            continue  # cancellation, prefix not preserved
        assert phi(g) <= phi(prod)


def test_sq_dist_equals_diagram_distance():
    rng = random.Random(8)
    for _ in range(60):
        g1 = F_GROUP.random_element(rng.randrange(0, 9), rng)
        g2 = F_GROUP.random_element(rng.randrange(0, 9), rng)
        assert sq_dist(g1, g2) == distance(g1, g2)


def test_sq_dist_from_identity_is_cell_count():
    rng = random.Random(9)
    for _ in range(20):
        g = F_GROUP.random_element(rng.randrange(0, 9), rng)
        assert sq_dist(ONE, g) == g.cell_count
        assert len(phi(g)) == g.cell_count


def test_sq_dist_on_known_pair():
    g = word_to_element(((0, 1), (1, 1)))  # x0 x1
    assert len(phi(X0)) == 4
    assert len(phi(g)) == 8
    assert sq_dist(X0, g) == 6


def test_gcd_of_equal_elements():
    g = X0 * X1
    psi, t1, t2 = gcd_decomposition(g, g)
    assert psi == g.diagram
    assert t1.cell_count == 0 and t2.cell_count == 0


def test_gcd_with_identity_is_trivial():
    psi, t1, t2 = gcd_decomposition(ONE, X0)
    assert psi.cell_count == 0
    assert t2 == X0.diagram


def test_gcd_decomposition_contract():
    rng = random.Random(14)
    for _ in range(30):
        g1 = F_GROUP.random_element(rng.randrange(0, 8), rng)
        g2 = F_GROUP.random_element(rng.randrange(0, 8), rng)
        psi, t1, t2 = gcd_decomposition(g1, g2)
        assert psi == gcd_prefix(g1, g2)
        assert (F_GROUP.element(psi) * F_GROUP.element(t1)).diagram == g1.diagram
        assert (F_GROUP.element(psi) * F_GROUP.element(t2)).diagram == g2.diagram
        assert psi.cell_count == len(phi(g1) & phi(g2))
        assert t1.cell_count + t2.cell_count == distance(g1, g2)
        quotient = (~t1) * t2
        assert Diagram.from_factors(
            F_GROUP.presentation, quotient.top_word, quotient.factors
        ).is_reduced()


def test_bad_cell_id_is_rejected():
    with pytest.raises(EmbeddingError):
        cell_address(X0.diagram, 99)


def test_addresses_ignore_reducedness():
    # addresses exist for any diagram; a dipole pair still gets two
    # distinct coordinates because the lower cell's closure is larger
    d = Diagram(THOMPSON_F, ("x",), ((0, 0, -1), (0, 0, 1)))
    addrs = cell_addresses(d)
    assert len(set(addrs.values())) == 2
