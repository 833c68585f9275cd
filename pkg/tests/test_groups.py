import random
from fractions import Fraction

import pytest

from diagroups import (
    DiagramGroup,
    ResourceCapError,
    cnd_form,
    distance,
    element_ball,
    word_length,
)
from diagroups.diagram import Diagram
from diagroups.presentation import THOMPSON_F, UNIVERSAL_U
from diagroups.thompson import F_GROUP, f_generator

X0 = f_generator(0)
X1 = f_generator(1)
ONE = F_GROUP.identity()


def test_identity():
    assert ONE.is_identity()
    assert ONE.cell_count == 0
    assert (ONE * ONE) == ONE
    assert ~ONE == ONE


def test_elements_reduce_on_construction():
    up = Diagram.atomic(THOMPSON_F, ("x",), (0, 0, -1))
    g = F_GROUP.element(up * ~up)
    assert g.is_identity()


def test_group_mismatch_is_rejected():
    u = DiagramGroup(UNIVERSAL_U)
    with pytest.raises(Exception):
        X0 * u.identity()
    with pytest.raises(Exception):
        distance(X0, u.identity())


def test_inverse_and_cancellation():
    rng = random.Random(3)
    for _ in range(20):
        g = F_GROUP.random_element(rng.randrange(0, 8), rng)
        assert (g * ~g).is_identity()
        assert (~g * g).is_identity()
        assert ~(~g) == g


def test_associativity():
    rng = random.Random(4)
    for _ in range(20):
        a = F_GROUP.random_element(rng.randrange(0, 6), rng)
        b = F_GROUP.random_element(rng.randrange(0, 6), rng)
        c = F_GROUP.random_element(rng.randrange(0, 6), rng)
        assert (a * b) * c == a * (b * c)


def test_pow():
    assert X0 ** 0 == ONE
    assert X0 ** 1 == X0
    assert X0 ** 2 == X0 * X0
    assert X0 ** -2 == ~X0 * ~X0
    assert (X0 ** 3) * (X0 ** -3) == ONE


def test_distance_is_a_metric():
    rng = random.Random(9)
    for _ in range(15):
        a = F_GROUP.random_element(rng.randrange(0, 7), rng)
        b = F_GROUP.random_element(rng.randrange(0, 7), rng)
        c = F_GROUP.random_element(rng.randrange(0, 7), rng)
        assert distance(a, a) == 0
        assert distance(a, b) == distance(b, a)
        assert distance(a, c) <= distance(a, b) + distance(b, c)
        if a != b:
            assert distance(a, b) > 0


def test_distance_is_left_invariant():
    rng = random.Random(10)
    for _ in range(15):
        a = F_GROUP.random_element(rng.randrange(0, 6), rng)
        b = F_GROUP.random_element(rng.randrange(0, 6), rng)
        h = F_GROUP.random_element(rng.randrange(0, 6), rng)
        assert distance(h * a, h * b) == distance(a, b)


def test_distance_from_identity_is_cell_count():
    rng = random.Random(12)
    for _ in range(10):
        g = F_GROUP.random_element(rng.randrange(0, 8), rng)
        assert distance(ONE, g) == g.cell_count


def test_cnd_form_known_value():
    assert cnd_form([ONE, X0], [1, -1]) == -8
    assert cnd_form([ONE, X0], [Fraction(1, 2), Fraction(-1, 2)]) == -2


def test_cnd_form_checks_arguments():
    with pytest.raises(ValueError):
        cnd_form([ONE, X0], [1, 1])
    with pytest.raises(ValueError):
        cnd_form([ONE, X0], [1])


def test_cnd_form_never_positive():
    rng = random.Random(21)
    pool = [F_GROUP.random_element(rng.randrange(0, 7), rng) for _ in range(10)]
    for _ in range(25):
        k = rng.randrange(2, 6)
        elems = [rng.choice(pool) for _ in range(k)]
        coeffs = [rng.randrange(-3, 4) for _ in range(k - 1)]
        coeffs.append(-sum(coeffs))
        assert cnd_form(elems, coeffs) <= 0


def test_element_ball_sizes():
    gens = (X0, X1)
    ball = list(element_ball(F_GROUP, gens, 2))
    lengths = [n for _, n in ball]
    assert lengths == sorted(lengths)
    assert lengths.count(0) == 1
    assert lengths.count(1) == 4
    assert lengths.count(2) == 12


def test_element_ball_cap():
    with pytest.raises(ResourceCapError):
        list(element_ball(F_GROUP, (X0, X1), 4, max_elements=10))


def test_word_length():
    gens = (X0, X1)
    assert word_length(ONE, gens, 3) == 0
    assert word_length(X0, gens, 3) == 1
    assert word_length(~X1, gens, 3) == 1
    assert word_length(X0 * X0, gens, 3) == 2
    with pytest.raises(ResourceCapError):
        word_length(X0 ** 9, gens, 2)
