import random

import pytest

from gcover.orders import GREVLEX, GRLEX, LEX, BlockOrder, by_name

ORDERS = {"lex": LEX, "grlex": GRLEX, "grevlex": GREVLEX}


def random_exp(rng, n, bound=6):
    return tuple(rng.randint(0, bound) for _ in range(n))


def test_grevlex_tiebreak():
    # equal degree: x^2 > x*y > y^2
    assert GREVLEX.compare((2, 0), (1, 1)) > 0
    assert GREVLEX.compare((1, 1), (0, 2)) > 0


def test_reflexivity():
    for ord_ in ORDERS.values():
        assert ord_.compare((3, 1, 2), (3, 1, 2)) == 0


def test_block_dominance():
    # x-block first: x beats any power of u
    order = BlockOrder([((1,), GREVLEX), ((0,), GREVLEX)])  # names (u, x)
    x = (0, 1)
    u5 = (5, 0)
    assert order.compare(x, u5) > 0


def test_one_is_minimal():
    rng = random.Random(1)
    one = (0,) * 3
    for name, ord_ in ORDERS.items():
        for _ in range(200):
            t = random_exp(rng, 3)
            if t != one:
                assert ord_.compare(t, one) > 0, (name, t)


@pytest.mark.parametrize("name", ["lex", "grlex", "grevlex", "block"])
def test_multiplicativity_and_totality(name):
    rng = random.Random(17)
    if name == "block":
        order = BlockOrder([((2, 3), GREVLEX), ((0, 1), GRLEX)])
        n = 4
    else:
        order = ORDERS[name]
        n = 3
    for _ in range(1000):
        s = random_exp(rng, n)
        t1 = random_exp(rng, n)
        t2 = random_exp(rng, n)
        c = order.compare(t1, t2)
        # totality + antisymmetry
        assert c in (-1, 0, 1)
        assert order.compare(t2, t1) == -c
        assert (c == 0) == (t1 == t2)
        # multiplicativity: t1 < t2 implies s*t1 < s*t2
        st1 = tuple(a + b for a, b in zip(s, t1))
        st2 = tuple(a + b for a, b in zip(s, t2))
        assert order.compare(st1, st2) == c


def test_by_name():
    assert by_name("lex") is LEX
    with pytest.raises(ValueError):
        by_name("mystery")
