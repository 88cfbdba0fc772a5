import random
from fractions import Fraction
from itertools import combinations

import pytest

from nilcontact import catalog
from nilcontact.algebra import bracket
from nilcontact.exterior import (Form, ce_d, evaluate, interior, merge_sign, permutation_sign,
                                 power, wedge)

from helpers import a, e

RANDOM_FORMS = 100


def random_form(rng, dim, k, terms=4):
    monos = list(combinations(range(dim), k))
    pick = rng.sample(monos, min(terms, len(monos)))
    return Form(dim, k, {m: Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for m in pick})


def test_wedge_basics():
    assert wedge(a(3, 1), a(3, 2)) == a(3, 1, 2)
    assert wedge(a(3, 1), a(3, 1)).is_zero()
    assert wedge(a(3, 2), a(3, 1)) == a(3, 1, 2, coef=-1)


def test_sign_helpers():
    assert permutation_sign([2, 0, 1]) == 1
    assert permutation_sign([1, 0, 2]) == -1
    assert merge_sign((1, 3), (0, 2)) == (-1, (0, 1, 2, 3))
    assert merge_sign((0,), (0,))[0] == 0


def test_volume_identity_of_ex5d(ex5d):
    L = ex5d.algebra
    d5 = ce_d(L, a(5, 5))
    assert d5 == a(5, 1, 4) + a(5, 2, 3)
    assert wedge(d5, d5) == a(5, 1, 2, 3, 4, coef=2)
    assert wedge(a(5, 5), power(d5, 2)) == a(5, 1, 2, 3, 4, 5, coef=2)


def test_interior_examples(ex5d):
    assert interior(e(5, 5), a(5, 5)) == Form.constant(5, 1)
    assert interior(e(3, 1), a(3, 1, 2)) == a(3, 2)
    assert interior(e(5, 5), a(5, 1, 4) + a(5, 2, 3)).is_zero()
    assert interior(e(5, 1), Form.constant(5, 3)).is_zero()


def test_ce_d_examples(ex5d):
    L = ex5d.algebra
    assert ce_d(L, a(5, 3)) == a(5, 1, 2, coef=-1)
    assert ce_d(L, a(5, 3, 4, 5)) == a(5, 1, 2, 4, 5, coef=-1)
    assert ce_d(L, Form.constant(5, 7)).is_zero()


def test_evaluation_convention(ex7d):
    assert evaluate(a(3, 1, 2), [e(3, 1), e(3, 2)]) == 1
    assert evaluate(a(3, 1, 2), [e(3, 2), e(3, 1)]) == -1
    assert evaluate(ce_d(ex7d.algebra, a(7, 7)), [e(7, 1), e(7, 4)]) == -1


@pytest.mark.parametrize("name", catalog.names())
def test_d_on_one_forms_is_minus_bracket(name, entries):
    """dα(X,Y) = -α([X,Y]) on basis pairs."""
    L = entries[name].algebra
    n = L.dim
    for k in range(n):
        dk = ce_d(L, Form.monomial(n, [k]))
        for i in range(n):
            for j in range(n):
                assert evaluate(dk, [e(n, i + 1), e(n, j + 1)]) == \
                    -bracket(L, e(n, i + 1), e(n, j + 1))[k]


@pytest.mark.parametrize("name", catalog.names())
def test_randomized_identities(name, entries):
    L = entries[name].algebra
    n = L.dim
    rng = random.Random(name)
    for _ in range(RANDOM_FORMS):
        p, q = rng.randint(0, n), rng.randint(0, n)
        x, y = random_form(rng, n, p), random_form(rng, n, q)
        # d o d = 0
        assert ce_d(L, ce_d(L, x)).is_zero()
        # graded commutativity
        assert wedge(x, y) == wedge(y, x) * (-1) ** (p * q)
        # Leibniz rule for d
        assert ce_d(L, wedge(x, y)) == wedge(ce_d(L, x), y) + wedge(x, ce_d(L, y)) * (-1) ** p
        # interior product is an antiderivation and squares to zero
        v = tuple(Fraction(rng.randint(-3, 3)) for _ in range(n))
        if p and q:
            assert interior(v, wedge(x, y)) == \
                wedge(interior(v, x), y) + wedge(x, interior(v, y)) * (-1) ** p
        elif q:
            # x is a scalar
            assert interior(v, wedge(x, y)) == wedge(x, interior(v, y))
        assert interior(v, interior(v, x)).is_zero()
