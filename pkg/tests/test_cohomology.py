import random

import pytest

from nilcontact import catalog
from nilcontact.algebra import LieAlgebra, abelian
from nilcontact.cohomology import (betti_vector, cohomology, d_matrix, euler_characteristic,
                                   is_exact, parity_report)
from nilcontact.errors import InvalidInput
from nilcontact.exterior import Form, ce_d

from helpers import a
from test_exterior import random_form


def test_d0_is_zero(ex5d):
    assert d_matrix(ex5d.algebra, 0).is_zero()


def test_d1_rank_of_ex5d(ex5d):
    assert d_matrix(ex5d.algebra, 1).rank() == 3


def test_first_cohomology(ex5d, ex7d):
    h = cohomology(ex5d.algebra, 1)
    assert h.dim == 2 and h.representatives == [a(5, 1), a(5, 2)]
    h = cohomology(ex7d.algebra, 1)
    assert h.representatives == [a(7, 1), a(7, 2), a(7, 5), a(7, 6)]
    assert cohomology(ex7d.algebra, 3).dim == 8


def test_betti_vectors(ex5d, ex7d, h3, h5):
    assert betti_vector(h3.algebra) == (1, 2, 2, 1)
    assert betti_vector(h5.algebra) == (1, 4, 5, 5, 4, 1)
    assert betti_vector(ex5d.algebra) == (1, 2, 3, 3, 2, 1)
    assert betti_vector(ex7d.algebra) == (1, 4, 6, 8, 8, 6, 4, 1)
    assert betti_vector(abelian(3)) == (1, 3, 3, 1)


def test_is_exact_examples(ex5d):
    L = ex5d.algebra
    assert is_exact(L, a(5, 1, 2, 4, 5, coef=-1)) == a(5, 3, 4, 5)
    assert is_exact(L, a(5, 1)) is None
    assert is_exact(L, Form.zero(5, 2)).is_zero()
    with pytest.raises(InvalidInput):
        is_exact(L, a(5, 3))


@pytest.mark.parametrize("name", catalog.names())
def test_duality_and_euler(name, entries):
    b = betti_vector(entries[name].algebra)
    assert b == tuple(reversed(b))
    assert euler_characteristic(b) == 0


@pytest.mark.parametrize("name", catalog.names())
def test_class_coords_vanish_exactly_on_exact_forms(name, entries):
    L = entries[name].algebra
    rng = random.Random(name)
    for _ in range(30):
        k = rng.randint(1, L.dim - 1)
        x = random_form(rng, L.dim, k - 1)
        dx = ce_d(L, x)
        h = cohomology(L, k)
        assert not any(h.class_coords(dx))
        prim = is_exact(L, dx)
        assert prim is not None and ce_d(L, prim) == dx
        for rep in h.representatives:
            assert is_exact(L, rep) is None


def test_parity_reports(ex5d, ex7d, h3, h5):
    for inp in (ex5d, ex7d, h3, h5):
        assert not parity_report(inp.algebra)["obstruction"]


def test_parity_flags_odd_first_betti():
    # [X1,X2] = X4, [X1,X3] = X5: b1 = 3, odd in degree 1 <= n = 2
    M = LieAlgebra(5, {(0, 1): {3: 1}, (0, 2): {4: 1}})
    assert betti_vector(M)[1] == 3
    rep = parity_report(M)
    assert rep["obstruction"] and rep["obstructed_degrees"] == [1]


def test_parity_range_stops_at_n(h5):
    # b3 = 5 is odd, yet the Heisenberg 5-manifold is Sasakian
    rep = parity_report(h5.algebra)
    assert rep["entries"][3].betti == 5 and not rep["entries"][3].required_even


def test_parity_needs_odd_dimension():
    with pytest.raises(InvalidInput):
        parity_report(abelian(4))
